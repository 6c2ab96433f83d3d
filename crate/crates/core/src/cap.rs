//! Caps: point sets with no three points collinear.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::completeness::coverage::CoverageMap;
use crate::completeness::scaler::Scaler;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::geometry::{Geometry, PointCode};

/// Code spaces up to this many bits get a dense bitmap in validation and
/// greedy extension (`2^30` bits is 128 MiB).
pub const DENSE_CODE_BITS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapFormat {
    /// `r + 1` decimal coordinates per line.
    Text,
    /// One hexadecimal code per line.
    Packed,
}

/// Three cap points on a common line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapViolation {
    pub triple: [PointCode; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cap {
    geometry: Geometry,
    points: Vec<PointCode>,
}

impl Cap {
    pub fn empty(geometry: &Geometry) -> Self {
        Cap { geometry: geometry.clone(), points: Vec::new() }
    }

    /// Normalizes every point; zero vectors, out-of-range codes and repeated
    /// points are rejected.
    pub fn from_points(
        geometry: &Geometry,
        points: impl IntoIterator<Item = PointCode>,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (i, p) in points.into_iter().enumerate() {
            if p.is_zero() {
                return Err(Error::ZeroPoint { line: i + 1 });
            }
            if p.0 >= geometry.code_space() {
                return Err(Error::OutOfRange { code: p.0 });
            }
            let p = geometry.normalize(p);
            if let Some(first) = seen.insert(p, i + 1) {
                return Err(Error::DuplicatePoint { line: i + 1, first });
            }
            out.push(p);
        }
        let m = geometry.point_count();
        if out.len() as u128 > m {
            return Err(Error::CapTooLargeForGeometry { n: out.len(), m });
        }
        Ok(Cap { geometry: geometry.clone(), points: out })
    }

    pub fn from_coords<V: AsRef<[FieldElement]>>(geometry: &Geometry, coords: &[V]) -> Result<Self> {
        let codes = coords
            .iter()
            .map(|v| geometry.encode(v.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(geometry, codes)
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn points(&self) -> &[PointCode] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: PointCode) -> bool {
        let p = self.geometry.normalize(p);
        self.points.contains(&p)
    }

    /// Cap made of the points at the given positions, in that order.
    pub fn subset(&self, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::from_points(&self.geometry, indices.into_iter().map(|i| self.points[i]))
    }

    /// The first `n` points.
    pub fn truncated(&self, n: usize) -> Self {
        Cap { geometry: self.geometry.clone(), points: self.points[..n.min(self.len())].to_vec() }
    }

    pub fn without(&self, index: usize) -> Self {
        let mut points = self.points.clone();
        points.remove(index);
        Cap { geometry: self.geometry.clone(), points }
    }

    /// Checks that no three points are collinear.
    ///
    /// All `q - 1` multiples of every cap point go into a membership set;
    /// then each pair `(P_i, P_j)` and scalar `a` produces `a P_i + P_j`,
    /// which hits the set exactly when the interior line point is a cap
    /// point.
    pub fn validate(&self) -> std::result::Result<(), CapViolation> {
        let g = &self.geometry;
        let n = self.len();
        if n < 3 {
            return Ok(());
        }
        let stride = g.q() as usize - 1;
        let multiples: Vec<u128> = self
            .points
            .iter()
            .flat_map(|&p| g.field().nonzero().map(move |a| g.scale(a, p).0))
            .collect();

        let hit = if g.code_bits() <= DENSE_CODE_BITS {
            let mut set = CoverageMap::full(g.code_space() as u64, None);
            for &m in &multiples {
                set.set(m as u64);
            }
            find_hit(&multiples, stride, |x| set.get(x as u64))
        } else {
            let set: HashSet<u128> = multiples.iter().copied().collect();
            find_hit(&multiples, stride, |x| set.contains(&x))
        };
        match hit {
            None => Ok(()),
            Some((i, j, x)) => {
                let third = g.normalize(PointCode(x));
                Err(CapViolation { triple: [self.points[i], self.points[j], third] })
            }
        }
    }

    pub fn is_cap(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn parse(text: &str, geometry: &Geometry) -> Result<Self> {
        parse_cap(text, geometry)
    }

    pub fn write(&self, format: CapFormat) -> String {
        write_cap(self, format)
    }

    /// Extends to a complete cap; see [`greedy_extend`].
    pub fn greedy_extend(&self, seed: u64) -> Result<Self> {
        greedy_extend(self, seed)
    }
}

fn find_hit(
    multiples: &[u128],
    stride: usize,
    member: impl Fn(u128) -> bool,
) -> Option<(usize, usize, u128)> {
    let n = multiples.len() / stride;
    for j in 1..n {
        let pj = multiples[j * stride];
        for i in 0..j {
            for &m in &multiples[i * stride..(i + 1) * stride] {
                let x = m ^ pj;
                if member(x) {
                    return Some((i, j, x));
                }
            }
        }
    }
    None
}

/// Parses the coordinate text format or the packed hexadecimal format; the
/// first data line decides which. A `# PG(r,q)` header, when present, must
/// match `geometry`; other `#` lines are comments.
pub fn parse_cap(text: &str, geometry: &Geometry) -> Result<Cap> {
    let dim = geometry.dimension();
    let q = geometry.q();
    let mut format = None;
    let mut codes = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let comment = comment.trim();
            if comment.starts_with("PG(") {
                let declared: String = comment.chars().filter(|c| !c.is_whitespace()).collect();
                if declared != geometry.label() {
                    return Err(Error::GeometryMismatch { declared, actual: geometry.label() });
                }
            }
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let fmt = *format.get_or_insert(if tokens.len() == 1 && dim > 1 {
            CapFormat::Packed
        } else {
            CapFormat::Text
        });
        let code = match fmt {
            CapFormat::Text => {
                if tokens.len() != dim {
                    return Err(Error::WrongArity { line, expected: dim, got: tokens.len() });
                }
                let mut code = 0u128;
                for t in tokens {
                    let v: u64 = t
                        .parse()
                        .map_err(|_| Error::BadToken { line, token: t.to_string() })?;
                    if v >= q {
                        return Err(Error::BadCoordinate { line, value: v, q });
                    }
                    code = (code << geometry.k()) | v as u128;
                }
                code
            }
            CapFormat::Packed => {
                if tokens.len() != 1 {
                    return Err(Error::WrongArity { line, expected: 1, got: tokens.len() });
                }
                let t = tokens[0];
                let digits = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
                let code = u128::from_str_radix(digits, 16)
                    .map_err(|_| Error::BadToken { line, token: t.to_string() })?;
                if code >= geometry.code_space() {
                    return Err(Error::BadToken { line, token: t.to_string() });
                }
                code
            }
        };
        if code == 0 {
            return Err(Error::ZeroPoint { line });
        }
        codes.push(PointCode(code));
        lines.push(line);
    }
    Cap::from_points(geometry, codes).map_err(|e| match e {
        Error::DuplicatePoint { line, first } => {
            Error::DuplicatePoint { line: lines[line - 1], first: lines[first - 1] }
        }
        other => other,
    })
}

pub fn write_cap(cap: &Cap, format: CapFormat) -> String {
    let g = cap.geometry();
    let mut out = String::new();
    for &p in cap.points() {
        match format {
            CapFormat::Text => {
                let coords: Vec<String> = g.coords(p).iter().map(|x| x.to_string()).collect();
                out.push_str(&coords.join(" "));
                out.push('\n');
            }
            CapFormat::Packed => {
                let _ = writeln!(out, "{:x}", p);
            }
        }
    }
    out
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// A permutation of `0..len` from a full-period linear congruential
/// generator modulo the next power of two, skipping values `>= len`.
#[derive(Debug, Clone)]
pub struct LcgPermutation {
    len: u64,
    mask: u64,
    mul: u64,
    inc: u64,
    state: u64,
    steps_left: u64,
}

impl LcgPermutation {
    pub fn new(len: u64, seed: u64) -> Self {
        let modulus = len.max(1).next_power_of_two();
        let mask = modulus - 1;
        let h1 = splitmix64(seed);
        let h2 = splitmix64(h1);
        let h3 = splitmix64(h2);
        LcgPermutation {
            len,
            mask,
            // multiplier = 1 mod 4 and odd increment give full period mod 2^t
            mul: (h1 & mask & !3) | 1,
            inc: (h2 | 1) & mask.max(1),
            state: h3 & mask,
            steps_left: modulus,
        }
    }
}

impl Iterator for LcgPermutation {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.steps_left > 0 {
            let x = self.state;
            self.state = self.mul.wrapping_mul(x).wrapping_add(self.inc) & self.mask;
            self.steps_left -= 1;
            if x < self.len {
                return Some(x);
            }
        }
        None
    }
}

/// Grows `cap` to a complete cap by scanning all points in a seeded
/// pseudorandom order and keeping every point that lies on no secant of the
/// current cap. Deterministic in `(cap, seed)`; existing points keep their
/// order and new points are appended.
pub fn greedy_extend(cap: &Cap, seed: u64) -> Result<Cap> {
    if let Err(v) = cap.validate() {
        return Err(Error::InvalidInput(format!(
            "collinear points {} {} {}",
            v.triple[0], v.triple[1], v.triple[2]
        )));
    }
    let g = cap.geometry();
    if g.code_bits() > DENSE_CODE_BITS {
        return Err(Error::GeometryTooLarge(format!(
            "greedy extension needs a dense map of 2^{} bits",
            g.code_bits()
        )));
    }
    let mut grower = GreedyGrower::new(g);
    for &p in cap.points() {
        grower.add(p.0 as u64);
    }
    let m = g.point_count() as u64;
    for idx in LcgPermutation::new(m, seed) {
        let code = g.point_at(idx as u128).expect("index below point count").0 as u64;
        if grower.can_add(code) {
            grower.add(code);
        }
    }
    Ok(Cap { geometry: g.clone(), points: grower.points.into_iter().map(|c| PointCode(c as u128)).collect() })
}

struct GreedyGrower {
    q: u32,
    scaler: Scaler,
    marks: CoverageMap,
    members: CoverageMap,
    multiples: Vec<u64>,
    points: Vec<u64>,
}

impl GreedyGrower {
    fn new(g: &Geometry) -> Self {
        let space = g.code_space() as u64;
        GreedyGrower {
            q: g.q() as u32,
            scaler: Scaler::new(g.field_arc().clone()),
            marks: CoverageMap::full(space, None),
            members: CoverageMap::full(space, None),
            multiples: Vec::new(),
            points: Vec::new(),
        }
    }

    fn can_add(&self, code: u64) -> bool {
        if self.members.get(code) || self.marks.get(code) {
            return false;
        }
        !(2..self.q).any(|a| self.marks.get(self.scaler.scale(a, code)))
    }

    fn add(&mut self, code: u64) {
        for &m in &self.multiples {
            self.marks.set(m ^ code);
        }
        for a in 1..self.q {
            self.multiples.push(self.scaler.scale(a, code));
        }
        self.members.set(code);
        self.points.push(code);
    }
}
