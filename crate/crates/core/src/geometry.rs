//! Points of PG(r, 2^k) packed into integers.
//!
//! A coordinate vector `(x0, ..., xr)` is stored as the base-`2^k` number
//! with digits `x0 x1 ... xr`, `x0` most significant. Because field addition
//! is XOR on the digit encoding, adding two vectors is a single XOR of their
//! codes. Codes are held in a `u128`, i.e. at most two 64-bit words; the
//! high word is the most significant and codes compare lexicographically by
//! word, which is plain integer order.
//!
//! The normalized representative of a point has leading nonzero coordinate
//! equal to one. For leading position `i` the normalized codes are exactly
//! the interval `[q^(r-i), 2 q^(r-i))`, so the normalized codes of the whole space are the
//! union of those intervals and each is the smallest code in its class.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTable};

/// Maximum number of bits in a point code.
pub const MAX_CODE_BITS: u32 = 127;
pub const WORD_BITS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointCode(pub u128);

impl PointCode {
    #[inline]
    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Machine words of the code, most significant first.
    pub fn words(self, g: &Geometry) -> Vec<u64> {
        let n = g.words_per_code() as usize;
        (0..n)
            .rev()
            .map(|w| (self.0 >> (w as u32 * WORD_BITS)) as u64)
            .collect()
    }
}

impl fmt::LowerHex for PointCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl fmt::Display for PointCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// The space PG(r, 2^k) together with its field tables.
#[derive(Debug, Clone)]
pub struct Geometry {
    r: u32,
    field: Arc<FieldTable>,
}

impl PartialEq for Geometry {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r
            && self.field.degree() == other.field.degree()
            && self.field.modulus() == other.field.modulus()
    }
}

impl Eq for Geometry {}

impl Geometry {
    /// PG(r, q) for `q` a power of two, default modulus.
    pub fn new(r: u32, q: u64) -> Result<Self> {
        if q < 2 || !q.is_power_of_two() {
            return Err(Error::BadGeometry(format!("{r},{q}")));
        }
        Self::with_degree(r, q.trailing_zeros())
    }

    pub fn with_degree(r: u32, k: u32) -> Result<Self> {
        Self::with_field(r, Arc::new(FieldTable::new(k)?))
    }

    pub fn with_field(r: u32, field: Arc<FieldTable>) -> Result<Self> {
        if r == 0 {
            return Err(Error::BadGeometry(format!("dimension {r}")));
        }
        let k = field.degree();
        let bits = k.saturating_mul(r.saturating_add(1));
        if bits > MAX_CODE_BITS {
            return Err(Error::CodeTooWide { r, k, bits, max: MAX_CODE_BITS });
        }
        Ok(Geometry { r, field })
    }

    /// Parses `"r,q"`.
    pub fn parse(text: &str, modulus: Option<u32>) -> Result<Self> {
        let bad = || Error::BadGeometry(text.to_string());
        let (r, q) = text.split_once(',').ok_or_else(bad)?;
        let r: u32 = r.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q < 2 || !q.is_power_of_two() {
            return Err(bad());
        }
        let k = q.trailing_zeros();
        match modulus {
            None => Self::with_degree(r, k),
            Some(m) => Self::with_field(r, Arc::new(FieldTable::with_modulus(k, m)?)),
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.field.degree()
    }

    pub fn q(&self) -> u64 {
        1 << self.k()
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.r as usize + 1
    }

    pub fn code_bits(&self) -> u32 {
        self.k() * (self.r + 1)
    }

    pub fn words_per_code(&self) -> u32 {
        self.code_bits().div_ceil(WORD_BITS)
    }

    /// `q^(r+1)`, one past the largest code.
    pub fn code_space(&self) -> u128 {
        1u128 << self.code_bits()
    }

    /// `(q^(r+1) - 1) / (q - 1)`.
    pub fn point_count(&self) -> u128 {
        (self.code_space() - 1) / (self.q() as u128 - 1)
    }

    pub fn label(&self) -> String {
        format!("PG({},{})", self.r, self.q())
    }

    #[inline]
    fn mask(&self) -> u128 {
        (1u128 << self.k()) - 1
    }

    #[inline]
    fn shift_of(&self, i: usize) -> u32 {
        (self.r - i as u32) * self.k()
    }

    /// Coordinate `x_i` of a code.
    #[inline]
    pub fn coordinate(&self, code: PointCode, i: usize) -> FieldElement {
        ((code.0 >> self.shift_of(i)) & self.mask()) as FieldElement
    }

    pub fn encode(&self, coords: &[FieldElement]) -> Result<PointCode> {
        let code = self.encode_vector(coords)?;
        if code.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(code)
    }

    /// Encodes any vector, the zero vector included.
    pub fn encode_vector(&self, coords: &[FieldElement]) -> Result<PointCode> {
        if coords.len() != self.dimension() {
            return Err(Error::LengthMismatch { expected: self.dimension(), got: coords.len() });
        }
        let q = self.q();
        let mut code = 0u128;
        for &x in coords {
            if x as u64 >= q {
                return Err(Error::OutOfRange { code: x as u128 });
            }
            code = (code << self.k()) | x as u128;
        }
        Ok(PointCode(code))
    }

    pub fn decode(&self, code: PointCode) -> Result<Vec<FieldElement>> {
        if code.is_zero() {
            return Err(Error::ZeroVector);
        }
        if code.0 >= self.code_space() {
            return Err(Error::OutOfRange { code: code.0 });
        }
        Ok(self.coords(code))
    }

    /// Coordinates without range checks.
    pub fn coords(&self, code: PointCode) -> Vec<FieldElement> {
        (0..self.dimension()).map(|i| self.coordinate(code, i)).collect()
    }

    /// Vector sum; `None` when the result is the zero vector.
    #[inline]
    pub fn add_points(&self, a: PointCode, b: PointCode) -> Option<PointCode> {
        match a.0 ^ b.0 {
            0 => None,
            x => Some(PointCode(x)),
        }
    }

    pub fn scalar_mul(&self, alpha: FieldElement, a: PointCode) -> Result<PointCode> {
        if alpha == 0 {
            return Err(Error::ZeroScalar);
        }
        Ok(self.scale(alpha, a))
    }

    /// Coordinate-wise product, block by block.
    pub fn scale(&self, alpha: FieldElement, a: PointCode) -> PointCode {
        if alpha == 1 {
            return a;
        }
        let f = self.field();
        let mut out = 0u128;
        for i in 0..self.dimension() {
            let x = self.coordinate(a, i);
            if x != 0 {
                out |= (f.mul(alpha, x) as u128) << self.shift_of(i);
            }
        }
        PointCode(out)
    }

    /// Index and value of the leading nonzero coordinate.
    #[inline]
    pub fn leading(&self, code: PointCode) -> Option<(usize, FieldElement)> {
        if code.is_zero() {
            return None;
        }
        let top_bit = 127 - code.0.leading_zeros();
        let block = top_bit / self.k();
        let i = (self.r - block) as usize;
        Some((i, (code.0 >> (block * self.k())) as FieldElement))
    }

    pub fn is_normalized(&self, code: PointCode) -> bool {
        matches!(self.leading(code), Some((_, 1)))
    }

    /// Representative with leading nonzero coordinate 1. Zero maps to zero.
    pub fn normalize(&self, code: PointCode) -> PointCode {
        match self.leading(code) {
            None | Some((_, 1)) => code,
            Some((_, lead)) => self.scale(self.field().inv_nonzero(lead), code),
        }
    }

    pub fn same_point(&self, a: PointCode, b: PointCode) -> bool {
        self.normalize(a) == self.normalize(b)
    }

    /// All `q + 1` points of the line through `p1` and `p2`: the two given
    /// codes followed by `alpha p1 + p2` for each nonzero `alpha` in order.
    pub fn line_points(&self, p1: PointCode, p2: PointCode) -> Result<Vec<PointCode>> {
        if p1.is_zero() || p2.is_zero() {
            return Err(Error::ZeroVector);
        }
        if self.same_point(p1, p2) {
            return Err(Error::SamePoint);
        }
        let mut out = Vec::with_capacity(self.q() as usize + 1);
        out.push(p1);
        out.push(p2);
        for alpha in self.field().nonzero() {
            out.push(PointCode(self.scale(alpha, p1).0 ^ p2.0));
        }
        Ok(out)
    }

    /// Normalized points in increasing code order.
    pub fn points(&self) -> Points {
        Points { q: self.q() as u128, block_start: 1, next: 1, end: self.code_space() }
    }

    /// Position of a normalized code in [`Geometry::points`] order.
    pub fn point_index(&self, code: PointCode) -> Option<u128> {
        let (i, lead) = self.leading(code)?;
        if lead != 1 || code.0 >= self.code_space() {
            return None;
        }
        let j = self.r - i as u32;
        let base = 1u128 << (j * self.k());
        // points with leading position below j: (q^j - 1) / (q - 1)
        let before = (base - 1) / (self.q() as u128 - 1);
        Some(before + (code.0 - base))
    }

    /// Inverse of [`Geometry::point_index`].
    pub fn point_at(&self, mut index: u128) -> Option<PointCode> {
        let mut size = 1u128;
        for _ in 0..=self.r {
            if index < size {
                return Some(PointCode(size + index));
            }
            index -= size;
            size *= self.q() as u128;
        }
        None
    }
}

/// Iterator over normalized codes; see [`Geometry::points`].
#[derive(Debug, Clone)]
pub struct Points {
    q: u128,
    block_start: u128,
    next: u128,
    end: u128,
}

impl Iterator for Points {
    type Item = PointCode;

    fn next(&mut self) -> Option<PointCode> {
        if self.next >= 2 * self.block_start {
            self.block_start *= self.q;
            self.next = self.block_start;
        }
        if self.block_start >= self.end {
            return None;
        }
        let c = self.next;
        self.next += 1;
        Some(PointCode(c))
    }
}
