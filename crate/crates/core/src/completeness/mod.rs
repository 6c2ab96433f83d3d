//! Completeness checking.
//!
//! A cap is complete when every point outside it lies on a secant. Four
//! checkers are provided, all returning the same verdict and uncovered set:
//!
//! * [`check_fast`] marks every raw code `a P_i + P_j` in a bitmap over the
//!   whole code space without normalizing, using precomputed scalar
//!   multiples of the cap points; a point is covered when any of its `q - 1`
//!   representatives is marked.
//! * [`check_naive`] normalizes every generated point and marks a bitmap
//!   indexed by point.
//! * [`check_oracle`] tests each outside point directly against the cap.
//! * [`check_split`] cuts the code space into contiguous windows that are
//!   checked independently, optionally in parallel.

pub mod coverage;
mod report;
pub mod scaler;
mod split;

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use crate::cap::Cap;
use crate::error::{Error, Result};
use crate::geometry::{Geometry, PointCode};
use crate::par;

pub use coverage::{CoverageMap, MemoryGauge};
pub use report::{Algorithm, CompletenessReport, ReportJson, DEFAULT_SAMPLE};
pub use scaler::Scaler;
pub use split::{check_split, window_bounds};

/// Largest single coverage window, in bits (1 GiB).
pub const MAX_WINDOW_BITS: u64 = 1 << 33;

/// Largest point count the oracle accepts.
pub const ORACLE_MAX_POINTS: u128 = 1_000_000;

/// Widest code handled by the word-sized checkers.
pub const MAX_CHECK_BITS: u32 = 63;

/// The `q - 1` nonzero multiples of each cap point, row by row, scalar `1`
/// first.
#[derive(Debug, Clone)]
pub struct ScalarTable {
    stride: usize,
    codes: Vec<u64>,
}

impl ScalarTable {
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Multiples of cap point `i`; entry `a - 1` is `a P_i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.codes[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, i: usize, alpha: u32) -> u64 {
        self.codes[i * self.stride + alpha as usize - 1]
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }
}

fn ensure_word_sized(g: &Geometry) -> Result<()> {
    if g.code_bits() > MAX_CHECK_BITS {
        return Err(Error::GeometryTooLarge(format!(
            "{} needs {} code bits, at most {MAX_CHECK_BITS} supported",
            g.label(),
            g.code_bits()
        )));
    }
    Ok(())
}

fn ensure_fits(cap: &Cap) -> Result<()> {
    let m = cap.geometry().point_count();
    if cap.len() as u128 > m {
        return Err(Error::CapTooLargeForGeometry { n: cap.len(), m });
    }
    Ok(())
}

pub fn precompute_multiples(cap: &Cap) -> Result<ScalarTable> {
    let g = cap.geometry();
    ensure_word_sized(g)?;
    let scaler = Scaler::new(g.field_arc().clone());
    Ok(build_table(cap, &scaler))
}

fn build_table(cap: &Cap, scaler: &Scaler) -> ScalarTable {
    let q = cap.geometry().q() as u32;
    let codes = cap
        .points()
        .iter()
        .flat_map(|p| {
            let c = p.0 as u64;
            (1..q).map(move |a| scaler.scale(a, c))
        })
        .collect();
    ScalarTable { stride: q as usize - 1, codes }
}

fn sorted_codes(cap: &Cap) -> Vec<u64> {
    let mut v: Vec<u64> = cap.points().iter().map(|p| p.0 as u64).collect();
    v.sort_unstable();
    v
}

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// The normalization-free checker.
pub fn check_fast(cap: &Cap) -> Result<CompletenessReport> {
    let start = Instant::now();
    let g = cap.geometry();
    ensure_fits(cap)?;
    ensure_word_sized(g)?;
    let space = g.code_space() as u64;
    if space > MAX_WINDOW_BITS {
        return Err(Error::GeometryTooLarge(format!(
            "coverage of {} needs {space} bits; use more shards",
            g.label()
        )));
    }
    let scaler = Scaler::new(g.field_arc().clone());
    let table = build_table(cap, &scaler);
    let gauge = MemoryGauge::new();
    let mut cov = CoverageMap::full(space, Some(&gauge));

    let n = cap.len();
    let mut marks = 0u64;
    for j in 1..n {
        let pj = table.get(j, 1);
        for i in 0..j {
            for &m in table.row(i) {
                cov.set(m ^ pj);
            }
        }
        marks += (j * table.stride()) as u64;
    }

    let q = g.q() as u32;
    let k = g.k();
    let cap_codes = sorted_codes(cap);
    let mut next_cap = cap_codes.iter().copied().peekable();
    let mut uncovered = Vec::new();
    for block in 0..=g.r() {
        let shift = block * k;
        let base = 1u64 << shift;
        for suffix in 0..base {
            let code = base | suffix;
            if next_cap.peek() == Some(&code) {
                next_cap.next();
                continue;
            }
            if cov.get(code) {
                continue;
            }
            let covered = (2..q).any(|a| cov.get(((a as u64) << shift) | scaler.scale(a, suffix)));
            if !covered {
                uncovered.push(PointCode(code as u128));
            }
        }
    }
    drop(cov);

    Ok(CompletenessReport {
        complete: uncovered.is_empty(),
        n,
        geometry: g.label(),
        algorithm: Algorithm::Fast,
        shards: 1,
        uncovered,
        pairs_processed: pair_count(n),
        marks_issued: marks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        peak_coverage_bytes: gauge.peak(),
    })
}

/// The baseline: normalize each generated point and mark it by index.
pub fn check_naive(cap: &Cap) -> Result<CompletenessReport> {
    let start = Instant::now();
    let g = cap.geometry();
    ensure_fits(cap)?;
    ensure_word_sized(g)?;
    let m = g.point_count() as u64;
    if m > MAX_WINDOW_BITS {
        return Err(Error::GeometryTooLarge(format!("{} has {m} points", g.label())));
    }
    let gauge = MemoryGauge::new();
    let mut cov = CoverageMap::full(m, Some(&gauge));
    let pts = cap.points();
    let index = |p: PointCode| g.point_index(p).expect("normalized code") as u64;

    let mut marks = 0u64;
    for j in 1..pts.len() {
        for i in 0..j {
            for a in g.field().nonzero() {
                let sum = PointCode(g.scale(a, pts[i]).0 ^ pts[j].0);
                cov.set(index(g.normalize(sum)));
                marks += 1;
            }
        }
    }
    for &p in pts {
        cov.set(index(p));
    }
    let uncovered = g
        .points()
        .enumerate()
        .filter(|&(i, _)| !cov.get(i as u64))
        .map(|(_, p)| p)
        .collect::<Vec<_>>();
    drop(cov);

    Ok(CompletenessReport {
        complete: uncovered.is_empty(),
        n: pts.len(),
        geometry: g.label(),
        algorithm: Algorithm::Naive,
        shards: 1,
        uncovered,
        pairs_processed: pair_count(pts.len()),
        marks_issued: marks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        peak_coverage_bytes: gauge.peak(),
    })
}

/// Point-by-point test: `Q` is covered iff some line through `Q` and a cap
/// point contains a second cap point. Runs on up to `workers` threads
/// (`0` = all available).
pub fn check_oracle_with(cap: &Cap, workers: usize) -> Result<CompletenessReport> {
    let start = Instant::now();
    let g = cap.geometry();
    ensure_fits(cap)?;
    let m = g.point_count();
    if m > ORACLE_MAX_POINTS {
        return Err(Error::GeometryTooLarge(format!(
            "oracle is limited to {ORACLE_MAX_POINTS} points, {} has {m}",
            g.label()
        )));
    }
    let members: HashSet<PointCode> = cap.points().iter().copied().collect();
    let members = Arc::new(members);
    let chunks = par::ranges(m as usize, 64);
    let parts = par::map_indexed(chunks.len(), workers, |c| {
        let mut out = Vec::new();
        for idx in chunks[c].clone() {
            let point = g.point_at(idx as u128).expect("in range");
            if members.contains(&point) {
                continue;
            }
            let on_secant = cap.points().iter().any(|&p| {
                g.field()
                    .nonzero()
                    .any(|a| members.contains(&g.normalize(PointCode(g.scale(a, p).0 ^ point.0))))
            });
            if !on_secant {
                out.push(point);
            }
        }
        out
    });
    let uncovered: Vec<PointCode> = parts.into_iter().flatten().collect();
    Ok(CompletenessReport {
        complete: uncovered.is_empty(),
        n: cap.len(),
        geometry: g.label(),
        algorithm: Algorithm::Oracle,
        shards: 1,
        uncovered,
        pairs_processed: 0,
        marks_issued: 0,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        peak_coverage_bytes: 0,
    })
}

pub fn check_oracle(cap: &Cap) -> Result<CompletenessReport> {
    check_oracle_with(cap, 1)
}

/// Runs the requested algorithm. `shards > 1` is only meaningful for the
/// fast algorithm.
pub fn check(cap: &Cap, algorithm: Algorithm, shards: usize, workers: usize) -> Result<CompletenessReport> {
    match algorithm {
        Algorithm::Fast if shards > 1 || workers > 1 => check_split(cap, shards, workers),
        Algorithm::Fast => check_fast(cap),
        Algorithm::Naive => check_naive(cap),
        Algorithm::Oracle => check_oracle_with(cap, workers),
    }
}
