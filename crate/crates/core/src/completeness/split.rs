//! Window-split completeness check.
//!
//! The code range `[0, q^(r+1))` is cut into contiguous windows. Each window
//! task replays the whole pair loop but only materializes the bits of its own
//! window, so a window needs `ceil(q^(r+1) / s)` bits rounded up to a word.
//!
//! The `q - 1` multiples of one point are scattered over the code range, so
//! a window cannot run the "any representative marked" test on its own.
//! Window tasks therefore mark the normalized representative of each
//! interior line point directly. For a pair of normalized cap points the
//! representatives follow from the leading positions alone:
//!
//! * `P_i` leads strictly before `P_j`: `P_i + b P_j` for `b != 0`;
//! * same leading position: `c P_i + (1 + c) P_j` for `c != 0, 1`, plus
//!   `v^-1 (P_i + P_j)` where `v` is the leading value of `P_i + P_j`.
//!
//! Every term is a table lookup and an XOR; no coordinate-wise product is
//! ever taken in the loop.

use std::time::Instant;

use super::report::{Algorithm, CompletenessReport};
use super::{
    build_table, check_fast, ensure_fits, ensure_word_sized, pair_count, sorted_codes, CoverageMap,
    MemoryGauge, ScalarTable, Scaler, MAX_WINDOW_BITS,
};
use crate::cap::Cap;
use crate::error::{Error, Result};
use crate::field::FieldTable;
use crate::geometry::PointCode;
use crate::par;

/// Bounds of the `s` windows over `[0, space)`. Window width is
/// `ceil(space / s)` rounded up to a multiple of 64; trailing windows may
/// be empty.
pub fn window_bounds(space: u64, shards: usize) -> Vec<(u64, u64)> {
    let s = shards.max(1) as u64;
    let width = space.div_ceil(s).div_ceil(64) * 64;
    (0..s)
        .map(|t| {
            let lo = (t * width).min(space);
            (lo, (lo + width).min(space))
        })
        .collect()
}

struct CanonicalPairs<'a> {
    table: &'a ScalarTable,
    field: &'a FieldTable,
    k: u32,
    lead: Vec<u32>,
    /// `(c, 1 + c)` for every `c` outside `{0, 1}`.
    same_lead: Vec<(u32, u32)>,
}

impl<'a> CanonicalPairs<'a> {
    fn new(table: &'a ScalarTable, field: &'a FieldTable, codes: &[u64]) -> Self {
        let k = field.degree();
        let lead = codes.iter().map(|&c| (63 - c.leading_zeros()) / k).collect();
        let same_lead = (2..field.order()).map(|c| (c, c ^ 1)).collect();
        CanonicalPairs { table, field, k, lead, same_lead }
    }

    #[inline]
    fn for_each(&self, i: usize, j: usize, mut f: impl FnMut(u64)) {
        let t = self.table;
        let (li, lj) = (self.lead[i], self.lead[j]);
        if li != lj {
            let (hi, lo) = if li > lj { (i, j) } else { (j, i) };
            let top = t.get(hi, 1);
            for &m in t.row(lo) {
                f(top ^ m);
            }
            return;
        }
        for &(a, b) in &self.same_lead {
            f(t.get(i, a) ^ t.get(j, b));
        }
        let sum = t.get(i, 1) ^ t.get(j, 1);
        let block = (63 - sum.leading_zeros()) / self.k;
        let v = (sum >> (block * self.k)) as u32;
        let w = self.field.inv_nonzero(v);
        f(t.get(i, w) ^ t.get(j, w));
    }
}

/// Split check over `shards` windows on up to `workers` threads (`0` = all
/// available). The verdict and uncovered set do not depend on either
/// argument.
pub fn check_split(cap: &Cap, shards: usize, workers: usize) -> Result<CompletenessReport> {
    let start = Instant::now();
    let g = cap.geometry();
    ensure_fits(cap)?;
    ensure_word_sized(g)?;
    let shards = shards.max(1);
    if shards == 1 {
        return check_fast(cap);
    }
    let space = g.code_space() as u64;
    let windows = window_bounds(space, shards);
    let width = windows[0].1 - windows[0].0;
    if width > MAX_WINDOW_BITS {
        return Err(Error::GeometryTooLarge(format!(
            "window of {width} bits with {shards} shards; use more shards"
        )));
    }

    let scaler = Scaler::new(g.field_arc().clone());
    let table = build_table(cap, &scaler);
    let codes: Vec<u64> = cap.points().iter().map(|p| p.0 as u64).collect();
    let pairs = CanonicalPairs::new(&table, g.field(), &codes);
    let cap_sorted = sorted_codes(cap);
    let gauge = MemoryGauge::new();
    let (r, k) = (g.r(), g.k());
    let n = cap.len();

    let results = par::map_indexed(windows.len(), workers, |t| {
        let (lo, hi) = windows[t];
        let mut cov = CoverageMap::new(lo, hi, Some(&gauge));
        let mut marks = 0u64;
        if lo < hi {
            for j in 1..n {
                for i in 0..j {
                    pairs.for_each(i, j, |x| {
                        if cov.set_in_window(x) {
                            marks += 1;
                        }
                    });
                }
            }
        }
        let mut uncovered = Vec::new();
        for block in 0..=r {
            let base = 1u64 << (block * k);
            let from = base.max(lo);
            let to = (2 * base).min(hi);
            if from >= to {
                continue;
            }
            let mut cap_at = cap_sorted.partition_point(|&c| c < from);
            for code in from..to {
                if cap_sorted.get(cap_at) == Some(&code) {
                    cap_at += 1;
                    continue;
                }
                if !cov.get(code) {
                    uncovered.push(PointCode(code as u128));
                }
            }
        }
        (uncovered, marks)
    });

    let mut uncovered = Vec::new();
    let mut marks = 0;
    for (u, m) in results {
        uncovered.extend(u);
        marks += m;
    }
    Ok(CompletenessReport {
        complete: uncovered.is_empty(),
        n,
        geometry: g.label(),
        algorithm: Algorithm::Fast,
        shards,
        uncovered,
        pairs_processed: pair_count(n),
        marks_issued: marks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        peak_coverage_bytes: gauge.peak(),
    })
}
