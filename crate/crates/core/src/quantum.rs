//! Quantum-cap conditions for caps in PG(r, 4).
//!
//! The cap points are the columns of an `(r + 1) x n` matrix over GF(4)
//! whose rows generate a quaternary code. The cap is a quantum cap when it
//! spans the space and the code is self-orthogonal under the Hermitian form
//! `<x, y> = sum x_i y_i^2`. Two other conditions are equivalent to the
//! latter: every codeword has even weight, and every hyperplane meets the
//! cap in as many points as the cap has, modulo 2. All three are computed
//! independently here.

use std::sync::Arc;

use serde::Serialize;

use crate::cap::Cap;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTable};
use crate::par;

/// Largest dimension for which hyperplanes and codewords are enumerated.
pub const MAX_ENUMERATION_DIM: u32 = 8;

#[derive(Debug, Clone)]
pub struct CapMatrix {
    field: Arc<FieldTable>,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

fn require_gf4(field: &FieldTable) -> Result<()> {
    if field.degree() != 2 {
        return Err(Error::UnsupportedField { k: field.degree() });
    }
    Ok(())
}

impl CapMatrix {
    /// Columns are the normalized cap points in cap order.
    pub fn from_cap(cap: &Cap) -> Result<Self> {
        let g = cap.geometry();
        require_gf4(g.field())?;
        let rows = g.dimension();
        let cols = cap.len();
        let mut entries = vec![0; rows * cols];
        for (j, &p) in cap.points().iter().enumerate() {
            for (i, x) in g.coords(p).into_iter().enumerate() {
                entries[i * cols + j] = x;
            }
        }
        Ok(CapMatrix { field: g.field_arc().clone(), rows, cols, entries })
    }

    pub fn from_rows(field: Arc<FieldTable>, rows: &[Vec<FieldElement>]) -> Result<Self> {
        require_gf4(&field)?;
        let cols = rows.first().map_or(0, |r| r.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, got: r.len() });
            }
        }
        Ok(CapMatrix { field, rows: rows.len(), cols, entries: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    /// Copy with row `i` multiplied by `alpha`.
    pub fn scale_row(&self, i: usize, alpha: FieldElement) -> Self {
        let mut out = self.clone();
        for x in &mut out.entries[i * self.cols..(i + 1) * self.cols] {
            *x = self.field.mul(alpha, *x);
        }
        out
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m: Vec<Vec<FieldElement>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let inv = f.inv_nonzero(m[rank][col]);
            for x in &mut m[rank] {
                *x = f.mul(inv, *x);
            }
            let pivot = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                let factor = row[col];
                if i != rank && factor != 0 {
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x ^= f.mul(factor, y);
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }
}

pub fn hermitian_inner(field: &FieldTable, x: &[FieldElement], y: &[FieldElement]) -> Result<FieldElement> {
    require_gf4(field)?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    Ok(x.iter().zip(y).fold(0, |acc, (&a, &b)| acc ^ field.mul(a, field.square(b))))
}

/// Every pair of rows, a row with itself included, is Hermitian-orthogonal.
pub fn check_self_orthogonal(mat: &CapMatrix) -> bool {
    let f = mat.field();
    (0..mat.rows()).all(|i| {
        (i..mat.rows()).all(|j| hermitian_inner(f, mat.row(i), mat.row(j)) == Ok(0))
    })
}

/// Every hyperplane meets the cap in a number of points with the parity of
/// the cap size. Hyperplanes are enumerated through their dual points.
pub fn check_hyperplane_parity(cap: &Cap) -> Result<bool> {
    let g = cap.geometry();
    require_gf4(g.field())?;
    if g.r() > MAX_ENUMERATION_DIM {
        return Err(Error::GeometryTooLarge(format!(
            "hyperplane enumeration limited to r <= {MAX_ENUMERATION_DIM}"
        )));
    }
    let f = g.field();
    let columns: Vec<Vec<FieldElement>> = cap.points().iter().map(|&p| g.coords(p)).collect();
    let parity = cap.len() % 2;
    let m = g.point_count() as usize;
    let chunks = par::ranges(m, 32);
    let ok = par::map_indexed(chunks.len(), 0, |c| {
        chunks[c].clone().all(|idx| {
            let dual = g.coords(g.point_at(idx as u128).expect("in range"));
            let on = columns
                .iter()
                .filter(|p| p.iter().zip(&dual).fold(0, |acc, (&x, &d)| acc ^ f.mul(x, d)) == 0)
                .count();
            on % 2 == parity
        })
    });
    Ok(ok.into_iter().all(|b| b))
}

/// Every codeword of the row space has even Hamming weight.
///
/// Coefficient vectors are walked like an odometer; each step adds the
/// difference of one digit times its row to the running codeword and
/// updates the weight column by column.
pub fn check_weights_even(mat: &CapMatrix) -> Result<bool> {
    if mat.rows() > MAX_ENUMERATION_DIM as usize + 1 {
        return Err(Error::GeometryTooLarge(format!(
            "codeword enumeration limited to {} rows",
            MAX_ENUMERATION_DIM + 1
        )));
    }
    let f = mat.field();
    let q = f.order();
    let mut digits = vec![0u32; mat.rows()];
    let mut word = vec![0u32; mat.cols()];
    let mut weight = 0usize;
    loop {
        if !weight.is_multiple_of(2) {
            return Ok(false);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(true);
            }
            let old = digits[i];
            let new = (old + 1) % q;
            digits[i] = new;
            let delta = old ^ new;
            for (w, &x) in word.iter_mut().zip(mat.row(i)) {
                if x != 0 {
                    let before = *w != 0;
                    *w ^= f.mul(delta, x);
                    let after = *w != 0;
                    if before != after {
                        if after {
                            weight += 1;
                        } else {
                            weight -= 1;
                        }
                    }
                }
            }
            if new != 0 {
                break;
            }
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantumVerdict {
    pub spans_space: bool,
    pub hermitian_self_orthogonal: bool,
    pub hyperplane_parity_ok: Option<bool>,
    pub all_weights_even: Option<bool>,
    pub is_quantum_cap: bool,
}

impl QuantumVerdict {
    /// The computed conditions all give the same answer.
    pub fn conditions_agree(&self) -> bool {
        let h = self.hermitian_self_orthogonal;
        self.hyperplane_parity_ok.is_none_or(|x| x == h) && self.all_weights_even.is_none_or(|x| x == h)
    }
}

pub fn verify_quantum_cap(cap: &Cap) -> Result<QuantumVerdict> {
    let mat = CapMatrix::from_cap(cap)?;
    let spans_space = mat.rank() == mat.rows();
    let hermitian_self_orthogonal = check_self_orthogonal(&mat);
    let feasible = cap.geometry().r() <= MAX_ENUMERATION_DIM;
    let hyperplane_parity_ok = if feasible { Some(check_hyperplane_parity(cap)?) } else { None };
    let all_weights_even = if feasible { Some(check_weights_even(&mat)?) } else { None };
    Ok(QuantumVerdict {
        spans_space,
        hermitian_self_orthogonal,
        hyperplane_parity_ok,
        all_weights_even,
        is_quantum_cap: spans_space && hermitian_self_orthogonal,
    })
}
