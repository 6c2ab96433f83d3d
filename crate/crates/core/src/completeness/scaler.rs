use std::sync::Arc;

use crate::field::{FieldElement, FieldTable};

/// Scalar multiplication of single-word codes through per-scalar lookup
/// tables over chunks of whole coordinate blocks.
///
/// For `k <= 8` a chunk holds `8 / k` blocks (one block for `k > 4`), so a
/// table per nonzero scalar has at most 256 entries. Above that the product
/// is taken block by block through the field.
#[derive(Debug, Clone)]
pub struct Scaler {
    k: u32,
    chunk_bits: u32,
    chunk_mask: u64,
    tables: Vec<u64>,
    field: Arc<FieldTable>,
}

impl Scaler {
    pub fn new(field: Arc<FieldTable>) -> Self {
        let k = field.degree();
        if k > 8 {
            return Scaler { k, chunk_bits: k, chunk_mask: (1 << k) - 1, tables: Vec::new(), field };
        }
        let blocks = (8 / k).max(1);
        let chunk_bits = blocks * k;
        let size = 1usize << chunk_bits;
        let q = field.order();
        let block_mask = (1u64 << k) - 1;
        let mut tables = vec![0u64; (q as usize - 1) * size];
        for alpha in 1..q {
            let row = &mut tables[(alpha as usize - 1) * size..alpha as usize * size];
            for (v, slot) in row.iter_mut().enumerate() {
                let mut out = 0u64;
                for b in 0..blocks {
                    let x = ((v as u64) >> (b * k)) & block_mask;
                    out |= (field.mul(alpha, x as FieldElement) as u64) << (b * k);
                }
                *slot = out;
            }
        }
        Scaler { k, chunk_bits, chunk_mask: size as u64 - 1, tables, field }
    }

    #[inline]
    pub fn scale(&self, alpha: FieldElement, mut code: u64) -> u64 {
        let mut out = 0u64;
        let mut shift = 0;
        if self.tables.is_empty() {
            while code != 0 {
                let x = (code & self.chunk_mask) as FieldElement;
                out |= (self.field.mul(alpha, x) as u64) << shift;
                code >>= self.k;
                shift += self.k;
            }
            return out;
        }
        let row = &self.tables[((alpha as usize - 1) << self.chunk_bits)..];
        while code != 0 {
            out |= row[(code & self.chunk_mask) as usize] << shift;
            code >>= self.chunk_bits;
            shift += self.chunk_bits;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Geometry, PointCode};

    #[test]
    fn matches_blockwise_scaling() {
        for (r, q) in [(2, 2), (3, 4), (5, 8), (4, 16), (3, 32), (2, 256), (2, 1024)] {
            let g = Geometry::new(r, q).unwrap();
            let s = Scaler::new(g.field_arc().clone());
            let space = g.code_space() as u64;
            let step = (space / 2000).max(1);
            let mut code = 1;
            while code < space {
                for a in g.field().nonzero().take(40) {
                    assert_eq!(s.scale(a, code), g.scale(a, PointCode(code as u128)).0 as u64);
                }
                code += step;
            }
        }
    }
}
