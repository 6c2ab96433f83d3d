//! Arithmetic in GF(2^k) with elements stored as the integer `p(2)` of their
//! polynomial representative, so that field addition is a plain XOR.

use crate::error::{Error, Result};

/// A field element in the polynomial-at-two encoding, always `< 2^k`.
pub type FieldElement = u32;

pub const MAX_DEGREE: u32 = 16;

/// Largest degree for which a full product table is materialized.
const TABLE_DEGREE: u32 = 8;

/// Default irreducible moduli, indexed by `k - 1`.
pub const DEFAULT_MODULI: [u32; 16] = [
    0b11,                  // x + 1
    0b111,                 // x^2 + x + 1
    0b1011,                // x^3 + x + 1
    0b1_0011,              // x^4 + x + 1
    0b10_0101,             // x^5 + x^2 + 1
    0b100_0011,            // x^6 + x + 1
    0b1000_0011,           // x^7 + x + 1
    0b1_0001_1101,         // x^8 + x^4 + x^3 + x^2 + 1
    0b10_0001_0001,        // x^9 + x^4 + 1
    0b100_0000_1001,       // x^10 + x^3 + 1
    0b1000_0000_0101,      // x^11 + x^2 + 1
    0b1_0000_0101_0011,    // x^12 + x^6 + x^4 + x + 1
    0b10_0000_0001_1011,   // x^13 + x^4 + x^3 + x + 1
    0b100_0100_0100_0011,  // x^14 + x^10 + x^6 + x + 1
    0b1000_0000_0000_0011, // x^15 + x + 1
    0x1_100b,              // x^16 + x^12 + x^3 + x + 1
];

#[inline]
fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Carry-less product of two binary polynomials.
#[inline]
pub fn clmul(a: u32, b: u32) -> u64 {
    let (a, mut b) = (a as u64, b);
    let mut acc = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of `p` modulo the binary polynomial `m` (`m != 0`).
pub fn poly_rem(mut p: u64, m: u64) -> u64 {
    let dm = degree(m);
    while p != 0 && degree(p) >= dm {
        p ^= m << (degree(p) - dm);
    }
    p
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: u32) -> bool {
    let m = modulus as u64;
    let d = degree(m);
    if d < 1 {
        return false;
    }
    for t in 1..=(d / 2) {
        for low in 0..(1u64 << t) {
            if poly_rem(m, (1u64 << t) | low) == 0 {
                return false;
            }
        }
    }
    true
}

/// Immutable GF(2^k) arithmetic tables.
#[derive(Debug, Clone)]
pub struct FieldTable {
    k: u32,
    modulus: u32,
    mul: Vec<u8>,
    inv: Vec<FieldElement>,
    sq: Vec<FieldElement>,
}

impl FieldTable {
    /// GF(2^k) under the default modulus for `k`.
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&k) {
            return Err(Error::UnsupportedDegree { k });
        }
        Self::with_modulus(k, DEFAULT_MODULI[k as usize - 1])
    }

    pub fn with_modulus(k: u32, modulus: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&k) {
            return Err(Error::UnsupportedDegree { k });
        }
        if degree(modulus as u64) != k as i32 {
            return Err(Error::ModulusDegree { k, modulus });
        }
        if !is_irreducible(modulus) {
            return Err(Error::ReduciblePolynomial { modulus });
        }
        let q = 1usize << k;
        let mut table = FieldTable {
            k,
            modulus,
            mul: Vec::new(),
            inv: Vec::new(),
            sq: Vec::new(),
        };
        if k <= TABLE_DEGREE {
            let mut mul = vec![0u8; q * q];
            for a in 0..q {
                for b in a..q {
                    let p = table.mul_slow(a as u32, b as u32) as u8;
                    mul[(a << k) | b] = p;
                    mul[(b << k) | a] = p;
                }
            }
            table.mul = mul;
        }
        table.sq = (0..q as u32).map(|a| table.mul(a, a)).collect();
        table.inv = (0..q as u32)
            .map(|a| if a == 0 { 0 } else { table.pow(a, q as u64 - 2) })
            .collect();
        Ok(table)
    }

    #[inline]
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        poly_rem(clmul(a, b), self.modulus as u64) as u32
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        1 << self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.mul.is_empty() {
            self.mul_slow(a, b)
        } else {
            self.mul[((a as usize) << self.k) | b as usize] as FieldElement
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let (mut base, mut acc) = (a, 1);
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        match a {
            0 => Err(Error::ZeroInverse),
            _ => Ok(self.inv[a as usize]),
        }
    }

    /// Inverse of a nonzero element without the zero check.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.sq[a as usize]
    }

    /// The GF(4) conjugation `y -> y^2`.
    pub fn conjugate(&self, a: FieldElement) -> Result<FieldElement> {
        if self.k != 2 {
            return Err(Error::UnsupportedField { k: self.k });
        }
        Ok(self.square(a))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.order()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> {
        1..self.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_named_values() {
        let f = FieldTable::new(2).unwrap();
        assert_eq!(f.modulus(), 7);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.add(2, 2), 0);
        assert_eq!(f.add(1, 2), 3);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.inv(1), Ok(1));
        assert_eq!(f.inv(2), Ok(3));
        assert_eq!(f.inv(0), Err(Error::ZeroInverse));
        assert_eq!(f.conjugate(0), Ok(0));
        assert_eq!(f.conjugate(2), Ok(3));
        assert_eq!(f.conjugate(3), Ok(2));
    }

    #[test]
    fn gf8_inverse_of_two() {
        let f = FieldTable::new(3).unwrap();
        assert_eq!(f.modulus(), 11);
        // brute force: the b with 2*b = 1
        let b = (1..8).find(|&b| f.mul(2, b) == 1).unwrap();
        assert_eq!(b, 5);
        assert_eq!(f.inv(2), Ok(5));
    }

    #[test]
    fn gf2_is_and() {
        let f = FieldTable::new(1).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(f.mul(a, b), a & b);
            }
        }
    }

    #[test]
    fn reducible_and_bad_moduli() {
        assert_eq!(
            FieldTable::with_modulus(2, 6).unwrap_err(),
            Error::ReduciblePolynomial { modulus: 6 }
        );
        assert_eq!(
            FieldTable::with_modulus(2, 5).unwrap_err(),
            Error::ReduciblePolynomial { modulus: 5 }
        );
        assert!(matches!(
            FieldTable::with_modulus(3, 7),
            Err(Error::ModulusDegree { .. })
        ));
        assert!(matches!(FieldTable::new(0), Err(Error::UnsupportedDegree { .. })));
        assert!(matches!(FieldTable::new(17), Err(Error::UnsupportedDegree { .. })));
    }

    #[test]
    fn conjugate_needs_gf4() {
        let f = FieldTable::new(3).unwrap();
        assert_eq!(f.conjugate(1), Err(Error::UnsupportedField { k: 3 }));
    }

    #[test]
    fn every_default_modulus_is_irreducible() {
        for k in 1..=MAX_DEGREE {
            assert!(is_irreducible(DEFAULT_MODULI[k as usize - 1]), "k={k}");
        }
    }

    #[test]
    fn alternate_modulus_gf16() {
        // x^4 + x^3 + 1
        let f = FieldTable::with_modulus(4, 0b11001).unwrap();
        for a in f.nonzero() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for k in 1..=4 {
            let f = FieldTable::new(k).unwrap();
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
                if a != 0 {
                    let inv = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, inv), 1);
                    assert_eq!((1..q).filter(|&b| f.mul(a, b) == 1).count(), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.square(a ^ b), f.square(a) ^ f.square(b));
                    for c in 0..q {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn large_degree_uses_clmul_path() {
        let f = FieldTable::new(12).unwrap();
        for a in [1u32, 2, 3, 0x800, 0xabc, 0xfff] {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        // multiplicative group of GF(2^12) has order 4095
        assert_eq!(f.pow(2, 4095), 1);
    }
}
