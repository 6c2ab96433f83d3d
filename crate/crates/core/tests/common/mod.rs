//! Arithmetic written independently of the crate, for use as test oracles.
#![allow(dead_code)]

use capcheck::{Cap, Geometry, PointCode};

/// Shift-and-add multiply in GF(2^k) modulo `modulus`.
pub fn gf_mul(mut a: u32, mut b: u32, k: u32, modulus: u32) -> u32 {
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> k & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

pub struct Oracle {
    pub k: u32,
    pub modulus: u32,
}

impl Oracle {
    pub fn for_geometry(g: &Geometry) -> Self {
        Oracle { k: g.k(), modulus: g.field().modulus() }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        gf_mul(a, b, self.k, self.modulus)
    }

    pub fn inv(&self, a: u32) -> u32 {
        (1..1 << self.k).find(|&b| self.mul(a, b) == 1).expect("nonzero")
    }

    /// Rank of a list of vectors by elimination.
    pub fn rank(&self, vectors: &[Vec<u32>]) -> usize {
        let mut m: Vec<Vec<u32>> = vectors.to_vec();
        let cols = m.first().map_or(0, |v| v.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(rank, p);
            let inv = self.inv(m[rank][c]);
            let pivot: Vec<u32> = m[rank].iter().map(|&x| self.mul(inv, x)).collect();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x ^= self.mul(f, y);
                    }
                }
            }
            m[rank] = pivot;
            rank += 1;
        }
        rank
    }

    pub fn collinear(&self, a: &[u32], b: &[u32], c: &[u32]) -> bool {
        self.rank(&[a.to_vec(), b.to_vec(), c.to_vec()]) <= 2
    }
}

/// Coordinates of every cap point.
pub fn coords(cap: &Cap) -> Vec<Vec<u32>> {
    cap.points().iter().map(|&p| cap.geometry().coords(p)).collect()
}

/// All-triples collinearity test.
pub fn is_cap_cubic(cap: &Cap) -> bool {
    let o = Oracle::for_geometry(cap.geometry());
    let c = coords(cap);
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            for l in j + 1..c.len() {
                if o.collinear(&c[i], &c[j], &c[l]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Points outside the cap lying on no secant, by rank tests only.
pub fn uncovered_by_rank(cap: &Cap) -> Vec<PointCode> {
    let g = cap.geometry();
    let o = Oracle::for_geometry(g);
    let c = coords(cap);
    g.points()
        .filter(|p| !cap.points().contains(p))
        .filter(|&p| {
            let x = g.coords(p);
            !(0..c.len()).any(|i| (i + 1..c.len()).any(|j| o.collinear(&c[i], &c[j], &x)))
        })
        .collect()
}

pub fn hyperoval() -> Cap {
    let g = Geometry::new(2, 4).unwrap();
    Cap::from_coords(&g, &[[1, 0, 0], [1, 1, 1], [1, 2, 3], [1, 3, 2], [0, 0, 1], [0, 1, 0]]).unwrap()
}

pub fn frame() -> Cap {
    let g = Geometry::new(2, 4).unwrap();
    Cap::from_coords(&g, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
}

/// Every cap of a small plane, found by backtracking over point indices.
pub fn all_caps(g: &Geometry) -> Vec<Vec<usize>> {
    let o = Oracle::for_geometry(g);
    let pts: Vec<Vec<u32>> = g.points().map(|p| g.coords(p)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(o: &Oracle, pts: &[Vec<u32>], start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for p in start..pts.len() {
            let ok = (0..cur.len())
                .all(|i| (i + 1..cur.len()).all(|j| !o.collinear(&pts[cur[i]], &pts[cur[j]], &pts[p])));
            if ok {
                cur.push(p);
                go(o, pts, p + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(&o, &pts, 0, &mut cur, &mut out);
    out
}

/// Caps that no point outside them can extend.
pub fn complete_caps(g: &Geometry) -> Vec<Vec<usize>> {
    let o = Oracle::for_geometry(g);
    let pts: Vec<Vec<u32>> = g.points().map(|p| g.coords(p)).collect();
    all_caps(g)
        .into_iter()
        .filter(|cap| {
            (0..pts.len()).filter(|p| !cap.contains(p)).all(|p| {
                (0..cap.len()).any(|i| (i + 1..cap.len()).any(|j| o.collinear(&pts[cap[i]], &pts[cap[j]], &pts[p])))
            })
        })
        .collect()
}
