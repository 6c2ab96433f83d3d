mod common;

use capcheck::{check_fast, check_oracle, parse_cap, Cap, CapFormat, Geometry, PointCode};
use common::{all_caps, complete_caps, hyperoval, is_cap_cubic, Oracle};
use proptest::prelude::*;

#[test]
fn hyperoval_triples_by_rank() {
    assert!(is_cap_cubic(&hyperoval()));
    let o = Oracle::for_geometry(hyperoval().geometry());
    // every line meets the hyperoval in 0 or 2 points
    let g = hyperoval().geometry().clone();
    let pts = common::coords(&hyperoval());
    for d in g.points() {
        let d = g.coords(d);
        let on = pts
            .iter()
            .filter(|p| p.iter().zip(&d).fold(0, |acc, (&x, &y)| acc ^ o.mul(x, y)) == 0)
            .count();
        assert!(on == 0 || on == 2);
    }
}

#[test]
fn complete_caps_of_small_planes() {
    let g = Geometry::new(2, 4).unwrap();
    let complete = complete_caps(&g);
    assert!(!complete.is_empty());
    assert!(complete.iter().all(|c| c.len() == 6));
    let fano = Geometry::new(2, 2).unwrap();
    assert!(complete_caps(&fano).iter().all(|c| c.len() == 4));
}

#[test]
fn validate_matches_cubic_check_on_random_sets() {
    for (r, q) in [(2, 4), (3, 4), (3, 2), (2, 8), (4, 4)] {
        let g = Geometry::new(r, q).unwrap();
        let m = g.point_count() as u64;
        for seed in 0..60u64 {
            // arbitrary point sets, mostly not caps
            let n = 3 + (seed % 12) as usize;
            let mut x = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
            let mut idx = Vec::new();
            while idx.len() < n {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                let i = x % m;
                if !idx.contains(&i) {
                    idx.push(i);
                }
            }
            let cap = Cap::from_points(&g, idx.iter().map(|&i| g.point_at(i as u128).unwrap())).unwrap();
            let expect = is_cap_cubic(&cap);
            match cap.validate() {
                Ok(()) => assert!(expect),
                Err(v) => {
                    assert!(!expect);
                    let o = Oracle::for_geometry(&g);
                    let [a, b, c] = v.triple.map(|p| g.coords(p));
                    assert!(o.collinear(&a, &b, &c));
                    assert!(v.triple.iter().all(|p| cap.points().contains(p)));
                    assert!(v.triple[0] != v.triple[1] && v.triple[1] != v.triple[2] && v.triple[0] != v.triple[2]);
                }
            }
        }
    }
}

#[test]
fn every_cap_of_pg24_validates() {
    let g = Geometry::new(2, 4).unwrap();
    let pts: Vec<PointCode> = g.points().collect();
    for c in all_caps(&g) {
        let cap = Cap::from_points(&g, c.iter().map(|&i| pts[i])).unwrap();
        assert!(cap.is_cap());
    }
}

#[test]
fn greedy_output_is_complete_cap() {
    for (r, q) in [(2, 2), (3, 2), (4, 2), (2, 4), (3, 4), (4, 4), (2, 8), (3, 8)] {
        let g = Geometry::new(r, q).unwrap();
        for seed in 0..5 {
            let c = Cap::empty(&g).greedy_extend(seed).unwrap();
            assert!(is_cap_cubic(&c) || c.len() > 60);
            assert!(c.is_cap());
            assert!(check_fast(&c).unwrap().complete);
            // subsets of caps are caps
            assert!(c.subset((0..c.len()).step_by(2)).unwrap().is_cap());
            // extending a prefix keeps the prefix
            let grown = c.truncated(c.len() / 2).greedy_extend(seed + 100).unwrap();
            assert_eq!(&grown.points()[..c.len() / 2], &c.points()[..c.len() / 2]);
            assert!(check_fast(&grown).unwrap().complete);
        }
    }
}

#[test]
fn greedy_monotone_uncovered() {
    let g = Geometry::new(3, 4).unwrap();
    let full = Cap::empty(&g).greedy_extend(11).unwrap();
    let mut prev = check_oracle(&Cap::empty(&g)).unwrap().uncovered;
    for n in 1..=full.len() {
        let cur = check_oracle(&full.truncated(n)).unwrap().uncovered;
        let added = full.points()[n - 1];
        assert!(cur.iter().all(|p| prev.contains(p)));
        assert!(!cur.contains(&added));
        // the point the greedy run added next was still uncovered
        if n < full.len() {
            assert!(cur.contains(&full.points()[n]));
        }
        prev = cur;
    }
    assert!(prev.is_empty());
}

#[test]
fn packed_and_text_agree() {
    let g = Geometry::new(4, 8).unwrap();
    let c = Cap::empty(&g).greedy_extend(3).unwrap();
    let text = c.write(CapFormat::Text);
    let packed = c.write(CapFormat::Packed);
    assert_eq!(parse_cap(&text, &g).unwrap(), c);
    assert_eq!(parse_cap(&packed, &g).unwrap(), c);
    let with_header = format!("# PG(4,8)\n{packed}");
    assert_eq!(parse_cap(&with_header, &g).unwrap(), c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn write_parse_round_trip(seed in 0u64..1000, cut in 0usize..40, packed in any::<bool>()) {
        let g = Geometry::new(3, 4).unwrap();
        let c = Cap::empty(&g).greedy_extend(seed).unwrap().truncated(cut);
        let fmt = if packed { CapFormat::Packed } else { CapFormat::Text };
        let s = c.write(fmt);
        let back = parse_cap(&s, &g).unwrap();
        prop_assert_eq!(back.write(fmt), s);
        prop_assert_eq!(back, c);
    }
}
