mod common;

use capcheck::quantum::{check_hyperplane_parity, check_self_orthogonal, check_weights_even};
use capcheck::{verify_quantum_cap, Cap, CapMatrix, Geometry};

#[test]
fn conditions_agree_on_greedy_caps() {
    let mut quantum = 0;
    for r in 2..=4 {
        let g = Geometry::new(r, 4).unwrap();
        for seed in 0..40 {
            let full = Cap::empty(&g).greedy_extend(seed).unwrap();
            for cap in [full.clone(), full.truncated(full.len() - 1), full.truncated(full.len() / 2)] {
                let m = CapMatrix::from_cap(&cap).unwrap();
                let h = check_self_orthogonal(&m);
                assert_eq!(check_weights_even(&m).unwrap(), h);
                assert_eq!(check_hyperplane_parity(&cap).unwrap(), h);
                let v = verify_quantum_cap(&cap).unwrap();
                assert!(v.conditions_agree());
                quantum += v.is_quantum_cap as usize;
            }
        }
    }
    // the plane hyperovals and the 17-caps of PG(3,4) are quantum
    assert!(quantum > 0);
}

#[test]
fn seventeen_caps_are_quantum() {
    let g = Geometry::new(3, 4).unwrap();
    let mut seen = 0;
    for seed in 0..200 {
        let c = Cap::empty(&g).greedy_extend(seed).unwrap();
        if c.len() == 17 {
            seen += 1;
            assert!(verify_quantum_cap(&c).unwrap().is_quantum_cap);
        }
    }
    assert!(seen > 0);
}
