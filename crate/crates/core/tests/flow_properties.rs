mod common;

use common::{c, matrix_and_word, matrix_strategy};
use gz_core::coords::phi;
use gz_core::flows::{act, diag_action, flow, transpose_equivariance_defect, FlowKey, GroupWord};
use gz_core::linalg::{inverse, mat_exp};
use gz_core::regularity::isotropy_defect;
use gz_core::{Matrix, C64};
use proptest::prelude::*;

/// Rescales each word entry so that `t_(k,m) (x_m)^{m-k}` has norm at most
/// the entry's original modulus, keeping every group element well conditioned.
fn tame(x: &Matrix, w: &GroupWord) -> GroupWord {
    let mut out = w.clone();
    for key in FlowKey::all(x.n()) {
        out.set(key, w.get(key) * tame_time(x, key, 1.0));
    }
    out
}

fn tame_time(x: &Matrix, key: FlowKey, t: f64) -> C64 {
    let p = x.cutoff(key.m).unwrap().pow(key.m - key.k).norm_fro();
    c(t / p.max(1.0))
}

/// `‖g‖₁ ‖g⁻¹‖₁` for the group element generating the flow of `key` at time `t`.
fn flow_condition(x: &Matrix, key: FlowKey, t: C64) -> f64 {
    let z = x.cutoff(key.m).unwrap().pow(key.m - key.k).scale(t);
    let g = mat_exp(&z).unwrap();
    g.norm_1() * inverse(&g).unwrap().norm_1()
}

fn key_strategy(n: usize) -> impl Strategy<Value = FlowKey> {
    (1..n).prop_flat_map(|m| (1..=m).prop_map(move |k| FlowKey::new(k, m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_preserves_phi((x, w) in matrix_and_word(2, 6, 0.5)) {
        let y = act(&x, &tame(&x, &w)).unwrap();
        prop_assert!(phi(&y).max_diff(&phi(&x)) < 1e-8);
    }

    #[test]
    fn flows_commute(
        (x, k1, k2) in (2usize..=5).prop_flat_map(|n| (matrix_strategy(n, n), key_strategy(n), key_strategy(n))),
        t1 in -1.0f64..1.0,
        t2 in -1.0f64..1.0,
    ) {
        let (t1, t2) = (tame_time(&x, k1, t1), tame_time(&x, k2, t2));
        let a = flow(&flow(&x, k1, t1).unwrap(), k2, t2).unwrap();
        let b = flow(&flow(&x, k2, t2).unwrap(), k1, t1).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-8);
    }

    #[test]
    fn lower_cutoffs_are_fixed(
        (x, key) in (2usize..=5).prop_flat_map(|n| (matrix_strategy(n, n), key_strategy(n))),
        t in -2.0f64..2.0,
    ) {
        let t = C64::new(t, 0.3);
        let y = flow(&x, key, t).unwrap();
        // conjugation by g commutes with x_m, so only roundoff of size eps·κ(g)·‖x‖ remains
        let bound = 1e-14 * flow_condition(&x, key, t) * (1.0 + x.norm_1()) * x.n() as f64;
        for m in 1..=key.m {
            let dev = y.cutoff(m).unwrap().max_abs_diff(&x.cutoff(m).unwrap());
            prop_assert!(dev < bound.max(1e-12), "deviation {} bound {}", dev, bound);
        }
    }

    #[test]
    fn group_law((x, w1) in matrix_and_word(2, 5, 0.4), seed in 0u64..1000) {
        let n = x.n();
        let mut w2 = GroupWord::zeros(n);
        for (i, key) in FlowKey::all(n).into_iter().enumerate() {
            let v = ((seed + 7 * i as u64) % 17) as f64 / 17.0 - 0.5;
            w2.set(key, C64::new(0.6 * v, -0.3 * v));
        }
        let (w1, w2) = (tame(&x, &w1), tame(&x, &w2));
        let two = act(&act(&x, &w1).unwrap(), &w2).unwrap();
        let one = act(&x, &w1.add(&w2)).unwrap();
        prop_assert!(two.max_abs_diff(&one) < 1e-8);
    }

    #[test]
    fn transpose_reverses_the_action((x, w) in matrix_and_word(2, 5, 0.5)) {
        prop_assert!(transpose_equivariance_defect(&x, &tame(&x, &w)).unwrap() < 1e-8);
    }

    #[test]
    fn diagonal_action_is_the_level_identity_flows(x in matrix_strategy(2, 6), s in prop::collection::vec(-1.0f64..1.0, 5)) {
        let n = x.n();
        let s: Vec<C64> = s[..n - 1].iter().map(|&v| C64::new(v, 0.5 * v)).collect();
        let mut composed = x.clone();
        for m in 1..n {
            composed = flow(&composed, FlowKey::new(m, m), s[m - 1]).unwrap();
        }
        prop_assert!(diag_action(&x, &s).unwrap().max_abs_diff(&composed) < 1e-12);
    }

    #[test]
    fn orbit_tangents_are_isotropic(x in matrix_strategy(2, 6)) {
        prop_assert!(isotropy_defect(&x) < 1e-9);
    }
}
