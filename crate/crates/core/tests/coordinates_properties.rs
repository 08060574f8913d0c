mod common;

use common::{
    complex_normal, interlacing_tower, matrix_strategy, real_symmetric, rng, tower_coord,
};
use gz_core::coords::{coord_from_tower, is_interlacing, phi, same_fiber, tower_from_coord};
use gz_core::regularity::{
    is_strongly_regular, is_strongly_regular_pairwise, orbit_dim, pairwise_failure,
};
use gz_core::section::{invert_phi, is_hessenberg_section};
use gz_core::{tri, GzCoord, Matrix, ToleranceConfig, C64};
use proptest::prelude::*;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn coord_strategy() -> impl Strategy<Value = GzCoord> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), tri(n)).prop_map(move |v| {
            GzCoord::new(n, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn section_inverts_phi(c in coord_strategy()) {
        let x = invert_phi(&c);
        prop_assert!(is_hessenberg_section(&x, 0.0));
        let scale = 1.0 + c.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        prop_assert!(phi(&x).max_diff(&c) < 1e-8 * scale);
        prop_assert!(is_strongly_regular(&x, &tol()));
    }

    #[test]
    fn tower_roundtrip(x in matrix_strategy(1, 5)) {
        let c = phi(&x);
        let t = tower_from_coord(&c, &tol()).unwrap();
        prop_assert!(coord_from_tower(&t).max_diff(&c) < 1e-8);
        for m in 1..=x.n() {
            prop_assert_eq!(t.level(m).len(), m);
        }
    }

    #[test]
    fn phi_is_transpose_invariant(x in matrix_strategy(1, 5)) {
        prop_assert!(same_fiber(&x, &x.transpose(), &tol()));
    }

    #[test]
    fn regularity_tests_agree(x in matrix_strategy(2, 5)) {
        let full = is_strongly_regular(&x, &tol());
        prop_assert_eq!(full, is_strongly_regular_pairwise(&x, &tol()));
        if full {
            prop_assert_eq!(orbit_dim(&x, &tol()), tri(x.n() - 1));
        }
    }
}

#[test]
fn real_symmetric_matrices_interlace() {
    let mut r = rng(3);
    for n in 2..7 {
        for _ in 0..10 {
            let x = real_symmetric(&mut r, n);
            assert!(is_interlacing(&phi(&x), &tol()).unwrap());
        }
    }
}

#[test]
fn generated_towers_interlace_and_are_disjoint() {
    let mut r = rng(4);
    for n in 2..6 {
        let c = tower_coord(&interlacing_tower(&mut r, n, 0.05));
        let t = tower_from_coord(&c, &tol()).unwrap();
        assert!(t.is_interlacing(&tol()) && t.is_disjoint(&tol()));
    }
}

#[test]
fn diagonal_matrices_are_not_strongly_regular() {
    for n in 2..7 {
        let d = Matrix::diag(&(1..=n).map(|v| C64::new(v as f64, 0.0)).collect::<Vec<_>>());
        assert!(!is_strongly_regular(&d, &tol()));
        assert!(pairwise_failure(&d, &tol()).is_some());
        assert!(orbit_dim(&d, &tol()) < tri(n - 1));
    }
}

#[test]
fn random_complex_samples_are_generic() {
    let mut r = rng(5);
    for n in 2..7 {
        let x = complex_normal(&mut r, n);
        assert!(is_strongly_regular(&x, &tol()));
        assert!(tower_from_coord(&phi(&x), &tol())
            .unwrap()
            .is_disjoint(&tol()));
    }
}
