#![allow(dead_code)]

use gz_core::{Matrix, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with independent real and imaginary parts drawn from N(0, 1/2).
pub fn complex_normal(rng: &mut impl Rng, n: usize) -> Matrix {
    let d = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).unwrap();
    Matrix::from_fn(n, |_, _| C64::new(d.sample(rng), d.sample(rng)))
}

pub fn real_symmetric(rng: &mut impl Rng, n: usize) -> Matrix {
    let d = Normal::new(0.0, 1.0).unwrap();
    let a = Matrix::from_fn(n, |_, _| C64::new(d.sample(rng), 0.0));
    (&a + &a.transpose()).scale(C64::new(0.5, 0.0))
}

pub fn matrix_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Matrix> {
    (min_n..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            Matrix::from_vec(n, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap()
        })
    })
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn word_strategy(n: usize, bound: f64) -> impl Strategy<Value = gz_core::flows::GroupWord> {
    let levels: Vec<_> = (1..n)
        .map(|m| prop::collection::vec((-bound..bound, -bound..bound), m))
        .collect();
    levels.prop_map(|ls| {
        gz_core::flows::GroupWord::new(
            ls.into_iter()
                .map(|l| l.into_iter().map(|(a, b)| C64::new(a, b)).collect())
                .collect(),
        )
        .unwrap()
    })
}

pub fn matrix_and_word(
    min_n: usize,
    max_n: usize,
    bound: f64,
) -> impl Strategy<Value = (Matrix, gz_core::flows::GroupWord)> {
    (min_n..=max_n).prop_flat_map(move |n| (matrix_strategy(n, n), word_strategy(n, bound)))
}

/// A strictly interlacing real tower whose top level has `n` values spread
/// over roughly `[-n, n]`, with gaps of at least `margin` between levels.
pub fn interlacing_tower(rng: &mut impl Rng, n: usize, margin: f64) -> Vec<Vec<f64>> {
    let mut top: Vec<f64> = Vec::with_capacity(n);
    let mut x = -(n as f64);
    for _ in 0..n {
        x += 2.0 * margin + rng.random::<f64>() * 2.0;
        top.push(x);
    }
    let mut levels = vec![top];
    for _ in 1..n {
        let above = levels.last().unwrap().clone();
        let below: Vec<f64> = above
            .windows(2)
            .map(|w| {
                let span = w[1] - w[0] - 2.0 * margin;
                w[0] + margin + rng.random::<f64>() * span
            })
            .collect();
        levels.push(below);
    }
    levels.reverse();
    levels
}

pub fn tower_coord(levels: &[Vec<f64>]) -> gz_core::GzCoord {
    let refs: Vec<&[f64]> = levels.iter().map(|l| l.as_slice()).collect();
    gz_core::coords::coord_from_tower(&gz_core::SpectrumTower::from_real(&refs).unwrap())
}
