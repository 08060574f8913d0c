//! Seeded random inputs. Every draw goes through one [`ChaCha8Rng`].

use gz_core::flows::{FlowKey, GroupWord};
use gz_core::orthopoly::DiscreteMeasure;
use gz_core::{GzCoord, Matrix, SpectrumTower, ToleranceConfig, C64};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub const DEFAULT_SEED: u64 = 20_240_613;

pub struct Sampler {
    rng: ChaCha8Rng,
    normal: Normal<f64>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            // standard complex normal: E|z|^2 = 1
            normal: Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid sigma"),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn size(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn complex_normal(&mut self) -> C64 {
        C64::new(
            self.normal.sample(&mut self.rng),
            self.normal.sample(&mut self.rng),
        )
    }

    /// iid standard complex normal entries.
    pub fn matrix(&mut self, n: usize) -> Matrix {
        Matrix::from_fn(n, |_, _| self.complex_normal())
    }

    /// Real symmetric matrix with iid standard normal entries on and above the diagonal.
    pub fn real_symmetric(&mut self, n: usize) -> Matrix {
        let mut x = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = C64::new(
                    self.normal.sample(&mut self.rng) * std::f64::consts::SQRT_2,
                    0.0,
                );
                x[(i, j)] = v;
                x[(j, i)] = v;
            }
        }
        x
    }

    /// Coordinates with iid standard complex normal values.
    pub fn coord(&mut self, n: usize) -> GzCoord {
        let values = (0..gz_core::tri(n))
            .map(|_| self.complex_normal())
            .collect();
        GzCoord::new(n, values).expect("value count matches d(n)")
    }

    /// Word with iid complex normal times of standard deviation `scale`.
    pub fn word(&mut self, n: usize, scale: f64) -> GroupWord {
        let levels = (1..n)
            .map(|m| (0..m).map(|_| self.complex_normal() * scale).collect())
            .collect();
        GroupWord::new(levels).expect("levels have sizes 1..n-1")
    }

    /// Word whose time for `f_(k,m)` is a complex normal of standard
    /// deviation `scale` divided by `max(1, ‖(x_m)^{m-k}‖_F)`, so that every
    /// factor `exp(t (x_m)^{m-k})` has exponent of typical size `scale`.
    pub fn word_for(&mut self, x: &Matrix, scale: f64) -> GroupWord {
        let n = x.n();
        let mut w = GroupWord::zeros(n);
        for key in FlowKey::all(n) {
            let size = x
                .cutoff(key.m)
                .expect("level below n")
                .pow(key.m - key.k)
                .norm_fro();
            w.set(key, self.complex_normal() * (scale / size.max(1.0)));
        }
        w
    }

    pub fn key(&mut self, n: usize) -> FlowKey {
        *FlowKey::all(n).choose(&mut self.rng).expect("n >= 2")
    }

    fn spread(&mut self, count: usize, lo: f64, hi: f64, min_gap: f64) -> Vec<f64> {
        loop {
            let mut v: Vec<f64> = (0..count).map(|_| self.uniform(lo, hi)).collect();
            v.sort_by(f64::total_cmp);
            if v.windows(2).all(|w| w[1] - w[0] >= min_gap) {
                return v;
            }
        }
    }

    /// Real tower with strict interlacing; each level sits at least a tenth
    /// of a gap away from the level above.
    pub fn interlacing_tower(&mut self, n: usize) -> SpectrumTower {
        let top = self.spread(n, -2.0, 2.0, 0.1);
        let mut levels = vec![top];
        for m in (1..n).rev() {
            let above = levels.last().expect("nonempty");
            let level: Vec<f64> = (0..m)
                .map(|i| {
                    let (a, b) = (above[i], above[i + 1]);
                    let margin = 0.1 * (b - a);
                    self.uniform(a + margin, b - margin)
                })
                .collect();
            levels.push(level);
        }
        levels.reverse();
        real_tower(levels)
    }

    /// Real, eigenvalue-disjoint tower that violates interlacing somewhere.
    pub fn non_interlacing_tower(&mut self, n: usize, tol: &ToleranceConfig) -> SpectrumTower {
        loop {
            let levels: Vec<Vec<f64>> = (1..=n).map(|m| self.spread(m, -2.0, 2.0, 0.05)).collect();
            let t = real_tower(levels);
            let separated = t.levels().windows(2).all(|w| {
                w[0].iter()
                    .all(|a| w[1].iter().all(|b| (a - b).norm() > 0.05))
            });
            if separated && t.is_disjoint(tol) && !t.is_interlacing(tol) {
                return t;
            }
        }
    }

    /// Discrete measure on `count` distinct nodes in `[-1, 1]` with weights in `[0.1, 1)`.
    pub fn measure(&mut self, count: usize) -> DiscreteMeasure {
        let nodes = self.spread(count, -1.0, 1.0, 0.02);
        let weights = (0..count).map(|_| self.uniform(0.1, 1.0)).collect();
        DiscreteMeasure::new(nodes, weights).expect("distinct nodes, positive weights")
    }
}

fn real_tower(levels: Vec<Vec<f64>>) -> SpectrumTower {
    SpectrumTower::new(
        levels
            .into_iter()
            .map(|l| l.into_iter().map(|v| C64::new(v, 0.0)).collect())
            .collect(),
    )
    .expect("level m has m values")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let a = Sampler::new(7).matrix(4);
        let b = Sampler::new(7).matrix(4);
        let c = Sampler::new(8).matrix(4);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn towers_have_the_requested_shape() {
        let tol = ToleranceConfig::default();
        let mut s = Sampler::new(1);
        for n in 2..=5 {
            assert!(s.interlacing_tower(n).is_interlacing(&tol));
            let t = s.non_interlacing_tower(n, &tol);
            assert!(t.is_disjoint(&tol) && !t.is_interlacing(&tol));
        }
    }

    #[test]
    fn complex_normal_has_unit_variance() {
        let mut s = Sampler::new(3);
        let count = 20_000;
        let second: f64 = (0..count)
            .map(|_| s.complex_normal().norm_sqr())
            .sum::<f64>()
            / count as f64;
        assert!((second - 1.0).abs() < 0.05, "{second}");
    }
}
