//! The acceptance properties, run on seeded samples. Reports are plain data
//! and contain no timings, so a fixed seed yields a byte-identical report.

use gz_core::coords::{coord_from_tower, tower_from_matrix};
use gz_core::fiber::{
    beta, beta_inverse, diag_sign_orbit, is_jacobi, normal_form, symmetric_fiber,
};
use gz_core::flows::{act, flow, transpose_equivariance_defect};
use gz_core::linalg::{charpoly, eigenvalues_ordered};
use gz_core::orthopoly::{
    jacobi_matrix, orthonormal_polys, recurrence_from_tower, verify_monic_match,
};
use gz_core::poisson::gz_commutativity_report;
use gz_core::regularity::{
    is_strongly_regular, is_strongly_regular_pairwise, isotropy_defect, orbit_dim,
};
use gz_core::section::invert_phi;
use gz_core::{phi, tri, GzCoord, Matrix, MonicPoly, SpectrumTower, ToleranceConfig, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::sample::{Sampler, DEFAULT_SEED};

pub const CRITERIA: u32 = 12;

/// Typical size of the exponents `t (x_m)^{m-k}` in sampled group words.
pub const WORD_SCALE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelftestConfig {
    pub seed: u64,
    pub n_max: usize,
    pub tol: ToleranceConfig,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            n_max: 5,
            tol: ToleranceConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Below,
    #[serde(rename = "==")]
    Equal,
    #[serde(rename = ">")]
    Above,
}

/// One measured quantity compared against its bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &'static str, value: f64, relation: Relation, bound: f64) -> Self {
        let passed = match relation {
            Relation::Below => value < bound,
            Relation::Equal => value == bound,
            Relation::Above => value > bound,
        };
        Self {
            name,
            value,
            relation,
            bound,
            passed,
        }
    }

    fn below(name: &'static str, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Below, bound)
    }

    fn equal(name: &'static str, value: usize, expected: usize) -> Self {
        Self::new(name, value as f64, Relation::Equal, expected as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    fn new(id: u32, name: &'static str, samples: usize, checks: Vec<Check>) -> Self {
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
        Self {
            id,
            name,
            samples,
            passed,
            checks,
        }
    }

    /// `PASS`/`FAIL`, the criterion, and every check with its bound.
    pub fn summary_line(&self) -> String {
        let checks: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let rel = match c.relation {
                    Relation::Below => "<",
                    Relation::Equal => "==",
                    Relation::Above => ">",
                };
                format!("{} {:.3e} {rel} {:.1e}", c.name, c.value, c.bound)
            })
            .collect();
        format!(
            "[{}] criterion {:>2} {} ({} samples): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.samples,
            checks.join("; ")
        )
    }
}

/// Running maximum that turns a failed computation or a NaN into `+inf`.
#[derive(Default)]
struct Worst(f64);

impl Worst {
    fn see(&mut self, v: f64) {
        self.0 = if v.is_nan() {
            f64::INFINITY
        } else {
            self.0.max(v)
        };
    }

    fn see_result(&mut self, v: gz_core::Result<f64>) {
        self.see(v.unwrap_or(f64::INFINITY));
    }
}

fn sizes(lo: usize, hi: usize, n_max: usize) -> core::ops::RangeInclusive<usize> {
    lo..=hi.min(n_max).max(lo)
}

/// Seeds for every criterion, drawn in order from one generator.
fn criterion_seeds(seed: u64) -> Vec<u64> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..CRITERIA).map(|_| master.random()).collect()
}

pub fn run_criterion(id: u32, cfg: &SelftestConfig) -> CriterionReport {
    assert!(
        (1..=CRITERIA).contains(&id),
        "criterion {id} does not exist"
    );
    let mut s = Sampler::new(criterion_seeds(cfg.seed)[id as usize - 1]);
    match id {
        1 => exact_commutativity(),
        2 => section_roundtrip(&mut s, cfg),
        3 => flow_invariance(&mut s, cfg),
        4 => example_fiber(cfg),
        5 => cardinality(&mut s, cfg),
        6 => interlacing_equivalence(&mut s, cfg),
        7 => transpose_rule(&mut s, cfg),
        8 => normal_form_coherence(&mut s, cfg),
        9 => chart_roundtrip(&mut s, cfg),
        10 => regularity_equivalence(&mut s, cfg),
        11 => orthopoly_bridge(&mut s, cfg),
        _ => isotropy(&mut s, cfg),
    }
}

pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionReport> {
    (1..=CRITERIA).map(|id| run_criterion(id, cfg)).collect()
}

fn exact_commutativity() -> CriterionReport {
    let mut checks = Vec::new();
    for (n, name, pairs) in [(2, "pairs n=2", 3), (3, "pairs n=3", 15)] {
        match gz_commutativity_report(n) {
            Ok(r) => {
                checks.push(Check::equal(name, r.pairs, pairs));
                checks.push(Check::equal(
                    if n == 2 { "nonzero n=2" } else { "nonzero n=3" },
                    r.nonzero.len(),
                    0,
                ));
            }
            Err(_) => checks.push(Check::equal(name, 0, pairs)),
        }
    }
    CriterionReport::new(1, "exact commutativity", 2, checks)
}

fn section_roundtrip(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let mut drift = Worst::default();
    let mut irregular = 0;
    let mut samples = 0;
    for n in sizes(2, 6, cfg.n_max) {
        for _ in 0..100 {
            let c = s.coord(n);
            let x = invert_phi(&c);
            drift.see(phi(&x).max_diff(&c));
            if !is_strongly_regular(&x, &cfg.tol) {
                irregular += 1;
            }
            samples += 1;
        }
    }
    CriterionReport::new(
        2,
        "cross-section roundtrip",
        samples,
        vec![
            Check::below("phi drift", drift.0, 1e-8),
            Check::equal("not strongly regular", irregular, 0),
        ],
    )
}

fn flow_invariance(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let mut drift = Worst::default();
    let mut swap = Worst::default();
    let mut violations = 0;
    let count = 200;
    for _ in 0..count {
        let n = s.size(2, 5.min(cfg.n_max).max(2));
        let x = s.matrix(n);
        let (k1, k2) = (s.key(n), s.key(n));
        let t1 = C64::new(s.uniform(-2.0, 2.0), 0.0);
        let t2 = C64::new(s.uniform(-2.0, 2.0), 0.0);
        let d = flow(&x, k1, t1).map_or(f64::INFINITY, |y| phi(&y).max_diff(&phi(&x)));
        let ab = flow(&x, k1, t1).and_then(|y| flow(&y, k2, t2));
        let ba = flow(&x, k2, t2).and_then(|y| flow(&y, k1, t1));
        let e = ab
            .and_then(|a| Ok(a.max_abs_diff(&ba?)))
            .unwrap_or(f64::INFINITY);
        if !(d < 1e-8 && e < 1e-8) {
            violations += 1;
        }
        drift.see(d);
        swap.see(e);
    }
    CriterionReport::new(
        3,
        "flow invariance and commutativity",
        count,
        vec![
            Check::below("phi drift", drift.0, 1e-8),
            Check::below("order swap", swap.0, 1e-8),
            Check::equal("samples out of bounds", violations, 0),
        ],
    )
}

/// The tower `{0}, {-1, 1}, {-√2, 0, √2}` and its two named fiber members.
pub fn example_tower() -> SpectrumTower {
    let r = std::f64::consts::SQRT_2;
    SpectrumTower::from_real(&[&[0.0], &[-1.0, 1.0], &[-r, 0.0, r]]).expect("valid tower")
}

pub fn example_x() -> Matrix {
    Matrix::from_real(3, &[0., 1., 0., 1., 0., 1., 0., 1., 0.])
}

pub fn example_y() -> Matrix {
    Matrix::from_real(3, &[0., 1., 1., 1., 0., 0., 1., 0., 0.])
}

fn example_fiber(cfg: &SelftestConfig) -> CriterionReport {
    let c = coord_from_tower(&example_tower());
    let Ok(f) = symmetric_fiber(&c, &cfg.tol) else {
        return CriterionReport::new(4, "example fiber", 1, vec![Check::equal("members", 0, 8)]);
    };
    let near = |a: &Matrix, b: &Matrix| a.max_abs_diff(b) < 1e-10;
    let contains = |y: &Matrix| f.members.iter().filter(|m| near(m, y)).count();
    let orbit: Vec<Matrix> = diag_sign_orbit(&example_x())
        .into_iter()
        .chain(diag_sign_orbit(&example_y()))
        .collect();
    let explained = f
        .members
        .iter()
        .filter(|m| orbit.iter().any(|o| near(m, o)))
        .count();
    let jacobi = f.members.iter().filter(|m| is_jacobi(m, &cfg.tol)).count();
    CriterionReport::new(
        4,
        "example fiber",
        1,
        vec![
            Check::equal("members", f.len(), 8),
            Check::equal("copies of x", contains(&example_x()), 1),
            Check::equal("copies of y", contains(&example_y()), 1),
            Check::equal("jacobi members", jacobi, 4),
            Check::equal("sign conjugates of x or y", explained, 8),
        ],
    )
}

fn cardinality(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let mut wrong_count = 0;
    let mut imag = Worst::default();
    let mut drift = Worst::default();
    let mut samples = 0;
    for n in sizes(2, 5, cfg.n_max) {
        for _ in 0..10 {
            let c = coord_from_tower(&s.interlacing_tower(n));
            samples += 1;
            match symmetric_fiber(&c, &cfg.tol) {
                Ok(f) => {
                    if f.len() != 1 << tri(n - 1) {
                        wrong_count += 1;
                    }
                    for x in &f.members {
                        imag.see(x.max_imag());
                        drift.see(phi(x).max_diff(&c));
                    }
                }
                Err(_) => wrong_count += 1,
            }
        }
    }
    CriterionReport::new(
        5,
        "symmetric fiber cardinality",
        samples,
        vec![
            Check::equal("wrong cardinality", wrong_count, 0),
            Check::below("max imaginary part", imag.0, 1e-8),
            Check::below("phi drift", drift.0, 1e-7),
        ],
    )
}

fn interlacing_equivalence(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let mut all_real = 0;
    let mut samples = 0;
    for n in sizes(2, 5, cfg.n_max) {
        for _ in 0..10 {
            let c = coord_from_tower(&s.non_interlacing_tower(n, &cfg.tol));
            samples += 1;
            let complex = symmetric_fiber(&c, &cfg.tol)
                .map(|f| f.members.iter().any(|x| x.max_imag() > 1e-4))
                .unwrap_or(false);
            if !complex {
                all_real += 1;
            }
        }
    }
    CriterionReport::new(
        6,
        "interlacing equivalence",
        samples,
        vec![Check::equal("fibers without a complex member", all_real, 0)],
    )
}

fn transpose_rule(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let mut defect = Worst::default();
    let count = 100;
    for _ in 0..count {
        let n = s.size(2, 5.min(cfg.n_max).max(2));
        let x = s.matrix(n);
        let w = s.word_for(&x, WORD_SCALE);
        defect.see_result(transpose_equivariance_defect(&x, &w));
    }
    CriterionReport::new(
        7,
        "transpose anti-equivariance",
        count,
        vec![Check::below("defect", defect.0, 1e-8)],
    )
}

/// Complex-normal sample whose coordinates lie in the eigenvalue-disjoint locus.
fn disjoint_sample(s: &mut Sampler, n: usize, tol: &ToleranceConfig) -> Matrix {
    loop {
        let x = s.matrix(n);
        if gz_core::coords::is_disjoint(&phi(&x), tol).unwrap_or(false) {
            return x;
        }
    }
}

fn normal_form_coherence(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let mut vs_section = Worst::default();
    let mut vs_orbit = Worst::default();
    let count = 100;
    for _ in 0..count {
        let n = s.size(2, 5.min(cfg.n_max).max(2));
        let x = disjoint_sample(s, n, &cfg.tol);
        let w = s.word_for(&x, WORD_SCALE);
        let nf = normal_form(&x, &cfg.tol);
        vs_section.see_result(
            nf.as_ref()
                .map(|r| r.canonical.max_abs_diff(&invert_phi(&phi(&x)).transpose()))
                .map_err(Clone::clone),
        );
        let moved = act(&x, &w).and_then(|y| normal_form(&y, &cfg.tol));
        vs_orbit.see_result(nf.and_then(|a| Ok(a.canonical.max_abs_diff(&moved?.canonical))));
    }
    let example = normal_form(&example_x(), &cfg.tol)
        .and_then(|a| {
            Ok(a.canonical
                .max_abs_diff(&normal_form(&example_y(), &cfg.tol)?.canonical))
        })
        .unwrap_or(f64::INFINITY);
    CriterionReport::new(
        8,
        "normal form coherence",
        count + 1,
        vec![
            Check::below("canonical vs transposed section", vs_section.0, 1e-7),
            Check::below("canonical along orbit", vs_orbit.0, 1e-7),
            Check::below("example x vs y", example, 1e-7),
        ],
    )
}

fn chart_roundtrip(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let mut err = Worst::default();
    let count = 100;
    for _ in 0..count {
        let n = s.size(2, 5.min(cfg.n_max).max(2));
        let x = disjoint_sample(s, n, &cfg.tol);
        err.see_result(beta_inverse(&phi(&x), &beta(&x), &cfg.tol).map(|y| y.max_abs_diff(&x)));
    }
    CriterionReport::new(
        9,
        "chart roundtrip",
        count,
        vec![Check::below("reconstruction error", err.0, 1e-7)],
    )
}

/// Mixture of generic and structurally degenerate matrices.
fn regularity_sample(s: &mut Sampler, n: usize, kind: usize) -> Matrix {
    match kind {
        0 | 1 => s.matrix(n),
        2 => s.real_symmetric(n),
        3 => {
            let d: Vec<C64> = (0..n).map(|_| s.complex_normal()).collect();
            Matrix::diag(&d)
        }
        4 => {
            let mut x = s.matrix(n);
            for i in 0..n {
                for j in 0..i {
                    x[(i, j)] = C64::new(0.0, 0.0);
                }
            }
            x
        }
        _ => {
            // block diagonal: the last row and column decouple
            let mut x = s.matrix(n);
            for i in 0..n - 1 {
                x[(i, n - 1)] = C64::new(0.0, 0.0);
                x[(n - 1, i)] = C64::new(0.0, 0.0);
            }
            x
        }
    }
}

fn regularity_equivalence(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let count = 200;
    let mut disagree = 0;
    let mut wrong_dim = 0;
    let mut regular = 0;
    for i in 0..count {
        let n = s.size(2, 5.min(cfg.n_max).max(2));
        let x = regularity_sample(s, n, i % 6);
        let sr = is_strongly_regular(&x, &cfg.tol);
        if sr != is_strongly_regular_pairwise(&x, &cfg.tol) {
            disagree += 1;
        }
        if sr {
            regular += 1;
            if orbit_dim(&x, &cfg.tol) != tri(n - 1) {
                wrong_dim += 1;
            }
        }
    }
    let mut full_on_diag = 0;
    for n in sizes(2, 5, cfg.n_max) {
        let d: Vec<C64> = (1..=n).map(|i| C64::new(i as f64, 0.0)).collect();
        if orbit_dim(&Matrix::diag(&d), &cfg.tol) >= tri(n - 1) {
            full_on_diag += 1;
        }
    }
    CriterionReport::new(
        10,
        "regularity equivalences",
        count,
        vec![
            Check::equal("disagreements", disagree, 0),
            Check::new(
                "strongly regular samples",
                regular as f64,
                Relation::Above,
                0.0,
            ),
            Check::equal("wrong orbit dimension", wrong_dim, 0),
            Check::equal("full orbit dimension on diag(1..n)", full_on_diag, 0),
        ],
    )
}

fn orthopoly_bridge(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let n = 4;
    let count = 10;
    let mut coeff = Worst::default();
    let mut not_interlacing = 0;
    let mut rebuild = Worst::default();
    let mut mismatched = 0;
    for _ in 0..count {
        let atoms = s.size(5, 9);
        let mu = s.measure(atoms);
        let (Ok(phis), Ok(jac)) = (orthonormal_polys(&mu, n + 1), jacobi_matrix(&mu, n)) else {
            coeff.see(f64::INFINITY);
            continue;
        };
        if !matches!(verify_monic_match(&mu, n, &cfg.tol), Ok(true)) {
            mismatched += 1;
        }
        let mut zeros = Vec::new();
        for m in 1..=n {
            let lead = phis[m][m];
            let monic = MonicPoly::new(
                phis[m][..m]
                    .iter()
                    .map(|c| C64::new(c / lead, 0.0))
                    .collect(),
            );
            coeff.see(charpoly(&jac.cutoff(m).expect("m <= n")).max_coeff_diff(&monic));
            zeros.push(eigenvalues_ordered(&monic, &cfg.tol).unwrap_or_default());
        }
        let interlaced = SpectrumTower::new(zeros)
            .map(|t| t.is_interlacing(&cfg.tol))
            .unwrap_or(false);
        if !interlaced {
            not_interlacing += 1;
        }
        rebuild.see_result(
            tower_from_matrix(&jac, &cfg.tol)
                .and_then(|t| recurrence_from_tower(&t, &cfg.tol))
                .map(|r| r.to_matrix().max_abs_diff(&jac)),
        );
    }
    CriterionReport::new(
        11,
        "orthogonal polynomial bridge",
        count,
        vec![
            Check::below("monic coefficient mismatch", coeff.0, 1e-8),
            Check::equal("verify_monic_match failures", mismatched, 0),
            Check::equal("non-interlacing zero sets", not_interlacing, 0),
            Check::below("jacobi reconstruction", rebuild.0, 1e-8),
        ],
    )
}

fn isotropy(s: &mut Sampler, cfg: &SelftestConfig) -> CriterionReport {
    let mut defect = Worst::default();
    let mut used = 0;
    for _ in 0..50 {
        let n = s.size(2, cfg.n_max.max(2));
        let x = s.matrix(n);
        if is_strongly_regular(&x, &cfg.tol) {
            used += 1;
            defect.see(isotropy_defect(&x));
        }
    }
    CriterionReport::new(
        12,
        "isotropy",
        used,
        vec![
            Check::new(
                "strongly regular samples",
                used as f64,
                Relation::Above,
                0.0,
            ),
            Check::below("normalized pairing", defect.0, 1e-9),
        ],
    )
}

/// Coordinates of the example fiber.
pub fn example_coord() -> GzCoord {
    coord_from_tower(&example_tower())
}
