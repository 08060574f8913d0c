//! One function per subcommand. Each takes already-parsed arguments and
//! returns the JSON document to emit.

use gz_core::coords::{is_disjoint, is_interlacing};
use gz_core::fiber::{is_jacobi, normal_form, symmetric_fiber};
use gz_core::flows::{act, flow, FlowKey};
use gz_core::orthopoly::{recurrence_of_measure, verify_monic_match, DiscreteMeasure};
use gz_core::poisson::{gz_commutativity_report, num_bracket, sym_bracket, SymPoly};
use gz_core::regularity::{is_strongly_regular, orbit_dim, regular_per_level};
use gz_core::section::{invert_phi, invert_phi_with_subdiag};
use gz_core::{phi, GzCoord, Matrix, ToleranceConfig, C64};
use serde_json::{json, Value};

use crate::error::CliResult;
use crate::io::{CoordJson, MatrixJson, RecurrenceJson, WordJson};
use crate::selftest::{self, SelftestConfig};

fn matrix_json(x: &Matrix) -> Value {
    serde_json::to_value(MatrixJson::from_matrix(x)).expect("plain data")
}

pub fn cmd_phi(x: &Matrix) -> Value {
    serde_json::to_value(CoordJson::from_coord(&phi(x))).expect("plain data")
}

pub fn cmd_invert(c: &GzCoord, subdiag: Option<&[C64]>) -> CliResult<Value> {
    let x = match subdiag {
        Some(z) => invert_phi_with_subdiag(c, z)?,
        None => invert_phi(c),
    };
    Ok(matrix_json(&x))
}

pub fn cmd_classify(x: &Matrix, tol: &ToleranceConfig) -> Value {
    let c = phi(x);
    json!({
        "regular_per_level": regular_per_level(x, tol),
        "strongly_regular": is_strongly_regular(x, tol),
        "disjoint": is_disjoint(&c, tol).unwrap_or(false),
        "interlacing": is_interlacing(&c, tol).unwrap_or(false),
        "orbit_dim": orbit_dim(x, tol),
    })
}

pub fn cmd_flow(x: &Matrix, key: (usize, usize), t: C64) -> CliResult<Value> {
    Ok(matrix_json(&flow(x, FlowKey::new(key.0, key.1), t)?))
}

pub fn cmd_act(x: &Matrix, word: &WordJson) -> CliResult<Value> {
    Ok(matrix_json(&act(x, &word.to_word()?)?))
}

pub fn cmd_normal_form(x: &Matrix, tol: &ToleranceConfig) -> CliResult<Value> {
    let nf = normal_form(x, tol)?;
    Ok(json!({
        "canonical": matrix_json(&nf.canonical),
        "word": WordJson::from_word(&nf.word),
    }))
}

pub fn cmd_symmetric(c: &GzCoord, jacobi_only: bool, tol: &ToleranceConfig) -> CliResult<Value> {
    let fiber = symmetric_fiber(c, tol)?;
    let members: Vec<Value> = (0..fiber.len())
        .filter_map(|i| {
            let x = &fiber.members[i];
            let jacobi = is_jacobi(x, tol);
            (jacobi || !jacobi_only).then(|| {
                json!({
                    "sign_index": fiber.sign_index[i],
                    "signs": fiber.signs(i),
                    "jacobi": jacobi,
                    "matrix": matrix_json(x),
                })
            })
        })
        .collect();
    let jacobi_count = fiber.members.iter().filter(|x| is_jacobi(x, tol)).count();
    Ok(json!({
        "total": fiber.len(),
        "jacobi_count": jacobi_count,
        "members": members,
    }))
}

pub fn cmd_orthopoly_jacobi(mu: &DiscreteMeasure, n: usize) -> CliResult<Value> {
    let rec = recurrence_of_measure(mu, n)?;
    Ok(json!({
        "recurrence": RecurrenceJson::from_recurrence(&rec),
        "matrix": matrix_json(&rec.to_matrix()),
    }))
}

pub fn cmd_orthopoly_verify(
    mu: &DiscreteMeasure,
    n: usize,
    tol: &ToleranceConfig,
) -> CliResult<Value> {
    Ok(json!({ "n": n, "match": verify_monic_match(mu, n, tol)? }))
}

pub fn cmd_poisson_verify(n: usize) -> CliResult<Value> {
    let report = gz_commutativity_report(n)?;
    let nonzero: Vec<Value> = report
        .nonzero
        .iter()
        .map(|(a, b)| json!([[a.0, a.1], [b.0, b.1]]))
        .collect();
    Ok(json!({
        "n": n,
        "pairs": report.pairs,
        "all_zero": report.all_zero(),
        "nonzero": nonzero,
    }))
}

/// Exact bracket of two polynomials in the entries, and its value at `x`
/// when a matrix is given.
pub fn cmd_poisson_bracket(f: &str, g: &str, n: usize, x: Option<&Matrix>) -> CliResult<Value> {
    let fp = SymPoly::parse(n, f)?;
    let gp = SymPoly::parse(n, g)?;
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(n));
    out.insert("bracket".into(), json!(sym_bracket(&fp, &gp).to_string()));
    if let Some(x) = x {
        let v = num_bracket(&fp, &gp, x)?;
        out.insert("value".into(), json!([v.re, v.im]));
    }
    Ok(Value::Object(out))
}

pub fn cmd_selftest(cfg: &SelftestConfig) -> (Value, bool) {
    let reports = selftest::run_all(cfg);
    let all_pass = reports.iter().all(|r| r.passed);
    let value = json!({
        "seed": cfg.seed,
        "n_max": cfg.n_max,
        "all_pass": all_pass,
        "criteria": reports,
    });
    (value, all_pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_of_two_by_two() {
        let x = Matrix::from_real(2, &[1., 2., 3., 4.]);
        let v = cmd_phi(&x);
        assert_eq!(v["values"], json!([[1.0, 0.0], [-2.0, 0.0], [5.0, 0.0]]));
    }

    #[test]
    fn invert_small_coordinate() {
        let c = GzCoord::new(
            2,
            vec![C64::new(1.0, 0.0), C64::new(-2.0, 0.0), C64::new(5.0, 0.0)],
        )
        .unwrap();
        let out: MatrixJson = serde_json::from_value(cmd_invert(&c, None).unwrap()).unwrap();
        let x = out.to_matrix().unwrap();
        assert!(x.max_abs_diff(&Matrix::from_real(2, &[1., 6., 1., 4.])) < 1e-12);
    }

    #[test]
    fn bracket_of_entries() {
        let v = cmd_poisson_bracket("a_12", "a_21", 2, None).unwrap();
        assert_eq!(v["bracket"], json!("a_11 - a_22"));
        let x = Matrix::from_real(2, &[3., 0., 0., 1.]);
        let v = cmd_poisson_bracket("a_12", "a_21", 2, Some(&x)).unwrap();
        assert_eq!(v["value"], json!([2.0, 0.0]));
    }

    #[test]
    fn verify_reports_pairs() {
        let v = cmd_poisson_verify(3).unwrap();
        assert_eq!(v["pairs"], json!(15));
        assert_eq!(v["all_zero"], json!(true));
    }
}
