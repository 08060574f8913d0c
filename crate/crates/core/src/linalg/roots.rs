use alloc::vec::Vec;
use core::cmp::Ordering;

use super::decomp::eigenvalues;
use super::matrix::Matrix;
use super::poly::MonicPoly;
use crate::error::Result;
use crate::tol::ToleranceConfig;
use crate::C64;

/// Companion matrix with ones on the subdiagonal and `-c` in the last column.
pub fn companion(p: &MonicPoly) -> Matrix {
    let d = p.degree();
    let mut m = Matrix::zeros(d);
    for i in 1..d {
        m[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for (i, &c) in p.coeffs().iter().enumerate() {
        m[(i, d - 1)] = -c;
    }
    m
}

/// Parlett-Reinsch balancing by powers of two; a diagonal similarity.
fn balance(a: &mut Matrix) {
    let n = a.n();
    let radix = 2.0f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].norm();
                    r += a[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            let mut cc = c;
            while cc < g {
                f *= radix;
                cc *= radix * radix;
            }
            g = r * radix;
            while cc > g {
                f /= radix;
                cc /= radix * radix;
            }
            if (cc + r / f) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// All roots of `p` with multiplicity, in the order produced by the
/// eigensolver. Each root is refined by Newton steps that are kept only
/// while they reduce the residual.
pub fn roots(p: &MonicPoly) -> Result<Vec<C64>> {
    match p.degree() {
        0 => return Ok(Vec::new()),
        1 => return Ok(alloc::vec![-p.coeffs()[0]]),
        _ => {}
    }
    let mut comp = companion(p);
    balance(&mut comp);
    let mut rs = eigenvalues(&comp)?;
    for r in rs.iter_mut() {
        let mut best = *r;
        let mut best_res = p.eval(best).norm();
        for _ in 0..4 {
            let (v, dv) = p.eval_with_derivative(best);
            if dv.norm() == 0.0 {
                break;
            }
            let cand = best - v / dv;
            let res = p.eval(cand).norm();
            if res.is_finite() && res < best_res {
                best = cand;
                best_res = res;
            } else {
                break;
            }
        }
        *r = best;
    }
    Ok(rs)
}

/// Sorts complex values lexicographically: by real part, and by imaginary
/// part among values whose real parts are tied.
///
/// Real parts are tied when they chain together with gaps `<= tie_tol`;
/// clustering first keeps the comparison total.
pub fn lex_sort(values: &mut [C64], tie_tol: f64) {
    values.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end].re - values[end - 1].re <= tie_tol {
            end += 1;
        }
        values[start..end].sort_by(|a, b| a.im.total_cmp(&b.im));
        start = end;
    }
}

/// Lexicographic comparison with the same tie rule as [`lex_sort`], for
/// a single pair.
pub fn lex_cmp(a: C64, b: C64, tie_tol: f64) -> Ordering {
    if (a.re - b.re).abs() <= tie_tol {
        a.im.total_cmp(&b.im)
    } else {
        a.re.total_cmp(&b.re)
    }
}

/// Roots of `p` in lexicographic order.
pub fn eigenvalues_ordered(p: &MonicPoly, tol: &ToleranceConfig) -> Result<Vec<C64>> {
    let mut rs = roots(p)?;
    lex_sort(&mut rs, tol.eq_tol);
    Ok(rs)
}
