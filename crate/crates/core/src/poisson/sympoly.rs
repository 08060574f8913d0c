use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GzError, Result};
use crate::linalg::Matrix;
use crate::C64;

/// Exponent vector over the `n²` entry variables, row-major.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the earliest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the entries `a_ij` of an `n x n` matrix with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl SymPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n * n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    pub fn from_integer(n: usize, c: i64) -> Self {
        Self::constant(n, BigRational::from_integer(BigInt::from(c)))
    }

    /// The entry variable `a_ij`, 1-based.
    pub fn var(n: usize, i: usize, j: usize) -> Result<Self> {
        for idx in [i, j] {
            if idx == 0 || idx > n {
                return Err(GzError::IndexOutOfRange {
                    what: "entry variable",
                    index: idx,
                    max: n,
                });
            }
        }
        let mut m = Monomial::one(n * n);
        m.0[(i - 1) * n + (j - 1)] = 1;
        let mut p = Self::zero(n);
        p.add_term(m, BigRational::one());
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &SymPoly) {
        assert_eq!(self.n, other.n, "polynomials over different matrix sizes");
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        self.check_same(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymPoly {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, s: &BigRational) -> SymPoly {
        let mut out = SymPoly::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        self.check_same(other);
        let mut out = SymPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut out = SymPoly::one(self.n);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `∂/∂a_ij`, 1-based.
    pub fn partial(&self, i: usize, j: usize) -> SymPoly {
        let v = (i - 1) * self.n + (j - 1);
        let mut out = SymPoly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[v] -= 1;
            out.add_term(dm, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Floating evaluation at the entries of `x`.
    pub fn eval(&self, x: &Matrix) -> Result<C64> {
        if x.n() != self.n {
            return Err(GzError::DimensionMismatch {
                expected: self.n,
                found: x.n(),
            });
        }
        let vals = x.as_slice();
        let mut acc = C64::zero();
        for (m, c) in &self.terms {
            let mut t = C64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= vals[v].powu(e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Parses expressions such as `a_11*a_22 - 3/2*a_{1,2}^2 + (a_21 - 1)`.
    pub fn parse(n: usize, src: &str) -> Result<SymPoly> {
        let mut p = Parser {
            src: src.as_bytes(),
            pos: 0,
            n,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }

    fn var_name(&self, v: usize) -> String {
        let (i, j) = (v / self.n + 1, v % self.n + 1);
        if self.n < 10 {
            format!("a_{i}{j}")
        } else {
            format!("a_{{{i},{j}}}")
        }
    }
}

impl fmt::Display for SymPoly {
    /// Terms in descending graded-lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| {
                        if e == 1 {
                            self.var_name(v)
                        } else {
                            format!("{}^{e}", self.var_name(v))
                        }
                    })
                    .collect();
            let coef_shown = !mag.is_one() || factors.is_empty();
            if coef_shown {
                write!(f, "{mag}")?;
            }
            for (k, fac) in factors.iter().enumerate() {
                if coef_shown || k > 0 {
                    f.write_str("*")?;
                }
                f.write_str(fac)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> GzError {
        GzError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SymPoly> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SymPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SymPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.digits()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn digits(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("number out of range"))
    }

    fn big_digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        BigInt::parse_bytes(text.as_bytes(), 10).ok_or_else(|| self.error("bad integer"))
    }

    fn atom(&mut self) -> Result<SymPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.big_digits()?;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.big_digits()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(SymPoly::constant(self.n, value))
            }
            Some(b'a') => {
                self.pos += 1;
                if !self.eat(b'_') {
                    return Err(self.error("expected '_' after variable name"));
                }
                let (i, j) = if self.eat(b'{') {
                    self.skip_ws();
                    let i = self.digits()? as usize;
                    if !self.eat(b',') {
                        return Err(self.error("expected ','"));
                    }
                    self.skip_ws();
                    let j = self.digits()? as usize;
                    if !self.eat(b'}') {
                        return Err(self.error("expected '}'"));
                    }
                    (i, j)
                } else {
                    let start = self.pos;
                    if self.src.len() < start + 2
                        || !self.src[start].is_ascii_digit()
                        || !self.src[start + 1].is_ascii_digit()
                    {
                        return Err(self.error("expected two index digits"));
                    }
                    self.pos += 2;
                    if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        return Err(self.error("use a_{i,j} for indices above 9"));
                    }
                    (
                        (self.src[start] - b'0') as usize,
                        (self.src[start + 1] - b'0') as usize,
                    )
                };
                SymPoly::var(self.n, i, j).map_err(|_| self.error("variable index out of range"))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize, i: usize, j: usize) -> SymPoly {
        SymPoly::var(n, i, j).unwrap()
    }

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(r))
    }

    #[test]
    fn arithmetic_cancels_exactly() {
        let x = a(2, 1, 2);
        let y = a(2, 2, 1);
        let s = x.add(&y);
        let d = x.sub(&y);
        let lhs = s.mul(&d);
        let rhs = x.pow(2).sub(&y.pow(2));
        assert_eq!(lhs, rhs);
        assert!(lhs.sub(&rhs).is_zero());
        assert_eq!(x.sub(&x), SymPoly::zero(2));
        assert_eq!(lhs.degree(), Some(2));
        assert_eq!(SymPoly::zero(2).degree(), None);
    }

    #[test]
    fn grlex_order() {
        let p = SymPoly::parse(2, "a_22 + a_11^2 + 1 + a_11").unwrap();
        let degrees: Vec<u32> = p.terms().map(|(m, _)| m.degree()).collect();
        assert_eq!(degrees, vec![0, 1, 1, 2]);
        let firsts: Vec<&[u32]> = p.terms().map(|(m, _)| m.exponents()).collect();
        assert_eq!(firsts[1], &[0, 0, 0, 1]);
        assert_eq!(firsts[2], &[1, 0, 0, 0]);
    }

    #[test]
    fn parse_and_display() {
        let p = SymPoly::parse(2, "a_11*a_22 - a_12*a_21").unwrap();
        assert_eq!(p.to_string(), "a_11*a_22 - a_12*a_21");
        let q2 = SymPoly::parse(3, "3/2*a_{1,2}^2 - (a_33 - 2)").unwrap();
        let expected = a(3, 1, 2)
            .pow(2)
            .scale(&q(3, 2))
            .sub(&a(3, 3, 3))
            .add(&SymPoly::from_integer(3, 2));
        assert_eq!(q2, expected);
        assert_eq!(q2.to_string(), "3/2*a_12^2 - a_33 + 2");
        assert_eq!(SymPoly::parse(2, "-a_12").unwrap(), a(2, 1, 2).neg());
        assert_eq!(SymPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "a_3", "a_13", "a12", "a_11 +", "(a_11", "1/0", "a_{1,2", "b_11", "a_111",
        ] {
            assert!(
                matches!(SymPoly::parse(2, bad), Err(GzError::Parse { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn partial_derivatives() {
        let p = SymPoly::parse(2, "a_11^3*a_12 + 5*a_21").unwrap();
        assert_eq!(p.partial(1, 1), SymPoly::parse(2, "3*a_11^2*a_12").unwrap());
        assert_eq!(p.partial(2, 1), SymPoly::from_integer(2, 5));
        assert!(p.partial(2, 2).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = SymPoly::parse(2, "a_11*a_22 - a_12*a_21 + 1/4").unwrap();
        let x = Matrix::from_real(2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(p.eval(&x).unwrap(), C64::new(-1.75, 0.0));
        assert!(p.eval(&Matrix::identity(3)).is_err());
    }
}
