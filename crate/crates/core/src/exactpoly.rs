//! Exact sparse multivariate polynomials over the rationals.
//!
//! Every polynomial lives in the ring generated by the `2n+1` base
//! coordinates `(q^1..q^n, p^1..p^n, t)` and the `2n+1` fiber coordinates
//! `(ξ_{q^1}..ξ_{q^n}, ξ_{p^1}..ξ_{p^n}, ξ_t)`. Exponent vectors are dense,
//! the term map is sparse and kept in graded-lex order, zero coefficients are
//! never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exact rational scalar; always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or `"p"`. Rejects zero denominators and stray whitespace.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let ok = |x: &str| {
        let digits = x.strip_prefix('-').unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(num) || !ok(den) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Index layout of the `2(2n+1)` polynomial variables for a given `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vars {
    n: usize,
}

impl Vars {
    pub fn new(n: usize) -> Self {
        Vars { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension `2n+1` of the base space.
    pub fn base_dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Total number of variables, base plus fiber.
    pub fn count(&self) -> usize {
        2 * self.base_dim()
    }

    pub fn q(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        i
    }

    pub fn p(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        self.n + i
    }

    pub fn t(&self) -> usize {
        2 * self.n
    }

    /// Fiber variable dual to base coordinate `j`.
    pub fn xi(&self, j: usize) -> usize {
        debug_assert!(j < self.base_dim());
        self.base_dim() + j
    }

    pub fn xi_q(&self, i: usize) -> usize {
        self.xi(self.q(i))
    }

    pub fn xi_p(&self, i: usize) -> usize {
        self.xi(self.p(i))
    }

    pub fn xi_t(&self) -> usize {
        self.xi(self.t())
    }

    pub fn is_fiber(&self, var: usize) -> bool {
        var >= self.base_dim()
    }

    /// Human-readable variable name (`q1`, `p2`, `t`, `xq1`, `xt`, ...).
    pub fn name(&self, var: usize) -> String {
        let m = self.base_dim();
        let (prefix, j) = if var >= m { ("x", var - m) } else { ("", var) };
        let base = if j < self.n {
            format!("q{}", j + 1)
        } else if j < 2 * self.n {
            format!("p{}", j - self.n + 1)
        } else {
            "t".to_string()
        };
        format!("{prefix}{base}")
    }
}

/// Dense exponent vector. Ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 10]>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, vars))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degree in the first half of the variables.
    pub fn base_degree(&self) -> u32 {
        let half = self.0.len() / 2;
        self.0[..half].iter().map(|&e| e as u32).sum()
    }

    /// Degree in the second half of the variables.
    pub fn fiber_degree(&self) -> u32 {
        let half = self.0.len() / 2;
        self.0[half..].iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.0[var]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn with_shift(&self, var: usize, delta: i32) -> Monomial {
        let mut m = self.clone();
        m.0[var] = (m.0[var] as i32 + delta) as u16;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients in the `2(2n+1)`
/// variables laid out by [`Vars`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(Vars::new(n).count()), c);
        p
    }

    /// The polynomial consisting of the single variable `var`.
    ///
    /// Panics if `var` is out of range; see [`Poly::try_var`].
    pub fn var(n: usize, var: usize) -> Self {
        Self::try_var(n, var).expect("variable index out of range")
    }

    pub fn try_var(n: usize, var: usize) -> Result<Self> {
        let count = Vars::new(n).count();
        if var >= count {
            return Err(Error::VariableIndex { index: var, n, count });
        }
        let mut m = Monomial::one(count);
        m.0[var] = 1;
        let mut p = Self::zero(n);
        p.add_term(m, Rational::one());
        Ok(p)
    }

    /// A single term `c · x^exps`. The exponent slice must have length `2(2n+1)`.
    pub fn term(n: usize, exps: &[u16], c: Rational) -> Result<Self> {
        let count = Vars::new(n).count();
        if exps.len() != count {
            return Err(Error::PointLength {
                expected: count,
                found: exps.len(),
            });
        }
        let mut p = Self::zero(n);
        p.add_term(Monomial::from_exponents(exps), c);
        Ok(p)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            debug_assert_eq!(m.len(), Vars::new(n).count());
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> Vars {
        Vars::new(self.n)
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

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|m| m.total_degree() as i64).max().unwrap_or(-1)
    }

    pub fn max_base_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.base_degree() as i64).max().unwrap_or(-1)
    }

    /// Distinct fiber degrees present, ascending.
    pub fn fiber_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Monomial::fiber_degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_base_only(&self) -> bool {
        self.terms.keys().all(|m| m.fiber_degree() == 0)
    }

    /// Splits by fiber degree. The parts sum back to `self`.
    pub fn fiber_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.fiber_degree())
                .or_insert_with(|| Poly::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Adds `c · m` in place, merging and pruning zeros.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_n(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        assert_eq!(self.n, other.n, "polynomials over different n");
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_n(other)?;
        let mut out = Poly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by a single variable.
    pub fn mul_var(&self, var: usize) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.with_shift(var, 1), a.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `var`.
    pub fn diff(&self, var: usize) -> Result<Poly> {
        let count = self.vars().count();
        if var >= count {
            return Err(Error::VariableIndex {
                index: var,
                n: self.n,
                count,
            });
        }
        Ok(self.d(var))
    }

    /// Unchecked partial derivative for in-crate operator code.
    pub(crate) fn d(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, a) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.terms
                    .insert(m.with_shift(var, -1), a * Rational::from_integer(e.into()));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.n);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation at a point with one rational per variable.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let count = self.vars().count();
        if point.len() != count {
            return Err(Error::PointLength {
                expected: count,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Drops every term whose monomial fails `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomials over different n")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials over different n")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials over different n")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = self.vars();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars.name(v)),
                    _ => factors.push(format!("{}^{}", vars.name(v), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize) -> Poly {
        Poly::var(n, Vars::new(n).q(0))
    }
    fn p(n: usize) -> Poly {
        Poly::var(n, Vars::new(n).p(0))
    }

    #[test]
    fn add_examples() {
        let a = q(1).scale(&rat(1, 2));
        let b = q(1).scale(&rat(1, 3));
        assert_eq!(&a + &b, q(1).scale(&rat(5, 6)));
        assert_eq!(&a + &Poly::zero(1), a);
        let sq = &q(1) * &q(1);
        assert!((&sq + &(-&sq)).is_zero());
    }

    #[test]
    fn mul_examples() {
        let lhs = &(&q(1) + &p(1)) * &(&q(1) - &p(1));
        let rhs = &(&q(1) * &q(1)) - &(&p(1) * &p(1));
        assert_eq!(lhs, rhs);
        assert_eq!(&q(1) * &Poly::one(1), q(1));
        let v = Vars::new(1);
        let xq = Poly::var(1, v.xi_q(0));
        assert_eq!(&xq * &xq, Poly::term(1, &[0, 0, 0, 2, 0, 0], int(1)).unwrap());
    }

    #[test]
    fn diff_examples() {
        let v = Vars::new(1);
        let f = &(&q(1) * &q(1)) * &p(1);
        assert_eq!(f.diff(v.q(0)).unwrap(), (&q(1) * &p(1)).scale(&int(2)));
        let xq = Poly::var(1, v.xi_q(0));
        assert!(xq.diff(v.xi_t()).unwrap().is_zero());
        assert_eq!((&xq * &xq).diff(v.xi_q(0)).unwrap(), xq.scale(&int(2)));
        assert!(matches!(f.diff(6), Err(Error::VariableIndex { .. })));
    }

    #[test]
    fn eval_examples() {
        let f = &(&q(1) * &q(1)) - &(&p(1) * &p(1));
        let mut pt = vec![Rational::zero(); 6];
        pt[0] = int(3);
        pt[1] = int(2);
        assert_eq!(f.eval(&pt).unwrap(), int(5));
        assert_eq!(Poly::zero(1).eval(&pt).unwrap(), int(0));
        let xt = Poly::var(1, Vars::new(1).xi_t());
        let mut pt = vec![Rational::zero(); 6];
        pt[5] = rat(1, 2);
        assert_eq!(xt.eval(&pt).unwrap(), rat(1, 2));
        assert!(matches!(
            xt.eval(&pt[..5]),
            Err(Error::PointLength { expected: 6, found: 5 })
        ));
    }

    #[test]
    fn mismatched_n_is_a_dimension_error() {
        assert_eq!(q(1).try_add(&q(2)), Err(Error::Dimension { expected: 1, found: 2 }));
        assert!(q(1).try_mul(&q(2)).is_err());
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(Poly::zero(1).degree(), -1);
        assert_eq!(Poly::one(1).degree(), 0);
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents(&[2, 0, 0, 0, 0, 0]);
        let b = Monomial::from_exponents(&[0, 1, 1, 0, 0, 0]);
        let c = Monomial::from_exponents(&[0, 0, 0, 0, 0, 3]);
        assert!(b < a);
        assert!(a < c);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("4/8"), Some(rat(1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/"), None);
        assert_eq!(parse_rational("a"), None);
        assert_eq!(format_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(format_rational(&int(3)), "3");
    }

    #[test]
    fn display() {
        let f = &(&q(1) * &q(1)).scale(&rat(1, 2)) - &p(1);
        assert_eq!(f.to_string(), "1/2*q1^2 - p1");
    }
}
