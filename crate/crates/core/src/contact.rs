//! The standard contact form on `R^{2n+1}`, contact vector fields, the
//! Lagrange bracket, the contact Hamiltonian on densities, and generating
//! sets for the affine, projective and contact projective algebras.

use std::collections::BTreeMap;
use std::fmt;

use num::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{int, rat, Monomial, Poly, Rational, Vars};
use crate::linalg::{self, EchelonBasis};
use crate::operators::{euler_pairing, euler_spatial};
use crate::symbols::{grading_shift, Grading, PolyVectorField, Symbol};

/// `α = ½(Σ (p^k dq^k − q^k dp^k) − dt)` as a covector of polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactForm {
    n: usize,
    coefficients: Vec<Poly>,
}

pub fn alpha_coefficients(n: usize) -> Result<ContactForm> {
    ContactForm::standard(n)
}

impl ContactForm {
    pub fn standard(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::ZeroDimension);
        }
        let v = Vars::new(n);
        let half = rat(1, 2);
        let mut coefficients = vec![Poly::zero(n); v.base_dim()];
        for i in 0..n {
            coefficients[v.q(i)] = Poly::var(n, v.p(i)).scale(&half);
            coefficients[v.p(i)] = Poly::var(n, v.q(i)).scale(&-&half);
        }
        coefficients[v.t()] = Poly::constant(n, -half);
        let form = ContactForm { n, coefficients };
        debug_assert!(!form.volume_coefficient().is_zero());
        Ok(form)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coefficients
    }

    /// Coefficient of `α ∧ (dα)^n` against `dx^1 ∧ … ∧ dx^{2n+1}`.
    pub fn volume_coefficient(&self) -> Poly {
        let alpha = Form::one_form(self.n, &self.coefficients);
        let d_alpha = alpha.exterior_derivative();
        let mut acc = alpha;
        for _ in 0..self.n {
            acc = acc.wedge(&d_alpha);
        }
        let top = (1u32 << Vars::new(self.n).base_dim()) - 1;
        acc.terms.get(&top).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    /// `α ∧ (dα)^n ≠ 0` everywhere (checked as a nonzero constant).
    pub fn is_nondegenerate(&self) -> bool {
        let v = self.volume_coefficient();
        v.degree() == 0
    }

    /// `α(Z) = Σ α_j Z^j`.
    pub fn evaluate(&self, z: &PolyVectorField) -> Poly {
        let mut acc = Poly::zero(self.n);
        for (a, c) in self.coefficients.iter().zip(z.components()) {
            acc = &acc + &(a * c);
        }
        acc
    }

    /// Lie derivative of the form along `Z`, component-wise:
    /// `(L_Z α)_j = Z(α_j) + Σ_i α_i ∂_j Z^i`.
    pub fn lie_derivative(&self, z: &PolyVectorField) -> Vec<Poly> {
        (0..self.coefficients.len())
            .map(|j| {
                let mut out = z.apply(&self.coefficients[j]);
                for (i, ai) in self.coefficients.iter().enumerate() {
                    if !ai.is_zero() {
                        out = &out + &(ai * &z.component(i).d(j));
                    }
                }
                out
            })
            .collect()
    }
}

/// Differential form with polynomial coefficients, keyed by the bitmask of
/// its increasing index set.
#[derive(Debug, Clone)]
struct Form {
    n: usize,
    terms: BTreeMap<u32, Poly>,
}

impl Form {
    fn one_form(n: usize, coeffs: &[Poly]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (1u32 << j, c.clone()))
            .collect();
        Form { n, terms }
    }

    fn add_term(&mut self, mask: u32, c: Poly) {
        let e = self.terms.entry(mask).or_insert_with(|| Poly::zero(self.n));
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn exterior_derivative(&self) -> Form {
        let m = Vars::new(self.n).base_dim();
        let mut out = Form {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&mask, c) in &self.terms {
            for j in 0..m {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let dc = c.d(j);
                if dc.is_zero() {
                    continue;
                }
                let sign = wedge_sign(1 << j, mask);
                out.add_term(mask | (1 << j), dc.scale(&int(sign)));
            }
        }
        out
    }

    fn wedge(&self, other: &Form) -> Form {
        let mut out = Form {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                out.add_term(a | b, (ca * cb).scale(&int(wedge_sign(a, b))));
            }
        }
        out
    }
}

/// Sign of reordering `dx^A ∧ dx^B` into increasing order.
fn wedge_sign(a: u32, b: u32) -> i64 {
    let mut swaps = 0;
    for i in 0..32 {
        if a & (1 << i) != 0 {
            swaps += (b & ((1u32 << i) - 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Checks `L_Z α = f_Z α` with `f_Z = div(Z)/(n+1)`; returns `f_Z` on success.
pub fn is_contact(z: &PolyVectorField) -> (bool, Option<Poly>) {
    let alpha = ContactForm::standard(z.n()).expect("vector fields have n >= 1");
    let f = z.divergence().scale(&rat(1, (z.n() + 1) as i64));
    let lie = alpha.lie_derivative(z);
    let ok = lie.iter().zip(alpha.coefficients()).all(|(l, a)| *l == &f * a);
    if ok {
        (true, Some(f))
    } else {
        (false, None)
    }
}

fn check_density(f: &Poly) -> Result<()> {
    if !f.is_base_only() {
        return Err(Error::Domain("densities must not involve fiber variables".into()));
    }
    Ok(())
}

/// Lagrange bracket `F_λ × F_μ → F_{λ+μ+1/(n+1)}`.
pub fn lagrange_bracket(f: &Poly, lambda: &Rational, g: &Poly, mu: &Rational) -> Result<(Poly, Rational)> {
    if f.n() != g.n() {
        return Err(Error::Dimension {
            expected: f.n(),
            found: g.n(),
        });
    }
    check_density(f)?;
    check_density(g)?;
    let n = f.n();
    let v = Vars::new(n);
    let mut out = Poly::zero(n);
    for k in 0..n {
        out = &out + &(&f.d(v.p(k)) * &g.d(v.q(k)));
        out = &out - &(&f.d(v.q(k)) * &g.d(v.p(k)));
    }
    let ft = f.d(v.t());
    let gt = g.d(v.t());
    out = &out - &(&ft * &euler_spatial(g));
    out = &out + &(&gt * &euler_spatial(f));
    let c = int(2 * (n as i64 + 1));
    out.add_scaled(&(f * &gt), &(&c * lambda));
    out.add_scaled(&(g * &ft), &-(&c * mu));
    Ok((out, lambda + mu + grading_shift(n, 1)))
}

/// The contact Hamiltonian `X : F_λ → S^1_{λ+1/(n+1)}`.
pub fn hamiltonian_density(f: &Poly, lambda: &Rational) -> Result<Symbol> {
    check_density(f)?;
    let n = f.n();
    let v = Vars::new(n);
    let mut out = Poly::zero(n);
    for k in 0..n {
        out = &out + &f.d(v.p(k)).mul_var(v.xi_q(k));
        out = &out - &f.d(v.q(k)).mul_var(v.xi_p(k));
    }
    out = &out - &euler_pairing(&f.d(v.t()));
    let mut tail = euler_spatial(f);
    tail.add_scaled(f, &(int(2 * (n as i64 + 1)) * lambda));
    out = &out + &tail.mul_var(v.xi_t());
    Symbol::new(out, lambda + grading_shift(n, 1), Grading::S)
}

/// Weight `−1/(n+1)` at which `X` produces contact vector fields.
pub fn contact_weight(n: usize) -> Rational {
    -grading_shift(n, 1)
}

/// The contact vector field `X(f)` generated by `f ∈ F_{−1/(n+1)}`.
pub fn contact_vector_field(f: &Poly) -> Result<PolyVectorField> {
    let s = hamiltonian_density(f, &contact_weight(f.n()))?;
    PolyVectorField::from_symbol(&s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraName {
    Aff,
    Sl,
    Sp,
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraName::Aff => write!(f, "aff"),
            AlgebraName::Sl => write!(f, "sl"),
            AlgebraName::Sp => write!(f, "sp"),
        }
    }
}

/// A generating list of polynomial vector fields, with labels.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    pub name: AlgebraName,
    pub n: usize,
    pub elements: Vec<PolyVectorField>,
    pub labels: Vec<String>,
    /// Dimension of the algebra the list should span.
    pub expected_rank: usize,
}

impl AlgebraBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Exact rank of the list, computed on coefficient vectors.
    pub fn rank(&self) -> usize {
        let vs: Vec<Poly> = self.elements.iter().map(|z| z.to_symbol().into_poly()).collect();
        linalg::rank(&vs)
    }

    pub fn span(&self) -> EchelonBasis {
        let mut b = EchelonBasis::new();
        for z in &self.elements {
            b.insert(&z.to_symbol().into_poly());
        }
        b
    }

    pub fn spans(&self, z: &PolyVectorField) -> bool {
        self.span().contains(&z.to_symbol().into_poly())
    }
}

/// Monomials in the base variables of total degree at most `d`, ascending.
pub fn base_monomials(n: usize, d: u32) -> Vec<Monomial> {
    let v = Vars::new(n);
    let m = v.base_dim();
    let mut out = Vec::new();
    let mut exps = vec![0u16; v.count()];
    fn rec(pos: usize, m: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos == m {
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in 0..=left {
            exps[pos] = e as u16;
            rec(pos + 1, m, left - e, exps, out);
        }
        exps[pos] = 0;
    }
    rec(0, m, d, &mut exps, &mut out);
    out.sort();
    out
}

fn monomial_poly(n: usize, m: &Monomial) -> Poly {
    Poly::from_terms(n, [(m.clone(), Rational::one())])
}

/// `X(m)` at weight `−1/(n+1)` for every base monomial of degree ≤ 2; a
/// basis of the contact projective algebra `sp(2n+2)`.
pub fn sp_generators(n: usize) -> Result<AlgebraBasis> {
    if n < 1 {
        return Err(Error::ZeroDimension);
    }
    let mut elements = Vec::new();
    let mut labels = Vec::new();
    for m in base_monomials(n, 2) {
        let f = monomial_poly(n, &m);
        elements.push(contact_vector_field(&f)?);
        labels.push(format!("X({f})"));
    }
    Ok(AlgebraBasis {
        name: AlgebraName::Sp,
        n,
        elements,
        labels,
        expected_rank: (n + 1) * (2 * n + 3),
    })
}

fn affine_fields(n: usize) -> (Vec<PolyVectorField>, Vec<String>) {
    let v = Vars::new(n);
    let m = v.base_dim();
    let mut elements = Vec::new();
    let mut labels = Vec::new();
    for j in 0..m {
        elements.push(PolyVectorField::coordinate(n, j));
        labels.push(format!("∂{}", v.name(j)));
    }
    for i in 0..m {
        for j in 0..m {
            elements.push(PolyVectorField::coordinate(n, j).mul_poly(&Poly::var(n, i)));
            labels.push(format!("{}∂{}", v.name(i), v.name(j)));
        }
    }
    (elements, labels)
}

/// Constant and linear vector fields.
pub fn aff_generators(n: usize) -> Result<AlgebraBasis> {
    if n < 1 {
        return Err(Error::ZeroDimension);
    }
    let m = 2 * n + 1;
    let (elements, labels) = affine_fields(n);
    Ok(AlgebraBasis {
        name: AlgebraName::Aff,
        n,
        elements,
        labels,
        expected_rank: m * m + m,
    })
}

/// Constant, linear, and `x^j E` fields spanning the projective algebra
/// `sl(2n+2)`.
pub fn sl_generators(n: usize) -> Result<AlgebraBasis> {
    if n < 1 {
        return Err(Error::ZeroDimension);
    }
    let v = Vars::new(n);
    let (mut elements, mut labels) = affine_fields(n);
    let euler = crate::operators::euler_field(n);
    for j in 0..v.base_dim() {
        elements.push(euler.mul_poly(&Poly::var(n, j)));
        labels.push(format!("{}E", v.name(j)));
    }
    let m = 2 * n + 2;
    Ok(AlgebraBasis {
        name: AlgebraName::Sl,
        n,
        elements,
        labels,
        expected_rank: m * m - 1,
    })
}
