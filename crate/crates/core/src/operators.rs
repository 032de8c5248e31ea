//! Invariant operators on symbols: the contraction `i(α)`, the extended
//! contact Hamiltonian `X`, the Cartan element `H`, Lie derivatives, and a
//! small algebra of weight-shifting linear operators for stating commutator
//! identities.
//!
//! In the `R` grading the three operators `i(α)`, `X`, `H` satisfy the
//! `sl(2)` relations
//!
//! ```text
//! [i(α), X] = H,   [H, i(α)] = i(α),   [H, X] = −X
//! ```
//!
//! with `H = h_k Id = −((n+1)δ + k) Id` on `R^k_δ`.

use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::contact::ContactForm;
use crate::error::{Error, Result};
use crate::exactpoly::{int, Poly, Rational, Vars};
use crate::symbols::{grading_shift, lie_derivative_symbol, Grading, PolyVectorField, Symbol};

/// `E_s = Σ (q^i ∂_{q^i} + p^i ∂_{p^i})`.
pub fn euler_spatial(f: &Poly) -> Poly {
    let v = f.vars();
    let mut out = Poly::zero(f.n());
    for i in 0..v.n() {
        out = &out + &f.d(v.q(i)).mul_var(v.q(i));
        out = &out + &f.d(v.p(i)).mul_var(v.p(i));
    }
    out
}

/// Multiplication by `⟨E_s, ξ⟩ = Σ (q^i ξ_{q^i} + p^i ξ_{p^i})`.
pub fn euler_pairing(f: &Poly) -> Poly {
    let v = f.vars();
    let mut out = Poly::zero(f.n());
    for i in 0..v.n() {
        out = &out + &f.mul_var(v.xi_q(i)).mul_var(v.q(i));
        out = &out + &f.mul_var(v.xi_p(i)).mul_var(v.p(i));
    }
    out
}

/// The Euler field `E = E_s + t ∂_t`.
pub fn euler_field(n: usize) -> PolyVectorField {
    let v = Vars::new(n);
    let comps = (0..v.base_dim()).map(|j| Poly::var(n, j)).collect();
    PolyVectorField::new(n, comps).expect("linear components")
}

/// `E_ξ = Σ ξ_j ∂_{ξ_j}`; multiplies each fiber-degree-`k` part by `k`.
pub fn fiber_euler(f: &Poly) -> Poly {
    let mut out = Poly::zero(f.n());
    for (m, c) in f.terms() {
        out.add_term(m.clone(), c * int(m.fiber_degree() as i64));
    }
    out
}

/// `D = Σ (ξ_{q^i} ∂_{p^i} − ξ_{p^i} ∂_{q^i}) + ξ_t E_s − ⟨E_s, ξ⟩ ∂_t`.
pub fn operator_d(f: &Poly) -> Poly {
    let v = f.vars();
    let mut out = Poly::zero(f.n());
    for i in 0..v.n() {
        out = &out + &f.d(v.p(i)).mul_var(v.xi_q(i));
        out = &out - &f.d(v.q(i)).mul_var(v.xi_p(i));
    }
    out = &out + &euler_spatial(f).mul_var(v.xi_t());
    out = &out - &euler_pairing(&f.d(v.t()));
    out
}

/// `Σ_j α_j ∂_{ξ_j} = ½(Σ (p^i ∂_{ξ_{q^i}} − q^i ∂_{ξ_{p^i}}) − ∂_{ξ_t})`.
pub fn contract_alpha(f: &Poly) -> Poly {
    let v = f.vars();
    let alpha = ContactForm::standard(f.n()).expect("n >= 1");
    let mut out = Poly::zero(f.n());
    for (j, a) in alpha.coefficients().iter().enumerate() {
        let d = f.d(v.xi(j));
        if !d.is_zero() {
            out = &out + &(a * &d);
        }
    }
    out
}

/// `i(α)`: lowers fiber degree by one. In the `S` grading the weight drops
/// by `1/(n+1)`; in the `R` grading it is unchanged.
pub fn i_alpha(u: &Symbol) -> Symbol {
    let poly = contract_alpha(u.poly());
    let weight = match u.grading() {
        Grading::S => u.weight() - grading_shift(u.n(), 1),
        Grading::R => u.weight().clone(),
    };
    Symbol::new(poly, weight, u.grading()).expect("n >= 1")
}

/// `a(k, δ) = 2(n+1)δ − k` for an `S`-grading weight `δ`.
pub fn const_a(n: usize, k: u32, delta: &Rational) -> Rational {
    int(2 * (n as i64 + 1)) * delta - int(k as i64)
}

/// `h_k = −((n+1)δ + k)` for an `R`-grading weight `δ`.
pub fn const_h(n: usize, k: u32, delta: &Rational) -> Rational {
    -(int(n as i64 + 1) * delta + int(k as i64))
}

/// `r(l, k) = −(l/2)(2(n+1)δ + 2k + l − 1)` for an `R`-grading weight `δ`.
pub fn const_r(n: usize, l: u32, k: u32, delta: &Rational) -> Rational {
    let l_ = int(l as i64);
    let inner = int(2 * (n as i64 + 1)) * delta + int(2 * k as i64 + l as i64 - 1);
    -(l_ * inner) / int(2)
}

/// Structure constants at a fixed `n` and `R`-grading weight `δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    pub n: usize,
    pub delta: Rational,
}

impl StructureConstants {
    pub fn new(n: usize, delta: Rational) -> Self {
        StructureConstants { n, delta }
    }

    pub fn h(&self, k: u32) -> Rational {
        const_h(self.n, k, &self.delta)
    }

    pub fn r(&self, l: u32, k: u32) -> Rational {
        const_r(self.n, l, k, &self.delta)
    }

    /// Coefficient of `ξ_t` in `X` on `R^k`: `2(n+1)δ + k`.
    pub fn x_coefficient(&self, k: u32) -> Rational {
        const_a(self.n, k, &(&self.delta + grading_shift(self.n, k)))
    }
}

/// Weight of `X(u)` given the weight of `u`.
fn x_output_weight(u: &Symbol) -> Rational {
    match u.grading() {
        Grading::S => u.weight() + grading_shift(u.n(), 1),
        Grading::R => u.weight().clone(),
    }
}

fn x_component(u: &Symbol, k: u32, part: &Poly) -> Poly {
    let v = u.vars();
    let a = const_a(u.n(), k, &u.density_weight(k));
    let mut out = operator_d(part);
    out.add_scaled(&part.mul_var(v.xi_t()), &a);
    out
}

/// The extended Hamiltonian `X(S) = D(S) + a(k,δ) ξ_t S` on a
/// fiber-homogeneous symbol (the zero symbol is accepted).
pub fn big_x(u: &Symbol) -> Result<Symbol> {
    let poly = match u.homogeneous_degree()? {
        None => Poly::zero(u.n()),
        Some(k) => x_component(u, k, u.poly()),
    };
    Symbol::new(poly, x_output_weight(u), u.grading())
}

/// `X` applied component-wise to a symbol of mixed fiber degree.
pub fn big_x_graded(u: &Symbol) -> Symbol {
    let mut out = Poly::zero(u.n());
    for (k, part) in u.fiber_components() {
        out = &out + &x_component(u, k, part.poly());
    }
    Symbol::new(out, x_output_weight(u), u.grading()).expect("n >= 1")
}

/// `H = h_k Id` on each `R^k`; only defined in the `R` grading.
pub fn op_h(u: &Symbol) -> Result<Symbol> {
    u.expect_grading(Grading::R)?;
    let mut out = Poly::zero(u.n());
    for (k, part) in u.fiber_components() {
        out.add_scaled(part.poly(), &const_h(u.n(), k, u.weight()));
    }
    Ok(u.with_poly(out))
}

type ApplyFn = dyn Fn(&Symbol) -> Result<Symbol> + Send + Sync;

/// A linear map on symbols that shifts fiber degree and density weight by
/// fixed amounts. `weight_shift` is measured in the `S` grading; in the `R`
/// grading the weight moves by `weight_shift − fiber_shift/(n+1)`.
#[derive(Clone)]
pub struct LinearOperator {
    label: String,
    n: usize,
    weight_shift: Rational,
    fiber_shift: i32,
    domain: Option<Grading>,
    apply: Arc<ApplyFn>,
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearOperator")
            .field("label", &self.label)
            .field("weight_shift", &self.weight_shift)
            .field("fiber_shift", &self.fiber_shift)
            .finish()
    }
}

impl LinearOperator {
    pub fn new(
        label: impl Into<String>,
        n: usize,
        weight_shift: Rational,
        fiber_shift: i32,
        domain: Option<Grading>,
        apply: impl Fn(&Symbol) -> Result<Symbol> + Send + Sync + 'static,
    ) -> Self {
        LinearOperator {
            label: label.into(),
            n,
            weight_shift,
            fiber_shift,
            domain,
            apply: Arc::new(apply),
        }
    }

    /// Operator built from a map on polynomials with the given shifts.
    pub fn from_poly_map(
        label: impl Into<String>,
        n: usize,
        weight_shift: Rational,
        fiber_shift: i32,
        f: impl Fn(&Poly) -> Poly + Send + Sync + 'static,
    ) -> Self {
        let ws = weight_shift.clone();
        Self::new(label, n, weight_shift, fiber_shift, None, move |u| {
            let w = Self::shifted_weight(u, &ws, fiber_shift);
            Symbol::new(f(u.poly()), w, u.grading())
        })
    }

    fn shifted_weight(u: &Symbol, weight_shift: &Rational, fiber_shift: i32) -> Rational {
        match u.grading() {
            Grading::S => u.weight() + weight_shift,
            Grading::R => {
                let r = Rational::new((fiber_shift as i64).into(), ((u.n() + 1) as i64).into());
                u.weight() + weight_shift - r
            }
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new("Id", n, Rational::zero(), 0, None, |u| Ok(u.clone()))
    }

    pub fn zero(n: usize) -> Self {
        Self::new(
            "0",
            n,
            Rational::zero(),
            0,
            None,
            |u| Ok(u.with_poly(Poly::zero(u.n()))),
        )
    }

    pub fn i_alpha(n: usize) -> Self {
        Self::new("i(α)", n, -grading_shift(n, 1), -1, None, |u| Ok(i_alpha(u)))
    }

    pub fn big_x(n: usize) -> Self {
        Self::new("X", n, grading_shift(n, 1), 1, None, |u| Ok(big_x_graded(u)))
    }

    pub fn h(n: usize) -> Self {
        Self::new("H", n, Rational::zero(), 0, Some(Grading::R), op_h)
    }

    pub fn lie(z: PolyVectorField) -> Self {
        let label = format!("L[{z}]");
        Self::new(label, z.n(), Rational::zero(), 0, None, move |u| {
            lie_derivative_symbol(&z, u)
        })
    }

    /// `D`, carrying the same shifts as `X`.
    pub fn d(n: usize) -> Self {
        Self::from_poly_map("D", n, grading_shift(n, 1), 1, operator_d)
    }

    /// Multiplication by `ξ_t`, carrying the same shifts as `X`.
    pub fn xi_t(n: usize) -> Self {
        let v = Vars::new(n);
        Self::from_poly_map("ξ_t", n, grading_shift(n, 1), 1, move |p| p.mul_var(v.xi_t()))
    }

    pub fn fiber_euler(n: usize) -> Self {
        Self::from_poly_map("E_ξ", n, Rational::zero(), 0, fiber_euler)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn weight_shift(&self) -> &Rational {
        &self.weight_shift
    }

    pub fn fiber_shift(&self) -> i32 {
        self.fiber_shift
    }

    pub fn apply(&self, u: &Symbol) -> Result<Symbol> {
        if u.n() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: u.n(),
            });
        }
        if let Some(g) = self.domain {
            u.expect_grading(g)?;
        }
        let out = (self.apply)(u)?;
        let expected = Self::shifted_weight(u, &self.weight_shift, self.fiber_shift);
        if out.weight() != &expected {
            return Err(Error::WeightMismatch {
                left: out.weight().to_string(),
                right: expected.to_string(),
            });
        }
        Ok(out)
    }

    fn merge_domain(&self, other: &LinearOperator) -> Result<Option<Grading>> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        match (self.domain, other.domain) {
            (Some(a), Some(b)) if a != b => Err(Error::IncompatibleOperators(format!(
                "{} acts on {a}-graded symbols, {} on {b}-graded",
                self.label, other.label
            ))),
            (a, b) => Ok(a.or(b)),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        let domain = self.merge_domain(other)?;
        let (a, b) = (self.clone(), other.clone());
        Ok(LinearOperator {
            label: format!("{}∘{}", self.label, other.label),
            n: self.n,
            weight_shift: &self.weight_shift + &other.weight_shift,
            fiber_shift: self.fiber_shift + other.fiber_shift,
            domain,
            apply: Arc::new(move |u| a.apply(&b.apply(u)?)),
        })
    }

    fn combine(&self, other: &LinearOperator, sign: i64, sep: &str) -> Result<LinearOperator> {
        let domain = self.merge_domain(other)?;
        if self.weight_shift != other.weight_shift || self.fiber_shift != other.fiber_shift {
            return Err(Error::IncompatibleOperators(format!(
                "{} and {} shift degrees differently",
                self.label, other.label
            )));
        }
        let (a, b) = (self.clone(), other.clone());
        let s = int(sign);
        Ok(LinearOperator {
            label: format!("({}{sep}{})", self.label, other.label),
            n: self.n,
            weight_shift: self.weight_shift.clone(),
            fiber_shift: self.fiber_shift,
            domain,
            apply: Arc::new(move |u| {
                let x = a.apply(u)?;
                let y = b.apply(u)?;
                Ok(x.with_poly(&x.poly().clone() + &y.poly().scale(&s)))
            }),
        })
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.combine(other, 1, " + ")
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.combine(other, -1, " − ")
    }

    pub fn scale(&self, c: Rational) -> LinearOperator {
        let a = self.clone();
        let label = format!("{c}·{}", self.label);
        LinearOperator {
            label,
            apply: Arc::new(move |u| Ok(a.apply(u)?.scale(&c))),
            ..self.clone()
        }
    }

    /// `self^e`, with `self^0 = Id`.
    pub fn pow(&self, e: u32) -> LinearOperator {
        let mut out = LinearOperator::identity(self.n);
        for _ in 0..e {
            out = self.compose(&out).expect("same operator");
        }
        out.label = format!("{}^{e}", self.label);
        out
    }

    pub fn commutator(&self, other: &LinearOperator) -> Result<LinearOperator> {
        let c = self.compose(other)?.sub(&other.compose(self)?)?;
        Ok(LinearOperator {
            label: format!("[{}, {}]", self.label, other.label),
            ..c
        })
    }
}

/// `[A, B] = A∘B − B∘A`.
pub fn commutator(a: &LinearOperator, b: &LinearOperator) -> Result<LinearOperator> {
    a.commutator(b)
}

/// Convenience: `c · Id` on symbols.
pub fn scalar_operator(n: usize, c: Rational) -> LinearOperator {
    if c.is_one() {
        LinearOperator::identity(n)
    } else {
        LinearOperator::identity(n).scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::contact_vector_field;
    use crate::exactpoly::rat;

    fn sym(p: Poly, w: Rational, g: Grading) -> Symbol {
        Symbol::new(p, w, g).unwrap()
    }

    #[test]
    fn i_alpha_examples() {
        let v = Vars::new(1);
        let xt = Poly::var(1, v.xi_t());
        let u = sym(xt, int(0), Grading::S);
        let got = i_alpha(&u);
        assert_eq!(got.poly(), &Poly::constant(1, rat(-1, 2)));
        assert_eq!(got.weight(), &rat(-1, 2));

        let xq = Poly::var(1, v.xi_q(0));
        let u = sym(&xq * &xq, int(0), Grading::R);
        let got = i_alpha(&u);
        assert_eq!(got.poly(), &xq.mul_var(v.p(0)));
        assert_eq!(got.weight(), &int(0));

        let u = sym(Poly::var(1, v.q(0)), int(3), Grading::R);
        assert!(i_alpha(&u).is_zero());
    }

    #[test]
    fn big_x_examples() {
        let v = Vars::new(1);
        let one = sym(Poly::one(1), int(1), Grading::R);
        assert_eq!(big_x(&one).unwrap().poly(), &Poly::var(1, v.xi_t()).scale(&int(4)));

        let d = rat(3, 7);
        let xq = Poly::var(1, v.xi_q(0));
        let u = sym(xq.clone(), d.clone(), Grading::S);
        let got = big_x(&u).unwrap();
        let coeff = int(4) * &d - int(1);
        assert_eq!(got.poly(), &xq.mul_var(v.xi_t()).scale(&coeff));
        assert_eq!(got.weight(), &(&d + rat(1, 2)));

        let t = Poly::var(1, v.t());
        let u = sym(&t * &t, rat(-1, 2), Grading::S);
        let e_xi = &euler_pairing(&Poly::one(1)) + &t.mul_var(v.xi_t());
        assert_eq!(big_x(&u).unwrap().poly(), &(&t * &e_xi).scale(&int(-2)));

        let mixed = sym(&xq + &Poly::one(1), int(1), Grading::R);
        assert!(matches!(big_x(&mixed), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn h_examples() {
        let one = sym(Poly::one(1), int(1), Grading::R);
        assert_eq!(op_h(&one).unwrap().poly(), &Poly::constant(1, int(-2)));
        let v = Vars::new(1);
        let cube = Poly::var(1, v.xi_p(0)).pow(3);
        let u = sym(cube.clone(), int(0), Grading::R);
        assert_eq!(op_h(&u).unwrap().poly(), &cube.scale(&int(-3)));
        let s = sym(cube, int(0), Grading::S);
        assert!(matches!(op_h(&s), Err(Error::Grading { .. })));
    }

    #[test]
    fn constants() {
        for n in 1..4 {
            assert_eq!(const_a(n, 1, &rat(-1, n as i64 + 1)), int(-3));
        }
        for k in 0..=6 {
            for d in [rat(1, 1), rat(-1, 3), rat(7, 5)] {
                assert_eq!(const_r(2, 1, k, &d), const_h(2, k, &d));
            }
        }
        assert_eq!(const_r(1, 1, 1, &int(1)), int(-3));
        assert_eq!(const_r(1, 2, 0, &int(1)), int(-5));
        assert_eq!(const_r(1, 0, 3, &int(1)), int(0));
    }

    #[test]
    fn commutator_examples() {
        let v = Vars::new(1);
        let lq = LinearOperator::lie(PolyVectorField::coordinate(1, v.q(0)));
        let lp = LinearOperator::lie(PolyVectorField::coordinate(1, v.p(0)));
        let u = sym(
            &(&Poly::var(1, v.q(0)) * &Poly::var(1, v.p(0))) * &Poly::var(1, v.xi_t()),
            rat(1, 3),
            Grading::S,
        );
        assert!(commutator(&lq, &lp).unwrap().apply(&u).unwrap().is_zero());

        let d = rat(5, 2);
        let one = sym(Poly::one(1), d.clone(), Grading::R);
        let c = commutator(&LinearOperator::i_alpha(1), &LinearOperator::big_x(1)).unwrap();
        assert_eq!(c.apply(&one).unwrap().poly(), &Poly::constant(1, -(int(2) * &d)));

        let z = contact_vector_field(&Poly::var(1, v.q(0))).unwrap();
        let c = commutator(&LinearOperator::lie(z), &LinearOperator::i_alpha(1)).unwrap();
        let u = sym(&Poly::var(1, v.xi_q(0)).pow(2) * &Poly::var(1, v.t()), d, Grading::S);
        assert!(c.apply(&u).unwrap().is_zero());
    }

    #[test]
    fn incompatible_operator_sums() {
        let x = LinearOperator::big_x(1);
        let i = LinearOperator::i_alpha(1);
        assert!(matches!(x.add(&i), Err(Error::IncompatibleOperators(_))));
        assert!(LinearOperator::h(1).add(&LinearOperator::identity(1)).is_ok());
        let s = sym(Poly::one(1), int(0), Grading::S);
        assert!(LinearOperator::h(1).apply(&s).is_err());
        assert!(LinearOperator::identity(2).apply(&s).is_err());
    }
}
