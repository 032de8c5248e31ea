//! Density-weighted symbols and the natural action of vector fields on them.
//!
//! A [`Symbol`] is a polynomial on `T*R^{2n+1}` together with a density
//! weight. The same polynomial describes different modules depending on the
//! weight, so the weight travels with the value, and a [`Grading`] flag says
//! how to read it:
//!
//! * `S` grading: the weight is the `δ` of `S^k_δ` for every component.
//! * `R` grading: the weight is the `δ` of `R^k_δ = S^k_{δ + k/(n+1)}`, so a
//!   degree-`k` component really carries density weight `δ + k/(n+1)`.

use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rational, Vars};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Grading {
    S,
    R,
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grading::S => write!(f, "S"),
            Grading::R => write!(f, "R"),
        }
    }
}

/// `k / (n+1)`, the weight offset between the two gradings in fiber degree `k`.
pub fn grading_shift(n: usize, k: u32) -> Rational {
    Rational::new((k as i64).into(), ((n + 1) as i64).into())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    poly: Poly,
    weight: Rational,
    grading: Grading,
}

impl Symbol {
    pub fn new(poly: Poly, weight: Rational, grading: Grading) -> Result<Self> {
        if poly.n() == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Symbol { poly, weight, grading })
    }

    pub fn zero(n: usize, weight: Rational, grading: Grading) -> Self {
        Symbol {
            poly: Poly::zero(n),
            weight,
            grading,
        }
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn vars(&self) -> Vars {
        self.poly.vars()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Same weight and grading, different polynomial.
    pub fn with_poly(&self, poly: Poly) -> Symbol {
        debug_assert_eq!(poly.n(), self.n());
        Symbol {
            poly,
            weight: self.weight.clone(),
            grading: self.grading,
        }
    }

    /// Density weight (in the `S^k_δ` sense) carried by the fiber-degree-`k` part.
    pub fn density_weight(&self, k: u32) -> Rational {
        match self.grading {
            Grading::S => self.weight.clone(),
            Grading::R => &self.weight + grading_shift(self.n(), k),
        }
    }

    /// The unique fiber degree, or `None` for the zero symbol.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let degs = self.poly.fiber_degrees();
        match degs.len() {
            0 => Ok(None),
            1 => Ok(Some(degs[0])),
            _ => Err(Error::NotHomogeneous(degs)),
        }
    }

    /// Fiber-homogeneous parts in ascending degree; empty for zero.
    ///
    /// In `S` grading every part keeps the container weight; in `R` grading
    /// likewise (the shift is implied by the degree).
    pub fn fiber_components(&self) -> Vec<(u32, Symbol)> {
        self.poly
            .fiber_components()
            .into_iter()
            .map(|(k, p)| (k, self.with_poly(p)))
            .collect()
    }

    /// Relabels a homogeneous symbol from `S^k_δ` to `R^k_{δ - k/(n+1)}`.
    pub fn to_r_grading(&self) -> Result<Symbol> {
        self.expect_grading(Grading::S)?;
        let k = self.homogeneous_degree()?.ok_or(Error::UndeterminedDegree)?;
        Ok(self.to_r_grading_at(k))
    }

    /// Relabels a homogeneous symbol from `R^k_δ` to `S^k_{δ + k/(n+1)}`.
    pub fn from_r_grading(&self) -> Result<Symbol> {
        self.expect_grading(Grading::R)?;
        let k = self.homogeneous_degree()?.ok_or(Error::UndeterminedDegree)?;
        Ok(self.from_r_grading_at(k))
    }

    /// As [`Symbol::to_r_grading`] with the fiber degree given explicitly,
    /// which also covers the zero symbol.
    pub fn to_r_grading_at(&self, k: u32) -> Symbol {
        debug_assert_eq!(self.grading, Grading::S);
        Symbol {
            poly: self.poly.clone(),
            weight: &self.weight - grading_shift(self.n(), k),
            grading: Grading::R,
        }
    }

    pub fn from_r_grading_at(&self, k: u32) -> Symbol {
        debug_assert_eq!(self.grading, Grading::R);
        Symbol {
            poly: self.poly.clone(),
            weight: &self.weight + grading_shift(self.n(), k),
            grading: Grading::S,
        }
    }

    pub fn expect_grading(&self, g: Grading) -> Result<()> {
        if self.grading != g {
            return Err(Error::Grading {
                expected: g,
                found: self.grading,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Symbol) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: other.n(),
            });
        }
        if self.grading != other.grading {
            return Err(Error::Grading {
                expected: self.grading,
                found: other.grading,
            });
        }
        if self.weight != other.weight {
            return Err(Error::WeightMismatch {
                left: self.weight.to_string(),
                right: other.weight.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Symbol) -> Result<Symbol> {
        self.check_compatible(other)?;
        Ok(self.with_poly(&self.poly + &other.poly))
    }

    pub fn try_sub(&self, other: &Symbol) -> Result<Symbol> {
        self.check_compatible(other)?;
        Ok(self.with_poly(&self.poly - &other.poly))
    }

    pub fn scale(&self, c: &Rational) -> Symbol {
        self.with_poly(self.poly.scale(c))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} δ={}] {}", self.grading, self.weight, self.poly)
    }
}

/// Polynomial vector field `Σ Z^i ∂_{x^i}` on `R^{2n+1}`.
///
/// Equivalent to a fiber-degree-1 symbol `Σ Z^i ξ_i` of weight 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    n: usize,
    components: Vec<Poly>,
}

impl PolyVectorField {
    /// Components must be base-only polynomials, one per base coordinate.
    pub fn new(n: usize, components: Vec<Poly>) -> Result<Self> {
        let m = Vars::new(n).base_dim();
        if components.len() != m {
            return Err(Error::Domain(format!(
                "vector field on R^{m} needs {m} components, got {}",
                components.len()
            )));
        }
        for c in &components {
            if c.n() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: c.n(),
                });
            }
            if !c.is_base_only() {
                return Err(Error::Domain(
                    "vector field coefficients must not involve fiber variables".into(),
                ));
            }
        }
        Ok(PolyVectorField { n, components })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField {
            n,
            components: vec![Poly::zero(n); Vars::new(n).base_dim()],
        }
    }

    /// The coordinate field `∂_{x^j}`.
    pub fn coordinate(n: usize, j: usize) -> Self {
        let mut z = Self::zero(n);
        z.components[j] = Poly::one(n);
        z
    }

    /// Reads `Σ Z^i ξ_i`; the symbol must have fiber degree exactly 1
    /// (or be zero). The weight is not inspected.
    pub fn from_symbol(s: &Symbol) -> Result<Self> {
        Self::from_fiber_linear(s.poly())
    }

    pub fn from_fiber_linear(p: &Poly) -> Result<Self> {
        let vars = p.vars();
        let m = vars.base_dim();
        let mut components = vec![Poly::zero(p.n()); m];
        for (mono, c) in p.terms() {
            if mono.fiber_degree() != 1 {
                return Err(Error::Domain(format!(
                    "vector field symbol must be linear in ξ, found fiber degree {}",
                    mono.fiber_degree()
                )));
            }
            let j = (0..m)
                .find(|&j| mono.exponent(vars.xi(j)) == 1)
                .expect("fiber degree 1");
            components[j].add_term(mono.with_shift(vars.xi(j), -1), c.clone());
        }
        Ok(PolyVectorField { n: p.n(), components })
    }

    /// `Σ Z^i ξ_i` as an `S`-graded symbol of weight 0.
    pub fn to_symbol(&self) -> Symbol {
        let vars = Vars::new(self.n);
        let mut p = Poly::zero(self.n);
        for (j, c) in self.components.iter().enumerate() {
            p = &p + &c.mul_var(vars.xi(j));
        }
        Symbol::new(p, Rational::zero(), Grading::S).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &Poly {
        &self.components[j]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// `Σ_i ∂_{x^i} Z^i`.
    pub fn divergence(&self) -> Poly {
        let mut acc = Poly::zero(self.n);
        for (i, c) in self.components.iter().enumerate() {
            acc = &acc + &c.d(i);
        }
        acc
    }

    /// `Z(f) = Σ Z^i ∂_{x^i} f` for any polynomial `f` (fiber variables are inert).
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(self.n);
        for (i, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &f.d(i));
            }
        }
        acc
    }

    /// Vector-field bracket `[Z, W]^j = Z(W^j) − W(Z^j)`.
    pub fn bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.check_n(other.n)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(zj, wj)| &self.apply(wj) - &other.apply(zj))
            .collect();
        Ok(PolyVectorField { n: self.n, components })
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.check_n(other.n)?;
        Ok(PolyVectorField {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField {
            n: self.n,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every component by a base polynomial.
    pub fn mul_poly(&self, f: &Poly) -> PolyVectorField {
        PolyVectorField {
            n: self.n,
            components: self.components.iter().map(|p| p * f).collect(),
        }
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::Dimension {
                expected: self.n,
                found: n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = Vars::new(self.n);
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({c})∂{}", vars.name(j)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Lie derivative of a `λ`-density: `Σ Z^i ∂_i f + λ div(Z) f`.
pub fn lie_derivative_density(z: &PolyVectorField, f: &Poly, lambda: &Rational) -> Result<Poly> {
    if z.n() != f.n() {
        return Err(Error::Dimension {
            expected: z.n(),
            found: f.n(),
        });
    }
    if !f.is_base_only() {
        return Err(Error::Domain("densities must not involve fiber variables".into()));
    }
    let mut out = z.apply(f);
    if !lambda.is_zero() {
        out.add_scaled(&(&z.divergence() * f), lambda);
    }
    Ok(out)
}

/// Lie derivative of a symbol; each fiber-homogeneous part is transported
/// at its own density weight.
pub fn lie_derivative_symbol(z: &PolyVectorField, u: &Symbol) -> Result<Symbol> {
    if z.n() != u.n() {
        return Err(Error::Dimension {
            expected: z.n(),
            found: u.n(),
        });
    }
    let vars = u.vars();
    let m = vars.base_dim();
    let div = z.divergence();
    // jac[i][k] = ∂_k Z^i
    let jac: Vec<Vec<Poly>> = z
        .components()
        .iter()
        .map(|zi| (0..m).map(|k| zi.d(k)).collect())
        .collect();

    let mut out = Poly::zero(u.n());
    for (k, part) in u.fiber_components() {
        let p = part.poly();
        let mut acc = z.apply(p);
        let delta = u.density_weight(k);
        if !delta.is_zero() {
            acc.add_scaled(&(&div * p), &delta);
        }
        if k > 0 {
            for kk in 0..m {
                let dp = p.d(vars.xi(kk));
                if dp.is_zero() {
                    continue;
                }
                for (i, row) in jac.iter().enumerate() {
                    let c = &row[kk];
                    if c.is_zero() {
                        continue;
                    }
                    acc.add_scaled(&(c * &dp.mul_var(vars.xi(i))), &-Rational::one());
                }
            }
        }
        out = &out + &acc;
    }
    Ok(u.with_poly(out))
}
