//! Projectors onto `R^k ∩ ker i(α)`, right inverses of `i(α)`, the full
//! decomposition `R^k = ⊕_l s^l(R^{k−l} ∩ ker i(α))`, and the filtration
//! `F^{k,l} = R^k ∩ ker i(α)^l`.
//!
//! Everything here lives in the `R` grading at a fixed weight `δ`. The
//! projector and section exist unless `δ` lies in the finite singular set
//! `I_k = { −p/(2(n+1)) : k−1 ≤ p ≤ 2k−2 }`.

use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rational};
use crate::operators::{big_x, i_alpha, StructureConstants};
use crate::slices;
use crate::symbols::{Grading, Symbol};

/// Membership of `δ` in `I_k`, with the offending values of `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularReport {
    pub k: u32,
    pub n: usize,
    pub delta: String,
    pub singular: bool,
    pub witnesses: Vec<u32>,
}

impl fmt::Display for SingularReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.singular {
            write!(
                f,
                "δ = {} lies in I_{} for n = {} (p ∈ {:?})",
                self.delta, self.k, self.n, self.witnesses
            )
        } else {
            write!(f, "δ = {} is regular for k = {}, n = {}", self.delta, self.k, self.n)
        }
    }
}

fn singular_value(n: usize, p: u32) -> Rational {
    Rational::new((-(p as i64)).into(), (2 * (n as i64 + 1)).into())
}

/// `I_k`, ordered by increasing `p`.
pub fn singular_set(k: u32, n: usize) -> Result<Vec<Rational>> {
    if k < 1 {
        return Err(Error::Precondition("singular sets are indexed by k >= 1".into()));
    }
    if n < 1 {
        return Err(Error::ZeroDimension);
    }
    Ok((k - 1..=2 * k - 2).map(|p| singular_value(n, p)).collect())
}

pub fn singular_report(k: u32, n: usize, delta: &Rational) -> SingularReport {
    let witnesses: Vec<u32> = if k == 0 {
        Vec::new()
    } else {
        (k - 1..=2 * k - 2)
            .filter(|&p| &singular_value(n, p) == delta)
            .collect()
    };
    SingularReport {
        k,
        n,
        delta: delta.to_string(),
        singular: !witnesses.is_empty(),
        witnesses,
    }
}

fn check_regular(k: u32, n: usize, delta: &Rational) -> Result<()> {
    let rep = singular_report(k, n, delta);
    if rep.singular {
        return Err(Error::SingularWeight(rep));
    }
    Ok(())
}

/// `b_{k,l} = (Π_{j=1}^l −r(j, k−j))^{−1}`.
///
/// Membership of `δ` in `I_k` is decided up front and compared with the
/// vanishing of the factors `r(j, k−j)`, `1 ≤ j ≤ k`; the two tests must agree.
pub fn coeff_b(k: u32, l: u32, sc: &StructureConstants) -> Result<Rational> {
    if l < 1 || l > k {
        return Err(Error::Precondition(format!(
            "b_(k,l) needs 1 <= l <= k, got k={k}, l={l}"
        )));
    }
    let rep = singular_report(k, sc.n, &sc.delta);
    let factors: Vec<Rational> = (1..=k).map(|j| -sc.r(j, k - j)).collect();
    let vanishing = factors.iter().any(Zero::is_zero);
    assert_eq!(
        rep.singular, vanishing,
        "I_{k} membership and vanishing factors of b_(k,l) disagree at δ = {}",
        sc.delta
    );
    if rep.singular {
        return Err(Error::SingularWeight(rep));
    }
    let prod: Rational = factors[..l as usize].iter().product();
    Ok(prod.recip())
}

/// `c(l, m) = (Π_{i=1}^l r(i, m))^{−1}`; `c(0, m) = 1`.
pub fn coeff_c(l: u32, m: u32, sc: &StructureConstants) -> Result<Rational> {
    let mut prod = Rational::one();
    for i in 1..=l {
        let f = sc.r(i, m);
        if f.is_zero() {
            // r(i, m) = 0 exactly when δ = −(2m+i−1)/(2(n+1)), an element of I_{m+i}
            return Err(Error::SingularWeight(singular_report(m + i, sc.n, &sc.delta)));
        }
        prod *= f;
    }
    Ok(prod.recip())
}

fn check_input(u: &Symbol, n: usize, delta: &Rational, k: u32) -> Result<()> {
    if u.n() != n {
        return Err(Error::Dimension {
            expected: n,
            found: u.n(),
        });
    }
    u.expect_grading(Grading::R)?;
    if u.weight() != delta {
        return Err(Error::WeightMismatch {
            left: u.weight().to_string(),
            right: delta.to_string(),
        });
    }
    match u.homogeneous_degree()? {
        Some(d) if d != k => Err(Error::Precondition(format!("expected fiber degree {k}, found {d}"))),
        _ => Ok(()),
    }
}

fn x_pow(u: &Symbol, e: u32) -> Symbol {
    let mut out = u.clone();
    for _ in 0..e {
        out = big_x(&out).expect("X preserves homogeneity");
    }
    out
}

fn i_pow(u: &Symbol, e: u32) -> Symbol {
    let mut out = u.clone();
    for _ in 0..e {
        out = i_alpha(&out);
    }
    out
}

/// `p_k = Id + Σ_{l=1}^k b_{k,l} X^l ∘ i(α)^l` on `R^k_δ`.
#[derive(Debug, Clone)]
pub struct Projector {
    n: usize,
    k: u32,
    delta: Rational,
    b: Vec<Rational>,
}

impl Projector {
    pub fn new(n: usize, k: u32, delta: Rational) -> Result<Self> {
        let b = if k == 0 {
            Vec::new()
        } else {
            let sc = StructureConstants::new(n, delta.clone());
            (1..=k).map(|l| coeff_b(k, l, &sc)).collect::<Result<_>>()?
        };
        Ok(Projector { n, k, delta, b })
    }

    /// Builds the operator with arbitrary coefficients `b_{k,1..k}`. Only
    /// useful for negative controls: anything but the true `b_{k,l}` gives a
    /// map that is not a projector.
    #[doc(hidden)]
    pub fn with_coefficients(n: usize, k: u32, delta: Rational, b: Vec<Rational>) -> Self {
        assert_eq!(b.len(), k as usize);
        Projector { n, k, delta, b }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.b
    }

    pub fn apply(&self, u: &Symbol) -> Result<Symbol> {
        check_input(u, self.n, &self.delta, self.k)?;
        let mut acc = u.poly().clone();
        let mut contracted = u.clone();
        for (l, b) in (1..=self.k).zip(&self.b) {
            contracted = i_alpha(&contracted);
            if contracted.is_zero() {
                break;
            }
            acc.add_scaled(x_pow(&contracted, l).poly(), b);
        }
        Ok(u.with_poly(acc))
    }
}

/// `s_{k−1} = −Σ_{l=1}^k b_{k,l} X^l ∘ i(α)^{l−1} : R^{k−1} → R^k`.
#[derive(Debug, Clone)]
pub struct Section {
    n: usize,
    source_degree: u32,
    delta: Rational,
    b: Vec<Rational>,
}

impl Section {
    /// The section out of `R^{source_degree}`; needs `δ ∉ I_{source_degree+1}`.
    pub fn new(n: usize, source_degree: u32, delta: Rational) -> Result<Self> {
        let k = source_degree + 1;
        let sc = StructureConstants::new(n, delta.clone());
        let b = (1..=k).map(|l| coeff_b(k, l, &sc)).collect::<Result<_>>()?;
        Ok(Section {
            n,
            source_degree,
            delta,
            b,
        })
    }

    pub fn source_degree(&self) -> u32 {
        self.source_degree
    }

    pub fn apply(&self, u: &Symbol) -> Result<Symbol> {
        check_input(u, self.n, &self.delta, self.source_degree)?;
        let mut acc = Poly::zero(self.n);
        let mut contracted = u.clone();
        for (l, b) in (1..).zip(&self.b) {
            if l > 1 {
                contracted = i_alpha(&contracted);
            }
            if contracted.is_zero() {
                break;
            }
            acc.add_scaled(x_pow(&contracted, l).poly(), &-b);
        }
        Ok(u.with_poly(acc))
    }
}

fn degree_of(u: &Symbol) -> Result<u32> {
    u.homogeneous_degree()?.ok_or(Error::UndeterminedDegree)
}

/// Applies `p_k` with `k` read off the (nonzero, homogeneous) input.
pub fn projector_p(k: u32, u: &Symbol) -> Result<Symbol> {
    Projector::new(u.n(), k, u.weight().clone())?.apply(u)
}

/// Applies `s_{k−1}` to `u ∈ R^{k−1}`.
pub fn section_s(k_minus_1: u32, u: &Symbol) -> Result<Symbol> {
    Section::new(u.n(), k_minus_1, u.weight().clone())?.apply(u)
}

/// Components `(l, u_l)` with `u_l ∈ R^{k−l} ∩ ker i(α)` and
/// `Σ_l s^l(u_l)` equal to the decomposed symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    pub n: usize,
    pub delta: Rational,
    pub k: u32,
    pub components: Vec<(u32, Symbol)>,
}

fn check_regular_up_to(k: u32, n: usize, delta: &Rational) -> Result<()> {
    (1..=k).try_for_each(|j| check_regular(j, n, delta))
}

/// Splits `u ∈ R^k` by repeatedly projecting onto the kernel and peeling
/// off the remainder with `i(α)`.
pub fn decompose(u: &Symbol) -> Result<DecompositionResult> {
    let k = degree_of(u)?;
    decompose_at(u, k)
}

/// As [`decompose`], with the fiber degree given (needed for the zero symbol).
pub fn decompose_at(u: &Symbol, k: u32) -> Result<DecompositionResult> {
    let n = u.n();
    let delta = u.weight().clone();
    check_input(u, n, &delta, k)?;
    check_regular_up_to(k, n, &delta)?;
    let mut components = Vec::with_capacity(k as usize + 1);
    let mut current = u.clone();
    for l in 0..=k {
        let degree = k - l;
        let kernel_part = Projector::new(n, degree, delta.clone())?.apply(&current)?;
        let rest = current.try_sub(&kernel_part)?;
        components.push((l, kernel_part));
        current = i_alpha(&rest);
    }
    debug_assert!(current.is_zero());
    Ok(DecompositionResult {
        n,
        delta,
        k,
        components,
    })
}

/// `Σ_l s^l(u_l)`, recomputing every section from scratch.
pub fn reconstruct(d: &DecompositionResult) -> Result<Symbol> {
    check_regular_up_to(d.k, d.n, &d.delta)?;
    let sections: Vec<Section> = (0..d.k)
        .map(|j| Section::new(d.n, j, d.delta.clone()))
        .collect::<Result<_>>()?;
    let mut acc = Symbol::zero(d.n, d.delta.clone(), Grading::R);
    for (l, u) in &d.components {
        if *l > d.k {
            return Err(Error::Precondition(format!("component index {l} exceeds k = {}", d.k)));
        }
        let mut v = u.clone();
        for s in &sections[(d.k - l) as usize..] {
            v = s.apply(&v)?;
        }
        acc = acc.try_add(&v)?;
    }
    Ok(acc)
}

/// A filter `F^{k,l} = R^k ∩ ker i(α)^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiltrationLevel {
    pub k: u32,
    pub l: u32,
}

impl FiltrationLevel {
    pub fn contains(&self, u: &Symbol) -> bool {
        match u.homogeneous_degree() {
            Ok(None) => true,
            Ok(Some(d)) if d == self.k => i_pow(u, self.l).is_zero(),
            _ => false,
        }
    }
}

/// Least `l` with `i(α)^l(u) = 0`; at most `k+1` on `R^k`.
pub fn filtration_level(u: &Symbol) -> Result<u32> {
    let k = match u.homogeneous_degree()? {
        None => return Ok(0),
        Some(k) => k,
    };
    let mut cur = u.clone();
    for l in 1..=k + 1 {
        cur = i_alpha(&cur);
        if cur.is_zero() {
            return Ok(l);
        }
    }
    unreachable!("i(α)^(k+1) vanishes on fiber degree k")
}

/// Representative-level form of `X̃ ∘ ĩ(α) = r(l−1, k−l+1) Id` on
/// `F^{k,l}/F^{k,l−1}`: checks that
/// `i(α)^{l−1}(X(i(α)u) − r(l−1, k−l+1) u) = 0` for `u ∈ F^{k,l}`.
pub fn graded_inverse_check(u: &Symbol, l: u32) -> Result<bool> {
    u.expect_grading(Grading::R)?;
    let k = match u.homogeneous_degree()? {
        None => return Ok(true),
        Some(k) => k,
    };
    if l < 1 || l > k + 1 {
        return Err(Error::Precondition(format!(
            "filtration index l={l} outside 1..={}",
            k + 1
        )));
    }
    if !i_pow(u, l).is_zero() {
        return Err(Error::Precondition(format!("symbol is not in F^({k},{l})")));
    }
    let sc = StructureConstants::new(u.n(), u.weight().clone());
    let r = sc.r(l - 1, k + 1 - l);
    let xi = big_x(&i_alpha(u))?;
    let diff = if xi.is_zero() {
        u.scale(&-r)
    } else {
        xi.try_sub(&u.scale(&r))?
    };
    Ok(i_pow(&diff, l - 1).is_zero())
}

/// Dimension bookkeeping for `F^{k,l} = F^{k,l−1} ⊕ X^{l−1}(F^{k−l+1,1})`
/// over the invariant slices of offset ≤ `max_offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingRanks {
    pub k: u32,
    pub l: u32,
    pub max_offset: u32,
    pub dim_filter: usize,
    pub dim_previous: usize,
    pub dim_lifted: usize,
    pub dim_sum: usize,
    pub lifted_inside_filter: bool,
}

impl SplittingRanks {
    /// Direct sum: dimensions add up and the two pieces fill the filter.
    pub fn is_direct_sum(&self) -> bool {
        self.lifted_inside_filter
            && self.dim_sum == self.dim_previous + self.dim_lifted
            && self.dim_sum == self.dim_filter
    }
}

/// Computes [`SplittingRanks`] for `2 ≤ l ≤ k+1` at weight `δ`.
pub fn splitting_ranks(n: usize, k: u32, l: u32, delta: &Rational, max_offset: u32) -> Result<SplittingRanks> {
    if l < 2 || l > k + 1 {
        return Err(Error::Precondition(format!(
            "splitting needs 2 <= l <= k+1, got k={k}, l={l}"
        )));
    }
    let source_degree = k + 1 - l;
    let mut out = SplittingRanks {
        k,
        l,
        max_offset,
        dim_filter: 0,
        dim_previous: 0,
        dim_lifted: 0,
        dim_sum: 0,
        lifted_inside_filter: true,
    };
    for offset in 0..=max_offset {
        let blocks = slices::slice_blocks(n, k, offset);
        let source_blocks = slices::slice_blocks(n, source_degree, offset);
        for (charges, monos) in &blocks {
            let basis = slices::basis_symbols(n, delta, monos);
            let filter = slices::kernel_of(&basis, |s| i_pow(s, l));
            let previous = slices::kernel_of(&basis, |s| i_pow(s, l - 1));
            let lifted: Vec<Symbol> = match source_blocks.get(charges) {
                Some(src) => {
                    let src_basis = slices::basis_symbols(n, delta, src);
                    slices::kernel_of(&src_basis, i_alpha)
                        .iter()
                        .map(|w| x_pow(w, l - 1))
                        .collect()
                }
                None => Vec::new(),
            };
            out.lifted_inside_filter &= lifted.iter().all(|v| i_pow(v, l).is_zero());
            let lifted_polys: Vec<Poly> = lifted.iter().map(|s| s.poly().clone()).collect();
            let lifted_rank = crate::linalg::rank(&lifted_polys);
            let mut all: Vec<Poly> = previous.iter().map(|s| s.poly().clone()).collect();
            all.extend(lifted_polys);
            out.dim_filter += filter.len();
            out.dim_previous += previous.len();
            out.dim_lifted += lifted_rank;
            out.dim_sum += crate::linalg::rank(&all);
        }
        // source blocks with charges absent from the target contribute
        // lifts that must vanish; X^{l−1} cannot map them anywhere else
        for (charges, src) in &source_blocks {
            if blocks.contains_key(charges) {
                continue;
            }
            let src_basis = slices::basis_symbols(n, delta, src);
            for w in slices::kernel_of(&src_basis, i_alpha) {
                if !x_pow(&w, l - 1).is_zero() {
                    out.lifted_inside_filter = false;
                }
            }
        }
    }
    Ok(out)
}

/// Rank of `i(α) : R^k → R^{k−1}` against the dimension of the target, on
/// the slices of offset ≤ `max_offset`. Equal numbers witness surjectivity;
/// no weight enters the computation.
pub fn contraction_surjectivity(n: usize, k: u32, max_offset: u32) -> Result<(usize, usize)> {
    if k < 1 {
        return Err(Error::Precondition("need k >= 1".into()));
    }
    let delta = Rational::zero();
    let mut rank = 0;
    let mut target = 0;
    for offset in 0..=max_offset {
        let src = slices::slice_blocks(n, k, offset);
        let dst = slices::slice_blocks(n, k - 1, offset);
        target += dst.values().map(Vec::len).sum::<usize>();
        for monos in src.values() {
            let imgs: Vec<Poly> = slices::basis_symbols(n, &delta, monos)
                .iter()
                .map(|s| i_alpha(s).into_poly())
                .collect();
            rank += crate::linalg::rank(&imgs);
        }
    }
    Ok((rank, target))
}

/// `c(l, k−l) X^l(u)`, the closed form of `s^l` on `R^{k−l} ∩ ker i(α)`.
pub fn scaled_power_of_x(u: &Symbol, l: u32) -> Result<Symbol> {
    let m = degree_of(u)?;
    let sc = StructureConstants::new(u.n(), u.weight().clone());
    let c = coeff_c(l, m, &sc)?;
    Ok(x_pow(u, l).scale(&c))
}

/// `s^l(u)` by composing sections.
pub fn section_power(u: &Symbol, l: u32) -> Result<Symbol> {
    let m = degree_of(u)?;
    let mut v = u.clone();
    for j in m..m + l {
        v = Section::new(u.n(), j, u.weight().clone())?.apply(&v)?;
    }
    Ok(v)
}
