//! Finite-dimensional slices of the symbol spaces that `i(α)` and `X` map
//! into each other.
//!
//! Give `q^i, p^i` weight 1, `t` weight 2, and the fiber variables the
//! opposite weights (`ξ_{q^i}, ξ_{p^i}` weight −1, `ξ_t` weight −2). Both
//! `i(α)` and `X` are homogeneous for this weight (of degree +2 and −2), and
//! both preserve the `n` charges
//! `(#q^i − #p^i) − (#ξ_{q^i} − #ξ_{p^i})`. A block of fixed fiber degree,
//! weight and charges is therefore finite and mapped to a block.
//!
//! The *offset* of a weight `w` in fiber degree `k` is `w + 2k ≥ 0`. Every
//! monomial in a slice of offset `s` has base degree at most `s`, and both
//! operators preserve the offset, so "offset ≤ B" is an invariant family of
//! slices inside the base-degree-≤ B symbols.

use std::collections::BTreeMap;

use num::One;

use crate::exactpoly::{Monomial, Poly, Rational, Vars};
use crate::linalg;
use crate::symbols::{Grading, Symbol};

/// Weight and charges of a monomial.
pub fn grading_of(vars: Vars, m: &Monomial) -> (i64, Vec<i64>) {
    let n = vars.n();
    let e = |v: usize| m.exponent(v) as i64;
    let mut w = 0;
    let mut charges = Vec::with_capacity(n);
    for i in 0..n {
        w += e(vars.q(i)) + e(vars.p(i)) - e(vars.xi_q(i)) - e(vars.xi_p(i));
        charges.push((e(vars.q(i)) - e(vars.p(i))) - (e(vars.xi_q(i)) - e(vars.xi_p(i))));
    }
    w += 2 * e(vars.t()) - 2 * e(vars.xi_t());
    (w, charges)
}

/// Distributes exponents over `slots` so that `Σ weight·e = target` and,
/// unless `total` is `u32::MAX`, `Σ e = total`.
fn compositions(
    slots: &[usize],
    total: u32,
    weights: &[u32],
    target: u32,
    base: &mut Vec<u16>,
    out: &mut Vec<Vec<u16>>,
) {
    fn rec(
        idx: usize,
        slots: &[usize],
        weights: &[u32],
        left_deg: Option<u32>,
        left_w: u32,
        cur: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
    ) {
        if idx == slots.len() {
            if left_w == 0 && left_deg.is_none_or(|d| d == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let wt = weights[idx];
        let mut e = 0u32;
        loop {
            if e * wt > left_w {
                break;
            }
            if let Some(d) = left_deg {
                if e > d {
                    break;
                }
            }
            cur[slots[idx]] = e as u16;
            rec(
                idx + 1,
                slots,
                weights,
                left_deg.map(|d| d - e),
                left_w - e * wt,
                cur,
                out,
            );
            e += 1;
        }
        cur[slots[idx]] = 0;
    }
    let left_deg = if total == u32::MAX { None } else { Some(total) };
    rec(0, slots, weights, left_deg, target, base, out);
}

/// Monomials of fiber degree `k` and weight offset `offset`, grouped into
/// blocks by charge vector.
pub fn slice_blocks(n: usize, k: u32, offset: u32) -> BTreeMap<Vec<i64>, Vec<Monomial>> {
    let vars = Vars::new(n);
    let m = vars.base_dim();
    let base_slots: Vec<usize> = (0..m).collect();
    let base_weights: Vec<u32> = (0..m).map(|j| if j == vars.t() { 2 } else { 1 }).collect();
    let fiber_slots: Vec<usize> = (0..m).map(|j| vars.xi(j)).collect();
    let fiber_weights = base_weights.clone();

    let mut out: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    // fiber weight fw ∈ [k, 2k]; base weight b = offset − 2k + fw ≥ 0
    for fw in k..=2 * k {
        let b = offset as i64 - 2 * k as i64 + fw as i64;
        if b < 0 {
            continue;
        }
        let mut fibers = Vec::new();
        let mut zero = vec![0u16; vars.count()];
        compositions(&fiber_slots, k, &fiber_weights, fw, &mut zero, &mut fibers);
        for f in fibers {
            let mut bases = Vec::new();
            let mut start = f.clone();
            compositions(&base_slots, u32::MAX, &base_weights, b as u32, &mut start, &mut bases);
            for e in bases {
                let mono = Monomial::from_exponents(&e);
                let (_, c) = grading_of(vars, &mono);
                out.entry(c).or_default().push(mono);
            }
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

pub fn basis_symbols(n: usize, delta: &Rational, monos: &[Monomial]) -> Vec<Symbol> {
    monos
        .iter()
        .map(|m| {
            Symbol::new(
                Poly::from_terms(n, [(m.clone(), Rational::one())]),
                delta.clone(),
                Grading::R,
            )
            .expect("n >= 1")
        })
        .collect()
}

/// Kernel of `op` restricted to the span of `basis`, as explicit symbols.
pub fn kernel_of(basis: &[Symbol], op: impl Fn(&Symbol) -> Symbol) -> Vec<Symbol> {
    let images: Vec<Poly> = basis.iter().map(|b| op(b).into_poly()).collect();
    linalg::kernel(&images)
        .into_iter()
        .map(|combo| {
            let mut p = Poly::zero(basis[0].n());
            for (i, c) in combo {
                p.add_scaled(basis[i].poly(), &c);
            }
            basis[0].with_poly(p)
        })
        .collect()
}
