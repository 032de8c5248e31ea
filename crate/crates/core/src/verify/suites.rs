use std::collections::BTreeMap;
use std::sync::OnceLock;

use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Cell, CheckRecord, Failure, Outcome, Suite, SuiteConfig};
use crate::contact::{
    contact_vector_field, contact_weight, hamiltonian_density, is_contact, lagrange_bracket, sl_generators,
    sp_generators, ContactForm,
};
use crate::decomposition::{
    coeff_b, contraction_surjectivity, decompose_at, filtration_level, graded_inverse_check, reconstruct,
    scaled_power_of_x, section_power, singular_report, singular_set, splitting_ranks, FiltrationLevel, Projector,
    Section,
};
use crate::error::Error;
use crate::exactpoly::{int, rat, Monomial, Poly, Rational, Vars};
use crate::operators::{big_x, contract_alpha, fiber_euler, i_alpha, op_h, operator_d, StructureConstants};
use crate::random::{admissible_monomials, random_coefficient, random_density, random_symbol_in, rng_for};
use crate::slices;
use crate::symbols::{lie_derivative_density, lie_derivative_symbol, Grading, PolyVectorField, Symbol};

/// Degree bound for random densities generating contact fields.
const DENSITY_DEGREE: u32 = 4;

/// Shared, lazily filled tables: monomial pools for random symbols and
/// bases of `ker i(α)` on the invariant slices.
pub(crate) struct Context<'a> {
    pub cfg: &'a SuiteConfig,
    pools: BTreeMap<(usize, u32), OnceLock<Vec<Monomial>>>,
    kernels: BTreeMap<(usize, u32), OnceLock<Vec<Poly>>>,
}

impl<'a> Context<'a> {
    pub(crate) fn new(cfg: &'a SuiteConfig) -> Self {
        let mut pools = BTreeMap::new();
        let mut kernels = BTreeMap::new();
        for &n in &cfg.n_values {
            for k in 0..=cfg.k_max + 1 {
                pools.insert((n, k), OnceLock::new());
                kernels.insert((n, k), OnceLock::new());
            }
        }
        Context { cfg, pools, kernels }
    }

    fn pool(&self, n: usize, k: u32) -> &[Monomial] {
        self.pools[&(n, k)].get_or_init(|| admissible_monomials(n, k, self.cfg.base_degree))
    }

    fn kernel_basis(&self, n: usize, k: u32) -> &[Poly] {
        self.kernels[&(n, k)].get_or_init(|| {
            let zero = Rational::zero();
            let mut out = Vec::new();
            for offset in 0..=self.cfg.base_degree {
                for monos in slices::slice_blocks(n, k, offset).values() {
                    let basis = slices::basis_symbols(n, &zero, monos);
                    out.extend(slices::kernel_of(&basis, i_alpha).into_iter().map(Symbol::into_poly));
                }
            }
            out
        })
    }

    fn symbol(&self, rng: &mut ChaCha8Rng, n: usize, k: u32, delta: &Rational) -> Symbol {
        random_symbol_in(rng, n, delta, self.pool(n, k))
    }

    /// A random element of `R^k_δ ∩ ker i(α)` in the slices.
    fn kernel_symbol(&self, rng: &mut ChaCha8Rng, n: usize, k: u32, delta: &Rational) -> Symbol {
        let basis = self.kernel_basis(n, k);
        let mut p = Poly::zero(n);
        let picks = rng.gen_range(1..=4.min(basis.len().max(1)));
        for b in basis.choose_multiple(rng, picks) {
            let c = loop {
                let c = random_coefficient(rng);
                if !c.is_zero() {
                    break c;
                }
            };
            p.add_scaled(b, &c);
        }
        Symbol::new(p, delta.clone(), Grading::R).expect("n >= 1")
    }

    fn rng(&self, cell: &Cell, id: &str) -> ChaCha8Rng {
        rng_for(self.cfg.seed, &format!("{}/{id}", cell.key()))
    }
}

pub(crate) fn run_cell(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    match cell.suite {
        Suite::Algebra => algebra(ctx, cell),
        Suite::Oracle => oracle(ctx, cell),
        Suite::Representation => representation(ctx, cell),
        Suite::Sl2 => sl2(ctx, cell),
        Suite::Powers => powers(ctx, cell),
        Suite::Invariance => invariance(ctx, cell),
        Suite::Projector => projector(ctx, cell),
        Suite::Section => section(ctx, cell),
        Suite::Singular => singular(ctx, cell),
        Suite::Decomposition => decomposition(ctx, cell),
        Suite::Filtration => filtration(ctx, cell),
        Suite::Ovsienko => ovsienko(ctx, cell),
    }
}

fn x_pow(u: &Symbol, e: u32) -> Result<Symbol, Error> {
    let mut out = u.clone();
    for _ in 0..e {
        out = big_x(&out)?;
    }
    Ok(out)
}

fn i_pow(u: &Symbol, e: u32) -> Symbol {
    let mut out = u.clone();
    for _ in 0..e {
        out = i_alpha(&out);
    }
    out
}

fn ensure(ok: bool, detail: impl FnOnce() -> String, u: &Symbol) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::on(detail(), u))
    }
}

fn cell_k(cell: &Cell) -> u32 {
    cell.k.expect("cell has a fiber degree")
}

fn cell_delta(cell: &Cell) -> &Rational {
    cell.delta.as_ref().expect("cell has a weight")
}

fn is_singular_up_to(k: u32, n: usize, delta: &Rational) -> Option<u32> {
    (1..=k).find(|&j| singular_report(j, n, delta).singular)
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, d: u32) -> PolyVectorField {
    let m = Vars::new(n).base_dim();
    let comps = (0..m)
        .map(|_| {
            if rng.gen_bool(0.25) {
                Poly::zero(n)
            } else {
                random_density(rng, n, d)
            }
        })
        .collect();
    PolyVectorField::new(n, comps).expect("base-only components")
}

fn algebra(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let n = cell.n;
    let mut out = Vec::new();
    out.push(cell.run("sp-generators", 1, &[], || {
        let sp = sp_generators(n)?;
        let expected = (n + 1) * (2 * n + 3);
        if sp.len() != expected || sp.expected_rank != expected {
            return Err(Failure::new(format!("{} generators, expected {expected}", sp.len())));
        }
        if sp.rank() != expected {
            return Err(Failure::new(format!("rank {} < {expected}", sp.rank())));
        }
        for (z, label) in sp.elements.iter().zip(&sp.labels) {
            if !is_contact(z).0 {
                return Err(Failure::new(format!("{label} is not contact")));
            }
        }
        let span = sp.span();
        for (i, a) in sp.elements.iter().enumerate() {
            for b in &sp.elements[i + 1..] {
                let c = a.bracket(b)?;
                if !span.contains(&c.to_symbol().into_poly()) {
                    return Err(Failure::new(format!("[{a}, {b}] leaves the span")));
                }
            }
        }
        Ok(Some(format!(
            "{expected} generators, rank {expected}, closed under brackets"
        )))
    }));
    out.push(cell.run("sp-in-sl", 1, &[], || {
        let sl = sl_generators(n)?;
        let m = 2 * n + 2;
        if sl.rank() != m * m - 1 {
            return Err(Failure::new(format!("sl rank {} != {}", sl.rank(), m * m - 1)));
        }
        let span = sl.span();
        let sp = sp_generators(n)?;
        for (z, label) in sp.elements.iter().zip(&sp.labels) {
            if !span.contains(&z.to_symbol().into_poly()) {
                return Err(Failure::new(format!("{label} is not in the sl span")));
            }
        }
        Ok(Some(format!("sl rank {}", m * m - 1)))
    }));
    let trials = ctx.cfg.trials;
    let mut rng = ctx.rng(cell, "contact-fields");
    out.push(cell.run("contact-fields", trials, &[], || {
        for _ in 0..trials {
            let f = random_density(&mut rng, n, DENSITY_DEGREE);
            let z = contact_vector_field(&f)?;
            if !is_contact(&z).0 {
                let s = Symbol::new(f, contact_weight(n), Grading::S)?;
                return Err(Failure::on("X(f) is not a contact field", &s));
            }
        }
        Ok(None)
    }));
    out
}

fn oracle(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let n = cell.n;
    let v = Vars::new(n);
    let trials = ctx.cfg.trials;
    let deltas = &ctx.cfg.deltas;
    let mut out = Vec::new();
    let mut rng = ctx.rng(cell, "hamiltonian-oracle");
    out.push(cell.run("hamiltonian-oracle", trials, &[], || {
        for t in 0..trials {
            let f = random_density(&mut rng, n, ctx.cfg.base_degree.max(1));
            let d = &deltas[t % deltas.len()];
            let h = hamiltonian_density(&f, d)?;
            for g in [Grading::S, Grading::R] {
                let u = Symbol::new(f.clone(), d.clone(), g)?;
                let x = big_x(&u)?;
                ensure(x.poly() == h.poly(), || format!("X ≠ hamiltonian in {g} grading"), &u)?;
            }
            let u = Symbol::new(f.clone(), d.clone(), Grading::S)?;
            ensure(big_x(&u)? == h, || "weights of X and hamiltonian differ".into(), &u)?;
        }
        Ok(None)
    }));
    let mut rng = ctx.rng(cell, "bracket-oracle");
    out.push(cell.run("bracket-oracle", trials, &[], || {
        for t in 0..trials {
            let f = random_density(&mut rng, n, ctx.cfg.base_degree.max(1));
            let d = &deltas[t % deltas.len()];
            let h = hamiltonian_density(&f, d)?;
            // X(f) is the part of {f, g} linear in the first derivatives of g
            let mut extracted = Poly::zero(n);
            for j in 0..v.base_dim() {
                let (b, w) = lagrange_bracket(&f, d, &Poly::var(n, j), &Rational::zero())?;
                if &w != h.weight() {
                    return Err(Failure::new(format!("bracket weight {w} vs {}", h.weight())));
                }
                extracted = &extracted + &b.mul_var(v.xi(j));
            }
            let u = Symbol::new(f, d.clone(), Grading::S)?;
            ensure(&extracted == h.poly(), || "bracket extraction ≠ hamiltonian".into(), &u)?;
        }
        Ok(None)
    }));
    out
}

fn representation(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let n = cell.n;
    let trials = ctx.cfg.trials;
    let deltas = &ctx.cfg.deltas;
    let mut rng = ctx.rng(cell, "lie-representation");
    vec![cell.run("lie-representation", trials, &[], || {
        for t in 0..trials {
            let z = random_field(&mut rng, n, 2);
            let w = random_field(&mut rng, n, 2);
            let zw = z.bracket(&w)?;
            let d = &deltas[t % deltas.len()];
            let f = random_density(&mut rng, n, ctx.cfg.base_degree);
            let lhs = &lie_derivative_density(&z, &lie_derivative_density(&w, &f, d)?, d)?
                - &lie_derivative_density(&w, &lie_derivative_density(&z, &f, d)?, d)?;
            let fs = Symbol::new(f.clone(), d.clone(), Grading::S)?;
            ensure(lhs == lie_derivative_density(&zw, &f, d)?, || "densities".into(), &fs)?;

            let k = (t as u32) % (ctx.cfg.k_max + 1);
            let u = ctx.symbol(&mut rng, n, k, d);
            let lhs = lie_derivative_symbol(&z, &lie_derivative_symbol(&w, &u)?)?
                .try_sub(&lie_derivative_symbol(&w, &lie_derivative_symbol(&z, &u)?)?)?;
            ensure(lhs == lie_derivative_symbol(&zw, &u)?, || "symbols".into(), &u)?;
        }
        Ok(None)
    })]
}

fn sl2(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let (n, k, d) = (cell.n, cell_k(cell), cell_delta(cell));
    let trials = ctx.cfg.trials;
    let v = Vars::new(n);
    let mut out = Vec::new();
    let mut rng = ctx.rng(cell, "sl2-relations");
    out.push(cell.run("sl2-relations", trials, &[], || {
        for _ in 0..trials {
            let u = ctx.symbol(&mut rng, n, k, d);
            let xu = big_x(&u)?;
            let iu = i_alpha(&u);
            let hu = op_h(&u)?;
            let ix = i_alpha(&xu).try_sub(&big_x(&iu)?)?;
            ensure(ix == hu, || "[i(α), X] ≠ H".into(), &u)?;
            let hi = op_h(&iu)?.try_sub(&i_alpha(&hu))?;
            ensure(hi == iu, || "[H, i(α)] ≠ i(α)".into(), &u)?;
            let hx = op_h(&xu)?.try_sub(&big_x(&hu)?)?;
            ensure(hx == xu.scale(&-Rational::one()), || "[H, X] ≠ −X".into(), &u)?;
        }
        Ok(None)
    }));
    let mut rng = ctx.rng(cell, "contraction-commutators");
    out.push(cell.run("contraction-commutators", trials, &[], || {
        let half = rat(1, 2);
        for _ in 0..trials {
            let u = ctx.symbol(&mut rng, n, k, d);
            let p = u.poly();
            let lhs = &contract_alpha(&operator_d(p)) - &operator_d(&contract_alpha(p));
            let mut rhs = fiber_euler(p).scale(&-&half);
            rhs = &rhs - &contract_alpha(p).mul_var(v.xi_t());
            ensure(lhs == rhs, || "[i(α), D] ≠ −½E_ξ − ξ_t i(α)".into(), &u)?;
            let lhs = &contract_alpha(&p.mul_var(v.xi_t())) - &contract_alpha(p).mul_var(v.xi_t());
            ensure(lhs == p.scale(&-&half), || "[i(α), ξ_t] ≠ −½".into(), &u)?;
        }
        Ok(None)
    }));
    out
}

fn powers(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let (n, k, d) = (cell.n, cell_k(cell), cell_delta(cell));
    let trials = ctx.cfg.trials;
    let sc = StructureConstants::new(n, d.clone());
    let mut rng = ctx.rng(cell, "power-commutators");
    vec![cell.run("power-commutators", trials, &[], || {
        for _ in 0..trials {
            let u = ctx.symbol(&mut rng, n, k, d);
            ensure(i_pow(&u, k + 1).is_zero(), || "i(α)^(k+1) ≠ 0".into(), &u)?;
            for l in 1..=k + 1 {
                let lhs = i_alpha(&x_pow(&u, l)?).try_sub(&x_pow(&i_alpha(&u), l)?)?;
                let rhs = x_pow(&u, l - 1)?.scale(&sc.r(l, k));
                ensure(
                    lhs == rhs,
                    || format!("i(α)X^l − X^l i(α) ≠ r(l,k)X^(l−1) at l={l}"),
                    &u,
                )?;
                let lhs = big_x(&i_pow(&u, l))?.try_sub(&i_pow(&big_x(&u)?, l))?;
                let rhs = i_pow(&u, l - 1).scale(&-sc.r(l, k + 1 - l));
                ensure(
                    lhs == rhs,
                    || format!("X i(α)^l − i(α)^l X ≠ −r(l,k−l+1) i(α)^(l−1) at l={l}"),
                    &u,
                )?;
            }
        }
        Ok(None)
    })]
}

fn invariance(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let n = cell.n;
    let trials = ctx.cfg.trials;
    let deltas = &ctx.cfg.deltas;
    match (cell.k, &cell.delta) {
        (None, _) => {
            let mut rng = ctx.rng(cell, "alpha-invariance");
            vec![cell.run("alpha-invariance", trials, &[], || {
                for t in 0..trials {
                    let f = random_density(&mut rng, n, DENSITY_DEGREE);
                    let z = contact_vector_field(&f)?;
                    let k = (t as u32) % (ctx.cfg.k_max + 1);
                    let u = ctx.symbol(&mut rng, n, k, &deltas[t % deltas.len()]);
                    let lhs = lie_derivative_symbol(&z, &i_alpha(&u))?;
                    let rhs = i_alpha(&lie_derivative_symbol(&z, &u)?);
                    ensure(lhs == rhs, || format!("[L_X(f), i(α)] ≠ 0 for f = {f}"), &u)?;
                }
                Ok(None)
            })]
        }
        (Some(k), None) => {
            let v = Vars::new(n);
            let q1 = Poly::var(n, v.q(0));
            let z = contact_vector_field(&(&(&q1 * &q1) * &q1)).expect("base-only density");
            let mut rng = ctx.rng(cell, "x-non-invariance");
            let total = trials * deltas.len();
            vec![cell.run("x-non-invariance", total, &[], || {
                let mut nonzero = 0;
                for d in deltas {
                    for _ in 0..trials {
                        let u = ctx.symbol(&mut rng, n, k, d);
                        let c = lie_derivative_symbol(&z, &big_x(&u)?)?
                            .try_sub(&big_x(&lie_derivative_symbol(&z, &u)?)?)?;
                        if !c.is_zero() {
                            if k == 0 {
                                return Err(Failure::on("[L_X(q1³), X] ≠ 0 in fiber degree 0", &u));
                            }
                            nonzero += 1;
                        }
                    }
                }
                if k > 0 && nonzero == 0 {
                    return Err(Failure::new("[L_X(q1³), X] vanished on every sample"));
                }
                Ok(Some(format!("nonzero on {nonzero}/{total}")))
            })]
        }
        (Some(k), Some(d)) => {
            let sp = sp_generators(n).expect("n >= 1");
            let mut rng = ctx.rng(cell, "x-invariance");
            vec![cell.run("x-invariance", trials, &[], || {
                for _ in 0..trials {
                    let u = ctx.symbol(&mut rng, n, k, d);
                    let xu = big_x(&u)?;
                    for (z, label) in sp.elements.iter().zip(&sp.labels) {
                        let lhs = lie_derivative_symbol(z, &xu)?;
                        let rhs = big_x(&lie_derivative_symbol(z, &u)?)?;
                        ensure(lhs == rhs, || format!("[L_Z, X] ≠ 0 for Z = {label}"), &u)?;
                    }
                }
                Ok(Some(format!("{} generators", sp.len())))
            })]
        }
    }
}

fn singular_error_matches(r: Result<impl Sized, Error>, k: u32) -> Outcome {
    match r {
        Err(Error::SingularWeight(rep)) if rep.singular && rep.k == k => Ok(Some(rep.to_string())),
        Err(e) => Err(Failure::new(format!("unexpected error: {e}"))),
        Ok(_) => Err(Failure::new("constructor accepted a singular weight")),
    }
}

fn projector(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let n = cell.n;
    let Some(k) = cell.k else {
        if n != 1 {
            return Vec::new();
        }
        return vec![cell.run("projector-worked-values", 1, &[], || {
            let sc = StructureConstants::new(1, int(1));
            let got = (coeff_b(2, 1, &sc)?, coeff_b(2, 2, &sc)?);
            if got != (rat(1, 3), rat(1, 15)) {
                return Err(Failure::new(format!("b_(2,1), b_(2,2) = {}, {}", got.0, got.1)));
            }
            Ok(Some("b_(2,1) = 1/3, b_(2,2) = 1/15".into()))
        })];
    };
    let d = cell_delta(cell);
    if singular_report(k, n, d).singular {
        return vec![
            cell.skip("projector-laws", &[], "skipped: singular weight"),
            cell.run("projector-singular-error", 1, &[], || {
                singular_error_matches(Projector::new(n, k, d.clone()), k)
            }),
        ];
    }
    let trials = ctx.cfg.trials;
    let mut rng = ctx.rng(cell, "projector-laws");
    vec![cell.run("projector-laws", trials, &[], || {
        let p = match &ctx.cfg.corrupt_b {
            None => Projector::new(n, k, d.clone())?,
            Some(c) => {
                let mut b = Projector::new(n, k, d.clone())?.coefficients().to_vec();
                b[0] += c;
                Projector::with_coefficients(n, k, d.clone(), b)
            }
        };
        for _ in 0..trials {
            let u = ctx.symbol(&mut rng, n, k, d);
            let pu = p.apply(&u)?;
            ensure(p.apply(&pu)? == pu, || "p_k ∘ p_k ≠ p_k".into(), &u)?;
            ensure(i_alpha(&pu).is_zero(), || "i(α) ∘ p_k ≠ 0".into(), &u)?;
            let w = ctx.kernel_symbol(&mut rng, n, k, d);
            ensure(p.apply(&w)? == w, || "p_k is not the identity on ker i(α)".into(), &w)?;
        }
        Ok(None)
    })]
}

fn section(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let (n, k, d) = (cell.n, cell_k(cell), cell_delta(cell));
    if singular_report(k, n, d).singular {
        return vec![
            cell.skip("section-law", &[], "skipped: singular weight"),
            cell.run("section-singular-error", 1, &[], || {
                singular_error_matches(Section::new(n, k - 1, d.clone()), k)
            }),
        ];
    }
    let trials = ctx.cfg.trials;
    let mut rng = ctx.rng(cell, "section-law");
    vec![cell.run("section-law", trials, &[], || {
        let s = Section::new(n, k - 1, d.clone())?;
        for _ in 0..trials {
            let u = ctx.symbol(&mut rng, n, k - 1, d);
            let su = s.apply(&u)?;
            ensure(
                su.is_zero() || su.homogeneous_degree()? == Some(k),
                || "wrong degree".into(),
                &u,
            )?;
            ensure(i_alpha(&su) == u, || "i(α) ∘ s_(k−1) ≠ Id".into(), &u)?;
        }
        Ok(None)
    })]
}

fn singular(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let n = cell.n;
    let k_max = ctx.cfg.k_max;
    let mut out = Vec::new();
    out.push(cell.run("singular-sets", 1, &[], || {
        let mut listed: Vec<(u32, Vec<Rational>)> = vec![(1, vec![int(0)])];
        if n == 1 {
            listed.push((2, vec![rat(-1, 4), rat(-1, 2)]));
            listed.push((3, vec![rat(-1, 2), rat(-3, 4), int(-1)]));
        }
        for (k, want) in listed {
            let got = singular_set(k, n)?;
            if got != want {
                return Err(Failure::new(format!("I_{k} = {got:?}")));
            }
        }
        for k in 1..=k_max {
            if singular_set(k, n)?.len() != k as usize {
                return Err(Failure::new(format!("|I_{k}| ≠ {k}")));
            }
        }
        Ok(None)
    }));
    out.push(cell.run("singular-constructors", 1, &[], || {
        let mut candidates: Vec<Rational> = ctx.cfg.deltas.clone();
        for k in 1..=k_max {
            candidates.extend(singular_set(k, n)?);
        }
        candidates.sort();
        candidates.dedup();
        let mut raised = 0;
        for d in &candidates {
            for k in 1..=k_max {
                let expected = singular_set(k, n)?.contains(d);
                let p = Projector::new(n, k, d.clone());
                let s = Section::new(n, k - 1, d.clone());
                for (what, err) in [("projector", p.err()), ("section", s.err())] {
                    match (expected, err) {
                        (true, Some(Error::SingularWeight(rep))) if rep.k == k => raised += 1,
                        (false, None) => {}
                        (_, e) => {
                            return Err(Failure::new(format!(
                                "{what} at k={k}, δ={d}: expected singular={expected}, got {e:?}"
                            )))
                        }
                    }
                }
            }
        }
        Ok(Some(format!(
            "{} weights, {raised} singular-weight errors",
            candidates.len()
        )))
    }));
    out.push(cell.run("surjectivity-at-singular", k_max as usize, &[], || {
        let mut notes = Vec::new();
        for k in 1..=k_max {
            let (rank, target) = contraction_surjectivity(n, k, ctx.cfg.base_degree)?;
            if rank != target {
                return Err(Failure::new(format!("k={k}: rank {rank} < {target}")));
            }
            notes.push(format!("k={k}: {rank}"));
        }
        Ok(Some(notes.join(", ")))
    }));
    out
}

fn decomposition(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let (n, k, d) = (cell.n, cell_k(cell), cell_delta(cell));
    let ids = [
        "decomposition-round-trip",
        "decomposition-c-scalar",
        "decomposition-uniqueness",
    ];
    if let Some(j) = is_singular_up_to(k, n, d) {
        return ids
            .iter()
            .map(|id| cell.skip(id, &[], format!("skipped: singular weight (δ ∈ I_{j})")))
            .collect();
    }
    let trials = ctx.cfg.trials;
    let mut out = Vec::new();
    let mut rng = ctx.rng(cell, ids[0]);
    out.push(cell.run(ids[0], trials, &[], || {
        for _ in 0..trials {
            let u = ctx.symbol(&mut rng, n, k, d);
            let dec = decompose_at(&u, k)?;
            for (l, c) in &dec.components {
                ensure(i_alpha(c).is_zero(), || format!("component {l} not in ker i(α)"), &u)?;
                ensure(
                    c.is_zero() || c.homogeneous_degree()? == Some(k - l),
                    || format!("component {l} has the wrong degree"),
                    &u,
                )?;
            }
            ensure(reconstruct(&dec)? == u, || "reconstruct ∘ decompose ≠ Id".into(), &u)?;
        }
        Ok(None)
    }));
    let mut rng = ctx.rng(cell, ids[1]);
    out.push(cell.run(ids[1], trials, &[], || {
        for t in 0..trials {
            let l = 1 + (t as u32) % k;
            let w = ctx.kernel_symbol(&mut rng, n, k - l, d);
            if w.is_zero() {
                continue;
            }
            ensure(
                section_power(&w, l)? == scaled_power_of_x(&w, l)?,
                || format!("s^{l} ≠ c({l},{}) X^{l} on ker i(α)", k - l),
                &w,
            )?;
        }
        Ok(None)
    }));
    let mut rng = ctx.rng(cell, ids[2]);
    out.push(cell.run(ids[2], trials, &[], || {
        let p = Projector::new(n, k, d.clone())?;
        let s = Section::new(n, k - 1, d.clone())?;
        for _ in 0..trials {
            let w = ctx.kernel_symbol(&mut rng, n, k, d);
            let v = ctx.symbol(&mut rng, n, k - 1, d);
            let u = w.try_add(&s.apply(&v)?)?;
            ensure(p.apply(&u)? == w, || "p_k(w + s(v)) ≠ w".into(), &u)?;
            ensure(i_alpha(&u) == v, || "i(α)(w + s(v)) ≠ v".into(), &u)?;
        }
        Ok(None)
    }));
    out
}

fn filtration(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let (n, k, d) = (cell.n, cell_k(cell), cell_delta(cell));
    let trials = ctx.cfg.trials;
    let sc = StructureConstants::new(n, d.clone());
    let mut out = Vec::new();
    let mut rng = ctx.rng(cell, "filtration-members");
    out.push(cell.run("filtration-members", trials, &[], || {
        for _ in 0..trials {
            // u_l = X^{l−1}(w_l) + u_{l−1} with i(α) w_l = 0 lies in F^{k,l}
            let mut u = Symbol::zero(n, d.clone(), Grading::R);
            for l in 1..=k + 1 {
                let w = ctx.kernel_symbol(&mut rng, n, k + 1 - l, d);
                u = u.try_add(&x_pow(&w, l - 1)?)?;
                ensure(
                    FiltrationLevel { k, l }.contains(&u),
                    || format!("not in F^({k},{l})"),
                    &u,
                )?;
                ensure(filtration_level(&u)? <= l, || "filtration level too high".into(), &u)?;
                if k >= 1 {
                    let lower = FiltrationLevel { k: k - 1, l: l - 1 };
                    ensure(
                        lower.contains(&i_alpha(&u)),
                        || format!("i(α) u ∉ F^({},{})", k - 1, l - 1),
                        &u,
                    )?;
                }
                let upper = FiltrationLevel { k: k + 1, l: l + 1 };
                ensure(
                    upper.contains(&big_x(&u)?),
                    || format!("X u ∉ F^({},{})", k + 1, l + 1),
                    &u,
                )?;
                ensure(
                    graded_inverse_check(&u, l)?,
                    || format!("graded identity fails at l={l}"),
                    &u,
                )?;
            }
        }
        Ok(None)
    }));
    for l in 2..=k + 1 {
        let extra = [("l", l.to_string())];
        let m = k + 1 - l;
        let nonvanishing = (1..l).all(|j| !sc.r(j, m).is_zero());
        if !nonvanishing {
            out.push(cell.skip("filtration-splitting", &extra, "skipped: some r(j, k−l+1) vanishes"));
            continue;
        }
        out.push(cell.run("filtration-splitting", 1, &extra, || {
            let r = splitting_ranks(n, k, l, d, ctx.cfg.base_degree)?;
            let detail = format!(
                "dim F^(k,l) = {} = {} + {} (offset ≤ {})",
                r.dim_filter, r.dim_previous, r.dim_lifted, r.max_offset
            );
            if r.is_direct_sum() {
                Ok(Some(detail))
            } else {
                Err(Failure::new(format!("{detail}; sum {}; {r:?}", r.dim_sum)))
            }
        }));
    }
    out
}

fn ovsienko(ctx: &Context, cell: &Cell) -> Vec<CheckRecord> {
    let n = cell.n;
    let trials = ctx.cfg.trials;
    let alpha = ContactForm::standard(n).expect("n >= 1");
    let mut rng = ctx.rng(cell, "ovsienko-splitting");
    vec![cell.run("ovsienko-splitting", trials, &[], || {
        for _ in 0..trials {
            let z = random_field(&mut rng, n, ctx.cfg.base_degree);
            let u_s = z.to_symbol();
            let u = u_s.to_r_grading_at(1);
            let dec = decompose_at(&u, 1)?;
            let (u0, v) = (&dec.components[0].1, &dec.components[1].1);
            ensure(i_alpha(u0).is_zero(), || "kernel part has i(α) ≠ 0".into(), &u_s)?;
            let tangent = PolyVectorField::from_symbol(&u0.from_r_grading_at(1))?;
            ensure(alpha.evaluate(&tangent).is_zero(), || "α(u_0) ≠ 0".into(), &u_s)?;
            let s = Section::new(n, 0, u.weight().clone())?.apply(v)?;
            let field = PolyVectorField::from_symbol(&s.from_r_grading_at(1))?;
            ensure(is_contact(&field).0, || "s_0(v) is not a contact field".into(), &u_s)?;
            ensure(u0.try_add(&s)? == u, || "u_0 + s_0(v) ≠ u".into(), &u_s)?;
        }
        Ok(Some(format!("R-weight {}", contact_weight(n))))
    })]
}
