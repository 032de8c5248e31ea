//! A second, deliberately naive implementation of `i(α)`, `X` and the
//! projector, written against plain exponent maps, used to cross-check the
//! library and to recompute the worked examples.

use std::collections::BTreeMap;

use contactsym::decomposition::{decompose, projector_p, reconstruct, section_s};
use contactsym::operators::{big_x, i_alpha};
use contactsym::random::random_symbol;
use contactsym::{int, rat, Grading, Monomial, Poly, Rational, Symbol};

type Dense = BTreeMap<Vec<u16>, Rational>;

struct Oracle {
    n: usize,
}

impl Oracle {
    fn q(&self, i: usize) -> usize {
        i
    }
    fn p(&self, i: usize) -> usize {
        self.n + i
    }
    fn t(&self) -> usize {
        2 * self.n
    }
    fn xi(&self, j: usize) -> usize {
        2 * self.n + 1 + j
    }
    fn vars(&self) -> usize {
        2 * (2 * self.n + 1)
    }

    fn add(a: &mut Dense, e: Vec<u16>, c: Rational) {
        let entry = a.entry(e.clone()).or_insert_with(|| int(0));
        *entry += c;
        if entry == &int(0) {
            a.remove(&e);
        }
    }

    /// `c · x_mul · ∂_dv f`, with either part optional.
    fn term_op(out: &mut Dense, f: &Dense, dv: Option<usize>, x_mul: &[usize], c: &Rational) {
        for (e, a) in f {
            let mut e = e.clone();
            let mut coef = a * c;
            if let Some(v) = dv {
                if e[v] == 0 {
                    continue;
                }
                coef *= int(e[v] as i64);
                e[v] -= 1;
            }
            for &m in x_mul {
                e[m] += 1;
            }
            Self::add(out, e, coef);
        }
    }

    fn i_alpha(&self, f: &Dense) -> Dense {
        let mut out = Dense::new();
        let half = rat(1, 2);
        for i in 0..self.n {
            Self::term_op(&mut out, f, Some(self.xi(self.q(i))), &[self.p(i)], &half);
            Self::term_op(&mut out, f, Some(self.xi(self.p(i))), &[self.q(i)], &-&half);
        }
        Self::term_op(&mut out, f, Some(self.xi(self.t())), &[], &-&half);
        out
    }

    /// `X` on a fiber-degree-`k` element of `R^k_δ`.
    fn big_x(&self, f: &Dense, k: u32, delta: &Rational) -> Dense {
        let mut out = Dense::new();
        let one = int(1);
        let xt = self.xi(self.t());
        for i in 0..self.n {
            let (q, p) = (self.q(i), self.p(i));
            Self::term_op(&mut out, f, Some(p), &[self.xi(q)], &one);
            Self::term_op(&mut out, f, Some(q), &[self.xi(p)], &-&one);
            Self::term_op(&mut out, f, Some(q), &[xt, q], &one);
            Self::term_op(&mut out, f, Some(p), &[xt, p], &one);
            Self::term_op(&mut out, f, Some(self.t()), &[q, self.xi(q)], &-&one);
            Self::term_op(&mut out, f, Some(self.t()), &[p, self.xi(p)], &-&one);
        }
        let a = int(2 * (self.n as i64 + 1)) * delta + int(k as i64);
        Self::term_op(&mut out, f, None, &[xt], &a);
        out
    }

    fn r(&self, l: u32, k: u32, delta: &Rational) -> Rational {
        let inner = int(2 * (self.n as i64 + 1)) * delta + int(2 * k as i64 + l as i64 - 1);
        -(int(l as i64) * inner) / int(2)
    }

    fn projector(&self, f: &Dense, k: u32, delta: &Rational) -> Dense {
        let mut out = f.clone();
        for l in 1..=k {
            let mut prod = int(1);
            for j in 1..=l {
                prod *= -self.r(j, k - j, delta);
            }
            let b = prod.recip();
            let mut g = f.clone();
            for _ in 0..l {
                g = self.i_alpha(&g);
            }
            for j in 0..l {
                g = self.big_x(&g, k - l + j, delta);
            }
            for (e, c) in g {
                Self::add(&mut out, e, c * &b);
            }
        }
        out
    }

    fn dense(&self, p: &Poly) -> Dense {
        p.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect()
    }

    fn to_poly(&self, f: &Dense) -> Poly {
        Poly::from_terms(self.n, f.iter().map(|(e, c)| (Monomial::from_exponents(e), c.clone())))
    }

    fn exps(&self, vars: &[usize]) -> Vec<u16> {
        let mut e = vec![0u16; self.vars()];
        for &v in vars {
            e[v] += 1;
        }
        e
    }

    fn monomial(&self, vars: &[usize]) -> Dense {
        Dense::from([(self.exps(vars), int(1))])
    }
}

fn r_symbol(p: Poly, delta: Rational) -> Symbol {
    Symbol::new(p, delta, Grading::R).unwrap()
}

#[test]
fn worked_values_recomputed() {
    let o = Oracle { n: 1 };
    let d = int(1);
    let xt = o.monomial(&[o.xi(o.t())]);
    assert_eq!(o.i_alpha(&xt), Dense::from([(vec![0; 6], rat(-1, 2))]));
    assert!(o.projector(&xt, 1, &d).is_empty());

    // p_1(ξ_q) = (5/4)(ξ_q + p ξ_t)
    let xq = o.monomial(&[o.xi(o.q(0))]);
    let got = o.projector(&xq, 1, &d);
    let mut want = Dense::new();
    Oracle::add(&mut want, o.exps(&[o.xi(o.q(0))]), rat(5, 4));
    Oracle::add(&mut want, o.exps(&[o.p(0), o.xi(o.t())]), rat(5, 4));
    assert_eq!(got, want);
    let lib = projector_p(1, &r_symbol(o.to_poly(&xq), d.clone())).unwrap();
    assert_eq!(o.dense(lib.poly()), want);

    // X(1) = 4ξ_t at δ = 1; s_0(1) = −2ξ_t
    let one = o.monomial(&[]);
    assert_eq!(o.big_x(&one, 0, &d), Dense::from([(o.exps(&[o.xi(o.t())]), int(4))]));
    let s = section_s(0, &r_symbol(Poly::one(1), d.clone())).unwrap();
    assert_eq!(o.dense(s.poly()), Dense::from([(o.exps(&[o.xi(o.t())]), int(-2))]));

    // decompose(ξ_t) = (0, −½)
    let dec = decompose(&r_symbol(o.to_poly(&xt), d.clone())).unwrap();
    assert!(dec.components[0].1.is_zero());
    assert_eq!(dec.components[1].1.poly(), &Poly::constant(1, rat(-1, 2)));
    assert_eq!(reconstruct(&dec).unwrap().poly(), &o.to_poly(&xt));

    // r(1,1) = −3, r(2,0) = −5 at n = 1, δ = 1
    assert_eq!(o.r(1, 1, &d), int(-3));
    assert_eq!(o.r(2, 0, &d), int(-5));
}

#[test]
fn library_operators_match_the_oracle() {
    let deltas = [int(1), rat(1, 2), rat(-1, 3), rat(7, 5)];
    for n in 1..=2 {
        let o = Oracle { n };
        for k in 0..=4u32 {
            for (s, d) in deltas.iter().enumerate() {
                for trial in 0..5u64 {
                    let u = random_symbol(trial * 31 + s as u64, n, k, d, 3);
                    let f = o.dense(u.poly());
                    assert_eq!(o.dense(i_alpha(&u).poly()), o.i_alpha(&f), "i(α), n={n} k={k}");
                    assert_eq!(o.dense(big_x(&u).unwrap().poly()), o.big_x(&f, k, d), "X, n={n} k={k}");
                    if k >= 1 && !contactsym::decomposition::singular_report(k, n, d).singular {
                        assert_eq!(
                            o.dense(projector_p(k, &u).unwrap().poly()),
                            o.projector(&f, k, d),
                            "p_k, n={n} k={k} δ={d}"
                        );
                    }
                }
            }
        }
    }
}
