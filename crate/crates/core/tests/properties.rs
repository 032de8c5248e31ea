use proptest::prelude::*;

use contactsym::contact::contact_vector_field;
use contactsym::format::{parse_symbol, serialize_symbol};
use contactsym::operators::i_alpha;
use contactsym::random::random_symbol;
use contactsym::symbols::{lie_derivative_density, lie_derivative_symbol};
use contactsym::{rat, Grading, Monomial, Poly, PolyVectorField, Rational, Symbol, Vars};

const N: usize = 1;

fn coefficient() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=3).prop_map(|(a, b)| rat(a, b))
}

/// Polynomials in all six variables of n = 1, total degree ≤ 3 per variable.
fn poly() -> impl Strategy<Value = Poly> {
    let count = Vars::new(N).count();
    prop::collection::vec((prop::collection::vec(0u16..3, count), coefficient()), 0..6)
        .prop_map(|terms| Poly::from_terms(N, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c))))
}

fn density() -> impl Strategy<Value = Poly> {
    poly().prop_map(|p| p.filter_terms(|m| m.fiber_degree() == 0))
}

fn field() -> impl Strategy<Value = PolyVectorField> {
    prop::collection::vec(density(), 3).prop_map(|c| PolyVectorField::new(N, c).unwrap())
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(coefficient(), Vars::new(N).count())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn partial_derivatives_commute(a in poly(), i in 0usize..6, j in 0usize..6) {
        prop_assert_eq!(a.diff(i).unwrap().diff(j).unwrap(), a.diff(j).unwrap().diff(i).unwrap());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), i in 0usize..6) {
        let lhs = (&a * &b).diff(i).unwrap();
        let rhs = &(&a.diff(i).unwrap() * &b) + &(&a * &b.diff(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), x in point()) {
        let (ea, eb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!((&a * &b).eval(&x).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval(&x).unwrap(), ea + eb);
    }

    #[test]
    fn lie_derivative_is_a_representation(z in field(), w in field(), f in density(), lam in coefficient()) {
        let zw = z.bracket(&w).unwrap();
        let lhs = &lie_derivative_density(&z, &lie_derivative_density(&w, &f, &lam).unwrap(), &lam).unwrap()
            - &lie_derivative_density(&w, &lie_derivative_density(&z, &f, &lam).unwrap(), &lam).unwrap();
        prop_assert_eq!(lhs, lie_derivative_density(&zw, &f, &lam).unwrap());
    }

    #[test]
    fn contraction_commutes_with_contact_fields(f in density(), seed in 0u64..1000, k in 0u32..4) {
        let z = contact_vector_field(&f).unwrap();
        let u = random_symbol(seed, N, k, &rat(1, 2), 2);
        let lhs = lie_derivative_symbol(&z, &i_alpha(&u)).unwrap();
        let rhs = i_alpha(&lie_derivative_symbol(&z, &u).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn file_format_round_trips(p in poly(), d in coefficient(), s in any::<bool>()) {
        let g = if s { Grading::S } else { Grading::R };
        let u = Symbol::new(p, d, g).unwrap();
        prop_assert_eq!(parse_symbol(&serialize_symbol(&u)).unwrap(), u);
    }
}
