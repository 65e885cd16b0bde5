use polyaut::*;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -2i64..=2)
        .prop_map(|(a, b, c)| &Scalar::from_ratio(a, b) + &(&Scalar::from_int(c) * &Scalar::i()))
}

fn poly(n: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), scalar()), 0..5).prop_map(
        move |terms| {
            terms.into_iter().fold(Polynomial::zero(n), |acc, (e, c)| {
                &acc + &Polynomial::monomial(Monomial::new(e), c)
            })
        },
    )
}

fn map(n: usize, deg: u32) -> impl Strategy<Value = PolyMap> {
    prop::collection::vec(poly(n, deg), n).prop_map(|c| PolyMap::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_distributes(p in poly(2, 3), q in poly(2, 3), r in poly(2, 2)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn degree_of_product_adds(p in poly(3, 3), q in poly(3, 3)) {
        prop_assert_eq!((&p * &q).degree(), p.degree() + q.degree());
    }

    #[test]
    fn polynomials_print_then_parse(p in poly(3, 4)) {
        prop_assert_eq!(parse_poly(&p.to_string(), 3).unwrap(), p);
    }

    #[test]
    fn maps_print_then_parse(f in map(2, 3)) {
        prop_assert_eq!(parse_map(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn composition_is_associative(f in map(2, 2), g in map(2, 2), h in map(2, 1)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_is_neutral(f in map(3, 2)) {
        let id = PolyMap::identity(3);
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        prop_assert_eq!(id.compose(&f).unwrap(), f);
    }

    #[test]
    fn derivations_obey_leibniz(h in prop::collection::vec(poly(2, 2), 2), p in poly(2, 3), q in poly(2, 3)) {
        let d = Derivation::new(h).unwrap();
        let lhs = d.apply(&(&p * &q)).unwrap();
        let rhs = &(&d.apply(&p).unwrap() * &q) + &(&p * &d.apply(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tame_words_invert(seed in any::<u64>(), n in 1usize..=3, len in 0usize..=4) {
        let w = random_tame(n, len, 2, seed);
        let a = w.eval().unwrap();
        prop_assert!(a.fwd().compose(a.inv()).unwrap().is_identity());
        prop_assert!(a.inv().compose(a.fwd()).unwrap().is_identity());
        prop_assert_eq!(parse_word(&w.to_string(), n).unwrap(), w);
    }

    #[test]
    fn series_inverse_matches_word_inverse(seed in any::<u64>(), len in 0usize..=4) {
        let w = random_tame(2, len, 3, seed);
        let a = verify_automorphism(&w.eval_map()).unwrap();
        prop_assert_eq!(a.inv(), &w.inverse().eval_map());
        prop_assert!(a.satisfies_gabber_bound());
    }

    #[test]
    fn plane_factorization_round_trips(seed in any::<u64>(), len in 1usize..=5) {
        let a = random_tame(2, len, 3, seed).eval().unwrap();
        let fz = jvk_factor(&a).unwrap();
        prop_assert_eq!(&fz.word.eval_map(), a.fwd());
        prop_assert!(fz.degree_trace.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn characters_are_multiplicative(
        a in prop::collection::vec(-4i64..=4, 3),
        b in prop::collection::vec(-4i64..=4, 3),
        t in prop::collection::vec((1i64..=3, 1i64..=3), 3),
    ) {
        let d = DiagonalElement::new(t.iter().map(|&(x, y)| Scalar::from_ratio(x, y)).collect()).unwrap();
        let (la, lb) = (Character::new(a), Character::new(b));
        let lhs = eval_character(&(&la + &lb), &d).unwrap();
        let rhs = &eval_character(&la, &d).unwrap() * &eval_character(&lb, &d).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classification_round_trips(axis in 0usize..3, g in prop::collection::vec(0u32..=3, 3), c in scalar()) {
        prop_assume!(!c.is_zero());
        let mut gamma = g;
        gamma[axis] = 0;
        let d = Derivation::monomial(axis, &gamma, c.clone());
        let form = classify_dn_normalized(&d).unwrap();
        prop_assert_eq!((form.axis, form.gamma.clone(), form.c.clone()), (axis, gamma, c));
        prop_assert!(is_in_xu(&form.character()));
    }
}
