use proptest::prelude::*;
use rand::Rng;

use pushcalc::chern::{diamond, ChernRing, KSymbol, OrientationExpr};
use pushcalc::derivation::Derivation;
use pushcalc::liealg::{construct_sign_q, point_bracket, verify_sign_axioms, EulerLattice};
use pushcalc::pushforward::{s_act, s_multiply, zj_action, Base, PushforwardClass, SElement};
use pushcalc::sample::{self, random_poly, random_poly_upto, random_s_element};
use pushcalc::{Basis, GradedPoly, Rational};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn leibniz(seed: u64, r in -3i64..=3, basis in prop::sample::select(vec![Basis::Y, Basis::Z, Basis::R])) {
        let mut rng = sample::rng(seed);
        let p = random_poly_upto(&mut rng, basis, 5, 3);
        let q = random_poly_upto(&mut rng, basis, 5, 3);
        let d = Derivation::new(r);
        let lhs = d.partial(&(&p * &q));
        let rhs = &(&d.partial(&p) * &q) + &(&p * &d.partial(&q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_kills_gamma(seed: u64, r in -3i64..=3, basis in prop::sample::select(vec![Basis::Y, Basis::Z, Basis::R])) {
        let mut rng = sample::rng(seed);
        let p = random_poly_upto(&mut rng, basis, 6, 3);
        let d = Derivation::new(r);
        prop_assert!(d.partial(&d.gamma(&p)).is_zero());
    }

    #[test]
    fn partial_does_not_depend_on_generators(seed: u64, r in -3i64..=3, w in 0i64..=7) {
        let mut rng = sample::rng(seed);
        let p = random_poly(&mut rng, Basis::Y, w, 3);
        let d = Derivation::new(r);
        let via_z = d.partial(&p.to_basis(Basis::Z).unwrap()).to_basis(Basis::Y).unwrap();
        prop_assert_eq!(&via_z, &d.partial(&p));
        prop_assert_eq!(p.to_basis(Basis::Z).unwrap().to_basis(Basis::Y).unwrap(), p);
    }

    #[test]
    fn rational_json_roundtrip(n in -1000i64..1000, m in 1i64..1000) {
        let q = Rational::new(n, m).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), q);
    }

    #[test]
    fn poly_json_roundtrip(seed: u64, basis in prop::sample::select(vec![Basis::Y, Basis::Z, Basis::R])) {
        let p = random_poly_upto(&mut sample::rng(seed), basis, 6, 4);
        let s = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<GradedPoly>(&s).unwrap(), p);
    }

    #[test]
    fn whitney_sum(rank_a in -2i64..=3, rank_b in -2i64..=3, wa in -2i64..=2, wb in -2i64..=2) {
        let ring = ChernRing::new(
            vec!["ξ".into()],
            vec![KSymbol { name: "A".into(), rank: rank_a }, KSymbol { name: "B".into(), rank: rank_b }],
            5,
        );
        let a = OrientationExpr::twisted(0, 0, wa);
        let b = OrientationExpr::twisted(1, 0, wb);
        let sum = ring.total_chern(&a.clone().plus(&b)).unwrap();
        let prod = ring.mul(&ring.total_chern(&a).unwrap(), &ring.total_chern(&b).unwrap());
        prop_assert_eq!(sum, prod);
    }

    #[test]
    fn diamond_squares(k in 0u32..=8, c in -5i64..=5) {
        let ring = ChernRing::single(1, 10);
        let a = ring.mul(&ring.pow(&ring.xi(0), k), &ring.chern_symbol(0, 1).scale(&Rational::from(c)));
        let twice = diamond(1, &diamond(1, &a, 0), 0);
        prop_assert_eq!(twice, diamond(2, &a, 0).scale(&Rational::from(2)));
    }

    #[test]
    fn pe_is_linear_over_the_base(rank in -2i64..=3, k in 0u32..=3, a in 1i64..=3, e in 1u32..=2) {
        let ring = ChernRing::single(rank, 16);
        let o = OrientationExpr::untwisted(0);
        let beta = ring.pow(&ring.chern_symbol(0, a), e);
        let alpha = &ring.pow(&ring.xi(0), k) + &ring.xi(0);
        let lhs = ring.pe_trivial(&ring.mul(&beta, &alpha), &o, 0).unwrap();
        let rhs = ring.mul(&beta, &ring.pe_trivial(&alpha, &o, 0).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn point_bracket_is_graded_antisymmetric(seed: u64, n in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let l = EulerLattice::random(&mut rng, n, 2);
        let s = construct_sign_q(&l);
        let v = |rng: &mut rand_chacha::ChaCha8Rng| (0..n).map(|_| rng.gen_range(-2i64..=2)).collect::<Vec<_>>();
        for _ in 0..20 {
            let (a, b) = (v(&mut rng), v(&mut rng));
            let parity = l.chi(&a, &a) * l.chi(&b, &b);
            let sgn = if parity.rem_euclid(2) == 0 { -1 } else { 1 };
            let ab = point_bracket(&a, &b, &l, &s).unwrap();
            let ba = point_bracket(&b, &a, &l, &s).unwrap();
            prop_assert_eq!(ab, &ba * &Rational::from(sgn));
        }
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn constructed_signs_satisfy_axioms(seed: u64, n in 1usize..=3) {
        let l = EulerLattice::random(&mut sample::rng(seed), n, 3);
        let rep = verify_sign_axioms(&construct_sign_q(&l), &l, 1).unwrap();
        prop_assert!(rep.pass, "{:?}", rep.failures);
    }

    #[test]
    fn t_z_commutator(seed: u64, r in -2i64..=2, j in 1usize..=3) {
        let mut rng = sample::rng(seed);
        let k = 2 * rng.gen_range(-1i64..=2);
        if let Some(e) = sample::random_kernel_class(&mut rng, k, r, 6).unwrap() {
            prop_assert!(pushcalc::suite::commutator_holds(&e, j).unwrap());
        }
    }

    #[test]
    fn action_is_associative(seed: u64, r in -2i64..=2) {
        let mut rng = sample::rng(seed);
        let u = random_s_element(&mut rng, r, 2, 2, 1);
        let v = random_s_element(&mut rng, r, 2, 2, 0);
        let base = Base::natural(r).class(r, 10).unwrap();
        let lhs = s_act(&s_multiply(&u, &v).unwrap(), &base).unwrap();
        let rhs = s_act(&u, &s_act(&v, &base).unwrap()).unwrap();
        let n = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_up_to(&rhs, n));
    }

    #[test]
    fn z_action_preserves_kernel(seed: u64, r in -2i64..=2, j in 1usize..=3) {
        let mut rng = sample::rng(seed);
        if let Some(e) = sample::random_kernel_class(&mut rng, 2, r, 6).unwrap() {
            let z = zj_action(j, &e).unwrap();
            prop_assert!(z.is_kernel(), "defect at {:?}", z.kernel_defect());
        }
    }

    #[test]
    fn class_json_roundtrip(seed: u64, r in -2i64..=2) {
        let mut rng = sample::rng(seed);
        if let Some(e) = sample::random_kernel_class(&mut rng, 2, r, 4).unwrap() {
            let s = serde_json::to_string(&e).unwrap();
            prop_assert_eq!(serde_json::from_str::<PushforwardClass>(&s).unwrap(), e);
        }
        let u = random_s_element(&mut rng, r, 3, 3, 0);
        let s = serde_json::to_string(&u).unwrap();
        prop_assert_eq!(serde_json::from_str::<SElement>(&s).unwrap(), u);
    }
}

