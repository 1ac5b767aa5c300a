use proptest::prelude::*;
use varcomplex_core::fieldtheory::{euler_lagrange, lagrangian_shift, LagrangianSystem};
use varcomplex_core::testing::FormGen;
use varcomplex_core::gauge::MatrixForm;
use varcomplex_core::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn total_derivative_is_a_derivation(seed in any::<u64>(), n in 1usize..=3, mu in 0u8..3) {
        let mu = mu % n as u8;
        let mut g = FormGen::new(seed, n);
        let f = g.scalar();
        let h = g.scalar();
        let lhs = f.mul(&h).total_derivative(mu);
        let rhs = f.total_derivative(mu).mul(&h).add(&f.mul(&h.total_derivative(mu)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn total_derivatives_commute(seed in any::<u64>(), n in 1usize..=3, a in 0u8..3, b in 0u8..3) {
        let (a, b) = (a % n as u8, b % n as u8);
        let f = FormGen::new(seed, n).scalar();
        prop_assert_eq!(
            f.total_derivative(a).total_derivative(b),
            f.total_derivative(b).total_derivative(a)
        );
    }

    #[test]
    fn jet_partial_of_total_derivative(seed in any::<u64>(), n in 1usize..=3, mu in 0u8..3) {
        let mu = mu % n as u8;
        let mut g = FormGen::new(seed, n);
        let f = g.scalar();
        let u = g.jet();
        let up = u.prolong(mu);
        let lhs = f.total_derivative(mu).partial_wrt_jet(&up);
        let rhs = f.partial_wrt_jet(&u).add(&f.partial_wrt_jet(&up).total_derivative(mu));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = FormGen::new(seed, n).with_stars(true);
        let f = g.scalar();
        let rebuilt = ScalarExpr::from_terms(f.terms().map(|(m, c)| (m.clone(), c.clone())));
        prop_assert_eq!(&rebuilt, &f);
        let a = g.form();
        let forward = a.terms().fold(Form::zero(n), |acc, (gens, c)| {
            acc.add(&Form::term(n, c.clone(), gens.to_vec())).unwrap()
        });
        let terms: Vec<_> = a.terms().collect();
        let backward = terms.iter().rev().fold(Form::zero(n), |acc, (gens, c)| {
            acc.add(&Form::term(n, (*c).clone(), gens.to_vec())).unwrap()
        });
        prop_assert_eq!(&forward, &a);
        prop_assert_eq!(&backward, &a);
    }

    #[test]
    fn wedge_is_associative(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = FormGen::new(seed, n).with_stars(true);
        let (a, b, c) = (g.form(), g.form(), g.form());
        prop_assert_eq!(
            a.wedge(&b).unwrap().wedge(&c).unwrap(),
            a.wedge(&b.wedge(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn projection_is_idempotent_and_linear(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = FormGen::new(seed, n).with_stars(true);
        let a = g.form().add(&g.form()).unwrap();
        let b = g.form();
        let (p, q) = g.bidegree();
        let pa = a.project(p, q);
        prop_assert_eq!(pa.project(p, q), pa.clone());
        prop_assert_eq!(a.add(&b).unwrap().project(p, q), pa.add(&b.project(p, q)).unwrap());
        let total = a
            .bidegrees()
            .into_iter()
            .fold(Form::zero(n), |acc, bd| acc.add(&a.project_bidegree(bd)).unwrap());
        prop_assert_eq!(total, a);
    }

    #[test]
    fn boundary_shift_preserves_euler_lagrange(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = FormGen::new(seed, n);
        let l = g.homogeneous(0, n);
        let theta = g.homogeneous(1, n - 1);
        let sys = LagrangianSystem::new("random", HodgeMode::Abstract(n), FormGen::fields(), l, theta).unwrap();
        let lambda = g.homogeneous(0, n - 1);
        let shifted = lagrangian_shift(&sys, &lambda).unwrap();
        prop_assert_eq!(euler_lagrange(&shifted), euler_lagrange(&sys));
    }

    #[test]
    fn matrix_differentials_square_to_zero(seed in prop_oneof![Just(8238645933944009533u64), any::<u64>()], n in 2usize..=4, len in 1usize..=4) {
        let mut g = FormGen::new(seed, n);
        let m = MatrixForm::word(n, g.word(len), Coeff::one())
            .add(&MatrixForm::word(n, g.word(len), Coeff::int(-2)))
            .unwrap();
        prop_assert!(m.vertical_diff().vertical_diff().is_zero());
        prop_assert!(m.horizontal_diff().horizontal_diff().is_zero());
        prop_assert!(m.total_diff().total_diff().is_zero());
    }
}
