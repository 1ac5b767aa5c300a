use proptest::prelude::*;
use varcomplex_core::gauge::{canonical_trace_word, word_degree};
use varcomplex_core::hodge::{expand_with_table, star};
use varcomplex_core::testing::FormGen;
use varcomplex_core::*;

fn sign(odd: bool) -> Coeff {
    Coeff::sign(odd)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differentials_square_to_zero(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = FormGen::new(seed, n).with_stars(true);
        let a = g.form();
        prop_assert!(vertical_diff(&vertical_diff(&a)).is_zero());
        prop_assert!(horizontal_diff(&horizontal_diff(&a)).is_zero());
        prop_assert!(total_diff(&total_diff(&a)).is_zero());
        let anti = horizontal_diff(&vertical_diff(&a)).add(&vertical_diff(&horizontal_diff(&a))).unwrap();
        prop_assert!(anti.is_zero());
    }

    #[test]
    fn differentials_shift_bidegree(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = FormGen::new(seed, n).with_stars(true);
        let (p, q) = g.bidegree();
        let a = g.homogeneous(p, q);
        prop_assert!(vertical_diff(&a).has_bidegree(Bidegree::new(p + 1, q)));
        prop_assert!(horizontal_diff(&a).has_bidegree(Bidegree::new(p, q + 1)));
    }

    #[test]
    fn partial_lie_derivatives_sum_to_total(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = FormGen::new(seed, n);
        let x = g.killing(false);
        let a = g.form();
        let sum = lie_vertical(&x, &a).unwrap().add(&lie_horizontal(&x, &a).unwrap()).unwrap();
        prop_assert_eq!(sum, lie_total(&x, &a).unwrap());
    }

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = FormGen::new(seed, n).with_stars(true);
        let (p1, q1) = g.bidegree();
        let (p2, q2) = g.bidegree();
        let a = g.homogeneous(p1, q1);
        let b = g.homogeneous(p2, q2);
        let s = sign(((p1 + q1) * (p2 + q2)) % 2 == 1);
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale_coeff(&s));
    }

    #[test]
    fn table_star_obeys_degree_rule(seed in any::<u64>()) {
        let mut g = FormGen::new(seed, 2);
        let (p, q) = g.bidegree();
        let a = g.homogeneous(p, q);
        let s = star(&a, &HodgeMode::Table(HodgeTable::minkowski2d())).unwrap();
        prop_assert!(s.has_bidegree(Bidegree::new(p, 2 - q)));
    }

    #[test]
    fn star_is_linear(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = FormGen::new(seed, n);
        let a = g.form();
        let b = g.form();
        let f = g.scalar();
        let mode = HodgeMode::Abstract(n);
        let lhs = star(&a.scale(&f).add(&b).unwrap(), &mode).unwrap();
        let rhs = star(&a, &mode).unwrap().scale(&f).add(&star(&b, &mode).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn abstract_star_expands_to_table_star(seed in any::<u64>()) {
        let mut g = FormGen::new(seed, 2);
        let a = g.form();
        let b = g.form();
        let t = HodgeTable::minkowski2d();
        let abs = b.wedge(&star(&a, &HodgeMode::Abstract(2)).unwrap()).unwrap();
        let tab = b.wedge(&star(&a, &HodgeMode::Table(t.clone())).unwrap()).unwrap();
        prop_assert_eq!(expand_with_table(&abs, &t).unwrap(), tab);
    }

    #[test]
    fn trace_representative_is_rotation_invariant(seed in any::<u64>(), len in 1usize..=5) {
        let mut g = FormGen::new(seed, 4);
        let w = g.word(len);
        let base = canonical_trace_word(4, &w);
        for k in 1..w.len() {
            let mut r = w[k..].to_vec();
            r.extend_from_slice(&w[..k]);
            let flip = (word_degree(&w[..k], 4) * word_degree(&w[k..], 4)) % 2 == 1;
            let rotated = canonical_trace_word(4, &r).map(|(cw, s)| (cw, s ^ flip));
            prop_assert_eq!(&rotated, &base);
        }
    }
}
