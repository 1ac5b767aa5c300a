use varcomplex_core::gauge::*;
use varcomplex_core::Coeff;

#[test]
fn euler_lagrange_matches_both_forms() {
    for n in 2..=5 {
        let ym = YangMills::new(n).unwrap();
        let el = ym.euler_lagrange();
        assert!(!el.is_zero(), "n = {n}");
        assert_eq!(el, ym.expected_euler_lagrange().unwrap(), "n = {n}");
        assert_eq!(el, ym.covariant_euler_lagrange().unwrap(), "n = {n}");
        assert!(ym.symplectic_density().vertical_diff().is_zero());
        assert!(ym.total_symplectic().total_diff().is_zero());
    }
}

#[test]
fn mixed_derivative_pair_cancels() {
    let ym = YangMills::new(4).unwrap();
    fn contains(w: &[MatrixAtom]) -> bool {
        w.iter().any(|a| match a {
            MatrixAtom::VarDiffConnection => true,
            MatrixAtom::Star { inner, .. } => contains(inner),
            _ => false,
        })
    }
    let has_deld = |t: &TraceForm| t.terms().any(|(w, _)| contains(w));
    assert!(has_deld(&ym.lagrangian().vertical_diff()));
    assert!(has_deld(&ym.theta().horizontal_diff()));
    assert!(!has_deld(&ym.euler_lagrange()));
}

#[test]
fn momentum_map_and_invariance() {
    for n in 2..=5 {
        let ym = YangMills::new(n).unwrap();
        let x = GaugeKilling::new();
        assert!(ym.lagrangian().interior(&x).unwrap().is_zero());
        let j = ym.momentum_map(&x).unwrap();
        assert!(!j.is_zero());
        assert_eq!(j, ym.expected_momentum_map(&x).unwrap());
        assert!(ym.invariance_residual(&x).unwrap().is_zero(), "n = {n}");
        assert!(ym.momentum_map(&GaugeKilling::zero()).unwrap().is_zero());
    }
}

#[test]
fn double_covariant_derivative_is_commutator() {
    let n = 4;
    let f = curvature(n);
    let xi = MatrixForm::gauge(n);
    let lhs = covariant_derivative(&covariant_gauge(n)).unwrap();
    let rhs = f.wedge(&xi).unwrap().sub(&xi.wedge(&f).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    let twice = GaugeKilling { scale: Coeff::int(2) };
    let ym = YangMills::new(n).unwrap();
    assert_eq!(
        ym.momentum_map(&twice).unwrap(),
        ym.momentum_map(&GaugeKilling::new()).unwrap().scale(&Coeff::int(2))
    );
}
