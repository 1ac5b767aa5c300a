//! Lagrangian systems, their Euler–Lagrange and symplectic forms, momentum
//! maps and the verification identities built on them.

use std::collections::BTreeMap;

use crate::algebra::{Fields, JetCoordinate, ScalarExpr};
use crate::calculus::{horizontal_diff, interior, lie_total, total_diff, vertical_diff, KillingField};
use crate::error::{Error, Result};
use crate::forms::{Bidegree, Form};
use crate::hodge::HodgeMode;

/// A total Lagrangian `𝓛 = L + θ` with `L` of bidegree `(0,n)` and `θ` of
/// bidegree `(1,n−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianSystem {
    pub name: String,
    hodge: HodgeMode,
    fields: Fields,
    lagrangian: Form,
    theta: Form,
}

fn expect_bidegree(what: &str, f: &Form, b: Bidegree) -> Result<()> {
    if f.has_bidegree(b) {
        Ok(())
    } else {
        Err(Error::BidegreeMismatch {
            what: what.to_string(),
            expected: b.to_string(),
            found: f
                .bidegrees()
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(" + "),
        })
    }
}

impl LagrangianSystem {
    pub fn new(name: &str, hodge: HodgeMode, fields: Fields, lagrangian: Form, theta: Form) -> Result<Self> {
        let n = hodge.dim();
        for f in [&lagrangian, &theta] {
            if f.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: f.dim(),
                });
            }
        }
        if n == 0 {
            return Err(Error::Inconsistent("spacetime dimension must be positive".into()));
        }
        fields.validate()?;
        expect_bidegree("Lagrangian density", &lagrangian, Bidegree::new(0, n))?;
        expect_bidegree("variational form", &theta, Bidegree::new(1, n - 1))?;
        Ok(LagrangianSystem {
            name: name.to_string(),
            hodge,
            fields,
            lagrangian,
            theta,
        })
    }

    pub fn dim(&self) -> usize {
        self.hodge.dim()
    }

    pub fn hodge(&self) -> &HodgeMode {
        &self.hodge
    }

    pub fn fields(&self) -> &Fields {
        &self.fields
    }

    pub fn lagrangian(&self) -> &Form {
        &self.lagrangian
    }

    pub fn theta(&self) -> &Form {
        &self.theta
    }

    /// `𝓛 = L + θ`.
    pub fn total(&self) -> Form {
        self.lagrangian.add(&self.theta).expect("dimensions checked")
    }
}

/// `Ω = ω + E`, closed under `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalSymplectic {
    pub omega_total: Form,
    pub omega: Form,
    pub euler_lagrange: Form,
}

/// Outcome of an identity check: the identity holds iff the residual is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub residual: Form,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `E_𝓛 = δL + dθ`.
pub fn euler_lagrange(sys: &LagrangianSystem) -> Form {
    vertical_diff(&sys.lagrangian)
        .add(&horizontal_diff(&sys.theta))
        .expect("dimensions checked")
}

/// `ω = δθ`.
pub fn symplectic_density(sys: &LagrangianSystem) -> Form {
    vertical_diff(&sys.theta)
}

/// `Ω = D𝓛` split into its `(2,n−1)` and `(1,n)` parts.
pub fn total_symplectic(sys: &LagrangianSystem) -> Result<DynamicalSymplectic> {
    let n = sys.dim();
    let big = total_diff(&sys.total());
    let omega = big.project(2, n - 1);
    let e = big.project(1, n);
    let rest = big.sub(&omega)?.sub(&e)?;
    if !rest.is_zero() {
        return Err(Error::Inconsistent(format!(
            "D of the total Lagrangian has components outside (2,{}) and (1,{n})",
            n - 1
        )));
    }
    Ok(DynamicalSymplectic {
        omega_total: big,
        omega,
        euler_lagrange: e,
    })
}

/// `L ↦ L + dλ`, `θ ↦ θ + δλ` for `λ` of bidegree `(0,n−1)`.
pub fn lagrangian_shift(sys: &LagrangianSystem, lambda: &Form) -> Result<LagrangianSystem> {
    let n = sys.dim();
    if lambda.dim() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: lambda.dim(),
        });
    }
    expect_bidegree("shift", lambda, Bidegree::new(0, n - 1))?;
    LagrangianSystem::new(
        &sys.name,
        sys.hodge.clone(),
        sys.fields.clone(),
        sys.lagrangian.add(&horizontal_diff(lambda))?,
        sys.theta.add(&vertical_diff(lambda))?,
    )
}

/// `J_X = X⌟𝓛`.
pub fn momentum_map(sys: &LagrangianSystem, x: &KillingField) -> Result<Form> {
    interior(x, &sys.total())
}

/// `𝓛ie_X 𝓛`.
pub fn invariance_check(sys: &LagrangianSystem, x: &KillingField) -> Result<Verdict> {
    Ok(Verdict {
        residual: lie_total(x, &sys.total())?,
    })
}

/// `X⌟Ω + DJ_X`.
pub fn momentum_defining_check(sys: &LagrangianSystem, x: &KillingField) -> Result<Verdict> {
    let omega = total_symplectic(sys)?;
    let j = momentum_map(sys, x)?;
    Ok(Verdict {
        residual: interior(x, &omega.omega_total)?.add(&total_diff(&j))?,
    })
}

/// `X⌟ω + DJ_X` compared against `−X⌟E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonReport {
    /// `X⌟ω + DJ_X`.
    pub hamilton: Form,
    /// `−X⌟E`.
    pub minus_contracted_el: Form,
    /// Bigraded pieces of `hamilton`.
    pub components: BTreeMap<Bidegree, Form>,
}

impl HamiltonReport {
    pub fn holds(&self) -> bool {
        self.hamilton == self.minus_contracted_el
    }
}

pub fn hamilton_identity(sys: &LagrangianSystem, x: &KillingField) -> Result<HamiltonReport> {
    let omega = total_symplectic(sys)?;
    let j = momentum_map(sys, x)?;
    let hamilton = interior(x, &omega.omega)?.add(&total_diff(&j))?;
    let minus_contracted_el = interior(x, &omega.euler_lagrange)?.neg();
    let components = hamilton
        .bidegrees()
        .into_iter()
        .map(|b| (b, hamilton.project_bidegree(b)))
        .collect();
    Ok(HamiltonReport {
        hamilton,
        minus_contracted_el,
        components,
    })
}

/// `𝓛ie_A J_B`. Only meaningful when `A` and `B` commute.
pub fn noether_check(sys: &LagrangianSystem, a: &KillingField, b: &KillingField) -> Result<Verdict> {
    Ok(Verdict {
        residual: lie_total(a, &momentum_map(sys, b)?)?,
    })
}

fn project_signed(f: &Form, p: i64, q: i64) -> Form {
    if p < 0 || q < 0 {
        Form::zero(f.dim())
    } else {
        f.project(p as usize, q as usize)
    }
}

/// The four bigraded pieces of `X⌟Ω + Dα`, in the order
/// `(0,n)`, `(1,n−1)`, `(2,n−2)`, `(3,n−3)`.
pub fn hamiltonian_vf_components(
    omega: &DynamicalSymplectic,
    x: &KillingField,
    alpha: &Form,
) -> Result<[Form; 4]> {
    let dim = alpha.dim();
    let n = dim as i64;
    let xe = interior(x, &omega.euler_lagrange)?;
    let xw = interior(x, &omega.omega)?;
    let da = |p: i64, q: i64| horizontal_diff(&project_signed(alpha, p, q));
    let va = |p: i64, q: i64| vertical_diff(&project_signed(alpha, p, q));
    let sum = |parts: &[Form]| Form::sum(dim, parts.iter());
    Ok([
        sum(&[project_signed(&xe, 0, n), da(0, n - 1)])?,
        sum(&[
            project_signed(&xe, 1, n - 1),
            project_signed(&xw, 1, n - 1),
            da(1, n - 2),
            va(0, n - 1),
        ])?,
        sum(&[project_signed(&xw, 2, n - 2), da(2, n - 3), va(1, n - 2)])?,
        va(2, n - 3),
    ])
}

fn sub_multiset(small: &[u8], big: &[u8]) -> Option<Vec<u8>> {
    let mut rest = big.to_vec();
    for d in small {
        let pos = rest.iter().position(|x| x == d)?;
        rest.remove(pos);
    }
    Some(rest)
}

/// Substitutes equations of motion into every coefficient. A binding for
/// `u_I` also rewrites each `u_{IJ}` as `D_J` of the bound value.
pub fn on_shell_reduce(a: &Form, eqns: &BTreeMap<JetCoordinate, ScalarExpr>) -> Form {
    if eqns.is_empty() {
        return a.clone();
    }
    let reduce = |c: &ScalarExpr| -> ScalarExpr {
        let mut cur = c.clone();
        for _ in 0..16 {
            let mut bindings = BTreeMap::new();
            for u in cur.jets() {
                for (lhs, rhs) in eqns {
                    if lhs.field != u.field {
                        continue;
                    }
                    if let Some(rest) = sub_multiset(lhs.index(), u.index()) {
                        let value = rest.iter().fold(rhs.clone(), |acc, &mu| acc.total_derivative(mu));
                        bindings.insert(u.clone(), value);
                        break;
                    }
                }
            }
            if bindings.is_empty() {
                break;
            }
            let next = cur.substitute(&bindings);
            if next == cur {
                break;
            }
            cur = next;
        }
        cur
    };
    a.map_coeffs(reduce)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FuncApp, Var};
    use crate::coeff::Coeff;
    use crate::forms::Generator;

    fn mechanics(l: ScalarExpr) -> LagrangianSystem {
        let qdot = JetCoordinate::new("q", &[0]);
        let mut fields = Fields::new();
        fields.insert(crate::algebra::FieldSymbol::real("q"));
        let dt = Form::dx(1, 0).unwrap();
        let theta = Form::contact(1, JetCoordinate::base("q"))
            .unwrap()
            .scale(&l.partial_wrt_jet(&qdot));
        LagrangianSystem::new("mechanics", HodgeMode::Abstract(1), fields, dt.scale(&l), theta).unwrap()
    }

    fn symbolic_l() -> ScalarExpr {
        ScalarExpr::var(Var::Func(FuncApp::new(
            "L",
            vec![Var::jet("q", &[]), Var::jet("q", &[0]), Var::Coord(0)],
        )))
    }

    #[test]
    fn mechanics_euler_lagrange() {
        let l = symbolic_l();
        let sys = mechanics(l.clone());
        let q = JetCoordinate::base("q");
        let coeff = l
            .partial_wrt_jet(&q.prolong(0))
            .total_derivative(0)
            .sub(&l.partial_wrt_jet(&q));
        let expected = Form::dx(1, 0)
            .unwrap()
            .wedge(&Form::contact(1, q).unwrap())
            .unwrap()
            .scale(&coeff);
        assert_eq!(euler_lagrange(&sys), expected);
        let big = total_symplectic(&sys).unwrap();
        assert!(total_diff(&big.omega_total).is_zero());
    }

    #[test]
    fn free_particle_symplectic_density() {
        let qdot = ScalarExpr::field("q", &[0]);
        let sys = mechanics(qdot.pow(2).scale(&Coeff::ratio(1, 2)));
        let expected = Form::term(
            1,
            ScalarExpr::one(),
            vec![
                Generator::Vertical(JetCoordinate::new("q", &[0])),
                Generator::Vertical(JetCoordinate::base("q")),
            ],
        );
        assert_eq!(symplectic_density(&sys), expected);
        let el = euler_lagrange(&sys);
        let mut eqns = BTreeMap::new();
        eqns.insert(JetCoordinate::new("q", &[0, 0]), ScalarExpr::zero());
        assert!(on_shell_reduce(&el, &eqns).is_zero());
        assert_eq!(on_shell_reduce(&el, &BTreeMap::new()), el);
    }

    #[test]
    fn shift_by_q() {
        let sys = mechanics(symbolic_l());
        let lambda = Form::scalar(1, ScalarExpr::field("q", &[]));
        let shifted = lagrangian_shift(&sys, &lambda).unwrap();
        assert_eq!(euler_lagrange(&shifted), euler_lagrange(&sys));
        assert_eq!(
            total_symplectic(&shifted).unwrap(),
            total_symplectic(&sys).unwrap()
        );
        assert!(lagrangian_shift(&sys, &Form::dx(1, 0).unwrap()).is_err());
    }

    #[test]
    fn bidegree_validation() {
        let mut fields = Fields::new();
        fields.insert(crate::algebra::FieldSymbol::real("q"));
        let bad = LagrangianSystem::new(
            "bad",
            HodgeMode::Abstract(1),
            fields,
            Form::one(1),
            Form::zero(1),
        );
        assert!(matches!(bad, Err(Error::BidegreeMismatch { .. })));
    }

    #[test]
    fn zero_system() {
        let sys = LagrangianSystem::new("zero", HodgeMode::Abstract(2), Fields::new(), Form::zero(2), Form::zero(2))
            .unwrap();
        assert!(euler_lagrange(&sys).is_zero());
        assert!(symplectic_density(&sys).is_zero());
        let x = KillingField::new("none", 2);
        assert!(momentum_map(&sys, &x).unwrap().is_zero());
        let big = total_symplectic(&sys).unwrap();
        for c in hamiltonian_vf_components(&big, &x, &Form::zero(2)).unwrap() {
            assert!(c.is_zero());
        }
    }
}
