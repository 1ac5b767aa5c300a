#![allow(dead_code)]

use varcomplex_core::algebra::FieldSymbol;
use varcomplex_core::fieldtheory::LagrangianSystem;
use varcomplex_core::hodge::star;
use varcomplex_core::*;

pub fn field(name: &str, index: &[Direction]) -> ScalarExpr {
    ScalarExpr::field(name, index)
}

pub fn c(name: &str) -> ScalarExpr {
    ScalarExpr::named_constant(name)
}

pub fn half() -> Coeff {
    Coeff::ratio(1, 2)
}

pub fn scalar(n: usize, f: ScalarExpr) -> Form {
    Form::scalar(n, f)
}

pub fn del(n: usize, name: &str) -> Form {
    Form::contact(n, JetCoordinate::base(name)).unwrap()
}

pub fn kg_fields() -> Fields {
    let mut fields = Fields::new();
    fields.insert(FieldSymbol::complex("phi", "phibar"));
    fields.insert(FieldSymbol::complex("phibar", "phi"));
    fields
}

/// `L = ½ dφ̄∧⋆dφ − ⋆(½μ²φφ̄)`, `θ = ½(δφ∧⋆dφ̄ + δφ̄∧⋆dφ)`.
pub fn klein_gordon(mode: HodgeMode) -> LagrangianSystem {
    let n = mode.dim();
    let phi = scalar(n, field("phi", &[]));
    let phibar = scalar(n, field("phibar", &[]));
    let d_phi = horizontal_diff(&phi);
    let d_phibar = horizontal_diff(&phibar);
    let mass = c("mu").pow(2).mul(&field("phi", &[])).mul(&field("phibar", &[]));
    let l = d_phibar
        .wedge(&star(&d_phi, &mode).unwrap())
        .unwrap()
        .sub(&star(&scalar(n, mass), &mode).unwrap())
        .unwrap()
        .scale_coeff(&half());
    let theta = del(n, "phi")
        .wedge(&star(&d_phibar, &mode).unwrap())
        .unwrap()
        .add(&del(n, "phibar").wedge(&star(&d_phi, &mode).unwrap()).unwrap())
        .unwrap()
        .scale_coeff(&half());
    LagrangianSystem::new("klein-gordon", mode, kg_fields(), l, theta).unwrap()
}

/// Constant translation with components `a[μ]`.
pub fn translation(a: &[ScalarExpr]) -> KillingField {
    let n = a.len();
    let mut x = KillingField::new("translation", n);
    for (mu, v) in a.iter().enumerate() {
        x = x.with_horizontal(mu as Direction, v.clone()).unwrap();
    }
    for name in ["phi", "phibar"] {
        let mut q = ScalarExpr::zero();
        for (mu, v) in a.iter().enumerate() {
            q = q.sub(&v.mul(&field(name, &[mu as Direction])));
        }
        x = x.with_vertical(name, q);
    }
    x
}

/// Phase rotation `φ ↦ e^{iα}φ`.
pub fn u1(n: usize) -> KillingField {
    KillingField::new("u1", n)
        .with_vertical("phi", c("alpha").mul(&field("phi", &[])).scale(&Coeff::i()))
        .with_conjugates(&kg_fields())
        .unwrap()
}
