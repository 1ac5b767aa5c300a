//! The bicomplex differentials and contractions with Killing fields.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Direction, Fields, JetCoordinate, ScalarExpr};
use crate::error::{Error, Result};
use crate::forms::{check_direction, Form, Generator};

fn degree_before(dim: usize, gens: &[Generator]) -> usize {
    gens.iter().map(|g| g.degree(dim)).sum()
}

/// `δ`: raises bidegree `(p,q)` to `(p+1,q)`.
pub fn vertical_diff(a: &Form) -> Form {
    let dim = a.dim();
    let mut out = Form::zero(dim);
    for (gens, c) in a.terms() {
        for u in c.jets() {
            let dc = c.partial_wrt_jet(&u);
            if dc.is_zero() {
                continue;
            }
            let mut g = Vec::with_capacity(gens.len() + 1);
            g.push(Generator::Vertical(u));
            g.extend_from_slice(gens);
            out.push(g, dc);
        }
    }
    out
}

/// `d`: raises bidegree `(p,q)` to `(p,q+1)`.
pub fn horizontal_diff(a: &Form) -> Form {
    let dim = a.dim();
    let mut out = Form::zero(dim);
    for (gens, c) in a.terms() {
        for mu in 0..dim as Direction {
            let dc = c.total_derivative(mu);
            if dc.is_zero() {
                continue;
            }
            let mut g = Vec::with_capacity(gens.len() + 1);
            g.push(Generator::Horizontal(mu));
            g.extend_from_slice(gens);
            out.push(g, dc);
        }
        for (i, gen) in gens.iter().enumerate() {
            let Generator::Vertical(u) = gen else { continue };
            let sign = degree_before(dim, &gens[..i]) % 2 == 1;
            let c = if sign { c.neg() } else { c.clone() };
            for mu in 0..dim as Direction {
                let mut g = Vec::with_capacity(gens.len() + 1);
                g.extend_from_slice(&gens[..i]);
                g.push(Generator::Horizontal(mu));
                g.push(Generator::Vertical(u.prolong(mu)));
                g.extend_from_slice(&gens[i + 1..]);
                out.push(g, c.clone());
            }
        }
    }
    out
}

/// `D = δ + d`.
pub fn total_diff(a: &Form) -> Form {
    vertical_diff(a)
        .add(&horizontal_diff(a))
        .expect("differentials preserve dimension")
}

/// A vector field on field space × spacetime given by its contractions with
/// the coordinate one-forms. Contractions with `δu_I` are declared on base
/// fields and prolonged by `X⌟δu_I = D_I(X⌟δu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingField {
    pub name: String,
    dim: usize,
    horizontal: BTreeMap<Direction, ScalarExpr>,
    vertical: BTreeMap<Arc<str>, ScalarExpr>,
}

impl KillingField {
    pub fn new(name: &str, dim: usize) -> Self {
        KillingField {
            name: name.to_string(),
            dim,
            horizontal: BTreeMap::new(),
            vertical: BTreeMap::new(),
        }
    }

    /// Sets `X⌟dx^μ`.
    pub fn with_horizontal(mut self, dir: Direction, value: ScalarExpr) -> Result<Self> {
        check_direction(self.dim, dir)?;
        if value.is_zero() {
            self.horizontal.remove(&dir);
        } else {
            self.horizontal.insert(dir, value);
        }
        Ok(self)
    }

    /// Sets `X⌟δu` for the base field `u`.
    pub fn with_vertical(mut self, field: &str, value: ScalarExpr) -> Self {
        self.vertical.insert(field.into(), value);
        self
    }

    /// Fills in the contraction with each missing conjugate partner as the
    /// complex conjugate of the declared one.
    pub fn with_conjugates(mut self, fields: &Fields) -> Result<Self> {
        let declared: Vec<(Arc<str>, ScalarExpr)> =
            self.vertical.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for (name, value) in declared {
            if let Some(f) = fields.get(&name) {
                if let crate::algebra::FieldKind::Complex { conjugate } = &f.kind {
                    if !self.vertical.contains_key(conjugate) {
                        self.vertical.insert(conjugate.clone(), value.conjugate(fields)?);
                    }
                }
            }
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn horizontal(&self) -> &BTreeMap<Direction, ScalarExpr> {
        &self.horizontal
    }

    pub fn vertical(&self) -> &BTreeMap<Arc<str>, ScalarExpr> {
        &self.vertical
    }

    /// True when every horizontal contraction vanishes.
    pub fn is_vertical_only(&self) -> bool {
        self.horizontal.is_empty()
    }

    pub fn contract_horizontal(&self, dir: Direction) -> ScalarExpr {
        self.horizontal.get(&dir).cloned().unwrap_or_else(ScalarExpr::zero)
    }

    /// `X⌟δu_I`.
    pub fn contract_vertical(&self, u: &JetCoordinate) -> Result<ScalarExpr> {
        let base = self.vertical.get(&u.field).ok_or_else(|| Error::MissingContraction {
            killing: self.name.clone(),
            field: u.field.to_string(),
        })?;
        Ok(u
            .index()
            .iter()
            .fold(base.clone(), |acc, &mu| acc.total_derivative(mu)))
    }

    fn contract_generator(&self, g: &Generator) -> Result<ScalarExpr> {
        match g {
            Generator::Horizontal(mu) => Ok(self.contract_horizontal(*mu)),
            Generator::Vertical(u) => self.contract_vertical(u),
            Generator::Star(h) => {
                if self.is_vertical_only() {
                    Ok(ScalarExpr::zero())
                } else {
                    Err(Error::UnsupportedContraction(format!(
                        "`{}` has horizontal components and cannot contract the abstract Hodge atom over {:?}; use a Hodge table",
                        self.name, h
                    )))
                }
            }
        }
    }
}

/// `X⌟a`, an anti-derivation of degree −1.
pub fn interior(x: &KillingField, a: &Form) -> Result<Form> {
    if x.dim != a.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim,
            right: a.dim(),
        });
    }
    let dim = a.dim();
    let mut out = Form::zero(dim);
    for (gens, c) in a.terms() {
        let mut before = 0;
        for (i, g) in gens.iter().enumerate() {
            let deg = g.degree(dim);
            if deg % 2 == 1 {
                let v = x.contract_generator(g)?;
                if !v.is_zero() {
                    let mut rest = gens.to_vec();
                    rest.remove(i);
                    let coeff = c.mul(&v);
                    out.push(rest, if before % 2 == 1 { coeff.neg() } else { coeff });
                }
            } else if deg > 0 {
                // even-degree Hodge atoms still need the contraction check
                x.contract_generator(g)?;
            }
            before += deg;
        }
    }
    Ok(out)
}

/// `𝓛ie_X a = D(X⌟a) + X⌟Da`.
pub fn lie_total(x: &KillingField, a: &Form) -> Result<Form> {
    total_diff(&interior(x, a)?).add(&interior(x, &total_diff(a))?)
}

/// `δ(X⌟a) + X⌟δa`.
pub fn lie_vertical(x: &KillingField, a: &Form) -> Result<Form> {
    vertical_diff(&interior(x, a)?).add(&interior(x, &vertical_diff(a))?)
}

/// `d(X⌟a) + X⌟da`.
pub fn lie_horizontal(x: &KillingField, a: &Form) -> Result<Form> {
    horizontal_diff(&interior(x, a)?).add(&interior(x, &horizontal_diff(a))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coeff;

    fn q(index: &[Direction]) -> ScalarExpr {
        ScalarExpr::field("q", index)
    }

    fn contact(dim: usize, f: &str, index: &[Direction]) -> Form {
        Form::contact(dim, JetCoordinate::new(f, index)).unwrap()
    }

    #[test]
    fn vertical_examples() {
        assert!(vertical_diff(&Form::scalar(1, ScalarExpr::coordinate(0))).is_zero());
        let phi = ScalarExpr::field("phi", &[]);
        let phibar = ScalarExpr::field("phibar", &[]);
        let lhs = vertical_diff(&Form::scalar(2, phi.mul(&phibar)));
        let rhs = contact(2, "phi", &[])
            .scale(&phibar)
            .add(&contact(2, "phibar", &[]).scale(&phi))
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(vertical_diff(&contact(1, "q", &[])).is_zero());
    }

    #[test]
    fn horizontal_examples() {
        let dt = Form::dx(1, 0).unwrap();
        assert_eq!(
            horizontal_diff(&contact(1, "q", &[])),
            dt.wedge(&contact(1, "q", &[0])).unwrap()
        );
        assert!(horizontal_diff(&dt).is_zero());
        let q2 = Form::scalar(1, q(&[]).pow(2));
        assert_eq!(
            horizontal_diff(&q2),
            dt.scale(&q(&[]).mul(&q(&[0])).scale(&Coeff::int(2)))
        );
    }

    #[test]
    fn total_examples() {
        let dt = Form::dx(1, 0).unwrap();
        assert_eq!(total_diff(&Form::scalar(1, ScalarExpr::coordinate(0))), dt);
        assert_eq!(
            total_diff(&Form::scalar(1, q(&[]))),
            dt.scale(&q(&[0])).add(&contact(1, "q", &[])).unwrap()
        );
    }

    #[test]
    fn contact_identity() {
        for index in [vec![], vec![0], vec![0, 1], vec![1, 1, 0]] {
            let u = JetCoordinate::new("phi", &index);
            let mut rhs = total_diff(&Form::scalar(2, ScalarExpr::jet(u.clone())));
            for mu in 0..2 {
                let term = Form::dx(2, mu).unwrap().scale(&ScalarExpr::jet(u.prolong(mu)));
                rhs = rhs.sub(&term).unwrap();
            }
            assert_eq!(Form::contact(2, u).unwrap(), rhs);
        }
    }

    #[test]
    fn interior_examples() {
        let a0 = ScalarExpr::named_constant("A0");
        let x = KillingField::new("translation", 2)
            .with_horizontal(0, a0.clone())
            .unwrap();
        assert_eq!(interior(&x, &Form::dx(2, 0).unwrap()).unwrap(), Form::scalar(2, a0));
        assert!(interior(&x, &Form::one(2)).unwrap().is_zero());

        let alpha = ScalarExpr::named_constant("alpha");
        let phi = ScalarExpr::field("phi", &[]);
        let ia_phi = alpha.mul(&phi).scale(&Coeff::i());
        let u1 = KillingField::new("u1", 2).with_vertical("phi", ia_phi.clone());
        assert_eq!(
            interior(&u1, &contact(2, "phi", &[])).unwrap(),
            Form::scalar(2, ia_phi)
        );
        assert!(matches!(
            interior(&u1, &contact(2, "psi", &[])),
            Err(Error::MissingContraction { .. })
        ));
    }

    #[test]
    fn abstract_star_contraction_rules() {
        let atom = Form::term(2, ScalarExpr::one(), vec![Generator::Star(vec![0])]);
        let vertical = KillingField::new("u1", 2).with_vertical("phi", ScalarExpr::one());
        assert!(interior(&vertical, &atom).unwrap().is_zero());
        let horizontal = KillingField::new("t", 2)
            .with_horizontal(0, ScalarExpr::one())
            .unwrap();
        assert!(matches!(
            interior(&horizontal, &atom),
            Err(Error::UnsupportedContraction(_))
        ));
    }

    #[test]
    fn u1_contraction_prolongs_diagonally() {
        let alpha = ScalarExpr::named_constant("alpha").scale(&Coeff::i());
        let x = KillingField::new("u1", 2).with_vertical("phi", alpha.mul(&ScalarExpr::field("phi", &[])));
        let u = JetCoordinate::new("phi", &[0, 1]);
        assert_eq!(
            x.contract_vertical(&u).unwrap(),
            alpha.mul(&ScalarExpr::field("phi", &[0, 1]))
        );
    }

    #[test]
    fn lie_partial_examples() {
        let alpha = ScalarExpr::named_constant("alpha").scale(&Coeff::i());
        let phi = ScalarExpr::field("phi", &[]);
        let x = KillingField::new("u1", 2).with_vertical("phi", alpha.mul(&phi));
        let f = Form::scalar(2, phi.pow(3));
        assert!(lie_horizontal(&x, &f).unwrap().is_zero());

        let y = KillingField::new("t", 2)
            .with_horizontal(0, ScalarExpr::named_constant("c"))
            .unwrap();
        let dx = Form::dx(2, 0).unwrap();
        assert!(lie_vertical(&y, &dx).unwrap().is_zero());
        let both = lie_vertical(&y, &dx).unwrap().add(&lie_horizontal(&y, &dx).unwrap()).unwrap();
        assert_eq!(both, lie_total(&y, &dx).unwrap());
    }
}
