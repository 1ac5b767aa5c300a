//! The Hodge star, either through an explicit table on horizontal basis
//! monomials or as opaque atoms `⋆(dx^I)`.
//!
//! Both modes let `⋆` pass over vertical factors:
//! `⋆(f · dx^I ∧ δu) = f · (−1)^{|I|·|δu|} δu ∧ ⋆dx^I`.

use std::collections::BTreeMap;

use crate::algebra::{Direction, ScalarExpr};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::forms::{Form, Generator, HorizontalMonomial};

/// Explicit `⋆` on all `2^n` horizontal basis monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTable {
    dim: usize,
    pub signature: String,
    entries: BTreeMap<HorizontalMonomial, (bool, HorizontalMonomial)>,
}

/// Every strictly increasing subset of `0..dim`.
pub fn basis_monomials(dim: usize) -> Vec<HorizontalMonomial> {
    let mut out: Vec<HorizontalMonomial> = (0u32..1 << dim)
        .map(|mask| (0..dim as Direction).filter(|&d| mask & (1 << d) != 0).collect())
        .collect();
    out.sort_by(|a: &HorizontalMonomial, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn normalize_monomial(dirs: &[Direction]) -> Option<(bool, HorizontalMonomial)> {
    let mut v = dirs.to_vec();
    let mut negative = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((negative, v))
    }
}

impl HodgeTable {
    /// Builds a table from `(source, negative, image)` entries, where source
    /// and image are lists of directions in any order. Fails unless every
    /// basis monomial has exactly one image of complementary degree.
    pub fn new(
        dim: usize,
        signature: &str,
        entries: impl IntoIterator<Item = (Vec<Direction>, bool, Vec<Direction>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (src, neg, img) in entries {
            if src.iter().chain(img.iter()).any(|&d| d as usize >= dim) {
                return Err(Error::IncompleteHodgeTable(format!(
                    "entry {src:?} -> {img:?} uses a direction outside dimension {dim}"
                )));
            }
            let (s_neg, src) = normalize_monomial(&src).ok_or_else(|| {
                Error::IncompleteHodgeTable(format!("source {src:?} repeats a direction"))
            })?;
            let (i_neg, img) = normalize_monomial(&img).ok_or_else(|| {
                Error::IncompleteHodgeTable(format!("image {img:?} repeats a direction"))
            })?;
            if src.len() + img.len() != dim {
                return Err(Error::IncompleteHodgeTable(format!(
                    "image of a {}-monomial must have degree {}, found {}",
                    src.len(),
                    dim - src.len(),
                    img.len()
                )));
            }
            if map.insert(src.clone(), (neg ^ s_neg ^ i_neg, img)).is_some() {
                return Err(Error::IncompleteHodgeTable(format!("duplicate entry for {src:?}")));
            }
        }
        for m in basis_monomials(dim) {
            if !map.contains_key(&m) {
                return Err(Error::IncompleteHodgeTable(format!("no entry for {m:?}")));
            }
        }
        Ok(HodgeTable {
            dim,
            signature: signature.to_string(),
            entries: map,
        })
    }

    /// Two-dimensional Minkowski space with coordinates `(t, x)`:
    /// `⋆1 = −dt∧dx`, `⋆dt = −dx`, `⋆dx = −dt`, `⋆(dt∧dx) = 1`.
    pub fn minkowski2d() -> Self {
        Self::new(
            2,
            "(-,+)",
            [
                (vec![], true, vec![0, 1]),
                (vec![0], true, vec![1]),
                (vec![1], true, vec![0]),
                (vec![0, 1], false, vec![]),
            ],
        )
        .expect("built-in table is complete")
    }

    /// The alternative sign convention `⋆dt = dx`, `⋆dx = dt` with the same
    /// entries on `1` and `dt∧dx`.
    pub fn minkowski2d_alt() -> Self {
        Self::new(
            2,
            "(-,+) alt",
            [
                (vec![], true, vec![0, 1]),
                (vec![0], false, vec![1]),
                (vec![1], false, vec![0]),
                (vec![0, 1], false, vec![]),
            ],
        )
        .expect("built-in table is complete")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `⋆dx^I` for a canonical monomial, as (negative, image).
    pub fn image(&self, m: &[Direction]) -> Option<(bool, &HorizontalMonomial)> {
        self.entries.get(m).map(|(n, i)| (*n, i))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&HorizontalMonomial, bool, &HorizontalMonomial)> {
        self.entries.iter().map(|(s, (n, i))| (s, *n, i))
    }

    /// `⋆dx^I` as a form.
    pub fn star_monomial(&self, m: &[Direction]) -> Result<Form> {
        let (neg, img) = self
            .image(m)
            .ok_or_else(|| Error::IncompleteHodgeTable(format!("no entry for {m:?}")))?;
        Ok(Form::term(
            self.dim,
            ScalarExpr::constant(Coeff::sign(neg)),
            img.iter().map(|&d| Generator::Horizontal(d)).collect(),
        ))
    }

    /// Whether `dx^H ∧ ⋆dx^K = dx^K ∧ ⋆dx^H` for all equal-degree pairs, as
    /// for the star of a symmetric metric.
    pub fn is_pairing_symmetric(&self) -> bool {
        let basis = basis_monomials(self.dim);
        for h in &basis {
            for k in basis.iter().filter(|k| k.len() == h.len()) {
                let hk = Form::horizontal_monomial(self.dim, h)
                    .and_then(|f| f.wedge(&self.star_monomial(k)?));
                let kh = Form::horizontal_monomial(self.dim, k)
                    .and_then(|f| f.wedge(&self.star_monomial(h)?));
                if hk.ok() != kh.ok() {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HodgeMode {
    Table(HodgeTable),
    Abstract(usize),
}

impl HodgeMode {
    pub fn dim(&self) -> usize {
        match self {
            HodgeMode::Table(t) => t.dim(),
            HodgeMode::Abstract(n) => *n,
        }
    }

    pub fn is_abstract(&self) -> bool {
        matches!(self, HodgeMode::Abstract(_))
    }
}

/// `⋆a`. Sends `(p,q)` terms to `(p, n−q)` terms.
pub fn star(a: &Form, mode: &HodgeMode) -> Result<Form> {
    let dim = a.dim();
    if mode.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: mode.dim(),
            right: dim,
        });
    }
    let mut out = Form::zero(dim);
    for (gens, c) in a.terms() {
        if gens.iter().any(|g| matches!(g, Generator::Star(_))) {
            return Err(Error::UnsupportedStar(
                "the star of a form that already contains a Hodge atom is not defined".into(),
            ));
        }
        let h: HorizontalMonomial = gens
            .iter()
            .filter_map(|g| match g {
                Generator::Horizontal(d) => Some(*d),
                _ => None,
            })
            .collect();
        let v: Vec<Generator> = gens
            .iter()
            .filter(|g| matches!(g, Generator::Vertical(_)))
            .cloned()
            .collect();
        let pass = (h.len() * v.len()) % 2 == 1;
        let mut c = if pass { c.neg() } else { c.clone() };
        let mut g = v;
        match mode {
            HodgeMode::Abstract(_) => g.push(Generator::Star(h)),
            HodgeMode::Table(t) => {
                let (neg, img) = t
                    .image(&h)
                    .ok_or_else(|| Error::IncompleteHodgeTable(format!("no entry for {h:?}")))?;
                if neg {
                    c = c.neg();
                }
                g.extend(img.iter().map(|&d| Generator::Horizontal(d)));
            }
        }
        out.push(g, c);
    }
    Ok(out)
}

/// The sign exponent in `α ∧ ⋆β = (−1)^e β ∧ ⋆α`, from total degrees and
/// horizontal degrees.
pub fn pairing_exponent(deg_a: usize, deg_b: usize, hdeg_a: usize, hdeg_b: usize) -> i64 {
    (deg_a * deg_b) as i64 - (hdeg_a * hdeg_b) as i64
}

/// Rewrites every `dx^H ∧ ⋆dx^K` pair to its canonical orientation. Forms
/// are kept in this normal form by construction, so this rebuilds the form
/// term by term and is idempotent.
pub fn star_pair_normalize(a: &Form) -> Form {
    let mut out = Form::zero(a.dim());
    for (gens, c) in a.terms() {
        out.push(gens.to_vec(), c.clone());
    }
    out
}

/// `δ(⋆β)` computed as `⋆(δβ)`.
pub fn star_delta_commute(beta: &Form, mode: &HodgeMode) -> Result<Form> {
    star(&crate::calculus::vertical_diff(beta), mode)
}

/// Replaces every abstract atom `⋆dx^I` by its table image in place.
pub fn expand_with_table(a: &Form, table: &HodgeTable) -> Result<Form> {
    if table.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            left: table.dim(),
            right: a.dim(),
        });
    }
    let mut out = Form::zero(a.dim());
    for (gens, c) in a.terms() {
        let mut g = Vec::with_capacity(gens.len());
        let mut negative = false;
        for gen in gens {
            match gen {
                Generator::Star(h) => {
                    let (neg, img) = table
                        .image(h)
                        .ok_or_else(|| Error::IncompleteHodgeTable(format!("no entry for {h:?}")))?;
                    negative ^= neg;
                    g.extend(img.iter().map(|&d| Generator::Horizontal(d)));
                }
                other => g.push(other.clone()),
            }
        }
        out.push(g, if negative { c.neg() } else { c.clone() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::JetCoordinate;
    use crate::calculus::vertical_diff;

    fn dx(mu: Direction) -> Form {
        Form::dx(2, mu).unwrap()
    }

    fn contact(f: &str) -> Form {
        Form::contact(2, JetCoordinate::base(f)).unwrap()
    }

    #[test]
    fn alt_table_examples() {
        let mode = HodgeMode::Table(HodgeTable::minkowski2d_alt());
        assert_eq!(star(&dx(0), &mode).unwrap(), dx(1));
        let a = contact("phi").wedge(&dx(0)).unwrap();
        assert_eq!(star(&a, &mode).unwrap(), contact("phi").wedge(&dx(1)).unwrap());
        assert_eq!(
            star(&Form::one(2), &mode).unwrap(),
            dx(0).wedge(&dx(1)).unwrap().neg()
        );
    }

    #[test]
    fn table_validation() {
        assert!(HodgeTable::new(2, "", [(vec![], false, vec![0, 1])]).is_err());
        assert!(HodgeTable::new(1, "", [(vec![], false, vec![]), (vec![0], false, vec![])]).is_err());
        let t = HodgeTable::new(1, "", [(vec![], false, vec![0]), (vec![0], true, vec![])]).unwrap();
        assert_eq!(t.image(&[0]), Some((true, &vec![])));
        assert!(HodgeTable::minkowski2d().is_pairing_symmetric());
    }

    #[test]
    fn star_of_star_is_rejected() {
        let mode = HodgeMode::Abstract(2);
        let s = star(&dx(0), &mode).unwrap();
        assert!(matches!(star(&s, &mode), Err(Error::UnsupportedStar(_))));
    }

    #[test]
    fn pair_rewrite_sign() {
        let mode = HodgeMode::Abstract(2);
        let phi = Form::scalar(2, ScalarExpr::field("phi", &[]));
        let phibar = Form::scalar(2, ScalarExpr::field("phibar", &[]));
        let d_phibar = crate::calculus::horizontal_diff(&phibar);
        let del_d_phi = vertical_diff(&crate::calculus::horizontal_diff(&phi));
        let lhs = d_phibar.wedge(&star(&del_d_phi, &mode).unwrap()).unwrap();
        let rhs = del_d_phi.wedge(&star(&d_phibar, &mode).unwrap()).unwrap();
        assert_eq!(pairing_exponent(1, 2, 1, 1), 1);
        assert_eq!(lhs, rhs.neg());
        assert_eq!(star_pair_normalize(&lhs), lhs);
    }

    #[test]
    fn delta_passes_through_star() {
        let mode = HodgeMode::Abstract(2);
        let phi = Form::scalar(2, ScalarExpr::field("phi", &[]));
        let d_phi = crate::calculus::horizontal_diff(&phi);
        assert_eq!(
            vertical_diff(&star(&d_phi, &mode).unwrap()),
            star_delta_commute(&d_phi, &mode).unwrap()
        );
        assert!(vertical_diff(&star(&Form::one(2), &mode).unwrap()).is_zero());
        let f = ScalarExpr::field("phi", &[]).pow(2);
        let lhs = vertical_diff(&star(&d_phi.scale(&f), &mode).unwrap());
        let rhs = vertical_diff(&Form::scalar(2, f.clone()))
            .wedge(&star(&d_phi, &mode).unwrap())
            .unwrap()
            .add(&star(&vertical_diff(&d_phi), &mode).unwrap().scale(&f))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansion_matches_table_star() {
        let t = HodgeTable::minkowski2d();
        let a = contact("phi").wedge(&dx(1)).unwrap().add(&Form::one(2)).unwrap();
        let abs = star(&a, &HodgeMode::Abstract(2)).unwrap();
        assert_eq!(
            expand_with_table(&abs, &t).unwrap(),
            star(&a, &HodgeMode::Table(t)).unwrap()
        );
    }
}
