//! Bigraded exterior algebra on field space × spacetime in contact coordinates.
//!
//! A [`Form`] is a sum of terms `coeff · g₁ ∧ … ∧ g_k` whose generators are
//! kept in one global order: horizontal `dx^μ` first, then abstract Hodge
//! atoms `⋆(dx^I)`, then vertical contact forms `δu_I`. Every reordering
//! transposition is folded into the coefficient as a sign, so two forms are
//! equal exactly when their term maps are equal.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{Direction, JetCoordinate, ScalarExpr};
use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// `(p, q)`: `p` vertical (field-space) factors, `q` horizontal ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub fn new(p: usize, q: usize) -> Self {
        Bidegree { p, q }
    }

    pub fn total(self) -> usize {
        self.p + self.q
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A strictly increasing list of directions naming `dx^{μ₁} ∧ … ∧ dx^{μ_q}`.
pub type HorizontalMonomial = Vec<Direction>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `dx^μ`, bidegree (0,1).
    Horizontal(Direction),
    /// `⋆(dx^I)` in abstract Hodge mode, bidegree (0, n − |I|).
    Star(HorizontalMonomial),
    /// The contact form `δu_I`, bidegree (1,0).
    Vertical(JetCoordinate),
}

impl Generator {
    pub fn bidegree(&self, dim: usize) -> Bidegree {
        match self {
            Generator::Horizontal(_) => Bidegree::new(0, 1),
            Generator::Star(h) => Bidegree::new(0, dim.saturating_sub(h.len())),
            Generator::Vertical(_) => Bidegree::new(1, 0),
        }
    }

    pub fn degree(&self, dim: usize) -> usize {
        self.bidegree(dim).total()
    }
}

/// Sorts `gens` into canonical order. Returns the sign of the permutation
/// (`true` = odd) or `None` when the product vanishes.
pub(crate) fn canonicalize(dim: usize, gens: &mut Vec<Generator>) -> Option<bool> {
    let mut negative = false;
    // insertion sort, tracking graded transposition signs
    for i in 1..gens.len() {
        let mut j = i;
        while j > 0 && gens[j - 1] > gens[j] {
            if gens[j - 1].degree(dim) % 2 == 1 && gens[j].degree(dim) % 2 == 1 {
                negative = !negative;
            }
            gens.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in gens.windows(2) {
        if w[0] == w[1] && w[0].degree(dim) % 2 == 1 {
            return None;
        }
    }
    let horizontal: usize = gens.iter().map(|g| g.bidegree(dim).q).sum();
    if horizontal > dim {
        return None;
    }
    if orient_star_pair(dim, gens) {
        // rebuilt block is already ordered except for the star's slot, and
        // every crossing there involves an even-degree atom
        gens.sort();
    }
    Some(negative)
}

/// `dx^H ∧ ⋆dx^K = dx^K ∧ ⋆dx^H` for |H| = |K|: both sides are the metric
/// pairing times the volume form. The orientation with the smaller starred
/// monomial is canonical. Applies when exactly one atom of positive degree
/// is present. Returns whether the term was rewritten.
fn orient_star_pair(dim: usize, gens: &mut Vec<Generator>) -> bool {
    let mut star_at = None;
    for (i, g) in gens.iter().enumerate() {
        if let Generator::Star(k) = g {
            if k.len() < dim {
                if star_at.is_some() {
                    return false;
                }
                star_at = Some(i);
            }
        }
    }
    let Some(s) = star_at else { return false };
    let Generator::Star(k) = gens[s].clone() else { unreachable!() };
    let h: Vec<Direction> = gens
        .iter()
        .filter_map(|g| match g {
            Generator::Horizontal(d) => Some(*d),
            _ => None,
        })
        .collect();
    if h.len() != k.len() || h >= k {
        return false;
    }
    let rest: Vec<Generator> = gens
        .iter()
        .enumerate()
        .filter(|(i, g)| *i != s && !matches!(g, Generator::Horizontal(_)))
        .map(|(_, g)| g.clone())
        .collect();
    let mut rebuilt: Vec<Generator> = k.iter().map(|&d| Generator::Horizontal(d)).collect();
    rebuilt.push(Generator::Star(h));
    rebuilt.extend(rest);
    *gens = rebuilt;
    true
}

/// A (possibly inhomogeneous) differential form on field space × spacetime
/// of dimension `dim`, in canonical normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<Vec<Generator>, ScalarExpr>,
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        Form {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn scalar(dim: usize, f: ScalarExpr) -> Self {
        Self::term(dim, f, Vec::new())
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, ScalarExpr::one())
    }

    /// `dx^μ`.
    pub fn dx(dim: usize, dir: Direction) -> Result<Self> {
        check_direction(dim, dir)?;
        Ok(Self::term(dim, ScalarExpr::one(), vec![Generator::Horizontal(dir)]))
    }

    /// The contact form `δu_I`.
    pub fn contact(dim: usize, u: JetCoordinate) -> Result<Self> {
        if let Some(&d) = u.index().iter().max() {
            check_direction(dim, d)?;
        }
        Ok(Self::term(dim, ScalarExpr::one(), vec![Generator::Vertical(u)]))
    }

    /// `dx^{μ₁} ∧ … ∧ dx^{μ_q}` for a list of directions in any order.
    pub fn horizontal_monomial(dim: usize, dirs: &[Direction]) -> Result<Self> {
        for &d in dirs {
            check_direction(dim, d)?;
        }
        Ok(Self::term(
            dim,
            ScalarExpr::one(),
            dirs.iter().map(|&d| Generator::Horizontal(d)).collect(),
        ))
    }

    /// `coeff · g₁ ∧ … ∧ g_k`, canonicalized.
    pub fn term(dim: usize, coeff: ScalarExpr, gens: Vec<Generator>) -> Self {
        let mut out = Form::zero(dim);
        out.push(gens, coeff);
        out
    }

    pub(crate) fn push(&mut self, mut gens: Vec<Generator>, coeff: ScalarExpr) {
        if coeff.is_zero() {
            return;
        }
        let Some(negative) = canonicalize(self.dim, &mut gens) else {
            return;
        };
        let coeff = if negative { coeff.neg() } else { coeff };
        match self.terms.entry(gens) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Generator], &ScalarExpr)> {
        self.terms.iter().map(|(g, c)| (g.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_dim(&self, other: &Form) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.push(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.scale_coeff(&Coeff::int(-1))
    }

    /// Multiplication by a scalar function.
    pub fn scale(&self, f: &ScalarExpr) -> Form {
        let mut out = Form::zero(self.dim);
        for (g, c) in &self.terms {
            out.push(g.clone(), c.mul(f));
        }
        out
    }

    pub fn scale_coeff(&self, c: &Coeff) -> Form {
        self.scale(&ScalarExpr::constant(c.clone()))
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.same_dim(other)?;
        let mut out = Form::zero(self.dim);
        for (g1, c1) in &self.terms {
            for (g2, c2) in &other.terms {
                let mut gens = g1.clone();
                gens.extend(g2.iter().cloned());
                out.push(gens, c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Sum of `terms` over a common dimension.
    pub fn sum<'a>(dim: usize, forms: impl IntoIterator<Item = &'a Form>) -> Result<Form> {
        let mut out = Form::zero(dim);
        for f in forms {
            out = out.add(f)?;
        }
        Ok(out)
    }

    pub fn term_bidegree(&self, gens: &[Generator]) -> Bidegree {
        gens.iter().fold(Bidegree::default(), |acc, g| {
            let b = g.bidegree(self.dim);
            Bidegree::new(acc.p + b.p, acc.q + b.q)
        })
    }

    /// The `(p,q)` component.
    pub fn project(&self, p: usize, q: usize) -> Form {
        self.filter_terms(|gens| self.term_bidegree(gens) == Bidegree::new(p, q))
    }

    pub fn project_bidegree(&self, b: Bidegree) -> Form {
        self.project(b.p, b.q)
    }

    pub(crate) fn filter_terms(&self, keep: impl Fn(&[Generator]) -> bool) -> Form {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    /// Bidegrees present, in increasing order.
    pub fn bidegrees(&self) -> BTreeSet<Bidegree> {
        self.terms.keys().map(|g| self.term_bidegree(g)).collect()
    }

    /// The common bidegree when the form is nonzero and bihomogeneous.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let set = self.bidegrees();
        (set.len() == 1).then(|| *set.iter().next().unwrap())
    }

    /// Total degree shared by every term, if any.
    pub fn total_degree(&self) -> Option<usize> {
        let degrees: BTreeSet<usize> = self.bidegrees().iter().map(|b| b.total()).collect();
        (degrees.len() == 1).then(|| *degrees.iter().next().unwrap())
    }

    /// True when the zero form or bihomogeneous of bidegree `b`.
    pub fn has_bidegree(&self, b: Bidegree) -> bool {
        self.is_zero() || self.bidegree() == Some(b)
    }

    /// Applies `f` to every coefficient and renormalizes.
    pub fn map_coeffs(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Form {
        let mut out = Form::zero(self.dim);
        for (g, c) in &self.terms {
            out.push(g.clone(), f(c));
        }
        out
    }

    /// Applies a fallible map to every coefficient.
    pub fn try_map_coeffs(&self, f: impl Fn(&ScalarExpr) -> Result<ScalarExpr>) -> Result<Form> {
        let mut out = Form::zero(self.dim);
        for (g, c) in &self.terms {
            out.push(g.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Whether any abstract Hodge atom occurs.
    pub fn has_star_atoms(&self) -> bool {
        self.terms
            .keys()
            .any(|g| g.iter().any(|x| matches!(x, Generator::Star(_))))
    }

    /// Every contact form occurring.
    pub fn vertical_generators(&self) -> BTreeSet<JetCoordinate> {
        self.terms
            .keys()
            .flat_map(|g| g.iter())
            .filter_map(|g| match g {
                Generator::Vertical(u) => Some(u.clone()),
                _ => None,
            })
            .collect()
    }

    /// Every jet coordinate in coefficients or contact forms.
    pub fn jets(&self) -> BTreeSet<JetCoordinate> {
        let mut out = self.vertical_generators();
        for c in self.terms.values() {
            out.extend(c.jets());
        }
        out
    }
}

pub(crate) fn check_direction(dim: usize, dir: Direction) -> Result<()> {
    if (dir as usize) < dim {
        Ok(())
    } else {
        Err(Error::InvalidDirection {
            direction: dir as usize,
            dim,
        })
    }
}
