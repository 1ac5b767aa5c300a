//! Lie-algebra-valued forms for a matrix gauge group, the graded trace and
//! the Yang–Mills Lagrangian.
//!
//! Matrix forms are linear combinations of words in noncommuting atoms.
//! Nothing is reordered inside a word; only the trace is cyclic.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::forms::Bidegree;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatrixAtom {
    /// The connection `A`, bidegree (0,1).
    Connection,
    /// `δA`, bidegree (1,1).
    VarConnection,
    /// `dA`, bidegree (0,2).
    DiffConnection,
    /// `δdA = −dδA`, bidegree (1,2).
    VarDiffConnection,
    /// The gauge parameter `Ξ`, bidegree (0,0).
    Gauge,
    /// `dΞ`, bidegree (0,1).
    DiffGauge,
    /// `⋆w` (or `d⋆w` when `d` is set) for a star-free word `w` whose first
    /// and last atoms are not `Ξ`.
    Star { inner: Word, d: bool },
}

pub type Word = Vec<MatrixAtom>;

impl MatrixAtom {
    pub fn bidegree(&self, dim: usize) -> Bidegree {
        match self {
            MatrixAtom::Connection | MatrixAtom::DiffGauge => Bidegree::new(0, 1),
            MatrixAtom::VarConnection => Bidegree::new(1, 1),
            MatrixAtom::DiffConnection => Bidegree::new(0, 2),
            MatrixAtom::VarDiffConnection => Bidegree::new(1, 2),
            MatrixAtom::Gauge => Bidegree::new(0, 0),
            MatrixAtom::Star { inner, d } => {
                let b = word_bidegree(inner, dim);
                Bidegree::new(b.p, (dim + *d as usize).saturating_sub(b.q))
            }
        }
    }

    pub fn degree(&self, dim: usize) -> usize {
        self.bidegree(dim).total()
    }

    fn is_star(&self) -> bool {
        matches!(self, MatrixAtom::Star { .. })
    }
}

pub fn word_bidegree(w: &[MatrixAtom], dim: usize) -> Bidegree {
    w.iter().fold(Bidegree::default(), |acc, a| {
        let b = a.bidegree(dim);
        Bidegree::new(acc.p + b.p, acc.q + b.q)
    })
}

pub fn word_degree(w: &[MatrixAtom], dim: usize) -> usize {
    word_bidegree(w, dim).total()
}

fn odd(k: usize) -> bool {
    k % 2 == 1
}

/// A matrix-valued form: complex-rational combination of words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixForm {
    dim: usize,
    terms: BTreeMap<Word, Coeff>,
}

fn word_vanishes(w: &[MatrixAtom], dim: usize) -> bool {
    word_bidegree(w, dim).q > dim
        || w.iter().any(|a| matches!(a, MatrixAtom::Star { inner, .. } if word_vanishes(inner, dim)))
}

fn push_term(dim: usize, terms: &mut BTreeMap<Word, Coeff>, w: Word, c: Coeff) {
    if c.is_zero() || word_vanishes(&w, dim) {
        return;
    }
    match terms.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get() + &c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl MatrixForm {
    pub fn zero(dim: usize) -> Self {
        MatrixForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(dim: usize, w: Word, c: Coeff) -> Self {
        let mut out = Self::zero(dim);
        out.push(w, c);
        out
    }

    /// A single non-star atom.
    pub fn atom(dim: usize, a: MatrixAtom) -> Self {
        Self::word(dim, vec![a], Coeff::one())
    }

    pub fn connection(dim: usize) -> Self {
        Self::atom(dim, MatrixAtom::Connection)
    }

    pub fn var_connection(dim: usize) -> Self {
        Self::atom(dim, MatrixAtom::VarConnection)
    }

    pub fn gauge(dim: usize) -> Self {
        Self::atom(dim, MatrixAtom::Gauge)
    }

    pub fn push(&mut self, w: Word, c: Coeff) {
        push_term(self.dim, &mut self.terms, w, c);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
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

    fn same_dim(&self, other: &MatrixForm) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn add(&self, other: &MatrixForm) -> Result<MatrixForm> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.push(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MatrixForm) -> Result<MatrixForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MatrixForm {
        self.scale(&Coeff::int(-1))
    }

    pub fn scale(&self, c: &Coeff) -> MatrixForm {
        let mut out = Self::zero(self.dim);
        for (w, x) in &self.terms {
            out.push(w.clone(), x * c);
        }
        out
    }

    /// Word concatenation.
    pub fn wedge(&self, other: &MatrixForm) -> Result<MatrixForm> {
        self.same_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.push(w, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn bidegrees(&self) -> BTreeSet<Bidegree> {
        self.terms.keys().map(|w| word_bidegree(w, self.dim)).collect()
    }

    pub fn total_degree(&self) -> Option<usize> {
        let set: BTreeSet<usize> = self.bidegrees().iter().map(|b| b.total()).collect();
        (set.len() == 1).then(|| *set.iter().next().unwrap())
    }

    pub fn project(&self, p: usize, q: usize) -> MatrixForm {
        MatrixForm {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_bidegree(w, self.dim) == Bidegree::new(p, q))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies an odd derivation given on atoms, splicing each replacement
    /// into the word with the graded sign of the atoms it passes.
    fn derive(&self, on_atom: impl Fn(&MatrixAtom) -> Result<MatrixForm>) -> Result<MatrixForm> {
        let mut out = Self::zero(self.dim);
        for (w, c) in &self.terms {
            let mut before = 0;
            for (i, a) in w.iter().enumerate() {
                let replacement = on_atom(a)?;
                let sign = if odd(before) { -c.clone() } else { c.clone() };
                for (r, rc) in replacement.terms() {
                    let mut nw = Vec::with_capacity(w.len() + r.len());
                    nw.extend_from_slice(&w[..i]);
                    nw.extend(r.iter().cloned());
                    nw.extend_from_slice(&w[i + 1..]);
                    out.push(nw, &sign * rc);
                }
                before += a.degree(self.dim);
            }
        }
        Ok(out)
    }

    /// `d`.
    pub fn horizontal_diff(&self) -> MatrixForm {
        let dim = self.dim;
        self.derive(|a| {
            Ok(match a {
                MatrixAtom::Connection => MatrixForm::atom(dim, MatrixAtom::DiffConnection),
                MatrixAtom::VarConnection => {
                    MatrixForm::atom(dim, MatrixAtom::VarDiffConnection).neg()
                }
                MatrixAtom::Gauge => MatrixForm::atom(dim, MatrixAtom::DiffGauge),
                MatrixAtom::Star { inner, d: false } => MatrixForm::word(
                    dim,
                    vec![MatrixAtom::Star {
                        inner: inner.clone(),
                        d: true,
                    }],
                    Coeff::one(),
                ),
                _ => MatrixForm::zero(dim),
            })
        })
        .expect("d on atoms is total")
    }

    /// `δ`.
    pub fn vertical_diff(&self) -> MatrixForm {
        let dim = self.dim;
        self.derive(|a| {
            Ok(match a {
                MatrixAtom::Connection => MatrixForm::atom(dim, MatrixAtom::VarConnection),
                MatrixAtom::DiffConnection => MatrixForm::atom(dim, MatrixAtom::VarDiffConnection),
                MatrixAtom::Star { inner, d } => {
                    let dw = MatrixForm::word(dim, inner.clone(), Coeff::one()).vertical_diff();
                    let s = star_of(&dw, *d)?;
                    if *d {
                        s.neg()
                    } else {
                        s
                    }
                }
                _ => MatrixForm::zero(dim),
            })
        })
        .expect("δ on atoms is total")
    }

    /// `D = δ + d`.
    pub fn total_diff(&self) -> MatrixForm {
        self.vertical_diff()
            .add(&self.horizontal_diff())
            .expect("same dimension")
    }

    /// `X⌟self` for the gauge Killing field.
    pub fn interior(&self, x: &GaugeKilling) -> Result<MatrixForm> {
        let dim = self.dim;
        let nabla = covariant_gauge(dim).scale(&x.scale);
        self.derive(|a| match a {
            MatrixAtom::VarConnection => Ok(nabla.neg()),
            MatrixAtom::VarDiffConnection => Ok(nabla.horizontal_diff().neg()),
            MatrixAtom::Star { inner, d } => {
                let c = MatrixForm::word(dim, inner.clone(), Coeff::one()).interior(x)?;
                let s = star_of(&c, *d)?;
                Ok(if *d { s.neg() } else { s })
            }
            _ => Ok(MatrixForm::zero(dim)),
        })
    }

    pub fn trace(&self) -> TraceForm {
        let mut out = TraceForm::zero(self.dim);
        for (w, c) in &self.terms {
            out.push(w.clone(), c.clone());
        }
        out
    }
}

/// `⋆w` (or `d⋆w`) for a star-free word, with leading and trailing `Ξ`
/// factors moved outside.
fn star_word(dim: usize, w: &[MatrixAtom], d: bool) -> Result<MatrixForm> {
    if w.iter().any(MatrixAtom::is_star) {
        return Err(Error::UnsupportedStar(
            "the star of a word that already contains a Hodge star is not defined".into(),
        ));
    }
    let lead = w.iter().take_while(|a| **a == MatrixAtom::Gauge).count();
    let trail = if lead == w.len() {
        0
    } else {
        w.iter().rev().take_while(|a| **a == MatrixAtom::Gauge).count()
    };
    let mut word: Word = w[..lead].to_vec();
    word.push(MatrixAtom::Star {
        inner: w[lead..w.len() - trail].to_vec(),
        d: false,
    });
    word.extend_from_slice(&w[w.len() - trail..]);
    let base = MatrixForm::word(dim, word, Coeff::one());
    Ok(if d { base.horizontal_diff() } else { base })
}

fn star_of(m: &MatrixForm, d: bool) -> Result<MatrixForm> {
    let mut out = MatrixForm::zero(m.dim);
    for (w, c) in m.terms() {
        out = out.add(&star_word(m.dim, w, d)?.scale(c))?;
    }
    Ok(out)
}

/// `⋆m`, passing over field-space factors and `Ξ` at either end.
pub fn star(m: &MatrixForm) -> Result<MatrixForm> {
    star_of(m, false)
}

/// `F_A = dA + A∧A`.
pub fn curvature(dim: usize) -> MatrixForm {
    let a = MatrixForm::connection(dim);
    a.horizontal_diff().add(&a.wedge(&a).unwrap()).unwrap()
}

/// `D_Aβ = dβ + A∧β + (−1)^{#β+1} β∧A` for `β` of homogeneous degree.
pub fn covariant_derivative(beta: &MatrixForm) -> Result<MatrixForm> {
    if beta.is_zero() {
        return Ok(beta.clone());
    }
    let deg = beta
        .total_degree()
        .ok_or_else(|| Error::Inhomogeneous("covariant derivative needs a homogeneous form".into()))?;
    let a = MatrixForm::connection(beta.dim);
    let right = beta.wedge(&a)?;
    let right = if odd(deg + 1) { right.neg() } else { right };
    beta.horizontal_diff().add(&a.wedge(beta)?)?.add(&right)
}

/// `∇_AΞ = dΞ + A∧Ξ − Ξ∧A`.
pub fn covariant_gauge(dim: usize) -> MatrixForm {
    covariant_derivative(&MatrixForm::gauge(dim)).expect("Ξ is homogeneous")
}

/// The infinitesimal gauge transformation generated by `scale·Ξ`:
/// `X⌟δA = −∇_A(scale·Ξ)`; every horizontal contraction vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeKilling {
    pub scale: Coeff,
}

impl GaugeKilling {
    pub fn new() -> Self {
        GaugeKilling { scale: Coeff::one() }
    }

    pub fn zero() -> Self {
        GaugeKilling { scale: Coeff::zero() }
    }
}

impl Default for GaugeKilling {
    fn default() -> Self {
        Self::new()
    }
}

/// A scalar form obtained as the trace of a matrix form, kept as a
/// combination of canonical trace words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TraceForm {
    dim: usize,
    terms: BTreeMap<Word, Coeff>,
}

/// Canonical representative of `Tr(w)` under graded cyclic rotation and the
/// Hodge pairing swap `Tr(α∧⋆β) = ±Tr(β∧⋆α)`. Returns the representative
/// and its sign, or `None` if the trace vanishes.
pub fn canonical_trace_word(dim: usize, w: &[MatrixAtom]) -> Option<(Word, bool)> {
    if word_vanishes(w, dim) {
        return None;
    }
    let mut seen: BTreeMap<Word, bool> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec(), false);
    queue.push_back((w.to_vec(), false));
    let mut vanishes = false;
    while let Some((cur, sign)) = queue.pop_front() {
        for (next, s) in trace_moves(dim, &cur) {
            let ns = sign ^ s;
            match seen.get(&next) {
                Some(&prev) => {
                    if prev != ns {
                        vanishes = true;
                    }
                }
                None => {
                    seen.insert(next.clone(), ns);
                    queue.push_back((next, ns));
                }
            }
        }
    }
    if vanishes {
        return None;
    }
    seen.into_iter().next()
}

/// Single-step moves: every cyclic rotation, and the pairing swap when the
/// word holds exactly one star and it is not differentiated.
fn trace_moves(dim: usize, w: &[MatrixAtom]) -> Vec<(Word, bool)> {
    let mut out = Vec::new();
    for k in 1..w.len() {
        let (w1, w2) = w.split_at(k);
        let s = odd(word_degree(w1, dim) * word_degree(w2, dim));
        let mut r = w2.to_vec();
        r.extend_from_slice(w1);
        out.push((r, s));
    }
    let stars: Vec<usize> = (0..w.len()).filter(|&i| w[i].is_star()).collect();
    if let [pos] = stars[..] {
        if let MatrixAtom::Star { inner: beta, d: false } = &w[pos] {
            // rotate the star to the end: Tr(α ∧ ⋆β)
            let mut alpha = w[pos + 1..].to_vec();
            alpha.extend_from_slice(&w[..pos]);
            let rot_sign = odd(word_degree(&w[..=pos], dim) * word_degree(&w[pos + 1..], dim));
            let ba = word_bidegree(&alpha, dim);
            let bb = word_bidegree(beta, dim);
            if ba.q == bb.q {
                let e = ba.total() * bb.total() + ba.q * bb.q;
                if let Ok(star_alpha) = star_word(dim, &alpha, false) {
                    for (sw, c) in star_alpha.terms() {
                        let mut nw = beta.clone();
                        nw.extend(sw.iter().cloned());
                        out.push((nw, rot_sign ^ odd(e) ^ c.is_negative_leading()));
                    }
                }
            }
        }
    }
    out
}

impl TraceForm {
    pub fn zero(dim: usize) -> Self {
        TraceForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        if let Some((cw, negative)) = canonical_trace_word(self.dim, &w) {
            push_term(self.dim, &mut self.terms, cw, if negative { -c } else { c });
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
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

    pub fn add(&self, other: &TraceForm) -> Result<TraceForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.push(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TraceForm) -> Result<TraceForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TraceForm {
        self.scale(&Coeff::int(-1))
    }

    pub fn scale(&self, c: &Coeff) -> TraceForm {
        let mut out = Self::zero(self.dim);
        for (w, x) in &self.terms {
            out.push(w.clone(), x * c);
        }
        out
    }

    /// The words as a matrix form, before taking the trace.
    pub fn untraced(&self) -> MatrixForm {
        MatrixForm {
            dim: self.dim,
            terms: self.terms.clone(),
        }
    }

    pub fn bidegrees(&self) -> BTreeSet<Bidegree> {
        self.untraced().bidegrees()
    }

    pub fn project(&self, p: usize, q: usize) -> TraceForm {
        self.untraced().project(p, q).trace()
    }

    pub fn horizontal_diff(&self) -> TraceForm {
        self.untraced().horizontal_diff().trace()
    }

    pub fn vertical_diff(&self) -> TraceForm {
        self.untraced().vertical_diff().trace()
    }

    pub fn total_diff(&self) -> TraceForm {
        self.untraced().total_diff().trace()
    }

    pub fn interior(&self, x: &GaugeKilling) -> Result<TraceForm> {
        Ok(self.untraced().interior(x)?.trace())
    }

    /// `D(X⌟a) + X⌟Da`.
    pub fn lie_total(&self, x: &GaugeKilling) -> Result<TraceForm> {
        self.interior(x)?.total_diff().add(&self.total_diff().interior(x)?)
    }
}

/// `L = −½Tr(F∧⋆F)`, `θ = −Tr(δA∧⋆F)` in dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YangMills {
    dim: usize,
    lagrangian: TraceForm,
    theta: TraceForm,
}

impl YangMills {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Inconsistent(
                "Yang-Mills needs spacetime dimension at least 2".into(),
            ));
        }
        let f = curvature(dim);
        let star_f = star(&f)?;
        let lagrangian = f.wedge(&star_f)?.trace().scale(&Coeff::ratio(-1, 2));
        let theta = MatrixForm::var_connection(dim).wedge(&star_f)?.trace().neg();
        Ok(YangMills {
            dim,
            lagrangian,
            theta,
        })
    }

    /// A gauge theory with a caller-supplied Lagrangian and boundary form.
    pub fn from_parts(dim: usize, lagrangian: TraceForm, theta: TraceForm) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Inconsistent(
                "Yang-Mills needs spacetime dimension at least 2".into(),
            ));
        }
        for (what, f, want) in [("lagrangian", &lagrangian, Bidegree::new(0, dim)), ("theta", &theta, Bidegree::new(1, dim - 1))] {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: f.dim() });
            }
            if let Some(b) = f.bidegrees().into_iter().find(|b| *b != want) {
                return Err(Error::BidegreeMismatch {
                    what: what.into(),
                    expected: want.to_string(),
                    found: b.to_string(),
                });
            }
        }
        Ok(YangMills {
            dim,
            lagrangian,
            theta,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lagrangian(&self) -> &TraceForm {
        &self.lagrangian
    }

    pub fn theta(&self) -> &TraceForm {
        &self.theta
    }

    pub fn total(&self) -> TraceForm {
        self.lagrangian.add(&self.theta).unwrap()
    }

    /// `δL + dθ`.
    pub fn euler_lagrange(&self) -> TraceForm {
        self.lagrangian
            .vertical_diff()
            .add(&self.theta.horizontal_diff())
            .unwrap()
    }

    /// `δθ`.
    pub fn symplectic_density(&self) -> TraceForm {
        self.theta.vertical_diff()
    }

    /// `D𝓛`.
    pub fn total_symplectic(&self) -> TraceForm {
        self.total().total_diff()
    }

    /// `−Tr(δA ∧ (A∧⋆F − (−1)^n ⋆F∧A + d⋆F))`, assembled term by term.
    pub fn expected_euler_lagrange(&self) -> Result<TraceForm> {
        let n = self.dim;
        let a = MatrixForm::connection(n);
        let star_f = star(&curvature(n))?;
        let sign = if odd(n) { Coeff::one() } else { Coeff::int(-1) };
        let bracket = a
            .wedge(&star_f)?
            .add(&star_f.wedge(&a)?.scale(&sign))?
            .add(&star_f.horizontal_diff())?;
        Ok(MatrixForm::var_connection(n).wedge(&bracket)?.trace().neg())
    }

    /// `−Tr(δA ∧ D_A⋆F)`.
    pub fn covariant_euler_lagrange(&self) -> Result<TraceForm> {
        let n = self.dim;
        let dstar = covariant_derivative(&star(&curvature(n))?)?;
        Ok(MatrixForm::var_connection(n).wedge(&dstar)?.trace().neg())
    }

    /// `J_Ξ = Ξ*⌟𝓛`.
    pub fn momentum_map(&self, x: &GaugeKilling) -> Result<TraceForm> {
        self.total().interior(x)
    }

    /// `Tr(∇_AΞ ∧ ⋆F)` scaled like the Killing field.
    pub fn expected_momentum_map(&self, x: &GaugeKilling) -> Result<TraceForm> {
        let n = self.dim;
        Ok(covariant_gauge(n)
            .wedge(&star(&curvature(n))?)?
            .trace()
            .scale(&x.scale))
    }

    /// `𝓛ie_{Ξ*}𝓛`.
    pub fn invariance_residual(&self, x: &GaugeKilling) -> Result<TraceForm> {
        self.total().lie_total(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use MatrixAtom::*;

    #[test]
    fn noncommutative_products_survive() {
        let a = MatrixForm::connection(4);
        assert!(!a.wedge(&a).unwrap().is_zero());
        let v = MatrixForm::var_connection(4);
        assert!(!v.wedge(&v).unwrap().is_zero());
        assert!(a.wedge(&MatrixForm::zero(4)).unwrap().is_zero());
    }

    #[test]
    fn variation_of_curvature() {
        let f = curvature(4);
        let expected = MatrixForm::word(4, vec![VarDiffConnection], Coeff::one())
            .add(&MatrixForm::word(4, vec![VarConnection, Connection], Coeff::one()))
            .unwrap()
            .add(&MatrixForm::word(4, vec![Connection, VarConnection], Coeff::int(-1)))
            .unwrap();
        assert_eq!(f.vertical_diff(), expected);
        let df = MatrixForm::word(4, vec![DiffConnection, Connection], Coeff::one())
            .add(&MatrixForm::word(4, vec![Connection, DiffConnection], Coeff::int(-1)))
            .unwrap();
        assert_eq!(f.horizontal_diff(), df);
    }

    #[test]
    fn covariant_derivative_examples() {
        let xi = covariant_gauge(4);
        let expected = MatrixForm::word(4, vec![DiffGauge], Coeff::one())
            .add(&MatrixForm::word(4, vec![Connection, Gauge], Coeff::one()))
            .unwrap()
            .add(&MatrixForm::word(4, vec![Gauge, Connection], Coeff::int(-1)))
            .unwrap();
        assert_eq!(xi, expected);
        assert!(covariant_derivative(&curvature(4)).unwrap().is_zero());
        let mixed = MatrixForm::gauge(4).add(&MatrixForm::connection(4)).unwrap();
        assert!(matches!(covariant_derivative(&mixed), Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn gauge_factors_leave_the_star() {
        let w = MatrixForm::word(4, vec![Gauge, Connection, Gauge], Coeff::one());
        let s = star(&w).unwrap();
        let expected = MatrixForm::word(
            4,
            vec![
                Gauge,
                Star {
                    inner: vec![Connection],
                    d: false,
                },
                Gauge,
            ],
            Coeff::one(),
        );
        assert_eq!(s, expected);
        assert!(star(&s).is_err());
    }

    #[test]
    fn cyclic_rotation_representative() {
        let n = 4;
        let sf = Star {
            inner: vec![DiffConnection],
            d: false,
        };
        let w1 = vec![VarConnection, Connection, sf.clone()];
        let w2 = vec![Connection, sf, VarConnection];
        let c1 = canonical_trace_word(n, &w1).unwrap();
        let c2 = canonical_trace_word(n, &w2).unwrap();
        assert_eq!(c1.0, c2.0);
        assert_eq!(c1.1, c2.1);
        assert!(MatrixForm::zero(n).trace().is_zero());
    }
}
