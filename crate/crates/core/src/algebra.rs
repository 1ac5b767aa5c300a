//! Exact commutative coefficients over jet coordinates.
//!
//! A [`ScalarExpr`] is a polynomial with complex-rational coefficients in
//! [`Var`]s: jet coordinates `u_I`, named real constants, explicit spacetime
//! coordinates `x^μ`, and formal function symbols `f(args)` whose partial
//! derivatives are tracked symbolically. Every value is kept in a canonical
//! form, so structural equality is semantic equality.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// Index of a spacetime direction, `0..n`.
pub type Direction = u8;

/// Whether a field is real or half of a complex-conjugate pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    Real,
    Complex { conjugate: Arc<str> },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldSymbol {
    pub name: Arc<str>,
    pub kind: FieldKind,
}

impl FieldSymbol {
    pub fn real(name: &str) -> Self {
        FieldSymbol {
            name: name.into(),
            kind: FieldKind::Real,
        }
    }

    pub fn complex(name: &str, conjugate: &str) -> Self {
        FieldSymbol {
            name: name.into(),
            kind: FieldKind::Complex {
                conjugate: conjugate.into(),
            },
        }
    }
}

/// The fields of a scenario, keyed by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fields {
    map: BTreeMap<Arc<str>, FieldSymbol>,
}

impl Fields {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, field: FieldSymbol) {
        self.map.insert(field.name.clone(), field);
    }

    /// A complex field together with its conjugate partner.
    pub fn complex_pair(name: &str, conjugate: &str) -> Self {
        let mut fields = Fields::new();
        fields.insert(FieldSymbol::complex(name, conjugate));
        fields.insert(FieldSymbol::complex(conjugate, name));
        fields
    }

    pub fn get(&self, name: &str) -> Option<&FieldSymbol> {
        self.map.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.map.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &FieldSymbol> {
        self.map.values()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Name of the conjugate partner (the field itself when real).
    pub fn conjugate_name(&self, name: &str) -> Result<Arc<str>> {
        match self.map.get(name).map(|f| &f.kind) {
            Some(FieldKind::Real) => Ok(name.into()),
            Some(FieldKind::Complex { conjugate }) if self.map.contains_key(conjugate) => {
                Ok(conjugate.clone())
            }
            _ => Err(Error::UnpairedComplexField(name.to_string())),
        }
    }

    /// Checks that conjugation is an involution on the declared fields.
    pub fn validate(&self) -> Result<()> {
        for field in self.map.values() {
            let partner = self.conjugate_name(&field.name)?;
            let back = self.conjugate_name(&partner)?;
            if back != field.name {
                return Err(Error::UnpairedComplexField(field.name.to_string()));
            }
        }
        Ok(())
    }
}

/// `u_I`: the `I`-th spacetime derivative of a field, with `I` stored as a
/// non-decreasing list of directions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetCoordinate {
    pub field: Arc<str>,
    index: Vec<Direction>,
}

impl JetCoordinate {
    pub fn new(field: &str, index: &[Direction]) -> Self {
        let mut index = index.to_vec();
        index.sort_unstable();
        JetCoordinate {
            field: field.into(),
            index,
        }
    }

    pub fn base(field: &str) -> Self {
        Self::new(field, &[])
    }

    pub fn index(&self) -> &[Direction] {
        &self.index
    }

    pub fn order(&self) -> usize {
        self.index.len()
    }

    /// `u_{Iμ}`.
    pub fn prolong(&self, dir: Direction) -> Self {
        let mut index = self.index.clone();
        let pos = index.partition_point(|&d| d <= dir);
        index.insert(pos, dir);
        JetCoordinate {
            field: self.field.clone(),
            index,
        }
    }

    pub fn with_field(&self, field: Arc<str>) -> Self {
        JetCoordinate {
            field,
            index: self.index.clone(),
        }
    }
}

/// A formal function symbol applied to variables, carrying the multiset of
/// argument positions it has been differentiated in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncApp {
    pub name: Arc<str>,
    pub args: Arc<[Var]>,
    derivs: Vec<u8>,
}

impl FuncApp {
    pub fn new(name: &str, args: Vec<Var>) -> Self {
        FuncApp {
            name: name.into(),
            args: args.into(),
            derivs: Vec::new(),
        }
    }

    pub fn derivs(&self) -> &[u8] {
        &self.derivs
    }

    /// Partial derivative in argument slot `pos`.
    pub fn differentiate(&self, pos: u8) -> Self {
        let mut derivs = self.derivs.clone();
        let at = derivs.partition_point(|&d| d <= pos);
        derivs.insert(at, pos);
        FuncApp {
            name: self.name.clone(),
            args: self.args.clone(),
            derivs,
        }
    }

    pub fn with_derivs(mut self, mut derivs: Vec<u8>) -> Self {
        derivs.sort_unstable();
        self.derivs = derivs;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Jet(JetCoordinate),
    Func(FuncApp),
    /// A real named constant such as a mass or a symmetry parameter.
    Const(Arc<str>),
    /// The explicit spacetime coordinate `x^μ`.
    Coord(Direction),
}

impl Var {
    pub fn jet(field: &str, index: &[Direction]) -> Self {
        Var::Jet(JetCoordinate::new(field, index))
    }

    pub fn constant(name: &str) -> Self {
        Var::Const(name.into())
    }

    /// `∂self/∂v` as a scalar expression.
    fn partial(&self, v: &Var) -> ScalarExpr {
        if self == v {
            return ScalarExpr::one();
        }
        match self {
            Var::Func(f) => {
                let mut out = ScalarExpr::zero();
                for (pos, arg) in f.args.iter().enumerate() {
                    let inner = arg.partial(v);
                    if !inner.is_zero() {
                        let outer = ScalarExpr::var(Var::Func(f.differentiate(pos as u8)));
                        out = out.add(&outer.mul(&inner));
                    }
                }
                out
            }
            _ => ScalarExpr::zero(),
        }
    }

    /// `D_μ self`.
    fn total_derivative(&self, dir: Direction) -> ScalarExpr {
        match self {
            Var::Jet(u) => ScalarExpr::var(Var::Jet(u.prolong(dir))),
            Var::Coord(d) if *d == dir => ScalarExpr::one(),
            Var::Coord(_) | Var::Const(_) => ScalarExpr::zero(),
            Var::Func(f) => {
                let mut out = ScalarExpr::zero();
                for (pos, arg) in f.args.iter().enumerate() {
                    let inner = arg.total_derivative(dir);
                    if !inner.is_zero() {
                        let outer = ScalarExpr::var(Var::Func(f.differentiate(pos as u8)));
                        out = out.add(&outer.mul(&inner));
                    }
                }
                out
            }
        }
    }

    fn conjugate(&self, fields: &Fields) -> Result<Var> {
        match self {
            Var::Jet(u) => Ok(Var::Jet(u.with_field(fields.conjugate_name(&u.field)?))),
            Var::Func(f) => {
                for arg in f.args.iter() {
                    if arg.conjugate(fields)? != *arg {
                        return Err(Error::UnpairedComplexField(format!(
                            "{} (function of a complex field)",
                            f.name
                        )));
                    }
                }
                Ok(self.clone())
            }
            Var::Const(_) | Var::Coord(_) => Ok(self.clone()),
        }
    }

    fn collect_jets(&self, out: &mut BTreeSet<JetCoordinate>) {
        match self {
            Var::Jet(u) => {
                out.insert(u.clone());
            }
            Var::Func(f) => f.args.iter().for_each(|a| a.collect_jets(out)),
            _ => {}
        }
    }
}

/// A power product of variables. Ordered by total degree first, then
/// lexicographically, so maps keyed by monomials iterate in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    degree: u32,
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_var(v: Var) -> Self {
        Monomial {
            degree: 1,
            factors: vec![(v, 1)],
        }
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    fn from_factors(mut factors: Vec<(Var, u32)>) -> Self {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((last, le)) if *last == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        merged.retain(|(_, e)| *e > 0);
        Monomial {
            degree: merged.iter().map(|(_, e)| e).sum(),
            factors: merged,
        }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Monomial::from_factors(factors)
    }

    /// The monomial with factor `i` lowered by one power.
    fn without_one(&self, i: usize) -> Monomial {
        let mut factors = self.factors.clone();
        factors[i].1 -= 1;
        Monomial::from_factors(factors)
    }
}

/// Canonical polynomial over [`Var`]s with [`Coeff`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScalarExpr {
    terms: BTreeMap<Monomial, Coeff>,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial::one(), c);
        e
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Coeff::int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(Coeff::ratio(num, den))
    }

    pub fn var(v: Var) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial::from_var(v), Coeff::one());
        e
    }

    pub fn jet(u: JetCoordinate) -> Self {
        Self::var(Var::Jet(u))
    }

    /// Shorthand for the jet `field_{index}`.
    pub fn field(field: &str, index: &[Direction]) -> Self {
        Self::var(Var::jet(field, index))
    }

    pub fn named_constant(name: &str) -> Self {
        Self::var(Var::constant(name))
    }

    pub fn coordinate(dir: Direction) -> Self {
        Self::var(Var::Coord(dir))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    /// Rebuilds a monomial from raw factors; used by parsers.
    pub fn monomial(factors: Vec<(Var, u32)>, c: Coeff) -> Self {
        Self::from_terms([(Monomial::from_factors(factors), c)])
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
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

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value when the expression is a pure number.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &ScalarExpr) -> ScalarExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ScalarExpr) -> ScalarExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ScalarExpr {
        self.scale(&Coeff::int(-1))
    }

    pub fn scale(&self, c: &Coeff) -> ScalarExpr {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarExpr {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &ScalarExpr) -> ScalarExpr {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> ScalarExpr {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative `∂f/∂v`, treating every jet coordinate,
    /// constant and coordinate as independent. Function symbols obey the
    /// chain rule through their arguments.
    pub fn partial(&self, v: &Var) -> ScalarExpr {
        self.derive_with(|w| w.partial(v))
    }

    pub fn partial_wrt_jet(&self, u: &JetCoordinate) -> ScalarExpr {
        self.partial(&Var::Jet(u.clone()))
    }

    /// Total derivative `D_μ f = ∂_μ f + Σ u_{Iμ} ∂f/∂u_I`.
    pub fn total_derivative(&self, dir: Direction) -> ScalarExpr {
        self.derive_with(|w| w.total_derivative(dir))
    }

    /// Applies a derivation given its value on each variable.
    fn derive_with(&self, on_var: impl Fn(&Var) -> ScalarExpr) -> ScalarExpr {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (i, (v, e)) in m.factors.iter().enumerate() {
                let dv = on_var(v);
                if dv.is_zero() {
                    continue;
                }
                let rest = ScalarExpr::from_terms([(m.without_one(i), c * &Coeff::int(*e as i64))]);
                out = out.add(&rest.mul(&dv));
            }
        }
        out
    }

    /// Simultaneous substitution of jet coordinates. Jets appearing as
    /// arguments of function symbols are left alone.
    pub fn substitute(&self, bindings: &BTreeMap<JetCoordinate, ScalarExpr>) -> ScalarExpr {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (v, e) in &m.factors {
                let factor = match v {
                    Var::Jet(u) => match bindings.get(u) {
                        Some(b) => b.pow(*e),
                        None => Self::from_terms([(Monomial::from_factors(vec![(v.clone(), *e)]), Coeff::one())]),
                    },
                    _ => Self::from_terms([(Monomial::from_factors(vec![(v.clone(), *e)]), Coeff::one())]),
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }

    /// Complex conjugation: conjugates coefficients and swaps each complex
    /// field with its declared partner. Constants and coordinates are real.
    pub fn conjugate(&self, fields: &Fields) -> Result<ScalarExpr> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let factors = m
                .factors
                .iter()
                .map(|(v, e)| Ok((v.conjugate(fields)?, *e)))
                .collect::<Result<Vec<_>>>()?;
            out.add_term(Monomial::from_factors(factors), c.conj());
        }
        Ok(out)
    }

    /// Every jet coordinate occurring, including inside function arguments.
    pub fn jets(&self) -> BTreeSet<JetCoordinate> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in &m.factors {
                v.collect_jets(&mut out);
            }
        }
        out
    }

    /// Jets that occur as direct polynomial variables.
    pub fn polynomial_vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    /// Highest spacetime direction referenced, if any.
    pub fn max_direction(&self) -> Option<Direction> {
        fn visit(v: &Var, best: &mut Option<Direction>) {
            let mut bump = |d: Direction| *best = Some(best.map_or(d, |b: Direction| b.max(d)));
            match v {
                Var::Jet(u) => u.index.iter().for_each(|&d| bump(d)),
                Var::Coord(d) => bump(*d),
                Var::Func(f) => f.args.iter().for_each(|a| visit(a, best)),
                Var::Const(_) => {}
            }
        }
        let mut best = None;
        for m in self.terms.keys() {
            for (v, _) in &m.factors {
                visit(v, &mut best);
            }
        }
        best
    }
}

impl From<Coeff> for ScalarExpr {
    fn from(c: Coeff) -> Self {
        ScalarExpr::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: usize) -> ScalarExpr {
        ScalarExpr::field("q", &vec![0; k])
    }

    #[test]
    fn partial_of_product() {
        let f = q(0).mul(&q(1));
        assert_eq!(f.partial_wrt_jet(&JetCoordinate::new("q", &[0])), q(0));
    }

    #[test]
    fn partial_of_mass_term() {
        let mu = ScalarExpr::named_constant("mu");
        let phi = ScalarExpr::field("phi", &[]);
        let phibar = ScalarExpr::field("phibar", &[]);
        let f = mu.pow(2).mul(&phi).mul(&phibar);
        assert_eq!(f.partial_wrt_jet(&JetCoordinate::base("phi")), mu.pow(2).mul(&phibar));
    }

    #[test]
    fn partial_of_absent_variable() {
        let f = q(1).pow(3).add(&ScalarExpr::coordinate(0));
        assert!(f.partial_wrt_jet(&JetCoordinate::base("q")).is_zero());
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(q(0).total_derivative(0), q(1));
        assert_eq!(ScalarExpr::coordinate(0).total_derivative(0), ScalarExpr::one());
        // D_t(q²) = 2 q q̇, expanded by hand
        assert_eq!(q(0).pow(2).total_derivative(0), ScalarExpr::int(2).mul(&q(0)).mul(&q(1)));
    }

    #[test]
    fn mixed_index_is_order_insensitive() {
        assert_eq!(JetCoordinate::new("u", &[1, 0]), JetCoordinate::new("u", &[0, 1]));
        let u = ScalarExpr::field("u", &[]);
        assert_eq!(
            u.total_derivative(0).total_derivative(1),
            u.total_derivative(1).total_derivative(0)
        );
    }

    #[test]
    fn function_symbol_chain_rule() {
        let args = vec![Var::jet("q", &[]), Var::jet("q", &[0]), Var::Coord(0)];
        let l = ScalarExpr::var(Var::Func(FuncApp::new("L", args.clone())));
        let dl = l.total_derivative(0);
        let f = |d: Vec<u8>| ScalarExpr::var(Var::Func(FuncApp::new("L", args.clone()).with_derivs(d)));
        let expected = f(vec![2]).add(&f(vec![0]).mul(&q(1))).add(&f(vec![1]).mul(&q(2)));
        assert_eq!(dl, expected);
        assert_eq!(l.partial_wrt_jet(&JetCoordinate::new("q", &[0])), f(vec![1]));
    }

    #[test]
    fn substitution() {
        let mut b = BTreeMap::new();
        b.insert(JetCoordinate::new("q", &[0, 0]), q(0).neg());
        assert!(q(2).add(&q(0)).substitute(&b).is_zero());
        let f = q(1).mul(&q(0));
        assert_eq!(f.substitute(&BTreeMap::new()), f);
        let mut b = BTreeMap::new();
        b.insert(JetCoordinate::new("phi", &[0]), ScalarExpr::zero());
        let g = ScalarExpr::field("phi", &[0]).mul(&ScalarExpr::field("phibar", &[0]));
        assert!(g.substitute(&b).is_zero());
    }

    #[test]
    fn conjugation() {
        let fields = Fields::complex_pair("phi", "phibar");
        let alpha = ScalarExpr::named_constant("alpha");
        let f = ScalarExpr::constant(Coeff::i()).mul(&alpha).mul(&ScalarExpr::field("phi", &[]));
        let expected = ScalarExpr::constant(-Coeff::i()).mul(&alpha).mul(&ScalarExpr::field("phibar", &[]));
        assert_eq!(f.conjugate(&fields).unwrap(), expected);
        assert_eq!(f.conjugate(&fields).unwrap().conjugate(&fields).unwrap(), f);

        let mut real = Fields::new();
        real.insert(FieldSymbol::real("q"));
        assert_eq!(q(1).conjugate(&real).unwrap(), q(1));

        let mut unpaired = Fields::new();
        unpaired.insert(FieldSymbol::complex("psi", "psibar"));
        let psi = ScalarExpr::field("psi", &[]);
        assert_eq!(
            psi.conjugate(&unpaired),
            Err(Error::UnpairedComplexField("psi".into()))
        );
        assert!(unpaired.validate().is_err());
    }

    #[test]
    fn zero_is_unique() {
        let a = q(1).mul(&q(0));
        assert_eq!(a.sub(&a), ScalarExpr::zero());
        assert!(a.scale(&Coeff::zero()).is_zero());
    }
}
