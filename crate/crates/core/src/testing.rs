//! Seeded random forms and the randomized identity suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Direction, FieldSymbol, Fields, JetCoordinate, ScalarExpr, Var};
use crate::calculus::{horizontal_diff, interior, lie_total, total_diff, vertical_diff, KillingField};
use crate::coeff::Coeff;
use crate::error::Result;
use crate::fieldtheory::{lagrangian_shift, total_symplectic, LagrangianSystem};
use crate::forms::{Form, Generator};
use crate::gauge::{canonical_trace_word, MatrixAtom, Word};
use crate::hodge::{star, HodgeMode, HodgeTable};

pub const FIELDS: [&str; 2] = ["u", "v"];

/// Random bounded-size forms over the real fields `u`, `v`.
pub struct FormGen {
    rng: ChaCha8Rng,
    pub dim: usize,
    pub stars: bool,
    pub generated: usize,
}

impl FormGen {
    pub fn new(seed: u64, dim: usize) -> Self {
        FormGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            dim,
            stars: false,
            generated: 0,
        }
    }

    pub fn with_stars(mut self, stars: bool) -> Self {
        self.stars = stars;
        self
    }

    pub fn fields() -> Fields {
        let mut f = Fields::new();
        for name in FIELDS {
            f.insert(FieldSymbol::real(name));
        }
        f
    }

    fn direction(&mut self) -> Direction {
        self.rng.gen_range(0..self.dim) as Direction
    }

    pub fn jet(&mut self) -> JetCoordinate {
        let field = *FIELDS.choose(&mut self.rng).unwrap();
        let order = self.rng.gen_range(0..=1);
        let index: Vec<Direction> = (0..order).map(|_| self.direction()).collect();
        JetCoordinate::new(field, &index)
    }

    fn coeff(&mut self) -> Coeff {
        let num = self.rng.gen_range(-3i64..=3);
        let num = if num == 0 { 1 } else { num };
        Coeff::ratio(num, self.rng.gen_range(1i64..=2))
    }

    pub fn scalar(&mut self) -> ScalarExpr {
        let terms = self.rng.gen_range(1..=2);
        let mut out = ScalarExpr::zero();
        for _ in 0..terms {
            let degree = self.rng.gen_range(0..=2);
            let mut factors = Vec::new();
            for _ in 0..degree {
                let v = match self.rng.gen_range(0..6) {
                    0 => Var::Coord(self.direction()),
                    1 => Var::constant("k"),
                    _ => Var::Jet(self.jet()),
                };
                factors.push((v, 1));
            }
            out = out.add(&ScalarExpr::monomial(factors, self.coeff()));
        }
        out
    }

    fn horizontal_part(&mut self, q: usize) -> Option<Vec<Generator>> {
        let n = self.dim;
        let mut gens = Vec::new();
        let mut remaining = q;
        if self.stars && self.rng.gen_bool(0.4) {
            let min_k = n.saturating_sub(q);
            let k = self.rng.gen_range(min_k..=n);
            let mut dirs: Vec<Direction> = (0..n as Direction).collect();
            dirs.shuffle(&mut self.rng);
            let mut h: Vec<Direction> = dirs[..k].to_vec();
            h.sort();
            remaining -= n - k;
            gens.push(Generator::Star(h));
        }
        if remaining > n {
            return None;
        }
        let mut dirs: Vec<Direction> = (0..n as Direction).collect();
        dirs.shuffle(&mut self.rng);
        gens.extend(dirs[..remaining].iter().map(|&d| Generator::Horizontal(d)));
        Some(gens)
    }

    /// A random form of bidegree `(p,q)` with up to three terms; may be 0.
    pub fn homogeneous(&mut self, p: usize, q: usize) -> Form {
        self.generated += 1;
        let mut out = Form::zero(self.dim);
        let terms = self.rng.gen_range(1..=3);
        for _ in 0..terms {
            let Some(mut gens) = self.horizontal_part(q) else { continue };
            for _ in 0..p {
                gens.push(Generator::Vertical(self.jet()));
            }
            gens.shuffle(&mut self.rng);
            let c = self.scalar();
            out = out.add(&Form::term(self.dim, c, gens)).unwrap();
        }
        out
    }

    pub fn bidegree(&mut self) -> (usize, usize) {
        (self.rng.gen_range(0..=2), self.rng.gen_range(0..=self.dim))
    }

    pub fn form(&mut self) -> Form {
        let (p, q) = self.bidegree();
        self.homogeneous(p, q)
    }

    /// A Killing field with polynomial contractions on `u` and `v`, and
    /// horizontal components unless `vertical_only`.
    pub fn killing(&mut self, vertical_only: bool) -> KillingField {
        let mut x = KillingField::new("random", self.dim);
        if !vertical_only {
            for mu in 0..self.dim as Direction {
                if self.rng.gen_bool(0.6) {
                    let v = self.scalar();
                    x = x.with_horizontal(mu, v).unwrap();
                }
            }
        }
        for f in FIELDS {
            let v = self.scalar();
            x = x.with_vertical(f, v);
        }
        x
    }

    /// A random word of matrix atoms with at most one star.
    pub fn word(&mut self, len: usize) -> Word {
        let plain = [
            MatrixAtom::Connection,
            MatrixAtom::VarConnection,
            MatrixAtom::DiffConnection,
            MatrixAtom::VarDiffConnection,
            MatrixAtom::Gauge,
            MatrixAtom::DiffGauge,
        ];
        let mut w: Word = (0..len).map(|_| plain.choose(&mut self.rng).unwrap().clone()).collect();
        if len > 0 && self.rng.gen_bool(0.5) {
            let inner_len = self.rng.gen_range(1..=2);
            let inner: Word = (0..inner_len)
                .map(|_| plain[..4].choose(&mut self.rng).unwrap().clone())
                .collect();
            let pos = self.rng.gen_range(0..len);
            w[pos] = MatrixAtom::Star { inner, d: false };
        }
        self.generated += 1;
        w
    }
}

/// Outcome of one randomized identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Results of [`run_property_suite`].
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub outcomes: Vec<PropertyOutcome>,
    pub forms_generated: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }
}

fn check(
    name: &'static str,
    cases: usize,
    mut case: impl FnMut(usize) -> Result<Option<String>>,
) -> PropertyOutcome {
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        let verdict = match case(i) {
            Ok(v) => v,
            Err(e) => Some(format!("error: {e}")),
        };
        if let Some(msg) = verdict {
            failures += 1;
            first_failure.get_or_insert_with(|| format!("case {i}: {msg}"));
        }
    }
    PropertyOutcome {
        name,
        cases,
        failures,
        first_failure,
    }
}

fn expect_zero(f: &Form) -> Option<String> {
    (!f.is_zero()).then(|| format!("nonzero residual with {} terms", f.len()))
}

fn expect_eq(a: &Form, b: &Form) -> Result<Option<String>> {
    Ok(expect_zero(&a.sub(b)?))
}

fn pick(i: usize) -> usize {
    i % 3
}

fn sign(negative: bool) -> Coeff {
    Coeff::sign(negative)
}

/// Runs every randomized identity with `cases` inputs each, seeded from
/// `seed`.
pub fn run_property_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut gens: Vec<FormGen> = (1..=3)
        .map(|n| FormGen::new(seed.wrapping_mul(31).wrapping_add(n as u64), n).with_stars(true))
        .collect();
    let mut plain = FormGen::new(seed ^ 0x5eed, 2);
    let mut table_gen = FormGen::new(seed ^ 0x7ab1e, 2);
    let mut words = FormGen::new(seed ^ 0x7ace, 4);
    let mut outcomes = Vec::new();
    let table = HodgeTable::minkowski2d();

    outcomes.push(check("delta-squared", cases, |i| {
        let a = gens[pick(i)].form();
        Ok(expect_zero(&vertical_diff(&vertical_diff(&a))))
    }));
    outcomes.push(check("d-squared", cases, |i| {
        let a = gens[pick(i)].form();
        Ok(expect_zero(&horizontal_diff(&horizontal_diff(&a))))
    }));
    outcomes.push(check("d-delta-anticommute", cases, |i| {
        let a = gens[pick(i)].form();
        let s = horizontal_diff(&vertical_diff(&a)).add(&vertical_diff(&horizontal_diff(&a)))?;
        Ok(expect_zero(&s))
    }));
    outcomes.push(check("total-squared", cases, |i| {
        let a = gens[pick(i)].form();
        Ok(expect_zero(&total_diff(&total_diff(&a))))
    }));

    type Op = fn(&Form) -> Form;
    for (name, op) in [
        ("leibniz-delta", vertical_diff as Op),
        ("leibniz-d", horizontal_diff as Op),
        ("leibniz-total", total_diff as Op),
    ] {
        outcomes.push(check(name, cases, |i| {
            let g = &mut gens[pick(i)];
            let (p1, q1) = g.bidegree();
            let a = g.homogeneous(p1, q1);
            let b = g.form();
            let lhs = op(&a.wedge(&b)?);
            let rhs = op(&a)
                .wedge(&b)?
                .add(&a.wedge(&op(&b))?.scale_coeff(&sign((p1 + q1) % 2 == 1)))?;
            expect_eq(&lhs, &rhs)
        }));
    }

    outcomes.push(check("leibniz-interior", cases, |i| {
        let vertical_only = i % 2 == 0;
        let g = if vertical_only { &mut gens[pick(i)] } else { &mut plain };
        let x = g.killing(vertical_only);
        let (p1, q1) = g.bidegree();
        let a = g.homogeneous(p1, q1);
        let b = g.form();
        let lhs = interior(&x, &a.wedge(&b)?)?;
        let rhs = interior(&x, &a)?
            .wedge(&b)?
            .add(&a.wedge(&interior(&x, &b)?)?.scale_coeff(&sign((p1 + q1) % 2 == 1)))?;
        expect_eq(&lhs, &rhs)
    }));

    outcomes.push(check("graded-commutativity", cases, |i| {
        let g = &mut gens[pick(i)];
        let (p1, q1) = g.bidegree();
        let (p2, q2) = g.bidegree();
        let a = g.homogeneous(p1, q1);
        let b = g.homogeneous(p2, q2);
        let s = sign(((p1 + q1) * (p2 + q2)) % 2 == 1);
        expect_eq(&a.wedge(&b)?, &b.wedge(&a)?.scale_coeff(&s))
    }));

    outcomes.push(check("associativity", cases, |i| {
        let g = &mut gens[pick(i)];
        let (a, b, c) = (g.form(), g.form(), g.form());
        expect_eq(&a.wedge(&b)?.wedge(&c)?, &a.wedge(&b.wedge(&c)?)?)
    }));

    outcomes.push(check("cartan-commutes-with-total", cases, |i| {
        let vertical_only = i % 2 == 0;
        let g = if vertical_only { &mut gens[pick(i)] } else { &mut plain };
        let x = g.killing(vertical_only);
        let a = g.form();
        expect_eq(&lie_total(&x, &total_diff(&a))?, &total_diff(&lie_total(&x, &a)?))
    }));

    outcomes.push(check("pairing-sign-table", cases, |_| {
        let g = &mut table_gen;
        let q = g.rng.gen_range(0..=2);
        let (pa, pb) = (g.rng.gen_range(0..=2), g.rng.gen_range(0..=2));
        let fa = g.homogeneous(pa, 0);
        let fb = g.homogeneous(pb, 0);
        let ma = g.homogeneous(0, q);
        let mb = g.homogeneous(0, q);
        let alpha = fa.wedge(&ma)?;
        let beta = fb.wedge(&mb)?;
        let mode = HodgeMode::Table(table.clone());
        let lhs = alpha.wedge(&star(&beta, &mode)?)?;
        let e = (pa + q) * (pb + q) + q * q;
        let rhs = beta.wedge(&star(&alpha, &mode)?)?.scale_coeff(&sign(e % 2 == 1));
        expect_eq(&lhs, &rhs)
    }));

    outcomes.push(check("star-commutes-with-delta", cases, |i| {
        let g = &mut gens[pick(i)];
        let n = g.dim;
        let was = g.stars;
        g.stars = false;
        let a = g.form();
        g.stars = was;
        let mode = HodgeMode::Abstract(n);
        expect_eq(&vertical_diff(&star(&a, &mode)?), &star(&vertical_diff(&a), &mode)?)
    }));

    outcomes.push(check("shift-preserves-symplectic", cases, |i| {
        let g = &mut gens[pick(i)];
        let n = g.dim;
        let sys = LagrangianSystem::new(
            "random",
            HodgeMode::Abstract(n),
            FormGen::fields(),
            g.homogeneous(0, n),
            g.homogeneous(1, n - 1),
        )?;
        let lambda = g.homogeneous(0, n - 1);
        let shifted = lagrangian_shift(&sys, &lambda)?;
        expect_eq(
            &total_symplectic(&shifted)?.omega_total,
            &total_symplectic(&sys)?.omega_total,
        )
    }));

    outcomes.push(check("trace-orbit-unique", cases, |_| {
        let len = words.rng.gen_range(1..=5);
        let w = words.word(len);
        let base = canonical_trace_word(4, &w);
        let n = w.len();
        for k in 1..n {
            let mut r = w[k..].to_vec();
            r.extend_from_slice(&w[..k]);
            let deg = |s: &[MatrixAtom]| crate::gauge::word_degree(s, 4);
            let flip = (deg(&w[..k]) * deg(&w[k..])) % 2 == 1;
            let rotated = canonical_trace_word(4, &r).map(|(cw, s)| (cw, s ^ flip));
            if rotated != base {
                return Ok(Some(format!("rotation {k} of {w:?} has a different representative")));
            }
        }
        if let Some((cw, _)) = &base {
            if canonical_trace_word(4, cw) != Some((cw.clone(), false)) {
                return Ok(Some(format!("representative of {w:?} is not stable")));
            }
        }
        Ok(None)
    }));

    let forms_generated = gens.iter().map(|g| g.generated).sum::<usize>()
        + plain.generated
        + table_gen.generated
        + words.generated;
    SuiteReport {
        outcomes,
        forms_generated,
    }
}
