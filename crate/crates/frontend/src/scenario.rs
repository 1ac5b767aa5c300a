//! Line-oriented scenario files.
//!
//! ```text
//! scenario kg2d
//! dim 2
//! hodge table (-,+)
//! star 1 = -dx[t]^dx[x]
//! ...
//! field phi complex phibar
//! const mu
//! L = 1/2*d(phibar)^star(d(phi)) - 1/2*mu**2*star(phi*phibar)
//! theta = 1/2*del(phi)^star(d(phibar)) + 1/2*del(phibar)^star(d(phi))
//! killing u1
//!   contract del(phi) = i*alpha*phi
//!   conjugate
//! onshell phi_{t,t} = phi_{x,x} - mu**2*phi
//! ```
//!
//! `#` starts a comment. Blocks under `killing` run until the next keyword
//! that is not `contract` or `conjugate`.

use std::fmt::Write as _;

use varcomplex_core::gauge::{covariant_gauge, MatrixAtom, MatrixForm, TraceForm};
use varcomplex_core::{
    Coeff, Direction, FieldKind, FieldSymbol, Form, Generator, HodgeMode, HodgeTable, JetCoordinate, KillingField,
    ScalarExpr, Var,
};

use crate::context::{default_coords, Context};
use crate::error::{FrontendError, Result};
use crate::expr::{as_scalar, eval_str, parse_form, Value};
use crate::render::{render, Format};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contraction {
    Horizontal(Direction, ScalarExpr),
    Vertical(String, ScalarExpr),
    /// `X⌟δA = −scale·∇_AΞ`.
    Gauge(Coeff),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingDecl {
    pub name: String,
    pub contractions: Vec<Contraction>,
    pub conjugate: bool,
}

#[derive(Clone, Debug)]
pub struct ScenarioDef {
    pub name: String,
    pub ctx: Context,
    pub parametric: bool,
    pub table: Option<HodgeTable>,
    pub lagrangian: Value,
    pub theta: Value,
    pub killings: Vec<KillingDecl>,
    pub onshell: Vec<(JetCoordinate, ScalarExpr)>,
}

impl ScenarioDef {
    pub fn killing(&self, name: &str) -> Option<&KillingDecl> {
        self.killings.iter().find(|k| k.name == name)
    }

    /// The scalar Killing field described by `decl`.
    pub fn killing_field(&self, decl: &KillingDecl) -> Result<KillingField> {
        let mut x = KillingField::new(&decl.name, self.ctx.dim);
        for c in &decl.contractions {
            x = match c {
                Contraction::Horizontal(d, v) => x.with_horizontal(*d, v.clone())?,
                Contraction::Vertical(f, v) => x.with_vertical(f, v.clone()),
                Contraction::Gauge(_) => {
                    return Err(FrontendError::Usage(format!(
                        "killing field '{}' is a gauge transformation",
                        decl.name
                    )))
                }
            };
        }
        if decl.conjugate {
            x = x.with_conjugates(&self.ctx.fields)?;
        }
        Ok(x)
    }

    pub fn to_text(&self) -> String {
        let ctx = &self.ctx;
        let mut out = String::new();
        let _ = writeln!(out, "scenario {}", self.name);
        let _ = writeln!(out, "dim {}{}", ctx.dim, if self.parametric { " parametric" } else { "" });
        if ctx.coords != default_coords(ctx.dim) {
            let _ = writeln!(out, "coords {}", ctx.coords.join(" "));
        }
        match (&ctx.hodge, &self.table) {
            (Some(HodgeMode::Table(_)), Some(t)) => {
                let _ = writeln!(out, "hodge table {}", t.signature);
                for (src, negative, img) in t.entries() {
                    let _ = writeln!(
                        out,
                        "star {} = {}{}",
                        monomial_text(src, ctx),
                        if negative { "-" } else { "" },
                        monomial_text(img, ctx)
                    );
                }
            }
            _ => {
                let _ = writeln!(out, "hodge abstract");
            }
        }
        if ctx.gauge {
            let _ = writeln!(out, "gauge");
        }
        for name in &ctx.field_decls {
            match &ctx.fields.get(name).map(|f| &f.kind) {
                Some(FieldKind::Complex { conjugate }) => {
                    let _ = writeln!(out, "field {name} complex {conjugate}");
                }
                _ => {
                    let _ = writeln!(out, "field {name} real");
                }
            }
        }
        if !ctx.constants.is_empty() {
            let _ = writeln!(out, "const {}", ctx.constants.join(" "));
        }
        for name in &ctx.func_order {
            let args: Vec<String> = ctx.funcs[name].iter().map(|v| ctx.var_name(v)).collect();
            let _ = writeln!(out, "func {name}({})", args.join(", "));
        }
        let _ = writeln!(out, "L = {}", render(&self.lagrangian, Format::Plain, ctx));
        let _ = writeln!(out, "theta = {}", render(&self.theta, Format::Plain, ctx));
        for k in &self.killings {
            let _ = writeln!(out, "killing {}", k.name);
            for c in &k.contractions {
                let (target, value) = match c {
                    Contraction::Horizontal(d, v) => (format!("dx[{}]", ctx.coord_name(*d)), scalar_text(v, ctx)),
                    Contraction::Vertical(f, v) => (format!("del({f})"), scalar_text(v, ctx)),
                    Contraction::Gauge(s) => (
                        "del(Amat)".into(),
                        render(&Value::Matrix(covariant_gauge(ctx.dim).scale(&-s)), Format::Plain, ctx),
                    ),
                };
                let _ = writeln!(out, "  contract {target} = {value}");
            }
            if k.conjugate {
                let _ = writeln!(out, "  conjugate");
            }
        }
        for (lhs, rhs) in &self.onshell {
            let _ = writeln!(out, "onshell {} = {}", ctx.jet_name(lhs), scalar_text(rhs, ctx));
        }
        out
    }
}

fn scalar_text(s: &ScalarExpr, ctx: &Context) -> String {
    render(&Value::Form(Form::scalar(ctx.dim, s.clone())), Format::Plain, ctx)
}

fn monomial_text(dirs: &[Direction], ctx: &Context) -> String {
    if dirs.is_empty() {
        return "1".into();
    }
    dirs.iter()
        .map(|d| format!("dx[{}]", ctx.coord_name(*d)))
        .collect::<Vec<_>>()
        .join("^")
}

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    /// Remainder after the keyword, with its 0-based column.
    rest: &'a str,
    rest_col: usize,
}

fn split_line(number: usize, raw: &str) -> Option<Line<'_>> {
    let content = raw.split('#').next().unwrap_or("");
    let trimmed = content.trim_start();
    if trimmed.trim().is_empty() {
        return None;
    }
    let indent = content.len() - trimmed.len();
    let kw_len = trimmed
        .find(|c: char| c.is_whitespace() || c == '=')
        .unwrap_or(trimmed.len());
    let keyword = &trimmed[..kw_len];
    let after = &trimmed[kw_len..];
    let rest = after.trim_start();
    let rest_col = indent + kw_len + (after.len() - rest.len());
    Some(Line {
        number,
        keyword,
        rest: rest.trim_end(),
        rest_col,
    })
}

fn valid_name(s: &str, underscores: bool) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || (underscores && c == '_'))
}

/// `= expr` after a target; returns the expression and its column.
fn rhs_of<'a>(line: &Line<'a>, text: &'a str, col: usize) -> Result<(&'a str, usize)> {
    let eq = text
        .find('=')
        .ok_or_else(|| FrontendError::parse(line.number, col + 1, "expected '='"))?;
    let rhs = &text[eq + 1..];
    let trimmed = rhs.trim_start();
    if trimmed.is_empty() {
        return Err(FrontendError::parse(line.number, col + eq + 2, "missing expression after '='"));
    }
    Ok((trimmed, col + eq + 1 + (rhs.len() - trimmed.len())))
}

struct Builder {
    name: Option<String>,
    dim: Option<usize>,
    parametric: bool,
    dim_override: Option<usize>,
    ctx: Option<Context>,
    table_label: Option<String>,
    star_lines: Vec<(usize, usize, String)>,
    hodge_line: Option<usize>,
    lagrangian: Option<Value>,
    theta: Option<Value>,
    killings: Vec<KillingDecl>,
    onshell: Vec<(JetCoordinate, ScalarExpr)>,
    table: Option<HodgeTable>,
    finalized: bool,
}

impl Builder {
    fn ctx(&mut self, line: &Line) -> Result<&mut Context> {
        self.ctx
            .as_mut()
            .ok_or_else(|| FrontendError::parse(line.number, 1, "'dim' must come first"))
    }

    fn declare(&mut self, line: &Line, name: &str, underscores: bool) -> Result<()> {
        if !valid_name(name, underscores) {
            return Err(FrontendError::parse(line.number, line.rest_col + 1, format!("invalid name '{name}'")));
        }
        if self.ctx(line)?.is_declared(name) {
            return Err(FrontendError::parse(line.number, line.rest_col + 1, format!("'{name}' is already declared")));
        }
        Ok(())
    }

    /// Builds the Hodge table once all `star` lines have been read.
    fn finalize(&mut self, line: &Line) -> Result<()> {
        if self.finalized {
            return Ok(());
        }
        self.finalized = true;
        let dim = self.ctx(line)?.dim;
        let Some(label) = self.table_label.clone() else {
            return Ok(());
        };
        let mut entries = Vec::new();
        for (number, col, text) in self.star_lines.clone() {
            let ctx = self.ctx.as_ref().unwrap();
            let at = |c: usize, m: &str| FrontendError::parse(number, c, m.to_string());
            let (lhs, rhs) = text.split_once('=').ok_or_else(|| at(col + 1, "expected '='"))?;
            let rhs_col = col + lhs.len() + 1 + (rhs.len() - rhs.trim_start().len());
            let src = parse_form(lhs, ctx).map_err(|e| e.at_line(number, col))?;
            let img = parse_form(rhs, ctx).map_err(|e| e.at_line(number, rhs_col))?;
            let (s_neg, s) = signed_monomial(&src).ok_or_else(|| at(col + 1, "expected a basis monomial"))?;
            let (i_neg, i) = signed_monomial(&img).ok_or_else(|| at(rhs_col + 1, "expected a signed basis monomial"))?;
            if s_neg {
                return Err(at(col + 1, "source monomial must be positive"));
            }
            entries.push((s, i_neg, i));
        }
        let table = HodgeTable::new(dim, &label, entries)
            .map_err(|e| FrontendError::parse(self.hodge_line.unwrap_or(line.number), 1, e.to_string()))?;
        self.ctx.as_mut().unwrap().hodge = Some(HodgeMode::Table(table.clone()));
        self.table = Some(table);
        Ok(())
    }

    fn eval(&mut self, line: &Line, text: &str, col: usize) -> Result<Value> {
        self.finalize(line)?;
        let ctx = self.ctx(line)?;
        if ctx.hodge.is_none() {
            return Err(FrontendError::parse(line.number, 1, "'hodge' must be declared before expressions"));
        }
        eval_str(text, ctx).map_err(|e| e.at_line(line.number, col))
    }

    fn scalar(&mut self, line: &Line, text: &str, col: usize) -> Result<ScalarExpr> {
        match self.eval(line, text, col)? {
            Value::Form(f) => as_scalar(&f),
            _ => None,
        }
        .ok_or_else(|| FrontendError::parse(line.number, col + 1, "expected a 0-form"))
    }

    fn handle(&mut self, line: &Line) -> Result<()> {
        let bad = |m: String| FrontendError::parse(line.number, line.rest_col + 1, m);
        match line.keyword {
            "scenario" => {
                if !valid_name(line.rest.replace('-', "_").as_str(), true) {
                    return Err(bad(format!("invalid scenario name '{}'", line.rest)));
                }
                self.name = Some(line.rest.to_string());
            }
            "dim" => {
                if self.dim.is_some() {
                    return Err(bad("duplicate 'dim'".into()));
                }
                let mut parts = line.rest.split_whitespace();
                let n: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .filter(|&n| (1..=8).contains(&n))
                    .ok_or_else(|| bad("expected a dimension between 1 and 8".into()))?;
                self.parametric = match parts.next() {
                    None => false,
                    Some("parametric") => true,
                    Some(other) => return Err(bad(format!("unexpected '{other}'"))),
                };
                let n = match self.dim_override {
                    Some(m) if self.parametric => {
                        if !(1..=8).contains(&m) {
                            return Err(FrontendError::Usage(format!("dimension {m} is outside 1..=8")));
                        }
                        m
                    }
                    Some(m) if m != n => {
                        return Err(FrontendError::Usage(format!(
                            "scenario has fixed dimension {n}, cannot use --dim={m}"
                        )))
                    }
                    _ => n,
                };
                self.dim = Some(n);
                self.ctx = Some(Context::new(n));
            }
            "coords" => {
                let names: Vec<String> = line.rest.split_whitespace().map(String::from).collect();
                let overridden = self.parametric && self.dim_override.is_some();
                let ctx = self.ctx(line)?;
                if names.len() != ctx.dim {
                    if overridden {
                        return Ok(());
                    }
                    return Err(bad(format!("expected {} coordinate names", ctx.dim)));
                }
                if names.iter().any(|n| !valid_name(n, false)) {
                    return Err(bad("invalid coordinate name".into()));
                }
                ctx.coords = names;
            }
            "hodge" => {
                self.ctx(line)?;
                if self.hodge_line.is_some() {
                    return Err(bad("duplicate 'hodge'".into()));
                }
                self.hodge_line = Some(line.number);
                let (mode, label) = line.rest.split_once(' ').unwrap_or((line.rest, ""));
                match mode {
                    "abstract" => {
                        let dim = self.ctx(line)?.dim;
                        self.ctx(line)?.hodge = Some(HodgeMode::Abstract(dim));
                    }
                    "table" => self.table_label = Some(label.trim().to_string()),
                    other => return Err(bad(format!("unknown hodge mode '{other}' (table, abstract)"))),
                }
            }
            "star" => {
                if self.table_label.is_none() || self.finalized {
                    return Err(bad("'star' entries belong right after 'hodge table'".into()));
                }
                self.star_lines.push((line.number, line.rest_col, line.rest.to_string()));
            }
            "gauge" => {
                self.ctx(line)?.gauge = true;
            }
            "field" => {
                let parts: Vec<&str> = line.rest.split_whitespace().collect();
                match parts.as_slice() {
                    [name] | [name, "real"] => {
                        self.declare(line, name, false)?;
                        let ctx = self.ctx(line)?;
                        ctx.fields.insert(FieldSymbol::real(name));
                        ctx.field_decls.push(name.to_string());
                    }
                    [name, "complex", conj] => {
                        self.declare(line, name, false)?;
                        self.declare(line, conj, false)?;
                        if name == conj {
                            return Err(bad("a complex field needs a distinct conjugate".into()));
                        }
                        let ctx = self.ctx(line)?;
                        ctx.fields.insert(FieldSymbol::complex(name, conj));
                        ctx.fields.insert(FieldSymbol::complex(conj, name));
                        ctx.field_decls.push(name.to_string());
                    }
                    _ => return Err(bad("expected 'field NAME [real]' or 'field NAME complex CONJ'".into())),
                }
            }
            "const" => {
                for name in line.rest.split_whitespace() {
                    self.declare(line, name, true)?;
                    self.ctx(line)?.constants.push(name.to_string());
                }
            }
            "func" => {
                let (name, args) = line
                    .rest
                    .split_once('(')
                    .ok_or_else(|| bad("expected 'func NAME(args)'".into()))?;
                let name = name.trim();
                self.declare(line, name, false)?;
                let args = args
                    .trim_end()
                    .strip_suffix(')')
                    .ok_or_else(|| bad("expected ')'".into()))?;
                let ctx = self.ctx(line)?;
                let mut vars = Vec::new();
                for a in args.split(',').map(str::trim).filter(|a| !a.is_empty()) {
                    let v = if let Some(u) = ctx.parse_jet(a) {
                        Var::Jet(u)
                    } else if let Some(d) = ctx.coords.iter().position(|c| c == a) {
                        Var::Coord(d as Direction)
                    } else if ctx.is_constant(a) {
                        Var::constant(a)
                    } else {
                        return Err(bad(format!("unknown argument '{a}'")));
                    };
                    vars.push(v);
                }
                ctx.funcs.insert(name.to_string(), vars);
                ctx.func_order.push(name.to_string());
            }
            "L" | "theta" => {
                let (text, col) = rhs_of(line, line.rest, line.rest_col)?;
                let v = self.eval(line, text, col)?;
                let slot = if line.keyword == "L" { &mut self.lagrangian } else { &mut self.theta };
                if slot.is_some() {
                    return Err(FrontendError::parse(line.number, 1, format!("duplicate '{}'", line.keyword)));
                }
                *slot = Some(v);
            }
            "killing" => {
                if !valid_name(&line.rest.replace('-', "_"), true) {
                    return Err(bad(format!("invalid killing field name '{}'", line.rest)));
                }
                if self.killings.iter().any(|k| k.name == line.rest) {
                    return Err(bad(format!("duplicate killing field '{}'", line.rest)));
                }
                self.killings.push(KillingDecl {
                    name: line.rest.to_string(),
                    contractions: Vec::new(),
                    conjugate: false,
                });
            }
            "contract" => {
                if self.killings.is_empty() {
                    return Err(FrontendError::parse(line.number, 1, "'contract' outside a killing block"));
                }
                let (target, _) = line.rest.split_once('=').ok_or_else(|| bad("expected '='".into()))?;
                let target = target.trim();
                let (text, col) = rhs_of(line, line.rest, line.rest_col)?;
                let c = self.contraction(line, target, text, col)?;
                let decl = self.killings.last_mut().unwrap();
                if decl.contractions.iter().any(|d| same_target(d, &c)) {
                    return Err(bad(format!("duplicate contraction for {target}")));
                }
                decl.contractions.push(c);
            }
            "conjugate" => match self.killings.last_mut() {
                Some(k) => k.conjugate = true,
                None => return Err(FrontendError::parse(line.number, 1, "'conjugate' outside a killing block")),
            },
            "onshell" => {
                let (lhs, _) = line.rest.split_once('=').ok_or_else(|| bad("expected '='".into()))?;
                let u = self
                    .ctx(line)?
                    .parse_jet(lhs.trim())
                    .ok_or_else(|| bad(format!("'{}' is not a jet coordinate", lhs.trim())))?;
                let (text, col) = rhs_of(line, line.rest, line.rest_col)?;
                let v = self.scalar(line, text, col)?;
                self.onshell.push((u, v));
            }
            other => {
                return Err(FrontendError::parse(line.number, 1, format!("unknown keyword '{other}'")));
            }
        }
        Ok(())
    }

    fn contraction(&mut self, line: &Line, target: &str, text: &str, col: usize) -> Result<Contraction> {
        let bad = |m: String| FrontendError::parse(line.number, line.rest_col + 1, m);
        if let Some(c) = target.strip_prefix("dx[").and_then(|s| s.strip_suffix(']')) {
            let d = self
                .ctx(line)?
                .coord_index(c.trim())
                .ok_or_else(|| bad(format!("unknown coordinate '{c}'")))?;
            return Ok(Contraction::Horizontal(d, self.scalar(line, text, col)?));
        }
        let inner = target
            .strip_prefix("del(")
            .and_then(|s| s.strip_suffix(')'))
            .map(str::trim)
            .ok_or_else(|| bad(format!("cannot contract into '{target}'")))?;
        if inner == "Amat" && self.ctx(line)?.gauge {
            let m = match self.eval(line, text, col)? {
                Value::Matrix(m) => m,
                _ => return Err(bad("expected a matrix-valued 0-form".into())),
            };
            return gauge_scale(&m, self.ctx(line)?.dim)
                .map(Contraction::Gauge)
                .ok_or_else(|| bad("gauge contraction must be a multiple of -(d(Xi) + Amat^Xi - Xi^Amat)".into()));
        }
        if !self.ctx(line)?.fields.contains(inner) {
            return Err(bad(format!("'{inner}' is not a field")));
        }
        Ok(Contraction::Vertical(inner.to_string(), self.scalar(line, text, col)?))
    }
}

fn same_target(a: &Contraction, b: &Contraction) -> bool {
    match (a, b) {
        (Contraction::Horizontal(x, _), Contraction::Horizontal(y, _)) => x == y,
        (Contraction::Vertical(x, _), Contraction::Vertical(y, _)) => x == y,
        (Contraction::Gauge(_), Contraction::Gauge(_)) => true,
        _ => false,
    }
}

fn gauge_scale(m: &MatrixForm, dim: usize) -> Option<Coeff> {
    let (_, c) = m.terms().find(|(w, _)| w.as_slice() == [MatrixAtom::DiffGauge])?;
    let s = -c;
    (covariant_gauge(dim).scale(&-&s) == *m).then_some(s)
}

fn signed_monomial(f: &Form) -> Option<(bool, Vec<Direction>)> {
    if f.len() != 1 {
        return None;
    }
    let (gens, c) = f.terms().next()?;
    let c = c.as_constant()?;
    let negative = if c.is_one() {
        false
    } else if (-&c).is_one() {
        true
    } else {
        return None;
    };
    let dirs = gens
        .iter()
        .map(|g| match g {
            Generator::Horizontal(d) => Some(*d),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()?;
    Some((negative, dirs))
}

/// Parses a scenario file. `dim_override` replaces the dimension of a
/// `parametric` scenario and must agree with a fixed one.
pub fn parse_scenario(text: &str, dim_override: Option<usize>) -> Result<ScenarioDef> {
    let mut b = Builder {
        name: None,
        dim: None,
        parametric: false,
        dim_override,
        ctx: None,
        table_label: None,
        star_lines: Vec::new(),
        hodge_line: None,
        lagrangian: None,
        theta: None,
        killings: Vec::new(),
        onshell: Vec::new(),
        table: None,
        finalized: false,
    };
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        last = k + 1;
        if let Some(line) = split_line(k + 1, raw) {
            b.handle(&line)?;
        }
    }
    let end = |m: &str| FrontendError::parse(last.max(1), 1, m.to_string());
    let name = b.name.clone().ok_or_else(|| end("missing 'scenario NAME'"))?;
    let ctx = b.ctx.clone().ok_or_else(|| end("missing 'dim'"))?;
    let fake = Line {
        number: last.max(1),
        keyword: "",
        rest: "",
        rest_col: 0,
    };
    b.finalize(&fake)?;
    let ctx = Context {
        hodge: b.ctx.as_ref().and_then(|c| c.hodge.clone()),
        ..ctx
    };
    if ctx.hodge.is_none() {
        return Err(end("missing 'hodge'"));
    }
    if ctx.gauge && !matches!(ctx.hodge, Some(HodgeMode::Abstract(_))) {
        return Err(end("gauge scenarios use 'hodge abstract'"));
    }
    let lagrangian = b.lagrangian.take().ok_or_else(|| end("missing 'L = ...'"))?;
    let theta = match b.theta.take() {
        Some(t) => t,
        None if ctx.gauge => Value::Trace(TraceForm::zero(ctx.dim)),
        None => Value::Form(Form::zero(ctx.dim)),
    };
    Ok(ScenarioDef {
        name,
        ctx,
        parametric: b.parametric,
        table: b.table,
        lagrangian,
        theta,
        killings: b.killings,
        onshell: b.onshell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "\
scenario tiny
dim 1
hodge table
star 1 = dx[t]
star dx[t] = 1
field q
L = 1/2*q_t**2*dx[t]   # free particle
theta = q_t*del(q)
killing time
  contract dx[t] = 1
  contract del(q) = -q_t
";

    #[test]
    fn round_trip() {
        let def = parse_scenario(TINY, None).unwrap();
        let text = def.to_text();
        let again = parse_scenario(&text, None).unwrap();
        assert_eq!(again.to_text(), text);
        assert_eq!(again.lagrangian, def.lagrangian);
        assert_eq!(again.killings, def.killings);
    }

    #[test]
    fn errors_point_at_line_and_column() {
        let broken = TINY.replace("theta = q_t*del(q)", "theta = q_t*del(r)");
        match parse_scenario(&broken, None) {
            Err(FrontendError::Parse { line, column, .. }) => {
                assert_eq!(line, 8);
                assert_eq!(column, 17);
            }
            other => panic!("{other:?}"),
        }
        let missing = TINY.replace("star dx[t] = 1\n", "");
        assert!(matches!(parse_scenario(&missing, None), Err(FrontendError::Parse { .. })));
    }

    #[test]
    fn fixed_dimension_rejects_override() {
        assert!(matches!(parse_scenario(TINY, Some(3)), Err(FrontendError::Usage(_))));
        assert!(parse_scenario(TINY, Some(1)).is_ok());
    }
}
