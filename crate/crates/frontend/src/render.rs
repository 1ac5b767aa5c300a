//! Plain, LaTeX and AST renderings of canonical values.
//!
//! Plain text and the AST both read back to the identical value.

use serde_json::{json, Map, Value as Json};
use varcomplex_core::gauge::{MatrixAtom, MatrixForm, TraceForm};
use varcomplex_core::{Coeff, Form, FuncApp, Generator, JetCoordinate, Monomial, ScalarExpr, Var};

use crate::context::Context;
use crate::error::{FrontendError, Result};
use crate::expr::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Latex,
    Ast,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plain" => Ok(Format::Plain),
            "latex" => Ok(Format::Latex),
            "ast" => Ok(Format::Ast),
            other => Err(format!("unknown format '{other}' (plain, latex, ast)")),
        }
    }
}

pub fn render(v: &Value, format: Format, ctx: &Context) -> String {
    match format {
        Format::Plain => plain(v, ctx),
        Format::Latex => latex(v, ctx),
        Format::Ast => serde_json::to_string(&ast(v)).expect("json"),
    }
}

pub fn render_form(f: &Form, format: Format, ctx: &Context) -> String {
    render(&Value::Form(f.clone()), format, ctx)
}

/// One rendered summand: sign plus body.
struct Piece {
    negative: bool,
    body: String,
}

fn join(pieces: Vec<Piece>) -> String {
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, p) in pieces.into_iter().enumerate() {
        match (k, p.negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&p.body);
    }
    out
}

struct Style {
    mul: &'static str,
    wedge: &'static str,
}

const PLAIN: Style = Style { mul: "*", wedge: "^" };
const LATEX: Style = Style { mul: " ", wedge: " \\wedge " };

trait Names {
    fn var(&self, v: &Var) -> String;
    fn coeff(&self, c: &Coeff) -> String;
    fn pow(&self, base: String, k: u32) -> String;
    fn paren(&self, s: String) -> String;
}

struct PlainNames<'a>(&'a Context);
struct LatexNames<'a>(&'a Context);

impl Names for PlainNames<'_> {
    fn var(&self, v: &Var) -> String {
        self.0.var_name(v)
    }
    fn coeff(&self, c: &Coeff) -> String {
        c.to_string()
    }
    fn pow(&self, base: String, k: u32) -> String {
        format!("{base}**{k}")
    }
    fn paren(&self, s: String) -> String {
        format!("({s})")
    }
}

fn scalar_pieces(s: &ScalarExpr, names: &dyn Names, style: &Style) -> Vec<Piece> {
    s.terms()
        .map(|(m, c)| {
            let negative = c.is_negative_leading();
            let c = if negative { -c } else { c.clone() };
            let mono = monomial(m, names, style);
            let body = match (c.is_one(), mono.is_empty()) {
                (_, true) => names.coeff(&c),
                (true, false) => mono,
                (false, false) => format!("{}{}{}", names.coeff(&c), style.mul, mono),
            };
            Piece { negative, body }
        })
        .collect()
}

fn monomial(m: &Monomial, names: &dyn Names, style: &Style) -> String {
    m.factors()
        .iter()
        .map(|(v, k)| {
            let base = names.var(v);
            if *k == 1 {
                base
            } else {
                names.pow(base, *k)
            }
        })
        .collect::<Vec<_>>()
        .join(style.mul)
}

/// `coefficient * body` where the coefficient may be a sum.
fn scaled(coeff: &ScalarExpr, body: String, names: &dyn Names, style: &Style) -> Piece {
    let mut pieces = scalar_pieces(coeff, names, style);
    if pieces.len() == 1 {
        let p = pieces.pop().unwrap();
        if body.is_empty() {
            return p;
        }
        let body = if p.body == "1" { body } else { format!("{}{}{}", p.body, style.mul, body) };
        return Piece {
            negative: p.negative,
            body,
        };
    }
    if body.is_empty() {
        return Piece {
            negative: false,
            body: join(pieces),
        };
    }
    let sum = names.paren(join(pieces));
    Piece {
        negative: false,
        body: format!("{sum}{}{body}", style.mul),
    }
}

fn plain(v: &Value, ctx: &Context) -> String {
    let names = PlainNames(ctx);
    match v {
        Value::Form(f) => join(
            f.terms()
                .map(|(gens, c)| {
                    let body: Vec<String> = gens.iter().map(|g| plain_generator(g, ctx)).collect();
                    scaled(c, body.join("^"), &names, &PLAIN)
                })
                .collect(),
        ),
        Value::Matrix(m) => join(words(m.terms(), &names, &PLAIN, plain_word)),
        Value::Trace(t) => join(words(t.terms(), &names, &PLAIN, |w| format!("Tr({})", plain_word(w)))),
    }
}

fn words<'a>(
    terms: impl Iterator<Item = (&'a Vec<MatrixAtom>, &'a Coeff)>,
    names: &dyn Names,
    style: &Style,
    word: impl Fn(&[MatrixAtom]) -> String,
) -> Vec<Piece> {
    terms
        .map(|(w, c)| scaled(&ScalarExpr::constant(c.clone()), word(w), names, style))
        .collect()
}

fn plain_generator(g: &Generator, ctx: &Context) -> String {
    match g {
        Generator::Horizontal(d) => format!("dx[{}]", ctx.coord_name(*d)),
        Generator::Vertical(u) => format!("del({})", ctx.jet_name(u)),
        Generator::Star(h) if h.is_empty() => "star(1)".into(),
        Generator::Star(h) => {
            let inner: Vec<String> = h.iter().map(|d| format!("dx[{}]", ctx.coord_name(*d))).collect();
            format!("star({})", inner.join("^"))
        }
    }
}

fn plain_word(w: &[MatrixAtom]) -> String {
    w.iter().map(plain_atom).collect::<Vec<_>>().join("^")
}

fn plain_atom(a: &MatrixAtom) -> String {
    match a {
        MatrixAtom::Connection => "Amat".into(),
        MatrixAtom::VarConnection => "del(Amat)".into(),
        MatrixAtom::DiffConnection => "d(Amat)".into(),
        MatrixAtom::VarDiffConnection => "del(d(Amat))".into(),
        MatrixAtom::Gauge => "Xi".into(),
        MatrixAtom::DiffGauge => "d(Xi)".into(),
        MatrixAtom::Star { inner, d: false } => format!("star({})", plain_word(inner)),
        MatrixAtom::Star { inner, d: true } => format!("d(star({}))", plain_word(inner)),
    }
}

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda", "mu", "nu",
    "xi", "pi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega", "Gamma", "Delta", "Theta", "Lambda", "Xi",
    "Pi", "Sigma", "Phi", "Psi", "Omega",
];

fn latex_name(name: &str) -> String {
    if GREEK.contains(&name) {
        return format!("\\{name}");
    }
    if let Some(base) = name.strip_suffix("bar").filter(|b| !b.is_empty()) {
        return format!("\\bar{{{}}}", latex_name(base));
    }
    let digits = name.trim_start_matches(|c: char| !c.is_ascii_digit());
    if !digits.is_empty() && digits.len() < name.len() && digits.chars().all(|c| c.is_ascii_digit()) {
        let stem = &name[..name.len() - digits.len()];
        return format!("{}_{{{digits}}}", latex_name(stem));
    }
    if name.chars().count() > 1 {
        format!("\\mathrm{{{name}}}")
    } else {
        name.to_string()
    }
}

fn latex_rational(s: &str) -> String {
    match s.split_once('/') {
        Some((n, d)) => match n.strip_prefix('-') {
            Some(n) => format!("-\\frac{{{n}}}{{{d}}}"),
            None => format!("\\frac{{{n}}}{{{d}}}"),
        },
        None => s.to_string(),
    }
}

impl LatexNames<'_> {
    fn jet(&self, u: &JetCoordinate) -> String {
        let base = latex_name(&u.field);
        if u.order() == 0 {
            return base;
        }
        let idx: Vec<String> = u.index().iter().map(|d| latex_name(&self.0.coord_name(*d))).collect();
        let sep = if self.0.coords.iter().all(|c| c.chars().count() == 1) { "" } else { " " };
        format!("{base}_{{{}}}", idx.join(sep))
    }

    fn func(&self, f: &FuncApp) -> String {
        let args: Vec<String> = f.args.iter().map(|a| self.var(a)).collect();
        let head = latex_name(&f.name);
        let derivs: Vec<String> = f.derivs().iter().map(|p| (p + 1).to_string()).collect();
        if derivs.is_empty() {
            format!("{head}({})", args.join(", "))
        } else {
            format!("\\partial_{{{}}}{head}({})", derivs.join(""), args.join(", "))
        }
    }
}

impl Names for LatexNames<'_> {
    fn var(&self, v: &Var) -> String {
        match v {
            Var::Jet(u) => self.jet(u),
            Var::Const(c) => latex_name(c),
            Var::Coord(d) => latex_name(&self.0.coord_name(*d)),
            Var::Func(f) => self.func(f),
        }
    }
    fn coeff(&self, c: &Coeff) -> String {
        let re = latex_rational(&c.re_string());
        let im = latex_rational(&c.im_string());
        match (c.re_string() == "0", c.im_string() == "0") {
            (_, true) => re,
            (true, false) => match im.as_str() {
                "1" => "i".into(),
                "-1" => "-i".into(),
                _ => format!("{im} i"),
            },
            (false, false) => match im.strip_prefix('-') {
                Some(m) => format!("\\left({re} - {m} i\\right)"),
                None => format!("\\left({re} + {im} i\\right)"),
            },
        }
    }
    fn pow(&self, base: String, k: u32) -> String {
        format!("{base}^{{{k}}}")
    }
    fn paren(&self, s: String) -> String {
        format!("\\left({s}\\right)")
    }
}

fn latex(v: &Value, ctx: &Context) -> String {
    let names = LatexNames(ctx);
    let dx = |d: u8| format!("\\mathrm{{d}}{}", latex_name(&ctx.coord_name(d)));
    match v {
        Value::Form(f) => join(
            f.terms()
                .map(|(gens, c)| {
                    let body: Vec<String> = gens
                        .iter()
                        .map(|g| match g {
                            Generator::Horizontal(d) => dx(*d),
                            Generator::Vertical(u) => format!("\\delta {}", names.jet(u)),
                            Generator::Star(h) if h.is_empty() => "\\star 1".into(),
                            Generator::Star(h) => format!(
                                "\\star\\left({}\\right)",
                                h.iter().map(|d| dx(*d)).collect::<Vec<_>>().join(" \\wedge ")
                            ),
                        })
                        .collect();
                    scaled(c, body.join(LATEX.wedge), &names, &LATEX)
                })
                .collect(),
        ),
        Value::Matrix(m) => join(words(m.terms(), &names, &LATEX, latex_word)),
        Value::Trace(t) => join(words(t.terms(), &names, &LATEX, |w| {
            format!("\\operatorname{{Tr}}\\left({}\\right)", latex_word(w))
        })),
    }
}

fn latex_word(w: &[MatrixAtom]) -> String {
    w.iter()
        .map(|a| match a {
            MatrixAtom::Connection => "A".to_string(),
            MatrixAtom::VarConnection => "\\delta A".into(),
            MatrixAtom::DiffConnection => "\\mathrm{d}A".into(),
            MatrixAtom::VarDiffConnection => "\\delta\\mathrm{d}A".into(),
            MatrixAtom::Gauge => "\\Xi".into(),
            MatrixAtom::DiffGauge => "\\mathrm{d}\\Xi".into(),
            MatrixAtom::Star { inner, d: false } => format!("\\star\\left({}\\right)", latex_word(inner)),
            MatrixAtom::Star { inner, d: true } => format!("\\mathrm{{d}}\\star\\left({}\\right)", latex_word(inner)),
        })
        .collect::<Vec<_>>()
        .join(" \\wedge ")
}

fn coeff_json(c: &Coeff) -> (Json, Json) {
    (json!(c.re_string()), json!(c.im_string()))
}

fn var_json(v: &Var) -> Json {
    match v {
        Var::Jet(u) => json!({"jet": jet_json(u)}),
        Var::Const(c) => json!({"const": c.as_ref()}),
        Var::Coord(d) => json!({"coord": d}),
        Var::Func(f) => json!({"func": {
            "name": f.name.as_ref(),
            "args": f.args.iter().map(var_json).collect::<Vec<_>>(),
            "derivs": f.derivs(),
        }}),
    }
}

fn jet_json(u: &JetCoordinate) -> Json {
    json!({"field": u.field.as_ref(), "index": u.index()})
}

fn scalar_json(s: &ScalarExpr) -> Json {
    Json::Array(
        s.terms()
            .map(|(m, c)| {
                let (re, im) = coeff_json(c);
                json!({
                    "re": re,
                    "im": im,
                    "factors": m.factors().iter().map(|(v, k)| json!({"var": var_json(v), "pow": k})).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn atom_json(a: &MatrixAtom) -> Json {
    match a {
        MatrixAtom::Connection => json!("A"),
        MatrixAtom::VarConnection => json!("delA"),
        MatrixAtom::DiffConnection => json!("dA"),
        MatrixAtom::VarDiffConnection => json!("deldA"),
        MatrixAtom::Gauge => json!("Xi"),
        MatrixAtom::DiffGauge => json!("dXi"),
        MatrixAtom::Star { inner, d } => json!({"star": inner.iter().map(atom_json).collect::<Vec<_>>(), "d": d}),
    }
}

fn word_terms<'a>(dim: usize, terms: impl Iterator<Item = (&'a Vec<MatrixAtom>, &'a Coeff)>) -> Vec<Json> {
    terms
        .map(|(w, c)| {
            let b = varcomplex_core::gauge::word_bidegree(w, dim);
            let (re, im) = coeff_json(c);
            json!({
                "bidegree": [b.p, b.q],
                "re": re,
                "im": im,
                "word": w.iter().map(atom_json).collect::<Vec<_>>(),
            })
        })
        .collect()
}

/// Nested machine-readable structure with explicit bidegrees.
pub fn ast(v: &Value) -> Json {
    match v {
        Value::Form(f) => {
            let terms: Vec<Json> = f
                .terms()
                .map(|(gens, c)| {
                    let b = f.term_bidegree(gens);
                    json!({
                        "bidegree": [b.p, b.q],
                        "coefficient": scalar_json(c),
                        "wedge": gens.iter().map(|g| match g {
                            Generator::Horizontal(d) => json!({"dx": d}),
                            Generator::Vertical(u) => json!({"del": jet_json(u)}),
                            Generator::Star(h) => json!({"star": h}),
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({"type": "form", "dim": f.dim(), "terms": terms})
        }
        Value::Matrix(m) => json!({"type": "matrix", "dim": m.dim(), "terms": word_terms(m.dim(), m.terms())}),
        Value::Trace(t) => json!({"type": "trace", "dim": t.dim(), "terms": word_terms(t.dim(), t.terms())}),
    }
}

fn bad(msg: &str) -> FrontendError {
    FrontendError::parse(1, 1, format!("malformed AST: {msg}"))
}

fn get<'a>(o: &'a Json, key: &str) -> Result<&'a Json> {
    o.get(key).ok_or_else(|| bad(&format!("missing '{key}'")))
}

fn str_of<'a>(o: &'a Json, key: &str) -> Result<&'a str> {
    get(o, key)?.as_str().ok_or_else(|| bad(&format!("'{key}' is not a string")))
}

fn arr<'a>(o: &'a Json, key: &str) -> Result<&'a Vec<Json>> {
    get(o, key)?.as_array().ok_or_else(|| bad(&format!("'{key}' is not an array")))
}

fn small(j: &Json) -> Result<u8> {
    j.as_u64()
        .and_then(|k| u8::try_from(k).ok())
        .ok_or_else(|| bad("expected a small integer"))
}

fn coeff_from(o: &Json) -> Result<Coeff> {
    let re = Coeff::parse_rational(str_of(o, "re")?).ok_or_else(|| bad("bad rational"))?;
    let im = Coeff::parse_rational(str_of(o, "im")?).ok_or_else(|| bad("bad rational"))?;
    Ok(Coeff::new(re, im))
}

fn jet_from(o: &Json) -> Result<JetCoordinate> {
    let index: Vec<u8> = arr(o, "index")?.iter().map(small).collect::<Result<_>>()?;
    Ok(JetCoordinate::new(str_of(o, "field")?, &index))
}

fn var_from(o: &Json) -> Result<Var> {
    let m = o.as_object().ok_or_else(|| bad("variable is not an object"))?;
    let (k, v) = m.iter().next().ok_or_else(|| bad("empty variable"))?;
    match k.as_str() {
        "jet" => Ok(Var::Jet(jet_from(v)?)),
        "const" => Ok(Var::constant(v.as_str().ok_or_else(|| bad("const name"))?)),
        "coord" => Ok(Var::Coord(small(v)?)),
        "func" => {
            let args = arr(v, "args")?.iter().map(var_from).collect::<Result<Vec<_>>>()?;
            let derivs = arr(v, "derivs")?.iter().map(small).collect::<Result<Vec<_>>>()?;
            Ok(Var::Func(FuncApp::new(str_of(v, "name")?, args).with_derivs(derivs)))
        }
        other => Err(bad(&format!("unknown variable kind '{other}'"))),
    }
}

fn scalar_from(j: &Json) -> Result<ScalarExpr> {
    let terms = j.as_array().ok_or_else(|| bad("coefficient is not an array"))?;
    let mut out = ScalarExpr::zero();
    for t in terms {
        let factors = arr(t, "factors")?
            .iter()
            .map(|f| {
                let k = get(f, "pow")?.as_u64().ok_or_else(|| bad("pow"))? as u32;
                Ok((var_from(get(f, "var")?)?, k))
            })
            .collect::<Result<Vec<_>>>()?;
        out = out.add(&ScalarExpr::monomial(factors, coeff_from(t)?));
    }
    Ok(out)
}

fn atom_from(j: &Json) -> Result<MatrixAtom> {
    if let Some(s) = j.as_str() {
        return Ok(match s {
            "A" => MatrixAtom::Connection,
            "delA" => MatrixAtom::VarConnection,
            "dA" => MatrixAtom::DiffConnection,
            "deldA" => MatrixAtom::VarDiffConnection,
            "Xi" => MatrixAtom::Gauge,
            "dXi" => MatrixAtom::DiffGauge,
            other => return Err(bad(&format!("unknown atom '{other}'"))),
        });
    }
    let inner = arr(j, "star")?.iter().map(atom_from).collect::<Result<Vec<_>>>()?;
    let d = get(j, "d")?.as_bool().ok_or_else(|| bad("'d' is not a bool"))?;
    Ok(MatrixAtom::Star { inner, d })
}

/// Reads a structure produced by [`ast`] back into a canonical value.
pub fn from_ast(j: &Json) -> Result<Value> {
    let dim = get(j, "dim")?.as_u64().ok_or_else(|| bad("dim"))? as usize;
    let terms = arr(j, "terms")?;
    match str_of(j, "type")? {
        "form" => {
            let mut out = Form::zero(dim);
            for t in terms {
                let gens = arr(t, "wedge")?
                    .iter()
                    .map(|g| {
                        let m: &Map<String, Json> = g.as_object().ok_or_else(|| bad("generator"))?;
                        let (k, v) = m.iter().next().ok_or_else(|| bad("empty generator"))?;
                        match k.as_str() {
                            "dx" => Ok(Generator::Horizontal(small(v)?)),
                            "del" => Ok(Generator::Vertical(jet_from(v)?)),
                            "star" => Ok(Generator::Star(
                                v.as_array().ok_or_else(|| bad("star"))?.iter().map(small).collect::<Result<_>>()?,
                            )),
                            other => Err(bad(&format!("unknown generator '{other}'"))),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                if gens.iter().any(|g| matches!(g, Generator::Horizontal(d) if *d as usize >= dim)) {
                    return Err(bad("direction out of range"));
                }
                out = out.add(&Form::term(dim, scalar_from(get(t, "coefficient")?)?, gens))?;
            }
            Ok(Value::Form(out))
        }
        kind @ ("matrix" | "trace") => {
            let mut m = MatrixForm::zero(dim);
            let mut tr = TraceForm::zero(dim);
            for t in terms {
                let w = arr(t, "word")?.iter().map(atom_from).collect::<Result<Vec<_>>>()?;
                let c = coeff_from(t)?;
                m.push(w.clone(), c.clone());
                tr.push(w, c);
            }
            Ok(if kind == "matrix" { Value::Matrix(m) } else { Value::Trace(tr) })
        }
        other => Err(bad(&format!("unknown type '{other}'"))),
    }
}
