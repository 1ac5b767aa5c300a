//! Expression syntax: a recursive-descent parser producing [`Expr`] trees and
//! an evaluator that turns them into canonical forms.
//!
//! `+ -` bind loosest, then `* ^ /` (both `*` and `^` are the wedge product),
//! then unary minus, then `**` with an integer exponent. Operators such as
//! `d(..)`, `del(..)` and `star(..)` use call syntax.

use varcomplex_core::gauge::{self, MatrixForm, TraceForm};
use varcomplex_core::{hodge, Coeff, Form, FuncApp, ScalarExpr, Var};

use crate::context::Context;
use crate::error::{FrontendError, Result};
use crate::lexer::{tokenize, Tok, Token};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Wedge,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Num(String),
    Ident(String),
    Call {
        name: String,
        derivs: Vec<u8>,
        args: Vec<Expr>,
    },
    Dx(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub node: Node,
    pub column: usize,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn column(&self) -> usize {
        self.toks[self.pos].column
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(FrontendError::parse(1, self.column(), msg))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let column = self.bump().column;
            let rhs = self.term()?;
            lhs = Expr {
                node: Node::Bin(op, Box::new(lhs), Box::new(rhs)),
                column,
            };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star | Tok::Wedge => BinOp::Wedge,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            let column = self.bump().column;
            let rhs = self.unary()?;
            lhs = Expr {
                node: Node::Bin(op, Box::new(lhs), Box::new(rhs)),
                column,
            };
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            let column = self.bump().column;
            let inner = self.unary()?;
            return Ok(Expr {
                node: Node::Neg(Box::new(inner)),
                column,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Pow {
            return Ok(base);
        }
        let column = self.bump().column;
        match self.bump().tok {
            Tok::Num(n) => {
                let k: u32 = n
                    .parse()
                    .map_err(|_| FrontendError::parse(1, column, "exponent too large"))?;
                Ok(Expr {
                    node: Node::Pow(Box::new(base), k),
                    column,
                })
            }
            _ => Err(FrontendError::parse(1, column + 2, "expected an integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let column = self.column();
        match self.bump().tok {
            Tok::Num(n) => Ok(Expr {
                node: Node::Num(n),
                column,
            }),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => self.after_ident(name, column),
            other => Err(FrontendError::parse(
                1,
                column,
                format!("expected an expression, found {}", describe(&other)),
            )),
        }
    }

    fn after_ident(&mut self, name: String, column: usize) -> Result<Expr> {
        if name == "dx" && *self.peek() == Tok::LBracket {
            self.bump();
            let coord = match self.bump().tok {
                Tok::Ident(c) | Tok::Num(c) => c,
                _ => return self.error("expected a coordinate inside dx[..]"),
            };
            self.expect(Tok::RBracket, "']'")?;
            return Ok(Expr {
                node: Node::Dx(coord),
                column,
            });
        }
        let mut derivs = Vec::new();
        if *self.peek() == Tok::Quote {
            self.bump();
            self.expect(Tok::LBrace, "'{'")?;
            loop {
                let at = self.column();
                match self.bump().tok {
                    Tok::Num(n) => match n.parse::<u8>() {
                        Ok(k) if k >= 1 => derivs.push(k - 1),
                        _ => return Err(FrontendError::parse(1, at, "bad argument position")),
                    },
                    _ => return Err(FrontendError::parse(1, at, "expected an argument position")),
                }
                match self.bump().tok {
                    Tok::Comma => continue,
                    Tok::RBrace => break,
                    _ => return self.error("expected ',' or '}'"),
                }
            }
            if *self.peek() != Tok::LParen {
                return self.error("expected '(' after derivative positions");
            }
        }
        if *self.peek() != Tok::LParen {
            return Ok(Expr {
                node: Node::Ident(name),
                column,
            });
        }
        self.bump();
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                args.push(self.expr()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr {
            node: Node::Call { name, derivs, args },
            column,
        })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::End => "end of input".into(),
        other => format!("{other:?}"),
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}

/// The result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Form(Form),
    Matrix(MatrixForm),
    Trace(TraceForm),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Form(_) => "form",
            Value::Matrix(_) => "matrix-valued form",
            Value::Trace(_) => "trace",
        }
    }
}

fn as_constant(f: &Form) -> Option<Coeff> {
    if f.is_zero() {
        return Some(Coeff::zero());
    }
    if f.len() != 1 {
        return None;
    }
    let (gens, c) = f.terms().next()?;
    if gens.is_empty() {
        c.as_constant()
    } else {
        None
    }
}

pub fn as_scalar(f: &Form) -> Option<ScalarExpr> {
    let mut out = ScalarExpr::zero();
    for (gens, c) in f.terms() {
        if !gens.is_empty() {
            return None;
        }
        out = out.add(c);
    }
    Some(out)
}

fn integer(n: &str) -> Option<Coeff> {
    let r = Coeff::parse_rational(n)?;
    Some(Coeff::new(r, Coeff::zero().im))
}

pub struct Evaluator<'a> {
    pub ctx: &'a Context,
}

impl<'a> Evaluator<'a> {
    pub fn new(ctx: &'a Context) -> Self {
        Evaluator { ctx }
    }

    fn dim(&self) -> usize {
        self.ctx.dim
    }

    fn scalar(&self, s: ScalarExpr) -> Value {
        Value::Form(Form::scalar(self.dim(), s))
    }

    fn resolve_var(&self, name: &str) -> Option<Var> {
        if let Some(u) = self.ctx.parse_jet(name) {
            return Some(Var::Jet(u));
        }
        if self.ctx.is_constant(name) {
            return Some(Var::constant(name));
        }
        if let Some(d) = self.ctx.coords.iter().position(|c| c == name) {
            return Some(Var::Coord(d as u8));
        }
        self.ctx
            .funcs
            .get(name)
            .map(|args| Var::Func(FuncApp::new(name, args.clone())))
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        let at = |msg: String| FrontendError::parse(1, e.column, msg);
        let engine = |err: varcomplex_core::Error| FrontendError::parse(1, e.column, err.to_string());
        match &e.node {
            Node::Num(n) => integer(n)
                .map(|c| self.scalar(ScalarExpr::constant(c)))
                .ok_or_else(|| at(format!("bad number {n}"))),
            Node::Ident(name) => self.ident(name).ok_or_else(|| at(format!("unknown symbol '{name}'"))),
            Node::Dx(c) => {
                let dir = self
                    .ctx
                    .coord_index(c)
                    .ok_or_else(|| at(format!("unknown coordinate '{c}'")))?;
                Ok(Value::Form(Form::dx(self.dim(), dir).map_err(engine)?))
            }
            Node::Neg(inner) => Ok(match self.eval(inner)? {
                Value::Form(f) => Value::Form(f.neg()),
                Value::Matrix(m) => Value::Matrix(m.neg()),
                Value::Trace(t) => Value::Trace(t.neg()),
            }),
            Node::Pow(base, k) => match self.eval(base)? {
                Value::Form(f) => {
                    let mut out = Form::one(self.dim());
                    for _ in 0..*k {
                        out = out.wedge(&f).map_err(engine)?;
                    }
                    Ok(Value::Form(out))
                }
                other => Err(at(format!("cannot raise a {} to a power", other.kind()))),
            },
            Node::Bin(op, l, r) => {
                let (l, r) = (self.eval(l)?, self.eval(r)?);
                self.binary(op, l, r).map_err(|m| match m {
                    Failure::Msg(m) => at(m),
                    Failure::Engine(err) => engine(err),
                })
            }
            Node::Call { name, derivs, args } => self.call(name, derivs, args, e.column),
        }
    }

    fn ident(&self, name: &str) -> Option<Value> {
        let dim = self.dim();
        if name == "i" {
            return Some(self.scalar(ScalarExpr::constant(Coeff::i())));
        }
        if self.ctx.gauge {
            match name {
                "Amat" => return Some(Value::Matrix(MatrixForm::connection(dim))),
                "Xi" => return Some(Value::Matrix(MatrixForm::gauge(dim))),
                "F" => return Some(Value::Matrix(gauge::curvature(dim))),
                _ => {}
            }
        }
        self.resolve_var(name).map(|v| self.scalar(ScalarExpr::var(v)))
    }

    fn binary(&self, op: &BinOp, l: Value, r: Value) -> std::result::Result<Value, Failure> {
        use Value::*;
        let zero_form = |v: &Value| matches!(v, Form(f) if f.is_zero());
        match op {
            BinOp::Add | BinOp::Sub => {
                let sub = *op == BinOp::Sub;
                if zero_form(&r) {
                    return Ok(l);
                }
                if zero_form(&l) {
                    return self.binary(&BinOp::Wedge, Form(varcomplex_core::Form::scalar(self.dim(), ScalarExpr::int(if sub { -1 } else { 1 }))), r);
                }
                Ok(match (l, r) {
                    (Form(a), Form(b)) => Form(if sub { a.sub(&b)? } else { a.add(&b)? }),
                    (Matrix(a), Matrix(b)) => Matrix(if sub { a.sub(&b)? } else { a.add(&b)? }),
                    (Trace(a), Trace(b)) => Trace(if sub { a.sub(&b)? } else { a.add(&b)? }),
                    (a, b) => return Err(Failure::Msg(format!("cannot add a {} and a {}", a.kind(), b.kind()))),
                })
            }
            BinOp::Wedge => Ok(match (l, r) {
                (Form(a), Form(b)) => Form(a.wedge(&b)?),
                (Matrix(a), Matrix(b)) => Matrix(a.wedge(&b)?),
                (Form(c), Matrix(m)) | (Matrix(m), Form(c)) => {
                    Matrix(m.scale(&as_constant(&c).ok_or_else(|| Failure::Msg("matrix forms scale by constants only".into()))?))
                }
                (Form(c), Trace(t)) | (Trace(t), Form(c)) => {
                    Trace(t.scale(&as_constant(&c).ok_or_else(|| Failure::Msg("traces scale by constants only".into()))?))
                }
                (a, b) => return Err(Failure::Msg(format!("cannot multiply a {} and a {}", a.kind(), b.kind()))),
            }),
            BinOp::Div => {
                let c = match &r {
                    Form(f) => as_constant(f),
                    _ => None,
                }
                .and_then(|c| c.recip())
                .ok_or_else(|| Failure::Msg("division by something other than a nonzero number".into()))?;
                Ok(match l {
                    Form(f) => Form(f.scale_coeff(&c)),
                    Matrix(m) => Matrix(m.scale(&c)),
                    Trace(t) => Trace(t.scale(&c)),
                })
            }
        }
    }

    fn call(&self, name: &str, derivs: &[u8], args: &[Expr], column: usize) -> Result<Value> {
        let at = |msg: String| FrontendError::parse(1, column, msg);
        let engine = |err: varcomplex_core::Error| FrontendError::parse(1, column, err.to_string());
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(at(format!("{name} takes {k} argument(s), found {}", args.len())))
            }
        };
        if let Some(declared) = self.ctx.funcs.get(name) {
            if args.len() != declared.len() {
                return Err(at(format!("{name} takes {} argument(s)", declared.len())));
            }
            let mut vars = Vec::new();
            for a in args {
                let v = match &a.node {
                    Node::Ident(n) => self.resolve_var(n),
                    Node::Call { .. } => match self.eval(a)? {
                        Value::Form(f) => as_scalar(&f).and_then(|s| single_var(&s)),
                        _ => None,
                    },
                    _ => None,
                };
                vars.push(v.ok_or_else(|| FrontendError::parse(1, a.column, "function arguments must be variables"))?);
            }
            if derivs.iter().any(|&p| p as usize >= vars.len()) {
                return Err(at("derivative position out of range".into()));
            }
            let f = FuncApp::new(name, vars).with_derivs(derivs.to_vec());
            return Ok(self.scalar(ScalarExpr::var(Var::Func(f))));
        }
        if !derivs.is_empty() {
            return Err(at(format!("'{name}' is not a declared function")));
        }
        match name {
            "d" | "del" | "D" => {
                arity(1)?;
                let v = self.eval(&args[0])?;
                Ok(match (name, v) {
                    ("d", Value::Form(f)) => Value::Form(varcomplex_core::horizontal_diff(&f)),
                    ("del", Value::Form(f)) => Value::Form(varcomplex_core::vertical_diff(&f)),
                    (_, Value::Form(f)) => Value::Form(varcomplex_core::total_diff(&f)),
                    ("d", Value::Matrix(m)) => Value::Matrix(m.horizontal_diff()),
                    ("del", Value::Matrix(m)) => Value::Matrix(m.vertical_diff()),
                    (_, Value::Matrix(m)) => Value::Matrix(m.total_diff()),
                    ("d", Value::Trace(t)) => Value::Trace(t.horizontal_diff()),
                    ("del", Value::Trace(t)) => Value::Trace(t.vertical_diff()),
                    (_, Value::Trace(t)) => Value::Trace(t.total_diff()),
                })
            }
            "star" => {
                arity(1)?;
                match self.eval(&args[0])? {
                    Value::Form(f) => {
                        let mode = self
                            .ctx
                            .hodge
                            .as_ref()
                            .ok_or_else(|| at("no Hodge star is available here".into()))?;
                        Ok(Value::Form(hodge::star(&f, mode).map_err(engine)?))
                    }
                    Value::Matrix(m) => Ok(Value::Matrix(gauge::star(&m).map_err(engine)?)),
                    Value::Trace(_) => Err(at("star of a trace is not supported".into())),
                }
            }
            "Tr" => {
                arity(1)?;
                match self.eval(&args[0])? {
                    Value::Matrix(m) => Ok(Value::Trace(m.trace())),
                    other => Err(at(format!("Tr expects a matrix-valued form, found a {}", other.kind()))),
                }
            }
            "cov" => {
                arity(1)?;
                match self.eval(&args[0])? {
                    Value::Matrix(m) => Ok(Value::Matrix(gauge::covariant_derivative(&m).map_err(engine)?)),
                    other => Err(at(format!("cov expects a matrix-valued form, found a {}", other.kind()))),
                }
            }
            "pd" | "td" => {
                arity(2)?;
                let f = match self.eval(&args[0])? {
                    Value::Form(f) => as_scalar(&f),
                    _ => None,
                }
                .ok_or_else(|| FrontendError::parse(1, args[0].column, format!("{name} expects a 0-form")))?;
                let target = match &args[1].node {
                    Node::Ident(n) => Some(n.as_str()),
                    _ => None,
                }
                .ok_or_else(|| FrontendError::parse(1, args[1].column, "expected a variable name"))?;
                if name == "td" {
                    let dir = self
                        .ctx
                        .coord_index(target)
                        .ok_or_else(|| FrontendError::parse(1, args[1].column, format!("unknown coordinate '{target}'")))?;
                    Ok(self.scalar(f.total_derivative(dir)))
                } else {
                    let v = self
                        .resolve_var(target)
                        .ok_or_else(|| FrontendError::parse(1, args[1].column, format!("unknown variable '{target}'")))?;
                    Ok(self.scalar(f.partial(&v)))
                }
            }
            _ => Err(at(format!("unknown operator '{name}'"))),
        }
    }
}

fn single_var(s: &ScalarExpr) -> Option<Var> {
    let mut terms = s.terms();
    let (m, c) = terms.next()?;
    if terms.next().is_some() || !c.is_one() {
        return None;
    }
    match m.factors() {
        [(v, 1)] => Some(v.clone()),
        _ => None,
    }
}

enum Failure {
    Msg(String),
    Engine(varcomplex_core::Error),
}

impl From<varcomplex_core::Error> for Failure {
    fn from(e: varcomplex_core::Error) -> Self {
        Failure::Engine(e)
    }
}

pub fn eval_str(src: &str, ctx: &Context) -> Result<Value> {
    Evaluator::new(ctx).eval(&parse_expr(src)?)
}

pub fn parse_form(src: &str, ctx: &Context) -> Result<Form> {
    match eval_str(src, ctx)? {
        Value::Form(f) => Ok(f),
        other => Err(FrontendError::parse(1, 1, format!("expected a form, found a {}", other.kind()))),
    }
}

pub fn parse_trace(src: &str, ctx: &Context) -> Result<TraceForm> {
    match eval_str(src, ctx)? {
        Value::Trace(t) => Ok(t),
        Value::Form(f) if f.is_zero() => Ok(TraceForm::zero(ctx.dim)),
        other => Err(FrontendError::parse(1, 1, format!("expected a trace, found a {}", other.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use varcomplex_core::{FieldSymbol, HodgeMode, HodgeTable, JetCoordinate};

    fn ctx() -> Context {
        let mut c = Context::new(2);
        c.fields.insert(FieldSymbol::complex("phi", "phibar"));
        c.constants.push("mu".into());
        c.hodge = Some(HodgeMode::Table(HodgeTable::minkowski2d()));
        c
    }

    #[test]
    fn precedence() {
        let c = ctx();
        let a = parse_form("1 + 2*3", &c).unwrap();
        assert_eq!(a, Form::scalar(2, ScalarExpr::int(7)));
        let b = parse_form("-2**2", &c).unwrap();
        assert_eq!(b, Form::scalar(2, ScalarExpr::int(-4)));
        let h = parse_form("1/2*mu", &c).unwrap();
        assert_eq!(h, Form::scalar(2, ScalarExpr::named_constant("mu").scale(&Coeff::ratio(1, 2))));
    }

    #[test]
    fn jets_and_operators() {
        let c = ctx();
        let dphi = parse_form("d(phi)", &c).unwrap();
        let manual = parse_form("phi_t*dx[t] + phi_x^dx[x]", &c).unwrap();
        assert_eq!(dphi, manual);
        let v = parse_form("del(phi_{t,x})", &c).unwrap();
        assert_eq!(v, Form::contact(2, JetCoordinate::new("phi", &[0, 1])).unwrap());
        assert_eq!(parse_form("phi_tx", &c).unwrap(), parse_form("phi_{x,t}", &c).unwrap());
        assert!(parse_form("d(d(phi))", &c).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_columns() {
        let c = ctx();
        match parse_form("phi + nu", &c) {
            Err(FrontendError::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        match parse_form("(phi + 1", &c) {
            Err(FrontendError::Parse { column, .. }) => assert_eq!(column, 9),
            other => panic!("{other:?}"),
        }
        assert!(parse_form("phi/phi", &c).is_err());
    }

    #[test]
    fn functions() {
        let mut c = Context::new(1);
        c.fields.insert(FieldSymbol::real("q"));
        c.funcs.insert("L".into(), vec![Var::jet("q", &[]), Var::jet("q", &[0]), Var::Coord(0)]);
        let a = parse_form("pd(L, q_t)", &c).unwrap();
        let b = parse_form("L'{2}(q, q_t, t)", &c).unwrap();
        assert_eq!(a, b);
        assert!(parse_form("L'{4}(q, q_t, t)", &c).is_err());
    }
}
