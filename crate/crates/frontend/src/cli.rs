//! Command line driver. [`run`] does all the work and returns what would be
//! written to stdout and stderr, so it can be exercised in-process.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value as Json};
use varcomplex_core::gauge::YangMills;
use varcomplex_core::testing::run_property_suite;

use crate::error::{FrontendError, Result};
use crate::expr::{eval_str, Value};
use crate::registry::{load_text, Labeled, Registry, Report, Scenario};
use crate::render::{ast, from_ast, render, Format};

pub const DEFAULT_SCENARIO: &str = "kg2d";

#[derive(Parser, Debug)]
#[command(name = "varcomplex", version, about = "Symbolic variational bicomplex calculations")]
pub struct Cli {
    /// Output format: plain, latex or ast.
    #[arg(long, global = true, default_value = "plain")]
    pub format: Format,
    /// Read the scenario from a file instead of the built-in registry.
    #[arg(long, global = true, value_name = "PATH")]
    pub scenario_file: Option<PathBuf>,
    /// Spacetime dimension for parametric scenarios.
    #[arg(long, global = true, value_name = "N")]
    pub dim: Option<usize>,
    /// Abort with exit code 3 when an output has more terms than this.
    #[arg(long, global = true, value_name = "N")]
    pub max_terms: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Euler-Lagrange form E = δL + dθ.
    DeriveEl {
        /// [SCENARIO]
        args: Vec<String>,
    },
    /// Symplectic density ω, E and the total Ω.
    Symplectic {
        /// [SCENARIO]
        args: Vec<String>,
    },
    /// Momentum map J_X of a Killing field.
    Momentum {
        /// [SCENARIO] [KILLING]
        args: Vec<String>,
    },
    /// Checks that a Killing field leaves the total Lagrangian invariant.
    CheckInvariance {
        /// [SCENARIO] [KILLING]
        args: Vec<String>,
    },
    /// Checks that J_B is conserved along A.
    CheckNoether {
        /// [SCENARIO] A B
        args: Vec<String>,
    },
    /// Checks X⌟ω + DJ_X = −X⌟E, and its on-shell components.
    CheckHamilton {
        /// [SCENARIO] [KILLING]
        args: Vec<String>,
    },
    /// Bigraded components of X⌟Ω + DJ_X.
    Components {
        /// [SCENARIO] [KILLING]
        args: Vec<String>,
    },
    /// Runs the randomized identity suite.
    Selftest {
        #[arg(long, default_value_t = 20241016)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        cases: usize,
    },
    /// Prints a scenario, or an expression evaluated in its context.
    Render {
        /// [SCENARIO]
        args: Vec<String>,
        /// Expression in plain syntax, or a JSON AST.
        #[arg(long)]
        expr: Option<String>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    let mut out = Outcome::default();
    match execute(&cli, &mut out) {
        Ok(code) => out.code = code,
        Err(e) => {
            out.stderr.push_str(&format!("error: {e}\n"));
            out.code = e.exit_code();
        }
    }
    out
}

fn size(v: &Value) -> usize {
    match v {
        Value::Form(f) => f.terms().map(|(_, c)| c.len()).sum(),
        Value::Matrix(m) => m.len(),
        Value::Trace(t) => t.len(),
    }
}

struct Session<'a> {
    cli: &'a Cli,
    registry: Registry,
}

impl Session<'_> {
    /// Splits positionals into a scenario and the remaining arguments.
    fn scenario(&self, args: &[String], max_rest: usize) -> Result<(Box<dyn Scenario>, Vec<String>)> {
        let dim = self.cli.dim;
        if let Some(path) = &self.cli.scenario_file {
            let text = read(path)?;
            return Ok((load_text(&text, dim)?, args.to_vec()));
        }
        if let Some(first) = args.first() {
            if self.registry.text(first).is_some() {
                return Ok((self.registry.get(first, dim)?, args[1..].to_vec()));
            }
            if Path::new(first).is_file() {
                return Ok((load_text(&read(Path::new(first))?, dim)?, args[1..].to_vec()));
            }
            if args.len() > max_rest {
                return Err(FrontendError::Usage(format!(
                    "unknown scenario '{first}' (built-in: {})",
                    self.registry.names().join(", ")
                )));
            }
        }
        Ok((self.registry.get(DEFAULT_SCENARIO, dim)?, args.to_vec()))
    }

    fn check_size(&self, items: &[Labeled]) -> Result<()> {
        if let Some(max) = self.cli.max_terms {
            for it in items {
                let n = size(&it.value);
                if n > max {
                    return Err(FrontendError::Resource(format!(
                        "{} has {n} terms, more than --max-terms={max}",
                        it.label
                    )));
                }
            }
        }
        Ok(())
    }

    fn emit(&self, s: &dyn Scenario, items: &[Labeled], verdict: Option<bool>, out: &mut Outcome) -> Result<()> {
        self.check_size(items)?;
        let ctx = s.context();
        match self.cli.format {
            Format::Ast => {
                let mut results = Map::new();
                for it in items {
                    results.insert(it.label.clone(), ast(&it.value));
                }
                let mut doc = json!({"scenario": s.name(), "dim": ctx.dim, "results": results});
                if let Some(h) = verdict {
                    doc["holds"] = json!(h);
                }
                out.stdout.push_str(&serde_json::to_string(&doc).expect("json"));
                out.stdout.push('\n');
            }
            f => {
                for it in items {
                    out.stdout.push_str(&format!("{} = {}\n", it.label, render(&it.value, f, ctx)));
                }
                if let Some(h) = verdict {
                    out.stdout.push_str(if h { "verdict: holds\n" } else { "verdict: fails\n" });
                }
            }
        }
        Ok(())
    }

    fn report(&self, s: &dyn Scenario, r: Report, out: &mut Outcome) -> Result<i32> {
        for n in &r.notes {
            out.stderr.push_str(&format!("note: {n}\n"));
        }
        self.emit(s, &r.items, Some(r.holds), out)?;
        Ok(if r.holds { 0 } else { 1 })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| FrontendError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn killing_arg<'a>(s: &'a dyn Scenario, rest: &'a [String]) -> Result<String> {
    match rest {
        [] => s
            .default_killing()
            .map(str::to_string)
            .ok_or_else(|| FrontendError::Usage(format!("scenario '{}' declares no killing fields", s.name()))),
        [k] => Ok(k.clone()),
        _ => Err(FrontendError::Usage(format!("unexpected argument '{}'", rest[1]))),
    }
}

fn no_rest(rest: &[String]) -> Result<()> {
    match rest.first() {
        None => Ok(()),
        Some(a) => Err(FrontendError::Usage(format!("unexpected argument '{a}'"))),
    }
}

fn execute(cli: &Cli, out: &mut Outcome) -> Result<i32> {
    let session = Session {
        cli,
        registry: Registry::builtin(),
    };
    match &cli.command {
        Command::DeriveEl { args } => {
            let (s, rest) = session.scenario(args, 0)?;
            no_rest(&rest)?;
            session.emit(s.as_ref(), &s.euler_lagrange()?, None, out)?;
            Ok(0)
        }
        Command::Symplectic { args } => {
            let (s, rest) = session.scenario(args, 0)?;
            no_rest(&rest)?;
            session.emit(s.as_ref(), &s.symplectic()?, None, out)?;
            Ok(0)
        }
        Command::Momentum { args } => {
            let (s, rest) = session.scenario(args, 1)?;
            let k = killing_arg(s.as_ref(), &rest)?;
            session.emit(s.as_ref(), &s.momentum(&k)?, None, out)?;
            Ok(0)
        }
        Command::Components { args } => {
            let (s, rest) = session.scenario(args, 1)?;
            let k = killing_arg(s.as_ref(), &rest)?;
            session.emit(s.as_ref(), &s.components(&k)?, None, out)?;
            Ok(0)
        }
        Command::CheckInvariance { args } => {
            let (s, rest) = session.scenario(args, 1)?;
            let names: Vec<String> = if rest.is_empty() {
                s.killing_names().into_iter().map(String::from).collect()
            } else {
                vec![killing_arg(s.as_ref(), &rest)?]
            };
            if names.is_empty() {
                return Err(FrontendError::Usage(format!("scenario '{}' declares no killing fields", s.name())));
            }
            if names.len() == 1 {
                return session.report(s.as_ref(), s.check_invariance(&names[0])?, out);
            }
            let mut items = Vec::new();
            let mut holds = true;
            for k in &names {
                let r = s.check_invariance(k)?;
                holds &= r.holds;
                items.extend(r.items.into_iter().map(|it| Labeled {
                    label: format!("{k}.{}", it.label),
                    value: it.value,
                }));
            }
            session.report(
                s.as_ref(),
                Report {
                    holds,
                    items,
                    notes: Vec::new(),
                },
                out,
            )
        }
        Command::CheckNoether { args } => {
            let (s, rest) = session.scenario(args, 2)?;
            match rest.as_slice() {
                [a, b] => session.report(s.as_ref(), s.check_noether(a, b)?, out),
                _ => Err(FrontendError::Usage("check-noether needs two killing fields A B".into())),
            }
        }
        Command::CheckHamilton { args } => {
            let (s, rest) = session.scenario(args, 1)?;
            let k = killing_arg(s.as_ref(), &rest)?;
            session.report(s.as_ref(), s.check_hamilton(&k)?, out)
        }
        Command::Selftest { seed, cases } => selftest(cli, *seed, *cases, out),
        Command::Render { args, expr } => {
            let (s, rest) = session.scenario(args, 0)?;
            no_rest(&rest)?;
            match expr {
                Some(src) => {
                    let value = if src.trim_start().starts_with('{') {
                        let j: Json = serde_json::from_str(src)
                            .map_err(|e| FrontendError::parse(e.line(), e.column(), e.to_string()))?;
                        from_ast(&j)?
                    } else {
                        eval_str(src, s.context())?
                    };
                    let items = [Labeled {
                        label: "expr".into(),
                        value,
                    }];
                    session.check_size(&items)?;
                    match cli.format {
                        Format::Ast => out.stdout.push_str(&serde_json::to_string(&ast(&items[0].value)).expect("json")),
                        f => out.stdout.push_str(&render(&items[0].value, f, s.context())),
                    }
                    out.stdout.push('\n');
                }
                None if cli.format == Format::Plain => out.stdout.push_str(&s.def().to_text()),
                None => {
                    let items = [
                        Labeled {
                            label: "L".into(),
                            value: s.def().lagrangian.clone(),
                        },
                        Labeled {
                            label: "theta".into(),
                            value: s.def().theta.clone(),
                        },
                    ];
                    session.emit(s.as_ref(), &items, None, out)?;
                }
            }
            Ok(0)
        }
    }
}

fn selftest(cli: &Cli, seed: u64, cases: usize, out: &mut Outcome) -> Result<i32> {
    let report = run_property_suite(seed, cases);
    let mut lines = Vec::new();
    let mut ok = report.passed();
    for o in &report.outcomes {
        lines.push((o.name.to_string(), o.passed(), o.cases, o.first_failure.clone()));
    }
    for n in 2..=5 {
        let ym = YangMills::new(n)?;
        let el = ym.euler_lagrange();
        let pass = ym.expected_euler_lagrange()? == el && ym.covariant_euler_lagrange()? == el;
        ok &= pass;
        lines.push((format!("yang-mills-el-n{n}"), pass, 1, (!pass).then(|| "E differs".to_string())));
    }
    match cli.format {
        Format::Ast => {
            let doc = json!({
                "seed": seed,
                "forms_generated": report.forms_generated,
                "passed": ok,
                "checks": lines.iter().map(|(n, p, c, f)| json!({"name": n, "passed": p, "cases": c, "failure": f})).collect::<Vec<_>>(),
            });
            out.stdout.push_str(&serde_json::to_string(&doc).expect("json"));
            out.stdout.push('\n');
        }
        _ => {
            for (name, pass, cases, failure) in &lines {
                let status = if *pass { "PASS" } else { "FAIL" };
                out.stdout.push_str(&format!("{status} {name} cases={cases}\n"));
                if let Some(f) = failure {
                    out.stderr.push_str(&format!("{name}: {f}\n"));
                }
            }
            out.stdout.push_str(&format!("forms generated: {}\n", report.forms_generated));
        }
    }
    Ok(if ok { 0 } else { 1 })
}
