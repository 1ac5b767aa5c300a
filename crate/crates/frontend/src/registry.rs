//! Scenarios behind a common trait, registered by name and picked at run time.

use std::collections::BTreeMap;

use varcomplex_core::fieldtheory::{self, LagrangianSystem};
use varcomplex_core::gauge::{GaugeKilling, TraceForm, YangMills};
use varcomplex_core::{JetCoordinate, KillingField, ScalarExpr};

use crate::builtin;
use crate::context::Context;
use crate::error::{FrontendError, Result};
use crate::expr::Value;
use crate::scenario::{parse_scenario, Contraction, ScenarioDef};

/// A named quantity in a command's output.
#[derive(Clone, Debug)]
pub struct Labeled {
    pub label: String,
    pub value: Value,
}

fn labeled(label: impl Into<String>, value: Value) -> Labeled {
    Labeled {
        label: label.into(),
        value,
    }
}

/// Outcome of a check command.
#[derive(Clone, Debug)]
pub struct Report {
    pub holds: bool,
    pub items: Vec<Labeled>,
    pub notes: Vec<String>,
}

pub trait Scenario {
    fn def(&self) -> &ScenarioDef;

    fn name(&self) -> &str {
        &self.def().name
    }

    fn context(&self) -> &Context {
        &self.def().ctx
    }

    fn killing_names(&self) -> Vec<&str> {
        self.def().killings.iter().map(|k| k.name.as_str()).collect()
    }

    fn default_killing(&self) -> Option<&str> {
        self.def().killings.first().map(|k| k.name.as_str())
    }

    fn euler_lagrange(&self) -> Result<Vec<Labeled>>;
    fn symplectic(&self) -> Result<Vec<Labeled>>;
    fn momentum(&self, killing: &str) -> Result<Vec<Labeled>>;
    fn components(&self, killing: &str) -> Result<Vec<Labeled>>;
    fn check_invariance(&self, killing: &str) -> Result<Report>;
    fn check_noether(&self, a: &str, b: &str) -> Result<Report>;
    fn check_hamilton(&self, killing: &str) -> Result<Report>;
}

fn unknown_killing(def: &ScenarioDef, name: &str) -> FrontendError {
    let known: Vec<&str> = def.killings.iter().map(|k| k.name.as_str()).collect();
    FrontendError::Usage(format!(
        "scenario '{}' has no killing field '{name}' (known: {})",
        def.name,
        if known.is_empty() { "none".to_string() } else { known.join(", ") }
    ))
}

fn component_labels(n: usize) -> [String; 4] {
    let n = n as i64;
    [0, 1, 2, 3].map(|p| format!("({p},{})", n - p))
}

/// Keeps the components whose horizontal degree is non-negative.
fn labeled_components(n: usize, parts: [Value; 4]) -> Vec<Labeled> {
    component_labels(n)
        .into_iter()
        .zip(parts)
        .take(n + 1)
        .map(|(l, v)| labeled(l, v))
        .collect()
}

pub struct ScalarScenario {
    def: ScenarioDef,
    system: LagrangianSystem,
}

impl ScalarScenario {
    pub fn new(def: ScenarioDef) -> Result<Self> {
        let (Value::Form(l), Value::Form(theta)) = (&def.lagrangian, &def.theta) else {
            return Err(FrontendError::Usage("L and theta must be scalar forms".into()));
        };
        let system = LagrangianSystem::new(
            &def.name,
            def.ctx.hodge.clone().expect("parsed scenarios have a Hodge mode"),
            def.ctx.fields.clone(),
            l.clone(),
            theta.clone(),
        )?;
        Ok(ScalarScenario { def, system })
    }

    pub fn system(&self) -> &LagrangianSystem {
        &self.system
    }

    pub fn killing(&self, name: &str) -> Result<KillingField> {
        let decl = self.def.killing(name).ok_or_else(|| unknown_killing(&self.def, name))?;
        self.def.killing_field(decl)
    }

    fn onshell(&self) -> BTreeMap<JetCoordinate, ScalarExpr> {
        self.def.onshell.iter().cloned().collect()
    }
}

impl Scenario for ScalarScenario {
    fn def(&self) -> &ScenarioDef {
        &self.def
    }

    fn euler_lagrange(&self) -> Result<Vec<Labeled>> {
        Ok(vec![labeled("E", Value::Form(fieldtheory::euler_lagrange(&self.system)))])
    }

    fn symplectic(&self) -> Result<Vec<Labeled>> {
        let s = fieldtheory::total_symplectic(&self.system)?;
        Ok(vec![
            labeled("omega", Value::Form(s.omega)),
            labeled("E", Value::Form(s.euler_lagrange)),
            labeled("Omega", Value::Form(s.omega_total)),
        ])
    }

    fn momentum(&self, killing: &str) -> Result<Vec<Labeled>> {
        let x = self.killing(killing)?;
        Ok(vec![labeled("J", Value::Form(fieldtheory::momentum_map(&self.system, &x)?))])
    }

    fn components(&self, killing: &str) -> Result<Vec<Labeled>> {
        let x = self.killing(killing)?;
        let omega = fieldtheory::total_symplectic(&self.system)?;
        let j = fieldtheory::momentum_map(&self.system, &x)?;
        let parts = fieldtheory::hamiltonian_vf_components(&omega, &x, &j)?;
        Ok(labeled_components(self.system.dim(), parts.map(Value::Form)))
    }

    fn check_invariance(&self, killing: &str) -> Result<Report> {
        let x = self.killing(killing)?;
        let inv = fieldtheory::invariance_check(&self.system, &x)?;
        let mom = fieldtheory::momentum_defining_check(&self.system, &x)?;
        Ok(Report {
            holds: inv.holds(),
            items: vec![
                labeled("lie_total", Value::Form(inv.residual)),
                labeled("momentum_residual", Value::Form(mom.residual)),
            ],
            notes: Vec::new(),
        })
    }

    fn check_noether(&self, a: &str, b: &str) -> Result<Report> {
        let (xa, xb) = (self.killing(a)?, self.killing(b)?);
        let v = fieldtheory::noether_check(&self.system, &xa, &xb)?;
        Ok(Report {
            holds: v.holds(),
            items: vec![labeled(format!("lie_{a}(J_{b})"), Value::Form(v.residual))],
            notes: vec![format!("assuming [{a}, {b}] = 0")],
        })
    }

    fn check_hamilton(&self, killing: &str) -> Result<Report> {
        let x = self.killing(killing)?;
        let r = fieldtheory::hamilton_identity(&self.system, &x)?;
        let mut holds = r.holds();
        let mut items = vec![
            labeled("hamilton", Value::Form(r.hamilton.clone())),
            labeled("minus_contracted_E", Value::Form(r.minus_contracted_el.clone())),
        ];
        let onshell = self.onshell();
        if !onshell.is_empty() {
            for (b, f) in &r.components {
                let reduced = fieldtheory::on_shell_reduce(f, &onshell);
                holds &= reduced.is_zero();
                items.push(labeled(format!("onshell{b}"), Value::Form(reduced)));
            }
        }
        Ok(Report {
            holds,
            items,
            notes: Vec::new(),
        })
    }
}

pub struct GaugeScenario {
    def: ScenarioDef,
    theory: YangMills,
}

impl GaugeScenario {
    pub fn new(def: ScenarioDef) -> Result<Self> {
        let (Value::Trace(l), Value::Trace(theta)) = (&def.lagrangian, &def.theta) else {
            return Err(FrontendError::Usage("gauge scenarios need traced L and theta".into()));
        };
        let theory = YangMills::from_parts(def.ctx.dim, l.clone(), theta.clone())?;
        Ok(GaugeScenario { def, theory })
    }

    pub fn theory(&self) -> &YangMills {
        &self.theory
    }

    pub fn killing(&self, name: &str) -> Result<GaugeKilling> {
        let decl = self.def.killing(name).ok_or_else(|| unknown_killing(&self.def, name))?;
        let mut scale = None;
        for c in &decl.contractions {
            match c {
                Contraction::Gauge(s) => scale = Some(s.clone()),
                _ => {
                    return Err(FrontendError::Usage(format!(
                        "killing field '{name}' contracts something other than del(Amat)"
                    )))
                }
            }
        }
        Ok(match scale {
            Some(s) => GaugeKilling { scale: s },
            None => GaugeKilling::zero(),
        })
    }
}

fn project_signed(f: &TraceForm, p: i64, q: i64) -> TraceForm {
    if p < 0 || q < 0 {
        TraceForm::zero(f.dim())
    } else {
        f.project(p as usize, q as usize)
    }
}

impl Scenario for GaugeScenario {
    fn def(&self) -> &ScenarioDef {
        &self.def
    }

    fn euler_lagrange(&self) -> Result<Vec<Labeled>> {
        Ok(vec![labeled("E", Value::Trace(self.theory.euler_lagrange()))])
    }

    fn symplectic(&self) -> Result<Vec<Labeled>> {
        Ok(vec![
            labeled("omega", Value::Trace(self.theory.symplectic_density())),
            labeled("E", Value::Trace(self.theory.euler_lagrange())),
            labeled("Omega", Value::Trace(self.theory.total_symplectic())),
        ])
    }

    fn momentum(&self, killing: &str) -> Result<Vec<Labeled>> {
        let x = self.killing(killing)?;
        Ok(vec![labeled("J", Value::Trace(self.theory.momentum_map(&x)?))])
    }

    fn components(&self, killing: &str) -> Result<Vec<Labeled>> {
        let x = self.killing(killing)?;
        let n = self.theory.dim() as i64;
        let xe = self.theory.euler_lagrange().interior(&x)?;
        let xw = self.theory.symplectic_density().interior(&x)?;
        let j = self.theory.momentum_map(&x)?;
        let da = |p: i64, q: i64| project_signed(&j, p, q).horizontal_diff();
        let va = |p: i64, q: i64| project_signed(&j, p, q).vertical_diff();
        let sum = |parts: Vec<TraceForm>| -> Result<TraceForm> {
            let mut out = TraceForm::zero(n as usize);
            for p in parts {
                out = out.add(&p)?;
            }
            Ok(out)
        };
        let parts = [
            sum(vec![project_signed(&xe, 0, n), da(0, n - 1)])?,
            sum(vec![project_signed(&xe, 1, n - 1), project_signed(&xw, 1, n - 1), da(1, n - 2), va(0, n - 1)])?,
            sum(vec![project_signed(&xw, 2, n - 2), da(2, n - 3), va(1, n - 2)])?,
            va(2, n - 3),
        ];
        Ok(labeled_components(n as usize, parts.map(Value::Trace)))
    }

    fn check_invariance(&self, killing: &str) -> Result<Report> {
        let x = self.killing(killing)?;
        let residual = self.theory.invariance_residual(&x)?;
        Ok(Report {
            holds: residual.is_zero(),
            items: vec![labeled("lie_total", Value::Trace(residual))],
            notes: Vec::new(),
        })
    }

    fn check_noether(&self, a: &str, b: &str) -> Result<Report> {
        let (xa, xb) = (self.killing(a)?, self.killing(b)?);
        let residual = self.theory.momentum_map(&xb)?.lie_total(&xa)?;
        Ok(Report {
            holds: residual.is_zero(),
            items: vec![labeled(format!("lie_{a}(J_{b})"), Value::Trace(residual))],
            notes: vec![format!("assuming [{a}, {b}] = 0")],
        })
    }

    fn check_hamilton(&self, killing: &str) -> Result<Report> {
        let x = self.killing(killing)?;
        let hamilton = self
            .theory
            .symplectic_density()
            .interior(&x)?
            .add(&self.theory.momentum_map(&x)?.total_diff())?;
        let minus = self.theory.euler_lagrange().interior(&x)?.neg();
        Ok(Report {
            holds: hamilton == minus,
            items: vec![
                labeled("hamilton", Value::Trace(hamilton)),
                labeled("minus_contracted_E", Value::Trace(minus)),
            ],
            notes: Vec::new(),
        })
    }
}

/// Wraps a parsed definition in the matching scenario kind.
pub fn load(def: ScenarioDef) -> Result<Box<dyn Scenario>> {
    if def.ctx.gauge {
        Ok(Box::new(GaugeScenario::new(def)?))
    } else {
        Ok(Box::new(ScalarScenario::new(def)?))
    }
}

pub fn load_text(text: &str, dim: Option<usize>) -> Result<Box<dyn Scenario>> {
    load(parse_scenario(text, dim)?)
}

type Factory = fn() -> String;

pub struct Registry {
    entries: BTreeMap<String, Factory>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            entries: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register("mechanics", || builtin::MECHANICS.to_string());
        r.register("kg2d", builtin::kg2d);
        r.register("kg-abstract", builtin::kg_abstract);
        r.register("translation2d", builtin::translation2d);
        r.register("u1", builtin::u1);
        r.register("yangmills", || builtin::YANG_MILLS.to_string());
        r
    }

    pub fn register(&mut self, name: &str, factory: Factory) {
        self.entries.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }

    pub fn text(&self, name: &str) -> Option<String> {
        self.entries.get(name).map(|f| f())
    }

    pub fn get(&self, name: &str, dim: Option<usize>) -> Result<Box<dyn Scenario>> {
        let text = self.text(name).ok_or_else(|| {
            FrontendError::Usage(format!(
                "unknown scenario '{name}' (built-in: {})",
                self.names().join(", ")
            ))
        })?;
        load_text(&text, dim)
    }
}
