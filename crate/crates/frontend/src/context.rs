//! Symbol tables shared by the parser, the evaluator and the renderers.

use std::collections::BTreeMap;

use varcomplex_core::Direction;
use varcomplex_core::{Fields, HodgeMode, JetCoordinate, Var};

/// Names that cannot be declared as fields, constants or functions.
pub const RESERVED: &[&str] = &[
    "i", "d", "del", "D", "star", "pd", "td", "Tr", "dx", "Amat", "Xi", "F", "cov",
];

/// Default coordinate names for an `n`-dimensional base.
pub fn default_coords(dim: usize) -> Vec<String> {
    match dim {
        1 => vec!["t".into()],
        2 => vec!["t".into(), "x".into()],
        3 => vec!["t".into(), "x".into(), "y".into()],
        4 => vec!["t".into(), "x".into(), "y".into(), "z".into()],
        _ => std::iter::once("t".to_string())
            .chain((1..dim).map(|k| format!("x{k}")))
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct Context {
    pub dim: usize,
    pub coords: Vec<String>,
    pub fields: Fields,
    /// Declared fields in declaration order, one entry per conjugate pair.
    pub field_decls: Vec<String>,
    pub constants: Vec<String>,
    pub funcs: BTreeMap<String, Vec<Var>>,
    pub func_order: Vec<String>,
    pub hodge: Option<HodgeMode>,
    pub gauge: bool,
}

impl Context {
    pub fn new(dim: usize) -> Self {
        Context {
            dim,
            coords: default_coords(dim),
            fields: Fields::new(),
            field_decls: Vec::new(),
            constants: Vec::new(),
            funcs: BTreeMap::new(),
            func_order: Vec::new(),
            hodge: None,
            gauge: false,
        }
    }

    /// A context that only knows coordinates, used to render bare forms.
    pub fn for_dim(dim: usize) -> Self {
        Self::new(dim)
    }

    pub fn coord_index(&self, name: &str) -> Option<Direction> {
        if let Some(k) = self.coords.iter().position(|c| c == name) {
            return Some(k as Direction);
        }
        name.parse::<usize>()
            .ok()
            .filter(|&k| k < self.dim)
            .map(|k| k as Direction)
    }

    pub fn coord_name(&self, dir: Direction) -> String {
        self.coords
            .get(dir as usize)
            .cloned()
            .unwrap_or_else(|| dir.to_string())
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.fields.contains(name)
            || self.constants.iter().any(|c| c == name)
            || self.funcs.contains_key(name)
            || self.coords.iter().any(|c| c == name)
            || RESERVED.contains(&name)
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }

    pub fn jet_name(&self, u: &JetCoordinate) -> String {
        let names: Vec<String> = u.index().iter().map(|&d| self.coord_name(d)).collect();
        match names.len() {
            0 => u.field.to_string(),
            1 => format!("{}_{}", u.field, names[0]),
            _ => format!("{}_{{{}}}", u.field, names.join(",")),
        }
    }

    fn parse_index(&self, suffix: &str) -> Option<Vec<Direction>> {
        if let Some(inner) = suffix.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
            return inner
                .split(',')
                .map(|part| self.coord_index(part.trim()))
                .collect();
        }
        if let Some(d) = self.coord_index(suffix) {
            return Some(vec![d]);
        }
        if self.coords.iter().all(|c| c.chars().count() == 1) {
            return suffix
                .chars()
                .map(|ch| self.coord_index(&ch.to_string()))
                .collect();
        }
        None
    }

    /// Reads `phi`, `phi_t`, `phi_tx` or `phi_{t,x}` as a jet coordinate.
    pub fn parse_jet(&self, ident: &str) -> Option<JetCoordinate> {
        if self.fields.contains(ident) {
            return Some(JetCoordinate::base(ident));
        }
        for (pos, _) in ident.match_indices('_').collect::<Vec<_>>().into_iter().rev() {
            let (field, suffix) = (&ident[..pos], &ident[pos + 1..]);
            if !self.fields.contains(field) || suffix.is_empty() {
                continue;
            }
            if let Some(index) = self.parse_index(suffix) {
                return Some(JetCoordinate::new(field, &index));
            }
        }
        None
    }

    pub fn var_name(&self, v: &Var) -> String {
        match v {
            Var::Jet(u) => self.jet_name(u),
            Var::Const(c) => c.to_string(),
            Var::Coord(d) => self.coord_name(*d),
            Var::Func(f) => {
                let args: Vec<String> = f.args.iter().map(|a| self.var_name(a)).collect();
                let derivs = if f.derivs().is_empty() {
                    String::new()
                } else {
                    let d: Vec<String> = f.derivs().iter().map(|p| (p + 1).to_string()).collect();
                    format!("'{{{}}}", d.join(","))
                };
                format!("{}{}({})", f.name, derivs, args.join(", "))
            }
        }
    }
}
