use varcomplex::expr::{eval_str, Value};
use varcomplex::registry::{Labeled, Registry, Scenario};
use varcomplex::render::{ast, from_ast, render, Format};

fn outputs(s: &dyn Scenario) -> Vec<Labeled> {
    let mut out = s.euler_lagrange().unwrap();
    out.extend(s.symplectic().unwrap());
    out.push(Labeled {
        label: "L".into(),
        value: s.def().lagrangian.clone(),
    });
    out.push(Labeled {
        label: "theta".into(),
        value: s.def().theta.clone(),
    });
    for k in s.killing_names() {
        out.extend(s.momentum(k).unwrap());
        out.extend(s.components(k).unwrap());
        out.extend(s.check_invariance(k).unwrap().items);
    }
    out
}

#[test]
fn plain_and_ast_read_back() {
    let registry = Registry::builtin();
    for name in registry.names() {
        for dim in [None, Some(2), Some(3)] {
            let Ok(s) = registry.get(name, dim) else { continue };
            for item in outputs(s.as_ref()) {
                let text = render(&item.value, Format::Plain, s.context());
                let back = eval_str(&text, s.context()).unwrap_or_else(|e| panic!("{name} {}: {e}\n{text}", item.label));
                let same = match (&back, &item.value) {
                    (Value::Form(f), Value::Trace(t)) => f.is_zero() && t.is_zero(),
                    (a, b) => a == b,
                };
                assert!(same, "{name} {}: plain text does not read back\n{text}", item.label);
                assert_eq!(from_ast(&ast(&item.value)).unwrap(), item.value, "{name} {}", item.label);
            }
        }
    }
}

#[test]
fn latex_uses_wedges_and_fractions() {
    let registry = Registry::builtin();
    let s = registry.get("kg2d", None).unwrap();
    let e = &s.euler_lagrange().unwrap()[0].value;
    let tex = render(e, Format::Latex, s.context());
    assert!(tex.contains("\\wedge"));
    assert!(tex.contains("\\frac{1}{2}"));
    assert!(tex.contains("\\bar{\\phi}_{tt}"));
    assert!(!tex.contains('*'));
}

#[test]
fn zero_renders_as_zero() {
    let registry = Registry::builtin();
    let s = registry.get("kg2d", None).unwrap();
    let r = s.check_invariance("u1").unwrap();
    for f in [Format::Plain, Format::Latex] {
        assert_eq!(render(&r.items[0].value, f, s.context()), "0");
    }
}
