use varcomplex::expr::Value;
use varcomplex::registry::Registry;
use varcomplex_core::total_diff;

#[test]
fn builtin_names() {
    let reg = Registry::builtin();
    assert_eq!(
        reg.names(),
        vec!["kg-abstract", "kg2d", "mechanics", "translation2d", "u1", "yangmills"]
    );
}

fn is_zero(v: &Value) -> bool {
    match v {
        Value::Form(f) => f.is_zero(),
        Value::Matrix(m) => m.is_zero(),
        Value::Trace(t) => t.is_zero(),
    }
}

#[test]
fn total_symplectic_form_is_closed() {
    let reg = Registry::builtin();
    for name in reg.names() {
        let s = reg.get(name, None).unwrap();
        let parts = s.symplectic().unwrap();
        let omega = parts.iter().find(|l| l.label == "Omega").unwrap();
        let closed = match &omega.value {
            Value::Form(f) => total_diff(f).is_zero(),
            Value::Trace(t) => t.total_diff().is_zero(),
            Value::Matrix(_) => unreachable!(),
        };
        assert!(closed, "{name}");
    }
}

#[test]
fn declared_symmetries_define_momenta() {
    let reg = Registry::builtin();
    for name in reg.names() {
        let s = reg.get(name, None).unwrap();
        for k in s.killing_names() {
            if k == "phase-phi" || (name == "mechanics" && k == "time") {
                continue;
            }
            let r = s.check_invariance(k).unwrap();
            assert!(r.holds, "{name}.{k}");
            assert!(r.items.iter().all(|l| is_zero(&l.value)), "{name}.{k}");
        }
    }
}
