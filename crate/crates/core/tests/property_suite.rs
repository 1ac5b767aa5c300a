use varcomplex_core::testing::run_property_suite;

#[test]
fn seeded_identity_suite() {
    let report = run_property_suite(20241016, 120);
    for o in &report.outcomes {
        println!("{:<32} {:>4} cases {:>3} failures {:?}", o.name, o.cases, o.failures, o.first_failure);
    }
    println!("forms generated: {}", report.forms_generated);
    assert!(report.passed());
    assert!(report.forms_generated >= 1000);
}
