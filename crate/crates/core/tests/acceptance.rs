use horolat::acceptance::{Acceptance, AcceptanceConfig, CRITERIA};

#[test]
fn acceptance_criteria() {
    let suite = Acceptance::new(AcceptanceConfig::default());
    let mut failed = Vec::new();
    for &(id, _) in &CRITERIA {
        let r = suite.criterion(id);
        println!("{}", r.line());
        if !r.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn injected_fault_is_caught() {
    let suite = Acceptance::new(AcceptanceConfig { inject_fault: true, ..AcceptanceConfig::default() });
    for id in [3, 4] {
        let r = suite.criterion(id);
        println!("{}", r.line());
        assert!(!r.pass, "criterion {id} passed with a perturbed support functional");
    }
}
