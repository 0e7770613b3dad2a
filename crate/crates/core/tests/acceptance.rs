use pushcalc::suite;

#[test]
fn acceptance() {
    let results = suite::run_all(2024);
    assert_eq!(results.len(), suite::NAMES.len());
    for c in &results {
        println!("criterion {:>2} {:<32} {}  {}", c.id, c.name, if c.pass { "PASS" } else { "FAIL" }, c.summary);
        for f in &c.failures {
            println!("    {f}");
        }
    }
    let failed: Vec<&str> = results.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
