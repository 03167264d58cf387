//! One PASS/FAIL line per acceptance criterion, with its time limit.

use ffzeta_core::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all(false);
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    assert_eq!(results.len(), 9);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
