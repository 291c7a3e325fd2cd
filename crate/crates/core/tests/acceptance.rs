//! One line per acceptance criterion; exits nonzero if any criterion fails.

use cartankit::selftest::{format_line, run_all};

fn main() {
    let report = run_all(0);
    for c in &report.criteria {
        println!("{}", format_line(c));
    }
    let failed: Vec<u32> = report.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    println!(
        "acceptance: {} passed, {} failed {:?}, {:.1} s",
        report.criteria.len() - failed.len(),
        failed.len(),
        failed,
        report.total_seconds
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
