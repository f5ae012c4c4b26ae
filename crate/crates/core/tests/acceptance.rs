//! Runs every acceptance criterion and prints one pass/fail line each.

use ftqc_core::verify::run_all;

fn main() {
    let reports = run_all();
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("acceptance: {} of {} passed", reports.len() - failed.len(), reports.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
