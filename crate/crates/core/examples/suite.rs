use omega_robust::*;
use std::time::Instant;

fn main() {
    let bounds = Bounds::default();
    for (name, input) in fixtures::universe() {
        let t = Instant::now();
        match run_suite_fixture(name, &input, bounds) {
            Ok(report) => {
                let fails = report.failures().len();
                println!("{name:26} {:>8.2?}  failures: {fails}", t.elapsed());
                for f in report.failures() {
                    println!("    FAIL {} ce={:?}", f.id, f.counterexample);
                }
            }
            Err(e) => println!("{name:26} ERROR {e}"),
        }
    }
}
