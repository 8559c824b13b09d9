//! Runs every suite on a list of cases and reports sizes and timings.
//!
//! `cargo run --release --example sweep -- A2:2,0 G2:1,1`

use std::time::Instant;

use admface::verify::{self, Suite};
use admface::Case;

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = ["A2:2,0", "A2:1,1", "C2:1,0", "C2:0,1", "G2:1,0"]
            .map(String::from)
            .to_vec();
    }
    for arg in args {
        let Some((label, mu)) = arg.split_once(':') else {
            eprintln!("skipping {arg:?}: expected TYPE:COORDS");
            continue;
        };
        let start = Instant::now();
        let case = match Case::parse(label, mu) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("{arg}: {e}");
                continue;
            }
        };
        match verify::run(&case, Suite::All) {
            Ok(report) => {
                let faces = case.poset().map(|p| p.len()).unwrap_or(0);
                println!(
                    "{case}: {} elements, {faces} faces, {} checks, {} failed, {:.2?}",
                    case.adm().len(),
                    report.checks.len(),
                    report.failures().count(),
                    start.elapsed()
                );
                for f in report.failures() {
                    println!("  {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
                }
            }
            Err(e) => println!("{case}: {e}"),
        }
    }
}
