//! Runs every acceptance criterion and prints one line per criterion.

use dua_core::par::Exec;
use dua_core::verify::verify_all;

fn main() {
    let results = verify_all(0, Exec::Parallel);
    for r in &results {
        println!("{r}");
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
