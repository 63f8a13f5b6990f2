//! Runs the cheap verification suites and prints their summaries.

use qmatball::suites::{run_suite, SuiteOptions};

fn main() -> qmatball::Result<()> {
    let opts = SuiteOptions::new(2);
    for name in ["confluence", "relations", "isotypic", "lemmas", "prop21"] {
        println!("{}", run_suite(name, &opts)?.summary());
    }
    Ok(())
}
