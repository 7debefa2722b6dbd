//! Prints one line per acceptance criterion and exits nonzero if any fails.
//! A second run swaps in a Smith form with a deliberate bug and expects criterion 1 to fail.

use std::process::ExitCode;

use tropcount_core::acceptance::{run, AcceptanceConfig};
use tropcount_core::lattice::{smith_normal_form, IntMatrix, SnfResult};

fn snf_dropping_a_factor_of_two(m: &IntMatrix) -> SnfResult {
    let mut r = smith_normal_form(m);
    for f in r.invariant_factors.iter_mut() {
        if (&*f % 2u32) == 0u32.into() {
            *f /= 2u32;
        }
    }
    r
}

fn main() -> ExitCode {
    let results = run(&AcceptanceConfig::default());
    for c in &results {
        println!("{c}");
    }
    let failed: Vec<u8> = results.iter().filter(|c| !c.passed).map(|c| c.id).collect();

    let control = AcceptanceConfig { max_degree: 1, matrices: 200, sign_trials: 1, snf: snf_dropping_a_factor_of_two, ..Default::default() };
    let caught = !run(&control)[0].passed;
    println!("negative control (injected normal-form bug) {}", if caught { "caught by criterion 1" } else { "NOT caught" });

    if results.len() == 8 && failed.is_empty() && caught {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
