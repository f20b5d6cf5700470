//! Run the seeded cross-validation suite: the closed forms, the operator
//! pipeline, and the brute-force oracle are compared on random parameter
//! draws, and algebraic identities are checked. Exits nonzero if any check
//! fails.
//!
//!     cargo run --example cross_validate

use std::process::ExitCode;

use dispersive_cavity::verify;

fn main() -> ExitCode {
    let report = verify::run(42, 200);
    print!("{}", report.render_table());
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
