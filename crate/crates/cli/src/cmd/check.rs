use skidsim_core::diagnostics::{run_checks, CheckStatus};

use super::load;
use crate::cli::CheckArgs;
use crate::CliError;

pub fn run(args: CheckArgs) -> Result<(), CliError> {
    // Invariants are reported as check results here, not rejected up front.
    let setup = load(&args.config)?;
    let report = run_checks(&setup.params, &setup.env, args.seed, args.samples);
    for c in &report.checks {
        let tag = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
            CheckStatus::Info => "INFO",
        };
        println!("{tag} {}: {}", c.name, c.detail);
    }
    if report.passed() {
        println!("all checks passed");
        Ok(())
    } else {
        let names: Vec<_> = report.failures().map(|c| c.name).collect();
        Err(CliError::CheckFailed(format!(
            "{} check(s) failed: {}",
            names.len(),
            names.join("; ")
        )))
    }
}
