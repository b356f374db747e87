//! Command-line front end for the `tmes` toolkit: the claim suite lives here
//! so integration tests can drive it without spawning the binary.

pub mod suite;

pub use suite::{claim_ids, render_table, report_json, run_claim_suite, suite_passed, ClaimReport, SuiteConfig, Verdict};
