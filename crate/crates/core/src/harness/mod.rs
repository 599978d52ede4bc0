//! Census, random instances and the property-suite runner.

pub mod census;
pub mod checks;
pub mod claims;
pub mod par;
pub mod random;
pub mod suite;

pub use census::{canonical_mask, census_spaces, census_up_to};
pub use claims::{Claim, Source, CLAIMS};
pub use par::Executor;
pub use suite::{run_suite, SuiteConfig, SuiteReport, SuiteRun};
