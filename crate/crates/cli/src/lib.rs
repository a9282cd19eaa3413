//! Command-line front end, acceptance checks against the published tables,
//! document export and SVG plots.

pub mod checks;
pub mod commands;
pub mod export;
pub mod golden;
pub mod plot;

pub use checks::{run_criterion, verify, CriterionReport, Level, Suite};
pub use commands::{execute, Cli, Outcome};
pub use export::{Document, Format};
