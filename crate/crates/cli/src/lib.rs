//! Front end for `carrousel-core`: expression and factorspec parsing,
//! hint files, analysis orchestration, report rendering and golden fixtures.

pub mod analysis;
pub mod factorspec;
pub mod golden;
pub mod hintfile;
pub mod parse;
pub mod render;
pub mod report;

pub use analysis::{run_analysis, AnalysisConfig, AnalysisError, OutputFormat, ProfileName};
pub use report::Report;
