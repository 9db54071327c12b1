//! Exact verification of the Kähler–Einstein barycenter criterion for the
//! smooth Fano symmetric varieties of Picard number one.
//!
//! The pipeline runs: case record → half-planes → moment polygon →
//! Duistermaat–Heckman density → exact volume and barycenter → cone test.
//! All of it is carried out in Q(√3); floating point only appears in the
//! Monte-Carlo oracle and in rendered figures.

pub mod casedb;
pub mod cli;
pub mod criterion;
pub mod dhmeasure;
pub mod error;
pub mod oracle;
pub mod polytope;
pub mod qfield;
pub mod report;
pub mod rootdata;
pub mod svg;

pub use casedb::{builtin_case, builtin_cases, load_case, CaseRecord};
pub use criterion::{verdict, Verdict};
pub use error::{Error, Result};
pub use qfield::{QuadNum, Rat};
pub use rootdata::Vec2;
