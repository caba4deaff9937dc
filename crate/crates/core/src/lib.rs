//! Structure analysis for finitely presented labeled spaces.

pub mod accommodating;
pub mod agreement;
pub mod boolean;
pub mod cli;
pub mod conditions;
pub mod error;
pub mod graph;
pub mod ideals;
pub mod oracle;
pub mod report;
pub mod structure;

pub use error::{Error, Result};
