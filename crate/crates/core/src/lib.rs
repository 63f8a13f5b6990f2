pub mod action;
pub mod canonical;
pub mod cli;
pub mod diagram;
pub mod equivalence;
pub mod error;
pub mod isotypic;
pub mod linalg;
pub mod parse;
pub mod qmatrix;
pub mod report;
pub mod suites;
pub mod scalars;
pub mod transitions;
pub mod unitarity;
pub mod uqsl;

pub use error::{Error, Result};
