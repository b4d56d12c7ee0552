pub mod config;
pub mod error;
pub mod exact;
pub mod field;
pub mod galilei;
pub mod nogo;
pub mod op_algebra;
pub mod report;
pub mod reps;
pub mod schwinger;
pub mod suites;
pub mod verdict;

pub use error::{Error, Result};
