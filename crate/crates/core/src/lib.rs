pub mod bignum;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod lang;
pub mod linalg;
pub mod report;
pub mod runtime;
pub mod service;
pub mod stats;
pub mod viz;

pub use error::{Error, Result};
