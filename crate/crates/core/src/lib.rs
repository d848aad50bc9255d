pub mod chargauss;
pub mod classno;
pub mod curves;
pub mod error;
pub mod fieldcore;
pub mod harness;
pub mod hyper;
pub mod par;
pub mod qseries;
pub mod traceform;

pub use error::{Error, Result};
