//! Exact symbolic and floating-point engine for quaternionic slice polyanalytic
//! function theory, with a verification harness for its identities.

pub mod algebra;
pub mod appell;
pub mod bargmann;
pub mod cli;
pub mod error;
pub mod fock_spaces;
pub mod fueter_maps;
pub mod hermite;
pub mod ncpoly;
pub mod numeric;
pub mod report;
pub mod slicepoly;
pub mod suites;

pub use error::{Error, Result};
