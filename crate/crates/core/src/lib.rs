//! Simulation of LOCC protocols that implement quantum operations remotely.
pub mod error;
pub mod gates;
pub mod noisetomo;
pub mod protocols;
pub mod qcore;
pub mod resources;

pub use error::{Error, Result};
