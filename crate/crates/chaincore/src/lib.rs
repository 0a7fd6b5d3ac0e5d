//! Fusion and branching data for finite groups, relative chain groups, and
//! machine verification of the chain-group / relative-center isomorphism and
//! the Clifford partition duality.

pub mod chain;
pub mod charmodp;
pub mod clifford;
pub mod error;
pub mod fusion;
pub mod group;
pub mod modp;
pub mod parse;
pub mod presentation;
pub mod report;
pub mod runner;

pub use error::{Error, Result};
