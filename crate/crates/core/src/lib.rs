pub mod cli;
pub mod config;
pub mod error;
pub mod geometry;
pub mod identities;
pub mod io;
pub mod microlocal;
pub mod operators;
pub mod phase;
pub mod report;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
