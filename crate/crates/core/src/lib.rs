//! Substitutions, ordered Bratteli diagrams and Vershik maps.

pub mod bratteli;
pub mod cli;
pub mod coding;
pub mod constructions;
pub mod error;
pub mod language;
pub mod matrix;
pub mod phase_space;
pub mod recognize;
pub mod report;
pub mod words;

pub use error::{Error, Result};
