//! Substitution to diagram constructions: nested towers, multi-edge
//! encodings and derivative substitutions.

mod components;
mod derivative;
mod encoding;
mod nesting;

pub use components::*;
pub use derivative::*;
pub use encoding::*;
pub use nesting::*;
