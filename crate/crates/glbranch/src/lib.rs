//! Multisegment calculus for irreducible representations of `GL_n` over a
//! p-adic field, and decision procedures for quotient branching built on it.

pub mod calculus;
pub mod commutation;
pub mod core;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod pieri;
pub mod relevance;
pub mod text;

pub use crate::core::{IrrRep, Line, Multisegment, Point, Segment, Side};
pub use crate::error::{Error, Result};
