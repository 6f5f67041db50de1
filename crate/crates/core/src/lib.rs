//! Construction of leveled square complexes, their colorings, and the
//! finite presentation read off from them.

pub mod codec;
pub mod coloring;
pub mod complex;
pub mod dol;
pub mod error;
pub mod harness;
pub mod presentation;
pub mod rewrite;

pub use error::{Error, Result};
