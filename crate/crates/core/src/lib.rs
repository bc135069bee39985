//! Exact number-field toolkit for Oeljeklaus–Toma manifolds: signatures,
//! units, Galois and subfield certificates, and the LCK rank classification.

pub mod cnum;
pub mod construct;
pub mod error;
pub mod ff;
pub mod galois;
pub mod geom;
pub mod irreducible;
pub mod lckrank;
pub mod numfield;
pub mod parse;
pub mod poly;
pub mod realroots;
pub mod serial;
pub mod units;

pub use error::{Error, Result};
pub use numfield::{FieldElement, NumberField};
pub use poly::{IntPoly, RatPoly, Rational};

/// Precision cap for certified numerics, in bits.
pub const MAX_BITS: u32 = 1 << 14;
