//! Exact computations for the Hassett–Keel program in genus four.
//!
//! Everything is done over the rationals: polynomial arithmetic, plane-curve
//! germ classification, global singularity inventories, stability rules,
//! one-parameter-subgroup degenerations and divisor-class identities.

pub mod anchors;
pub mod curves;
pub mod degeneration;
pub mod germ;
pub mod picard;
pub mod polyring;
pub mod stability;
