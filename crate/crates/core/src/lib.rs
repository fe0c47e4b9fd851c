//! Exact equivariant Euler characteristics for finite group actions on
//! nodal curves.
//!
//! The crate is organised bottom-up: [`arith`] provides exact rationals and
//! cyclotomic numbers, [`group`] finite permutation groups, [`rep`] the
//! representation ring as class functions, [`curve`] the orbit-level model of
//! a nodal curve with a group action and a sheaf on it, and [`engine`] the
//! formulas built on top. [`oracle`] holds independent cross-check
//! computations and [`scenario`] the JSON front end.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod error;
pub mod group;
pub mod oracle;
pub mod curve;
pub mod engine;
pub mod rep;
pub mod scenario;

pub use arith::{Cyclotomic, Rational};
pub use error::{Error, Result};
pub use group::{Perm, PermGroup, Quotient, Subgroup};
pub use rep::{orbit_assemble, psi_class, CharacterTable, RepClass};
