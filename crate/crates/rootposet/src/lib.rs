//! Exact combinatorics of positive-root posets.
//!
//! This crate constructs every finite irreducible root system up to rank 8,
//! implements the partial order on positive roots together with its join and
//! meet, abelian ideals of the Borel subalgebra in their combinatorial form,
//! minimal Weyl words and inversion sets, and the Z-gradings attached to
//! simple roots. On top of that sits a verification harness that checks a
//! battery of structural identities exhaustively over their full quantifier
//! domains and reports machine-readable certificates.
//!
//! All arithmetic is exact: integer coefficient vectors, with rationals only
//! at the inner-product boundary.

pub mod error;
pub mod rootsys;

pub use error::{Error, Result};
pub use rootsys::{build, Family, Numbering, Root, RootId, RootSystem, RootSystemType};
