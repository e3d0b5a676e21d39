//! Canonical degrees of abelian covers of projective 3-space.
//!
//! A finite abelian cover `X -> P^3` whose canonical map is the covering map
//! has a pushforward `O + O(-2)^{d/2-1} + O(-3)^{d/2-1} + O(-5)`. This crate
//! turns that constraint into integer-linear systems on the branch degrees,
//! solves them exhaustively for every abelian group of each order, and audits
//! the resulting covers (cohomology, plurigenera, local smoothness).

pub mod automorphism;
pub mod bounds;
pub mod classify;
pub mod cohomology;
pub mod cover;
pub mod cover_file;
pub mod error;
pub mod fixtures;
pub mod group;
#[doc(hidden)]
pub mod oracle;
pub mod smooth;
pub mod target;

pub use error::{Error, InvalidCoverData, Result};
pub use group::{enumerate_groups, FiniteAbelianGroup, GroupElement};
