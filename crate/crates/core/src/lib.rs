//! Exact toolkit for linear Hamiltonian torus actions on `C^n`.
//!
//! A torus action is given by an integer weight matrix `A` (ℓ × n). From it
//! this crate
//!
//! * normalizes the action to an effective one ([`action`]),
//! * decides the convex conditions on `A` that characterize when the moment
//!   map changes sign, with exact LP certificates ([`convex`], [`exact`]),
//! * classifies the link of the zero fibre for ℓ ≤ 2 ([`link`]),
//! * computes Gröbner bases, Koszul homology and the degree-zero splitting of
//!   the Koszul complex on the moment map ([`poly`]),
//! * builds the reduced star product on invariant normal forms modulo
//!   `ν^{N+1}` ([`bfv`]),
//! * and exposes all of it through JSON reports and SVG diagrams ([`report`]).
//!
//! All decision paths use exact rationals; there is no floating point outside
//! diagram coordinates.

pub mod action;
pub mod bfv;
pub mod convex;
pub mod error;
pub mod exact;
pub mod link;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use exact::Q;
