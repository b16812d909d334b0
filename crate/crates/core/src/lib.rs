//! Del Pezzo surfaces of degree 1 over fields of characteristic 2.
//!
//! Surfaces are sextics `y² + y(a1x + a3) + x³ + a2x² + a4x + a6` in P(1,1,2,3),
//! with the `a_i` binary forms over GF(2^k). The crate builds the fourteen
//! normal forms, surveys the elliptic fibration, enumerates automorphism
//! groups exactly and identifies them against a small catalog.

pub mod error;
pub mod gf2k;
pub mod poly;
pub mod binform;
pub mod surface;
pub mod fibration;
pub mod elim;
pub mod normalform;
pub mod autgroup;
pub mod groupid;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
pub use gf2k::{FieldCtx, FieldElement};
