//! Exact model of the 40-state Witting configuration in `C^4` and a
//! simulator for the contextual key distribution scheme built on it.
//!
//! Every amplitude lives in the Eisenstein integers and every probability is
//! an exact rational, so structural claims (orthogonality, group orders,
//! perfect correlations) are checked with equality rather than tolerances.
//!
//! - [`arith`]: `Z[w]` and exact rationals.
//! - [`config`]: states, numberings, orthogonality graph, the 40 tetrads.
//! - [`group`]: triflection generators and the generated symmetry group.
//! - [`measure`]: Born rule on the maximally entangled pair, delayed queries,
//!   intercept-resend.
//! - [`protocol`]: naive, two-step and key-agreement sessions.
//! - [`classical`]: exhaustive scan of non-contextual marking models.
//! - [`verify`]: the invariant suite behind `witting verify`.

pub mod arith;
pub mod classical;
pub mod config;
pub mod group;
pub mod matrix;
pub mod measure;
pub mod protocol;
mod tables;
pub mod verify;

pub use arith::{EisensteinInt, ExactRational};
pub use config::{Basis, BasisId, BasisTag, Card, Suit, WittingConfig};
