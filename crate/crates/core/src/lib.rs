//! Non-backtracking random walks on configuration-model graphs whose edges
//! are rewired while the walker moves.
//!
//! The crate covers graph construction on half-edges ([`halfedge`]), checks
//! on degree sequences ([`regularity`]), the rewiring chain ([`dynamics`]),
//! the walk and its exact small-instance oracles ([`walk`]), total-variation
//! estimation ([`mixing`]) and the experiment driver ([`experiments`]).

pub mod dynamics;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod halfedge;
pub mod mixing;
pub mod regularity;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use halfedge::{Configuration, DegreeMode, DegreeSequence};
