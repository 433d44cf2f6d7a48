//! Solvers for optimal persuasive signaling in voting settings.
//!
//! An informed sender commits to a signaling scheme that maps states of
//! nature to (private or public) candidate recommendations for a set of
//! voters. Voters update beliefs rationally and follow recommendations only
//! when doing so is a best response. This crate computes schemes maximizing
//! the probability that the sender's candidate `c0` wins:
//!
//! * [`kvoting`] — polynomial-size LP for private signaling under a k-voting
//!   rule, solved directly.
//! * [`colgen`] — the full private-persuasion LP over joint recommendation
//!   profiles, solved either exactly (dense, desk scale) or by delayed column
//!   generation with per-state pricing oracles for plurality and anonymous
//!   sender utilities.
//! * [`composition`] — constructive procedures that turn per-receiver
//!   marginals into full joint schemes without losing persuasiveness.
//! * [`public`] — exact public-signaling solver, the subset-intersection
//!   hardness-reduction generator, and the k-voting/plurality padding
//!   reduction.
//! * [`lp`] — the self-contained LP and transportation solvers backing all of
//!   the above, with dual extraction and an exact rational mode.

// Index loops here usually touch several tables at once; iterator rewrites
// obscure that.
#![allow(clippy::needless_range_loop)]

pub mod colgen;
pub mod composition;
pub mod fixtures;
pub mod gen;
pub mod kvoting;
pub mod lp;
pub mod model;
pub mod public;
pub mod wire;

mod error;

pub use error::Error;

/// Default cap on the number of LP columns (`|states| * |candidates|^|receivers|`)
/// that dense, profile-enumerating solvers will materialize.
pub const DEFAULT_COLUMN_GUARD: usize = 20_000;

/// Default additive tolerance for persuasiveness checks.
pub const DEFAULT_CHECK_TOL: f64 = 1e-6;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
