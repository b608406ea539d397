//! Analysis toolkit for tournament graphs and single-elimination brackets.
//!
//! A tournament records every head-to-head outcome among `n` players. This
//! crate answers, exactly and constructively, who can be made to win a
//! balanced single-elimination bracket by choosing the seeding:
//!
//! - [`tournament`] — the dense tournament representation with kings,
//!   superkings, domination and restriction.
//! - [`bracket`] — seedings and deterministic bracket simulation.
//! - [`constructors`] — polynomial-time winning-seeding constructions for
//!   certified kings and 3-kings, and the two-half composition for ranked
//!   random tournaments.
//! - [`exact`] — ground truth: a subset DP over all sub-brackets and a
//!   seeding-enumeration oracle.
//! - [`solutions`] — Copeland, uncovered, Slater, Markov and bipartisan
//!   choice sets, walk-count scores and simple-path counts.
//! - [`models`] — seeded generative models and hand-built instances with
//!   unusual structure.

pub mod bracket;
pub mod constructors;
pub mod exact;
pub mod models;
pub mod solutions;
pub mod tournament;

pub use bracket::{play_bracket, MatchLog, Seeding};
pub use tournament::{Restriction, Tournament};
