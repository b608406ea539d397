//! Structural certificate chain used by `solve` and the experiment sweeps.
//!
//! A certificate is a constructive proof that a player can win: each
//! returned seeding comes from a sound constructor, so a certified answer
//! never contradicts the exact solver. Checks run cheapest first.

use kingmaker_core::bracket::Seeding;
use kingmaker_core::constructors::{
    cr_two_half_search, find_king_partition, king_seeding, threeking_seeding, ConstructError,
    KingPartition, ThreeKingDecomposition,
};
use kingmaker_core::Tournament;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    Condorcet,
    Superking,
    KingPartition,
    ThreeKing,
    CrTwoHalf,
    ExactDp,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::Condorcet => "condorcet",
            Certificate::Superking => "superking",
            Certificate::KingPartition => "king-partition",
            Certificate::ThreeKing => "3-king",
            Certificate::CrTwoHalf => "cr-two-half",
            Certificate::ExactDp => "exact-dp",
        }
    }
}

/// Tries the structural certificates in order; never answers "no".
pub fn find_structural(
    t: &Tournament,
    player: usize,
    try_two_half: bool,
) -> Result<Option<(Certificate, Seeding)>, ConstructError> {
    if t.n() == 1 {
        let s = Seeding::new(vec![0]).expect("singleton seeding");
        return Ok(Some((Certificate::Condorcet, s)));
    }
    if !t.n().is_power_of_two() {
        return Ok(None);
    }
    if t.out_degree(player) == t.n() - 1 {
        let mut leaves = vec![player];
        leaves.extend(t.players().filter(|&u| u != player));
        let s = Seeding::new(leaves).expect("condorcet seeding");
        return Ok(Some((Certificate::Condorcet, s)));
    }
    if t.is_superking(player) {
        let partition = KingPartition {
            king: player,
            victims: t.out_neighbors(player),
            residual: vec![],
            heavily_beaten: t.in_neighbors(player),
            weak: vec![],
        };
        let s = king_seeding(t, &partition)?;
        return Ok(Some((Certificate::Superking, s)));
    }
    if t.is_king(player) {
        if let Some(partition) = find_king_partition(t, player)? {
            let s = king_seeding(t, &partition)?;
            return Ok(Some((Certificate::KingPartition, s)));
        }
    }
    if let Ok(d) = ThreeKingDecomposition::derive(t, player) {
        let s = threeking_seeding(t, &d)?;
        return Ok(Some((Certificate::ThreeKing, s)));
    }
    if try_two_half {
        if let Some(s) = cr_two_half_search(t, player)? {
            return Ok(Some((Certificate::CrTwoHalf, s)));
        }
    }
    Ok(None)
}
