//! Balanced single-elimination bracket simulation.
//!
//! A seeding assigns players to the leaves of a balanced bracket; round `r`
//! pairs positions `2i` and `2i+1` of the current sequence and the winners
//! advance in order. Outcomes are deterministic given the tournament.

use thiserror::Error;

use crate::tournament::Tournament;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BracketError {
    #[error("seeding length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("seeding is empty")]
    Empty,
    #[error("player {0} appears more than once in the seeding")]
    DuplicatePlayer(usize),
    #[error("player {player} is not a member of the {n}-player tournament")]
    UnknownPlayer { player: usize, n: usize },
}

/// Assignment of players to the `2^k` leaves of a balanced bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seeding {
    leaves: Vec<usize>,
}

impl Seeding {
    pub fn new(leaves: Vec<usize>) -> Result<Self, BracketError> {
        if leaves.is_empty() {
            return Err(BracketError::Empty);
        }
        if !leaves.len().is_power_of_two() {
            return Err(BracketError::NotPowerOfTwo(leaves.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for &p in &leaves {
            if !seen.insert(p) {
                return Err(BracketError::DuplicatePlayer(p));
            }
        }
        Ok(Self { leaves })
    }

    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// The seeding with positions `2i` and `2i+1` swapped for every `i`.
    /// Crowns the same champion: round-one pairs are unchanged.
    pub fn swap_pairs(&self) -> Self {
        let mut leaves = self.leaves.clone();
        for pair in leaves.chunks_mut(2) {
            if pair.len() == 2 {
                pair.swap(0, 1);
            }
        }
        Self { leaves }
    }
}

/// Full audit trail of one simulated bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchLog {
    /// One entry per round; each match recorded as `(winner, loser)`.
    pub rounds: Vec<Vec<(usize, usize)>>,
    pub champion: usize,
}

impl MatchLog {
    pub fn match_count(&self) -> usize {
        self.rounds.iter().map(Vec::len).sum()
    }
}

/// Plays out the bracket: positions `2i` and `2i+1` meet, winners advance in
/// order until a single champion remains.
pub fn play_bracket(t: &Tournament, seeding: &Seeding) -> Result<MatchLog, BracketError> {
    for &p in seeding.leaves() {
        if p >= t.n() {
            return Err(BracketError::UnknownPlayer {
                player: p,
                n: t.n(),
            });
        }
    }
    let mut alive = seeding.leaves().to_vec();
    let mut rounds = Vec::new();
    while alive.len() > 1 {
        let mut winners = Vec::with_capacity(alive.len() / 2);
        let mut matches = Vec::with_capacity(alive.len() / 2);
        for pair in alive.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            let (winner, loser) = if t.beats(a, b) { (a, b) } else { (b, a) };
            matches.push((winner, loser));
            winners.push(winner);
        }
        rounds.push(matches);
        alive = winners;
    }
    Ok(MatchLog {
        rounds,
        champion: alive[0],
    })
}
