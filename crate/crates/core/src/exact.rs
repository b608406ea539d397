//! Exact single-elimination winner computation.
//!
//! `WinnerTable` runs a subset dynamic program: a player wins a bracket on a
//! set `S` iff `S` splits into equal halves, the player wins one half and
//! beats some achievable winner of the other. Splits are enumerated
//! canonically (the lowest member of `S` is pinned to the first half), which
//! covers every bracket up to the pairing symmetries.
//!
//! `brute_force_winners` is the independent oracle: it enumerates actual
//! seedings up to bracket symmetry and simulates each one.

use thiserror::Error;

use crate::bracket::{play_bracket, Seeding};
use crate::tournament::Tournament;

/// Default player cap for the subset DP. The table stores one word per
/// subset, so the cap bounds memory at `2^16` entries.
pub const SE_WINNERS_CAP: usize = 16;

/// Player cap for seeding enumeration; 8 players already mean 315 distinct
/// brackets.
pub const BRUTE_FORCE_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("{n} players exceed the exact solver cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("{0} players: balanced brackets need a power of two")]
    NotPowerOfTwo(usize),
    #[error("player {player} out of range for {n} players")]
    UnknownPlayer { player: usize, n: usize },
}

/// Map from player subsets (sizes that are powers of two) to the set of
/// players that can win a bracket played exactly on that subset. Both keys
/// and values are bit masks over player indices.
pub struct WinnerTable {
    n: usize,
    out_masks: Vec<u32>,
    winners: Vec<u32>,
}

impl WinnerTable {
    pub fn build(t: &Tournament) -> Result<Self, ExactError> {
        Self::build_with_cap(t, SE_WINNERS_CAP)
    }

    /// Caps above 24 players are clamped: the table stores one word per
    /// subset, so memory grows as `2^n`.
    pub fn build_with_cap(t: &Tournament, cap: usize) -> Result<Self, ExactError> {
        let n = t.n();
        let cap = cap.min(24);
        if n > cap {
            return Err(ExactError::TooLarge { n, cap });
        }
        if !n.is_power_of_two() {
            return Err(ExactError::NotPowerOfTwo(n));
        }
        let out_masks: Vec<u32> = (0..n)
            .map(|v| t.out_neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
            .collect();
        let in_masks: Vec<u32> = (0..n)
            .map(|v| t.in_neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
            .collect();
        let mut winners = vec![0u32; 1usize << n];
        for v in 0..n {
            winners[1usize << v] = 1 << v;
        }
        let mut size = 2;
        while size <= n {
            let mut subset: u32 = (1u32 << size) - 1;
            let limit: u64 = 1u64 << n;
            while (subset as u64) < limit {
                winners[subset as usize] = merge_splits(&in_masks, &winners, subset);
                subset = next_same_popcount(subset);
                if subset == 0 {
                    break;
                }
            }
            size *= 2;
        }
        Ok(Self {
            n,
            out_masks,
            winners,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Achievable winners of a bracket on `subset` (must have power-of-two
    /// size), as a bit mask.
    pub fn winners_mask(&self, subset: u32) -> u32 {
        self.winners[subset as usize]
    }

    pub fn se_winners(&self) -> Vec<usize> {
        let full: u32 = ((1u64 << self.n) - 1) as u32;
        mask_players(self.winners[full as usize])
    }

    /// Reconstructs a witness seeding with champion `v`, or `None` when `v`
    /// cannot win.
    pub fn witness(&self, v: usize) -> Option<Seeding> {
        let full: u32 = ((1u64 << self.n) - 1) as u32;
        if self.winners[full as usize] & (1 << v) == 0 {
            return None;
        }
        let leaves = self.witness_leaves(full, v);
        Some(Seeding::new(leaves).expect("witness reconstruction yields a valid seeding"))
    }

    fn witness_leaves(&self, subset: u32, v: usize) -> Vec<usize> {
        if subset.count_ones() == 1 {
            return vec![v];
        }
        let mut result = None;
        for_each_canonical_split(subset, |s1, s2| {
            if result.is_some() {
                return;
            }
            let (mine, theirs) = if s1 & (1 << v) != 0 {
                (s1, s2)
            } else {
                (s2, s1)
            };
            let w_mine = self.winners[mine as usize];
            if w_mine & (1 << v) == 0 {
                return;
            }
            let beatable = self.winners[theirs as usize] & self.out_masks[v];
            if beatable != 0 {
                let u = beatable.trailing_zeros() as usize;
                result = Some((mine, theirs, u));
            }
        });
        let (mine, theirs, u) = result.expect("a winning split exists for every table winner");
        let mut leaves = self.witness_leaves(mine, v);
        leaves.extend(self.witness_leaves(theirs, u));
        leaves
    }
}

fn merge_splits(in_masks: &[u32], winners: &[u32], subset: u32) -> u32 {
    let mut achievable = 0u32;
    for_each_canonical_split(subset, |s1, s2| {
        let w1 = winners[s1 as usize];
        let w2 = winners[s2 as usize];
        achievable |= w1 & beats_any(in_masks, w2);
        achievable |= w2 & beats_any(in_masks, w1);
    });
    achievable
}

/// Players beating at least one member of `mask`.
fn beats_any(in_masks: &[u32], mask: u32) -> u32 {
    let mut acc = 0u32;
    let mut m = mask;
    while m != 0 {
        let u = m.trailing_zeros() as usize;
        acc |= in_masks[u];
        m &= m - 1;
    }
    acc
}

/// Enumerates the splits of `subset` into equal halves with the lowest
/// member pinned to the first half.
fn for_each_canonical_split(subset: u32, mut f: impl FnMut(u32, u32)) {
    let size = subset.count_ones() as usize;
    let low = subset & subset.wrapping_neg();
    let rest = subset ^ low;
    let positions: Vec<u32> = mask_players(rest).iter().map(|&p| p as u32).collect();
    let choose = size / 2 - 1;
    let mut picked = vec![0usize; choose];
    enumerate_combinations(&positions, choose, &mut picked, 0, 0, &mut |chosen| {
        let mut s1 = low;
        for &p in chosen {
            s1 |= 1 << p;
        }
        f(s1, subset ^ s1);
    });
}

fn enumerate_combinations(
    positions: &[u32],
    choose: usize,
    picked: &mut [usize],
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[u32]),
) {
    if depth == choose {
        let chosen: Vec<u32> = picked[..choose].iter().map(|&i| positions[i]).collect();
        f(&chosen);
        return;
    }
    for i in start..=(positions.len() - (choose - depth)) {
        picked[depth] = i;
        enumerate_combinations(positions, choose, picked, depth + 1, i + 1, f);
    }
}

/// Gosper's hack: next integer with the same number of set bits.
fn next_same_popcount(v: u32) -> u32 {
    let c = v & v.wrapping_neg();
    let r = v.wrapping_add(c);
    if r == 0 {
        return 0;
    }
    (((r ^ v) >> 2) / c) | r
}

fn mask_players(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Exact set of players that can win some balanced bracket on the whole
/// field. Requires a power-of-two field within the solver cap.
pub fn se_winners(t: &Tournament) -> Result<Vec<usize>, ExactError> {
    Ok(WinnerTable::build(t)?.se_winners())
}

/// Witness seeding crowning `v`, or `None` when `v` is not an SE winner.
pub fn fix_for(t: &Tournament, v: usize) -> Result<Option<Seeding>, ExactError> {
    if v >= t.n() {
        return Err(ExactError::UnknownPlayer {
            player: v,
            n: t.n(),
        });
    }
    Ok(WinnerTable::build(t)?.witness(v))
}

/// Independent oracle: enumerates every seeding up to bracket symmetry and
/// simulates each with `play_bracket`.
pub fn brute_force_winners(t: &Tournament) -> Result<Vec<usize>, ExactError> {
    let n = t.n();
    if n > BRUTE_FORCE_CAP {
        return Err(ExactError::TooLarge {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if !n.is_power_of_two() {
        return Err(ExactError::NotPowerOfTwo(n));
    }
    let players: Vec<usize> = t.players().collect();
    let mut champions = std::collections::BTreeSet::new();
    for leaves in canonical_seedings(&players) {
        let seeding = Seeding::new(leaves).expect("enumeration yields valid seedings");
        let log = play_bracket(t, &seeding).expect("players all belong to the tournament");
        champions.insert(log.champion);
    }
    Ok(champions.into_iter().collect())
}

/// All seedings with the lexicographically smallest player of every
/// sub-bracket pinned to its first leaf. Pair-swap and half-swap symmetries
/// never change the champion, so one representative per orbit suffices.
fn canonical_seedings(players: &[usize]) -> Vec<Vec<usize>> {
    if players.len() == 1 {
        return vec![vec![players[0]]];
    }
    let half = players.len() / 2;
    let rest = &players[1..];
    let mut seedings = Vec::new();
    let mut picked = vec![0usize; half - 1];
    let positions: Vec<u32> = rest.iter().map(|&p| p as u32).collect();
    enumerate_combinations(&positions, half - 1, &mut picked, 0, 0, &mut |chosen| {
        let mut left = vec![players[0]];
        left.extend(chosen.iter().map(|&p| p as usize));
        let right: Vec<usize> = rest.iter().copied().filter(|p| !left.contains(p)).collect();
        for l in canonical_seedings(&left) {
            for r in canonical_seedings(&right) {
                let mut s = l.clone();
                s.extend(&r);
                seedings.push(s);
            }
        }
    });
    seedings
}
