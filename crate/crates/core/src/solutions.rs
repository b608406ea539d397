//! Classical tournament solutions and path-count scores.
//!
//! Copeland, uncovered (kings), Slater, Markov and bipartisan choice sets,
//! plus the walk-count scores `A^k 1` and the simple-path counts they are
//! often conflated with. Walks and simple paths differ from `k >= 3`
//! onwards, so both are exposed as separate operations.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::tournament::{bits, Tournament};

/// Cap for the Slater subset DP: one table entry per subset.
pub const SLATER_CAP: usize = 18;
/// Cap for the exact bipartisan game solver.
pub const BIPARTISAN_CAP: usize = 64;
/// Cap on the path length of the simple-path counters (cost `O(n^k)`).
pub const KPATH_CAP: usize = 4;
/// Residual required of the Markov stationary vector.
pub const MARKOV_RESIDUAL_TOLERANCE: f64 = 1e-12;
/// Tolerance used to resolve score ties in floating argmax sets.
pub const ARGMAX_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum SolutionsError {
    #[error("{what}: size {n} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("power iteration did not converge: residual {residual} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Per-player scores together with the set of players attaining the maximum.
#[derive(Debug, Clone)]
pub struct ScoreVector<T> {
    pub scores: Vec<T>,
}

impl<T: Ord> ScoreVector<T> {
    /// Players with the maximum score (exact comparison).
    pub fn argmax_set(&self) -> Vec<usize> {
        let max = self.scores.iter().max().expect("scores are nonempty");
        self.scores
            .iter()
            .enumerate()
            .filter(|(_, s)| *s == max)
            .map(|(i, _)| i)
            .collect()
    }
}

impl ScoreVector<f64> {
    /// Players within `tol` of the maximum score.
    pub fn argmax_set_within(&self, tol: f64) -> Vec<usize> {
        let max = self
            .scores
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        self.scores
            .iter()
            .enumerate()
            .filter(|(_, &s)| s >= max - tol)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Players of maximum out-degree.
pub fn copeland_set(t: &Tournament) -> Vec<usize> {
    copeland_scores(t).argmax_set()
}

pub fn copeland_scores(t: &Tournament) -> ScoreVector<usize> {
    ScoreVector {
        scores: t.players().map(|v| t.out_degree(v)).collect(),
    }
}

/// The set of kings.
pub fn uncovered_set(t: &Tournament) -> Vec<usize> {
    t.players().filter(|&v| t.is_king(v)).collect()
}

/// True iff `w` beats `v` and everyone `v` beats.
pub fn covers(t: &Tournament, w: usize, v: usize) -> bool {
    if w == v || !t.beats(w, v) {
        return false;
    }
    t.out_neighbors(v).into_iter().all(|u| t.beats(w, u))
}

fn in_masks_u32(t: &Tournament) -> Vec<u32> {
    t.players()
        .map(|v| t.in_neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

/// Minimum number of edge reversals needed to make the tournament
/// transitive, by exact dynamic programming over player subsets: a player
/// ranked first among `S` pays one reversal per member of `S` that beats it.
pub fn min_reversals(t: &Tournament) -> Result<u32, SolutionsError> {
    Ok(*slater_table(t)?.last().expect("table is nonempty"))
}

fn slater_table(t: &Tournament) -> Result<Vec<u32>, SolutionsError> {
    let n = t.n();
    if n > SLATER_CAP {
        return Err(SolutionsError::CapExceeded {
            what: "slater",
            n,
            cap: SLATER_CAP,
        });
    }
    let in_masks = in_masks_u32(t);
    let mut opt = vec![u32::MAX; 1usize << n];
    opt[0] = 0;
    for mask in 1u32..(1u32 << n) {
        let mut best = u32::MAX;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = mask & !(1 << v);
            let cost = opt[rest as usize] + (in_masks[v] & rest).count_ones();
            best = best.min(cost);
        }
        opt[mask as usize] = best;
    }
    Ok(opt)
}

/// Players that can be ranked first in a closest transitive reordering.
pub fn slater_set(t: &Tournament) -> Result<Vec<usize>, SolutionsError> {
    let n = t.n();
    let opt = slater_table(t)?;
    let full = ((1u64 << n) - 1) as u32;
    let total = opt[full as usize];
    Ok((0..n)
        .filter(|&v| t.in_degree(v) as u32 + opt[(full & !(1 << v)) as usize] == total)
        .collect())
}

/// Stationary distribution of the winner-stays chain.
#[derive(Debug, Clone)]
pub struct StationaryDistribution {
    pub probabilities: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// The top cycle: players with directed paths to every other player. This
/// is the unique closed communicating class of the winner-stays chain; all
/// stationary mass lives on it.
pub fn top_cycle(t: &Tournament) -> Vec<usize> {
    let n = t.n();
    t.players()
        .filter(|&v| bits::count(&t.reach_mask(v, n)) == n)
        .collect()
}

/// Power iteration for the winner-stays chain: the state is the current
/// winner, the challenger is uniform among its `n - 1` opponents. The chain
/// is restricted to the top cycle, where it is irreducible and aperiodic.
pub fn markov_stationary(t: &Tournament) -> Result<StationaryDistribution, SolutionsError> {
    let n = t.n();
    let core = top_cycle(t);
    let m = core.len();
    let mut probabilities = vec![0.0; n];
    if m == 1 {
        probabilities[core[0]] = 1.0;
        return Ok(StationaryDistribution {
            probabilities,
            residual: 0.0,
            iterations: 0,
        });
    }
    let sub = t
        .restrict(&core)
        .map_err(|e| SolutionsError::Internal(e.to_string()))?;
    let st = &sub.tournament;
    let denom = (m - 1) as f64;
    let self_loop: Vec<f64> = (0..m).map(|i| st.out_degree(i) as f64 / denom).collect();
    let mut x = vec![1.0 / m as f64; m];
    let mut next = vec![0.0; m];
    const MAX_ITERATIONS: usize = 1_000_000;
    for iteration in 1..=MAX_ITERATIONS {
        // Mass flows to i from every current winner i can beat; failed
        // challenges keep the state, hence the self-loop weight.
        for (i, slot) in next.iter_mut().enumerate() {
            *slot = st.out_neighbors(i).iter().map(|&j| x[j]).sum::<f64>() / denom
                + self_loop[i] * x[i];
        }
        let total: f64 = next.iter().sum();
        for v in next.iter_mut() {
            *v /= total;
        }
        let residual = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if residual <= MARKOV_RESIDUAL_TOLERANCE {
            for (local, &player) in core.iter().enumerate() {
                probabilities[player] = x[local];
            }
            return Ok(StationaryDistribution {
                probabilities,
                residual,
                iterations: iteration,
            });
        }
    }
    Err(SolutionsError::NonConvergence {
        residual: f64::NAN,
        iterations: MAX_ITERATIONS,
    })
}

/// Players of maximum stationary probability in the winner-stays chain.
pub fn markov_set(t: &Tournament) -> Result<Vec<usize>, SolutionsError> {
    let st = markov_stationary(t)?;
    Ok(ScoreVector {
        scores: st.probabilities,
    }
    .argmax_set_within(ARGMAX_TOLERANCE))
}

/// The maximal lottery: optimal mixed strategy of the tournament's
/// symmetric zero-sum game, with its support.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalLottery {
    pub support: Vec<usize>,
    pub probabilities: Vec<f64>,
}

/// Solves the symmetric zero-sum game with payoff +1/-1/0 exactly over
/// rationals and returns the support and lottery. The lottery is unique in
/// a tournament game; this is asserted by re-solving under a reversed
/// pivoting order and comparing the exact solutions.
pub fn bipartisan_set(t: &Tournament) -> Result<MaximalLottery, SolutionsError> {
    let n = t.n();
    if n > BIPARTISAN_CAP {
        return Err(SolutionsError::CapExceeded {
            what: "bipartisan",
            n,
            cap: BIPARTISAN_CAP,
        });
    }
    let p = simplex_lottery(t, false)?;
    let p_rev = simplex_lottery(t, true)?;
    if p != p_rev {
        return Err(SolutionsError::Internal(
            "perturbed re-solve found a different lottery".into(),
        ));
    }
    // Equilibrium check: the lottery's payoff against every pure strategy
    // must be at least the game value, which is 0 by symmetry.
    for j in 0..n {
        let mut payoff = BigRational::zero();
        for (i, pi) in p.iter().enumerate() {
            if i == j {
                continue;
            }
            if t.beats(i, j) {
                payoff += pi;
            } else {
                payoff -= pi;
            }
        }
        if payoff.is_negative() {
            return Err(SolutionsError::Internal(format!(
                "lottery loses to pure strategy {j}"
            )));
        }
    }
    let support: Vec<usize> = p
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_positive())
        .map(|(i, _)| i)
        .collect();
    let probabilities: Vec<f64> = p
        .iter()
        .map(|v| {
            v.to_f64()
                .ok_or_else(|| SolutionsError::Internal("lottery overflow".into()))
        })
        .collect::<Result<_, _>>()?;
    Ok(MaximalLottery {
        support,
        probabilities,
    })
}

/// Dense simplex over exact rationals with Bland's rule. The game matrix is
/// shifted to all-positive entries so the standard-form program
/// `max 1ᵀy, Gy <= 1, y >= 0` is bounded with the slack basis feasible;
/// the lottery is read off the optimal duals.
fn simplex_lottery(t: &Tournament, reversed: bool) -> Result<Vec<BigRational>, SolutionsError> {
    let n = t.n();
    let cols = 2 * n + 1;
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut tab: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|j| {
                    let g = if i == j {
                        0
                    } else if t.beats(i, j) {
                        1
                    } else {
                        -1
                    };
                    rat(g + 2)
                })
                .collect();
            row.extend((0..n).map(|k| if k == i { rat(1) } else { rat(0) }));
            row.push(rat(1));
            row
        })
        .collect();
    let mut obj: Vec<BigRational> = (0..cols)
        .map(|j| if j < n { rat(1) } else { rat(0) })
        .collect();
    let mut basis: Vec<usize> = (n..2 * n).collect();

    let var_rank = |j: usize| if reversed { 2 * n - 1 - j } else { j };
    loop {
        let entering = (0..2 * n)
            .filter(|&j| obj[j].is_positive())
            .min_by_key(|&j| var_rank(j));
        let Some(e) = entering else { break };
        let mut leaving: Option<usize> = None;
        for r in 0..n {
            if !tab[r][e].is_positive() {
                continue;
            }
            let better = match leaving {
                None => true,
                Some(lr) => {
                    let current = &tab[lr][cols - 1] / &tab[lr][e];
                    let candidate = &tab[r][cols - 1] / &tab[r][e];
                    candidate < current
                        || (candidate == current && var_rank(basis[r]) < var_rank(basis[lr]))
                }
            };
            if better {
                leaving = Some(r);
            }
        }
        let Some(pr) = leaving else {
            return Err(SolutionsError::Internal("unbounded game program".into()));
        };
        let pivot = tab[pr][e].clone();
        for val in tab[pr].iter_mut() {
            *val = &*val / &pivot;
        }
        let pivot_row = tab[pr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r == pr || row[e].is_zero() {
                continue;
            }
            let factor = row[e].clone();
            for (slot, pivot_val) in row.iter_mut().zip(&pivot_row) {
                let delta = &factor * pivot_val;
                *slot -= delta;
            }
        }
        if !obj[e].is_zero() {
            let factor = obj[e].clone();
            for (slot, pivot_val) in obj.iter_mut().zip(&pivot_row) {
                let delta = &factor * pivot_val;
                *slot -= delta;
            }
        }
        basis[pr] = e;
    }

    let duals: Vec<BigRational> = (0..n).map(|i| -obj[n + i].clone()).collect();
    let total = duals.iter().fold(BigRational::zero(), |acc, d| acc + d);
    if !total.is_positive() {
        return Err(SolutionsError::Internal("degenerate dual solution".into()));
    }
    Ok(duals.into_iter().map(|d| d / total.clone()).collect())
}

/// Players of maximum `k`-step walk count `A^k 1`, in exact big-integer
/// arithmetic.
pub fn iterated_matrix_set(t: &Tournament, k: usize) -> Result<Vec<usize>, SolutionsError> {
    Ok(iterated_matrix_scores(t, k)?.argmax_set())
}

pub fn iterated_matrix_scores(
    t: &Tournament,
    k: usize,
) -> Result<ScoreVector<BigUint>, SolutionsError> {
    if k == 0 {
        return Err(SolutionsError::InvalidArgument(
            "k must be at least 1".into(),
        ));
    }
    let n = t.n();
    let mut scores: Vec<BigUint> = vec![BigUint::from(1u32); n];
    for _ in 0..k {
        let next: Vec<BigUint> = (0..n)
            .map(|i| {
                t.out_neighbors(i)
                    .iter()
                    .fold(BigUint::zero(), |acc, &j| acc + &scores[j])
            })
            .collect();
        scores = next;
    }
    Ok(ScoreVector { scores })
}

/// Number of directed simple paths with `k` edges starting at `v`.
pub fn count_k_paths(t: &Tournament, v: usize, k: usize) -> Result<u64, SolutionsError> {
    if k == 0 || k > KPATH_CAP {
        return Err(SolutionsError::CapExceeded {
            what: "k-paths",
            n: k,
            cap: KPATH_CAP,
        });
    }
    if v >= t.n() {
        return Err(SolutionsError::InvalidArgument(format!(
            "player {v} out of range"
        )));
    }
    let words = t.n().div_ceil(64);
    let mut visited = vec![0u64; words];
    bits::set(&mut visited, v);
    Ok(count_paths_from(t, v, k, &mut visited))
}

fn count_paths_from(t: &Tournament, u: usize, left: usize, visited: &mut Vec<u64>) -> u64 {
    if left == 0 {
        return 1;
    }
    let mut total = 0;
    for w in t.out_neighbors(u) {
        if !bits::test(visited, w) {
            bits::set(visited, w);
            total += count_paths_from(t, w, left - 1, visited);
            bits::clear(visited, w);
        }
    }
    total
}

/// Players from which the maximum number of simple `k`-paths originates.
pub fn max_kpath_players(t: &Tournament, k: usize) -> Result<Vec<usize>, SolutionsError> {
    Ok(kpath_scores(t, k)?.argmax_set())
}

pub fn kpath_scores(t: &Tournament, k: usize) -> Result<ScoreVector<u64>, SolutionsError> {
    let scores = t
        .players()
        .map(|v| count_k_paths(t, v, k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ScoreVector { scores })
}
