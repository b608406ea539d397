//! Dense tournament representation and the graph predicates built on it.
//!
//! A tournament is a complete oriented graph: for every pair of distinct
//! players exactly one of them beats the other. Adjacency is stored as one
//! bit row per player in both directions, so subset degree counts and
//! reachability sweeps cost `O(n / 64)` words per player.

use thiserror::Error;

pub(crate) const WORD_BITS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TournamentError {
    #[error("player {0} is recorded as beating itself")]
    SelfBeat(usize),
    #[error("players {0} and {1} are recorded as beating each other")]
    Antisymmetry(usize, usize),
    #[error("no result recorded between players {0} and {1}")]
    Incomplete(usize, usize),
    #[error("tournament must have at least one player")]
    Empty,
    #[error("player index {player} out of range for {n} players")]
    UnknownPlayer { player: usize, n: usize },
    #[error("duplicate player {0} in subset")]
    DuplicatePlayer(usize),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("sets overlap at player {0}")]
    OverlappingSets(usize),
}

/// Complete oriented graph on `n` players, immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    words: usize,
    /// Bit `j` of row `i` set iff `i` beats `j`.
    out_rows: Vec<u64>,
    /// Bit `j` of row `i` set iff `j` beats `i`.
    in_rows: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from a beat relation, validating irreflexivity,
    /// antisymmetry and completeness. The error names the offending pair.
    pub fn new(n: usize, beats: impl Fn(usize, usize) -> bool) -> Result<Self, TournamentError> {
        if n == 0 {
            return Err(TournamentError::Empty);
        }
        let words = n.div_ceil(WORD_BITS);
        let mut out_rows = vec![0u64; n * words];
        let mut in_rows = vec![0u64; n * words];
        for i in 0..n {
            if beats(i, i) {
                return Err(TournamentError::SelfBeat(i));
            }
            for j in (i + 1)..n {
                let fwd = beats(i, j);
                let bwd = beats(j, i);
                let (winner, loser) = match (fwd, bwd) {
                    (true, true) => return Err(TournamentError::Antisymmetry(i, j)),
                    (false, false) => return Err(TournamentError::Incomplete(i, j)),
                    (true, false) => (i, j),
                    (false, true) => (j, i),
                };
                out_rows[winner * words + loser / WORD_BITS] |= 1 << (loser % WORD_BITS);
                in_rows[loser * words + winner / WORD_BITS] |= 1 << (winner % WORD_BITS);
            }
        }
        Ok(Self {
            n,
            words,
            out_rows,
            in_rows,
        })
    }

    /// Builds a tournament from an explicit boolean matrix (`m[i][j]` true
    /// iff `i` beats `j`).
    pub fn from_matrix(m: &[Vec<bool>]) -> Result<Self, TournamentError> {
        let n = m.len();
        for row in m {
            if row.len() != n {
                return Err(TournamentError::Incomplete(0, row.len().min(n)));
            }
        }
        Self::new(n, |i, j| m[i][j])
    }

    /// Builds from a list of directed edges; every unordered pair must be
    /// covered exactly once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, TournamentError> {
        for &(u, v) in edges {
            for p in [u, v] {
                if p >= n {
                    return Err(TournamentError::UnknownPlayer { player: p, n });
                }
            }
        }
        Self::new(n, |i, j| edges.contains(&(i, j)))
    }

    /// Transitive tournament where lower index beats higher index.
    pub fn transitive(n: usize) -> Self {
        Self::new(n, |i, j| i < j).expect("transitive orientation is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn players(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    #[inline]
    pub fn beats(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.out_rows[i * self.words + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub(crate) fn out_words(&self, v: usize) -> &[u64] {
        &self.out_rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn in_words(&self, v: usize) -> &[u64] {
        &self.in_rows[v * self.words..(v + 1) * self.words]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_words(v)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_words(v)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        bits::indices(self.out_words(v))
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        bits::indices(self.in_words(v))
    }

    /// `out_S(v)`: how many members of `subset` the player beats.
    pub fn out_degree_within(&self, v: usize, subset: &[usize]) -> usize {
        subset.iter().filter(|&&u| self.beats(v, u)).count()
    }

    /// `in_S(v)`: how many members of `subset` beat the player.
    pub fn in_degree_within(&self, v: usize, subset: &[usize]) -> usize {
        subset.iter().filter(|&&u| self.beats(u, v)).count()
    }

    /// The player that beats everyone else, if there is one.
    pub fn condorcet_winner(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.out_degree(v) == self.n - 1)
    }

    /// Players reachable from `v` within `steps` directed steps, as a bit
    /// mask including `v` itself. Breadth-first by levels over bit rows.
    pub(crate) fn reach_mask(&self, v: usize, steps: usize) -> Vec<u64> {
        let mut reach = vec![0u64; self.words];
        bits::set(&mut reach, v);
        let mut frontier = reach.clone();
        for _ in 0..steps {
            let mut next = vec![0u64; self.words];
            for u in bits::indices(&frontier) {
                bits::or_into(&mut next, self.out_words(u));
            }
            bits::andnot_into(&mut next, &reach);
            if bits::is_empty(&next) {
                break;
            }
            bits::or_into(&mut reach, &next);
            frontier = next;
        }
        reach
    }

    /// A king has directed distance at most 2 to every other player.
    pub fn is_king(&self, v: usize) -> bool {
        bits::count(&self.reach_mask(v, 2)) == self.n
    }

    /// A 3-king has directed distance at most 3 to every other player.
    pub fn is_three_king(&self, v: usize) -> bool {
        bits::count(&self.reach_mask(v, 3)) == self.n
    }

    /// A superking is a player `v` where every dominator of `v` loses to at
    /// least `log2 n` of `v`'s victims. The integer count is compared with
    /// `>=` against the exact real threshold.
    pub fn is_superking(&self, v: usize) -> bool {
        let threshold = (self.n as f64).log2();
        let victims = self.out_words(v).to_vec();
        self.in_neighbors(v)
            .into_iter()
            .all(|u| bits::count_and(self.in_words(u), &victims) as f64 >= threshold)
    }

    /// True iff every member of `a` beats every member of `b`. The sets must
    /// be disjoint.
    pub fn dominates(&self, a: &[usize], b: &[usize]) -> Result<bool, TournamentError> {
        for &p in a.iter().chain(b) {
            if p >= self.n {
                return Err(TournamentError::UnknownPlayer {
                    player: p,
                    n: self.n,
                });
            }
        }
        if let Some(&p) = a.iter().find(|&&p| b.contains(&p)) {
            return Err(TournamentError::OverlappingSets(p));
        }
        Ok(a.iter().all(|&x| b.iter().all(|&y| self.beats(x, y))))
    }

    /// Induced sub-tournament on `subset`, with the index mapping back to
    /// the original player identifiers.
    pub fn restrict(&self, subset: &[usize]) -> Result<Restriction, TournamentError> {
        if subset.is_empty() {
            return Err(TournamentError::EmptySubset);
        }
        let mut original: Vec<usize> = subset.to_vec();
        original.sort_unstable();
        for pair in original.windows(2) {
            if pair[0] == pair[1] {
                return Err(TournamentError::DuplicatePlayer(pair[0]));
            }
        }
        if let Some(&p) = original.last() {
            if p >= self.n {
                return Err(TournamentError::UnknownPlayer {
                    player: p,
                    n: self.n,
                });
            }
        }
        let tournament =
            Tournament::new(original.len(), |i, j| self.beats(original[i], original[j]))?;
        Ok(Restriction {
            tournament,
            original,
        })
    }
}

/// An induced sub-tournament together with its index mapping.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub tournament: Tournament,
    /// `original[local]` is the player id in the parent tournament.
    pub original: Vec<usize>,
}

impl Restriction {
    pub fn to_original(&self, local: usize) -> usize {
        self.original[local]
    }

    pub fn to_local(&self, original: usize) -> Option<usize> {
        self.original.binary_search(&original).ok()
    }
}

/// Word-slice bit set helpers shared by the solvers.
pub(crate) mod bits {
    use super::WORD_BITS;

    pub fn set(mask: &mut [u64], i: usize) {
        mask[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn clear(mask: &mut [u64], i: usize) {
        mask[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn test(mask: &[u64], i: usize) -> bool {
        mask[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn count(mask: &[u64]) -> usize {
        mask.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_and(a: &[u64], b: &[u64]) -> usize {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn or_into(dst: &mut [u64], src: &[u64]) {
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= s;
        }
    }

    pub fn andnot_into(dst: &mut [u64], remove: &[u64]) {
        for (d, r) in dst.iter_mut().zip(remove) {
            *d &= !r;
        }
    }

    pub fn is_empty(mask: &[u64]) -> bool {
        mask.iter().all(|&w| w == 0)
    }

    pub fn indices(mask: &[u64]) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in mask.iter().enumerate() {
            let mut bitsleft = word;
            while bitsleft != 0 {
                let b = bitsleft.trailing_zeros() as usize;
                out.push(w * WORD_BITS + b);
                bitsleft &= bitsleft - 1;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> Tournament {
        Tournament::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn singleton_is_valid() {
        let t = Tournament::new(1, |_, _| false).unwrap();
        assert_eq!(t.out_degree(0), 0);
        assert_eq!(t.condorcet_winner(), Some(0));
    }

    #[test]
    fn three_cycle_degrees() {
        let t = three_cycle();
        for v in t.players() {
            assert_eq!(t.out_degree(v), 1);
            assert_eq!(t.in_degree(v), 1);
        }
        assert_eq!(t.condorcet_winner(), None);
    }

    #[test]
    fn antisymmetry_violation_names_pair() {
        let err = Tournament::from_edges(3, &[(0, 1), (1, 0), (1, 2), (0, 2)]).unwrap_err();
        assert_eq!(err, TournamentError::Antisymmetry(0, 1));
    }

    #[test]
    fn incomplete_relation_rejected() {
        let err = Tournament::from_edges(3, &[(0, 1)]).unwrap_err();
        assert_eq!(err, TournamentError::Incomplete(0, 2));
    }

    #[test]
    fn self_beat_rejected() {
        let err = Tournament::new(2, |i, j| i == 0 && (j == 0 || j == 1)).unwrap_err();
        assert_eq!(err, TournamentError::SelfBeat(0));
    }

    #[test]
    fn degree_sum_is_pair_count() {
        let t = Tournament::transitive(9);
        let total: usize = t.players().map(|v| t.out_degree(v)).sum();
        assert_eq!(total, 9 * 8 / 2);
    }

    #[test]
    fn restrict_to_all_players_is_identity() {
        let t = three_cycle();
        let r = t.restrict(&[0, 1, 2]).unwrap();
        assert_eq!(r.tournament, t);
        assert_eq!(r.original, vec![0, 1, 2]);
    }

    #[test]
    fn restrict_induces_edges() {
        let t = three_cycle();
        let r = t.restrict(&[0, 1]).unwrap();
        assert!(r.tournament.beats(0, 1));
        assert_eq!(r.to_original(1), 1);
    }

    #[test]
    fn restrict_of_transitive_stays_transitive() {
        let t = Tournament::transitive(8);
        let r = t.restrict(&[1, 3, 5, 7]).unwrap();
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert!(r.tournament.beats(i, j));
            }
        }
    }

    #[test]
    fn restrict_rejects_empty_and_duplicates() {
        let t = three_cycle();
        assert_eq!(t.restrict(&[]).unwrap_err(), TournamentError::EmptySubset);
        assert_eq!(
            t.restrict(&[1, 1]).unwrap_err(),
            TournamentError::DuplicatePlayer(1)
        );
    }

    #[test]
    fn kings_in_three_cycle() {
        let t = three_cycle();
        for v in t.players() {
            assert!(t.is_king(v));
            assert!(t.is_three_king(v));
        }
    }

    #[test]
    fn transitive_bottom_is_no_king() {
        let t = Tournament::transitive(6);
        assert!(t.is_king(0));
        assert!(!t.is_king(5));
        assert!(!t.is_three_king(5));
    }

    #[test]
    fn condorcet_winner_is_superking() {
        let t = Tournament::transitive(8);
        assert!(t.is_superking(0));
    }

    #[test]
    fn transitive_second_rank_is_not_superking() {
        // Rank 1's only dominator is rank 0, which loses to none of rank 1's
        // victims; log2(8) = 3.
        let t = Tournament::transitive(8);
        assert!(!t.is_superking(1));
    }

    #[test]
    fn planted_superking() {
        // v = 0 beats 1..=5; 6 and 7 beat v but lose to at least three of
        // v's victims.
        let t = Tournament::new(8, |i, j| match (i, j) {
            (0, j) => (1..=5).contains(&j),
            (i, 0) => i >= 6,
            (i, j) if i >= 6 && (1..=3).contains(&j) => false,
            (i, j) if j >= 6 && (1..=3).contains(&i) => true,
            (i, j) => i < j,
        })
        .unwrap();
        assert!(t.is_superking(0));
    }

    #[test]
    fn dominates_checks() {
        let t = Tournament::transitive(4);
        assert!(t.dominates(&[0], &[1, 2, 3]).unwrap());
        let c = three_cycle();
        assert!(!c.dominates(&[0], &[2]).unwrap());
        assert_eq!(
            c.dominates(&[0, 1], &[1, 2]).unwrap_err(),
            TournamentError::OverlappingSets(1)
        );
    }
}
