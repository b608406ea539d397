//! Generative tournament models and hand-built counterexample families.
//!
//! Generation is deterministic given a `ModelSpec`: every edge draws from a
//! counter-style RNG keyed by `(seed, label, pair)`, so outcomes do not
//! depend on generation order and subsetting one edge never perturbs
//! another.

use thiserror::Error;

use crate::tournament::{bits, Tournament, WORD_BITS};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("parameter {name} = {value} out of range ({constraint})")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("infeasible construction: {0}")]
    Infeasible(String),
    #[error(
        "pair policy cannot meet the degree floor: player {player} has {got} pairs, needs {need}"
    )]
    DegreeFloor {
        player: usize,
        got: usize,
        need: usize,
    },
    #[error("cannot parse model spec: {0}")]
    Parse(String),
    #[error(transparent)]
    Tournament(#[from] crate::tournament::TournamentError),
}

/// splitmix64 finalizer; the core of the keyed generator.
fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Stable hash of `(master, label, indices)` used to key every random draw
/// and to derive per-trial seeds in experiment sweeps.
pub fn derive_seed(master: u64, label: &str, indices: &[u64]) -> u64 {
    let mut h = mix64(master);
    for &b in label.as_bytes() {
        h = mix64(h ^ u64::from(b));
    }
    for &i in indices {
        h = mix64(h ^ i);
    }
    h
}

/// Uniform draw in `[0, 1)` from a keyed stream.
fn unit_draw(master: u64, label: &str, indices: &[u64]) -> f64 {
    (derive_seed(master, label, indices) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    CondorcetRandom,
    Flexible,
}

/// How the randomly-oriented pair set is chosen in the flexible model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairPolicy {
    /// Pair each player with its cyclically nearest neighbors; always meets
    /// the degree floor.
    #[default]
    Circulant,
}

/// How the per-pair win probability is chosen in the flexible model. The
/// probability refers to the lower-indexed player winning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProbPolicy {
    /// `1 - p` for the lower index on every pair; matches the ranked model.
    #[default]
    Constant,
    /// Drawn uniformly in `[p, 1-p]` per pair.
    Uniform,
    /// Scales with rank distance: adjacent ranks are near-fair, the extreme
    /// pair reaches `1 - p`.
    RankBiased,
}

/// Orientation rule for the pairs outside the random set. Policies only see
/// indices, never the random outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdversaryPolicy {
    /// The win goes to the lower index: the adversary hard-codes the
    /// ranking order on every pair it controls.
    #[default]
    TowardLower,
    /// A keyed coin flip per pair.
    Random,
}

impl AdversaryPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            AdversaryPolicy::TowardLower => "toward-lower",
            AdversaryPolicy::Random => "random",
        }
    }
}

/// Full description of a generated tournament distribution; two equal specs
/// generate bit-identical tournaments.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub n: usize,
    pub p: f64,
    pub delta: Option<f64>,
    pub pair_policy: PairPolicy,
    pub prob_policy: ProbPolicy,
    pub adversary_policy: AdversaryPolicy,
    pub seed: u64,
}

impl ModelSpec {
    /// Ranked model: lower index beats higher with probability `1 - p`,
    /// independently per pair. `p = 0` is accepted as the degenerate
    /// transitive limit.
    pub fn condorcet_random(n: usize, p: f64, seed: u64) -> Result<Self, ModelError> {
        check_noise(p)?;
        check_n(n)?;
        Ok(Self {
            kind: ModelKind::CondorcetRandom,
            n,
            p,
            delta: None,
            pair_policy: PairPolicy::default(),
            prob_policy: ProbPolicy::default(),
            adversary_policy: AdversaryPolicy::default(),
            seed,
        })
    }

    pub fn flexible(
        n: usize,
        p: f64,
        delta: f64,
        pair_policy: PairPolicy,
        prob_policy: ProbPolicy,
        adversary_policy: AdversaryPolicy,
        seed: u64,
    ) -> Result<Self, ModelError> {
        check_noise(p)?;
        check_n(n)?;
        if !(delta > 0.0 && delta <= 0.5) {
            return Err(ModelError::ParameterOutOfRange {
                name: "delta",
                value: delta,
                constraint: "0 < delta <= 1/2",
            });
        }
        Ok(Self {
            kind: ModelKind::Flexible,
            n,
            p,
            delta: Some(delta),
            pair_policy,
            prob_policy,
            adversary_policy,
            seed,
        })
    }

    /// Flat key-value serialization, e.g. `model=cr n=8 p=0.3 seed=1`.
    pub fn to_kv(&self) -> String {
        match self.kind {
            ModelKind::CondorcetRandom => {
                format!("model=cr n={} p={} seed={}", self.n, self.p, self.seed)
            }
            ModelKind::Flexible => format!(
                "model=flexible n={} p={} delta={} pair=circulant prob={} adversary={} seed={}",
                self.n,
                self.p,
                self.delta.expect("flexible spec carries delta"),
                match self.prob_policy {
                    ProbPolicy::Constant => "constant",
                    ProbPolicy::Uniform => "uniform",
                    ProbPolicy::RankBiased => "rank-biased",
                },
                self.adversary_policy.as_str(),
                self.seed
            ),
        }
    }

    pub fn from_kv(text: &str) -> Result<Self, ModelError> {
        let mut model = None;
        let mut n = None;
        let mut p = None;
        let mut delta = None;
        let mut prob = ProbPolicy::default();
        let mut adversary = AdversaryPolicy::default();
        let mut seed = None;
        for token in text.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| ModelError::Parse(format!("expected key=value, got `{token}`")))?;
            match key {
                "model" => model = Some(value.to_string()),
                "n" => n = Some(parse_num(key, value)?),
                "p" => p = Some(parse_float(key, value)?),
                "delta" => delta = Some(parse_float(key, value)?),
                "pair" if value == "circulant" => {}
                "prob" => {
                    prob = match value {
                        "constant" => ProbPolicy::Constant,
                        "uniform" => ProbPolicy::Uniform,
                        "rank-biased" => ProbPolicy::RankBiased,
                        other => {
                            return Err(ModelError::Parse(format!("unknown prob policy `{other}`")))
                        }
                    }
                }
                "adversary" => {
                    adversary = match value {
                        "toward-lower" => AdversaryPolicy::TowardLower,
                        "random" => AdversaryPolicy::Random,
                        other => {
                            return Err(ModelError::Parse(format!(
                                "unknown adversary policy `{other}`"
                            )))
                        }
                    }
                }
                "seed" => {
                    seed = Some(
                        value
                            .parse::<u64>()
                            .map_err(|e| ModelError::Parse(format!("seed: {e}")))?,
                    )
                }
                other => return Err(ModelError::Parse(format!("unknown key `{other}`"))),
            }
        }
        let model = model.ok_or_else(|| ModelError::Parse("missing model=".into()))?;
        let n = n.ok_or_else(|| ModelError::Parse("missing n=".into()))?;
        let p = p.ok_or_else(|| ModelError::Parse("missing p=".into()))?;
        let seed = seed.ok_or_else(|| ModelError::Parse("missing seed=".into()))?;
        match model.as_str() {
            "cr" => Self::condorcet_random(n, p, seed),
            "flexible" => {
                let delta = delta.ok_or_else(|| ModelError::Parse("missing delta=".into()))?;
                Self::flexible(n, p, delta, PairPolicy::Circulant, prob, adversary, seed)
            }
            other => Err(ModelError::Parse(format!("unknown model `{other}`"))),
        }
    }
}

fn parse_num(key: &str, value: &str) -> Result<usize, ModelError> {
    value
        .parse()
        .map_err(|e| ModelError::Parse(format!("{key}: {e}")))
}

fn parse_float(key: &str, value: &str) -> Result<f64, ModelError> {
    value
        .parse()
        .map_err(|e| ModelError::Parse(format!("{key}: {e}")))
}

fn check_noise(p: f64) -> Result<(), ModelError> {
    if !(0.0..0.5).contains(&p) {
        return Err(ModelError::ParameterOutOfRange {
            name: "p",
            value: p,
            constraint: "0 <= p < 1/2",
        });
    }
    Ok(())
}

fn check_n(n: usize) -> Result<(), ModelError> {
    if n < 2 {
        return Err(ModelError::ParameterOutOfRange {
            name: "n",
            value: n as f64,
            constraint: "n >= 2",
        });
    }
    Ok(())
}

/// Which pairs of a flexible tournament were oriented randomly; everything
/// else was set by the adversary policy.
#[derive(Debug, Clone)]
pub struct EdgeProvenance {
    n: usize,
    random: Vec<u64>,
}

impl EdgeProvenance {
    fn new(n: usize) -> Self {
        Self {
            n,
            random: vec![0u64; (n * n).div_ceil(WORD_BITS)],
        }
    }

    fn mark(&mut self, i: usize, j: usize) {
        bits::set(&mut self.random, i * self.n + j);
        bits::set(&mut self.random, j * self.n + i);
    }

    pub fn is_random(&self, i: usize, j: usize) -> bool {
        bits::test(&self.random, i * self.n + j)
    }

    pub fn random_pair_count(&self) -> usize {
        bits::count(&self.random) / 2
    }
}

#[derive(Debug, Clone)]
pub struct FlexibleOutcome {
    pub tournament: Tournament,
    pub provenance: EdgeProvenance,
}

/// Generates a ranked random tournament: pair `i < j` is oriented `i -> j`
/// unless the keyed draw falls in the upset region `[0, p)`.
pub fn gen_cr(spec: &ModelSpec) -> Result<Tournament, ModelError> {
    if spec.kind != ModelKind::CondorcetRandom {
        return Err(ModelError::Parse("spec is not a ranked-model spec".into()));
    }
    let (n, p, seed) = (spec.n, spec.p, spec.seed);
    Ok(Tournament::new(n, |i, j| {
        if i == j {
            return false;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let lower_wins = unit_draw(seed, "edge", &[lo as u64, hi as u64]) >= p;
        (i < j) == lower_wins
    })?)
}

/// Generates a flexible-model tournament with its edge provenance.
pub fn gen_flexible(spec: &ModelSpec) -> Result<FlexibleOutcome, ModelError> {
    gen_flexible_impl(spec, None)
}

/// Same, with a caller-supplied deterministic adversary: the rule receives
/// each non-random pair `(i, j)` with `i < j` and returns whether `i` wins.
pub fn gen_flexible_with_adversary(
    spec: &ModelSpec,
    rule: &dyn Fn(usize, usize) -> bool,
) -> Result<FlexibleOutcome, ModelError> {
    gen_flexible_impl(spec, Some(rule))
}

fn gen_flexible_impl(
    spec: &ModelSpec,
    custom_adversary: Option<&dyn Fn(usize, usize) -> bool>,
) -> Result<FlexibleOutcome, ModelError> {
    if spec.kind != ModelKind::Flexible {
        return Err(ModelError::Parse(
            "spec is not a flexible-model spec".into(),
        ));
    }
    let n = spec.n;
    let delta = spec.delta.expect("flexible spec carries delta");
    let floor = required_degree(n, delta);
    let random_pairs = circulant_pairs(n, floor);
    for i in 0..n {
        let got = (0..n)
            .filter(|&j| j != i && bits::test(&random_pairs, pair_bit(n, i, j)))
            .count();
        if got < floor {
            return Err(ModelError::DegreeFloor {
                player: i,
                got,
                need: floor,
            });
        }
    }
    let mut provenance = EdgeProvenance::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if bits::test(&random_pairs, pair_bit(n, i, j)) {
                provenance.mark(i, j);
            }
        }
    }
    let (p, seed) = (spec.p, spec.seed);
    let prob_policy = spec.prob_policy;
    let adversary = spec.adversary_policy;
    let tournament = Tournament::new(n, |i, j| {
        if i == j {
            return false;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let lower_wins = if bits::test(&random_pairs, pair_bit(n, lo, hi)) {
            let win_prob = match prob_policy {
                ProbPolicy::Constant => 1.0 - p,
                ProbPolicy::Uniform => {
                    p + (1.0 - 2.0 * p) * unit_draw(seed, "edge-prob", &[lo as u64, hi as u64])
                }
                ProbPolicy::RankBiased => 0.5 + (0.5 - p) * (hi - lo) as f64 / (n - 1) as f64,
            };
            // The upset region sits at the low end of the draw, so a
            // constant-probability flexible run reproduces the ranked model
            // draw for draw.
            unit_draw(seed, "edge", &[lo as u64, hi as u64]) >= 1.0 - win_prob
        } else {
            match custom_adversary {
                Some(rule) => rule(lo, hi),
                None => match adversary {
                    AdversaryPolicy::TowardLower => true,
                    AdversaryPolicy::Random => {
                        unit_draw(seed, "adversary", &[lo as u64, hi as u64]) < 0.5
                    }
                },
            }
        };
        (i < j) == lower_wins
    })?;
    Ok(FlexibleOutcome {
        tournament,
        provenance,
    })
}

/// The degree floor `ceil((1/2 + delta) * n)`, capped at the `n - 1`
/// opponents a player actually has (the cap only binds at `delta = 1/2`,
/// where the random set is every pair).
pub fn required_degree(n: usize, delta: f64) -> usize {
    (((0.5 + delta) * n as f64).ceil() as usize).min(n - 1)
}

fn pair_bit(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

fn circulant_pairs(n: usize, floor: usize) -> Vec<u64> {
    let reach = floor.div_ceil(2);
    let mut mask = vec![0u64; (n * n).div_ceil(WORD_BITS)];
    for i in 0..n {
        for d in 1..=reach {
            let j = (i + d) % n;
            if i != j {
                bits::set(&mut mask, pair_bit(n, i.min(j), i.max(j)));
                bits::set(&mut mask, pair_bit(n, i.max(j), i.min(j)));
            }
        }
    }
    mask
}

/// Uniform random tournament: every pair an independent fair coin.
pub fn uniform_random(n: usize, seed: u64) -> Tournament {
    Tournament::new(n, |i, j| {
        if i == j {
            return false;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let lower_wins = unit_draw(seed, "edge", &[lo as u64, hi as u64]) >= 0.5;
        (i < j) == lower_wins
    })
    .expect("coin orientation is always a valid tournament")
}

/// Rotational orientation: `i` beats the next `(m-1)/2` players cyclically.
/// Regular for odd `m`; for even `m` the diametric pairs go to the lower
/// index, leaving degrees within one of each other.
fn rotational_beats(m: usize, i: usize, j: usize) -> bool {
    if i == j {
        return false;
    }
    let d = (j + m - i) % m;
    if m % 2 == 1 {
        d <= (m - 1) / 2
    } else if d == m / 2 {
        i < j
    } else {
        d < m / 2
    }
}

/// Instance separating the uncovered set from the SE winners in both
/// directions: a small all-kings group `A` beaten by a large regular group
/// `B`, with two gatekeepers `x` and `y` on top.
///
/// Layout: `A = 0..k`, `B = k..k+b`, `x = k+b`, `y = k+b+1`, with
/// `x > y, B`; `y > B, A`; `B > A`; `A > x`. Both internal groups are
/// rotational, so for odd `k` every member of `A` is a king.
pub fn build_uncovered_ratio_example(k: usize, b: usize) -> Result<Tournament, ModelError> {
    if b.is_multiple_of(2) {
        return Err(ModelError::Infeasible(format!(
            "group B must have odd size for a regular tournament, got {b}"
        )));
    }
    if k == 0 {
        return Err(ModelError::Infeasible("group A must be nonempty".into()));
    }
    let n = k + b + 2;
    let x = k + b;
    Ok(Tournament::new(n, move |i, j| {
        let group = |v: usize| {
            if v < k {
                0 // A
            } else if v < k + b {
                1 // B
            } else if v == x {
                2
            } else {
                3 // y
            }
        };
        match (group(i), group(j)) {
            (0, 0) => rotational_beats(k, i, j),
            (1, 1) => rotational_beats(b, i - k, j - k),
            (2, 3) => true, // x beats y
            (3, 2) => false,
            (2, 1) => true, // x beats B
            (1, 2) => false,
            (3, 1) => true, // y beats B
            (1, 3) => false,
            (3, 0) => true, // y beats A
            (0, 3) => false,
            (1, 0) => true, // B beats A
            (0, 1) => false,
            (0, 2) => true, // A beats x
            (2, 0) => false,
            _ => false,
        }
    })?)
}

/// Instance where the 2-step walk-count winner beats fewer than half the
/// field: a large group `A` over `x`, `x` over a smaller group `B`, and `B`
/// back over `A`, with both groups near-regular.
///
/// Layout: `A = 0..a`, `B = a..a+b`, `x = n-1`, with `a` the largest odd
/// number at most `r * n`.
pub fn build_itmatrix_example(r: f64, n: usize) -> Result<Tournament, ModelError> {
    let upper = 1.0 / 3f64.sqrt();
    if !(r > 0.5 && r < upper) {
        return Err(ModelError::ParameterOutOfRange {
            name: "r",
            value: r,
            constraint: "1/2 < r < 1/sqrt(3)",
        });
    }
    let mut a = (r * n as f64).floor() as usize;
    if a.is_multiple_of(2) {
        a -= 1;
    }
    if a < 3 || n < a + 4 {
        return Err(ModelError::Infeasible(format!(
            "n = {n} too small for near-regular groups at r = {r}"
        )));
    }
    let b = n - 1 - a;
    Ok(Tournament::new(n, move |i, j| {
        let group = |v: usize| {
            if v < a {
                0 // A
            } else if v < a + b {
                1 // B
            } else {
                2 // x
            }
        };
        match (group(i), group(j)) {
            (0, 0) => rotational_beats(a, i, j),
            (1, 1) => rotational_beats(b, i - a, j - a),
            (0, 2) => true, // A beats x
            (2, 0) => false,
            (2, 1) => true, // x beats B
            (1, 2) => false,
            (1, 0) => true, // B beats A
            (0, 1) => false,
            _ => false,
        }
    })?)
}

/// Transitive tournament with the single modification that the weakest
/// player beats the strongest.
pub fn build_bipartisan_example(n: usize) -> Result<Tournament, ModelError> {
    if n < 3 {
        return Err(ModelError::Infeasible(format!(
            "need at least 3 players, got {n}"
        )));
    }
    Ok(Tournament::new(n, move |i, j| {
        if i == 0 && j == n - 1 {
            false
        } else if i == n - 1 && j == 0 {
            true
        } else {
            i < j
        }
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cr_zero_noise_is_transitive() {
        let spec = ModelSpec::condorcet_random(8, 0.0, 1).unwrap();
        assert_eq!(gen_cr(&spec).unwrap(), Tournament::transitive(8));
    }

    #[test]
    fn cr_is_deterministic() {
        let spec = ModelSpec::condorcet_random(32, 0.3, 99).unwrap();
        assert_eq!(gen_cr(&spec).unwrap(), gen_cr(&spec).unwrap());
    }

    #[test]
    fn cr_upset_fraction_concentrates() {
        let n = 1000;
        let spec = ModelSpec::condorcet_random(n, 0.3, 7).unwrap();
        let t = gen_cr(&spec).unwrap();
        let mut upsets = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                if t.beats(j, i) {
                    upsets += 1;
                }
            }
        }
        let fraction = upsets as f64 / (n * (n - 1) / 2) as f64;
        assert!((fraction - 0.3).abs() < 0.01, "upset fraction {fraction}");
    }

    #[test]
    fn cr_rejects_bad_noise() {
        assert!(matches!(
            ModelSpec::condorcet_random(8, 0.5, 1),
            Err(ModelError::ParameterOutOfRange { name: "p", .. })
        ));
    }

    #[test]
    fn flexible_rejects_bad_delta() {
        let err = ModelSpec::flexible(
            8,
            0.3,
            0.6,
            PairPolicy::Circulant,
            ProbPolicy::Constant,
            AdversaryPolicy::TowardLower,
            1,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ModelError::ParameterOutOfRange { name: "delta", .. }
        ));
    }

    #[test]
    fn flexible_full_delta_matches_cr_bit_for_bit() {
        let cr = gen_cr(&ModelSpec::condorcet_random(64, 0.35, 42).unwrap()).unwrap();
        let spec = ModelSpec::flexible(
            64,
            0.35,
            0.5,
            PairPolicy::Circulant,
            ProbPolicy::Constant,
            AdversaryPolicy::TowardLower,
            42,
        )
        .unwrap();
        let out = gen_flexible(&spec).unwrap();
        assert_eq!(out.tournament, cr);
        assert_eq!(out.provenance.random_pair_count(), 64 * 63 / 2);
    }

    #[test]
    fn flexible_degree_floor_holds() {
        let spec = ModelSpec::flexible(
            128,
            0.3,
            0.25,
            PairPolicy::Circulant,
            ProbPolicy::Uniform,
            AdversaryPolicy::Random,
            5,
        )
        .unwrap();
        let out = gen_flexible(&spec).unwrap();
        let need = required_degree(128, 0.25);
        for i in 0..128 {
            let got = (0..128)
                .filter(|&j| j != i && out.provenance.is_random(i, j))
                .count();
            assert!(got >= need, "player {i}: {got} < {need}");
        }
    }

    #[test]
    fn flexible_provenance_marks_exactly_the_random_pairs() {
        let spec = ModelSpec::flexible(
            16,
            0.3,
            0.25,
            PairPolicy::Circulant,
            ProbPolicy::Constant,
            AdversaryPolicy::TowardLower,
            11,
        )
        .unwrap();
        let out = gen_flexible(&spec).unwrap();
        let reach = required_degree(16, 0.25).div_ceil(2);
        for i in 0..16usize {
            for j in (i + 1)..16 {
                let cyclic = (j - i).min(16 - (j - i));
                assert_eq!(out.provenance.is_random(i, j), cyclic <= reach);
                if !out.provenance.is_random(i, j) {
                    // The adversary awards its pairs to the lower index.
                    assert!(out.tournament.beats(i, j));
                }
            }
        }
    }

    #[test]
    fn flexible_custom_adversary_controls_its_pairs() {
        let spec = ModelSpec::flexible(
            16,
            0.3,
            0.25,
            PairPolicy::Circulant,
            ProbPolicy::Constant,
            AdversaryPolicy::TowardLower,
            11,
        )
        .unwrap();
        let out = gen_flexible_with_adversary(&spec, &|lo, hi| (lo + hi) % 2 == 0).unwrap();
        for i in 0..16usize {
            for j in (i + 1)..16 {
                if !out.provenance.is_random(i, j) {
                    assert_eq!(out.tournament.beats(i, j), (i + j) % 2 == 0);
                }
            }
        }
    }

    #[test]
    fn model_spec_kv_round_trip() {
        let spec = ModelSpec::flexible(
            128,
            0.3,
            0.25,
            PairPolicy::Circulant,
            ProbPolicy::RankBiased,
            AdversaryPolicy::Random,
            17,
        )
        .unwrap();
        assert_eq!(ModelSpec::from_kv(&spec.to_kv()).unwrap(), spec);
        let cr = ModelSpec::condorcet_random(8, 0.05, 3).unwrap();
        assert_eq!(ModelSpec::from_kv(&cr.to_kv()).unwrap(), cr);
    }

    #[test]
    fn uncovered_ratio_example_facts() {
        let t = build_uncovered_ratio_example(3, 11).unwrap();
        assert_eq!(t.n(), 16);
        let a: Vec<usize> = (0..3).collect();
        let b: Vec<usize> = (3..14).collect();
        let (x, y) = (14, 15);
        assert!(t.dominates(&[x], &[y]).unwrap());
        assert!(t.dominates(&[x], &b).unwrap());
        assert!(t.dominates(&[y], &b).unwrap());
        assert!(t.dominates(&[y], &a).unwrap());
        assert!(t.dominates(&b, &a).unwrap());
        assert!(t.dominates(&a, &[x]).unwrap());
        assert!(build_uncovered_ratio_example(3, 10).is_err());
    }

    #[test]
    fn itmatrix_example_sizes() {
        let t = build_itmatrix_example(0.55, 41).unwrap();
        assert_eq!(t.n(), 41);
        // a = 21, b = 19; x beats exactly the B group.
        assert_eq!(t.out_degree(40), 19);
    }

    #[test]
    fn bipartisan_example_shape() {
        let t = build_bipartisan_example(8).unwrap();
        assert!(t.beats(7, 0));
        assert_eq!(t.out_degree(7), 1);
        assert_eq!(t.out_degree(0), 6);
        assert!(build_bipartisan_example(2).is_err());
    }
}
