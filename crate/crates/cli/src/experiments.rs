//! Reproducible experiment sweeps with long-format metric rows.
//!
//! Every trial's seed derives from the master seed, the experiment name and
//! the (grid, trial) position, so adding grid points or rerunning a single
//! trial never shifts any other draw. Trials run on a worker pool; rows are
//! accumulated in (grid index, trial index) order regardless of completion
//! order.

use rayon::prelude::*;
use thiserror::Error;

use kingmaker_core::exact::{se_winners, SE_WINNERS_CAP};
use kingmaker_core::models::{
    build_bipartisan_example, build_itmatrix_example, build_uncovered_ratio_example, derive_seed,
    gen_cr, gen_flexible, uniform_random, AdversaryPolicy, ModelSpec, PairPolicy, ProbPolicy,
};
use kingmaker_core::solutions::{
    bipartisan_set, copeland_set, count_k_paths, iterated_matrix_set, markov_set,
    max_kpath_players, slater_set, uncovered_set,
};
use kingmaker_core::Tournament;

use crate::certify::find_structural;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error("grid conflicts with a solver cap: {0}")]
    GridCapConflict(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("model error: {0}")]
    Model(#[from] kingmaker_core::models::ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentName {
    CrSweep,
    FlexibleSweep,
    SolutionsContainment,
    CounterexampleAudit,
}

impl ExperimentName {
    pub fn parse(s: &str) -> Result<Self, ExperimentError> {
        match s {
            "cr-sweep" => Ok(Self::CrSweep),
            "flexible-sweep" => Ok(Self::FlexibleSweep),
            "solutions-containment" => Ok(Self::SolutionsContainment),
            "counterexample-audit" => Ok(Self::CounterexampleAudit),
            other => Err(ExperimentError::UnknownExperiment(other.to_string())),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::CrSweep => "cr-sweep",
            Self::FlexibleSweep => "flexible-sweep",
            Self::SolutionsContainment => "solutions-containment",
            Self::CounterexampleAudit => "counterexample-audit",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub name: ExperimentName,
    pub ns: Vec<usize>,
    pub ps: Vec<f64>,
    pub deltas: Vec<f64>,
    pub adversaries: Vec<AdversaryPolicy>,
    pub prob_policy: ProbPolicy,
    pub trials: usize,
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn new(name: ExperimentName, master_seed: u64, trials: usize) -> Self {
        Self {
            name,
            ns: vec![16],
            ps: vec![0.05, 0.1, 0.2, 0.3, 0.4, 0.49],
            deltas: vec![0.1, 0.25, 0.5],
            adversaries: vec![AdversaryPolicy::TowardLower, AdversaryPolicy::Random],
            prob_policy: ProbPolicy::Constant,
            trials,
            master_seed,
        }
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub index: usize,
    pub n: usize,
    pub p: f64,
    pub delta: Option<f64>,
    pub adversary: Option<AdversaryPolicy>,
}

/// One metric observation; fully regenerable from the experiment name, grid
/// point and trial seed.
#[derive(Debug, Clone)]
pub struct MetricRow {
    pub grid: GridPoint,
    pub trial: usize,
    pub seed: u64,
    pub metric: &'static str,
    pub value: f64,
}

/// Per-(grid point, metric) aggregate.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub grid: GridPoint,
    pub metric: &'static str,
    pub mean: f64,
    /// 95% binomial confidence half-width around the mean.
    pub ci_half_width: f64,
    pub trials: usize,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub name: ExperimentName,
    pub config_lines: Vec<String>,
    pub rows: Vec<MetricRow>,
    pub summaries: Vec<SummaryRow>,
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    validate(config)?;
    let grid = build_grid(config);
    let name = config.name.as_str();
    let trials = if config.name == ExperimentName::CounterexampleAudit {
        1
    } else {
        config.trials
    };
    let jobs: Vec<(GridPoint, usize)> = grid
        .iter()
        .flat_map(|point| (0..trials).map(move |trial| (*point, trial)))
        .collect();
    let results: Vec<Vec<MetricRow>> = jobs
        .par_iter()
        .map(|&(point, trial)| {
            let seed = derive_seed(
                config.master_seed,
                name,
                &[point.index as u64, trial as u64],
            );
            run_trial(config, point, trial, seed)
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<MetricRow> = results.into_iter().flatten().collect();
    let summaries = summarize(&rows);
    Ok(ExperimentReport {
        name: config.name,
        config_lines: config_lines(config, grid.len()),
        rows,
        summaries,
    })
}

fn validate(config: &ExperimentConfig) -> Result<(), ExperimentError> {
    if config.trials == 0 && config.name != ExperimentName::CounterexampleAudit {
        return Err(ExperimentError::InvalidConfig(
            "trials must be positive".into(),
        ));
    }
    match config.name {
        ExperimentName::SolutionsContainment => {
            for &n in &config.ns {
                if !n.is_power_of_two() || n > SE_WINNERS_CAP {
                    return Err(ExperimentError::GridCapConflict(format!(
                        "containment checks need exact winners; n = {n} is outside the cap"
                    )));
                }
            }
        }
        ExperimentName::CrSweep | ExperimentName::FlexibleSweep => {
            for &n in &config.ns {
                if !n.is_power_of_two() {
                    return Err(ExperimentError::InvalidConfig(format!(
                        "sweep sizes must be powers of two, got {n}"
                    )));
                }
            }
        }
        ExperimentName::CounterexampleAudit => {}
    }
    Ok(())
}

fn build_grid(config: &ExperimentConfig) -> Vec<GridPoint> {
    let mut grid = Vec::new();
    let mut index = 0;
    match config.name {
        ExperimentName::CrSweep => {
            for &n in &config.ns {
                for &p in &config.ps {
                    grid.push(GridPoint {
                        index,
                        n,
                        p,
                        delta: None,
                        adversary: None,
                    });
                    index += 1;
                }
            }
        }
        ExperimentName::FlexibleSweep => {
            for &n in &config.ns {
                for &p in &config.ps {
                    for &delta in &config.deltas {
                        for &adversary in &config.adversaries {
                            grid.push(GridPoint {
                                index,
                                n,
                                p,
                                delta: Some(delta),
                                adversary: Some(adversary),
                            });
                            index += 1;
                        }
                    }
                }
            }
        }
        ExperimentName::SolutionsContainment => {
            for &n in &config.ns {
                grid.push(GridPoint {
                    index,
                    n,
                    p: 0.5,
                    delta: None,
                    adversary: None,
                });
                index += 1;
            }
        }
        ExperimentName::CounterexampleAudit => {
            grid.push(GridPoint {
                index: 0,
                n: 0,
                p: 0.0,
                delta: None,
                adversary: None,
            });
        }
    }
    grid
}

fn config_lines(config: &ExperimentConfig, grid_points: usize) -> Vec<String> {
    let join_f = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
    let mut lines = vec![
        format!("experiment={}", config.name.as_str()),
        format!("master_seed={}", config.master_seed),
        format!("trials={}", config.trials),
        format!("grid_points={grid_points}"),
    ];
    match config.name {
        ExperimentName::CrSweep => {
            lines.push(format!(
                "ns={}",
                config
                    .ns
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ));
            lines.push(format!("ps={}", join_f(&config.ps)));
        }
        ExperimentName::FlexibleSweep => {
            lines.push(format!(
                "ns={}",
                config
                    .ns
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ));
            lines.push(format!("ps={}", join_f(&config.ps)));
            lines.push(format!("deltas={}", join_f(&config.deltas)));
            lines.push(format!(
                "adversaries={}",
                config
                    .adversaries
                    .iter()
                    .map(|a| a.as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
        ExperimentName::SolutionsContainment => {
            lines.push(format!(
                "ns={}",
                config
                    .ns
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
        ExperimentName::CounterexampleAudit => {}
    }
    lines
}

fn run_trial(
    config: &ExperimentConfig,
    point: GridPoint,
    trial: usize,
    seed: u64,
) -> Result<Vec<MetricRow>, ExperimentError> {
    match config.name {
        ExperimentName::CrSweep => {
            let spec = ModelSpec::condorcet_random(point.n, point.p, seed)?;
            let t = gen_cr(&spec)?;
            Ok(sweep_metrics(&t, point, trial, seed))
        }
        ExperimentName::FlexibleSweep => {
            let spec = ModelSpec::flexible(
                point.n,
                point.p,
                point.delta.expect("flexible grid point carries delta"),
                PairPolicy::Circulant,
                config.prob_policy,
                point
                    .adversary
                    .expect("flexible grid point carries adversary"),
                seed,
            )?;
            let t = gen_flexible(&spec)?.tournament;
            Ok(sweep_metrics(&t, point, trial, seed))
        }
        ExperimentName::SolutionsContainment => Ok(containment_metrics(point, trial, seed)),
        ExperimentName::CounterexampleAudit => Ok(audit_metrics(point, seed)),
    }
}

fn sweep_metrics(t: &Tournament, point: GridPoint, trial: usize, seed: u64) -> Vec<MetricRow> {
    let n = t.n();
    let mut rows = Vec::new();
    let mut push = |metric: &'static str, value: f64| {
        rows.push(MetricRow {
            grid: point,
            trial,
            seed,
            metric,
            value,
        });
    };
    if n <= SE_WINNERS_CAP {
        let winners = se_winners(t).expect("sweep sizes are powers of two within the cap");
        push("se_winner_fraction", winners.len() as f64 / n as f64);
    }
    let structural = t
        .players()
        .filter(|&v| {
            find_structural(t, v, false)
                .map(|found| found.is_some())
                .unwrap_or(false)
        })
        .count();
    push("structural_fraction", structural as f64 / n as f64);
    let superkings = t.players().filter(|&v| t.is_superking(v)).count();
    push("superking_fraction", superkings as f64 / n as f64);
    let bottom = n - 1;
    let two_half = kingmaker_core::constructors::cr_two_half_search(t, bottom)
        .map(|s| s.is_some())
        .unwrap_or(false);
    push("two_half_bottom_success", if two_half { 1.0 } else { 0.0 });
    rows
}

fn containment_metrics(point: GridPoint, trial: usize, seed: u64) -> Vec<MetricRow> {
    let t = uniform_random(point.n, seed);
    let winners = se_winners(&t).expect("sizes validated against the cap");
    let is_winner = |v: &usize| winners.contains(v);
    let mut rows = Vec::new();
    let mut push = |metric: &'static str, value: f64| {
        rows.push(MetricRow {
            grid: point,
            trial,
            seed,
            metric,
            value,
        });
    };
    let violations = |set: &[usize]| set.iter().filter(|v| !is_winner(v)).count() as f64;
    push("copeland_violations", violations(&copeland_set(&t)));
    push(
        "slater_violations",
        violations(&slater_set(&t).expect("within slater cap")),
    );
    push(
        "markov_violations",
        violations(&markov_set(&t).expect("chain converges")),
    );
    let lottery = bipartisan_set(&t).expect("within bipartisan cap");
    let top_score = lottery.support.iter().map(|&v| t.out_degree(v)).max();
    let max_copeland: Vec<usize> = lottery
        .support
        .iter()
        .copied()
        .filter(|&v| Some(t.out_degree(v)) == top_score)
        .collect();
    push(
        "bipartisan_max_copeland_violations",
        violations(&max_copeland),
    );
    for (metric, k) in [
        ("kpath_floor_violations_k1", 1usize),
        ("kpath_floor_violations_k2", 2),
        ("kpath_floor_violations_k3", 3),
    ] {
        let floor = binomial(point.n, k + 1);
        let bad = max_kpath_players(&t, k)
            .expect("within path cap")
            .iter()
            .filter(|&&v| {
                let c = count_k_paths(&t, v, k).expect("within path cap");
                c * (point.n as u64) < floor
            })
            .count();
        push(metric, bad as f64);
    }
    rows
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= (n - i) as u64;
        den *= (i + 1) as u64;
    }
    num / den
}

/// Rebuilds the hand-crafted instances and re-verifies each asserted fact.
fn audit_metrics(point: GridPoint, seed: u64) -> Vec<MetricRow> {
    let mut rows = Vec::new();
    let mut push = |metric: &'static str, pass: bool| {
        rows.push(MetricRow {
            grid: point,
            trial: 0,
            seed,
            metric,
            value: if pass { 1.0 } else { 0.0 },
        });
    };

    let ratio = build_uncovered_ratio_example(3, 11).expect("sizes are valid");
    let uncovered = uncovered_set(&ratio);
    push(
        "ratio_uncovered_set_exact",
        uncovered == vec![0, 1, 2, 14, 15],
    );
    let winners = se_winners(&ratio).expect("16 players");
    let expected: Vec<usize> = (3..16).collect();
    push("ratio_se_winners_exact", winners == expected);
    let overlap = uncovered.iter().filter(|v| winners.contains(v)).count();
    push(
        "ratio_both_fractions_below_half",
        2 * overlap < uncovered.len() && 2 * overlap < winners.len(),
    );

    let walks = build_itmatrix_example(0.55, 41).expect("sizes are valid");
    push(
        "itmatrix_argmax_is_pivot",
        iterated_matrix_set(&walks, 2).unwrap() == vec![40],
    );
    push(
        "itmatrix_pivot_below_half_degree",
        walks.out_degree(40) < 20,
    );

    let flipped = build_bipartisan_example(8).expect("n >= 3");
    let lottery = bipartisan_set(&flipped).expect("small game");
    push(
        "bipartisan_weakest_in_support",
        lottery.support.contains(&7),
    );
    push(
        "bipartisan_weakest_not_se_winner",
        !se_winners(&flipped).expect("8 players").contains(&7),
    );
    let cycle = build_bipartisan_example(3).expect("n >= 3");
    let cycle_lottery = bipartisan_set(&cycle).expect("small game");
    push(
        "bipartisan_three_cycle_uniform",
        cycle_lottery
            .probabilities
            .iter()
            .all(|p| (p - 1.0 / 3.0).abs() <= 1e-9),
    );
    rows
}

/// Groups rows by (grid index, metric) in first-appearance order; the mean
/// gets a binomial 95% half-width `1.96 * sqrt(m(1-m)/T)`.
pub fn summarize(rows: &[MetricRow]) -> Vec<SummaryRow> {
    let mut order: Vec<(usize, &'static str)> = Vec::new();
    let mut sums: std::collections::HashMap<(usize, &'static str), (f64, usize, GridPoint)> =
        std::collections::HashMap::new();
    for row in rows {
        let key = (row.grid.index, row.metric);
        let entry = sums.entry(key).or_insert_with(|| {
            order.push(key);
            (0.0, 0, row.grid)
        });
        entry.0 += row.value;
        entry.1 += 1;
    }
    order
        .into_iter()
        .map(|key| {
            let (sum, count, grid) = sums[&key];
            let mean = sum / count as f64;
            let clamped = mean.clamp(0.0, 1.0);
            let ci_half_width = 1.96 * (clamped * (1.0 - clamped) / count as f64).sqrt();
            SummaryRow {
                grid,
                metric: key.1,
                mean,
                ci_half_width,
                trials: count,
            }
        })
        .collect()
}
