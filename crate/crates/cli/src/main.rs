//! `kingmaker` — generate tournaments, decide who can be seeded to win, and
//! run reproducible sweeps.
//!
//! Exit codes: 0 = answered, 2 = usage or input error, 3 = cap exceeded or
//! answer unknown. All output is plain text; no color is ever emitted.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kingmaker_cli::certify::{find_structural, Certificate};
use kingmaker_cli::experiments::{
    run_experiment, ExperimentConfig, ExperimentError, ExperimentName,
};
use kingmaker_cli::format::{read_tournament_file, write_tournament_file};
use kingmaker_cli::report::{format_sig6, render_summary, write_csv};
use kingmaker_core::bracket::{play_bracket, Seeding};
use kingmaker_core::exact::{fix_for, se_winners, ExactError, SE_WINNERS_CAP};
use kingmaker_core::models::{
    gen_cr, gen_flexible, AdversaryPolicy, ModelSpec, PairPolicy, ProbPolicy,
};
use kingmaker_core::solutions::{
    bipartisan_set, copeland_set, iterated_matrix_set, markov_set, max_kpath_players, slater_set,
    uncovered_set, SolutionsError,
};
use kingmaker_core::Tournament;

#[derive(Parser)]
#[command(name = "kingmaker", version, about = "Tournament seeding analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tournament from a seeded model and write it to a file.
    Generate(GenerateArgs),
    /// Decide whether a player can win under some seeding.
    Solve(SolveArgs),
    /// Compute classical choice sets, optionally checked against the exact
    /// winners.
    Solutions(SolutionsArgs),
    /// Run a metric sweep and write a CSV report.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Model kind: `cr` or `flexible`.
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
    /// Noise parameter in [0, 1/2).
    #[arg(long)]
    p: f64,
    /// Participation factor in (0, 1/2]; flexible model only.
    #[arg(long)]
    delta: Option<f64>,
    /// Random-pair selection policy (flexible): `circulant`.
    #[arg(long, default_value = "circulant")]
    pair_policy: String,
    /// Per-pair probability policy (flexible): `constant`, `uniform` or
    /// `rank-biased`.
    #[arg(long, default_value = "constant")]
    prob_policy: String,
    /// Orientation of non-random pairs (flexible): `toward-lower` or
    /// `random`.
    #[arg(long, default_value = "toward-lower")]
    adversary: String,
    #[arg(long)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long)]
    player: usize,
    /// `auto`, `exact` or `structural`.
    #[arg(long, default_value = "auto")]
    method: String,
    /// Replay the witness seeding through the bracket simulator.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct SolutionsArgs {
    file: PathBuf,
    /// Comma-separated: copeland, uncovered, slater, markov, bipartisan,
    /// itmat:K, kpaths:K.
    #[arg(long)]
    sets: String,
    /// Intersect each set with the exact winners (within the solver cap).
    #[arg(long)]
    check_se: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// `cr-sweep`, `flexible-sweep`, `solutions-containment` or
    /// `counterexample-audit`.
    name: String,
    #[arg(long, value_delimiter = ',')]
    ns: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    ps: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    deltas: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    adversaries: Vec<String>,
    #[arg(long, default_value = "constant")]
    prob_policy: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }

    fn cap(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 3,
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when a pipe downstream closes, like any other CLI tool.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => generate(args),
        Command::Solve(args) => solve(args),
        Command::Solutions(args) => solutions(args),
        Command::Experiment(args) => experiment(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_prob_policy(s: &str) -> Result<ProbPolicy, Failure> {
    match s {
        "constant" => Ok(ProbPolicy::Constant),
        "uniform" => Ok(ProbPolicy::Uniform),
        "rank-biased" => Ok(ProbPolicy::RankBiased),
        other => Err(Failure::usage(format!("unknown prob policy `{other}`"))),
    }
}

fn parse_adversary(s: &str) -> Result<AdversaryPolicy, Failure> {
    match s {
        "toward-lower" => Ok(AdversaryPolicy::TowardLower),
        "random" => Ok(AdversaryPolicy::Random),
        other => Err(Failure::usage(format!(
            "unknown adversary policy `{other}`"
        ))),
    }
}

fn generate(args: GenerateArgs) -> Result<u8, Failure> {
    if args.pair_policy != "circulant" {
        return Err(Failure::usage(format!(
            "unknown pair policy `{}`",
            args.pair_policy
        )));
    }
    let (spec, tournament) = match args.model.as_str() {
        "cr" => {
            let spec = ModelSpec::condorcet_random(args.n, args.p, args.seed)
                .map_err(|e| Failure::usage(e.to_string()))?;
            let t = gen_cr(&spec).map_err(|e| Failure::usage(e.to_string()))?;
            (spec, t)
        }
        "flexible" => {
            let delta = args
                .delta
                .ok_or_else(|| Failure::usage("--delta is required for the flexible model"))?;
            let spec = ModelSpec::flexible(
                args.n,
                args.p,
                delta,
                PairPolicy::Circulant,
                parse_prob_policy(&args.prob_policy)?,
                parse_adversary(&args.adversary)?,
                args.seed,
            )
            .map_err(|e| Failure::usage(e.to_string()))?;
            let t = gen_flexible(&spec)
                .map_err(|e| Failure::usage(e.to_string()))?
                .tournament;
            (spec, t)
        }
        other => return Err(Failure::usage(format!("unknown model `{other}`"))),
    };
    write_tournament_file(&args.output, &tournament, &[spec.to_kv()])
        .map_err(|e| Failure::usage(e.to_string()))?;
    println!(
        "wrote {} ({} players)",
        args.output.display(),
        tournament.n()
    );
    Ok(0)
}

fn load(file: &std::path::Path) -> Result<Tournament, Failure> {
    read_tournament_file(file).map_err(|e| Failure::usage(e.to_string()))
}

fn within_exact_cap(t: &Tournament) -> bool {
    t.n() <= SE_WINNERS_CAP && t.n().is_power_of_two()
}

fn solve(args: SolveArgs) -> Result<u8, Failure> {
    let t = load(&args.file)?;
    let v = args.player;
    if v >= t.n() {
        return Err(Failure::usage(format!(
            "player {v} out of range for {} players",
            t.n()
        )));
    }
    let structural = |t: &Tournament| -> Result<Option<(Certificate, Seeding)>, Failure> {
        find_structural(t, v, true).map_err(|e| Failure::usage(e.to_string()))
    };
    let exact = |t: &Tournament| -> Result<Option<Seeding>, Failure> {
        fix_for(t, v).map_err(|e| match e {
            ExactError::TooLarge { .. } | ExactError::NotPowerOfTwo(_) => {
                Failure::cap(e.to_string())
            }
            other => Failure::usage(other.to_string()),
        })
    };
    let answer = match args.method.as_str() {
        "structural" => match structural(&t)? {
            Some(found) => Answer::Winner(found),
            None => Answer::Unknown("no structural certificate applies".into()),
        },
        "exact" => match exact(&t)? {
            Some(s) => Answer::Winner((Certificate::ExactDp, s)),
            None => Answer::NotWinner,
        },
        "auto" => match structural(&t)? {
            Some(found) => Answer::Winner(found),
            None if within_exact_cap(&t) => match exact(&t)? {
                Some(s) => Answer::Winner((Certificate::ExactDp, s)),
                None => Answer::NotWinner,
            },
            None => {
                Answer::Unknown("exact cap exceeded and no structural certificate applies".into())
            }
        },
        other => return Err(Failure::usage(format!("unknown method `{other}`"))),
    };
    match answer {
        Answer::Winner((certificate, seeding)) => {
            println!(
                "player {v}: SE winner (certificate: {})",
                certificate.as_str()
            );
            let leaves: Vec<String> = seeding.leaves().iter().map(|p| p.to_string()).collect();
            println!("seeding: {}", leaves.join(" "));
            if args.verify {
                let log = play_bracket(&t, &seeding).map_err(|e| Failure::usage(e.to_string()))?;
                if log.champion == v {
                    println!("verify: champion {v} (ok)");
                } else {
                    return Err(Failure {
                        message: format!("witness crowned {} instead of {v}", log.champion),
                        code: 1,
                    });
                }
            }
            Ok(0)
        }
        Answer::NotWinner => {
            println!("player {v}: not an SE winner (exact)");
            Ok(0)
        }
        Answer::Unknown(reason) => {
            println!("player {v}: unknown ({reason})");
            Ok(3)
        }
    }
}

enum Answer {
    Winner((Certificate, Seeding)),
    NotWinner,
    Unknown(String),
}

fn solutions(args: SolutionsArgs) -> Result<u8, Failure> {
    let t = load(&args.file)?;
    let caps = |e: SolutionsError| match e {
        SolutionsError::CapExceeded { .. } => Failure::cap(e.to_string()),
        other => Failure::usage(other.to_string()),
    };
    let winners = if args.check_se {
        if !within_exact_cap(&t) {
            return Err(Failure::cap(format!(
                "--check-se needs a power-of-two field of at most {SE_WINNERS_CAP} players"
            )));
        }
        Some(se_winners(&t).map_err(|e| Failure::usage(e.to_string()))?)
    } else {
        None
    };
    let fmt = |set: &[usize]| {
        set.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let check = |name: &str, set: &[usize], flag_violation: bool| {
        if let Some(winners) = &winners {
            let outside: Vec<usize> = set
                .iter()
                .copied()
                .filter(|v| !winners.contains(v))
                .collect();
            if outside.is_empty() {
                println!("check-se {name}: ok (all members are SE winners)");
            } else if flag_violation {
                println!("check-se {name}: VIOLATION (outside: {})", fmt(&outside));
            } else {
                println!(
                    "check-se {name}: members outside SE winners: {}",
                    fmt(&outside)
                );
            }
        }
    };
    for token in args.sets.split(',') {
        match token {
            "copeland" => {
                let set = copeland_set(&t);
                println!("copeland: {}", fmt(&set));
                check("copeland", &set, true);
            }
            "uncovered" => {
                let set = uncovered_set(&t);
                println!("uncovered: {}", fmt(&set));
                check("uncovered", &set, false);
            }
            "slater" => {
                let set = slater_set(&t).map_err(caps)?;
                println!("slater: {}", fmt(&set));
                check("slater", &set, true);
            }
            "markov" => {
                let set = markov_set(&t).map_err(caps)?;
                println!("markov: {}", fmt(&set));
                check("markov", &set, true);
            }
            "bipartisan" => {
                let lottery = bipartisan_set(&t).map_err(caps)?;
                println!("bipartisan: {}", fmt(&lottery.support));
                let probs: Vec<String> = lottery
                    .probabilities
                    .iter()
                    .map(|&p| format_sig6(p))
                    .collect();
                println!("bipartisan lottery: {}", probs.join(" "));
                if winners.is_some() {
                    let best = lottery.support.iter().map(|&v| t.out_degree(v)).max();
                    let max_copeland: Vec<usize> = lottery
                        .support
                        .iter()
                        .copied()
                        .filter(|&v| Some(t.out_degree(v)) == best)
                        .collect();
                    check("bipartisan-max-copeland", &max_copeland, true);
                    check("bipartisan-support", &lottery.support, false);
                }
            }
            other => {
                let (kind, k) = other
                    .split_once(':')
                    .ok_or_else(|| Failure::usage(format!("unknown set name `{other}`")))?;
                let k: usize = k
                    .parse()
                    .map_err(|e| Failure::usage(format!("bad exponent in `{other}`: {e}")))?;
                match kind {
                    "itmat" => {
                        let set = iterated_matrix_set(&t, k).map_err(caps)?;
                        println!("itmat:{k}: {}", fmt(&set));
                        check(&format!("itmat:{k}"), &set, false);
                    }
                    "kpaths" => {
                        let set = max_kpath_players(&t, k).map_err(caps)?;
                        println!("kpaths:{k}: {}", fmt(&set));
                        check(&format!("kpaths:{k}"), &set, false);
                    }
                    _ => return Err(Failure::usage(format!("unknown set name `{other}`"))),
                }
            }
        }
    }
    Ok(0)
}

fn experiment(args: ExperimentArgs) -> Result<u8, Failure> {
    let name = ExperimentName::parse(&args.name).map_err(|e| Failure::usage(e.to_string()))?;
    let mut config = ExperimentConfig::new(name, args.seed, args.trials);
    if !args.ns.is_empty() {
        config.ns = args.ns;
    }
    if !args.ps.is_empty() {
        config.ps = args.ps;
    }
    if !args.deltas.is_empty() {
        config.deltas = args.deltas;
    }
    if !args.adversaries.is_empty() {
        config.adversaries = args
            .adversaries
            .iter()
            .map(|s| parse_adversary(s))
            .collect::<Result<_, _>>()?;
    }
    config.prob_policy = parse_prob_policy(&args.prob_policy)?;
    let report = run_experiment(&config).map_err(|e| match e {
        ExperimentError::GridCapConflict(_) => Failure::cap(e.to_string()),
        other => Failure::usage(other.to_string()),
    })?;
    let mut out = Vec::new();
    write_csv(&report, &mut out).map_err(|e| Failure::usage(e.to_string()))?;
    std::fs::write(&args.output, &out)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.output.display())))?;
    println!(
        "wrote {} rows to {}",
        report.rows.len(),
        args.output.display()
    );
    print!("{}", render_summary(&report));
    Ok(0)
}
