use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};

use spinel_core::eliminate::EliminationError;
use spinel_core::problems::factor::{decode_291311, N291311};
use spinel_core::problems::hopfield::{hebbian_couplings, retrieval_experiment, PatternSet};
use spinel_core::problems::maxcut::{
    maxcut_statistics, mean_removed_fraction, solve_reduced, MaxcutStats, Strategy,
};
use spinel_core::problems::{
    critical_j_scan, mobius_ladder, preset, Graph, ProblemError, PRESET_NAMES,
};
use spinel_core::solve::spectrum_csv;
use spinel_core::text::parse_rational;
use spinel_core::{
    back_substitute, brute_force, full_solve_with_order, reduce, spectrum, DescentParams,
    EliminationOrder, Polynomial, Rational, ReductionLimits, SolveError, SpinAssignment, Trace,
};

use crate::{Command, LimitArgs, Method, StrategyArg};

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_NO_PROGRESS: u8 = 2;
pub const EXIT_SIZE_CAP: u8 = 3;

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

type CmdResult = Result<(), Failure>;

trait ExitWith<T> {
    fn exit_with(self, code: u8) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> ExitWith<T> for Result<T, E> {
    fn exit_with(self, code: u8) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code,
            error: e.into(),
        })
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_PARSE,
        error: anyhow!(message.into()),
    }
}

fn solve_code(e: &SolveError) -> u8 {
    match e {
        SolveError::TooManyVariables { .. } => EXIT_SIZE_CAP,
        _ => EXIT_PARSE,
    }
}

fn elimination_code(e: &EliminationError) -> u8 {
    match e {
        EliminationError::NeighborhoodTooLarge { .. }
        | EliminationError::BranchLimit(_)
        | EliminationError::Expand(_) => EXIT_SIZE_CAP,
        EliminationError::Incomplete { cause, .. } => elimination_code(cause),
        EliminationError::Solve(s) => solve_code(s),
        _ => EXIT_PARSE,
    }
}

fn problem_code(e: &ProblemError) -> u8 {
    match e {
        ProblemError::Elimination(e) => elimination_code(e),
        ProblemError::Solve(e) => solve_code(e),
        _ => EXIT_PARSE,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .exit_with(EXIT_PARSE)
}

fn write(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .exit_with(EXIT_PARSE)
}

/// Writes to the file when given, otherwise to stdout.
fn emit(path: Option<&Path>, contents: &str) -> CmdResult {
    match path {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn read_hamiltonian(path: &Path) -> Result<Polynomial, Failure> {
    let text = read(path)?;
    Polynomial::parse_text(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .exit_with(EXIT_PARSE)
}

fn read_trace(path: &Path) -> Result<Trace, Failure> {
    let text = read(path)?;
    Trace::parse_text(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .exit_with(EXIT_PARSE)
}

fn limits(args: &LimitArgs) -> ReductionLimits {
    ReductionLimits {
        max_neighborhood: args.max_neighborhood,
        max_locality: args.max_locality,
        max_degree: args.max_degree,
    }
}

fn parse_j(text: &str) -> Result<Rational, Failure> {
    parse_rational(text.trim()).ok_or_else(|| invalid(format!("bad rational {text:?}")))
}

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Reduce {
            input,
            output,
            trace,
            order,
            keep,
            limits: l,
        } => cmd_reduce(&input, &output, trace.as_deref(), &order, keep, &limits(&l)),
        Command::Solve {
            input,
            output,
            method,
            order,
        } => cmd_solve(&input, output.as_deref(), method, &order),
        Command::Backmap {
            trace,
            assign,
            input,
            output,
            decode,
        } => cmd_backmap(
            &trace,
            assign.as_deref(),
            input.as_deref(),
            output.as_deref(),
            decode,
        ),
        Command::Spectrum { input, output } => cmd_spectrum(&input, output.as_deref()),
        Command::Maxcut {
            n,
            runs,
            strategy,
            rounds,
            seed,
            input,
            output,
            verify,
            limits: l,
        } => {
            let strategy = match strategy {
                StrategyArg::TwoLocal => Strategy::TwoLocal,
                StrategyArg::KLocal => Strategy::KLocal { rounds },
            };
            let config = MaxcutConfig {
                n,
                runs,
                strategy,
                seed,
                verify,
                limits: limits(&l),
            };
            cmd_maxcut(&config, input.as_deref(), output.as_deref())
        }
        Command::Mobius { n, j, grid, output } => {
            cmd_mobius(n, j.as_deref(), grid.as_deref(), output.as_deref())
        }
        Command::Hopfield {
            n,
            p,
            trials,
            seed,
            per_block,
            dt,
            tau,
            max_steps,
            output,
            post_output,
            hamiltonian,
        } => {
            let params = DescentParams {
                tau,
                dt,
                max_steps,
                seed,
                ..DescentParams::default()
            };
            let ps = PatternSet::hadamard(n, p).exit_with(EXIT_PARSE)?;
            if let Some(path) = hamiltonian {
                return write(&path, &hebbian_couplings(&ps, true).to_text());
            }
            cmd_hopfield(
                &ps,
                per_block,
                trials,
                &params,
                output.as_deref(),
                post_output.as_deref(),
            )
        }
        Command::Presets { name, output } => cmd_presets(name.as_deref(), output.as_deref()),
    }
}

fn cmd_reduce(
    input: &Path,
    output: &Path,
    trace_path: Option<&Path>,
    order: &str,
    keep: usize,
    limits: &ReductionLimits,
) -> CmdResult {
    let h = read_hamiltonian(input)?;
    let order = EliminationOrder::parse(order, keep).map_err(invalid)?;
    let red = reduce(&h, &order, limits);
    write(output, &red.hamiltonian.to_text())?;
    if let Some(path) = trace_path {
        write(path, &red.trace.to_text())?;
    }
    for (spin, reason) in &red.skipped {
        eprintln!("skipped s{spin}: {reason}");
    }
    println!(
        "eliminated {} spins; {} remain; locality {}; max degree {}",
        red.trace.len(),
        red.hamiltonian.num_variables(),
        red.hamiltonian.locality(),
        red.hamiltonian.max_neighbor_count()
    );
    if red.attempted() > 0 && red.trace.is_empty() {
        return Err(Failure {
            code: EXIT_NO_PROGRESS,
            error: anyhow!("limits refused every elimination"),
        });
    }
    Ok(())
}

fn solution_text(min: &Rational, states: &BTreeSet<SpinAssignment>) -> String {
    let mut s = format!("{min}\n");
    for st in states {
        let _ = writeln!(s, "{st}");
    }
    s
}

fn cmd_solve(input: &Path, output: Option<&Path>, method: Method, order: &str) -> CmdResult {
    let h = read_hamiltonian(input)?;
    let sol = match method {
        Method::Brute => brute_force(&h).map_err(|e| Failure {
            code: solve_code(&e),
            error: e.into(),
        })?,
        Method::Eliminate => {
            let first = match EliminationOrder::parse(order, 0).map_err(invalid)? {
                EliminationOrder::Explicit(list) => list,
                _ => return Err(invalid("--order for solve must be a list of spins")),
            };
            full_solve_with_order(&h, &first).map_err(|e| Failure {
                code: elimination_code(&e),
                error: e.into(),
            })?
        }
    };
    emit(output, &solution_text(&sol.min_energy, &sol.ground_states))
}

fn cmd_backmap(
    trace_path: &Path,
    assign: Option<&str>,
    input: Option<&Path>,
    output: Option<&Path>,
    decode: bool,
) -> CmdResult {
    let trace = read_trace(trace_path)?;
    let starts: Vec<SpinAssignment> = match (assign, input) {
        (Some(a), _) => vec![a.parse().exit_with(EXIT_PARSE)?],
        (None, Some(path)) => {
            let h = read_hamiltonian(path)?;
            let sol = brute_force(&h).map_err(|e| Failure {
                code: solve_code(&e),
                error: e.into(),
            })?;
            sol.ground_states.into_iter().collect()
        }
        (None, None) => return Err(invalid("backmap needs --assign or --input")),
    };
    let mut completed = BTreeSet::new();
    for s in &starts {
        completed.extend(back_substitute(&trace, s).map_err(|e| Failure {
            code: elimination_code(&e),
            error: e.into(),
        })?);
    }
    let mut out = String::new();
    for s in &completed {
        let _ = write!(out, "{s}");
        if decode {
            let (bits, factor) =
                decode_291311(s).ok_or_else(|| invalid("decoding needs spins 1, 2 and 3 or 5"))?;
            let _ = write!(out, " bits={bits} factor={factor}");
            if N291311.is_multiple_of(factor) {
                let _ = write!(out, " cofactor={}", N291311 / factor);
            }
        }
        out.push('\n');
    }
    emit(output, &out)
}

fn cmd_spectrum(input: &Path, output: Option<&Path>) -> CmdResult {
    let h = read_hamiltonian(input)?;
    let levels = spectrum(&h).map_err(|e| Failure {
        code: solve_code(&e),
        error: e.into(),
    })?;
    emit(output, &spectrum_csv(&levels))
}

struct MaxcutConfig {
    n: usize,
    runs: u64,
    strategy: Strategy,
    seed: u64,
    verify: bool,
    limits: ReductionLimits,
}

fn cmd_maxcut(config: &MaxcutConfig, input: Option<&Path>, output: Option<&Path>) -> CmdResult {
    let fail = |e: ProblemError| Failure {
        code: problem_code(&e),
        error: e.into(),
    };
    let graphs: Vec<(u64, Graph)> = match input {
        Some(path) => {
            let text = read(path)?;
            vec![(config.seed, Graph::parse_text(&text).map_err(fail)?)]
        }
        None => {
            if config.runs == 0 {
                return Err(invalid("--runs must be positive"));
            }
            Vec::new()
        }
    };
    let stats: Vec<MaxcutStats> = if graphs.is_empty() {
        let seeds: Vec<u64> = (0..config.runs).map(|k| config.seed + k).collect();
        maxcut_statistics(config.n, &seeds, config.strategy, &config.limits).map_err(fail)?
    } else {
        let mut stats = Vec::new();
        for (seed, g) in &graphs {
            stats.push(
                config
                    .strategy
                    .run(g, &config.limits, *seed)
                    .map_err(fail)?
                    .stats,
            );
        }
        stats
    };
    let mut csv = format!("{}\n", MaxcutStats::CSV_HEADER);
    for s in &stats {
        let _ = writeln!(csv, "{}", s.csv_row());
    }
    emit(output, &csv)?;
    eprintln!(
        "mean removed fraction {:.4} over {} graphs",
        mean_removed_fraction(&stats),
        stats.len()
    );
    if config.verify {
        let graphs: Vec<(u64, Graph)> = if graphs.is_empty() {
            (0..config.runs)
                .map(|k| {
                    let seed = config.seed + k;
                    spinel_core::problems::random_cubic_graph(config.n, seed).map(|g| (seed, g))
                })
                .collect::<Result<_, _>>()
                .map_err(fail)?
        } else {
            graphs
        };
        for (seed, g) in &graphs {
            if g.n() > 20 {
                return Err(Failure {
                    code: EXIT_SIZE_CAP,
                    error: anyhow!("--verify supports at most 20 vertices, got {}", g.n()),
                });
            }
            let red = config
                .strategy
                .run(g, &config.limits, *seed)
                .map_err(fail)?;
            let sol = solve_reduced(g, &red).map_err(fail)?;
            let full = brute_force(&spinel_core::problems::maxcut_hamiltonian(g)).map_err(|e| {
                Failure {
                    code: solve_code(&e),
                    error: e.into(),
                }
            })?;
            let oracle_cut =
                (g.total_weight() - &full.min_energy) / Rational::from_integer(2.into());
            if sol.cut != oracle_cut || sol.states != full.ground_states {
                return Err(Failure {
                    code: EXIT_PARSE,
                    error: anyhow!(
                        "seed {seed}: back-mapped cut {} but enumeration gives {oracle_cut}",
                        sol.cut
                    ),
                });
            }
            eprintln!("seed {seed}: max cut {} verified", sol.cut);
        }
    }
    Ok(())
}

/// Default scan: `k/N` for `k = 1..=8`.
fn default_grid(n: usize) -> Vec<Rational> {
    (1..=8)
        .map(|k| Rational::new(k.into(), (n as i64).into()))
        .collect()
}

fn cmd_mobius(n: usize, j: Option<&str>, grid: Option<&str>, output: Option<&Path>) -> CmdResult {
    let fail = |e: ProblemError| Failure {
        code: problem_code(&e),
        error: e.into(),
    };
    if let Some(j) = j {
        let h = mobius_ladder(n, &parse_j(j)?).map_err(fail)?;
        return emit(output, &h.to_text());
    }
    let grid = match grid {
        Some(text) => text
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(parse_j)
            .collect::<Result<Vec<_>, _>>()?,
        None => default_grid(n),
    };
    let scan = critical_j_scan(n, &grid).map_err(fail)?;
    emit(output, &scan.to_csv())?;
    eprintln!("J* = {}", scan.critical);
    Ok(())
}

fn cmd_hopfield(
    ps: &PatternSet,
    per_block: usize,
    trials: u64,
    params: &DescentParams,
    output: Option<&Path>,
    post_output: Option<&Path>,
) -> CmdResult {
    let report = retrieval_experiment(ps, per_block, trials, params, &ReductionLimits::default())
        .map_err(|e| Failure {
        code: problem_code(&e),
        error: e.into(),
    })?;
    if let Some(path) = output {
        write(path, &report.pre.to_csv())?;
    }
    if let Some(path) = post_output {
        write(path, &report.post.to_csv())?;
    }
    println!(
        "eliminated {:?}; locality {}",
        report.reduction.trace.eliminated(),
        report.reduction.hamiltonian.locality()
    );
    for (label, hist, retrieved) in [
        ("pre", &report.pre, report.pre_retrieved),
        ("post", &report.post, report.post_retrieved),
    ] {
        println!(
            "{label}: {} distinct states, {retrieved}/{} retrieved, {} unconverged",
            hist.distinct(),
            hist.trials,
            hist.unconverged
        );
    }
    Ok(())
}

fn cmd_presets(name: Option<&str>, output: Option<&Path>) -> CmdResult {
    let fail = |e: ProblemError| Failure {
        code: problem_code(&e),
        error: e.into(),
    };
    match name {
        None => {
            for n in PRESET_NAMES {
                println!("{n}");
            }
            Ok(())
        }
        Some("all") => {
            let dir = output.ok_or_else(|| invalid("--name all needs an output directory"))?;
            fs::create_dir_all(dir)
                .with_context(|| format!("creating {}", dir.display()))
                .exit_with(EXIT_PARSE)?;
            for n in PRESET_NAMES {
                write(
                    &dir.join(format!("{n}.txt")),
                    &preset(n).map_err(fail)?.to_text(),
                )?;
            }
            Ok(())
        }
        Some(n) => emit(output, &preset(n).map_err(fail)?.to_text()),
    }
}
