//! Command-line interface.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use oddpath_core::conservative::{check_conservative, Conservativeness};
use oddpath_core::fpt::{solve_fpt_derandomized, solve_fpt_negedges, solve_fpt_randomized};
use oddpath_core::oracle::{
    oracle_odd_path_limited, oracle_spcop, sweep, SweepFilter, SweepMode, SweepSolver, SweepSpec,
};
use oddpath_core::spcop::solve_spcop;
use oddpath_core::tree_solver::solve_negative_tree_with;
use oddpath_core::treewidth::{build_decomposition, make_nice, solve_treewidth, NiceKind};
use oddpath_core::{PathSolution, Vertex, Weight, WeightedGraph};
use serde_json::json;

use crate::bench::{bench_corpus, generate_corpus, write_corpus, write_csv, CorpusKind};
use crate::config::Config;
use crate::format::{parse_graph, write_text, GraphFile};
use crate::solve::{diagnostics, solve, Algorithm, SolveError, SolveReport, SolveRequest, Stats};

#[derive(Debug, Parser)]
#[command(
    name = "oddpath",
    version,
    about = "Shortest odd paths under conservative weights"
)]
pub struct Cli {
    #[command(flatten)]
    pub limits: Limits,
    #[command(subcommand)]
    pub command: Command,
}

/// Overrides for the config file.
#[derive(Debug, Args)]
pub struct Limits {
    /// TOML file with solver guards.
    #[arg(long, global = true, env = "ODDPATH_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, env = "ODDPATH_NEGATIVE_EDGE_GUARD")]
    pub negative_edge_guard: Option<usize>,
    #[arg(long, global = true, env = "ODDPATH_MATCHING_BUDGET")]
    pub matching_budget: Option<usize>,
    #[arg(long, global = true, env = "ODDPATH_WIDTH_GUARD")]
    pub width_guard: Option<usize>,
    #[arg(long, global = true, env = "ODDPATH_DISJOINT_NEGATIVE_EDGE_LIMIT")]
    pub disjoint_negative_edge_limit: Option<usize>,
    #[arg(long, global = true, env = "ODDPATH_ORACLE_VERTEX_LIMIT")]
    pub oracle_vertex_limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Terminals {
    /// Source; overrides the file's `s` line.
    #[arg(long)]
    pub s: Option<Vertex>,
    /// Target; overrides the file's `t` line.
    #[arg(long)]
    pub t: Option<Vertex>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check conservativeness and report the solver parameters.
    Validate { graph: PathBuf },
    /// Shortest odd path.
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        terminals: Terminals,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        /// Seed for the randomized solver.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials for the randomized solver; defaults to 4^mu.
        #[arg(long)]
        trials: Option<usize>,
        /// Exact-width decomposition instead of min-fill.
        #[arg(long)]
        exact_width: bool,
        /// Prune dynamic programming tables to representative sets.
        #[arg(long)]
        rank_reduce: bool,
    },
    /// Shortest odd path under the file's `c even` / `c odd` constraints.
    Spcop {
        graph: PathBuf,
        #[command(flatten)]
        terminals: Terminals,
    },
    /// Print a tree decomposition as `b <node> <vertices...>` and `a <node> <node>` lines.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        exact_width: bool,
        /// Print the nice decomposition rooted at `{s, t}` instead.
        #[arg(long)]
        nice: bool,
        #[command(flatten)]
        terminals: Terminals,
    },
    /// Exhaustive enumeration; honours parity constraints in the file.
    Oracle {
        graph: PathBuf,
        #[command(flatten)]
        terminals: Terminals,
    },
    /// Cross-check solvers against the oracle; JSON lines on stdout.
    Sweep(SweepArgs),
    /// Run algorithms over a corpus directory and print CSV.
    Bench {
        corpus: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "auto")]
        algorithms: Vec<Algorithm>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a seeded corpus of graph files.
    Generate {
        #[arg(long, value_enum)]
        kind: CorpusKind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    Conservative,
    SingleTree,
    Nonnegative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepTarget {
    Tree,
    FptNeg,
    FptRand,
    FptDerand,
    Treewidth,
    TreewidthRank,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    pub min_n: usize,
    #[arg(long, default_value_t = 5)]
    pub max_n: usize,
    /// Comma-separated weights, e.g. `-1,0,1` or `-1/2,1`.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-1,0,1"
    )]
    pub palette: Vec<Weight>,
    #[arg(long, value_enum, default_value_t = Filter::Conservative)]
    pub filter: Filter,
    /// Sample instead of enumerating; needs `--count`.
    #[arg(long, requires = "count")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub edge_probability: f64,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "tree,fpt-neg,fpt-derand,treewidth"
    )]
    pub solvers: Vec<SweepTarget>,
}

/// A failure already reported on stderr, carrying the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exit(pub u8);

impl Limits {
    pub fn resolve(&self) -> Result<Config, String> {
        let mut config = Config::load(self.config.as_deref()).map_err(|e| e.to_string())?;
        let overrides = [
            (self.negative_edge_guard, &mut config.negative_edge_guard),
            (self.matching_budget, &mut config.matching_budget),
            (self.width_guard, &mut config.width_guard),
            (
                self.disjoint_negative_edge_limit,
                &mut config.disjoint_negative_edge_limit,
            ),
            (self.oracle_vertex_limit, &mut config.oracle_vertex_limit),
        ];
        for (value, slot) in overrides {
            if let Some(value) = value {
                *slot = value;
            }
        }
        Ok(config)
    }
}

fn read_graph(path: &Path) -> Result<GraphFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn terminals(file: &GraphFile, given: &Terminals) -> Result<(Vertex, Vertex), String> {
    match (given.s.or(file.s), given.t.or(file.t)) {
        (Some(s), Some(t)) => Ok((s, t)),
        _ => Err("source and target are required (`s`/`t` lines or --s/--t)".into()),
    }
}

fn print_json(out: &mut dyn Write, value: &impl serde::Serialize) {
    let text = serde_json::to_string(value).expect("report serializes");
    writeln!(out, "{text}").expect("stdout is writable");
}

fn fail(err: &mut dyn Write, code: u8, message: impl std::fmt::Display) -> Exit {
    writeln!(err, "error: {message}").expect("stderr is writable");
    Exit(code)
}

/// Runs one command. Returns the exit code: 0 found (or no problem
/// detected), 1 infeasible or not conservative, 2 input error, 3 guard.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(Exit(code)) => code,
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Exit> {
    let config = cli.limits.resolve().map_err(|e| fail(err, 2, e))?;
    let solve_failed = |err: &mut dyn Write, e: SolveError| fail(err, e.exit_code(), e);
    match cli.command {
        Command::Validate { graph } => {
            let file = read_graph(&graph).map_err(|e| fail(err, 2, e))?;
            let g = &file.graph;
            match check_conservative(g) {
                Conservativeness::Conservative => {
                    let d = diagnostics(g).map_err(|e| solve_failed(err, e))?;
                    print_json(out, &json!({ "conservative": true, "diagnostics": d }));
                    Ok(0)
                }
                Conservativeness::NegativeCycle(cycle) => {
                    let mut closed = cycle.clone();
                    closed.push(cycle[0]);
                    let weight = g.path_weight(&closed).expect("witness follows edges");
                    print_json(
                        out,
                        &json!({ "conservative": false, "negative_cycle": cycle, "cycle_weight": weight.to_string() }),
                    );
                    Ok(1)
                }
            }
        }
        Command::Solve {
            graph,
            terminals: given,
            algorithm,
            seed,
            trials,
            exact_width,
            rank_reduce,
        } => {
            let file = read_graph(&graph).map_err(|e| fail(err, 2, e))?;
            let (s, t) = terminals(&file, &given).map_err(|e| fail(err, 2, e))?;
            let request = SolveRequest {
                s,
                t,
                algorithm,
                seed,
                trials,
                exact_width,
                rank_reduce,
            };
            let report = solve(&file.graph, &request, &config).map_err(|e| solve_failed(err, e))?;
            print_json(out, &report);
            Ok(report.exit_code())
        }
        Command::Spcop {
            graph,
            terminals: given,
        } => {
            let file = read_graph(&graph).map_err(|e| fail(err, 2, e))?;
            let (s, t) = terminals(&file, &given).map_err(|e| fail(err, 2, e))?;
            let start = std::time::Instant::now();
            let solution = solve_spcop(&file.graph, s, t, &file.constraints)
                .map_err(|e| solve_failed(err, e.into()))?;
            let stats = Stats {
                time_ms: start.elapsed().as_secs_f64() * 1e3,
                ..Stats::default()
            };
            let report = constrained_report(&solution, stats);
            print_json(out, &report);
            Ok(exit_for(&solution))
        }
        Command::Oracle {
            graph,
            terminals: given,
        } => {
            let file = read_graph(&graph).map_err(|e| fail(err, 2, e))?;
            let (s, t) = terminals(&file, &given).map_err(|e| fail(err, 2, e))?;
            let g = &file.graph;
            let start = std::time::Instant::now();
            let constrained = !file.constraints.even.is_empty() || !file.constraints.odd.is_empty();
            let solution = if constrained {
                if g.n() > config.oracle_vertex_limit {
                    return Err(fail(
                        err,
                        3,
                        format!(
                            "{} vertices exceed the oracle limit {}",
                            g.n(),
                            config.oracle_vertex_limit
                        ),
                    ));
                }
                oracle_spcop(g, s, t, &file.constraints)
            } else {
                oracle_odd_path_limited(g, s, t, config.oracle_vertex_limit)
            }
            .map_err(|e| solve_failed(err, e.into()))?;
            let stats = Stats {
                time_ms: start.elapsed().as_secs_f64() * 1e3,
                ..Stats::default()
            };
            print_json(out, &SolveReport::new(&solution, Algorithm::Oracle, stats));
            Ok(exit_for(&solution))
        }
        Command::Decompose {
            graph,
            exact_width,
            nice,
            terminals: given,
        } => {
            let file = read_graph(&graph).map_err(|e| fail(err, 2, e))?;
            let g = &file.graph;
            let td =
                build_decomposition(g, exact_width).map_err(|e| solve_failed(err, e.into()))?;
            if nice {
                let (s, t) = terminals(&file, &given).map_err(|e| fail(err, 2, e))?;
                let nice = make_nice(&td, g, s, t).map_err(|e| solve_failed(err, e.into()))?;
                writeln!(out, "c width {} nodes {}", nice.width(), nice.len())
                    .map_err(closed_output)?;
                for (i, node) in nice.nodes.iter().enumerate() {
                    let kind = match node.kind {
                        NiceKind::Leaf => "leaf".to_owned(),
                        NiceKind::IntroduceVertex(v) => format!("introduce-vertex {v}"),
                        NiceKind::ForgetVertex(v) => format!("forget-vertex {v}"),
                        NiceKind::IntroduceEdge(e) => format!("introduce-edge {e}"),
                        NiceKind::Join => "join".to_owned(),
                    };
                    let bag: Vec<String> = node.bag.iter().map(ToString::to_string).collect();
                    writeln!(out, "n {i} {kind} | {}", bag.join(" ")).map_err(closed_output)?;
                    for &child in &node.children {
                        writeln!(out, "a {i} {child}").map_err(closed_output)?;
                    }
                }
            } else {
                writeln!(out, "c width {} bags {}", td.width(), td.bags.len())
                    .map_err(closed_output)?;
                for (i, bag) in td.bags.iter().enumerate() {
                    let bag: Vec<String> = bag.iter().map(ToString::to_string).collect();
                    writeln!(out, "b {i} {}", bag.join(" ")).map_err(closed_output)?;
                }
                for &(x, y) in &td.tree_edges {
                    writeln!(out, "a {x} {y}").map_err(closed_output)?;
                }
            }
            Ok(0)
        }
        Command::Sweep(args) => run_sweep(&args, &config, out),
        Command::Bench {
            corpus,
            algorithms,
            output,
        } => {
            let records =
                bench_corpus(&corpus, &algorithms, &config).map_err(|e| fail(err, 2, e))?;
            match output {
                Some(path) => {
                    let file = std::fs::File::create(&path)
                        .map_err(|e| fail(err, 2, format!("{}: {e}", path.display())))?;
                    write_csv(&records, file).map_err(|e| fail(err, 2, e))?;
                }
                None => write_csv(&records, &mut *out).map_err(|e| fail(err, 2, e))?,
            }
            Ok(0)
        }
        Command::Generate {
            kind,
            sizes,
            count,
            seed,
            out: dir,
        } => {
            let corpus = generate_corpus(kind, &sizes, count, seed);
            let paths = write_corpus(&dir, &corpus)
                .map_err(|e| fail(err, 2, format!("{}: {e}", dir.display())))?;
            for path in paths {
                writeln!(out, "{}", path.display()).map_err(closed_output)?;
            }
            Ok(0)
        }
    }
}

fn closed_output(_: std::io::Error) -> Exit {
    Exit(2)
}

fn exit_for(solution: &PathSolution) -> u8 {
    if solution.is_found() {
        0
    } else {
        1
    }
}

fn constrained_report(solution: &PathSolution, stats: Stats) -> serde_json::Value {
    let report = SolveReport::new(solution, Algorithm::Auto, stats);
    json!({ "status": report.status, "weight": report.weight, "path": report.path, "stats": report.stats })
}

type BoxedSolver<'a> =
    Box<dyn Fn(&WeightedGraph, Vertex, Vertex) -> oddpath_core::Result<PathSolution> + 'a>;

fn sweep_solver<'a>(target: SweepTarget, config: &'a Config) -> BoxedSolver<'a> {
    match target {
        SweepTarget::Tree => {
            Box::new(move |g, s, t| solve_negative_tree_with(g, s, t, config.tree()))
        }
        SweepTarget::FptNeg => {
            Box::new(move |g, s, t| solve_fpt_negedges(g, s, t, &config.fpt()).map(|o| o.solution))
        }
        // Monte Carlo: disagreements are possible by design, at most e^-1 per instance.
        SweepTarget::FptRand => Box::new(move |g, s, t| {
            solve_fpt_randomized(g, s, t, 0, None, &config.fpt()).map(|o| o.solution)
        }),
        SweepTarget::FptDerand => Box::new(move |g, s, t| {
            solve_fpt_derandomized(g, s, t, &config.fpt()).map(|o| o.solution)
        }),
        SweepTarget::Treewidth => Box::new(move |g, s, t| {
            solve_treewidth(g, s, t, &config.treewidth(false, false)).map(|o| o.solution)
        }),
        SweepTarget::TreewidthRank => Box::new(move |g, s, t| {
            solve_treewidth(g, s, t, &config.treewidth(false, true)).map(|o| o.solution)
        }),
    }
}

fn run_sweep(args: &SweepArgs, config: &Config, out: &mut dyn Write) -> Result<u8, Exit> {
    let mode = match (args.seed, args.count) {
        (Some(seed), Some(count)) => SweepMode::Seeded {
            seed,
            count,
            edge_probability: args.edge_probability,
        },
        _ => SweepMode::Exhaustive,
    };
    let spec = SweepSpec {
        min_n: args.min_n,
        max_n: args.max_n,
        weight_palette: args.palette.clone(),
        filter: match args.filter {
            Filter::Conservative => SweepFilter::Conservative,
            Filter::SingleTree => SweepFilter::SingleNegativeTree,
            Filter::Nonnegative => SweepFilter::NonNegative,
        },
        mode,
    };
    let names: Vec<String> = args
        .solvers
        .iter()
        .map(|s| {
            s.to_possible_value()
                .expect("named variant")
                .get_name()
                .to_owned()
        })
        .collect();
    let boxed: Vec<BoxedSolver<'_>> = args
        .solvers
        .iter()
        .map(|&s| sweep_solver(s, config))
        .collect();
    let solvers: Vec<SweepSolver<'_>> = names
        .iter()
        .zip(&boxed)
        .map(|(name, solve)| SweepSolver {
            name,
            solve: solve.as_ref(),
        })
        .collect();
    let report = sweep(&spec, &solvers, |_, _, _| {});
    for d in &report.disagreements {
        let got = match &d.got {
            Ok(w) => json!({ "weight": w.map(|w| w.to_string()) }),
            Err(message) => json!({ "error": message }),
        };
        print_json(
            out,
            &json!({
                "kind": "disagreement",
                "solver": d.solver,
                "expected": d.expected.map(|w| w.to_string()),
                "got": got,
                "graph": write_text(&d.graph, Some(d.s), Some(d.t)),
            }),
        );
    }
    print_json(
        out,
        &json!({
            "kind": "summary",
            "instances": report.instances,
            "declined": report.declined,
            "disagreements": report.disagreements.len(),
        }),
    );
    Ok(if report.disagreements.is_empty() {
        0
    } else {
        1
    })
}
