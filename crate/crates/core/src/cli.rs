//! The `ropeladder` command line.
//!
//! Human-readable summaries go to standard output; `--json <path>` writes the
//! same results as JSON lines. Exit codes: 0 success, 1 internal error,
//! 2 invalid input, 3 losing verdict, 4 budget exceeded, 64 usage error.

use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::arena::{Arena, NodeId};
use crate::omega::OmegaPoint;
use crate::random;
use crate::separation::{self, SeparationError, DEFAULT_MAX_LEN, DEFAULT_SWEEP_BUDGET};
use crate::strategy::{parse_strategy, play, serialize_strategy, FiniteMemoryStrategy};
use crate::synthesize::{self, SynthesisError, DEFAULT_IRREGULAR_CAP};
use crate::verify::{brute_force_max_layer, check_certificate, cutoff_bound, default_step_limit, verify_strategy, winning_set, Certificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LOSING: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

/// Steps simulated with random Antagonist moves when no script is given.
const RANDOM_STEPS: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "ropeladder", version, about = "Rope Ladder games: verification, synthesis and the chromatic lower bound")]
struct Cli {
    /// Limit on enumerated objects (irregular plays, sweep candidates).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Seed for random Antagonist moves in `simulate`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write results as JSON lines to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an arena file and list every violation.
    Validate { arena: PathBuf },
    /// Print the ant's walk along one play.
    Simulate {
        arena: PathBuf,
        strategy: PathBuf,
        #[arg(long)]
        start: String,
        /// Comma-separated edge indices for Antagonist's moves; random if omitted.
        #[arg(long)]
        script: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Decide whether a strategy wins; all nodes unless `--start` is given.
    Verify {
        arena: PathBuf,
        strategy: PathBuf,
        #[arg(long)]
        start: Option<String>,
        /// Write the verdict and its certificate as JSON.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Compare against exhaustive exploration of all short plays.
        #[arg(long)]
        oracle_check: bool,
    },
    /// Build a two-state general-memory strategy winning wherever the input wins.
    Synthesize {
        arena: PathBuf,
        strategy: PathBuf,
        /// Comma-separated node names, or `auto` for the input's winning set.
        #[arg(long, default_value = "auto")]
        winning_set: String,
        /// Where to write the synthesized strategy.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the bit sequences and indistinguishable word pairs.
    Sequences {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        qmax: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the lower-bound arena and its two-state winning strategy.
    Gadget {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        q: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Check that every chromatic strategy with at most Q states loses the gadget.
    Refute {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        q: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Gadget, winning strategy and chromatic sweep in one run.
    Separation {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        q: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    lines: Vec<Value>,
}

impl Output<'_> {
    fn say(&mut self, line: impl AsRef<str>) -> Result<(), Failure> {
        writeln!(self.out, "{}", line.as_ref()).map_err(|e| fail(EXIT_INTERNAL, e.to_string()))
    }

    fn record(&mut self, value: Value) {
        self.lines.push(value);
    }
}

/// Runs the command line with process-level standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut output = Output { out, lines: Vec::new() };
    let result = dispatch(&cli, &mut output);
    if let Some(path) = &cli.json {
        let text: String = output.lines.iter().map(|v| format!("{v}\n")).collect();
        if let Err(e) = fs::write(path, text) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_INTERNAL;
        }
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut Output) -> Result<i32, Failure> {
    match &cli.command {
        Command::Validate { arena } => validate(arena, out),
        Command::Simulate { arena, strategy, start, script, steps } => {
            simulate(arena, strategy, start, script.as_deref(), *steps, cli.seed, out)
        }
        Command::Verify { arena, strategy, start, certificate, oracle_check } => {
            verify(arena, strategy, start.as_deref(), certificate.as_deref(), *oracle_check, out)
        }
        Command::Synthesize { arena, strategy, winning_set, out: target } => {
            synthesize(arena, strategy, winning_set, target, cli.budget, out)
        }
        Command::Sequences { qmax, max_len, out: target } => sequences(*qmax as usize, *max_len, target.as_deref(), out),
        Command::Gadget { q, max_len, out_dir } => gadget(*q as usize, *max_len, out_dir, out),
        Command::Refute { q, max_len } => refute(*q as usize, *max_len, cli.budget, out),
        Command::Separation { q, max_len } => run_separation(*q as usize, *max_len, cli.budget, out),
    }
}

fn read(path: &FsPath) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_INVALID, format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &FsPath, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| fail(EXIT_INTERNAL, format!("cannot write {}: {e}", path.display())))
}

fn load_arena(path: &FsPath) -> Result<Arena, Failure> {
    let arena = Arena::parse(&read(path)?).map_err(|e| fail(EXIT_INVALID, format!("{}: {e}", path.display())))?;
    let violations = arena.validate();
    if let Some(v) = violations.first() {
        return Err(fail(EXIT_INVALID, format!("{}: {v}", path.display())));
    }
    Ok(arena)
}

fn load_strategy(arena: &Arena, path: &FsPath) -> Result<FiniteMemoryStrategy, Failure> {
    parse_strategy(arena, &read(path)?).map_err(|e| fail(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn node(arena: &Arena, name: &str) -> Result<NodeId, Failure> {
    arena.node_id(name).ok_or_else(|| fail(EXIT_INVALID, format!("unknown node `{name}`")))
}

fn validate(path: &FsPath, out: &mut Output) -> Result<i32, Failure> {
    let arena = match Arena::parse(&read(path)?) {
        Ok(a) => a,
        Err(e) => {
            out.say(format!("{}: {e}", path.display()))?;
            out.record(json!({"file": path.display().to_string(), "parse_error": e.to_string()}));
            return Ok(EXIT_INVALID);
        }
    };
    let violations = arena.validate();
    for v in &violations {
        out.say(v.to_string())?;
        out.record(json!({"violation": v.to_string()}));
    }
    if violations.is_empty() {
        out.say(format!(
            "ok: {} nodes, {} edges, {} colors",
            arena.node_count(),
            arena.edge_count(),
            arena.color_count()
        ))?;
        out.record(json!({"valid": true, "nodes": arena.node_count(), "edges": arena.edge_count()}));
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_INVALID)
    }
}

fn simulate(
    arena_path: &FsPath,
    strategy_path: &FsPath,
    start: &str,
    script: Option<&str>,
    steps: Option<usize>,
    seed: u64,
    out: &mut Output,
) -> Result<i32, Failure> {
    let arena = load_arena(arena_path)?;
    let strategy = load_strategy(&arena, strategy_path)?;
    let start = node(&arena, start)?;
    let path = match script {
        Some(text) => {
            let script = text
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| fail(EXIT_INVALID, format!("bad edge index `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let limit = steps.unwrap_or_else(|| default_step_limit(&arena, &strategy));
            play(&arena, &strategy, start, &script, limit).map_err(|e| fail(EXIT_INVALID, e.to_string()))?
        }
        None => random::random_play(&mut random::rng(seed), &arena, &strategy, start, steps.unwrap_or(RANDOM_STEPS)),
    };
    let memory = strategy.memory();
    let (mut state, mut ant, mut max_layer) = (memory.initial(), OmegaPoint::ZERO, 0);
    for (i, &e) in path.edges.iter().enumerate() {
        state = memory.transition(&arena, state, e);
        ant = arena.edge_map(e).apply(ant);
        max_layer = max_layer.max(ant.layer);
        let color = arena.color_name_of(e);
        out.say(format!("step={} edge={e} color={color} state={state} ant={ant}", i + 1))?;
        out.record(json!({"step": i + 1, "edge": e, "color": color, "state": state, "ant": ant.to_string()}));
    }
    out.say(format!("max_layer={max_layer}"))?;
    out.record(json!({"max_layer": max_layer}));
    Ok(EXIT_OK)
}

fn verify(
    arena_path: &FsPath,
    strategy_path: &FsPath,
    start: Option<&str>,
    certificate: Option<&FsPath>,
    oracle_check: bool,
    out: &mut Output,
) -> Result<i32, Failure> {
    let arena = load_arena(arena_path)?;
    let strategy = load_strategy(&arena, strategy_path)?;
    let starts = match start {
        Some(name) => vec![node(&arena, name)?],
        None => (0..arena.node_count()).collect(),
    };
    let mut verdicts = Vec::new();
    let mut code = EXIT_OK;
    for v in starts {
        let verdict = verify_strategy(&arena, &strategy, v);
        if !check_certificate(&arena, &strategy, &verdict) {
            return Err(fail(EXIT_INTERNAL, "certificate does not replay"));
        }
        let name = &arena.node(v).name;
        let detail = match &verdict.certificate {
            Certificate::Winning { configurations, max_layer } => {
                format!("winning B={} configurations={configurations} max_layer={max_layer}", verdict.bound)
            }
            Certificate::Losing { path, pump } => {
                let edges: Vec<String> = path.edges.iter().map(ToString::to_string).collect();
                let pump = pump.map_or(String::new(), |p| format!(" pump={}..{}", p.from, p.to));
                format!("losing B={} path={}{pump}", verdict.bound, edges.join(","))
            }
        };
        out.say(format!("{name}: {detail}"))?;
        let mut value = verdict.to_json(&arena);
        if oracle_check {
            let k = (arena.node_count() * strategy.states() * 2) as u64;
            let bound = cutoff_bound(&arena, &strategy);
            let depth = 3 * bound * k;
            let reached = brute_force_max_layer(&arena, &strategy, v, depth as usize);
            let agrees = (reached >= bound) != verdict.is_winning();
            out.say(format!("{name}: oracle depth={depth} max_layer={reached} agrees={agrees}"))?;
            value["oracle_max_layer"] = reached.into();
            if !agrees {
                out.record(value);
                return Err(fail(EXIT_INTERNAL, format!("oracle disagrees at `{name}`")));
            }
        }
        if !verdict.is_winning() {
            code = EXIT_LOSING;
        }
        out.record(value.clone());
        verdicts.push(value);
    }
    if let Some(path) = certificate {
        let body = if verdicts.len() == 1 { verdicts.pop().unwrap() } else { Value::Array(verdicts) };
        write_file(path, &format!("{body:#}\n"))?;
    }
    Ok(code)
}

fn synthesize(
    arena_path: &FsPath,
    strategy_path: &FsPath,
    winning: &str,
    target: &FsPath,
    budget: Option<u64>,
    out: &mut Output,
) -> Result<i32, Failure> {
    let arena = load_arena(arena_path)?;
    let s1 = load_strategy(&arena, strategy_path)?;
    let start_nodes = if winning == "auto" {
        winning_set(&arena, &s1)
    } else {
        winning
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| node(&arena, t))
            .collect::<Result<Vec<_>, _>>()?
    };
    let cap = budget.map_or(DEFAULT_IRREGULAR_CAP, |b| b.min(usize::MAX as u64) as usize);
    let synthesis = match synthesize::synthesize(&arena, &s1, &start_nodes, cap) {
        Ok(s) => s,
        Err(SynthesisError::NotWinning(v)) => return Err(fail(EXIT_LOSING, format!("input strategy loses from `{v}`"))),
        Err(e @ SynthesisError::CapExceeded(_)) => return Err(fail(EXIT_BUDGET, e.to_string())),
        Err(e) => return Err(fail(EXIT_INTERNAL, e.to_string())),
    };
    let s2 = &synthesis.strategy;
    let lost: Vec<&str> = synthesis
        .start_nodes
        .iter()
        .filter(|&&u| !verify_strategy(&arena, s2, u).is_winning())
        .map(|&u| arena.node(u).name.as_str())
        .collect();
    if !lost.is_empty() {
        return Err(fail(EXIT_INTERNAL, format!("synthesized strategy loses from {}", lost.join(","))));
    }
    write_file(target, &serialize_strategy(&arena, s2))?;
    let names: Vec<&str> = synthesis.start_nodes.iter().map(|&u| arena.node(u).name.as_str()).collect();
    for line in synthesis.report_lines(&arena) {
        out.say(&line)?;
        out.record(serde_json::from_str(&line).expect("report lines are JSON"));
    }
    out.say(format!(
        "wrote {} (2 states, {} irregular plays, wins from {})",
        target.display(),
        synthesis.irregular.len(),
        names.join(",")
    ))?;
    Ok(EXIT_OK)
}

fn separation_failure(e: SeparationError) -> Failure {
    match e {
        SeparationError::BudgetExceeded { .. } => fail(EXIT_BUDGET, e.to_string()),
        SeparationError::NoCollision { .. } => fail(EXIT_BUDGET, format!("{e}; raise --max-len")),
        _ => fail(EXIT_INTERNAL, e.to_string()),
    }
}

fn sequences(q_max: usize, max_len: usize, target: Option<&FsPath>, out: &mut Output) -> Result<i32, Failure> {
    let seq = separation::build_sequences(q_max, max_len).map_err(separation_failure)?;
    let text = serde_json::to_string_pretty(&seq).expect("serializable");
    match target {
        Some(path) => {
            write_file(path, &format!("{text}\n"))?;
            for w in &seq.witnesses {
                out.say(format!("Q={} t={} x={} y={} m={}", w.q, w.t, w.x, w.y, w.m))?;
            }
        }
        None => out.say(text)?,
    }
    out.record(serde_json::to_value(&seq).expect("serializable"));
    Ok(EXIT_OK)
}

fn build_gadget(q: usize, max_len: usize) -> Result<(separation::SequencePair, separation::Gadget), Failure> {
    let seq = separation::build_sequences(q, max_len).map_err(separation_failure)?;
    let g = separation::gadget(seq.witness(q).map_err(separation_failure)?, &seq);
    Ok((seq, g))
}

fn gadget(q: usize, max_len: usize, dir: &FsPath, out: &mut Output) -> Result<i32, Failure> {
    let (_, g) = build_gadget(q, max_len)?;
    let s = separation::gadget_winning_strategy(&g);
    fs::create_dir_all(dir).map_err(|e| fail(EXIT_INTERNAL, format!("cannot create {}: {e}", dir.display())))?;
    let arena_path = dir.join(format!("gadget-q{q}.arena"));
    let strategy_path = dir.join(format!("gadget-q{q}.strategy"));
    write_file(&arena_path, &g.arena.serialize())?;
    write_file(&strategy_path, &serialize_strategy(&g.arena, &s))?;
    out.say(format!("wrote {} (t={}, {} nodes)", arena_path.display(), g.t, g.arena.node_count()))?;
    out.say(format!("wrote {}", strategy_path.display()))?;
    out.record(json!({
        "q": q,
        "t": g.t,
        "arena": arena_path.display().to_string(),
        "strategy": strategy_path.display().to_string(),
    }));
    Ok(EXIT_OK)
}

fn say_levels(report: &separation::RefutationReport, out: &mut Output) -> Result<(), Failure> {
    for l in &report.levels {
        out.say(format!(
            "states={} structures={} strategies={} losing={} branch_states_equal={}",
            l.states, l.structures, l.strategies, l.losing, l.branch_states_equal
        ))?;
        out.record(serde_json::to_value(l).expect("serializable"));
    }
    Ok(())
}

fn refute(q: usize, max_len: usize, budget: Option<u64>, out: &mut Output) -> Result<i32, Failure> {
    let (_, g) = build_gadget(q, max_len)?;
    let report = separation::refute_chromatic(&g, q, budget.unwrap_or(DEFAULT_SWEEP_BUDGET)).map_err(separation_failure)?;
    say_levels(&report, out)?;
    if report.holds() {
        out.say(format!("every chromatic strategy with at most {q} states loses ({} checked)", report.strategies()))?;
        Ok(EXIT_OK)
    } else {
        Err(fail(EXIT_INTERNAL, "branch color words reach different chromatic states"))
    }
}

fn run_separation(q: usize, max_len: usize, budget: Option<u64>, out: &mut Output) -> Result<i32, Failure> {
    let r = separation::separation(q, max_len, budget.unwrap_or(DEFAULT_SWEEP_BUDGET)).map_err(separation_failure)?;
    let w = &r.witness;
    out.say(format!("Q={} t={} x={} y={} m={}", r.q, w.t, w.x, w.y, w.m))?;
    out.say(format!(
        "general memory: {}-state strategy {}",
        r.winner_states,
        if r.winner_wins { "wins from u" } else { "LOSES from u" }
    ))?;
    let e = &r.evidence;
    out.say(format!(
        "indistinguishable over {} automata: {}; ant at w: top={} bottom={}",
        e.dfas, e.indistinguishable, e.top_ant_at_w, e.bottom_ant_at_w
    ))?;
    match &r.refutation {
        Some(report) => say_levels(report, out)?,
        None => out.say("chromatic sweep skipped: over budget (raise --budget)")?,
    }
    out.record(serde_json::to_value(&r).expect("serializable"));
    if r.holds() {
        out.say(format!("separation holds for Q={q}"))?;
        Ok(EXIT_OK)
    } else if r.refutation.is_none() && r.winner_wins && e.holds() {
        Ok(EXIT_BUDGET)
    } else {
        Err(fail(EXIT_INTERNAL, format!("separation fails for Q={q}")))
    }
}
