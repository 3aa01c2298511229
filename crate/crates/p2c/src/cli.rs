//! Command-line surface of the `p2c` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use p2c_core::hc::{HcOraclePolicy, HcPolicyKind};
use p2c_core::iso::{find_example1_fixture, IsoOraclePolicy};
use p2c_core::{validate_hamiltonian_cycle, validate_isomorphism, Error, MultiGraph, SimpleGraph, VertexMap};
use serde::Serialize;

use crate::error::{core_kind, CliError};
use crate::json::{self, GraphFormat, Solution};
use crate::trace::{self, DotFile, RunOptions, TraceDoc};
use crate::graph6;

#[derive(Debug, Parser)]
#[command(name = "p2c", version, about = "Complete isomorphisms and Hamiltonian cycles from single-piece oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a complete isomorphism between two graphs.
    IsoComplete(IsoArgs),
    /// Build a Hamiltonian cycle of a multigraph.
    HcComplete(HcArgs),
    /// Check a solution file against its input.
    Verify(VerifyArgs),
    /// Re-run a trace from its recorded answers and compare byte for byte.
    Replay(ReplayArgs),
    /// Write the reconstructed five-vertex example pair as two graph6 lines.
    Fixture(FixtureArgs),
    /// Run the context-free oracle over many seeds and count outcomes.
    ProbeContextFree(ProbeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleChoice {
    Honest,
    Adversarial,
    Random,
    Planted,
    ContextFree,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value = "honest")]
    pub oracle: OracleChoice,
    /// Seed for adversarial tie-breaks and random choices.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Planted solution: an isomorphism map or a cycle vertex sequence.
    #[arg(long)]
    pub planted: Option<PathBuf>,
    /// Size guard for search-backed oracles.
    #[arg(long, env = "P2C_GUARD")]
    pub guard: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Where to write the solution (stdout if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Where to write the JSON trace.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Directory for one DOT snapshot per oracle call.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    /// First graph; may hold both graphs as two graph6 lines.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub input2: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<GraphFormat>,
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HcArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<GraphFormat>,
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub input2: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<GraphFormat>,
    #[arg(long)]
    pub solution: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// The trace to replay.
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<GraphFormat>,
    /// Number of seeds to try.
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    /// First seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "P2C_GUARD")]
    pub guard: Option<usize>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write_dots(dir: Option<&Path>, dots: &[DotFile]) -> Result<(), CliError> {
    let Some(dir) = dir else { return Ok(()) };
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_owned(), source })?;
    for d in dots {
        write(&dir.join(format!("{}.dot", d.name)), &d.body)?;
    }
    Ok(())
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write(p, &format!("{text}\n")),
        None => writeln!(out, "{text}").map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn read_pair(input: &Path, input2: Option<&Path>, format: Option<GraphFormat>) -> Result<(SimpleGraph, SimpleGraph), CliError> {
    let parse = |p: &Path| {
        let text = read(p)?;
        json::read_simple_graphs(&text, format).map_err(|e| CliError::format(p.display().to_string(), e))
    };
    let mut first = parse(input)?;
    match input2 {
        Some(p) => {
            let second = parse(p)?;
            match (first.first(), second.first()) {
                (Some(g), Some(h)) => Ok((g.clone(), h.clone())),
                _ => Err(CliError::Usage("an input file holds no graph".into())),
            }
        }
        None if first.len() == 2 => {
            let h = first.pop().unwrap();
            Ok((first.pop().unwrap(), h))
        }
        None => Err(CliError::Usage("give --input2, or two graph6 lines in --input".into())),
    }
}

fn read_multigraph(input: &Path, format: Option<GraphFormat>) -> Result<MultiGraph, CliError> {
    let text = read(input)?;
    json::read_multigraph(&text, format).map_err(|e| CliError::format(input.display().to_string(), e))
}

fn iso_policy(args: &OracleArgs) -> Result<IsoOraclePolicy, CliError> {
    let mut policy = match args.oracle {
        OracleChoice::Honest => IsoOraclePolicy::honest(),
        OracleChoice::Adversarial => IsoOraclePolicy::adversarial(args.seed.unwrap_or(0)),
        OracleChoice::Random => {
            IsoOraclePolicy::random(args.seed.ok_or_else(|| CliError::Usage("--oracle random needs --seed".into()))?)
        }
        OracleChoice::Planted => {
            let path = args.planted.as_deref().ok_or_else(|| CliError::Usage("--oracle planted needs --planted".into()))?;
            let map: VertexMap = match json::solution_from_json(&read(path)?) {
                Ok(Solution::Isomorphism(m)) => m,
                Ok(Solution::Cycle(_)) => return Err(CliError::Usage("planted file holds a cycle, not a map".into())),
                Err(e) => return Err(CliError::format(path.display().to_string(), e)),
            };
            IsoOraclePolicy::planted(map, args.seed)
        }
        OracleChoice::ContextFree => {
            return Err(CliError::Usage("the context-free oracle only exists for hc-complete".into()))
        }
    };
    if let Some(g) = args.guard {
        policy = policy.with_guard(g);
    }
    Ok(policy)
}

fn hc_policy(args: &OracleArgs, g: &MultiGraph) -> Result<HcOraclePolicy, CliError> {
    let seeded = |what: &str| args.seed.ok_or_else(|| CliError::Usage(format!("--oracle {what} needs --seed")));
    let mut policy = match args.oracle {
        OracleChoice::Honest => HcOraclePolicy::honest(),
        OracleChoice::Adversarial => HcOraclePolicy::adversarial(args.seed.unwrap_or(0)),
        OracleChoice::Random => HcOraclePolicy::random(seeded("random")?),
        OracleChoice::ContextFree => HcOraclePolicy::context_free(seeded("context-free")?),
        OracleChoice::Planted => {
            let path = args.planted.as_deref().ok_or_else(|| CliError::Usage("--oracle planted needs --planted".into()))?;
            let cycle = json::planted_cycle_from_json(&read(path)?, g)
                .map_err(|e| CliError::format(path.display().to_string(), e))?;
            HcOraclePolicy::planted(cycle)
        }
    };
    if let Some(guard) = args.guard {
        policy = policy.with_guard(guard);
    }
    Ok(policy)
}

/// Writes the trace and snapshots, then the solution or the error.
fn finish(
    out: &mut dyn Write,
    args: &OutputArgs,
    doc: TraceDoc,
    dots: &[DotFile],
    error: Option<Error>,
    solution: Option<String>,
) -> Result<(), CliError> {
    if let Some(path) = &args.trace {
        write(path, &doc.to_json())?;
    }
    write_dots(args.dot.as_deref(), dots)?;
    if let Some(e) = error {
        return Err(CliError::Core(e));
    }
    emit(out, args.output.as_deref(), &solution.expect("successful runs have a solution"))
}

pub fn iso_complete(args: &IsoArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (g, h) = read_pair(&args.input, args.input2.as_deref(), args.format)?;
    let policy = iso_policy(&args.oracle)?;
    let run = trace::run_iso(&g, &h, &policy, RunOptions { dot: args.out.dot.is_some() });
    let solution = run.trace.solution.as_ref().map(json::isomorphism_to_json);
    finish(out, &args.out, TraceDoc::Iso(run.trace), &run.dots, run.error, solution)
}

pub fn hc_complete(args: &HcArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_multigraph(&args.input, args.format)?;
    let policy = hc_policy(&args.oracle, &g)?;
    let run = trace::run_hc(&g, &policy, RunOptions { dot: args.out.dot.is_some() });
    let solution = run.trace.solution.as_ref().map(|c| serde_json::to_string(c).expect("cycles serialize"));
    finish(out, &args.out, TraceDoc::Hc(run.trace), &run.dots, run.error, solution)
}

#[derive(Serialize)]
struct Verdict {
    problem: &'static str,
    valid: bool,
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let text = read(&args.solution)?;
    let solution = json::solution_from_json(&text).map_err(|e| CliError::format(args.solution.display().to_string(), e))?;
    let verdict = match solution {
        Solution::Isomorphism(phi) => {
            let (g, h) = read_pair(&args.input, args.input2.as_deref(), args.format)?;
            Verdict { problem: "iso", valid: validate_isomorphism(&g, &h, &phi) }
        }
        Solution::Cycle(c) => {
            let g = read_multigraph(&args.input, args.format)?;
            Verdict { problem: "hc", valid: validate_hamiltonian_cycle(&g, &c.into()) }
        }
    };
    emit(out, None, &serde_json::to_string(&verdict).expect("verdicts serialize"))?;
    if verdict.valid {
        Ok(())
    } else {
        Err(CliError::InvalidSolution)
    }
}

pub fn replay(args: &ReplayArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let text = read(&args.trace)?;
    let (report, dots) = trace::replay_text(&text, RunOptions { dot: args.dot.is_some() })?;
    write_dots(args.dot.as_deref(), &dots)?;
    emit(out, None, &serde_json::to_string(&report).expect("reports serialize"))
}

pub fn fixture(args: &FixtureArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (g, h) = find_example1_fixture()?;
    let text = format!("{}\n{}", graph6::encode(&g), graph6::encode(&h));
    emit(out, args.output.as_deref(), &text)
}

/// Outcome counts of a context-free probe.
#[derive(Debug, Default, Serialize)]
pub struct ProbeReport {
    pub runs: u64,
    pub valid: u64,
    /// Outcome kind per seed, in seed order.
    pub outcomes: Vec<(u64, String)>,
    pub failures: std::collections::BTreeMap<String, u64>,
}

pub fn probe_context_free(g: &MultiGraph, first_seed: u64, seeds: u64, guard: Option<usize>) -> ProbeReport {
    let mut report = ProbeReport::default();
    for seed in first_seed..first_seed + seeds {
        let mut policy = HcOraclePolicy::context_free(seed);
        if let Some(guard) = guard {
            policy = policy.with_guard(guard);
        }
        debug_assert_eq!(policy.kind, HcPolicyKind::ContextFreeExperimental);
        let run = trace::run_hc(g, &policy, RunOptions::default());
        report.runs += 1;
        let kind = match &run.error {
            None => {
                report.valid += 1;
                "valid"
            }
            Some(e) => {
                *report.failures.entry(core_kind(e).to_string()).or_default() += 1;
                core_kind(e)
            }
        };
        report.outcomes.push((seed, kind.to_string()));
    }
    report
}

pub fn probe(args: &ProbeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_multigraph(&args.input, args.format)?;
    let report = probe_context_free(&g, args.seed, args.seeds, args.guard);
    emit(out, None, &serde_json::to_string(&report).expect("reports serialize"))
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::IsoComplete(a) => iso_complete(a, out),
        Command::HcComplete(a) => hc_complete(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Replay(a) => replay(a, out),
        Command::Fixture(a) => fixture(a, out),
        Command::ProbeContextFree(a) => probe(a, out),
    }
}
