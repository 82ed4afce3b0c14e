//! Subcommands behind the `roughpair` binary.
//!
//! Each command writes its report to the given sink and returns the process
//! exit code: 0 for a found or unique result, 1 for a negative one. Input
//! problems surface as [`CliError`], which the binary maps to exit code 2.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use roughpair::{
    all_solutions, compose, decompose, has_forbidden_component, incidence_graph, is_unique,
    pawlak_violations, sweep, Condition, DecompOutcome, DecomposeOptions, OpTable, OperatorKind,
    Partition, Subset, Universe, Witness,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] roughpair::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Output(#[from] io::Error),
}

pub type Exit = Result<u8, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "roughpair",
    version,
    about = "Compose, decompose and check double rough-set approximations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose two partitions into an operator table (JSON)
    Compose(ComposeArgs),
    /// Recover a generating pair from a table file
    Decompose(DecomposeArgs),
    /// Evaluate the uniqueness conditions for a pair
    CheckUnique(PairArgs),
    /// Compare the condition checker with the oracle on every pair of size n
    Verify(VerifyArgs),
    /// Export the incidence graph of a pair as DOT
    Incidence(IncidenceArgs),
    /// Test the lower/upper approximation laws on random inputs
    PawlakCheck(PawlakArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Ll,
    Uu,
    Ul,
    Lu,
}

impl From<KindArg> for OperatorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ll => OperatorKind::LL,
            KindArg::Uu => OperatorKind::UU,
            KindArg::Ul => OperatorKind::UL,
            KindArg::Lu => OperatorKind::LU,
        }
    }
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Comma-separated element labels, e.g. `a,b,c`
    #[arg(long)]
    pub universe: String,
    /// Inner relation, blocks separated by `|`
    #[arg(long)]
    pub e1: String,
    /// Outer relation, blocks separated by `|`
    #[arg(long)]
    pub e2: String,
    #[arg(long, value_enum, default_value = "ll")]
    pub kind: KindArg,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub table: PathBuf,
    /// Also count every generating pair by brute force (n <= 6)
    #[arg(long)]
    pub oracle: bool,
    /// Skip the monotonicity check before decomposing
    #[arg(long)]
    pub no_prefilter: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub n: u8,
    #[arg(long, value_enum, default_value = "ll")]
    pub kind: KindArg,
}

#[derive(Debug, Args)]
pub struct IncidenceArgs {
    #[arg(long)]
    pub universe: String,
    #[arg(long)]
    pub e1: String,
    #[arg(long)]
    pub e2: String,
    /// DOT output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PawlakArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u8).range(1..=16))]
    pub n: u8,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Exit {
    match cli.command {
        Command::Compose(a) => cmd_compose(&a, out),
        Command::Decompose(a) => cmd_decompose(&a, out),
        Command::CheckUnique(a) => cmd_check_unique(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Incidence(a) => cmd_incidence(&a, out),
        Command::PawlakCheck(a) => cmd_pawlak_check(&a, out),
    }
}

fn parse_pair(universe: &str, e1: &str, e2: &str) -> Result<(Partition, Partition), CliError> {
    let u = Universe::parse(universe)?;
    Ok((Partition::parse(&u, e1)?, Partition::parse(&u, e2)?))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn braced(u: &Universe, s: Subset) -> String {
    format!("{{{}}}", u.format_subset(s))
}

pub fn cmd_compose(a: &ComposeArgs, out: &mut dyn Write) -> Exit {
    let (e1, e2) = parse_pair(&a.pair.universe, &a.pair.e1, &a.pair.e2)?;
    let json = compose(&e1, &e2, a.pair.kind.into())?.to_json();
    match &a.out {
        Some(path) => write_file(path, &json)?,
        None => out.write_all(json.as_bytes())?,
    }
    Ok(0)
}

pub fn cmd_decompose(a: &DecomposeArgs, out: &mut dyn Write) -> Exit {
    let text = fs::read_to_string(&a.table).map_err(|source| CliError::Io {
        path: a.table.clone(),
        source,
    })?;
    let table = OpTable::from_json(&text)?;
    let opts = DecomposeOptions {
        monotone_prefilter: !a.no_prefilter,
    };
    let code = match decompose(&table, &opts) {
        DecompOutcome::Found(sol) => {
            writeln!(out, "SOLUTION s={} r={}", sol.s, sol.r)?;
            let unique = is_unique(&sol.s, &sol.r, table.kind())?.is_unique();
            writeln!(out, "UNIQUE={}", if unique { "yes" } else { "no" })?;
            0
        }
        DecompOutcome::NoSolution(reason) => {
            writeln!(out, "NO_SOLUTION reason={reason}")?;
            1
        }
    };
    if a.oracle {
        writeln!(out, "ORACLE_SOLUTIONS={}", all_solutions(&table)?.len())?;
    }
    Ok(code)
}

pub fn cmd_check_unique(a: &PairArgs, out: &mut dyn Write) -> Exit {
    let (e1, e2) = parse_pair(&a.universe, &a.e1, &a.e2)?;
    let u = e1.universe();
    let report = is_unique(&e1, &e2, a.kind.into())?;
    for (id, c) in &report.conditions {
        match c {
            Condition::Holds => writeln!(out, "{id} holds")?,
            Condition::Fails(Witness::SameUpperImage {
                first,
                second,
                image,
            }) => writeln!(
                out,
                "{id} fails: blocks {} and {} share upper image {}",
                braced(u, *first),
                braced(u, *second),
                braced(u, *image)
            )?,
            Condition::Fails(Witness::NoSingletonIntersection { block }) => writeln!(
                out,
                "{id} fails: block {} meets no block in exactly one element",
                braced(u, *block)
            )?,
        }
    }
    let unique = report.is_unique();
    writeln!(out, "UNIQUE={}", if unique { "yes" } else { "no" })?;
    Ok(if unique { 0 } else { 1 })
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Exit {
    let kind: OperatorKind = a.kind.into();
    let r = sweep(a.n as usize, kind)?;
    writeln!(out, "n={} kind={kind}", a.n)?;
    writeln!(out, "PAIRS={}", r.pairs)?;
    writeln!(out, "UNIQUE_PAIRS={}", r.unique_pairs)?;
    writeln!(out, "DISAGREEMENTS={}", r.disagreements.len())?;
    writeln!(out, "UNSOUND={}", r.unsound.len())?;
    for (e1, e2) in r.disagreements.iter().chain(&r.unsound) {
        writeln!(out, "  e1={e1} e2={e2}")?;
    }
    Ok(if r.is_clean() { 0 } else { 1 })
}

pub fn cmd_incidence(a: &IncidenceArgs, out: &mut dyn Write) -> Exit {
    let (e1, e2) = parse_pair(&a.universe, &a.e1, &a.e2)?;
    let g = incidence_graph(&e1, &e2)?;
    let dot = g.to_dot();
    match &a.out {
        Some(path) => write_file(path, &dot)?,
        None => out.write_all(dot.as_bytes())?,
    }
    let forbidden = has_forbidden_component(&g);
    writeln!(
        out,
        "FORBIDDEN_COMPONENT={}",
        if forbidden { "yes" } else { "no" }
    )?;
    Ok(0)
}

pub fn cmd_pawlak_check(a: &PawlakArgs, out: &mut dyn Write) -> Exit {
    let n = a.n as usize;
    let u = Universe::alphabetic(n)?;
    let mut rng = StdRng::seed_from_u64(a.seed);
    let full = u.full().bits();
    let mut violations = 0usize;
    for _ in 0..a.trials {
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let e = Partition::from_labels(&u, &labels)?;
        let x = Subset::from_bits(rng.gen::<u32>() & full);
        let y = Subset::from_bits(rng.gen::<u32>() & full);
        for p in pawlak_violations(&e, x, y)? {
            violations += 1;
            writeln!(
                out,
                "property {} fails: e={e} x={} y={}",
                p.number(),
                braced(&u, x),
                braced(&u, y)
            )?;
        }
    }
    writeln!(out, "TRIALS={} VIOLATIONS={violations}", a.trials)?;
    Ok(if violations == 0 { 0 } else { 1 })
}
