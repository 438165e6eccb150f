use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use octolab::harness::{self, Command, RunConfig, EXIT_USAGE};
use octolab::{Mode, PairingSign, Theorem};

/// Verification lab for discrete octonionic analysis.
#[derive(Parser)]
#[command(name = "octolab", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Check the multiplication table and algebraic identities.
    VerifyAlgebra(AlgebraArgs),
    /// Check Delta* = D+ D- = D- D+ on seeded random functions.
    VerifyFactorization(LatticeArgs),
    /// Evaluate a discrete Stokes identity with its correction and boundary terms.
    Stokes(StokesArgs),
    /// Show that right multiplication by a unit breaks monogenicity.
    MonogenicDemo(DemoArgs),
    /// Count associative and anti-associative basis triples.
    Census(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlgebraArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random samples per identity; 0 runs only the table-driven checks.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
}

#[derive(Args)]
struct LatticeArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    /// Lattice constant, e.g. 1, 1/2 or 0.25.
    #[arg(long, default_value = "1")]
    h: String,
    /// Half-width of the box holding random supports.
    #[arg(long, default_value_t = 1)]
    radius: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of consecutive seeds starting at --seed.
    #[arg(long)]
    seeds: Option<u32>,
    /// Absolute tolerance; required in float mode, rejected in exact mode.
    #[arg(long)]
    tol: Option<f64>,
    /// Read the input function(s) from file instead of generating them.
    #[arg(long = "function")]
    functions: Vec<PathBuf>,
    /// Allow radius above 3.
    #[arg(long)]
    force: bool,
    /// Write a one-row-per-seed CSV summary.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct StokesArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    #[arg(long, default_value = "T1")]
    theorem: Theorem,
    #[arg(long, default_value = "minus", allow_hyphen_values = true)]
    sign: PairingSign,
    /// Power of h in the boundary term as printed (7 or 8).
    #[arg(long, default_value_t = 8)]
    h_power: u32,
}

#[derive(Args)]
struct DemoArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value = "1")]
    h: String,
    #[arg(long, default_value_t = 1)]
    radius: u32,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    force: bool,
    /// Basis index k of the right factor e_k.
    #[arg(long, default_value_t = 3)]
    multiplier: usize,
}

impl LatticeArgs {
    fn apply(self, cfg: &mut RunConfig) {
        cfg.out = self.common.out;
        cfg.mode = self.mode;
        cfg.h = self.h;
        cfg.radius = self.radius;
        cfg.seed = self.seed;
        cfg.seeds = self.seeds;
        cfg.tol = self.tol;
        cfg.functions = self.functions;
        cfg.force = self.force;
        cfg.csv = self.csv;
    }
}

fn config(sub: Sub) -> RunConfig {
    match sub {
        Sub::VerifyAlgebra(a) => {
            let mut cfg = RunConfig::new(Command::VerifyAlgebra);
            cfg.out = a.common.out;
            cfg.seed = a.seed;
            cfg.samples = a.samples;
            cfg
        }
        Sub::VerifyFactorization(a) => {
            let mut cfg = RunConfig::new(Command::VerifyFactorization);
            a.apply(&mut cfg);
            cfg
        }
        Sub::Stokes(a) => {
            let mut cfg = RunConfig::new(Command::Stokes);
            a.lattice.apply(&mut cfg);
            cfg.theorem = a.theorem;
            cfg.sign = a.sign;
            cfg.h_power = a.h_power;
            cfg
        }
        Sub::MonogenicDemo(a) => {
            let mut cfg = RunConfig::new(Command::MonogenicDemo);
            cfg.out = a.common.out;
            cfg.mode = a.mode;
            cfg.h = a.h;
            cfg.radius = a.radius;
            cfg.tol = a.tol;
            cfg.force = a.force;
            cfg.multiplier = a.multiplier;
            cfg
        }
        Sub::Census(a) => {
            let mut cfg = RunConfig::new(Command::Census);
            cfg.out = a.out;
            cfg
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(harness::run(&config(cli.command)));
}
