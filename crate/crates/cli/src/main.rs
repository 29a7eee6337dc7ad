//! `symqm`: runs the finite pipelines and worked scenarios and emits a
//! deterministic JSON or CSV report.

mod commands;
mod config;
mod error;
mod report;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use symqm::scenarios::spin::SpinConfig;

use commands::Context;
use config::Document;
use error::{CliError, CliResult};
use report::{emit_csv, emit_json, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "symqm", version, about = "Symmetry-based statistical models and their quantum counterparts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every random draw in the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON input document (see README for the schema).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Include wall-clock timings (output is then no longer byte-stable).
    #[arg(long, global = true)]
    timings: bool,
    /// Relative tolerance for treating two sampled parameter values as equal.
    #[arg(long, global = true, default_value_t = 0.0)]
    tol_match: f64,
    /// Relative gap that counts as a naturalness violation.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_check: f64,
    /// Monte Carlo acceptance band, in standard errors.
    #[arg(long, global = true, default_value_t = 4.0)]
    tol_band: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sampled naturalness of location/scale parameters (reference suite by default).
    Naturalness {
        #[arg(long)]
        formula: Option<String>,
        #[arg(long, default_value = "translation-scale")]
        group: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Orbits of the configured action, or the discretized spin-½ example.
    Orbits {
        #[arg(long)]
        spin_level: Option<u8>,
        #[arg(long, default_value_t = 2)]
        axis: usize,
        #[arg(long)]
        no_equator: bool,
        #[arg(long)]
        trivial_subgroup: bool,
    },
    /// Reduce the configured parameter to selected orbits.
    Reduce,
    /// Regular representation and parametric invariant subspaces.
    Represent,
    /// Sufficiency, completeness and estimability for the configured model.
    Suffstat,
    /// Observable and estimable spaces, kernel and intertwining.
    Hilbert,
    /// Born matrix, measurement family and outcome probabilities.
    Born {
        /// Spin-½ example: angle between the two directions.
        #[arg(long)]
        angle_deg: Option<f64>,
    },
    /// CHSH expression: classical sign table or quantum correlations.
    Chsh {
        #[arg(long, default_value = "quantum")]
        mode: String,
        /// a, a', b, b' in degrees.
        #[arg(long, value_delimiter = ',', default_value = "0,90,135,45", allow_negative_numbers = true)]
        angles: Vec<f64>,
    },
    /// Monte Carlo over the EPR prior.
    Epr {
        #[arg(long, default_value_t = 60.0, allow_negative_numbers = true)]
        angle_deg: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 1.0)]
        epsilon_norm: f64,
    },
    /// Conditional versus mixture variance in Cox's two-instrument example.
    Cox {
        #[arg(long, default_value_t = 0.05)]
        p1: f64,
        #[arg(long, default_value_t = 0.4)]
        p2: f64,
        #[arg(long, default_value_t = 0.5)]
        coin: f64,
    },
    /// Composition of two 1-D boosts; values may be fractions such as 1/2.
    Boost {
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        v1: String,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        v2: String,
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// Translation generator series and the position/momentum commutator.
    Generator {
        #[arg(long, default_value = "gaussian")]
        function: String,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        shift: f64,
        #[arg(long, default_value_t = 8)]
        terms: u32,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },
    /// Unitary time evolution.
    Evolve {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2", allow_negative_numbers = true)]
        times: Vec<f64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Naturalness { .. } => "naturalness",
            Command::Orbits { .. } => "orbits",
            Command::Reduce => "reduce",
            Command::Represent => "represent",
            Command::Suffstat => "suffstat",
            Command::Hilbert => "hilbert",
            Command::Born { .. } => "born",
            Command::Chsh { .. } => "chsh",
            Command::Epr { .. } => "epr",
            Command::Cox { .. } => "cox",
            Command::Boost { .. } => "boost",
            Command::Generator { .. } => "generator",
            Command::Evolve { .. } => "evolve",
        }
    }
}

fn dispatch(cli: &Cli, ctx: &Context) -> CliResult<Report> {
    match &cli.command {
        Command::Naturalness { formula, group, samples } => {
            commands::scenarios::naturalness(ctx, formula.as_deref(), group, *samples)
        }
        Command::Orbits { spin_level, axis, no_equator, trivial_subgroup } => {
            let spin = spin_level.map(|level| SpinConfig {
                level,
                axis: *axis,
                include_equator: !no_equator,
                trivial_subgroup: *trivial_subgroup,
            });
            commands::pipeline::orbits(ctx, spin)
        }
        Command::Reduce => commands::pipeline::reduce(ctx),
        Command::Represent => commands::pipeline::represent(ctx),
        Command::Suffstat => commands::pipeline::suffstat(ctx),
        Command::Hilbert => commands::pipeline::hilbert(ctx),
        Command::Born { angle_deg } => commands::quantum::born(ctx, *angle_deg),
        Command::Chsh { mode, angles } => commands::scenarios::chsh(ctx, mode, angles),
        Command::Epr { angle_deg, samples, epsilon_norm } => {
            commands::scenarios::epr(ctx, *angle_deg, *samples, *epsilon_norm)
        }
        Command::Cox { p1, p2, coin } => commands::scenarios::cox(ctx, *p1, *p2, *coin),
        Command::Boost { v1, v2, c } => commands::scenarios::boost(ctx, v1, v2, c),
        Command::Generator { function, shift, terms, hbar } => {
            commands::scenarios::generator(ctx, function, *shift, *terms, *hbar)
        }
        Command::Evolve { omega, times } => commands::quantum::evolve(ctx, *omega, times.clone()),
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let document = cli.config.as_deref().map(Document::load).transpose()?;
    let ctx =
        Context { seed: cli.seed, match_tol: cli.tol_match, check_tol: cli.tol_check, z_band: cli.tol_band, document };
    let start = Instant::now();
    let mut report = dispatch(cli, &ctx)?;
    if cli.timings {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        report.diagnostics.timings_ms = Some(BTreeMap::from([("total".to_string(), ms)]));
    }
    let report = report.normalized()?;
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => {
            Box::new(File::create(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?)
        }
        None => Box::new(io::stdout().lock()),
    };
    match cli.format {
        Format::Json => emit_json(&report, &mut sink),
        Format::Csv => emit_csv(&report, &mut sink),
    }
}

fn fail(command: &str, err: &CliError) -> ExitCode {
    let record = err.record(command);
    let line = serde_json::to_string(&record).unwrap_or_else(|_| err.to_string());
    eprintln!("{line}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let command = std::env::args().nth(1).unwrap_or_default();
            return fail(&command, &CliError::Usage(e.to_string().trim().to_string()));
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(cli.command.name(), &e),
    }
}
