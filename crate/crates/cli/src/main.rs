//! `socent`: fit benefit distributions, compute Gini and inequality
//! summaries, and count configurations.
//!
//! Exit status is 0 on success, 2 for bad input or arguments, 3 when the fit
//! itself fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use socent_core::combinatorics::{enumerate_configs, ConfigurationCount};
use socent_core::distribution::normalize;
use socent_core::entropy::inequality_index;
use socent_core::fit::{fit, FitConfig};
use socent_core::io::{load_config, load_distribution, plot_csv, write_atomic, LoadOptions, ReportDocument};
use socent_core::lorenz::{classify_symmetry, lorenz_points, SymmetryKind};
use socent_core::{Error, Statistics};

#[derive(Parser)]
#[command(name = "socent", version, about = "Dual-entropy analysis of binned benefit distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the occupation law and write a JSON report.
    Fit {
        input: PathBuf,
        /// Flat TOML file with pipeline settings.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report path; the report goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-bin CSV of observed, smoothed and fitted occupations.
        #[arg(long)]
        plot_data: Option<PathBuf>,
        /// Put the peak at the lowest positive benefit.
        #[arg(long)]
        pin_peak_min: bool,
        #[arg(long, value_name = "K")]
        max_segments: Option<usize>,
    },
    /// Gini coefficient, symmetry verdict and inequality index.
    Gini { input: PathBuf },
    /// Exact number of configurations of N entities over G states.
    Oracle {
        #[arg(long)]
        entities: u64,
        #[arg(long)]
        states: u64,
        #[arg(long, value_enum)]
        statistics: StatisticsArg,
        /// Also count by brute force and compare.
        #[arg(long)]
        enumerate: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StatisticsArg {
    Mbg,
    Fd,
    Be,
}

impl From<StatisticsArg> for Statistics {
    fn from(s: StatisticsArg) -> Self {
        match s {
            StatisticsArg::Mbg => Statistics::Mbg,
            StatisticsArg::Fd => Statistics::Fd,
            StatisticsArg::Be => Statistics::Be,
        }
    }
}

const EXIT_INPUT: u8 = 2;
const EXIT_FIT: u8 = 3;

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::Fit { .. } => ExitCode::from(EXIT_FIT),
        e if e.is_input_error() => ExitCode::from(EXIT_INPUT),
        _ => ExitCode::from(EXIT_FIT),
    }
}

fn run_fit(
    input: &Path,
    config: Option<&Path>,
    out: Option<&Path>,
    plot_data: Option<&Path>,
    pin_peak_min: bool,
    max_segments: Option<usize>,
) -> Result<(), Error> {
    let mut cfg = match config {
        Some(path) => load_config(path)?.apply(FitConfig::default())?,
        None => FitConfig::default(),
    };
    if pin_peak_min {
        cfg.pin_peak_to_min = true;
    }
    if let Some(k) = max_segments {
        cfg.max_segments = k;
    }
    cfg.validate()?;

    let series = load_distribution(input, &LoadOptions::default())?;
    let dist = normalize(&series)?;
    let report = fit(&dist, &cfg)?;
    let json = ReportDocument::new(&report, &cfg).to_json()?;
    let plot = plot_data.map(|_| plot_csv(&report)).transpose()?;

    match out {
        Some(path) => write_atomic(path, json.as_bytes())?,
        None => print!("{json}"),
    }
    if let (Some(path), Some(bytes)) = (plot_data, plot) {
        write_atomic(path, &bytes)?;
    }
    Ok(())
}

fn run_gini(input: &Path) -> Result<(), Error> {
    let dist = normalize(&load_distribution(input, &LoadOptions::default())?)?;
    let gini = lorenz_points(&dist)?.gini;
    let verdict = classify_symmetry(gini);
    let inequality = inequality_index(&dist);
    println!("gini = {gini}");
    println!(
        "symmetry = {}",
        match verdict.kind {
            SymmetryKind::SymmetryFeasible => "symmetry-feasible",
            SymmetryKind::AsymmetryRequired => "asymmetry-required",
        }
    );
    if let Some(r) = verdict.equivalent_ratio {
        println!("equivalent_ratio = {r}");
    }
    println!("inequality_index = {}", inequality.index);
    println!("welfare = {}", inequality.welfare);
    Ok(())
}

fn run_oracle(entities: u64, states: u64, statistics: Statistics, enumerate: bool) -> Result<(), Error> {
    let count = ConfigurationCount::compute(statistics, entities, states)?;
    println!("statistics = {statistics}");
    println!("entities = {entities}");
    println!("states = {states}");
    println!("count = {}", count.value);
    if enumerate {
        let brute = enumerate_configs(entities, states, statistics)?;
        println!("enumerated = {brute}");
        println!("agreement = {}", if brute == count.value { "match" } else { "mismatch" });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fit {
            input,
            config,
            out,
            plot_data,
            pin_peak_min,
            max_segments,
        } => run_fit(
            &input,
            config.as_deref(),
            out.as_deref(),
            plot_data.as_deref(),
            pin_peak_min,
            max_segments,
        ),
        Command::Gini { input } => run_gini(&input),
        Command::Oracle {
            entities,
            states,
            statistics,
            enumerate,
        } => run_oracle(entities, states, statistics.into(), enumerate).map_err(|e| match e {
            // every oracle failure is an argument problem
            e if e.is_input_error() => e,
            e => Error::InvalidInput(e.to_string()),
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
