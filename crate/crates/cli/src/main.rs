use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use herzlab::operators::OperatorSpec;
use herzlab_cli::commands::{self, Space};
use herzlab_cli::config::{parse_range, SuiteConfig};
use herzlab_cli::report::{to_csv, to_json, write_reports};
use herzlab_cli::{suites, svg, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Global {
    /// key = value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Grid resolution per axis (overrides `grid.resolution`)
    #[arg(long, global = true)]
    resolution: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Record per-check runtimes (reports are then not reproducible byte for byte)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Parser)]
#[command(
    name = "herzlab",
    version,
    about = "Grand Herz-type norms on anisotropic grids"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Norm of a grid function read from CSV
    Norm {
        /// herz, herz-morrey or nonhomog
        #[arg(long, default_value = "herz")]
        space: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Canonical block decomposition into a directory of CSVs plus manifest.json
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
    /// Build, validate and sum atoms
    Atoms {
        #[command(subcommand)]
        action: AtomsAction,
    },
    /// Operator boundedness sweep over an (α, λ) grid
    Sweep {
        /// hardy, identity, riesz:<cutoff>, maximal[:euclidean]
        #[arg(long, default_value = "hardy")]
        operator: String,
        /// start:stop:step
        #[arg(long)]
        alpha: Option<String>,
        /// start:stop:step
        #[arg(long)]
        lambda: Option<String>,
        /// scales=N, size=N, seed=S
        #[arg(long)]
        family: Option<String>,
        /// Also write sweep.svg
        #[arg(long)]
        svg: bool,
    },
    /// Run verification suites: geometry, lebesgue, grandseq, herz, algebra,
    /// operators, atoms, all, or a comma-separated list
    Verify { suite: String },
    /// Reference values: constant_herz, grand_seq_dense, luxemburg_algebraic
    Oracle { target: String },
}

#[derive(Debug, Subcommand)]
enum AtomsAction {
    Make {
        /// haar or bump
        #[arg(long, default_value = "bump")]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
        #[arg(long, default_value_t = 0)]
        s: u32,
    },
    Validate {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        restricted: bool,
    },
    Sumcheck {
        #[arg(long)]
        manifest: PathBuf,
    },
}

fn load_config(g: &Global) -> Result<SuiteConfig> {
    let mut cfg = match &g.config {
        Some(path) => SuiteConfig::load(path)?,
        None => SuiteConfig::default(),
    };
    if let Some(seed) = g.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &g.out {
        cfg.out = out.clone();
    }
    if let Some(n) = g.resolution {
        cfg.resolutions = vec![n];
    }
    cfg.timings = g.timings;
    cfg.validate()?;
    Ok(cfg)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Returns whether every asserted check passed.
fn run(cli: Cli) -> Result<bool> {
    let cfg = load_config(&cli.global)?;
    let format = cli.global.format;
    match cli.command {
        Command::Norm { space, input } => {
            let n = commands::norm(&cfg, space.parse::<Space>()?, &input)?;
            match format {
                Format::Json => print_json(&n)?,
                Format::Csv => print!("{}", commands::norm_csv(&n)),
            }
            Ok(true)
        }
        Command::Decompose { input } => {
            let m = commands::decompose(&cfg, &input, &cfg.out)?;
            eprintln!("{} blocks written to {}", m.blocks.len(), cfg.out.display());
            print_json(&m)?;
            Ok(true)
        }
        Command::Atoms { action } => match action {
            AtomsAction::Make { kind, k, s } => {
                let (path, m) =
                    commands::atoms_make(&cfg, commands::parse_kind(&kind)?, k, s, &cfg.out)?;
                eprintln!("atom manifest written to {}", path.display());
                print_json(&m)?;
                Ok(m.pass)
            }
            AtomsAction::Validate {
                manifest,
                restricted,
            } => {
                let r = commands::atoms_validate(&cfg, &manifest, restricted)?;
                print_json(&r)?;
                Ok(r.pass)
            }
            AtomsAction::Sumcheck { manifest } => {
                print_json(&commands::atoms_sumcheck(&cfg, &manifest)?)?;
                Ok(true)
            }
        },
        Command::Sweep {
            operator,
            alpha,
            lambda,
            family,
            svg: want_svg,
        } => {
            let op = OperatorSpec::parse(&operator)?;
            let alphas = parse_range(alpha.as_deref().unwrap_or(&cfg.sweep.alpha))?;
            let lambdas = parse_range(lambda.as_deref().unwrap_or(&cfg.sweep.lambda))?;
            let family = family.unwrap_or_else(|| cfg.sweep.family.clone());
            let table = commands::sweep(&cfg, &op, &alphas, &lambdas, &family)?;
            std::fs::create_dir_all(&cfg.out)?;
            let csv = commands::sweep_csv(&table);
            std::fs::write(cfg.out.join("sweep.csv"), &csv)?;
            if want_svg {
                std::fs::write(cfg.out.join("sweep.svg"), svg::heatmap(&table))?;
            }
            match format {
                Format::Json => print_json(&table)?,
                Format::Csv => print!("{csv}"),
            }
            Ok(table.pass)
        }
        Command::Verify { suite } => {
            let reports = suites::run_suites(&suite, &cfg)?;
            write_reports(&cfg.out, &reports)?;
            match format {
                Format::Json => print!("{}", to_json(&reports)?),
                Format::Csv => print!("{}", to_csv(&reports)),
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            eprintln!(
                "{} checks, {failed} failed; reports in {}",
                reports.len(),
                cfg.out.display()
            );
            Ok(failed == 0)
        }
        Command::Oracle { target } => {
            let v = commands::oracle_run(&target, &cfg)?;
            std::fs::create_dir_all(&cfg.out)?;
            let mut text = serde_json::to_string_pretty(&v)?;
            text.push('\n');
            std::fs::write(cfg.out.join(format!("oracle_{target}.json")), &text)?;
            print!("{text}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("herzlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
