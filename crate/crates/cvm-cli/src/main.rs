mod commands;
mod csvout;
mod manifest;
mod runconfig;
mod spacetime;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "cvm",
    version,
    about = "Constrained voter model: event-driven simulation, charged-particle edge process, exact fluctuation/fixation analytics"
)]
struct Cli {
    /// Run configuration file (flat `section.key = value` lines)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Override one configuration key (repeatable)
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Master seed (shorthand for --set run.seed=...)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory (shorthand for --set output.dir=...)
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for replicate parallelism (default: all cores)
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run replicates and write per-replicate and time-series tables
    Simulate,
    /// Estimate the consensus probability against the exact centrist bound
    Consensus,
    /// Clustering curves: pair agreement and particle density on the torus
    Cluster,
    /// Fixation proxies: blockade persistence and flip-count stabilization
    Fixation,
    /// Changeover large-deviation decay for i.i.d. coin flips
    LdCheck {
        /// Heads probability
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Deviation scale (fraction of the window length)
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Window lengths, comma separated
        #[arg(long, default_value = "100,200,400")]
        lengths: String,
        /// Sequences per window length
        #[arg(long, default_value_t = 100_000)]
        replicates: u64,
    },
    /// Exact closed-form table for one parameter pair
    Analytics {
        /// Number of opinions (overrides model.f)
        #[arg(long = "F")]
        f: Option<u32>,
        /// Confidence threshold (overrides model.theta)
        #[arg(long)]
        theta: Option<u32>,
    },
    /// Exact phase classification over the (F, theta) plane
    PhaseDiagram {
        /// Largest number of opinions to classify
        #[arg(long = "F-max", default_value_t = 20)]
        f_max: u32,
    },
    /// Space-time pixmap of one replicate on the torus
    Spacetime {
        /// Number of time samples (image height)
        #[arg(long, default_value_t = 600)]
        rows: usize,
        /// Render domain boundaries only (black on white)
        #[arg(long)]
        interfaces: bool,
    },
}

fn resolved_map(cli: &Cli) -> Result<BTreeMap<String, String>> {
    let mut map = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config {}", path.display()))?;
            runconfig::parse_config_text(&text)?
        }
        None => BTreeMap::new(),
    };
    for spec in &cli.set {
        runconfig::apply_override(&mut map, spec)?;
    }
    if let Some(seed) = cli.seed {
        map.insert("run.seed".into(), seed.to_string());
    }
    if let Some(out) = &cli.out {
        map.insert("output.dir".into(), out.display().to_string());
    }
    Ok(map)
}

fn output_dir(map: &BTreeMap<String, String>) -> PathBuf {
    PathBuf::from(map.get("output.dir").map(String::as_str).unwrap_or("out"))
}

/// Create the artifact directory. Commands call this only after their
/// configuration has fully validated, so failed runs leave nothing behind.
pub(crate) fn ensure_outdir(dir: &std::path::Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .context("cannot configure thread pool")?;
    }
    let map = resolved_map(cli)?;
    let dir = output_dir(&map);
    match &cli.command {
        Command::Simulate => commands::simulate::run(map, &dir),
        Command::Consensus => commands::consensus::run(map, &dir),
        Command::Cluster => commands::cluster::run(map, &dir),
        Command::Fixation => commands::fixation::run(map, &dir),
        Command::LdCheck {
            p,
            epsilon,
            lengths,
            replicates,
        } => commands::ldcheck::run(map, &dir, *p, *epsilon, lengths, *replicates),
        Command::Analytics { f, theta } => commands::analytics::run(map, &dir, *f, *theta),
        Command::PhaseDiagram { f_max } => commands::phase::run(map, &dir, *f_max),
        Command::Spacetime { rows, interfaces } => {
            commands::spacetime_cmd::run(map, &dir, *rows, *interfaces)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        let message: String = format!("{err:#}")
            .chars()
            .map(|c| match c {
                '"' => '\'',
                '\n' => ' ',
                c => c,
            })
            .collect();
        eprintln!("{{\"error\":\"{message}\"}}");
        std::process::exit(2);
    }
}
