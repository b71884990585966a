//! Argument parsing and dispatch for the `findim` binary.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use findim_core::homology::Caps;
use findim_core::igusa_todorov::PhiParams;
use findim_core::selftest::SuiteConfig;

use crate::cache::Cache;
use crate::commands::{self, Outcome, RunConfig};
use crate::spec::{load, Loaded};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Homological invariants and finitistic-dimension bounds of bound quiver
/// algebras over prime fields.
#[derive(Debug, Parser)]
#[command(name = "findim", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for randomized steps; overrides the file's `config seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Resolution caps as `STEPS[,DIM]`.
    #[arg(long, global = true, value_parser = parse_caps)]
    pub caps: Option<(usize, Option<usize>)>,
    /// Plateau window for Φ.
    #[arg(long, global = true)]
    pub window: Option<usize>,
    /// Directory for the persistent module registry.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full invariant report.
    Report {
        file: PathBuf,
        /// Modules whose Φ and Ψ to include.
        #[arg(long, num_args = 1..)]
        modules: Vec<String>,
    },
    /// Projective dimension of a module.
    Pd {
        file: PathBuf,
        #[arg(long)]
        module: String,
    },
    /// The n-th syzygy and its indecomposable summands.
    Syzygy {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Infinite-layer lengths, ζ and r^∞ of a module.
    Layerlength {
        file: PathBuf,
        #[arg(long)]
        module: String,
    },
    /// Φ and Ψ of a direct sum of modules.
    Psi {
        file: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        modules: Vec<String>,
    },
    /// The finitistic-dimension bounds.
    Bounds { file: PathBuf },
    /// Property checks on random modules over the given algebra.
    Selftest {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        modules: usize,
        #[arg(long, default_value_t = 10)]
        sequences: usize,
        #[arg(long, default_value_t = 10)]
        max_module_dim: usize,
        /// Largest dimension enumerated for the truncated fin.dim check (0 skips it).
        #[arg(long, default_value_t = 5)]
        oracle_dim: usize,
    },
}

fn parse_caps(s: &str) -> std::result::Result<(usize, Option<usize>), String> {
    let mut it = s.splitn(2, ',');
    let steps = it.next().unwrap_or("").trim().parse::<usize>().map_err(|e| format!("steps: {e}"))?;
    let dim = it.next().map(|d| d.trim().parse::<usize>().map_err(|e| format!("dimension: {e}"))).transpose()?;
    Ok((steps, dim))
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Report { file, .. }
            | Command::Pd { file, .. }
            | Command::Syzygy { file, .. }
            | Command::Layerlength { file, .. }
            | Command::Psi { file, .. }
            | Command::Bounds { file }
            | Command::Selftest { file, .. } => file,
        }
    }
}

/// File config overridden by flags, then defaults.
pub fn run_config(cli: &Cli, loaded: &Loaded) -> Result<RunConfig> {
    let cfg = &loaded.spec.config;
    let defaults = Caps::default();
    let mut caps = Caps {
        max_steps: cfg.max_steps.unwrap_or(defaults.max_steps),
        max_total_dim: cfg.max_total_dim.unwrap_or(defaults.max_total_dim),
    };
    if let Some((steps, dim)) = cli.caps {
        caps.max_steps = steps;
        if let Some(d) = dim {
            caps.max_total_dim = d;
        }
    }
    if caps.max_steps == 0 || caps.max_total_dim == 0 {
        bail!("caps must be positive");
    }
    let window = cli.window.or(cfg.window).unwrap_or(PhiParams::default().window);
    if window == 0 {
        bail!("window must be positive");
    }
    Ok(RunConfig { seed: cli.seed.or(cfg.seed).unwrap_or(0), caps, window })
}

/// Runs one command. The exit code is 0 on success, 2 when some result is
/// Unknown and 1 when the self-test found failures.
pub fn run(cli: &Cli) -> Result<(String, i32)> {
    let path = cli.command.file();
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let loaded = load(&text).with_context(|| format!("in {}", path.display()))?;
    let rc = run_config(cli, &loaded)?;
    let cache = cli.cache.as_deref().map(Cache::new).transpose()?;
    let mut session = match &cache {
        Some(c) => c.session(&loaded, rc.seed, rc.caps),
        None => findim_core::homology::Session::new(&loaded.algebra, rc.seed, rc.caps),
    };
    let out: Outcome = match &cli.command {
        Command::Report { modules, .. } => commands::report(&mut session, &loaded, &rc, modules)?,
        Command::Pd { module, .. } => commands::pd(&mut session, &loaded, module)?,
        Command::Syzygy { module, power, .. } => commands::syzygy(&mut session, &loaded, module, *power)?,
        Command::Layerlength { module, .. } => commands::layerlength(&mut session, &loaded, module)?,
        Command::Psi { modules, .. } => commands::psi_cmd(&mut session, &loaded, modules, &rc)?,
        Command::Bounds { .. } => commands::bounds(&mut session, &loaded, &rc)?,
        Command::Selftest { modules, sequences, max_module_dim, oracle_dim, .. } => {
            let suite = SuiteConfig {
                seed: rc.seed,
                algebras: 1,
                modules_per_algebra: *modules,
                sequences_per_algebra: *sequences,
                max_module_dim: *max_module_dim,
                oracle_dim: *oracle_dim,
                caps: rc.caps,
                params: rc.params(),
                ..SuiteConfig::default()
            };
            commands::selftest(&loaded, suite)?
        }
    };
    if let Some(c) = &cache {
        c.store(&loaded, rc.seed, &session)?;
    }
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json)? + "\n",
        Format::Text => out.text,
    };
    let code = if out.failed {
        1
    } else if out.unknown {
        2
    } else {
        0
    };
    Ok((rendered, code))
}
