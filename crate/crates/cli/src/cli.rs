//! Command-line definition. Precedence: flags, then `--config`, then defaults.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Command, Format, Module, RunConfig, Variant};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "bcov", version, about = "Exact algebraic BCOV computations for the mirror quintic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Common {
    /// TOML run configuration; flags override its values.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// q-series truncation order.
    #[arg(long)]
    pub order: Option<usize>,
    /// A-model Euler characteristic.
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<i64>,
    #[arg(long, value_enum)]
    pub yukawa_variant: Option<Variant>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Append wall-clock timings (output is then not reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Run the identity suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        module: Option<Module>,
        /// Rank for the Lie-algebra suite.
        #[arg(long)]
        h: Option<usize>,
        /// Highest e0-degree for the kernel test.
        #[arg(long)]
        kernel_max_e0: Option<i64>,
    },
    /// Solve the anomaly equations for F_g, g >= 2.
    SolveFg {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        genus: Option<u32>,
        /// Fix the ambiguity with the gap and constant-map conditions.
        #[arg(long)]
        fix_ambiguity: bool,
        /// Also extract BPS numbers (implies --fix-ambiguity).
        #[arg(long)]
        bps: bool,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Compare against the multi-modular solver.
        #[arg(long)]
        cross_check: bool,
    },
    /// Print a q-expansion.
    QExpand {
        #[command(flatten)]
        common: Common,
        /// One of y0, z, q, t, t0..t6, disc, yukawa, yukawa-wronskian, F1, Fg.
        #[arg(long)]
        object: Option<String>,
        /// Genus for --object Fg.
        #[arg(long)]
        genus: Option<u32>,
    },
    /// Gopakumar-Vafa invariants.
    Gw {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Write exact artifacts (series and ring elements) as JSON or text.
    Export {
        #[command(flatten)]
        common: Common,
        /// Export a single object; default exports all.
        #[arg(long)]
        object: Option<String>,
    },
}

fn apply_common(cfg: &mut RunConfig, c: &Common) {
    if let Some(v) = c.order {
        cfg.order = v;
    }
    if let Some(v) = c.chi {
        cfg.chi = v;
    }
    if let Some(v) = c.yukawa_variant {
        cfg.yukawa_variant = v;
    }
    if let Some(v) = c.format {
        cfg.format = v;
    }
    if let Some(v) = &c.out {
        cfg.out = Some(v.clone());
    }
    cfg.timings |= c.timings;
}

impl Cli {
    /// The effective configuration.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let common = match &self.command {
            Sub::Verify { common, .. }
            | Sub::SolveFg { common, .. }
            | Sub::QExpand { common, .. }
            | Sub::Gw { common, .. }
            | Sub::Export { common, .. } => common,
        };
        let mut cfg = match &common.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        apply_common(&mut cfg, common);
        match &self.command {
            Sub::Verify { module, h, kernel_max_e0, .. } => {
                cfg.command = Command::Verify;
                cfg.module = module.unwrap_or(cfg.module);
                cfg.h = h.or(cfg.h);
                cfg.kernel_max_e0 = kernel_max_e0.unwrap_or(cfg.kernel_max_e0);
            }
            Sub::SolveFg { genus, fix_ambiguity, bps, max_degree, cross_check, .. } => {
                cfg.command = Command::SolveFg;
                cfg.genus = genus.unwrap_or(cfg.genus);
                cfg.fix_ambiguity |= *fix_ambiguity;
                cfg.bps |= *bps;
                cfg.max_degree = max_degree.or(cfg.max_degree);
                cfg.cross_check |= *cross_check;
            }
            Sub::QExpand { object, genus, .. } => {
                cfg.command = Command::QExpand;
                cfg.object = object.clone().or(cfg.object.take());
                cfg.genus = genus.unwrap_or(cfg.genus);
            }
            Sub::Gw { genus, max_degree, .. } => {
                cfg.command = Command::Gw;
                cfg.genus = genus.unwrap_or(cfg.genus);
                cfg.max_degree = max_degree.or(cfg.max_degree);
            }
            Sub::Export { object, .. } => {
                cfg.command = Command::Export;
                cfg.object = object.clone().or(cfg.object.take());
            }
        }
        validate(&cfg)?;
        Ok(cfg.resolved())
    }
}

/// Checks that do not need any computation.
pub fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.order == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    if cfg.command == Command::SolveFg && cfg.genus < 2 {
        return Err(CliError::Usage(format!(
            "solve-fg needs genus >= 2 (got {}); genus one is closed form, use `q-expand --object F1`",
            cfg.genus
        )));
    }
    if cfg.command == Command::Verify {
        if let Some(h) = cfg.h {
            if h == 0 {
                return Err(CliError::Usage("--h must be at least 1".into()));
            }
        }
    }
    if matches!(cfg.command, Command::QExpand | Command::Export) {
        if let Some(o) = &cfg.object {
            crate::artifact::Object::parse(o)?;
        }
    }
    if cfg.command == Command::QExpand && cfg.object.is_none() {
        return Err(CliError::Usage("q-expand needs --object".into()));
    }
    Ok(())
}
