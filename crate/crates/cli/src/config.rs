//! Run configuration: defaults, then a TOML file, then command-line flags.

use std::path::{Path, PathBuf};

use bcov_fields::YukawaVariant;
use bcov_mirror::MirrorConfig;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    #[default]
    Verify,
    SolveFg,
    QExpand,
    Gw,
    Export,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::SolveFg => "solve-fg",
            Command::QExpand => "q-expand",
            Command::Gw => "gw",
            Command::Export => "export",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Disc,
    Printed,
}

impl Variant {
    pub fn yukawa(self) -> YukawaVariant {
        match self {
            Variant::Disc => YukawaVariant::Disc,
            Variant::Printed => YukawaVariant::Printed,
        }
    }
}

/// Verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    #[default]
    All,
    Liealg,
    Fields,
    Kernel,
    Special,
    Anomaly,
    Mirror,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub genus: u32,
    /// q-series truncation order.
    pub order: usize,
    /// A-model Euler characteristic.
    pub chi: i64,
    pub yukawa_variant: Variant,
    pub format: Format,
    pub fix_ambiguity: bool,
    /// Also extract BPS numbers after `solve-fg`.
    pub bps: bool,
    pub module: Module,
    /// Rank for the liealg suite; `None` runs h = 1, 2, 3.
    pub h: Option<usize>,
    pub object: Option<String>,
    pub max_degree: Option<u32>,
    pub out: Option<PathBuf>,
    pub kernel_max_e0: i64,
    pub cross_check: bool,
    /// Timings break byte-identical output, so they are opt-in.
    pub timings: bool,
    pub mirror: MirrorConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Verify,
            genus: 2,
            order: 12,
            chi: -200,
            yukawa_variant: Variant::Disc,
            format: Format::Text,
            fix_ambiguity: false,
            bps: false,
            module: Module::All,
            h: None,
            object: None,
            max_degree: None,
            out: None,
            kernel_max_e0: 15,
            cross_check: false,
            timings: false,
            mirror: MirrorConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is representable in TOML")
    }

    /// Copies the top-level settings the mirror side also carries.
    pub fn resolved(mut self) -> Self {
        self.mirror.order = self.order;
        self.mirror.chi = self.chi;
        self
    }

    /// Highest degree for BPS tables; the genus-one theta-log costs one order.
    pub fn bps_degree(&self) -> u32 {
        self.max_degree.unwrap_or(self.order.saturating_sub(1) as u32)
    }
}
