//! Versioned run defaults: the shipped `defaults.toml`, optionally overlaid
//! by a user file, then by command-line flags.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

pub const CONFIG_VERSION: u32 = 1;

const DEFAULTS: &str = include_str!("../config/defaults.toml");

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub version: u32,
    pub profile: ProfileConfig,
    pub dipole: DipoleConfig,
    pub grid: GridConfig,
    pub physics: PhysicsConfig,
    pub fit: FitConfig,
    pub coupling: CouplingConfig,
    pub deconfine: DeconfineConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileConfig {
    pub family: String,
    pub alpha: f64,
    pub alpha_k: f64,
    pub beta: f64,
    pub ell: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DipoleConfig {
    pub alphas_nc: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub points: usize,
    pub levels: usize,
    pub samples: usize,
    pub margin: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsConfig {
    pub lambda_qcd_mev: f64,
    pub radius_fm: f64,
    pub alpha_s: f64,
    pub nc: u32,
    pub nf: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    pub a_gev2: f64,
    pub b_gev2: f64,
    pub c_gev2: f64,
    pub k_max: usize,
    pub noise_fraction: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingConfig {
    pub samples: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub rho: f64,
    pub q2_mev2: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeconfineConfig {
    pub r_sequence_fm: Vec<f64>,
    pub collapse_fraction: f64,
    pub collapse_points: usize,
}

/// Recursively overwrites `base` with the keys of `overlay`.
fn merge(base: &mut toml::Table, overlay: toml::Table) {
    for (key, value) in overlay {
        match (base.get_mut(&key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(key, v);
            }
        }
    }
}

fn parse(text: &str, overlay: Option<&str>) -> Result<Config> {
    let mut table: toml::Table = toml::from_str(text).context("built-in defaults")?;
    if let Some(o) = overlay {
        let user: toml::Table = toml::from_str(o)?;
        merge(&mut table, user);
    }
    let config: Config = toml::Value::Table(table).try_into()?;
    if config.version != CONFIG_VERSION {
        bail!("unsupported config version {} (expected {CONFIG_VERSION})", config.version);
    }
    Ok(config)
}

impl Config {
    pub fn defaults() -> Self {
        parse(DEFAULTS, None).expect("shipped defaults are valid")
    }

    /// Defaults overlaid with the file at `path`, if any.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::defaults()),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                parse(DEFAULTS, Some(&text)).with_context(|| format!("invalid config {}", p.display()))
            }
        }
    }
}
