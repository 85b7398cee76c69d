//! `key = value` job files.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// Settings read from a job file. Command-line flags take precedence.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub k: Option<u32>,
    pub s: Option<u32>,
    pub modulus: Option<String>,
    pub n: Option<usize>,
    pub g: Option<String>,
    pub seed: Option<u64>,
    pub mode: Option<String>,
    pub trials: Option<usize>,
    pub budget: Option<u128>,
    pub codebook: Option<String>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = JobConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected `key = value`", lineno + 1);
            };
            let key = key.trim();
            let value = value.trim().trim_matches('"').to_string();
            let num = |what: &str| format!("line {}: bad {what} `{value}`", lineno + 1);
            match key {
                "k" => cfg.k = Some(value.parse().with_context(|| num("k"))?),
                "s" => cfg.s = Some(value.parse().with_context(|| num("s"))?),
                "n" => cfg.n = Some(value.parse().with_context(|| num("n"))?),
                "seed" => cfg.seed = Some(value.parse().with_context(|| num("seed"))?),
                "trials" => cfg.trials = Some(value.parse().with_context(|| num("trials"))?),
                "budget" => cfg.budget = Some(value.parse().with_context(|| num("budget"))?),
                "modulus" => cfg.modulus = Some(value),
                "g" => cfg.g = Some(value),
                "mode" => cfg.mode = Some(value),
                "codebook" => cfg.codebook = Some(value),
                other => bail!("line {}: unknown key `{other}`", lineno + 1),
            }
        }
        Ok(cfg)
    }
}
