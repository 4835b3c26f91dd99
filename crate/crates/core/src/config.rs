//! Run configuration: defaults, a `key = value` file format, and validation.
//!
//! Keys are the kebab-case field names, the same spelling the CLI flags
//! use. Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::potential::DEFAULT_FD_STEP;
use crate::regions::{cap_radius_window, DEFAULT_CAP_RADIUS};
use crate::weinstein::Step2Mode;
use crate::{Error, Result};

/// Largest genus accepted for either factor.
pub const MAX_GENUS: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Step2Selection {
    PaperLiteral,
    Corrected,
    Both,
}

impl Step2Selection {
    pub fn modes(self) -> Vec<Step2Mode> {
        match self {
            Step2Selection::PaperLiteral => vec![Step2Mode::PaperLiteral],
            Step2Selection::Corrected => vec![Step2Mode::Corrected],
            Step2Selection::Both => Step2Mode::ALL.to_vec(),
        }
    }
}

impl FromStr for Step2Selection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-literal" => Ok(Step2Selection::PaperLiteral),
            "corrected" => Ok(Step2Selection::Corrected),
            "both" => Ok(Step2Selection::Both),
            _ => Err(Error::Config(format!(
                "step2-mode must be paper-literal, corrected or both, not '{s}'"
            ))),
        }
    }
}

/// Which interval the third sector uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum B3Interval {
    /// [20π/12, 28π/12], wrapping; the three sectors tile the sphere.
    Corrected,
    /// [20π/12, 24π/12] as printed.
    PaperLiteral,
}

impl FromStr for B3Interval {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(B3Interval::Corrected),
            "paper-literal" => Ok(B3Interval::PaperLiteral),
            _ => Err(Error::Config(format!(
                "b3-interval must be corrected or paper-literal, not '{s}'"
            ))),
        }
    }
}

impl fmt::Display for B3Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            B3Interval::Corrected => "corrected",
            B3Interval::PaperLiteral => "paper-literal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    pub g: u32,
    pub h: u32,
    pub cap_radius: f64,
    pub step2_mode: Step2Selection,
    pub b3_interval: B3Interval,
    pub fd_step: f64,
    pub samples_per_stratum: usize,
    pub quadrature_target: f64,
    pub threshold: f64,
    pub seed: u64,
    /// Random chart points in the Liouville residual sweep.
    pub residual_points: usize,
    /// Newton seeds per critical-point search.
    pub morse_seeds: usize,
    // Output locations and execution strategy do not change results, so
    // they are left out of the report.
    #[serde(skip)]
    pub json_out: Option<PathBuf>,
    #[serde(skip)]
    pub markdown_out: Option<PathBuf>,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            g: 0,
            h: 0,
            cap_radius: DEFAULT_CAP_RADIUS,
            step2_mode: Step2Selection::Both,
            b3_interval: B3Interval::Corrected,
            fd_step: DEFAULT_FD_STEP,
            samples_per_stratum: 256,
            quadrature_target: 1e-7,
            threshold: 0.0,
            seed: 0,
            residual_points: 1000,
            morse_seeds: 50,
            json_out: None,
            markdown_out: None,
            execution: Execution::default(),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::Config(format!("{key}: cannot parse '{value}': {e}")))
}

impl RunConfig {
    /// Set one field from its kebab-case key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "g" => self.g = parse(key, value)?,
            "h" => self.h = parse(key, value)?,
            "cap-radius" => self.cap_radius = parse(key, value)?,
            "step2-mode" => self.step2_mode = value.parse()?,
            "b3-interval" => self.b3_interval = value.parse()?,
            "fd-step" => self.fd_step = parse(key, value)?,
            "samples-per-stratum" => self.samples_per_stratum = parse(key, value)?,
            "quadrature-target" => self.quadrature_target = parse(key, value)?,
            "threshold" => self.threshold = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "residual-points" => self.residual_points = parse(key, value)?,
            "morse-seeds" => self.morse_seeds = parse(key, value)?,
            "json-out" => self.json_out = Some(PathBuf::from(value)),
            "markdown-out" => self.markdown_out = Some(PathBuf::from(value)),
            _ => return Err(Error::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Apply `key = value` lines on top of the current values.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.apply_text(&text)
    }

    /// Whether the numerical genus-zero sections apply.
    pub fn numerical_in_scope(&self) -> bool {
        self.g == 0 && self.h == 0
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.g > MAX_GENUS || self.h > MAX_GENUS {
            return fail(format!("g and h must be at most {MAX_GENUS}"));
        }
        let (lo, hi) = cap_radius_window();
        if !(self.cap_radius > lo && self.cap_radius < hi) {
            return fail(format!(
                "cap-radius {} outside ({lo}, {hi})",
                self.cap_radius
            ));
        }
        if !(self.fd_step > 0.0 && self.fd_step < 0.1) {
            return fail(format!("fd-step {} outside (0, 0.1)", self.fd_step));
        }
        if !(self.quadrature_target > 0.0 && self.quadrature_target.is_finite()) {
            return fail(format!(
                "quadrature-target {} must be positive",
                self.quadrature_target
            ));
        }
        if !self.threshold.is_finite() {
            return fail("threshold must be finite".into());
        }
        for (name, n) in [
            ("samples-per-stratum", self.samples_per_stratum),
            ("residual-points", self.residual_points),
            ("morse-seeds", self.morse_seeds),
        ] {
            if n == 0 {
                return fail(format!("{name} must be at least 1"));
            }
        }
        Ok(())
    }
}
