//! Sweep configuration: a JSON file whose fields can each be overridden on
//! the command line.

use serde::Deserialize;
use shockpath::{
    default_delta_grid, default_xi_grid, parse_grid, parse_list, GammaPreset, PcStrategy,
    PcVector, ThetaPreset, ThetaVector,
};

use crate::failure::Failure;

/// A Γ or Θ vector given either as a preset name or explicitly.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Named(String),
    Values(Vec<f64>),
}

impl VectorSpec {
    /// Command-line form: a preset name or comma-separated values.
    pub fn from_arg(text: &str) -> Result<Self, Failure> {
        let trimmed = text.trim();
        if trimmed.starts_with(|c: char| c.is_ascii_alphabetic()) {
            Ok(VectorSpec::Named(trimmed.to_string()))
        } else {
            Ok(VectorSpec::Values(parse_list(trimmed)?))
        }
    }

    pub fn preset_name(&self) -> Option<String> {
        match self {
            VectorSpec::Named(name) => Some(name.clone()),
            VectorSpec::Values(_) => None,
        }
    }

    pub fn gamma(&self, k_bar: usize) -> Result<PcVector, Failure> {
        let gamma = match self {
            VectorSpec::Named(name) => name.parse::<GammaPreset>()?.expand(k_bar)?,
            VectorSpec::Values(v) => PcVector::new(v.clone())?,
        };
        gamma.check_len(k_bar)?;
        Ok(gamma)
    }

    pub fn theta(&self, k_bar: usize) -> Result<ThetaVector, Failure> {
        let theta = match self {
            VectorSpec::Named(name) => name.parse::<ThetaPreset>()?.expand(k_bar)?,
            VectorSpec::Values(v) => ThetaVector::new(v.clone())?,
        };
        theta.check_len(k_bar)?;
        Ok(theta)
    }
}

/// A grid given as a list of values or a `start:stop:step` string.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Values(Vec<f64>),
    Text(String),
}

impl GridSpec {
    pub fn resolve(&self) -> Result<Vec<f64>, Failure> {
        match self {
            GridSpec::Values(v) => Ok(v.clone()),
            GridSpec::Text(t) => Ok(parse_grid(t)?),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub gamma: Option<VectorSpec>,
    pub theta: Option<VectorSpec>,
    pub xi_grid: Option<GridSpec>,
    pub delta_grid: Option<GridSpec>,
    pub strategy: Option<PcStrategy>,
    #[serde(default)]
    pub emit_per_k: bool,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::Invalid(format!("config: {e}")))
    }

    /// Replaces each field that is set in `other`.
    pub fn overlay(mut self, other: SweepConfig) -> Self {
        self.gamma = other.gamma.or(self.gamma);
        self.theta = other.theta.or(self.theta);
        self.xi_grid = other.xi_grid.or(self.xi_grid);
        self.delta_grid = other.delta_grid.or(self.delta_grid);
        self.strategy = other.strategy.or(self.strategy);
        self.emit_per_k |= other.emit_per_k;
        self
    }

    pub fn resolve(&self, k_bar: usize) -> Result<ResolvedSweep, Failure> {
        if k_bar == 0 {
            return Err(Failure::Invalid(
                "network has no arcs, so no threshold vector exists".into(),
            ));
        }
        let gamma_spec = self
            .gamma
            .as_ref()
            .ok_or_else(|| Failure::Invalid("missing gamma (preset name or values)".into()))?;
        let theta_spec = self
            .theta
            .as_ref()
            .ok_or_else(|| Failure::Invalid("missing theta (preset name or values)".into()))?;
        Ok(ResolvedSweep {
            gamma: gamma_spec.gamma(k_bar)?,
            theta: theta_spec.theta(k_bar)?,
            gamma_preset: gamma_spec.preset_name(),
            theta_preset: theta_spec.preset_name(),
            xi_grid: match &self.xi_grid {
                Some(g) => g.resolve()?,
                None => default_xi_grid(),
            },
            delta_grid: match &self.delta_grid {
                Some(g) => g.resolve()?,
                None => default_delta_grid(),
            },
            strategy: self.strategy.unwrap_or_default(),
            emit_per_k: self.emit_per_k,
        })
    }
}

/// A configuration with presets expanded against a measured `k̄`.
#[derive(Debug, Clone)]
pub struct ResolvedSweep {
    pub gamma: PcVector,
    pub theta: ThetaVector,
    pub gamma_preset: Option<String>,
    pub theta_preset: Option<String>,
    pub xi_grid: Vec<f64>,
    pub delta_grid: Vec<f64>,
    pub strategy: PcStrategy,
    pub emit_per_k: bool,
}
