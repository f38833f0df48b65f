//! Shock propagation along a path and the threshold test deciding whether
//! the shock reaches the end of it.
//!
//! A shock of size `ξ` hitting the first node of a path evolves as
//! `ξ_0 = ξ`, `ξ_h = (ξ_{h-1} + w_h) · δ`, where `w_h` is the weight of the
//! h-th arc and `δ` the discount factor. Thresholds `γ_1..γ_k̄` are compared
//! against this trace with `>=` and no tolerance.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shock size and discount factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shock {
    pub size: f64,
    pub delta: f64,
}

impl Shock {
    pub fn new(size: f64, delta: f64) -> Result<Self> {
        if !(size.is_finite() && size >= 0.0) {
            return Err(Error::invalid(format!("shock size {size} must be finite and >= 0")));
        }
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(Error::invalid(format!("discount {delta} must be finite and >= 0")));
        }
        Ok(Shock { size, delta })
    }
}

/// Thresholds `γ_1..γ_k̄`, one per path position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PcVector(Vec<f64>);

impl PcVector {
    pub fn new(gammas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::invalid("threshold vector is empty"));
        }
        if let Some(g) = gammas.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
            return Err(Error::invalid(format!(
                "threshold {g} must be finite and strictly positive"
            )));
        }
        Ok(PcVector(gammas))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `γ_h` for 1-based `h`.
    #[inline]
    pub fn gamma(&self, h: usize) -> f64 {
        self.0[h - 1]
    }

    /// Checks the vector is sized for a network whose longest path has
    /// `k_bar` arcs.
    pub fn check_len(&self, k_bar: usize) -> Result<()> {
        if self.len() != k_bar {
            return Err(Error::LengthMismatch {
                what: "threshold vector",
                expected: k_bar,
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for PcVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        PcVector::new(v)
    }
}

impl From<PcVector> for Vec<f64> {
    fn from(v: PcVector) -> Self {
        v.0
    }
}

/// Shock sizes `ξ_0..ξ_k` along a path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShockTrace {
    pub sizes: Vec<f64>,
}

/// How thresholds are indexed against the shock trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PcStrategy {
    /// `ξ_{h-1} >= γ_h` for every arc `h`: the size carried into an arc must
    /// clear that arc's threshold.
    #[default]
    PreTraversal,
    /// `ξ_h >= γ_h` for every arc `h`: the size on arrival at each node must
    /// clear its threshold.
    PostArrival,
    /// `ξ_s >= γ_s` for `s = 1..k-1`; every 1-path passes.
    Literal,
}

impl PcStrategy {
    pub const ALL: [PcStrategy; 3] = [
        PcStrategy::PreTraversal,
        PcStrategy::PostArrival,
        PcStrategy::Literal,
    ];

    pub fn token(self) -> &'static str {
        match self {
            PcStrategy::PreTraversal => "pre-traversal",
            PcStrategy::PostArrival => "post-arrival",
            PcStrategy::Literal => "literal",
        }
    }
}

impl fmt::Display for PcStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for PcStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PcStrategy::ALL
            .into_iter()
            .find(|p| p.token() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown strategy `{s}` (expected one of: pre-traversal, post-arrival, literal)"
                ))
            })
    }
}

/// One step of the recursion.
#[inline(always)]
pub fn step(size: f64, weight: f64, delta: f64) -> f64 {
    (size + weight) * delta
}

/// Evaluates the recursion over `weights`, returning `k + 1` sizes.
pub fn shock_trace(weights: &[f64], shock: Shock) -> ShockTrace {
    let mut sizes = Vec::with_capacity(weights.len() + 1);
    let mut size = shock.size;
    sizes.push(size);
    for &w in weights {
        size = step(size, w, shock.delta);
        sizes.push(size);
    }
    ShockTrace { sizes }
}

/// Whether a shock starting on the first node of a path with arc weights
/// `weights` reaches its last node. Streams the recursion without
/// allocating.
pub fn passes(weights: &[f64], shock: Shock, gamma: &PcVector, strategy: PcStrategy) -> Result<bool> {
    let k = weights.len();
    if k > gamma.len() {
        return Err(Error::LengthMismatch {
            what: "threshold vector",
            expected: k,
            found: gamma.len(),
        });
    }
    Ok(passes_unchecked(weights, shock, gamma.as_slice(), strategy))
}

/// As [`passes`], with `gammas.len() >= weights.len()` assumed.
#[inline]
pub(crate) fn passes_unchecked(
    weights: &[f64],
    shock: Shock,
    gammas: &[f64],
    strategy: PcStrategy,
) -> bool {
    let mut size = shock.size;
    match strategy {
        PcStrategy::PreTraversal => {
            for (w, g) in weights.iter().zip(gammas) {
                if size < *g {
                    return false;
                }
                size = step(size, *w, shock.delta);
            }
            true
        }
        PcStrategy::PostArrival => {
            for (w, g) in weights.iter().zip(gammas) {
                size = step(size, *w, shock.delta);
                if size < *g {
                    return false;
                }
            }
            true
        }
        PcStrategy::Literal => {
            let k = weights.len();
            for (w, g) in weights[..k.saturating_sub(1)].iter().zip(gammas) {
                size = step(size, *w, shock.delta);
                if size < *g {
                    return false;
                }
            }
            true
        }
    }
}

/// Threshold test for a path record.
pub fn is_pc(
    path: crate::paths::PathRef<'_>,
    shock: Shock,
    gamma: &PcVector,
    strategy: PcStrategy,
) -> Result<bool> {
    passes(path.weights, shock, gamma, strategy)
}

/// Named threshold families, parameterized by the longest path length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaPreset {
    /// All ones.
    Gamma1,
    /// Ones up to `⌈k̄/2⌉`, then `2^(i - ⌈k̄/2⌉ + 1)`: long paths are
    /// penalized.
    Gamma2,
    /// `2^(⌊k̄/2⌋ - i + 1)` up to `⌊k̄/2⌋`, then ones: short paths are
    /// penalized.
    Gamma3,
}

impl FromStr for GammaPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma1" => Ok(GammaPreset::Gamma1),
            "gamma2" => Ok(GammaPreset::Gamma2),
            "gamma3" => Ok(GammaPreset::Gamma3),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

impl GammaPreset {
    pub fn name(self) -> &'static str {
        match self {
            GammaPreset::Gamma1 => "gamma1",
            GammaPreset::Gamma2 => "gamma2",
            GammaPreset::Gamma3 => "gamma3",
        }
    }

    pub fn expand(self, k_bar: usize) -> Result<PcVector> {
        if k_bar == 0 {
            return Err(Error::invalid("threshold presets need k_bar >= 1"));
        }
        let pow2 = |e: i64| 2f64.powi(e as i32);
        let half_up = k_bar.div_ceil(2) as i64;
        let half_down = (k_bar / 2) as i64;
        let gammas = (1..=k_bar as i64)
            .map(|i| match self {
                GammaPreset::Gamma1 => 1.0,
                GammaPreset::Gamma2 if i <= half_up => 1.0,
                GammaPreset::Gamma2 => pow2(i - half_up + 1),
                GammaPreset::Gamma3 if i <= half_down => pow2(half_down - i + 1),
                GammaPreset::Gamma3 => 1.0,
            })
            .collect();
        PcVector::new(gammas)
    }
}

/// Expands the preset named `id` for a network with longest path `k_bar`.
pub fn gamma_preset(id: &str, k_bar: usize) -> Result<PcVector> {
    id.parse::<GammaPreset>()?.expand(k_bar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shock(size: f64, delta: f64) -> Shock {
        Shock::new(size, delta).unwrap()
    }

    fn gamma(v: &[f64]) -> PcVector {
        PcVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trace_examples() {
        assert_eq!(shock_trace(&[2.0, 1.0], shock(1.0, 0.5)).sizes, vec![1.0, 1.5, 1.25]);
        assert_eq!(shock_trace(&[2.0, 1.0], shock(1.0, 0.0)).sizes, vec![1.0, 0.0, 0.0]);
        assert_eq!(shock_trace(&[2.0, 1.0], shock(1.0, 1.0)).sizes, vec![1.0, 3.0, 4.0]);
    }

    #[test]
    fn g3_two_path() {
        let w = [2.0, 1.0];
        let g = gamma(&[1.0, 2.0]);
        let pre = PcStrategy::PreTraversal;
        assert!(!passes(&w, shock(1.0, 0.5), &g, pre).unwrap());
        assert!(passes(&w, shock(1.0, 1.0), &g, pre).unwrap());
    }

    #[test]
    fn literal_one_paths_always_pass() {
        let g = gamma(&[100.0]);
        assert!(passes(&[0.1], shock(0.0, 0.0), &g, PcStrategy::Literal).unwrap());
        assert!(!passes(&[0.1], shock(0.0, 0.0), &g, PcStrategy::PreTraversal).unwrap());
    }

    #[test]
    fn zero_shock_never_arrives() {
        let g = gamma(&[1.0, 1.0, 1.0]);
        for w in [&[5.0][..], &[5.0, 7.0], &[1.0, 2.0, 3.0]] {
            assert!(!passes(w, shock(0.0, 0.0), &g, PcStrategy::PostArrival).unwrap());
        }
    }

    #[test]
    fn strategies_differ_on_terminal_threshold() {
        // Trace (4, 2.5, 1.75) against (1, 2): clears each threshold before
        // the arc, misses the last one on arrival.
        let w = [1.0, 1.0];
        let g = gamma(&[1.0, 2.0]);
        let s = shock(4.0, 0.5);
        assert!(passes(&w, s, &g, PcStrategy::PreTraversal).unwrap());
        assert!(!passes(&w, s, &g, PcStrategy::PostArrival).unwrap());
        assert!(passes(&w, s, &g, PcStrategy::Literal).unwrap());
    }

    #[test]
    fn exact_equality_passes() {
        let g = gamma(&[1.0, 3.0]);
        assert!(passes(&[2.0, 1.0], shock(1.0, 1.0), &g, PcStrategy::PreTraversal).unwrap());
        assert!(passes(&[2.0, 1.0], shock(1.0, 1.0), &g, PcStrategy::PostArrival).unwrap());
    }

    #[test]
    fn path_longer_than_gamma_is_an_error() {
        let g = gamma(&[1.0]);
        let err = passes(&[1.0, 1.0], shock(1.0, 1.0), &g, PcStrategy::PreTraversal);
        assert!(matches!(err, Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn presets() {
        assert_eq!(gamma_preset("gamma1", 4).unwrap().as_slice(), [1.0; 4]);
        assert_eq!(gamma_preset("gamma2", 4).unwrap().as_slice(), [1.0, 1.0, 4.0, 8.0]);
        assert_eq!(
            gamma_preset("gamma3", 8).unwrap().as_slice(),
            [16.0, 8.0, 4.0, 2.0, 1.0, 1.0, 1.0, 1.0]
        );
        assert_eq!(gamma_preset("gamma2", 5).unwrap().as_slice(), [1.0, 1.0, 1.0, 4.0, 8.0]);
        assert_eq!(gamma_preset("gamma3", 5).unwrap().as_slice(), [4.0, 2.0, 1.0, 1.0, 1.0]);
        assert_eq!(gamma_preset("gamma3", 1).unwrap().as_slice(), [1.0]);
        assert!(matches!(gamma_preset("gamma4", 3), Err(Error::UnknownPreset(_))));
        assert!(gamma_preset("gamma1", 0).is_err());
    }

    #[test]
    fn strategy_tokens() {
        for s in PcStrategy::ALL {
            assert_eq!(s.token().parse::<PcStrategy>().unwrap(), s);
        }
        assert_eq!(PcStrategy::default(), PcStrategy::PreTraversal);
        assert!("bogus".parse::<PcStrategy>().is_err());
    }

    #[test]
    fn shock_validation() {
        assert!(Shock::new(-1.0, 0.5).is_err());
        assert!(Shock::new(1.0, f64::NAN).is_err());
        assert!(Shock::new(0.0, 0.0).is_ok());
        assert!(PcVector::new(vec![1.0, 0.0]).is_err());
        assert!(PcVector::new(vec![]).is_err());
    }
}
