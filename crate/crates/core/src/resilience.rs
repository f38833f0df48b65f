//! The resilience measure: the Θ-weighted mean, over path lengths, of the
//! fraction of paths that carry a shock to their last node.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::paths::{fold_paths_parallel, path_stats, PathStats};
use crate::propagation::{passes_unchecked, PcStrategy, PcVector, Shock};

const THETA_SUM_TOLERANCE: f64 = 1e-12;

/// Aggregation weights `θ_1..θ_k̄`: nonnegative, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ThetaVector(Vec<f64>);

impl ThetaVector {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::invalid("weight vector is empty"));
        }
        if let Some(t) = thetas.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return Err(Error::invalid(format!("weight {t} must be finite and >= 0")));
        }
        let sum: f64 = thetas.iter().sum();
        if (sum - 1.0).abs() > THETA_SUM_TOLERANCE {
            return Err(Error::invalid(format!("weights sum to {sum}, expected 1")));
        }
        Ok(ThetaVector(thetas))
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

    pub fn check_len(&self, k_bar: usize) -> Result<()> {
        if self.len() != k_bar {
            return Err(Error::LengthMismatch {
                what: "weight vector",
                expected: k_bar,
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for ThetaVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        ThetaVector::new(v)
    }
}

impl From<ThetaVector> for Vec<f64> {
    fn from(v: ThetaVector) -> Self {
        v.0
    }
}

/// Named weight families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaPreset {
    /// Uniform `1/k̄`.
    Theta1,
    /// `2^-i` for `i < k̄`, last weight repeated: favours short paths.
    Theta2,
    /// `2^-(k̄-i+1)` for `i >= 2`, first weight repeated: favours long paths.
    Theta3,
}

impl FromStr for ThetaPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta1" => Ok(ThetaPreset::Theta1),
            "theta2" => Ok(ThetaPreset::Theta2),
            "theta3" => Ok(ThetaPreset::Theta3),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

impl ThetaPreset {
    pub fn name(self) -> &'static str {
        match self {
            ThetaPreset::Theta1 => "theta1",
            ThetaPreset::Theta2 => "theta2",
            ThetaPreset::Theta3 => "theta3",
        }
    }

    pub fn expand(self, k_bar: usize) -> Result<ThetaVector> {
        let min = match self {
            ThetaPreset::Theta1 => 1,
            _ => 2,
        };
        if k_bar < min {
            return Err(Error::invalid(format!(
                "{} needs k_bar >= {min}, got {k_bar}",
                self.name()
            )));
        }
        let pow2 = |e: usize| 2f64.powi(-(e as i32));
        let thetas = match self {
            ThetaPreset::Theta1 => vec![1.0 / k_bar as f64; k_bar],
            ThetaPreset::Theta2 => {
                let mut v: Vec<f64> = (1..k_bar).map(pow2).collect();
                v.push(v[k_bar - 2]);
                v
            }
            ThetaPreset::Theta3 => {
                let mut v: Vec<f64> = (1..=k_bar).map(|i| pow2(k_bar - i + 1)).collect();
                v[0] = v[1];
                v
            }
        };
        ThetaVector::new(thetas)
    }
}

/// Expands the preset named `id` for a network with longest path `k_bar`.
pub fn theta_preset(id: &str, k_bar: usize) -> Result<ThetaVector> {
    id.parse::<ThetaPreset>()?.expand(k_bar)
}

/// Per-length counts of paths passing the threshold test.
///
/// `pc_counts[k - 1] <= totals[k - 1]` for every `k` in `1..=k̄`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcCensus {
    pub pc_counts: Vec<u64>,
    pub totals: Vec<u64>,
    pub gamma: PcVector,
    pub shock: Shock,
    pub strategy: PcStrategy,
}

impl PcCensus {
    pub fn k_bar(&self) -> usize {
        self.totals.len()
    }
}

/// Enumerates the network once up to `gamma.len()` arcs and checks that the
/// longest simple path has exactly that length.
fn check_k_bar(net: &Network, stats: &PathStats, len: usize, what: &'static str) -> Result<()> {
    if stats.truncated || stats.k_bar != len {
        let k_bar = if stats.truncated {
            path_stats(net).k_bar
        } else {
            stats.k_bar
        };
        return Err(Error::LengthMismatch {
            what,
            expected: k_bar,
            found: len,
        });
    }
    Ok(())
}

/// Counts, per length, the paths of `net` that pass the threshold test for
/// `shock`, in one enumeration pass.
pub fn pc_census(
    net: &Network,
    gamma: &PcVector,
    shock: Shock,
    strategy: PcStrategy,
) -> Result<PcCensus> {
    let k_max = gamma.len();
    let gammas = gamma.as_slice();
    let (pc_counts, stats) = fold_paths_parallel(
        net,
        Some(k_max),
        || vec![0u64; k_max],
        |acc, path| {
            if passes_unchecked(path.weights, shock, gammas, strategy) {
                acc[path.len() - 1] += 1;
            }
        },
        |acc: &mut Vec<u64>, part| merge_counts(acc, part),
    )?;
    check_k_bar(net, &stats, k_max, "threshold vector")?;
    Ok(PcCensus {
        pc_counts,
        totals: stats.counts_by_length,
        gamma: gamma.clone(),
        shock,
        strategy,
    })
}

fn merge_counts(acc: &mut [u64], part: Vec<u64>) {
    for (a, p) in acc.iter_mut().zip(part) {
        *a += p;
    }
}

/// `Σ θ_k · pc_k / total_k`, normalized by `Σ θ_k`, evaluated exactly and
/// rounded once to the nearest double.
///
/// The normalization is the identity for weights that sum to exactly one
/// (all presets) and keeps explicit weights that sum to one only within
/// tolerance inside `[0, 1]`.
fn weighted_fraction(pc_counts: &[u64], totals: &[u64], thetas: &[f64]) -> f64 {
    if pc_counts.iter().all(|&c| c == 0) {
        return 0.0;
    }
    let mut numerator = BigRational::zero();
    let mut theta_sum = BigRational::zero();
    for ((&pc, &total), &theta) in pc_counts.iter().zip(totals).zip(thetas) {
        let theta = BigRational::from_float(theta).expect("finite weight");
        theta_sum += &theta;
        if pc > 0 {
            numerator += theta * BigRational::new(BigInt::from(pc), BigInt::from(total));
        }
    }
    if theta_sum.is_zero() {
        return 0.0;
    }
    (numerator / theta_sum)
        .to_f64()
        .expect("ratio in [0, 1] is representable")
}

/// The resilience measure of a census under weights `theta`.
pub fn mu(census: &PcCensus, theta: &ThetaVector) -> Result<f64> {
    theta.check_len(census.k_bar())?;
    if census.pc_counts.len() != census.totals.len() {
        return Err(Error::invalid("census count vectors differ in length"));
    }
    if let Some(k) = (0..census.k_bar())
        .find(|&k| census.totals[k] == 0 || census.pc_counts[k] > census.totals[k])
    {
        return Err(Error::invalid(format!(
            "census is inconsistent at length {}",
            k + 1
        )));
    }
    Ok(weighted_fraction(
        &census.pc_counts,
        &census.totals,
        theta.as_slice(),
    ))
}

/// A strictly increasing grid of nonnegative parameter values.
fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid(format!("{name} grid is empty")));
    }
    if let Some(v) = grid.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::invalid(format!(
            "{name} grid value {v} must be finite and >= 0"
        )));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!("{name} grid must be strictly increasing")));
    }
    Ok(())
}

/// `0, 1, ..., 10`.
pub fn default_xi_grid() -> Vec<f64> {
    (0..=10).map(f64::from).collect()
}

/// `0, 0.1, ..., 1`, each value the double nearest its decimal.
pub fn default_delta_grid() -> Vec<f64> {
    (0..=10).map(|i| f64::from(i) / 10.0).collect()
}

/// Identity and shape of the network a surface was computed on.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NetworkSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub nodes: usize,
    pub arcs: usize,
    pub k_bar: usize,
    /// `|P^(k)|` for `k = 1..k̄`.
    pub path_counts: Vec<u64>,
}

/// Resilience values over a `(δ, ξ)` grid.
///
/// `mu[d][x]` is the measure at `delta_grid[d]`, `xi_grid[x]`. When present,
/// `pc_counts[d][x][k - 1]` holds the number of passing `k`-paths for that
/// cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Surface {
    pub network: NetworkSummary,
    pub gamma: PcVector,
    pub theta: ThetaVector,
    pub strategy: PcStrategy,
    pub delta_grid: Vec<f64>,
    pub xi_grid: Vec<f64>,
    pub mu: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pc_counts: Option<Vec<Vec<Vec<u64>>>>,
}

impl Surface {
    pub fn cell_count(&self) -> usize {
        self.delta_grid.len() * self.xi_grid.len()
    }

    /// Cells in δ-major order as `(δ, ξ, μ)`.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.delta_grid.iter().zip(&self.mu).flat_map(move |(&d, row)| {
            self.xi_grid.iter().zip(row).map(move |(&x, &m)| (d, x, m))
        })
    }

    /// Reconstructs the census of one cell, if per-cell counts were kept.
    pub fn census(&self, d: usize, x: usize) -> Option<PcCensus> {
        let counts = self.pc_counts.as_ref()?.get(d)?.get(x)?;
        Some(PcCensus {
            pc_counts: counts.clone(),
            totals: self.network.path_counts.clone(),
            gamma: self.gamma.clone(),
            shock: Shock {
                size: self.xi_grid[x],
                delta: self.delta_grid[d],
            },
            strategy: self.strategy,
        })
    }
}

/// Evaluates the measure at every `(δ, ξ)` grid cell in a single pass over
/// the simple paths of `net`.
///
/// For each path and each δ, the smallest passing grid ξ is found by
/// scanning upward; the threshold test is monotone in ξ (both the exact
/// recursion and its rounded evaluation are), so every larger ξ passes too.
/// Counts are kept as first-pass histograms and prefix-summed at the end.
pub fn sweep(
    net: &Network,
    gamma: &PcVector,
    theta: &ThetaVector,
    xi_grid: &[f64],
    delta_grid: &[f64],
    strategy: PcStrategy,
) -> Result<Surface> {
    check_grid("xi", xi_grid)?;
    check_grid("delta", delta_grid)?;
    theta.check_len(gamma.len())?;
    let k_max = gamma.len();
    let nx = xi_grid.len();
    let nd = delta_grid.len();
    let gammas = gamma.as_slice();
    // first_pass[(d * k_max + k - 1) * (nx + 1) + x]; x == nx means never.
    let stride = nx + 1;
    let (first_pass, stats) = fold_paths_parallel(
        net,
        Some(k_max),
        || vec![0u64; nd * k_max * stride],
        |acc, path| {
            let k = path.len();
            for (d, &delta) in delta_grid.iter().enumerate() {
                let x = xi_grid
                    .iter()
                    .position(|&size| {
                        passes_unchecked(path.weights, Shock { size, delta }, gammas, strategy)
                    })
                    .unwrap_or(nx);
                acc[(d * k_max + k - 1) * stride + x] += 1;
            }
        },
        |acc: &mut Vec<u64>, part| merge_counts(acc, part),
    )?;
    check_k_bar(net, &stats, k_max, "threshold vector")?;
    let totals = stats.counts_by_length;

    let mut pc_counts = vec![vec![vec![0u64; k_max]; nx]; nd];
    for (d, per_delta) in pc_counts.iter_mut().enumerate() {
        for k in 0..k_max {
            let hist = &first_pass[(d * k_max + k) * stride..][..stride];
            let mut running = 0u64;
            for (x, cell) in per_delta.iter_mut().enumerate() {
                running += hist[x];
                cell[k] = running;
            }
        }
    }
    let mu = pc_counts
        .iter()
        .map(|row| {
            row.iter()
                .map(|counts| weighted_fraction(counts, &totals, theta.as_slice()))
                .collect()
        })
        .collect();

    Ok(Surface {
        network: NetworkSummary {
            name: None,
            nodes: net.node_count(),
            arcs: net.arc_count(),
            k_bar: stats.k_bar,
            path_counts: totals,
        },
        gamma: gamma.clone(),
        theta: theta.clone(),
        strategy,
        delta_grid: delta_grid.to_vec(),
        xi_grid: xi_grid.to_vec(),
        mu,
        pc_counts: Some(pc_counts),
    })
}

/// For each δ row, the smallest grid ξ at which the measure is exactly one.
pub fn critical_xi(surface: &Surface) -> Vec<(f64, Option<f64>)> {
    surface
        .delta_grid
        .iter()
        .zip(&surface.mu)
        .map(|(&delta, row)| {
            let xi = row
                .iter()
                .position(|&m| m == 1.0)
                .map(|x| surface.xi_grid[x]);
            (delta, xi)
        })
        .collect()
}
