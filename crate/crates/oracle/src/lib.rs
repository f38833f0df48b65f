//! Deliberately naive reference implementation for cross-checking
//! `shockpath` in tests.
//!
//! Paths are found by plain recursion over a dense weight matrix with a
//! linear membership scan and returned fully materialized. The measure is
//! computed term by term with exact fractions. Only the shock recursion and
//! the threshold semantics are borrowed from the library under test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use shockpath::{
    is_pc, Network, PathRecord, PcStrategy, PcVector, Shock, ThetaVector,
};
use thiserror::Error;

pub const MAX_NODES: usize = 10;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle is limited to {MAX_NODES} nodes, got {0}")]
    TooLarge(usize),
    #[error("network has no arcs")]
    NoPaths,
    #[error("expected vectors of length {expected}, got gamma {gamma} and theta {theta}")]
    Length {
        expected: usize,
        gamma: usize,
        theta: usize,
    },
}

fn dense_weights(net: &Network) -> Vec<Vec<Option<f64>>> {
    let n = net.node_count();
    let mut w = vec![vec![None; n]; n];
    for arc in net.arcs() {
        w[arc.source][arc.target] = Some(arc.weight);
    }
    w
}

fn extend(
    w: &[Vec<Option<f64>>],
    nodes: &mut Vec<usize>,
    weights: &mut Vec<f64>,
    out: &mut Vec<PathRecord>,
) {
    let tip = *nodes.last().unwrap();
    for next in 0..w.len() {
        let Some(weight) = w[tip][next] else { continue };
        if nodes.contains(&next) {
            continue;
        }
        nodes.push(next);
        weights.push(weight);
        out.push(PathRecord {
            nodes: nodes.clone(),
            weights: weights.clone(),
        });
        extend(w, nodes, weights, out);
        nodes.pop();
        weights.pop();
    }
}

/// Every simple path with at least one arc.
pub fn naive_all_paths(net: &Network) -> Result<Vec<PathRecord>, OracleError> {
    let n = net.node_count();
    if n > MAX_NODES {
        return Err(OracleError::TooLarge(n));
    }
    let w = dense_weights(net);
    let mut out = Vec::new();
    for start in 0..n {
        extend(&w, &mut vec![start], &mut Vec::new(), &mut out);
    }
    Ok(out)
}

/// Number of paths of each length `1..=k̄`, from [`naive_all_paths`].
pub fn naive_counts(net: &Network) -> Result<Vec<u64>, OracleError> {
    let paths = naive_all_paths(net)?;
    let k_bar = paths.iter().map(PathRecord::len).max().unwrap_or(0);
    let mut counts = vec![0u64; k_bar];
    for p in &paths {
        counts[p.len() - 1] += 1;
    }
    Ok(counts)
}

/// The measure computed straight from its definition: for each length `k`,
/// the fraction of `k`-paths passing the threshold test, weighted by `θ_k`.
///
/// The weighted sum is divided by `Σ θ_k`, which is exactly one for preset
/// weights, and rounded once at the end.
pub fn naive_mu(
    net: &Network,
    gamma: &PcVector,
    theta: &ThetaVector,
    shock: Shock,
    strategy: PcStrategy,
) -> Result<f64, OracleError> {
    let paths = naive_all_paths(net)?;
    let k_bar = paths.iter().map(PathRecord::len).max().unwrap_or(0);
    if k_bar == 0 {
        return Err(OracleError::NoPaths);
    }
    if gamma.len() != k_bar || theta.len() != k_bar {
        return Err(OracleError::Length {
            expected: k_bar,
            gamma: gamma.len(),
            theta: theta.len(),
        });
    }

    let mut total = BigRational::zero();
    let mut theta_sum = BigRational::zero();
    for k in 1..=k_bar {
        let of_len: Vec<&PathRecord> = paths.iter().filter(|p| p.len() == k).collect();
        let passing = of_len
            .iter()
            .filter(|p| is_pc(p.as_ref(), shock, gamma, strategy).expect("k <= k_bar"))
            .count();
        let theta_k = BigRational::from_float(theta.as_slice()[k - 1]).unwrap();
        let fraction = BigRational::new(BigInt::from(passing), BigInt::from(of_len.len()));
        total += &theta_k * fraction;
        theta_sum += theta_k;
    }
    Ok((total / theta_sum).to_f64().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use shockpath::parse_edge_list;

    fn net(text: &str) -> Network {
        parse_edge_list(text).unwrap().0
    }

    #[test]
    fn hand_censuses() {
        assert_eq!(naive_all_paths(&net("a,b,2\nb,c,1\na,c,3")).unwrap().len(), 4);
        assert_eq!(naive_all_paths(&net("a,b,1\nb,c,1\nc,a,1")).unwrap().len(), 6);
        assert_eq!(naive_all_paths(&net("a,b,1")).unwrap().len(), 1);
        assert_eq!(naive_counts(&net("a,b,2\nb,c,1\na,c,3")).unwrap(), vec![3, 1]);
    }

    #[test]
    fn g3_measures() {
        let g3 = net("a,b,2\nb,c,1\na,c,3");
        let t = ThetaVector::new(vec![0.5, 0.5]).unwrap();
        let ones = PcVector::new(vec![1.0, 1.0]).unwrap();
        let steep = PcVector::new(vec![1.0, 2.0]).unwrap();
        let pre = PcStrategy::PreTraversal;
        let s = |x, d| Shock::new(x, d).unwrap();
        assert_eq!(naive_mu(&g3, &ones, &t, s(1.0, 1.0), pre).unwrap(), 1.0);
        assert_eq!(naive_mu(&g3, &ones, &t, s(0.0, 1.0), pre).unwrap(), 0.0);
        assert_eq!(naive_mu(&g3, &steep, &t, s(1.0, 0.5), pre).unwrap(), 0.5);
    }

    #[test]
    fn guards() {
        let arcless = net("a,a,1");
        let t = ThetaVector::new(vec![1.0]).unwrap();
        let g = PcVector::new(vec![1.0]).unwrap();
        let s = Shock::new(1.0, 1.0).unwrap();
        assert!(matches!(
            naive_mu(&arcless, &g, &t, s, PcStrategy::Literal),
            Err(OracleError::NoPaths)
        ));
        let text: String = (0..11).map(|i| format!("n{i},n{},1\n", i + 1)).collect();
        assert!(matches!(
            naive_all_paths(&net(&text)),
            Err(OracleError::TooLarge(12))
        ));
    }
}
