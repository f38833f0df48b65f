//! Path-based resilience of weighted directed networks.
//!
//! A shock hits one node and travels along every simple path leaving it,
//! growing or shrinking at each arc according to the arc weight and a
//! discount factor. A path counts as propagating when the shock clears a
//! threshold at every step. The resilience measure is a weighted mean, over
//! path lengths, of the fraction of propagating paths, and is evaluated over
//! grids of shock sizes and discount factors.
//!
//! ```
//! use shockpath::{parse_edge_list, path_stats, gamma_preset, theta_preset, sweep};
//! use shockpath::{default_delta_grid, default_xi_grid, PcStrategy};
//!
//! let (net, _) = parse_edge_list("a,b,2\nb,c,1\na,c,3").unwrap();
//! let k_bar = path_stats(&net).k_bar;
//! let surface = sweep(
//!     &net,
//!     &gamma_preset("gamma1", k_bar).unwrap(),
//!     &theta_preset("theta1", k_bar).unwrap(),
//!     &default_xi_grid(),
//!     &default_delta_grid(),
//!     PcStrategy::PreTraversal,
//! )
//! .unwrap();
//! assert_eq!(surface.cell_count(), 121);
//! assert_eq!(surface.mu[10][1], 1.0);
//! ```

pub mod error;
pub mod graph;
pub mod grid;
pub mod paths;
pub mod propagation;
pub mod resilience;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, parse_node_set, Arc, LineMessage, Network, ValidationReport};
pub use grid::{decimal_range, parse_grid, parse_list};
pub use paths::{
    collect_paths, enumerate_paths, fold_paths_parallel, path_stats, PathRecord, PathRef,
    PathStats,
};
pub use propagation::{
    gamma_preset, is_pc, passes, shock_trace, GammaPreset, PcStrategy, PcVector, Shock, ShockTrace,
};
pub use resilience::{
    critical_xi, default_delta_grid, default_xi_grid, mu, pc_census, sweep, theta_preset,
    NetworkSummary, PcCensus, Surface, ThetaPreset, ThetaVector,
};
