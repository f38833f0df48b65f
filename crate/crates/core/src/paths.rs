//! Streaming enumeration of simple directed paths.
//!
//! Every simple path of length `k >= 1` (k arcs through `k + 1` distinct
//! nodes) is visited exactly once by a depth-first search with backtracking
//! from each start node in index order. Runtime grows exponentially with the
//! size of the network; `max_len` bounds the depth when the full census is
//! out of reach.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Network;

/// Borrowed view of a path handed to visitors. Valid only for the duration
/// of the callback.
#[derive(Debug, Clone, Copy)]
pub struct PathRef<'a> {
    pub nodes: &'a [usize],
    pub weights: &'a [f64],
}

impl<'a> PathRef<'a> {
    /// Number of arcs.
    #[inline]
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    #[inline]
    pub fn start(&self) -> usize {
        self.nodes[0]
    }

    pub fn to_record(&self) -> PathRecord {
        PathRecord {
            nodes: self.nodes.to_vec(),
            weights: self.weights.to_vec(),
        }
    }
}

/// An owned simple path with its arc-weight vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub nodes: Vec<usize>,
    pub weights: Vec<f64>,
}

impl PathRecord {
    /// Builds a record by looking up each consecutive arc in `net`.
    pub fn from_nodes(net: &Network, nodes: Vec<usize>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::invalid("a path needs at least one arc"));
        }
        for (i, &a) in nodes.iter().enumerate() {
            if a >= net.node_count() {
                return Err(Error::invalid(format!("node index {a} out of range")));
            }
            if nodes[..i].contains(&a) {
                return Err(Error::invalid(format!(
                    "node `{}` repeats in path",
                    net.label(a)
                )));
            }
        }
        let weights = nodes
            .windows(2)
            .map(|pair| {
                net.weight(pair[0], pair[1]).ok_or_else(|| {
                    Error::invalid(format!(
                        "no arc {} -> {}",
                        net.label(pair[0]),
                        net.label(pair[1])
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PathRecord { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_ref(&self) -> PathRef<'_> {
        PathRef {
            nodes: &self.nodes,
            weights: &self.weights,
        }
    }
}

/// Path census of a network.
///
/// `counts_by_length[k - 1]` is the number of simple paths with `k` arcs and
/// `counts_by_start[i][k - 1]` the number of those starting at node `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PathStats {
    pub counts_by_length: Vec<u64>,
    pub counts_by_start: Vec<Vec<u64>>,
    pub k_bar: usize,
    /// Some path could have been extended past `max_len`.
    pub truncated: bool,
    /// The visitor stopped the enumeration early; counts are partial.
    pub stopped: bool,
}

impl PathStats {
    fn with_nodes(n: usize) -> Self {
        PathStats {
            counts_by_start: vec![Vec::new(); n],
            ..Default::default()
        }
    }

    #[inline]
    fn record(&mut self, start: usize, k: usize) {
        if self.counts_by_length.len() < k {
            self.counts_by_length.resize(k, 0);
        }
        self.counts_by_length[k - 1] += 1;
        let per_start = &mut self.counts_by_start[start];
        if per_start.len() < k {
            per_start.resize(k, 0);
        }
        per_start[k - 1] += 1;
        self.k_bar = self.k_bar.max(k);
    }

    /// Number of paths with exactly `k` arcs.
    pub fn count(&self, k: usize) -> u64 {
        if k == 0 {
            return 0;
        }
        self.counts_by_length.get(k - 1).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts_by_length.iter().sum()
    }

    /// Whether the census covers every simple path of the network.
    pub fn is_complete(&self) -> bool {
        !self.truncated && !self.stopped
    }

    /// Adds another census into this one. Associative and commutative.
    pub fn merge(&mut self, other: &PathStats) {
        add_into(&mut self.counts_by_length, &other.counts_by_length);
        if self.counts_by_start.len() < other.counts_by_start.len() {
            self.counts_by_start
                .resize(other.counts_by_start.len(), Vec::new());
        }
        for (mine, theirs) in self.counts_by_start.iter_mut().zip(&other.counts_by_start) {
            add_into(mine, theirs);
        }
        self.k_bar = self.k_bar.max(other.k_bar);
        self.truncated |= other.truncated;
        self.stopped |= other.stopped;
    }
}

fn add_into(dst: &mut Vec<u64>, src: &[u64]) {
    if dst.len() < src.len() {
        dst.resize(src.len(), 0);
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}

/// Membership of the path under construction.
trait Marks {
    fn set(&mut self, node: usize);
    fn clear(&mut self, node: usize);
    fn contains(&self, node: usize) -> bool;
}

struct WordMarks(u64);

impl Marks for WordMarks {
    #[inline(always)]
    fn set(&mut self, node: usize) {
        self.0 |= 1 << node;
    }
    #[inline(always)]
    fn clear(&mut self, node: usize) {
        self.0 &= !(1 << node);
    }
    #[inline(always)]
    fn contains(&self, node: usize) -> bool {
        self.0 & (1 << node) != 0
    }
}

struct BoolMarks(Vec<bool>);

impl Marks for BoolMarks {
    #[inline(always)]
    fn set(&mut self, node: usize) {
        self.0[node] = true;
    }
    #[inline(always)]
    fn clear(&mut self, node: usize) {
        self.0[node] = false;
    }
    #[inline(always)]
    fn contains(&self, node: usize) -> bool {
        self.0[node]
    }
}

/// Reusable buffers for one depth-first walk.
struct Walker {
    nodes: Vec<usize>,
    weights: Vec<f64>,
    cursors: Vec<usize>,
}

impl Walker {
    fn new(n: usize) -> Self {
        Walker {
            nodes: Vec::with_capacity(n),
            weights: Vec::with_capacity(n),
            cursors: Vec::with_capacity(n),
        }
    }

    fn walk<M, F>(
        &mut self,
        net: &Network,
        start: usize,
        max_len: usize,
        marks: &mut M,
        stats: &mut PathStats,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        M: Marks,
        F: FnMut(PathRef<'_>) -> ControlFlow<()>,
    {
        self.nodes.clear();
        self.weights.clear();
        self.cursors.clear();
        self.nodes.push(start);
        self.cursors.push(0);
        marks.set(start);

        let flow = loop {
            let Some(cursor) = self.cursors.last_mut() else {
                break ControlFlow::Continue(());
            };
            let tip = *self.nodes.last().expect("nonempty while cursors remain");
            let adjacent = net.out_arcs(tip);
            if *cursor == adjacent.len() {
                self.cursors.pop();
                self.nodes.pop();
                self.weights.pop();
                marks.clear(tip);
                continue;
            }
            let (next, weight) = adjacent[*cursor];
            *cursor += 1;
            if marks.contains(next) {
                continue;
            }
            self.nodes.push(next);
            self.weights.push(weight);
            let k = self.weights.len();
            stats.record(start, k);
            if visit(PathRef {
                nodes: &self.nodes,
                weights: &self.weights,
            })
            .is_break()
            {
                stats.stopped = true;
                break ControlFlow::Break(());
            }
            if k < max_len {
                marks.set(next);
                self.cursors.push(0);
            } else {
                if !stats.truncated
                    && net
                        .out_arcs(next)
                        .iter()
                        .any(|&(t, _)| !marks.contains(t))
                {
                    stats.truncated = true;
                }
                self.nodes.pop();
                self.weights.pop();
            }
        };
        for &node in &self.nodes {
            marks.clear(node);
        }
        flow
    }
}

fn resolve_max_len(net: &Network, max_len: Option<usize>) -> Result<usize> {
    match max_len {
        Some(0) => Err(Error::invalid("max path length must be at least 1")),
        Some(m) => Ok(m),
        None => Ok(net.node_count().saturating_sub(1).max(1)),
    }
}

fn walk_starts<F>(
    net: &Network,
    starts: impl IntoIterator<Item = usize>,
    max_len: usize,
    stats: &mut PathStats,
    visit: &mut F,
) where
    F: FnMut(PathRef<'_>) -> ControlFlow<()>,
{
    let n = net.node_count();
    let mut walker = Walker::new(n);
    if n <= 64 {
        let mut marks = WordMarks(0);
        for start in starts {
            if walker
                .walk(net, start, max_len, &mut marks, stats, visit)
                .is_break()
            {
                return;
            }
        }
    } else {
        let mut marks = BoolMarks(vec![false; n]);
        for start in starts {
            if walker
                .walk(net, start, max_len, &mut marks, stats, visit)
                .is_break()
            {
                return;
            }
        }
    }
}

/// Visits every simple path of length `1..=max_len` (all lengths when
/// `max_len` is `None`) exactly once, in a deterministic order: start nodes
/// by index, then depth-first along out-arcs in insertion order.
///
/// Returning `ControlFlow::Break` from `visit` aborts the walk; the returned
/// stats are then partial and flagged `stopped`.
pub fn enumerate_paths<F>(net: &Network, max_len: Option<usize>, mut visit: F) -> Result<PathStats>
where
    F: FnMut(PathRef<'_>) -> ControlFlow<()>,
{
    let max_len = resolve_max_len(net, max_len)?;
    let mut stats = PathStats::with_nodes(net.node_count());
    walk_starts(net, 0..net.node_count(), max_len, &mut stats, &mut visit);
    Ok(stats)
}

/// Runs one independent walk per start node in parallel, each feeding its
/// own accumulator from `init`. The per-start accumulators and censuses are
/// then folded in start-node order, so the result does not depend on the
/// number of worker threads.
pub fn fold_paths_parallel<A, I, V, M>(
    net: &Network,
    max_len: Option<usize>,
    init: I,
    visit: V,
    mut merge: M,
) -> Result<(A, PathStats)>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, PathRef<'_>) + Sync,
    M: FnMut(&mut A, A),
{
    let max_len = resolve_max_len(net, max_len)?;
    let n = net.node_count();
    let parts: Vec<(A, PathStats)> = (0..n)
        .into_par_iter()
        .map(|start| {
            let mut acc = init();
            let mut stats = PathStats::with_nodes(n);
            walk_starts(net, [start], max_len, &mut stats, &mut |path| {
                visit(&mut acc, path);
                ControlFlow::Continue(())
            });
            (acc, stats)
        })
        .collect();

    let mut acc = init();
    let mut stats = PathStats::with_nodes(n);
    for (part, part_stats) in parts {
        merge(&mut acc, part);
        stats.merge(&part_stats);
    }
    Ok((acc, stats))
}

/// Full path census, including per-start counts.
pub fn path_stats(net: &Network) -> PathStats {
    fold_paths_parallel(net, None, || (), |_, _| {}, |_, _| {})
        .expect("unbounded enumeration has a valid depth")
        .1
}

/// Materializes every path up to `max_len`. Only sensible for small
/// networks.
pub fn collect_paths(net: &Network, max_len: Option<usize>) -> Result<Vec<PathRecord>> {
    let mut out = Vec::new();
    enumerate_paths(net, max_len, |p| {
        out.push(p.to_record());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
