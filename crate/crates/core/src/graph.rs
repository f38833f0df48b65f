//! Weighted directed networks and edge-list ingestion.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single weighted arc, stored by node index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// An immutable weighted directed graph with labelled nodes.
///
/// Weights are strictly positive and finite, there is at most one arc per
/// ordered pair and no self-loops. Out-neighbours are kept in a compressed
/// row layout in arc insertion order, so traversal order is stable.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    labels: Vec<String>,
    arcs: Vec<Arc>,
    offsets: Vec<usize>,
    out: Vec<(usize, f64)>,
}

impl Network {
    /// Builds a network from labels and arcs, checking every invariant.
    pub fn new(labels: Vec<String>, arcs: Vec<Arc>) -> Result<Self> {
        let n = labels.len();
        let mut seen_labels = HashSet::with_capacity(n);
        for label in &labels {
            if !seen_labels.insert(label.as_str()) {
                return Err(Error::invalid(format!("duplicate node label `{label}`")));
            }
        }
        let mut pairs = HashSet::with_capacity(arcs.len());
        for arc in &arcs {
            if arc.source >= n || arc.target >= n {
                return Err(Error::invalid(format!(
                    "arc {} -> {} references a missing node",
                    arc.source, arc.target
                )));
            }
            if arc.source == arc.target {
                return Err(Error::invalid(format!(
                    "self-loop on `{}`",
                    labels[arc.source]
                )));
            }
            if !(arc.weight.is_finite() && arc.weight > 0.0) {
                return Err(Error::invalid(format!(
                    "non-positive weight {} on {} -> {}",
                    arc.weight, labels[arc.source], labels[arc.target]
                )));
            }
            if !pairs.insert((arc.source, arc.target)) {
                return Err(Error::invalid(format!(
                    "duplicate arc {} -> {}",
                    labels[arc.source], labels[arc.target]
                )));
            }
        }
        Ok(Self::build(labels, arcs))
    }

    fn build(labels: Vec<String>, arcs: Vec<Arc>) -> Self {
        let n = labels.len();
        let mut offsets = vec![0usize; n + 1];
        for arc in &arcs {
            offsets[arc.source + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut out = vec![(0usize, 0.0f64); arcs.len()];
        for arc in &arcs {
            out[cursor[arc.source]] = (arc.target, arc.weight);
            cursor[arc.source] += 1;
        }
        Network {
            labels,
            arcs,
            offsets,
            out,
        }
    }

    /// Convenience constructor from `(source, target, weight)` label triples.
    /// Nodes are numbered in first-appearance order.
    pub fn from_labeled_arcs<S: AsRef<str>>(arcs: &[(S, S, f64)]) -> Result<Self> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut intern = |label: &str| -> usize {
            if let Some(&i) = index.get(label) {
                return i;
            }
            labels.push(label.to_string());
            index.insert(label.to_string(), labels.len() - 1);
            labels.len() - 1
        };
        let arcs: Vec<Arc> = arcs
            .iter()
            .map(|(s, t, w)| Arc {
                source: intern(s.as_ref()),
                target: intern(t.as_ref()),
                weight: *w,
            })
            .collect();
        Network::new(labels, arcs)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Arcs in insertion order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Out-neighbours of `node` as `(target, weight)` pairs.
    #[inline]
    pub fn out_arcs(&self, node: usize) -> &[(usize, f64)] {
        &self.out[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn weight(&self, source: usize, target: usize) -> Option<f64> {
        self.out_arcs(source)
            .iter()
            .find(|&&(t, _)| t == target)
            .map(|&(_, w)| w)
    }

    /// Serializes to comma-separated edge-list text, one arc per line in
    /// arc order. Parsing the output of a parsed network reproduces it.
    pub fn to_edge_list(&self) -> String {
        let mut text = String::new();
        for arc in &self.arcs {
            let _ = writeln!(
                text,
                "{},{},{}",
                self.labels[arc.source], self.labels[arc.target], arc.weight
            );
        }
        text
    }

    /// Node-induced subnetwork on the labels in `keep`.
    ///
    /// Node order and arc order are inherited from `self`. Labels in `keep`
    /// that are not present are returned alongside the result.
    pub fn subnetwork<S: AsRef<str>>(&self, keep: &[S]) -> Result<(Network, Vec<String>)> {
        if keep.is_empty() {
            return Err(Error::invalid("node set is empty"));
        }
        let wanted: HashSet<&str> = keep.iter().map(|s| s.as_ref()).collect();
        let present: HashSet<&str> = self.labels.iter().map(String::as_str).collect();
        let mut unknown: Vec<String> = Vec::new();
        for s in keep {
            let s = s.as_ref();
            if !present.contains(s) && !unknown.iter().any(|u| u == s) {
                unknown.push(s.to_string());
            }
        }

        let mut remap = vec![usize::MAX; self.node_count()];
        let mut labels = Vec::new();
        for (i, label) in self.labels.iter().enumerate() {
            if wanted.contains(label.as_str()) {
                remap[i] = labels.len();
                labels.push(label.clone());
            }
        }
        let arcs: Vec<Arc> = self
            .arcs
            .iter()
            .filter(|a| remap[a.source] != usize::MAX && remap[a.target] != usize::MAX)
            .map(|a| Arc {
                source: remap[a.source],
                target: remap[a.target],
                weight: a.weight,
            })
            .collect();
        if arcs.is_empty() {
            return Err(Error::invalid("empty subnetwork"));
        }
        Ok((Network::build(labels, arcs), unknown))
    }
}

/// A diagnostic attached to an input line (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineMessage {
    pub line: usize,
    pub message: String,
}

/// Outcome of parsing an edge list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<LineMessage>,
    pub warnings: Vec<LineMessage>,
    pub node_count: usize,
    pub arc_count: usize,
}

fn split_fields(line: &str) -> Vec<&str> {
    if line.contains(',') {
        line.split(',').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    }
}

fn parse_number(field: &str) -> Option<f64> {
    field.parse::<f64>().ok()
}

/// Parses a `source<sep>target<sep>weight` edge list.
///
/// The separator is a comma or a run of whitespace. Blank lines and lines
/// starting with `#` are skipped, as is a first data line whose third field
/// is not numeric (a header). Self-loops are dropped with a warning; every
/// other defect is a hard error carrying the offending line number.
pub fn parse_edge_list(text: &str) -> Result<(Network, ValidationReport)> {
    let mut report = ValidationReport::default();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut arcs: Vec<Arc> = Vec::new();
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut first_data_line = true;
    let mut data_lines = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields = split_fields(line);
        let is_first = std::mem::replace(&mut first_data_line, false);
        if fields.len() < 3 {
            report.errors.push(LineMessage {
                line: line_no,
                message: format!("expected 3 fields, found {}", fields.len()),
            });
            continue;
        }
        if is_first && parse_number(fields[2]).is_none() {
            continue;
        }
        data_lines += 1;
        if fields.len() > 3 {
            report.warnings.push(LineMessage {
                line: line_no,
                message: format!("ignoring {} extra field(s)", fields.len() - 3),
            });
        }
        let (src, dst) = (fields[0], fields[1]);
        if src.is_empty() || dst.is_empty() {
            report.errors.push(LineMessage {
                line: line_no,
                message: "empty node label".into(),
            });
            continue;
        }
        let weight = match parse_number(fields[2]) {
            None => {
                report.errors.push(LineMessage {
                    line: line_no,
                    message: format!("non-numeric weight `{}`", fields[2]),
                });
                continue;
            }
            Some(w) if !w.is_finite() => {
                report.errors.push(LineMessage {
                    line: line_no,
                    message: format!("non-numeric weight `{}`", fields[2]),
                });
                continue;
            }
            Some(w) if w <= 0.0 => {
                report.errors.push(LineMessage {
                    line: line_no,
                    message: format!("non-positive weight {w}"),
                });
                continue;
            }
            Some(w) => w,
        };

        let mut intern = |label: &str| -> usize {
            if let Some(&i) = index.get(label) {
                return i;
            }
            labels.push(label.to_string());
            index.insert(label.to_string(), labels.len() - 1);
            labels.len() - 1
        };
        let s = intern(src);
        let t = intern(dst);
        if s == t {
            report.warnings.push(LineMessage {
                line: line_no,
                message: format!("self-loop on `{src}` dropped"),
            });
            continue;
        }
        if !pairs.insert((s, t)) {
            report.errors.push(LineMessage {
                line: line_no,
                message: format!("duplicate arc {src} -> {dst}"),
            });
            continue;
        }
        arcs.push(Arc {
            source: s,
            target: t,
            weight,
        });
    }

    if data_lines == 0 && report.errors.is_empty() {
        return Err(Error::NoArcs);
    }
    report.node_count = labels.len();
    report.arc_count = arcs.len();
    if !report.errors.is_empty() {
        return Err(Error::Validation(report));
    }
    Ok((Network::build(labels, arcs), report))
}

/// Parses a node-set file: one label per line, `#` comments and blank lines
/// ignored. Duplicates are collapsed, keeping first occurrence.
pub fn parse_node_set(text: &str) -> Vec<String> {
    let mut seen = HashSet::new();
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter(|l| seen.insert(l.to_string()))
        .map(str::to_string)
        .collect()
}
