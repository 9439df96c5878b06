//! Hasse diagrams of a finite set of matrices under one of the orders.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::batch::{map_indexed, Execution};
use crate::error::{Error, Result};
use crate::json::AnyMatrix;
use crate::matrix::Matrix;
use crate::orders::{holds, OrderConfig, Relation};
use crate::scalar::Scalar;

/// Nodes sorted by label; edges are the covering pairs `(lower, upper)`
/// as indices into `nodes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetGraph {
    pub order: Relation,
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl PosetGraph {
    /// Compares all pairs, then keeps `A → B` when `A < B` strictly and no
    /// `C` lies strictly between. Mutually comparable pairs (equal matrices,
    /// or the space pre-order's ties) get no edge.
    pub fn build<S: Scalar>(
        items: &[(String, Matrix<S>)],
        order: Relation,
        cfg: &OrderConfig,
        exec: Execution,
    ) -> Result<Self> {
        let mut items: Vec<&(String, Matrix<S>)> = items.iter().collect();
        items.sort_by(|x, y| x.0.cmp(&y.0));
        if let Some(first) = items.first() {
            for other in &items[1..] {
                first.1.ensure_same_shape(&other.1)?;
            }
        }
        let n = items.len();
        let leq = map_indexed(n * n, exec, |k| {
            let (i, j) = (k / n, k % n);
            if i == j {
                Ok(true)
            } else {
                holds(order, &items[i].1, &items[j].1, cfg)
            }
        })
        .into_iter()
        .collect::<Result<Vec<bool>>>()?;
        let strict = |i: usize, j: usize| leq[i * n + j] && !leq[j * n + i];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if strict(i, j) && !(0..n).any(|k| strict(i, k) && strict(k, j)) {
                    edges.push((i, j));
                }
            }
        }
        Ok(PosetGraph {
            order,
            nodes: items.iter().map(|(l, _)| l.clone()).collect(),
            edges,
        })
    }

    pub fn edge_labels(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.nodes[i].as_str(), self.nodes[j].as_str()))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph \"{}\" {{\n", self.order);
        for node in &self.nodes {
            let _ = writeln!(out, "  {};", quote(node));
        }
        for (a, b) in self.edge_labels() {
            let _ = writeln!(out, "  {} -> {};", quote(a), quote(b));
        }
        out.push_str("}\n");
        out
    }
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Extracts `"A" -> "B";` edges from DOT text written by [`PosetGraph::to_dot`].
pub fn parse_dot_edges(dot: &str) -> Vec<(String, String)> {
    fn unquote(s: &str) -> Option<String> {
        let inner = s.trim().strip_prefix('"')?.strip_suffix('"')?;
        Some(inner.replace("\\\"", "\"").replace("\\\\", "\\"))
    }
    dot.lines()
        .filter_map(|line| {
            let line = line.trim().strip_suffix(';')?;
            let (a, b) = line.split_once(" -> ")?;
            Some((unquote(a)?, unquote(b)?))
        })
        .collect()
}

/// Every `*.json` file in `dir`, labelled by file stem, sorted by label.
pub fn load_dir(dir: impl AsRef<Path>) -> Result<Vec<(String, AnyMatrix)>> {
    let dir = dir.as_ref();
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            let label = path
                .file_stem()
                .and_then(|s| s.to_str())
                .ok_or_else(|| Error::Malformed(format!("bad file name {}", path.display())))?
                .to_string();
            out.push((label, AnyMatrix::load(&path)?));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}
