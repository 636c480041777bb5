//! The cone-indexed orbit diagram of a stacky fan.

use std::fmt::Write as _;

use serde::Serialize;

use super::worked::{bundle_label, cone_type};
use crate::chains::{stabilizer_order_of, StabilizerOrder};
use crate::fans::StackyFan;
use crate::rootdata::{LabelScheme, RootDatum};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitNode {
    pub id: String,
    pub cone: Vec<usize>,
    pub rays: Vec<Vec<i64>>,
    pub codim: usize,
    pub stabilizer_order: StabilizerOrder,
    pub label: Option<String>,
}

/// `from` is a facet of `to`; the orbit of `to` lies in the closure of the
/// orbit of `from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitEdge {
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPoset {
    pub nodes: Vec<OrbitNode>,
    pub edges: Vec<OrbitEdge>,
}

pub fn node_id(cone: &[usize]) -> String {
    let mut s = String::from("c");
    for k in cone {
        let _ = write!(s, "_{k}");
    }
    s
}

/// One node per cone (zero cone first), edges for covering relations.
pub fn orbit_poset(rd: &RootDatum, fan: &StackyFan) -> Result<OrbitPoset, Error> {
    let mut nodes = Vec::with_capacity(fan.cones.len());
    for c in &fan.cones {
        let beta = cone_type(fan, c);
        let label = match rd.label_scheme {
            LabelScheme::None => None,
            _ if fan.rank != rd.rank => None,
            _ => Some(bundle_label(rd, &beta)?.to_string()),
        };
        nodes.push(OrbitNode {
            id: node_id(c),
            cone: c.clone(),
            rays: beta.entries.clone(),
            codim: c.len(),
            stabilizer_order: stabilizer_order_of(&beta.entries)?,
            label,
        });
    }
    let mut edges = Vec::new();
    for big in &fan.cones {
        for drop in 0..big.len() {
            let mut small = big.clone();
            small.remove(drop);
            edges.push(OrbitEdge { from: node_id(&small), to: node_id(big) });
        }
    }
    edges.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
    Ok(OrbitPoset { nodes, edges })
}

impl OrbitPoset {
    /// Number of nodes of each codimension, indexed by codimension.
    pub fn codim_histogram(&self) -> Vec<usize> {
        let top = self.nodes.iter().map(|n| n.codim).max().unwrap_or(0);
        let mut h = vec![0; top + 1];
        for n in &self.nodes {
            h[n.codim] += 1;
        }
        h
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph orbits {\n  rankdir=TB;\n");
        for n in &self.nodes {
            let label = format!("{}:{}:{}", n.codim, n.label.as_deref().unwrap_or(""), n.stabilizer_order);
            let _ = writeln!(s, "  \"{}\" [label=\"{}\"];", n.id, label.replace('"', "\\\""));
        }
        for e in &self.edges {
            let _ = writeln!(s, "  \"{}\" -> \"{}\";", e.from, e.to);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("orbit poset serializes")
    }
}
