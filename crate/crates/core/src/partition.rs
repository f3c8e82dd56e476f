//! Per-vertex value sets over all minimum Roman dominating functions,
//! excellence, the A/B/C/D status labeling, and the deletion/addition
//! criticality classes.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::config::{check_cap, Caps};
use crate::error::{Error, Result};
use crate::grammar::LabeledTree;
use crate::graph::{delete_vertices, Graph, Tree};
use crate::solver::{self, tree_dp};

/// Non-empty subset of `{0, 1, 2}`, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueSet(u8);

impl ValueSet {
    pub const ALL: [ValueSet; 7] = [
        ValueSet(0b001),
        ValueSet(0b010),
        ValueSet(0b100),
        ValueSet(0b011),
        ValueSet(0b101),
        ValueSet(0b110),
        ValueSet(0b111),
    ];

    pub fn from_mask(mask: u8) -> Result<Self> {
        if mask == 0 || mask > 0b111 {
            return Err(Error::Input(format!("invalid value-set mask {mask}")));
        }
        Ok(ValueSet(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn contains(self, c: u8) -> bool {
        self.0 >> c & 1 == 1
    }

    /// Digits in increasing order, e.g. `"02"`.
    pub fn as_str(self) -> &'static str {
        match self.0 {
            0b001 => "0",
            0b010 => "1",
            0b100 => "2",
            0b011 => "01",
            0b101 => "02",
            0b110 => "12",
            _ => "012",
        }
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub const V0: ValueSet = ValueSet(0b001);
pub const V1: ValueSet = ValueSet(0b010);
pub const V2: ValueSet = ValueSet(0b100);
pub const V01: ValueSet = ValueSet(0b011);
pub const V02: ValueSet = ValueSet(0b101);
pub const V12: ValueSet = ValueSet(0b110);
pub const V012: ValueSet = ValueSet(0b111);

/// Vertex status of the constructive labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    A,
    B,
    C,
    D,
}

impl Status {
    pub fn as_byte(self) -> u8 {
        match self {
            Status::A => b'A',
            Status::B => b'B',
            Status::C => b'C',
            Status::D => b'D',
        }
    }

    pub fn from_char(c: char) -> Result<Status> {
        match c {
            'A' => Ok(Status::A),
            'B' => Ok(Status::B),
            'C' => Ok(Status::C),
            'D' => Ok(Status::D),
            other => Err(Error::Input(format!("unknown status {other:?}"))),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_byte() as char)
    }
}

/// The γ_R-partition of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub gamma_r: usize,
    pub value_sets: Vec<ValueSet>,
}

impl PartitionReport {
    pub fn from_masks(gamma_r: usize, masks: &[u8]) -> Result<Self> {
        let value_sets = masks.iter().map(|&m| ValueSet::from_mask(m)).collect::<Result<_>>()?;
        Ok(PartitionReport { gamma_r, value_sets })
    }

    pub fn order(&self) -> usize {
        self.value_sets.len()
    }

    pub fn class(&self, set: ValueSet) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.value_sets[v] == set).collect()
    }

    /// Vertices attaining label 1 in some γ_R-function.
    pub fn v_minus(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.value_sets[v].contains(1)).collect()
    }

    /// Vertices labeled 0 by every γ_R-function.
    pub fn bad_vertices(&self) -> Vec<usize> {
        self.class(V0)
    }

    pub fn is_excellent(&self) -> bool {
        self.value_sets.iter().all(|&s| s != V0)
    }

    /// Non-empty classes, in the fixed order 0, 1, 2, 01, 02, 12, 012.
    pub fn present_classes(&self) -> Vec<ValueSet> {
        ValueSet::ALL.into_iter().filter(|&s| self.value_sets.contains(&s)).collect()
    }

    pub fn to_json(&self, statuses: Option<&str>) -> Value {
        let mut classes = Map::new();
        for s in ValueSet::ALL {
            classes.insert(format!("V{}", s.as_str()), json!(self.class(s)));
        }
        let mut out = json!({
            "n": self.order(),
            "gamma_r": self.gamma_r,
            "value_sets": self.value_sets.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            "classes": classes,
            "v_minus": self.v_minus(),
            "excellent": self.is_excellent(),
        });
        if let Some(s) = statuses {
            out["statuses"] = json!(s);
        }
        out
    }
}

/// Partition of a forest by three pinned DP solves per vertex.
pub fn partition_report_forest(g: &Graph, caps: &Caps) -> Result<PartitionReport> {
    check_cap("partition", g.order(), caps.max_partition_order)?;
    let gamma_r = tree_dp::gamma_r_forest(g)?;
    let mut masks = vec![0u8; g.order()];
    let mut rules = vec![tree_dp::VertexRule::FREE; g.order()];
    for v in 0..g.order() {
        for c in 0..3u8 {
            rules[v] = tree_dp::VertexRule::pinned(c);
            if tree_dp::gamma_r_with_rules(g, &rules)? == Some(gamma_r) {
                masks[v] |= 1 << c;
            }
        }
        rules[v] = tree_dp::VertexRule::FREE;
    }
    PartitionReport::from_masks(gamma_r, &masks)
}

pub fn partition_report(t: &Tree) -> Result<PartitionReport> {
    partition_report_forest(t, &Caps::DEFAULT)
}

/// Partition of any graph: the forest DP when possible, exhaustive search
/// otherwise.
pub fn partition_report_graph(g: &Graph) -> Result<PartitionReport> {
    partition_report_graph_with(g, &Caps::DEFAULT)
}

pub fn partition_report_graph_with(g: &Graph, caps: &Caps) -> Result<PartitionReport> {
    if g.is_forest() {
        partition_report_forest(g, caps)
    } else {
        let (gamma_r, masks) = solver::brute::value_sets_bruteforce_with(g, caps)?;
        PartitionReport::from_masks(gamma_r, &masks)
    }
}

pub fn is_excellent(g: &Graph) -> Result<bool> {
    Ok(partition_report_graph(g)?.is_excellent())
}

/// Statuses from a partition: A = V01, D = V012, B = the V02 vertices of
/// degree 2 with exactly one V02 neighbor, C = the rest of V02.
pub fn statuses_from_report(t: &Graph, report: &PartitionReport) -> Result<Vec<Status>> {
    if t.order() < 2 {
        return Err(Error::OrderTooSmall { what: "status labeling", order: t.order(), min: 2 });
    }
    if !report.is_excellent() {
        return Err(Error::NotExcellent);
    }
    let sets = &report.value_sets;
    (0..t.order())
        .map(|v| match sets[v] {
            V01 => Ok(Status::A),
            V012 => Ok(Status::D),
            V02 => {
                let v02_nbrs = t.neighbors(v).iter().filter(|&&w| sets[w] == V02).count();
                Ok(if t.degree(v) == 2 && v02_nbrs == 1 { Status::B } else { Status::C })
            }
            other => Err(Error::StatusPrecondition(format!(
                "vertex {v} of an excellent tree has value set {other}"
            ))),
        })
        .collect()
}

/// The status labeling of an excellent tree of order at least 2.
pub fn derive_statuses(t: &Tree) -> Result<LabeledTree> {
    let report = partition_report(t)?;
    let statuses = statuses_from_report(t, &report)?;
    LabeledTree::new(t.clone(), statuses)
}

fn gamma_r_minus(g: &Graph, v: usize) -> Result<usize> {
    solver::gamma_r(&delete_vertices(g, &[v])?.graph)
}

/// Vertices whose deletion lowers γ_R by exactly one, computed by deletion.
pub fn v_minus(g: &Graph) -> Result<Vec<usize>> {
    let base = solver::gamma_r(g)?;
    let mut out = Vec::new();
    for v in 0..g.order() {
        if gamma_r_minus(g, v)? + 1 == base {
            out.push(v);
        }
    }
    Ok(out)
}

/// Every vertex deletion lowers γ_R.
pub fn is_cvr(g: &Graph) -> Result<bool> {
    let base = solver::gamma_r(g)?;
    for v in 0..g.order() {
        if gamma_r_minus(g, v)? >= base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every edge addition lowers γ_R; complete graphs qualify vacuously.
pub fn is_cea(g: &Graph) -> Result<bool> {
    let base = solver::gamma_r(g)?;
    for (x, y) in g.non_edges() {
        if solver::gamma_r_plus_edge(g, x, y)? >= base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every vertex deletion leaves the domination number unchanged.
pub fn is_uvr(g: &Graph) -> Result<bool> {
    let base = solver::gamma(g)?;
    for v in 0..g.order() {
        if solver::gamma(&delete_vertices(g, &[v])?.graph)? != base {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(t: &Tree) -> Vec<&'static str> {
        partition_report(t).unwrap().value_sets.iter().map(|s| s.as_str()).collect()
    }

    #[test]
    fn partition_examples() {
        assert_eq!(sets(&Tree::path(2).unwrap()), vec!["012", "012"]);
        assert_eq!(sets(&Tree::path(3).unwrap()), vec!["0", "2", "0"]);
        assert_eq!(sets(&Tree::path(4).unwrap()), vec!["01", "02", "02", "01"]);
        assert!(!partition_report(&Tree::path(3).unwrap()).unwrap().is_excellent());
    }

    #[test]
    fn excellence_examples() {
        assert!(is_excellent(&Graph::path(4)).unwrap());
        assert!(!is_excellent(&Graph::star(3)).unwrap());
        for n in 3..=12 {
            assert!(is_excellent(&Graph::cycle(n).unwrap()).unwrap(), "C_{n}");
        }
    }

    #[test]
    fn status_examples() {
        let s = |n| derive_statuses(&Tree::path(n).unwrap()).unwrap().status_string();
        assert_eq!(s(4), "ABBA");
        assert_eq!(s(5), "DDCDD");
        assert_eq!(s(2), "DD");
        assert!(matches!(derive_statuses(&Tree::single()), Err(Error::OrderTooSmall { .. })));
        assert!(matches!(derive_statuses(&Tree::star(3)), Err(Error::NotExcellent)));
    }

    #[test]
    fn v_minus_examples() {
        // deleting a middle vertex of P4 leaves K1 + K2, still of weight 3
        assert_eq!(v_minus(&Graph::path(4)).unwrap(), vec![0, 3]);
        assert_eq!(v_minus(&Graph::path(3)).unwrap(), Vec::<usize>::new());
        assert_eq!(v_minus(&Graph::path(5)).unwrap(), vec![0, 1, 3, 4]);
    }

    #[test]
    fn criticality_examples() {
        assert!(is_cea(&Graph::path(2)).unwrap());
        assert!(!is_cvr(&Graph::path(4)).unwrap());
        assert!(is_cvr(&Graph::path(2)).unwrap());
        assert!(!is_cea(&Graph::path(4)).unwrap());
        for n in 2..=6 {
            assert!(is_cea(&Graph::complete(n)).unwrap());
        }
        // C4 minus a vertex is P3, dominated by one vertex
        assert!(!is_uvr(&Graph::cycle(4).unwrap()).unwrap());
        let p5 = Tree::path(5).unwrap();
        assert!(is_uvr(&crate::graph::attach_edge(&p5, 2, &p5, 2).unwrap()).unwrap());
        assert!(is_uvr(&Graph::path(5)).unwrap());
        assert!(!is_uvr(&Graph::path(4)).unwrap());
    }
}
