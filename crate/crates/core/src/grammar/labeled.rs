use serde_json::{json, Value};

use crate::canon::{self, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{parse_graph, Tree};
use crate::partition::Status;

/// A tree with an A/B/C/D status per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    tree: Tree,
    statuses: Vec<Status>,
}

impl LabeledTree {
    pub fn new(tree: Tree, statuses: Vec<Status>) -> Result<Self> {
        if statuses.len() != tree.order() {
            return Err(Error::SizeMismatch { expected: tree.order(), got: statuses.len() });
        }
        Ok(LabeledTree { tree, statuses })
    }

    /// Statuses given as a string such as `"ABBA"`.
    pub fn with_status_string(tree: Tree, statuses: &str) -> Result<Self> {
        let statuses = statuses.chars().map(Status::from_char).collect::<Result<Vec<_>>>()?;
        LabeledTree::new(tree, statuses)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn statuses(&self) -> &[Status] {
        &self.statuses
    }

    pub fn status(&self, v: usize) -> Status {
        self.statuses[v]
    }

    pub fn order(&self) -> usize {
        self.tree.order()
    }

    pub fn status_string(&self) -> String {
        self.statuses.iter().map(|s| s.as_byte() as char).collect()
    }

    pub fn labels(&self) -> Vec<u8> {
        self.statuses.iter().map(|s| s.as_byte()).collect()
    }

    pub fn vertices_with(&self, s: Status) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.statuses[v] == s).collect()
    }

    pub fn count(&self, s: Status) -> usize {
        self.statuses.iter().filter(|&&x| x == s).count()
    }

    /// Number of B and C vertices.
    pub fn k(&self) -> usize {
        self.count(Status::B) + self.count(Status::C)
    }

    /// Canonical code of the labeled tree.
    pub fn code(&self) -> CanonicalCode {
        canon::labeled_code(&self.tree, &self.labels()).expect("status bytes are valid labels")
    }

    /// Label-preserving isomorphism onto `other`, if any.
    pub fn isomorphism_to(&self, other: &LabeledTree) -> Option<Vec<usize>> {
        canon::isomorphism(&self.tree, Some(&self.labels()), &other.tree, Some(&other.labels()))
    }

    /// Violations of the structural conditions on a labeling:
    /// A is independent; B and D each induce a perfect matching; every B
    /// vertex has degree 2 and one A neighbor; every C vertex has exactly two
    /// neighbors in A or D, both D when its degree is 2.
    pub fn structural_violations(&self) -> Vec<String> {
        let t = &self.tree;
        let st = &self.statuses;
        let mut out = Vec::new();
        for v in 0..t.order() {
            let count = |s: Status| t.neighbors(v).iter().filter(|&&w| st[w] == s).count();
            match st[v] {
                Status::A => {
                    if count(Status::A) > 0 {
                        out.push(format!("A vertex {v} has an A neighbor"));
                    }
                }
                Status::B => {
                    if count(Status::B) != 1 {
                        out.push(format!("B vertex {v} has {} B neighbors", count(Status::B)));
                    }
                    if t.degree(v) != 2 || count(Status::A) != 1 {
                        out.push(format!("B vertex {v} needs degree 2 with one A neighbor"));
                    }
                }
                Status::C => {
                    let ad = count(Status::A) + count(Status::D);
                    if ad != 2 {
                        out.push(format!("C vertex {v} has {ad} neighbors in A or D"));
                    } else if t.degree(v) == 2 && count(Status::D) != 2 {
                        out.push(format!("C vertex {v} of degree 2 needs two D neighbors"));
                    }
                }
                Status::D => {
                    if count(Status::D) != 1 {
                        out.push(format!("D vertex {v} has {} D neighbors", count(Status::D)));
                    }
                }
            }
        }
        out
    }

    pub fn check_structure(&self) -> Result<()> {
        match self.structural_violations().into_iter().next() {
            None => Ok(()),
            Some(msg) => Err(Error::StatusPrecondition(msg)),
        }
    }

    /// Edge list with a trailing `# statuses ...` line.
    pub fn to_edge_list(&self) -> String {
        format!("{}# statuses {}\n", self.tree.to_edge_list(), self.status_string())
    }

    /// Inverse of [`LabeledTree::to_edge_list`].
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let statuses = text
            .lines()
            .filter_map(|l| l.trim().strip_prefix("# statuses"))
            .map(str::trim)
            .last()
            .ok_or_else(|| Error::Input("missing '# statuses' line".into()))?
            .to_string();
        let tree = Tree::new(parse_graph(text)?)?;
        LabeledTree::with_status_string(tree, &statuses)
    }

    /// Graphviz source with status-shaped nodes.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in 0..self.order() {
            let shape = match self.statuses[v] {
                Status::A => "circle",
                Status::B => "triangle",
                Status::C => "diamond",
                Status::D => "doublecircle",
            };
            out.push_str(&format!("  {v} [shape={shape}, label=\"{v}:{}\"];\n", self.statuses[v]));
        }
        for (u, v) in self.tree.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.order(),
            "edges": self.tree.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
            "statuses": self.status_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lt(n: usize, edges: &[(usize, usize)], s: &str) -> LabeledTree {
        LabeledTree::with_status_string(Tree::from_edges(n, edges).unwrap(), s).unwrap()
    }

    #[test]
    fn structure_of_small_pieces() {
        let p4 = Tree::path(4).unwrap();
        assert!(LabeledTree::with_status_string(p4.clone(), "ABBA").unwrap().check_structure().is_ok());
        assert!(LabeledTree::with_status_string(p4, "ABAB").unwrap().check_structure().is_err());
        let p5 = Tree::path(5).unwrap();
        assert!(LabeledTree::with_status_string(p5, "DDCDD").unwrap().check_structure().is_ok());
        // C of degree 2 next to an A
        assert!(lt(4, &[(0, 1), (1, 2), (2, 3)], "DDCA").check_structure().is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let t = lt(4, &[(0, 1), (1, 2), (2, 3)], "ABBA");
        let text = t.to_edge_list();
        assert!(text.ends_with("# statuses ABBA\n"));
        assert_eq!(LabeledTree::parse_edge_list(&text).unwrap(), t);
        assert!(t.to_dot("t").contains("shape=triangle"));
    }

    #[test]
    fn codes_respect_statuses() {
        let a = lt(4, &[(0, 1), (1, 2), (2, 3)], "ABBA");
        let b = lt(4, &[(3, 1), (1, 0), (0, 2)], "BBAA");
        assert_eq!(a.code(), b.code());
        let m = a.isomorphism_to(&b).unwrap();
        for v in 0..4 {
            assert_eq!(a.status(v), b.status(m[v]));
        }
    }
}
