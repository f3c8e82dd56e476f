//! Graph arguments: a shorthand, a file in the edge-list format, or `-` for stdin.

use std::io::Read;

use anyhow::{bail, Context, Result};
use rdx_core::atlas;
use rdx_core::graph::{parse_graph, Graph, Tree};

/// Expand `p:n`, `c:n`, `star:k`, `k:n` or `corona:u-v,...`; `None` when
/// `arg` is not a shorthand.
pub fn shorthand(arg: &str) -> Option<Result<Graph>> {
    let (kind, rest) = arg.split_once(':')?;
    let count = || rest.trim().parse::<usize>().with_context(|| format!("bad count in {arg:?}"));
    let g = match kind {
        "p" => count().and_then(|n| {
            if n == 0 {
                bail!("p:n needs n >= 1");
            }
            Ok(Graph::path(n))
        }),
        "c" => count().and_then(|n| Ok(Graph::cycle(n)?)),
        "star" => count().map(Graph::star),
        "k" => count().map(Graph::complete),
        "corona" => dash_edges(rest).and_then(|h| Ok(atlas::build_corona(&h)?)),
        _ => return None,
    };
    Some(g)
}

/// Comma-separated `u-v` pairs; the order is one more than the largest index.
fn dash_edges(spec: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = part.split_once('-').with_context(|| format!("bad edge {part:?}"))?;
        let u: usize = a.trim().parse().with_context(|| format!("bad vertex {a:?}"))?;
        let v: usize = b.trim().parse().with_context(|| format!("bad vertex {b:?}"))?;
        edges.push((u, v));
    }
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn read_graph(arg: &str) -> Result<Graph> {
    if let Some(g) = shorthand(arg) {
        return g;
    }
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    parse_graph(&text).with_context(|| format!("parsing {arg}"))
}

pub fn read_tree(arg: &str) -> Result<Tree> {
    Ok(Tree::new(read_graph(arg)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthands_expand() {
        let edges = |arg: &str| shorthand(arg).unwrap().unwrap().edges().collect::<Vec<_>>();
        assert_eq!(edges("p:3"), [(0, 1), (1, 2)]);
        assert_eq!(edges("c:3"), [(0, 1), (0, 2), (1, 2)]);
        assert_eq!(edges("star:2"), [(0, 1), (0, 2)]);
        assert_eq!(edges("k:3").len(), 3);
        let corona = shorthand("corona:0-1").unwrap().unwrap();
        assert_eq!((corona.order(), corona.edge_count()), (6, 5));
        assert!(shorthand("edges.txt").is_none());
        assert!(shorthand("p:x").unwrap().is_err());
        assert!(shorthand("p:0").unwrap().is_err());
    }
}
