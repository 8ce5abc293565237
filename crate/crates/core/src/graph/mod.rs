//! Finite simple graphs and the operations used on defining graphs.
//!
//! Vertices are dense indices `0..n`. Every graph value is immutable once
//! built; all operations return fresh graphs.

mod canon;
mod enumerate;
mod graph6;
mod random;
mod vertex_set;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_labeling, GraphCode, CANON_MAX_VERTICES};
pub use enumerate::{
    enumerate_levels,
    count_nonisomorphic, enumerate_by_brute_force, enumerate_nonisomorphic, ENUMERATION_MAX_VERTICES,
};
pub use graph6::{decode_graph6, encode_graph6};
pub use random::{erdos_renyi, sample_seed, seeded_rng, SampleRng};
pub use vertex_set::VertexSet;

pub type VertexId = usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl SimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![VertexSet::with_capacity(n); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::EdgeList {
                    line: 0,
                    reason: format!("self-loop at vertex {u}"),
                });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        if n >= 3 {
            for u in 0..n {
                g.add_edge(u, (u + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub(crate) fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: u, n: self.n })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &VertexSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Parses the line-oriented edge-list format: optional `n=<count>`
    /// header, then one `u v` pair per line. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut seen_edge = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                if seen_edge || declared.is_some() {
                    return Err(Error::EdgeList {
                        line: line_no,
                        reason: "vertex-count header must precede all edges".into(),
                    });
                }
                let count = rest.trim().parse::<usize>().map_err(|_| Error::EdgeList {
                    line: line_no,
                    reason: format!("malformed header {line:?}"),
                })?;
                declared = Some(count);
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
            let (u, v) = match parsed.as_deref() {
                Some(&[u, v]) => (u, v),
                _ => {
                    return Err(Error::EdgeList {
                        line: line_no,
                        reason: format!("expected two vertex indices, got {line:?}"),
                    })
                }
            };
            if u == v {
                return Err(Error::EdgeList {
                    line: line_no,
                    reason: format!("self-loop at vertex {u}"),
                });
            }
            if let Some(n) = declared {
                if u.max(v) >= n {
                    return Err(Error::EdgeList {
                        line: line_no,
                        reason: format!("vertex {} not below declared n={n}", u.max(v)),
                    });
                }
            }
            seen_edge = true;
            edges.push((u, v));
        }
        let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Edge-list text with an explicit `n=` header, readable by
    /// [`SimpleGraph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// `u` together with its neighbours.
    pub fn star(&self, u: VertexId) -> Result<VertexSet> {
        self.check_vertex(u)?;
        let mut s = self.adj[u].clone();
        s.insert(u);
        Ok(s)
    }

    /// The neighbours of `u`.
    pub fn link(&self, u: VertexId) -> Result<VertexSet> {
        self.check_vertex(u)?;
        Ok(self.adj[u].clone())
    }

    /// Full subgraph on `subset`, relabelled densely in ascending order of
    /// the original labels. The returned map sends new labels to old ones.
    pub fn induced_subgraph(&self, subset: &VertexSet) -> Result<(SimpleGraph, Vec<VertexId>)> {
        let map: Vec<usize> = subset.to_vec();
        if let Some(&bad) = map.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            back[old] = new;
        }
        let mut g = SimpleGraph::empty(map.len());
        for (new, &old) in map.iter().enumerate() {
            for w in self.adj[old].iter() {
                let nw = back[w];
                if nw != usize::MAX && nw > new {
                    g.add_edge(new, nw);
                }
            }
        }
        Ok((g, map))
    }

    /// Connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// Connected components of the full subgraph on `subset`, in original
    /// labels, ordered by smallest member.
    pub fn components_within(&self, subset: &VertexSet) -> Vec<VertexSet> {
        let mut remaining = subset.clone();
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::with_capacity(self.n);
            let mut stack = vec![start];
            remaining.remove(start);
            comp.insert(start);
            while let Some(u) = stack.pop() {
                for w in self.adj[u].intersection(&remaining).iter() {
                    remaining.remove(w);
                    comp.insert(w);
                    stack.push(w);
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.n;
        let mut g = SimpleGraph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift);
        }
        g
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, self.n + v);
            }
        }
        g
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        assert_eq!(perm.len(), self.n, "permutation length must equal vertex count");
        let mut g = SimpleGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        SimpleGraph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn parse_path_and_header() {
        let g = SimpleGraph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g, SimpleGraph::path(3));

        let g = SimpleGraph::parse_edge_list("n=4\n0 1").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(3), 0);

        let g = SimpleGraph::parse_edge_list("# comment\n0 1\n1 0\n0 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            SimpleGraph::parse_edge_list("0 0"),
            Err(Error::EdgeList { line: 1, .. })
        ));
        assert!(SimpleGraph::parse_edge_list("0 1 2").is_err());
        assert!(SimpleGraph::parse_edge_list("0 x").is_err());
        assert!(SimpleGraph::parse_edge_list("n=3\n0 3").is_err());
        assert!(SimpleGraph::parse_edge_list("0 1\nn=3").is_err());
    }

    #[test]
    fn star_and_link() {
        let c5 = SimpleGraph::cycle(5);
        assert_eq!(c5.star(0).unwrap(), set(&[0, 1, 4]));
        assert_eq!(c5.link(0).unwrap(), set(&[1, 4]));
        let k4 = SimpleGraph::complete(4);
        assert_eq!(k4.star(2).unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(k4.link(0).unwrap(), set(&[1, 2, 3]));
        let e = SimpleGraph::empty(3);
        assert_eq!(e.star(1).unwrap(), set(&[1]));
        assert!(e.link(1).unwrap().is_empty());
        assert!(e.star(3).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let c5 = SimpleGraph::cycle(5);
        let rest = c5.vertices().difference(&c5.star(0).unwrap());
        let (h, map) = c5.induced_subgraph(&rest).unwrap();
        assert_eq!(map, vec![2, 3]);
        assert_eq!(h, SimpleGraph::complete(2));
        let (h, map) = c5.induced_subgraph(&VertexSet::new()).unwrap();
        assert_eq!(h.n(), 0);
        assert!(map.is_empty());
        let (h, _) = SimpleGraph::complete(4).induced_subgraph(&set(&[0, 1, 2])).unwrap();
        assert_eq!(h, SimpleGraph::complete(3));
        assert!(c5.induced_subgraph(&set(&[7])).is_err());
    }

    #[test]
    fn components_and_unions() {
        let g = SimpleGraph::complete(2)
            .disjoint_union(&SimpleGraph::complete(3))
            .disjoint_union(&SimpleGraph::complete(4));
        let sizes: Vec<usize> = g.connected_components().iter().map(VertexSet::len).collect();
        assert_eq!(sizes, vec![2, 3, 4]);
        assert!(SimpleGraph::empty(0).connected_components().is_empty());
        assert_eq!(SimpleGraph::cycle(5).connected_components().len(), 1);

        let u = SimpleGraph::complete(2).disjoint_union(&SimpleGraph::complete(3));
        assert_eq!((u.n(), u.edge_count(), u.connected_components().len()), (5, 4, 2));
        assert_eq!(SimpleGraph::cycle(5).disjoint_union(&SimpleGraph::empty(0)), SimpleGraph::cycle(5));
        assert_eq!(
            SimpleGraph::complete(2).join(&SimpleGraph::complete(3)),
            SimpleGraph::complete(5)
        );
    }

    #[test]
    fn cone_and_suspension() {
        let c5 = SimpleGraph::cycle(5);
        let cone = c5.join(&SimpleGraph::empty(1));
        assert_eq!(cone.degree(5), 5);
        assert_eq!(cone.edge_count(), 10);
        let susp = c5.join(&SimpleGraph::empty(2));
        assert_eq!(susp.edge_count(), 15);
        assert!(!susp.has_edge(5, 6));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = SimpleGraph::parse_edge_list("n=6\n0 1\n2 5\n1 4").unwrap();
        assert_eq!(SimpleGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }
}
