//! Canonical labelling by partition refinement and backtracking.
//!
//! The search individualises vertices of the first smallest non-singleton
//! cell, refines to an equitable partition after each step, and keeps the
//! leaf whose relabelled upper-triangle adjacency bits are lexicographically
//! least. Automorphisms discovered at leaves prune sibling branches that lie
//! in a common orbit, and a leaf equivalent to the first leaf jumps back to
//! the node where the two paths diverged.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{encode_graph6, SimpleGraph};
use crate::error::{Error, Result};

pub const CANON_MAX_VERTICES: usize = 64;

/// Stored automorphisms are capped; pruning stays sound with any subset.
const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// Serialized (graph6) form of a labelled graph. Canonical codes are equal
/// exactly for isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GraphCode(pub String);

impl GraphCode {
    pub fn of(g: &SimpleGraph) -> Self {
        GraphCode(encode_graph6(g))
    }

    pub fn decode(&self) -> Result<SimpleGraph> {
        super::decode_graph6(&self.0)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical code of `g`: the graph6 encoding of `g` relabelled by
/// [`canonical_labeling`].
pub fn canonical_form(g: &SimpleGraph) -> Result<GraphCode> {
    let perm = canonical_labeling(g)?;
    Ok(GraphCode::of(&g.relabel(&perm)))
}

/// A permutation `perm` (old label -> new label) such that
/// `g.relabel(&perm)` is the same graph for every graph isomorphic to `g`.
pub fn canonical_labeling(g: &SimpleGraph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > CANON_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: CANON_MAX_VERTICES,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let rows: Vec<u64> = (0..n).map(|v| g.neighbors(v).low_word()).collect();
    let mut search = Search::new(rows);
    let mut cells = vec![(0..n as u8).collect::<Vec<u8>>()];
    search.refine(&mut cells);
    let mut path = Vec::new();
    search.descend(cells, &mut path);
    let order = search.best.expect("search reaches at least one leaf").1;
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old as usize] = new;
    }
    Ok(perm)
}

type Cells = Vec<Vec<u8>>;

struct Search {
    rows: Vec<u64>,
    first: Option<(Vec<u64>, Vec<u8>, Vec<u8>)>,
    best: Option<(Vec<u64>, Vec<u8>)>,
    automorphisms: Vec<Vec<u8>>,
}

impl Search {
    fn new(rows: Vec<u64>) -> Self {
        Search {
            rows,
            first: None,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn n(&self) -> usize {
        self.rows.len()
    }

    fn mask(cell: &[u8]) -> u64 {
        cell.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    /// Refines `cells` to the coarsest equitable partition finer than it.
    /// Split cells are ordered by neighbour count into the splitter, which
    /// depends only on the partition, never on vertex labels.
    fn refine(&self, cells: &mut Cells) {
        let mut s = 0;
        while s < cells.len() {
            let splitter = Self::mask(&cells[s]);
            let mut changed = false;
            let mut next: Cells = Vec::with_capacity(cells.len() + 2);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, u8)> = cell
                    .iter()
                    .map(|&v| ((self.rows[v as usize] & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                if keyed[0].0 == keyed[keyed.len() - 1].0 {
                    next.push(cell.clone());
                    continue;
                }
                changed = true;
                let mut group = vec![keyed[0].1];
                for w in keyed.windows(2) {
                    if w[1].0 != w[0].0 {
                        next.push(std::mem::take(&mut group));
                    }
                    group.push(w[1].1);
                }
                next.push(group);
            }
            *cells = next;
            s = if changed { 0 } else { s + 1 };
        }
    }

    fn leaf_code(&self, order: &[u8]) -> Vec<u64> {
        let n = self.n();
        let mut bits = vec![0u64; (n * (n - 1) / 2).div_ceil(64).max(1)];
        let mut k = 0usize;
        for j in 1..n {
            let row = self.rows[order[j] as usize];
            for &vi in order.iter().take(j) {
                if row & (1u64 << vi) != 0 {
                    bits[k / 64] |= 1u64 << (63 - k % 64);
                }
                k += 1;
            }
        }
        bits
    }

    fn record_automorphism(automorphisms: &mut Vec<Vec<u8>>, from: &[u8], to: &[u8]) {
        if automorphisms.len() >= MAX_STORED_AUTOMORPHISMS {
            return;
        }
        let mut gamma = vec![0u8; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            gamma[a as usize] = b;
        }
        if gamma.iter().enumerate().all(|(i, &g)| i == g as usize) {
            return;
        }
        automorphisms.push(gamma);
    }

    /// Orbit representatives (union-find roots) under the stored
    /// automorphisms that fix every vertex of `prefix`.
    fn orbits_fixing(&self, prefix: &[u8]) -> Vec<u8> {
        let n = self.n();
        let mut parent: Vec<u8> = (0..n as u8).collect();
        fn find(parent: &mut [u8], x: u8) -> u8 {
            let mut r = x;
            while parent[r as usize] != r {
                r = parent[r as usize];
            }
            let mut c = x;
            while parent[c as usize] != r {
                let next = parent[c as usize];
                parent[c as usize] = r;
                c = next;
            }
            r
        }
        for gamma in &self.automorphisms {
            if prefix.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            for v in 0..n {
                let a = find(&mut parent, v as u8);
                let b = find(&mut parent, gamma[v]);
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        (0..n as u8).map(|v| find(&mut parent, v)).collect()
    }

    /// Explores the subtree below `cells`. Returns `Some(depth)` when the
    /// search should unwind to the node at that depth.
    fn descend(&mut self, cells: Cells, path: &mut Vec<u8>) -> Option<usize> {
        if cells.len() == self.n() {
            return self.visit_leaf(&cells, path);
        }
        let (target, _) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .expect("partition is not discrete");
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let depth = path.len();
        let mut explored: Vec<u8> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() {
                let orbits = self.orbits_fixing(path);
                if explored.iter().any(|&e| orbits[e as usize] == orbits[v as usize]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&w| w != v).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            self.refine(&mut child);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(k) = jump {
                if k < depth {
                    return Some(k);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, cells: &Cells, path: &[u8]) -> Option<usize> {
        let order: Vec<u8> = cells.iter().map(|c| c[0]).collect();
        let code = self.leaf_code(&order);
        let Some((first_code, first_order, first_path)) = &self.first else {
            self.first = Some((code.clone(), order.clone(), path.to_vec()));
            self.best = Some((code, order));
            return None;
        };
        if code == *first_code {
            Self::record_automorphism(&mut self.automorphisms, first_order, &order);
            let common = path.iter().zip(first_path).take_while(|(a, b)| a == b).count();
            return Some(common);
        }
        let (best_code, best_order) = self.best.as_ref().expect("best set with first");
        match code.cmp(best_code) {
            std::cmp::Ordering::Less => self.best = Some((code, order)),
            std::cmp::Ordering::Equal => {
                Self::record_automorphism(&mut self.automorphisms, best_order, &order)
            }
            std::cmp::Ordering::Greater => {}
        }
        None
    }
}
