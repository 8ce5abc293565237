//! Isomorphism-class enumeration of small simple graphs.
//!
//! Classes on `k + 1` vertices are produced from the classes on `k` vertices
//! by adding one vertex with every possible neighbourhood and keeping one
//! canonical representative per class. Every graph on `k + 1` vertices
//! arises this way (delete any vertex), so each level is complete.

use super::{canonical_form, GraphCode, SimpleGraph};
use crate::error::{Error, Result};
use crate::par::{self, Jobs};

pub const ENUMERATION_MAX_VERTICES: usize = 9;

/// Largest order accepted by [`enumerate_by_brute_force`].
const BRUTE_FORCE_MAX_VERTICES: usize = 7;

/// One canonical representative per isomorphism class of graphs on `n`
/// vertices, sorted by canonical code.
pub fn enumerate_nonisomorphic(n: usize, jobs: Jobs) -> Result<Vec<SimpleGraph>> {
    Ok(enumerate_levels(n, jobs)?.pop().expect("levels include n"))
}

/// Class representatives for every order `0..=max_n`; entry `k` holds the
/// graphs on `k` vertices.
pub fn enumerate_levels(max_n: usize, jobs: Jobs) -> Result<Vec<Vec<SimpleGraph>>> {
    if max_n > ENUMERATION_MAX_VERTICES {
        return Err(Error::TooLarge {
            n: max_n,
            limit: ENUMERATION_MAX_VERTICES,
        });
    }
    let mut levels = vec![vec![SimpleGraph::empty(0)]];
    for k in 0..max_n {
        let parents = &levels[k];
        let children: Vec<Vec<GraphCode>> = par::map(parents, jobs, |parent| {
            let mut codes: Vec<GraphCode> = (0u64..1 << k)
                .map(|mask| {
                    let child = extend(parent, mask);
                    canonical_form(&child).expect("order within canonical limit")
                })
                .collect();
            codes.sort_unstable();
            codes.dedup();
            codes
        });
        let mut codes: Vec<GraphCode> = children.into_iter().flatten().collect();
        codes.sort_unstable();
        codes.dedup();
        let graphs = codes
            .iter()
            .map(|c| c.decode().expect("canonical codes decode"))
            .collect();
        levels.push(graphs);
    }
    Ok(levels)
}

pub fn count_nonisomorphic(n: usize, jobs: Jobs) -> Result<usize> {
    Ok(enumerate_nonisomorphic(n, jobs)?.len())
}

fn extend(parent: &SimpleGraph, mask: u64) -> SimpleGraph {
    let k = parent.n();
    let mut child = SimpleGraph::empty(k + 1);
    for (u, v) in parent.edges() {
        child.add_edge(u, v);
    }
    for u in 0..k {
        if mask & (1 << u) != 0 {
            child.add_edge(u, k);
        }
    }
    child
}

/// Independent witness: canonicalises all 2^(n(n-1)/2) labelled graphs and
/// deduplicates.
pub fn enumerate_by_brute_force(n: usize) -> Result<Vec<SimpleGraph>> {
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let mut codes: Vec<GraphCode> = (0u64..1 << pairs.len())
        .map(|mask| {
            let mut g = SimpleGraph::empty(n);
            for (bit, &(u, v)) in pairs.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    g.add_edge(u, v);
                }
            }
            canonical_form(&g).expect("order within canonical limit")
        })
        .collect();
    codes.sort_unstable();
    codes.dedup();
    codes.iter().map(GraphCode::decode).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let levels = enumerate_levels(7, Jobs::AUTO).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 0..=6 {
            let a = enumerate_nonisomorphic(n, Jobs::SEQUENTIAL).unwrap();
            let b = enumerate_by_brute_force(n).unwrap();
            assert_eq!(a, b, "n = {n}");
        }
        assert_eq!(enumerate_by_brute_force(4).unwrap().len(), 11);
    }

    #[test]
    fn bounds() {
        assert!(enumerate_nonisomorphic(10, Jobs::AUTO).is_err());
        assert!(enumerate_by_brute_force(8).is_err());
    }
}
