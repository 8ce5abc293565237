//! Partial conjugations, support graphs and the graph `Θ` with
//! `PSO(A_Γ) ≅ A_Θ`.
//!
//! For a vertex `a` the partial conjugation `π_S^a` conjugates every
//! generator in `S` by `a`, where `S` is a union of components of
//! `Γ - st(a)`. Conjugating all components is inner, so per vertex the
//! components span a free abelian group of rank `k - 1` in `Out`.
//!
//! # Commutation in `Out`
//!
//! Take `π_S^a` and `π_T^b` with `a ≠ b`.
//!
//! - If `a` and `b` are adjacent the two automorphisms commute in `Aut`.
//! - Otherwise `b` lies in some component of `Γ - st(a)`. If that component
//!   is in `S`, replace `S` by the other components of `Γ - st(a)`; this
//!   multiplies `π_S^a` by an inner automorphism (up to inverse). Do the
//!   same for `T` with respect to `a`. Now `b ∉ S` and `a ∉ T`. The
//!   commutator fixes every generator outside `S ∩ T` and conjugates those
//!   inside by `[a, b]`. It is inner iff `S ∩ T = ∅`: any conjugator must
//!   fix `a` and `b`, so it lies in `⟨lk a ∩ lk b⟩`, and cannot move a
//!   vertex of `S` (outside `st(a)`) by a word involving `a`.
//!
//! # Support graphs
//!
//! `Δ_a` has one vertex per component of `Γ - st(a)`, ordered by smallest
//! member. Components `C ≠ C'` are adjacent when some `b ∈ C` has a
//! component `D` of `Γ - st(b)` with `a ∉ D` and `D ⊆ C'`. Such a `D`
//! never meets `st(a)`, so it lies inside a single component. These are
//! precisely the pairs `(π_C^a, π_D^b)` that fail to commute in `Out`
//! although the supports look disjoint, and `PSO(A_Γ)` is a RAAG exactly
//! when every `Δ_a` is a forest.
//!
//! # The basis for `Θ`
//!
//! When `Δ_a` is a forest, root each tree at its component with the
//! smallest vertex. Each tree edge contributes the generator supported on
//! the union of the components below it, and every tree except the one
//! holding the globally smallest vertex contributes the generator supported
//! on all of its components. That is `k - 1` generators per vertex, and
//! `Θ` is their commutation graph in `Out`. Rooting at the largest vertex
//! instead (see [`RootRule`]) gives an isomorphic `Θ`.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexId, VertexSet};
use crate::raag::center_vertices;
use crate::words::commutation_graph;

/// `π_S^a`: conjugate the generators in `support` by `actor`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialConjugation {
    pub actor: VertexId,
    pub support: VertexSet,
}

impl Serialize for PartialConjugation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.actor)?;
        t.serialize_element(&self.support)?;
        t.end()
    }
}

/// One component-sized partial conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub conjugation: PartialConjugation,
    /// `Γ - st(actor)` is connected, so this is inner.
    pub redundant: bool,
    /// The component holding the smallest vertex, dependent on the others
    /// modulo inner automorphisms.
    pub droppable: bool,
}

fn outside_star(g: &SimpleGraph, a: VertexId) -> VertexSet {
    g.vertices().difference(&g.star(a).expect("vertex in range"))
}

fn components_outside_star(g: &SimpleGraph, a: VertexId) -> Vec<VertexSet> {
    g.components_within(&outside_star(g, a))
}

/// One entry per vertex and component of `Γ - st(vertex)`.
pub fn partial_conjugation_catalog(g: &SimpleGraph) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for x in 0..g.n() {
        let comps = components_outside_star(g, x);
        let k = comps.len();
        for (i, c) in comps.into_iter().enumerate() {
            out.push(CatalogEntry {
                conjugation: PartialConjugation { actor: x, support: c },
                redundant: k == 1,
                droppable: i == 0,
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportGraph {
    pub base_vertex: VertexId,
    /// Components of `Γ - st(base_vertex)` by smallest member; vertex `i`
    /// of `graph` is `components[i]`.
    pub components: Vec<VertexSet>,
    pub graph: SimpleGraph,
}

pub fn support_graph(g: &SimpleGraph, a: VertexId) -> Result<SupportGraph> {
    g.check_vertex(a)?;
    let components = components_outside_star(g, a);
    let mut owner = vec![usize::MAX; g.n()];
    for (i, c) in components.iter().enumerate() {
        for v in c.iter() {
            owner[v] = i;
        }
    }
    let mut sg = SimpleGraph::empty(components.len());
    for (i, c) in components.iter().enumerate() {
        for b in c.iter() {
            for d in components_outside_star(g, b) {
                if d.contains(a) {
                    continue;
                }
                for v in d.iter() {
                    let j = owner[v];
                    debug_assert!(j != usize::MAX, "D avoids st(a)");
                    if j != i {
                        sg.add_edge(i, j);
                    }
                }
            }
        }
    }
    Ok(SupportGraph {
        base_vertex: a,
        components,
        graph: sg,
    })
}

pub fn support_graphs(g: &SimpleGraph) -> Vec<SupportGraph> {
    (0..g.n()).map(|a| support_graph(g, a).expect("in range")).collect()
}

/// A cycle as a closed vertex sequence (first vertex not repeated).
pub fn find_cycle(g: &SimpleGraph) -> Option<Vec<VertexId>> {
    let mut parent = vec![usize::MAX; g.n()];
    let mut visited = vec![false; g.n()];
    for root in 0..g.n() {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u).iter() {
                if w == parent[u] {
                    continue;
                }
                if visited[w] {
                    // w is an ancestor-side vertex; join the two tree paths
                    let path_to_root = |mut x: usize| {
                        let mut p = vec![x];
                        while parent[x] != usize::MAX {
                            x = parent[x];
                            p.push(x);
                        }
                        p
                    };
                    let pu = path_to_root(u);
                    let pw = path_to_root(w);
                    let common = *pu.iter().find(|x| pw.contains(x)).expect("same tree");
                    let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != common).collect();
                    cycle.push(common);
                    let back: Vec<usize> = pw.iter().copied().take_while(|&x| x != common).collect();
                    cycle.extend(back.into_iter().rev());
                    return Some(cycle);
                }
                visited[w] = true;
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub vertex: VertexId,
    /// Indices into the support graph's components.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestReport {
    pub all_forests: bool,
    pub witness: Option<CycleWitness>,
    /// Largest edge count over all support graphs.
    pub max_support_edges: usize,
}

pub fn all_supports_forests(g: &SimpleGraph) -> ForestReport {
    let mut witness = None;
    let mut max_support_edges = 0;
    for sg in support_graphs(g) {
        max_support_edges = max_support_edges.max(sg.graph.edge_count());
        if witness.is_none() {
            if let Some(cycle) = find_cycle(&sg.graph) {
                witness = Some(CycleWitness {
                    vertex: sg.base_vertex,
                    cycle,
                });
            }
        }
    }
    ForestReport {
        all_forests: witness.is_none(),
        witness,
        max_support_edges,
    }
}

/// `PSO(A_Γ)` is a RAAG iff every support graph is a forest.
pub fn pso_is_raag(g: &SimpleGraph) -> ForestReport {
    all_supports_forests(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaBackend {
    /// Commutation decided by the support-intersection rule.
    Combinatorial,
    /// Commutation decided by testing commutators for innerness.
    WordOracle,
}

/// Which component roots each tree of a support forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RootRule {
    #[default]
    SmallestVertex,
    LargestVertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaResult {
    pub theta: SimpleGraph,
    /// Vertex `i` of `theta` is `generator_labels[i]`.
    pub generator_labels: Vec<PartialConjugation>,
    pub backend: ThetaBackend,
}

/// The generators spanning `PSO(A_Γ)`, sorted by actor then support.
pub fn theta_generators(g: &SimpleGraph, rule: RootRule) -> Result<Vec<PartialConjugation>> {
    let mut gens = Vec::new();
    for a in 0..g.n() {
        let sg = support_graph(g, a)?;
        let k = sg.components.len();
        if k <= 1 {
            continue;
        }
        if find_cycle(&sg.graph).is_some() {
            return Err(Error::NotAForest { vertex: a });
        }
        // smaller rank wins the root
        let rank = |i: usize| match rule {
            RootRule::SmallestVertex => sg.components[i].first().expect("nonempty") as isize,
            RootRule::LargestVertex => -(sg.components[i].iter().last().expect("nonempty") as isize),
        };
        let trees = sg.graph.connected_components();
        let first_tree = (0..k).min_by_key(|&i| rank(i)).expect("k >= 2");
        let mut per_actor = Vec::new();
        for tree in &trees {
            let members = tree.to_vec();
            let root = *members.iter().min_by_key(|&&i| rank(i)).expect("nonempty tree");
            // breadth-first order, then accumulate subtree unions bottom-up
            let mut order = Vec::with_capacity(members.len());
            let mut parent = vec![usize::MAX; k];
            let mut queue = VecDeque::from([root]);
            let mut seen = VertexSet::singleton(root);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for w in sg.graph.neighbors(u).iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        parent[w] = u;
                        queue.push_back(w);
                    }
                }
            }
            let mut below: Vec<VertexSet> = sg.components.clone();
            for &u in order.iter().rev() {
                if parent[u] != usize::MAX {
                    let sub = below[u].clone();
                    below[parent[u]] = below[parent[u]].union(&sub);
                    per_actor.push(sub);
                }
            }
            if !tree.contains(first_tree) {
                per_actor.push(below[root].clone());
            }
        }
        debug_assert_eq!(per_actor.len(), k - 1);
        gens.extend(per_actor.into_iter().map(|support| PartialConjugation { actor: a, support }));
    }
    gens.sort();
    Ok(gens)
}

/// Whether `p` and `q` commute in `Out(A_Γ)`, by the support rule.
pub fn commute_combinatorial(g: &SimpleGraph, p: &PartialConjugation, q: &PartialConjugation) -> bool {
    if p.actor == q.actor || g.has_edge(p.actor, q.actor) {
        return true;
    }
    let normalise = |x: &PartialConjugation, other: VertexId| {
        if x.support.contains(other) {
            outside_star(g, x.actor).difference(&x.support)
        } else {
            x.support.clone()
        }
    };
    normalise(p, q.actor).is_disjoint(&normalise(q, p.actor))
}

pub fn theta_graph(g: &SimpleGraph, backend: ThetaBackend) -> Result<ThetaResult> {
    theta_graph_with(g, backend, RootRule::SmallestVertex)
}

pub fn theta_graph_with(g: &SimpleGraph, backend: ThetaBackend, rule: RootRule) -> Result<ThetaResult> {
    let gens = theta_generators(g, rule)?;
    let theta = match backend {
        ThetaBackend::Combinatorial => {
            let mut edges = Vec::new();
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    if commute_combinatorial(g, &gens[i], &gens[j]) {
                        edges.push((i, j));
                    }
                }
            }
            SimpleGraph::from_edges(gens.len(), edges)?
        }
        ThetaBackend::WordOracle => oracle_commutation_graph(g, &gens)?,
    };
    Ok(ThetaResult {
        theta,
        generator_labels: gens,
        backend,
    })
}

/// Central vertices lie in every star, so they never occur in a support or
/// as an actor with nontrivial support, and `A_Γ` splits off the centre as
/// a direct factor. The oracle therefore works in the graph with central
/// vertices removed, where the centre is trivial.
fn oracle_commutation_graph(g: &SimpleGraph, gens: &[PartialConjugation]) -> Result<SimpleGraph> {
    let keep = g.vertices().difference(&center_vertices(g));
    let (core, map) = g.induced_subgraph(&keep)?;
    let mut back = vec![usize::MAX; g.n()];
    for (new, &old) in map.iter().enumerate() {
        back[old] = new;
    }
    let relabelled: Vec<PartialConjugation> = gens
        .iter()
        .map(|p| PartialConjugation {
            actor: back[p.actor],
            support: p.support.iter().map(|v| back[v]).collect(),
        })
        .collect();
    commutation_graph(&Arc::new(core), &relabelled)
}
