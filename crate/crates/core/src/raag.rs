//! Graph conditions for group-theoretic properties of `A_Γ` and
//! `Out(A_Γ)`.

use serde::Serialize;

use crate::cm::{is_cohen_macaulay, raag_duality_verdict, CmMode, CmVerdict};
use crate::complex::flag_complex;
use crate::error::{Error, Result};
use crate::graph::{canonical_form, GraphCode, SimpleGraph, VertexId, VertexSet};
use crate::pso::{all_supports_forests, theta_graph, ThetaBackend};

/// `Out(A_Γ)` is finite iff no star separates and no vertex is dominated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutFinitenessReport {
    pub finite: bool,
    /// A vertex `u` with `Γ - st(u)` disconnected.
    pub separating_star_witness: Option<VertexId>,
    /// A pair `(u, v)`, `u ≠ v`, with `lk(u) ⊆ st(v)`.
    pub domination_witness: Option<(VertexId, VertexId)>,
}

fn nonempty(g: &SimpleGraph) -> Result<()> {
    if g.n() == 0 {
        Err(Error::EmptyGraph)
    } else {
        Ok(())
    }
}

fn star(g: &SimpleGraph, u: VertexId) -> VertexSet {
    g.star(u).expect("vertex in range")
}

/// First dominated pair `(u, v)` in lexicographic order.
fn first_domination(g: &SimpleGraph) -> Option<(VertexId, VertexId)> {
    (0..g.n()).find_map(|u| {
        (0..g.n())
            .filter(|&v| v != u)
            .find(|&v| g.neighbors(u).is_subset(&star(g, v)))
            .map(|v| (u, v))
    })
}

pub fn out_is_finite(g: &SimpleGraph) -> Result<OutFinitenessReport> {
    nonempty(g)?;
    let all = g.vertices();
    let separating = (0..g.n()).find(|&u| g.components_within(&all.difference(&star(g, u))).len() > 1);
    let domination = first_domination(g);
    Ok(OutFinitenessReport {
        finite: separating.is_none() && domination.is_none(),
        separating_star_witness: separating,
        domination_witness: domination,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransvectionReport {
    pub transvection_free: bool,
    /// `(u, v)` with `lk(u) ⊆ st(v)`, giving the transvection `u ↦ uv`.
    pub witness: Option<(VertexId, VertexId)>,
}

pub fn is_transvection_free(g: &SimpleGraph) -> Result<TransvectionReport> {
    nonempty(g)?;
    let witness = first_domination(g);
    Ok(TransvectionReport {
        transvection_free: witness.is_none(),
        witness,
    })
}

/// Vertices adjacent to every other vertex; they generate the centre.
pub fn center_vertices(g: &SimpleGraph) -> VertexSet {
    (0..g.n()).filter(|&v| g.degree(v) + 1 == g.n()).collect()
}

/// `A_Γ` is one-ended iff `Γ` is connected with at least two vertices.
pub fn is_one_ended(g: &SimpleGraph) -> bool {
    g.n() >= 2 && g.is_connected()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    pub vertex_count: usize,
    /// `None` for the empty graph.
    pub out: Option<OutFinitenessReport>,
    pub connected: bool,
    pub trivial_center: bool,
    pub one_ended: bool,
}

impl FactorCheck {
    fn of(g: &SimpleGraph) -> Self {
        FactorCheck {
            vertex_count: g.n(),
            out: out_is_finite(g).ok(),
            connected: g.is_connected(),
            trivial_center: center_vertices(g).is_empty(),
            one_ended: is_one_ended(g),
        }
    }

    fn qualifies(&self) -> bool {
        self.vertex_count >= 2 && self.out.as_ref().is_some_and(|r| r.finite)
    }
}

/// For noncyclic `Γ₁`, `Γ₂` with finite outer automorphism groups,
/// `Out(A_{Γ₁ ⊔ Γ₂})` is virtually `A_{Γ₁ ⋆ Γ₂}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinLemmaCertificate {
    pub gamma: SimpleGraph,
    pub delta: SimpleGraph,
    pub factor_reports: [FactorCheck; 2],
    pub applicable: bool,
}

pub fn join_lemma_certificate(g1: &SimpleGraph, g2: &SimpleGraph) -> JoinLemmaCertificate {
    let factor_reports = [FactorCheck::of(g1), FactorCheck::of(g2)];
    let applicable = factor_reports.iter().all(FactorCheck::qualifies);
    if applicable {
        // consequences of finiteness that the product decomposition relies on
        assert!(factor_reports.iter().all(|f| f.connected && f.trivial_center && f.one_ended));
    }
    JoinLemmaCertificate {
        gamma: g1.disjoint_union(g2),
        delta: g1.join(g2),
        factor_reports,
        applicable,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VirtualDuality {
    NotVirtualDuality,
    VirtualDuality,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum VirtualDualityEvidence {
    /// `Out` is virtually `A_Δ` for `Δ` the join of the two sides.
    JoinLemma {
        sides: [Vec<VertexId>; 2],
        delta_code: GraphCode,
        delta_cm: CmVerdict,
    },
    /// A finite group is a virtual duality group of dimension 0.
    FiniteOut,
    /// No transvections and every support graph a forest, so `Out` is
    /// virtually `PSO ≅ A_Θ`.
    PureSymmetric { theta_code: GraphCode, theta_cm: CmVerdict },
    None { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirtualDualityVerdict {
    pub verdict: VirtualDuality,
    pub evidence: VirtualDualityEvidence,
}

fn from_cm(cm: &CmVerdict) -> VirtualDuality {
    if cm.is_cm {
        VirtualDuality::VirtualDuality
    } else {
        VirtualDuality::NotVirtualDuality
    }
}

/// Splits the components of `g` into two sides and returns the first
/// applicable join certificate, trying bipartitions in mask order.
fn find_join_certificate(g: &SimpleGraph) -> Option<([Vec<VertexId>; 2], JoinLemmaCertificate)> {
    let comps = g.connected_components();
    let k = comps.len();
    if !(2..=20).contains(&k) {
        return None;
    }
    // component 0 always sits on the first side
    for mask in 0u32..(1 << (k - 1)) {
        let mask = mask << 1;
        let mut sides = [VertexSet::new(), VertexSet::new()];
        for (i, c) in comps.iter().enumerate() {
            let side = usize::from(mask & (1 << i) != 0);
            sides[side] = sides[side].union(c);
        }
        if sides[1].is_empty() {
            continue;
        }
        let (g1, _) = g.induced_subgraph(&sides[0]).expect("in range");
        let (g2, _) = g.induced_subgraph(&sides[1]).expect("in range");
        let cert = join_lemma_certificate(&g1, &g2);
        if cert.applicable {
            return Some(([sides[0].to_vec(), sides[1].to_vec()], cert));
        }
    }
    None
}

pub fn out_virtual_duality_verdict(g: &SimpleGraph) -> VirtualDualityVerdict {
    if let Some((sides, cert)) = find_join_certificate(g) {
        let cm = raag_duality_verdict(&cert.delta).cm;
        return VirtualDualityVerdict {
            verdict: from_cm(&cm),
            evidence: VirtualDualityEvidence::JoinLemma {
                sides,
                delta_code: canonical_form(&cert.delta).expect("small graph"),
                delta_cm: cm,
            },
        };
    }
    let Ok(out) = out_is_finite(g) else {
        return VirtualDualityVerdict {
            verdict: VirtualDuality::Unknown,
            evidence: VirtualDualityEvidence::None {
                reason: "empty graph".into(),
            },
        };
    };
    if out.finite {
        return VirtualDualityVerdict {
            verdict: VirtualDuality::VirtualDuality,
            evidence: VirtualDualityEvidence::FiniteOut,
        };
    }
    let unknown = |reason: &str| VirtualDualityVerdict {
        verdict: VirtualDuality::Unknown,
        evidence: VirtualDualityEvidence::None { reason: reason.into() },
    };
    if out.domination_witness.is_some() {
        return unknown("transvections present and no join certificate applies");
    }
    if !all_supports_forests(g).all_forests {
        return unknown("a support graph contains a cycle, so the pure symmetric subgroup is not a RAAG");
    }
    let theta = theta_graph(g, ThetaBackend::Combinatorial).expect("forest gate passed");
    let cm = is_cohen_macaulay(&flag_complex(&theta.theta), CmMode::Full);
    VirtualDualityVerdict {
        verdict: from_cm(&cm),
        evidence: VirtualDualityEvidence::PureSymmetric {
            theta_code: canonical_form(&theta.theta).expect("small graph"),
            theta_cm: cm,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finiteness_examples() {
        let c5 = out_is_finite(&SimpleGraph::cycle(5)).unwrap();
        assert!(c5.finite);
        let p3 = out_is_finite(&SimpleGraph::path(3)).unwrap();
        assert!(!p3.finite);
        assert_eq!(p3.domination_witness, Some((0, 1)));
        let two = out_is_finite(&SimpleGraph::empty(2)).unwrap();
        assert!(!two.finite);
        assert_eq!(two.domination_witness, Some((0, 1)));
        assert!(matches!(out_is_finite(&SimpleGraph::empty(0)), Err(Error::EmptyGraph)));
        // C6: removing a star leaves a path on three vertices
        assert!(out_is_finite(&SimpleGraph::cycle(6)).unwrap().finite);
        // C4: opposite vertices dominate each other
        assert!(!out_is_finite(&SimpleGraph::cycle(4)).unwrap().finite);
    }

    #[test]
    fn transvections_center_ends() {
        assert!(!is_transvection_free(&SimpleGraph::complete(3)).unwrap().transvection_free);
        assert!(is_transvection_free(&SimpleGraph::cycle(5)).unwrap().transvection_free);
        assert!(is_transvection_free(&SimpleGraph::empty(1)).unwrap().transvection_free);

        assert!(center_vertices(&SimpleGraph::cycle(5)).is_empty());
        assert_eq!(center_vertices(&SimpleGraph::complete(4)).len(), 4);
        let cone = SimpleGraph::cycle(5).join(&SimpleGraph::empty(1));
        assert!(center_vertices(&cone).contains(5));

        assert!(!is_one_ended(&SimpleGraph::empty(1)));
        assert!(is_one_ended(&SimpleGraph::cycle(5)));
        assert!(!is_one_ended(&SimpleGraph::complete(2).disjoint_union(&SimpleGraph::complete(3))));
    }

    #[test]
    fn join_certificates() {
        let c5 = SimpleGraph::cycle(5);
        let cert = join_lemma_certificate(&c5, &c5);
        assert!(cert.applicable);
        assert_eq!(cert.delta, c5.join(&c5));
        assert!(!join_lemma_certificate(&SimpleGraph::empty(1), &c5).applicable);
        assert!(!join_lemma_certificate(&SimpleGraph::path(3), &c5).applicable);
    }

    #[test]
    fn verdicts() {
        let c5 = SimpleGraph::cycle(5);
        assert_eq!(out_virtual_duality_verdict(&c5).verdict, VirtualDuality::VirtualDuality);
        assert_eq!(out_virtual_duality_verdict(&SimpleGraph::path(3)).verdict, VirtualDuality::Unknown);
        // C5 ⋆ C5 is a suspension-like join of circles: CM, so virtually duality
        let v = out_virtual_duality_verdict(&c5.disjoint_union(&c5));
        assert_eq!(v.verdict, VirtualDuality::VirtualDuality);
        assert!(matches!(v.evidence, VirtualDualityEvidence::JoinLemma { .. }));
    }
}
