//! Automorphisms of `A_Γ` given by generator images, and the inner test.
//!
//! `is_inner` refines a coset of candidate conjugators. The set of `g` with
//! `g v g⁻¹ = w_v v w_v⁻¹` is `w_v ⟨st(v)⟩`, because the centraliser of a
//! generator is its star subgroup. Intersections of standard subgroups are
//! standard, `⟨Λ⟩ ∩ ⟨M⟩ = ⟨Λ ∩ M⟩`, so `g₀⟨Λ⟩ ∩ w_v⟨st(v)⟩` is either empty
//! or a coset of `⟨Λ ∩ st(v)⟩`. It is nonempty exactly when `g₀⁻¹ w_v`
//! factors through `⟨Λ⟩⟨st(v)⟩`. After every generator the subgroup is
//! `⟨∩ st(v)⟩`, the centre, so with trivial centre a single candidate
//! remains and is checked directly.

use std::sync::Arc;

use super::{
    back_movable, check_ambient, front_movable, parabolic_double_coset_member, reduce, words_equal, Letter, Word,
    WORD_LENGTH_CAP,
};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexId};
use crate::pso::PartialConjugation;
use crate::raag::center_vertices;

/// An endomorphism of `A_Γ` recorded by the (reduced) image of each
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<Word>,
    ambient: Arc<SimpleGraph>,
}

impl Automorphism {
    pub fn identity(ambient: Arc<SimpleGraph>) -> Self {
        let images = (0..ambient.n())
            .map(|v| Word::from_parts(&ambient, vec![Letter::pos(v)]))
            .collect();
        Automorphism { images, ambient }
    }

    /// Checks that images of adjacent generators commute.
    pub fn from_images(ambient: Arc<SimpleGraph>, images: Vec<Word>) -> Result<Self> {
        if images.len() != ambient.n() {
            return Err(Error::Oracle(format!(
                "{} images for {} generators",
                images.len(),
                ambient.n()
            )));
        }
        for w in &images {
            check_ambient(&ambient, w.ambient())?;
        }
        let phi = Automorphism {
            images: images.iter().map(reduce).collect(),
            ambient,
        };
        if !phi.is_homomorphism()? {
            return Err(Error::Oracle("images of adjacent generators do not commute".into()));
        }
        Ok(phi)
    }

    /// Conjugates every generator in the support by the actor (or by its
    /// inverse) and fixes the rest.
    pub fn partial_conjugation(ambient: Arc<SimpleGraph>, pc: &PartialConjugation, inverse: bool) -> Result<Self> {
        let x = pc.actor;
        ambient.check_vertex(x)?;
        let outside = ambient.vertices().difference(&ambient.star(x)?);
        if pc.support.is_empty() || !pc.support.is_subset(&outside) {
            return Err(Error::Oracle(format!("support of {pc:?} must be a nonempty subset of Γ - st(actor)")));
        }
        let whole = ambient
            .components_within(&outside)
            .into_iter()
            .all(|c| c.is_subset(&pc.support) || c.is_disjoint(&pc.support));
        if !whole {
            return Err(Error::Oracle(format!("support of {pc:?} splits a component")));
        }
        let (pre, post) = if inverse {
            (Letter::neg(x), Letter::pos(x))
        } else {
            (Letter::pos(x), Letter::neg(x))
        };
        let images = (0..ambient.n())
            .map(|v| {
                let letters = if pc.support.contains(v) {
                    vec![pre, Letter::pos(v), post]
                } else {
                    vec![Letter::pos(v)]
                };
                Word::from_parts(&ambient, letters)
            })
            .collect();
        Ok(Automorphism { images, ambient })
    }

    /// Conjugation `v ↦ g v g⁻¹`.
    pub fn inner(g: &Word) -> Self {
        let ambient = Arc::clone(g.ambient());
        let images = (0..ambient.n())
            .map(|v| {
                let mut letters = g.letters().to_vec();
                letters.push(Letter::pos(v));
                letters.extend(g.inverse().letters());
                reduce(&Word::from_parts(&ambient, letters))
            })
            .collect();
        Automorphism { images, ambient }
    }

    pub fn ambient(&self) -> &Arc<SimpleGraph> {
        &self.ambient
    }

    pub fn image(&self, v: VertexId) -> &Word {
        &self.images[v]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        check_ambient(&self.ambient, w.ambient())?;
        let mut letters = Vec::new();
        for l in w.letters() {
            let img = &self.images[l.vertex];
            match l.sign {
                super::Sign::Plus => letters.extend_from_slice(img.letters()),
                super::Sign::Minus => letters.extend(img.letters().iter().rev().map(|m| m.inverse())),
            }
            if letters.len() > WORD_LENGTH_CAP {
                return Err(Error::BoundExceeded { bound: WORD_LENGTH_CAP });
            }
        }
        Ok(reduce(&Word::from_parts(&self.ambient, letters)))
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        check_ambient(&self.ambient, &other.ambient)?;
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<_>>()?;
        Ok(Automorphism {
            images,
            ambient: Arc::clone(&self.ambient),
        })
    }

    pub fn is_homomorphism(&self) -> Result<bool> {
        for (u, v) in self.ambient.edges() {
            let uv = self.images[u].concat(&self.images[v])?;
            let vu = self.images[v].concat(&self.images[u])?;
            if !words_equal(&uv, &vu)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `g` with `w = g v g⁻¹`, found by peeling matching front and back
/// letters off the reduced word.
fn conjugator_of_generator(w: &Word, v: VertexId) -> Option<Word> {
    let g = &**w.ambient();
    let mut rest = w.letters().to_vec();
    let mut conj = Vec::new();
    while rest.len() > 1 {
        let (p, q) = (0..rest.len()).filter(|&p| front_movable(&rest, p, g)).find_map(|p| {
            let inv = rest[p].inverse();
            (p + 1..rest.len())
                .find(|&q| rest[q] == inv && back_movable(&rest, q, g))
                .map(|q| (p, q))
        })?;
        rest.remove(q);
        conj.push(rest.remove(p));
    }
    (rest == [Letter::pos(v)]).then(|| Word::from_parts(w.ambient(), conj))
}

/// Returns `g` with `φ(v) = g v g⁻¹` for every generator, if one exists.
///
/// Requires every image to be a conjugate of its generator and the ambient
/// graph to have trivial centre.
pub fn is_inner(phi: &Automorphism) -> Result<Option<Word>> {
    let ambient = phi.ambient();
    if !center_vertices(ambient).is_empty() {
        return Err(Error::Oracle("inner test needs a graph with trivial centre".into()));
    }
    if ambient.n() == 0 {
        return Ok(Some(Word::empty(Arc::clone(ambient))));
    }
    let conjugators = (0..ambient.n())
        .map(|v| {
            conjugator_of_generator(phi.image(v), v)
                .ok_or_else(|| Error::Oracle(format!("image of v{v} is not a conjugate of v{v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut g0 = conjugators[0].clone();
    let mut lambda = ambient.star(0)?;
    for v in 1..ambient.n() {
        let st = ambient.star(v)?;
        let h = g0.inverse().concat(&conjugators[v])?;
        let Some((a, _)) = parabolic_double_coset_member(&h, &lambda, &st) else {
            return Ok(None);
        };
        g0 = reduce(&g0.concat(&a)?);
        lambda = lambda.intersection(&st);
    }
    debug_assert!(lambda.is_empty());
    for v in 0..ambient.n() {
        let conj = g0
            .concat(&Word::from_parts(ambient, vec![Letter::pos(v)]))?
            .concat(&g0.inverse())?;
        if !words_equal(phi.image(v), &conj)? {
            return Ok(None);
        }
    }
    Ok(Some(g0))
}

/// Whether the two partial conjugations commute in `Out(A_Γ)`: their
/// commutator in `Aut(A_Γ)` is inner.
pub fn commute_in_out(ambient: &Arc<SimpleGraph>, p: &PartialConjugation, q: &PartialConjugation) -> Result<bool> {
    let a = Automorphism::partial_conjugation(Arc::clone(ambient), p, false)?;
    let a_inv = Automorphism::partial_conjugation(Arc::clone(ambient), p, true)?;
    let b = Automorphism::partial_conjugation(Arc::clone(ambient), q, false)?;
    let b_inv = Automorphism::partial_conjugation(Arc::clone(ambient), q, true)?;
    let commutator = a.compose(&b)?.compose(&a_inv)?.compose(&b_inv)?;
    Ok(is_inner(&commutator)?.is_some())
}

/// Vertices are the generators in order; edges join pairs commuting in
/// `Out(A_Γ)`.
pub fn commutation_graph(ambient: &Arc<SimpleGraph>, gens: &[PartialConjugation]) -> Result<SimpleGraph> {
    let mut edges = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if commute_in_out(ambient, &gens[i], &gens[j])? {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::from_edges(gens.len(), edges)
}
