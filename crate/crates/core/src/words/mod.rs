//! Words in `A_Γ` and their normal forms.
//!
//! A word is reduced exactly when no letter can be shuffled next to its
//! inverse, and any two reduced words for the same element differ by
//! swaps of adjacent commuting letters. `reduce` cancels such pairs and then
//! picks the lexicographically least shuffle, ordering letters by
//! `(vertex, sign)` with `+` before `-`.

mod automorphism;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexId, VertexSet};

pub use automorphism::{commutation_graph, commute_in_out, is_inner, Automorphism};

/// Words longer than this are refused by the automorphism layer.
pub const WORD_LENGTH_CAP: usize = 512;
/// Default bound on shuffle orbits.
pub const ORBIT_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub vertex: VertexId,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(vertex: VertexId) -> Self {
        Letter { vertex, sign: Sign::Plus }
    }

    pub fn neg(vertex: VertexId) -> Self {
        Letter { vertex, sign: Sign::Minus }
    }

    pub fn inverse(self) -> Self {
        Letter {
            vertex: self.vertex,
            sign: match self.sign {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
            },
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "v{}", self.vertex),
            Sign::Minus => write!(f, "v{}⁻", self.vertex),
        }
    }
}

/// A finite sequence of letters over a fixed graph. Equality and ordering
/// compare letters only; operations combining two words check that their
/// ambient graphs agree.
#[derive(Clone)]
pub struct Word {
    letters: Vec<Letter>,
    ambient: Arc<SimpleGraph>,
}

impl Word {
    pub fn new(ambient: Arc<SimpleGraph>, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.vertex >= ambient.n()) {
            return Err(Error::VertexOutOfRange {
                vertex: l.vertex,
                n: ambient.n(),
            });
        }
        Ok(Word { letters, ambient })
    }

    pub fn empty(ambient: Arc<SimpleGraph>) -> Self {
        Word {
            letters: Vec::new(),
            ambient,
        }
    }

    pub fn generator(ambient: Arc<SimpleGraph>, v: VertexId) -> Result<Self> {
        Self::new(ambient, vec![Letter::pos(v)])
    }

    pub(crate) fn from_parts(ambient: &Arc<SimpleGraph>, letters: Vec<Letter>) -> Self {
        Word {
            letters,
            ambient: Arc::clone(ambient),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn ambient(&self) -> &Arc<SimpleGraph> {
        &self.ambient
    }

    pub fn inverse(&self) -> Word {
        Word::from_parts(&self.ambient, self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_ambient(&self.ambient, &other.ambient)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word::from_parts(&self.ambient, letters))
    }

    /// No letter can be shuffled next to its inverse.
    pub fn is_reduced(&self) -> bool {
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if !push_cancelling(&mut out, l, &self.ambient) {
                return false;
            }
        }
        true
    }
}

pub(crate) fn check_ambient(a: &Arc<SimpleGraph>, b: &Arc<SimpleGraph>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::AmbientMismatch)
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters.cmp(&other.letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

fn commute(g: &SimpleGraph, a: Letter, b: Letter) -> bool {
    a.vertex == b.vertex || g.has_edge(a.vertex, b.vertex)
}

/// Appends `l` to the reduced word `out`, cancelling against a trailing
/// inverse that can be shuffled to the end. Returns false on cancellation.
fn push_cancelling(out: &mut Vec<Letter>, l: Letter, g: &SimpleGraph) -> bool {
    for j in (0..out.len()).rev() {
        let m = out[j];
        if m == l.inverse() {
            out.remove(j);
            return false;
        }
        if !commute(g, m, l) {
            break;
        }
    }
    out.push(l);
    true
}

/// Position `p` can be shuffled to the front of `letters`.
fn front_movable(letters: &[Letter], p: usize, g: &SimpleGraph) -> bool {
    letters[..p].iter().all(|&m| m.vertex != letters[p].vertex && g.has_edge(m.vertex, letters[p].vertex))
}

fn back_movable(letters: &[Letter], p: usize, g: &SimpleGraph) -> bool {
    letters[p + 1..].iter().all(|&m| m.vertex != letters[p].vertex && g.has_edge(m.vertex, letters[p].vertex))
}

fn lex_least_shuffle(mut rest: Vec<Letter>, g: &SimpleGraph) -> Vec<Letter> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let p = (0..rest.len())
            .filter(|&p| front_movable(&rest, p, g))
            .min_by_key(|&p| rest[p])
            .expect("the first letter is always movable");
        out.push(rest.remove(p));
    }
    out
}

/// A shortest word equal to `w`, in canonical shuffle order.
pub fn reduce(w: &Word) -> Word {
    let g = &*w.ambient;
    let mut out = Vec::with_capacity(w.len());
    for &l in &w.letters {
        push_cancelling(&mut out, l, g);
    }
    Word::from_parts(&w.ambient, lex_least_shuffle(out, g))
}

pub fn words_equal(u: &Word, v: &Word) -> Result<bool> {
    Ok(reduce(&u.concat(&v.inverse())?).is_empty())
}

/// Every word reachable from `w` by swapping adjacent commuting letters.
/// For reduced `w` these are all geodesic representatives of its element.
pub fn shuffle_orbit(w: &Word, bound: usize) -> Result<BTreeSet<Word>> {
    let g = &*w.ambient;
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    seen.insert(w.letters.clone());
    let mut frontier = vec![w.letters.clone()];
    while let Some(cur) = frontier.pop() {
        for i in 0..cur.len().saturating_sub(1) {
            let (a, b) = (cur[i], cur[i + 1]);
            if a != b && commute(g, a, b) {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    if seen.len() > bound {
                        return Err(Error::BoundExceeded { bound });
                    }
                    frontier.push(next);
                }
            }
        }
    }
    Ok(seen.into_iter().map(|l| Word::from_parts(&w.ambient, l)).collect())
}

/// Factors `h = a·b` with `a ∈ ⟨Λ⟩` and `b ∈ ⟨M⟩`, if possible.
///
/// Alternately strips letters of `Λ` that shuffle to the front and letters
/// of `M` that shuffle to the back until neither moves; `h` lies in the
/// double coset exactly when nothing is left.
pub fn parabolic_double_coset_member(h: &Word, lambda: &VertexSet, mu: &VertexSet) -> Option<(Word, Word)> {
    let g = &*h.ambient;
    let mut rest = reduce(h).letters;
    let (mut front, mut back) = (Vec::new(), Vec::new());
    loop {
        let mut moved = false;
        while let Some(p) = (0..rest.len()).find(|&p| lambda.contains(rest[p].vertex) && front_movable(&rest, p, g)) {
            front.push(rest.remove(p));
            moved = true;
        }
        while let Some(p) = (0..rest.len())
            .rev()
            .find(|&p| mu.contains(rest[p].vertex) && back_movable(&rest, p, g))
        {
            back.push(rest.remove(p));
            moved = true;
        }
        if !moved {
            break;
        }
    }
    if !rest.is_empty() {
        return None;
    }
    back.reverse();
    Some((Word::from_parts(&h.ambient, front), Word::from_parts(&h.ambient, back)))
}
