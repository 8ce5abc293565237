//! Finite abstract simplicial complexes stored by their facets, and the flag
//! complex of a graph.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};

/// A simplex as a strictly increasing vertex list. The empty list is the
/// empty simplex, of dimension -1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dimension(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Both lists are sorted, so a merge walk decides containment.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    fn to_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

impl From<&[usize]> for Simplex {
    fn from(v: &[usize]) -> Self {
        Simplex::new(v.to_vec())
    }
}

/// A complex on the ground set `0..n`, given by its facets (an antichain,
/// sorted lexicographically). The faces are the downward closure.
///
/// A complex with no facets is the complex `{∅}`, of dimension -1.
#[derive(Clone, Serialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Simplex>,
    #[serde(skip)]
    faces: OnceLock<Vec<Vec<Simplex>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, facets={:?})", self.n, self.facets)
    }
}

impl SimplicialComplex {
    /// Builds a complex from generating simplices; simplices contained in
    /// others are dropped.
    pub fn from_facets(n: usize, simplices: Vec<Simplex>) -> Result<Self> {
        if let Some(&v) = simplices.iter().flat_map(|s| s.0.iter()).find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let mut simplices: Vec<Simplex> = simplices.into_iter().filter(|s| !s.is_empty()).collect();
        // Larger simplices first so containment only needs a backward look.
        simplices.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.cmp(b)));
        simplices.dedup();
        let mut facets: Vec<Simplex> = Vec::with_capacity(simplices.len());
        for s in simplices {
            if !facets.iter().any(|f| s.is_face_of(f)) {
                facets.push(s);
            }
        }
        facets.sort();
        Ok(SimplicialComplex {
            n,
            facets,
            faces: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn dimension(&self) -> i64 {
        self.facets.iter().map(Simplex::dimension).max().unwrap_or(-1)
    }

    /// `(dimension, pure)`. The complex `{∅}` is pure of dimension -1.
    pub fn purity_and_dimension(&self) -> (i64, bool) {
        let dim = self.dimension();
        (dim, self.facets.iter().all(|f| f.dimension() == dim))
    }

    pub fn contains_face(&self, sigma: &Simplex) -> bool {
        sigma.is_empty() || self.facets.iter().any(|f| sigma.is_face_of(f))
    }

    pub fn is_facet(&self, sigma: &Simplex) -> bool {
        self.facets.binary_search(sigma).is_ok()
    }

    fn all_faces(&self) -> &Vec<Vec<Simplex>> {
        self.faces.get_or_init(|| {
            let dim = self.dimension();
            let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); (dim + 2) as usize];
            by_dim[0].push(Simplex::empty());
            for facet in &self.facets {
                let k = facet.0.len();
                for mask in 1u64..(1u64 << k) {
                    let face: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| facet.0[i]).collect();
                    by_dim[face.len()].push(Simplex(face));
                }
            }
            for faces in by_dim.iter_mut() {
                faces.sort_unstable();
                faces.dedup();
            }
            by_dim
        })
    }

    /// All `k`-faces in lexicographic order; `k = -1` gives the empty
    /// simplex.
    pub fn simplices_of_dim(&self, k: i64) -> Result<&[Simplex]> {
        let dim = self.dimension();
        if k < -1 || k > dim {
            return Err(Error::DimensionOutOfRange { k, lo: -1, hi: dim });
        }
        Ok(&self.all_faces()[(k + 1) as usize])
    }

    pub fn face_count(&self, k: i64) -> usize {
        self.simplices_of_dim(k).map_or(0, <[Simplex]>::len)
    }

    /// Nonempty faces that are not facets, in lexicographic order.
    pub fn non_maximal_faces(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self
            .all_faces()
            .iter()
            .skip(1)
            .flatten()
            .filter(|s| !self.is_facet(s))
            .cloned()
            .collect();
        out.sort();
        out
    }

    /// The link of `sigma`, relabelled densely onto its vertex set in
    /// ascending order. The returned map sends new labels to old ones.
    pub fn link_of_simplex(&self, sigma: &Simplex) -> Result<(SimplicialComplex, Vec<usize>)> {
        if !self.contains_face(sigma) {
            return Err(Error::NotAFace(sigma.0.clone()));
        }
        let sigma_set = sigma.to_set();
        let pieces: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| sigma.is_face_of(f))
            .map(|f| f.to_set().difference(&sigma_set))
            .collect();
        let support = pieces.iter().fold(VertexSet::new(), |acc, p| acc.union(p));
        let map = support.to_vec();
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            back[old] = new;
        }
        let facets = pieces
            .iter()
            .map(|p| Simplex(p.iter().map(|v| back[v]).collect()))
            .collect();
        Ok((SimplicialComplex::from_facets(map.len(), facets)?, map))
    }

    /// Number of connected components of the underlying space (0 for `{∅}`).
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        let mut used = VertexSet::new();
        for f in &self.facets {
            used.insert(f.0[0]);
            for &v in &f.0[1..] {
                used.insert(v);
                let (a, b) = (find(&mut parent, f.0[0]), find(&mut parent, v));
                parent[a.max(b)] = a.min(b);
            }
        }
        let roots: VertexSet = used.iter().map(|v| find(&mut parent, v)).collect();
        roots.len()
    }
}

/// Inclusion-maximal cliques in lexicographic order. Isolated vertices are
/// singleton cliques.
///
/// Bron–Kerbosch with Tomita pivoting; the outer loop runs in degeneracy
/// order.
pub fn maximal_cliques(g: &SimpleGraph) -> Vec<Simplex> {
    let mut out = Vec::new();
    let mut p = g.vertices();
    let mut x = VertexSet::new();
    for v in degeneracy_order(g) {
        let nv = g.neighbors(v);
        let mut r = vec![v];
        bron_kerbosch(g, &mut r, p.intersection(nv), x.intersection(nv), &mut out);
        p.remove(v);
        x.insert(v);
    }
    out.sort();
    out
}

fn bron_kerbosch(g: &SimpleGraph, r: &mut Vec<usize>, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<Simplex>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(Simplex::new(r.clone()));
        }
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| g.neighbors(u).intersection(&p).len())
        .expect("p is nonempty");
    for v in p.difference(g.neighbors(pivot)).to_vec() {
        let nv = g.neighbors(v);
        r.push(v);
        bron_kerbosch(g, r, p.intersection(nv), x.intersection(nv), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

fn degeneracy_order(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for w in g.neighbors(v).iter() {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    order
}

/// The flag complex: faces are exactly the cliques of `g`.
pub fn flag_complex(g: &SimpleGraph) -> SimplicialComplex {
    SimplicialComplex {
        n: g.n(),
        facets: maximal_cliques(g),
        faces: OnceLock::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec())
    }

    fn octahedron() -> SimpleGraph {
        SimpleGraph::empty(2)
            .join(&SimpleGraph::empty(2))
            .join(&SimpleGraph::empty(2))
    }

    #[test]
    fn cliques_of_small_graphs() {
        assert_eq!(maximal_cliques(&SimpleGraph::complete(4)), vec![s(&[0, 1, 2, 3])]);
        assert_eq!(
            maximal_cliques(&SimpleGraph::cycle(5)),
            vec![s(&[0, 1]), s(&[0, 4]), s(&[1, 2]), s(&[2, 3]), s(&[3, 4])]
        );
        assert_eq!(maximal_cliques(&SimpleGraph::path(3)), vec![s(&[0, 1]), s(&[1, 2])]);
        assert_eq!(maximal_cliques(&SimpleGraph::empty(2)), vec![s(&[0]), s(&[1])]);
        assert!(maximal_cliques(&SimpleGraph::empty(0)).is_empty());
        assert_eq!(maximal_cliques(&octahedron()).len(), 8);
    }

    #[test]
    fn flag_complex_shapes() {
        let c5 = flag_complex(&SimpleGraph::cycle(5));
        assert_eq!(c5.purity_and_dimension(), (1, true));
        assert_eq!(c5.facets().len(), 5);
        let k4 = flag_complex(&SimpleGraph::complete(4));
        assert_eq!(k4.facets(), &[s(&[0, 1, 2, 3])]);
        assert_eq!(k4.dimension(), 3);
        let empty = flag_complex(&SimpleGraph::empty(0));
        assert_eq!(empty.purity_and_dimension(), (-1, true));
        let p3_plus_triangle = flag_complex(&SimpleGraph::path(2).disjoint_union(&SimpleGraph::complete(3)));
        assert_eq!(p3_plus_triangle.purity_and_dimension(), (2, false));
    }

    #[test]
    fn faces_by_dimension() {
        let k3 = flag_complex(&SimpleGraph::complete(3));
        assert_eq!(k3.simplices_of_dim(1).unwrap(), &[s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        assert_eq!(k3.simplices_of_dim(-1).unwrap(), &[Simplex::empty()]);
        assert!(k3.simplices_of_dim(3).is_err());
        assert!(k3.simplices_of_dim(-2).is_err());
        let c5 = flag_complex(&SimpleGraph::cycle(5));
        assert_eq!(c5.simplices_of_dim(0).unwrap().len(), 5);
    }

    #[test]
    fn links() {
        let c5 = flag_complex(&SimpleGraph::cycle(5));
        let (lk, map) = c5.link_of_simplex(&s(&[0])).unwrap();
        assert_eq!(map, vec![1, 4]);
        assert_eq!(lk.facets(), &[s(&[0]), s(&[1])]);

        let k4 = flag_complex(&SimpleGraph::complete(4));
        let (lk, map) = k4.link_of_simplex(&s(&[0, 1])).unwrap();
        assert_eq!(map, vec![2, 3]);
        assert_eq!(lk.facets(), &[s(&[0, 1])]);

        // Vertex links of the octahedron are 4-cycles.
        let oct = flag_complex(&octahedron());
        for v in 0..6 {
            let (lk, _) = oct.link_of_simplex(&s(&[v])).unwrap();
            assert_eq!(lk.n(), 4);
            assert_eq!(lk.facets().len(), 4);
            assert_eq!(lk.purity_and_dimension(), (1, true));
            assert_eq!(lk.component_count(), 1);
        }

        let (lk, _) = k4.link_of_simplex(&s(&[0, 1, 2, 3])).unwrap();
        assert_eq!(lk.dimension(), -1);
        assert!(c5.link_of_simplex(&s(&[0, 2])).is_err());
    }

    #[test]
    fn from_facets_normalises() {
        let k = SimplicialComplex::from_facets(4, vec![s(&[0, 1]), s(&[0, 1, 2]), s(&[3]), s(&[1])]).unwrap();
        assert_eq!(k.facets(), &[s(&[0, 1, 2]), s(&[3])]);
        assert!(SimplicialComplex::from_facets(2, vec![s(&[0, 2])]).is_err());
    }
}
