//! Exact reduced simplicial homology with integer coefficients.
//!
//! Chains use the augmented complex: the empty simplex spans degree -1 and
//! `∂_0` is the augmentation row of ones. Orientation follows ascending
//! vertex order, so removing the vertex in position `i` carries sign
//! `(-1)^i`.

mod matrix;
mod snf;

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

pub use matrix::IntegerMatrix;
pub use snf::{smith_diagonal, smith_normal_form, SmithForm};

/// Boundary map from `k`-chains to `(k-1)`-chains. Rows follow
/// `simplices_of_dim(k - 1)`, columns follow `simplices_of_dim(k)`.
pub fn boundary_matrix(complex: &SimplicialComplex, k: i64) -> Result<IntegerMatrix> {
    let dim = complex.dimension();
    if k < 0 || k > dim {
        return Err(Error::DimensionOutOfRange { k, lo: 0, hi: dim });
    }
    let faces = complex.simplices_of_dim(k)?;
    let lower = complex.simplices_of_dim(k - 1)?;
    let index: HashMap<&Simplex, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = IntegerMatrix::zeros(lower.len(), faces.len());
    for (col, face) in faces.iter().enumerate() {
        let vs = face.vertices();
        for drop in 0..vs.len() {
            let sub: Vec<usize> = vs.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
            let row = index[&Simplex::new(sub)];
            m[(row, col)] = if drop % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        }
    }
    Ok(m)
}

/// Reduced homology in one degree: `Z^free_rank ⊕ ⊕ Z/t` over `torsion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Reduced homology in every degree from -1 to the dimension; other
/// degrees vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub dimension: i64,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn degree(&self, k: i64) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| d.degree == k)
    }

    pub fn free_rank(&self, k: i64) -> usize {
        self.degree(k).map_or(0, |d| d.free_rank)
    }

    pub fn torsion(&self, k: i64) -> &[BigUint] {
        self.degree(k).map_or(&[], |d| d.torsion.as_slice())
    }

    /// `Σ (-1)^k free_rank(H̃_k)`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| if d.degree.rem_euclid(2) == 0 { d.free_rank as i64 } else { -(d.free_rank as i64) })
            .sum()
    }

    /// First degree in which the profile is not free or not concentrated
    /// in degree `n`.
    pub fn first_violation(&self, n: i64) -> Option<i64> {
        self.degrees
            .iter()
            .find(|d| !d.torsion.is_empty() || (d.degree != n && d.free_rank != 0))
            .map(|d| d.degree)
    }
}

/// True when every group is free and only degree `n` may be nonzero.
pub fn concentrated_free_in_degree(profile: &HomologyProfile, n: i64) -> bool {
    profile.first_violation(n).is_none()
}

impl Serialize for HomologyProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            rank: usize,
            #[serde(serialize_with = "serialize_torsion")]
            torsion: &'a [BigUint],
        }
        let mut map = serializer.serialize_map(Some(self.degrees.len()))?;
        for d in &self.degrees {
            map.serialize_entry(
                &d.degree.to_string(),
                &Entry {
                    rank: d.free_rank,
                    torsion: &d.torsion,
                },
            )?;
        }
        map.end()
    }
}

fn serialize_torsion<S: Serializer>(torsion: &&[BigUint], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(torsion.len()))?;
    for t in torsion.iter() {
        match u64::try_from(t) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&t.to_string())?,
        }
    }
    seq.end()
}

/// Reduced integral homology of `complex`.
pub fn reduced_homology(complex: &SimplicialComplex) -> HomologyProfile {
    let dim = complex.dimension();
    // rank and invariant factors of ∂_k for k = 0..=dim
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    let mut factors: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    for k in 0..=dim {
        let m = boundary_matrix(complex, k).expect("k within range");
        let diag = smith_diagonal(&m);
        ranks.insert(k, diag.len());
        factors.insert(k, diag);
    }
    let degrees = (-1..=dim)
        .map(|k| {
            let chains = complex.face_count(k);
            let rank_out = ranks.get(&k).copied().unwrap_or(0);
            let rank_in = ranks.get(&(k + 1)).copied().unwrap_or(0);
            let torsion = factors
                .get(&(k + 1))
                .map(|d| {
                    d.iter()
                        .filter(|x| !x.is_one())
                        .map(|x| x.to_biguint().expect("invariant factors are positive"))
                        .collect()
                })
                .unwrap_or_default();
            DegreeHomology {
                degree: k,
                free_rank: chains - rank_out - rank_in,
                torsion,
            }
        })
        .collect();
    HomologyProfile { dimension: dim, degrees }
}

/// `Σ (-1)^k (#k-faces)` over `k >= 0`.
pub fn euler_characteristic(complex: &SimplicialComplex) -> i64 {
    (0..=complex.dimension())
        .map(|k| {
            let c = complex.face_count(k) as i64;
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum()
}
