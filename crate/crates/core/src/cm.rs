//! The Cohen–Macaulay predicate.
//!
//! A complex of dimension `n` is Cohen–Macaulay when every facet has
//! dimension `n`, its reduced homology is free and concentrated in degree
//! `n`, and for every nonempty non-maximal `k`-face `σ` the reduced homology
//! of `lk σ` is free and concentrated in degree `n - k - 1`.

use serde::Serialize;

use crate::complex::{flag_complex, Simplex, SimplicialComplex};
use crate::graph::SimpleGraph;
use crate::homology::{reduced_homology, HomologyProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CmMode {
    Full,
    PurityOnly,
    PurityAndConnectivity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Obstruction {
    None,
    NonPure,
    GlobalHomology,
    LinkHomology,
    DisconnectedPositiveDim,
}

/// The first offending simplex and/or degree. For `NonPure` the simplex is
/// the first facet below top dimension and `degree` is its dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmWitness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplex: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologyProfile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmVerdict {
    pub is_cm: bool,
    pub dimension: i64,
    pub obstruction: Obstruction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CmWitness>,
}

impl CmVerdict {
    fn pass(dimension: i64) -> Self {
        CmVerdict {
            is_cm: true,
            dimension,
            obstruction: Obstruction::None,
            witness: None,
        }
    }

    fn fail(dimension: i64, obstruction: Obstruction, witness: CmWitness) -> Self {
        CmVerdict {
            is_cm: false,
            dimension,
            obstruction,
            witness: Some(witness),
        }
    }
}

pub fn is_cohen_macaulay(complex: &SimplicialComplex, mode: CmMode) -> CmVerdict {
    let (dim, _) = complex.purity_and_dimension();
    if let Some(low) = complex.facets().iter().find(|f| f.dimension() != dim) {
        return CmVerdict::fail(
            dim,
            Obstruction::NonPure,
            CmWitness {
                simplex: Some(low.vertices().to_vec()),
                degree: Some(low.dimension()),
                homology: None,
            },
        );
    }
    match mode {
        CmMode::PurityOnly => CmVerdict::pass(dim),
        CmMode::PurityAndConnectivity => {
            if dim >= 1 && complex.component_count() > 1 {
                CmVerdict::fail(
                    dim,
                    Obstruction::DisconnectedPositiveDim,
                    CmWitness {
                        simplex: None,
                        degree: Some(0),
                        homology: None,
                    },
                )
            } else {
                CmVerdict::pass(dim)
            }
        }
        CmMode::Full => full_check(complex, dim),
    }
}

fn full_check(complex: &SimplicialComplex, dim: i64) -> CmVerdict {
    let global = reduced_homology(complex);
    if let Some(degree) = global.first_violation(dim) {
        return CmVerdict::fail(
            dim,
            Obstruction::GlobalHomology,
            CmWitness {
                simplex: None,
                degree: Some(degree),
                homology: Some(global),
            },
        );
    }
    for sigma in complex.non_maximal_faces() {
        let (link, _) = complex.link_of_simplex(&sigma).expect("sigma is a face");
        let target = dim - sigma.dimension() - 1;
        let h = reduced_homology(&link);
        if let Some(degree) = h.first_violation(target) {
            return CmVerdict::fail(
                dim,
                Obstruction::LinkHomology,
                CmWitness {
                    simplex: Some(sigma.vertices().to_vec()),
                    degree: Some(degree),
                    homology: Some(h),
                },
            );
        }
    }
    CmVerdict::pass(dim)
}

/// Whether `A_Γ` is a duality group: exactly when the flag complex of `Γ`
/// is Cohen–Macaulay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityVerdict {
    pub is_duality_group: bool,
    pub cm: CmVerdict,
}

pub fn raag_duality_verdict(g: &SimpleGraph) -> DualityVerdict {
    let cm = is_cohen_macaulay(&flag_complex(g), CmMode::Full);
    DualityVerdict {
        is_duality_group: cm.is_cm,
        cm,
    }
}

/// The simplex named by a witness, if any.
pub fn witness_simplex(verdict: &CmVerdict) -> Option<Simplex> {
    verdict.witness.as_ref()?.simplex.clone().map(Simplex::new)
}
