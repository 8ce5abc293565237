//! Combinatorial and algebraic machinery for deciding when the outer
//! automorphism group of a right-angled Artin group `A_Γ` fails to be a
//! virtual duality group.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: simple graphs, graph6, canonical forms, enumeration, sampling
//! - [`complex`]: flag complexes, faces and links
//! - [`homology`]: exact reduced homology via Smith normal form
//! - [`cm`]: the Cohen–Macaulay predicate and the RAAG duality verdict
//! - [`raag`]: finiteness of `Out(A_Γ)`, centre, ends, join certificates
//! - [`pso`]: partial conjugations, support graphs and the graph Θ
//! - [`words`]: normal forms and automorphisms of `A_Γ` at the word level
//! - [`search`]: the gated search pipeline, scans and fixtures

pub mod complex;
pub mod error;
pub mod homology;
pub mod cm;
pub mod pso;
pub mod raag;
pub mod search;
pub mod words;
pub mod graph;
pub mod par;

pub use error::{Error, Result};
pub use graph::{GraphCode, SimpleGraph, VertexId, VertexSet};
pub use par::Jobs;
