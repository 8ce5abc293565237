//! Seeded Erdős–Rényi sampling.
//!
//! Every sample draws from a ChaCha8 stream keyed by a 64-bit seed. Parallel
//! searches derive the per-sample seed with [`sample_seed`], so a sample's
//! graph depends only on `(master_seed, sample_index)` and never on which
//! worker evaluated it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SimpleGraph;
use crate::error::{Error, Result};

pub type SampleRng = ChaCha8Rng;

/// SplitMix64 finaliser applied to the master seed offset by the sample
/// index times the golden-ratio increment.
pub fn sample_seed(master_seed: u64, sample_index: u64) -> u64 {
    let mut z = master_seed.wrapping_add(sample_index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn seeded_rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p): each of the n(n-1)/2 pairs, visited in lexicographic order,
/// becomes an edge with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<SimpleGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p));
    }
    let mut rng = seeded_rng(seed);
    let mut g = SimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}
