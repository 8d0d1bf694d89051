//! Sampling the random event `A_T(q)` whose probability is `φ_T(q)` for
//! `-1 ≤ q ≤ 0`.
//!
//! Starting at the root, a coin landing heads with probability `-q` is
//! flipped for every child. Tails leaves the child alone; heads moves into
//! it, and the event at the current vertex requires the event at every
//! visited child to fail. The vertices reached form a random pruning.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::MAX_PRUNING_VERTICES;
use crate::tree::{PlaneTree, Vertex};

/// Outcome of one run of the coin-flipping procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trial {
    pub occurred: bool,
    /// Bitset over preorder ids of the vertices reached (always contains
    /// the root).
    pub visited: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub occurrences: u64,
}

impl MonteCarloEstimate {
    pub fn frequency(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.occurrences as f64 / self.trials as f64
        }
    }
}

fn check(tree: &PlaneTree, q: f64) -> Result<()> {
    if !(-1.0..=0.0).contains(&q) {
        return Err(Error::invalid(format!("q must lie in [-1, 0], got {q}")));
    }
    if tree.len() > MAX_PRUNING_VERTICES {
        return Err(Error::invalid(format!(
            "sampling supports at most {MAX_PRUNING_VERTICES} vertices, got {}",
            tree.len()
        )));
    }
    Ok(())
}

/// One run of the procedure with heads probability `-q`.
pub fn sample_event<R: Rng + ?Sized>(tree: &PlaneTree, q: f64, rng: &mut R) -> Result<Trial> {
    check(tree, q)?;
    Ok(run(tree, -q, rng))
}

fn run<R: Rng + ?Sized>(tree: &PlaneTree, heads: f64, rng: &mut R) -> Trial {
    let mut visited = 1u64;
    let occurred = visit(tree, 0, heads, rng, &mut visited);
    Trial { occurred, visited }
}

fn visit<R: Rng + ?Sized>(
    tree: &PlaneTree,
    v: Vertex,
    heads: f64,
    rng: &mut R,
    visited: &mut u64,
) -> bool {
    let mut occurred = true;
    for &c in tree.children(v) {
        if rng.random_bool(heads) {
            *visited |= 1 << c;
            if visit(tree, c, heads, rng, visited) {
                occurred = false;
            }
        }
    }
    occurred
}

/// The generator for trial `index`: seeded by `seed` on stream `index`, so
/// results do not depend on how trials are scheduled.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs `trials` independent samples in parallel and counts occurrences.
pub fn estimate_event_probability(
    tree: &PlaneTree,
    q: f64,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    check(tree, q)?;
    let occurrences = (0..trials)
        .into_par_iter()
        .filter(|&k| run(tree, -q, &mut trial_rng(seed, k)).occurred)
        .count() as u64;
    Ok(MonteCarloEstimate {
        trials,
        occurrences,
    })
}
