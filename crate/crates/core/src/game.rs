//! Rooted trees as two-player games.
//!
//! A token starts at the root; the player to move pushes it to a child of
//! its current vertex, and a player with no move loses.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::phi;
use crate::tree::{sum_over_parent_vectors, PlaneTree};
use crate::CENSUS_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Winner {
    #[serde(rename = "player1")]
    FirstPlayer,
    #[serde(rename = "player2")]
    SecondPlayer,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::FirstPlayer => "player1",
            Winner::SecondPlayer => "player2",
        })
    }
}

/// For every vertex, whether the player to move from there wins.
fn mover_wins(tree: &PlaneTree) -> Vec<bool> {
    let n = tree.len();
    let mut wins = vec![false; n];
    for v in (0..n).rev() {
        wins[v] = tree.children(v).iter().any(|&c| !wins[c]);
    }
    wins
}

/// Backward induction from the leaves.
pub fn winner(tree: &PlaneTree) -> Winner {
    if mover_wins(tree)[0] {
        Winner::FirstPlayer
    } else {
        Winner::SecondPlayer
    }
}

/// The winner read off from `φ_T(-1)`, which is `1` exactly for
/// second-player wins.
pub fn winner_by_phi(tree: &PlaneTree) -> Result<Winner> {
    let value = phi(tree).evaluate(&-BigRational::one());
    if value.is_zero() {
        Ok(Winner::FirstPlayer)
    } else if value.is_one() {
        Ok(Winner::SecondPlayer)
    } else {
        Err(Error::Internal(format!("phi(-1) = {value} for {tree}")))
    }
}

/// 1-based index of the leftmost root child that leaves the opponent in a
/// losing position, or `None` when the mover cannot win.
pub fn optimal_move(tree: &PlaneTree) -> Option<usize> {
    let wins = mover_wins(tree);
    tree.children(0)
        .iter()
        .position(|&c| !wins[c])
        .map(|k| k + 1)
}

/// Game played on the pruning `mask` (bitset over preorder ids) of `tree`;
/// `scratch` must have length `tree.len()`.
pub(crate) fn second_player_wins_within(tree: &PlaneTree, mask: u64, scratch: &mut [bool]) -> bool {
    for v in (0..tree.len()).rev() {
        if mask >> v & 1 == 1 {
            scratch[v] = tree
                .children(v)
                .iter()
                .any(|&c| mask >> c & 1 == 1 && !scratch[c]);
        }
    }
    !scratch[0]
}

/// Second-player win for the increasing tree where label `k + 2` hangs
/// below label `parents[k]`. `wins` has length `n + 1`.
fn second_player_wins_parents(parents: &[usize], wins: &mut [bool]) -> bool {
    wins.fill(false);
    // Children carry larger labels, so descending order finishes them first.
    for label in (2..=parents.len() + 1).rev() {
        if !wins[label] {
            wins[parents[label - 2]] = true;
        }
    }
    !wins[1]
}

/// Number of increasing trees on `1..=n` won by the second player, for
/// `n` up to the default census cap.
pub fn census_second_player_wins(n: usize) -> Result<BigInt> {
    census_second_player_wins_capped(n, CENSUS_CAP)
}

/// As [`census_second_player_wins`] with an explicit cap. Each step above
/// 10 multiplies the work by `n - 1`.
pub fn census_second_player_wins_capped(n: usize, cap: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::invalid("census needs n >= 1"));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "increasing-tree census",
            n,
            cap,
        });
    }
    let count = sum_over_parent_vectors(
        n,
        || vec![false; n + 1],
        |parents, wins| second_player_wins_parents(parents, wins) as i64,
    )?;
    Ok(BigInt::from(count))
}
