//! Trees, lattices and games around the alternating Stirling sum
//! `a_n = Σ_k (-1)^(k-1) (k-1)! c(n,k)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`perm`]: permutations fixing 1, inversions, first-inversion functions,
//!   213/312 avoidance and separator placements.
//! - [`tree`]: plane trees, labeled/increasing trees, the first-inversion tree
//!   bijection and the eastpush/westpop stack labelings.
//! - [`lattice`]: the distributive lattice of prunings of a tree.
//! - [`poly`]: integer polynomials, the game polynomial and its Monte-Carlo
//!   interpretation.
//! - [`tamari`]: the quotient of the weak order onto the Tamari lattice.
//! - [`game`]: winners of game trees and the increasing-tree census.
//! - [`seq`]: five independent computations of `a_n`.
//! - [`geometry`]: cell-level data of the variety attached to a tree.
//! - [`verify`]: the cross-identity suite used by the `tgk verify` command.

pub mod error;
pub mod game;
pub mod geometry;
pub mod lattice;
pub mod perm;
pub mod poly;
pub mod seq;
pub mod tamari;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use game::Winner;
pub use lattice::{Pruning, PruningLattice};
pub use perm::{FirstInversionFunction, InversionSet, Pattern, Permutation, SeparatorPlacement};
pub use poly::IntPolynomial;
pub use tamari::{Fiber, TamariElement};
pub use tree::{LabeledTree, PlaneTree, RootedTree};

/// Largest `n` for which exhaustive weak-order work (congruence checks,
/// fibers) is attempted: `(n-1)! = 5040` permutations.
pub const WEAK_ORDER_CAP: usize = 8;

/// Largest `n` for which increasing-tree censuses run by default:
/// `(n-1)! = 362_880` trees.
pub const CENSUS_CAP: usize = 10;
