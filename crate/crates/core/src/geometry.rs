//! Cell data of the projective variety `X_T` attached to a tree. `X_T` is
//! a disjoint union of affine cells, one per pruning, whose dimension is
//! the pruning's rank; closure containment follows the pruning order.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::pruning_masks;
use crate::poly::{phi, IntPolynomial};
use crate::tree::PlaneTree;

/// Refuse to list more cells than this.
pub const MAX_CELLS: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// Bitset of preorder ids of the pruning indexing the cell.
    pub pruning: u64,
    pub dimension: usize,
}

#[derive(Clone, Debug)]
pub struct CellComplex<'t> {
    tree: &'t PlaneTree,
    cells: Vec<Cell>,
}

impl<'t> CellComplex<'t> {
    pub fn new(tree: &'t PlaneTree) -> Result<Self> {
        let count = euler_complex(tree);
        if count > BigInt::from(MAX_CELLS) {
            return Err(Error::invalid(format!(
                "{tree} has {count} cells; at most {MAX_CELLS} are listed"
            )));
        }
        let cells = pruning_masks(tree)?
            .into_iter()
            .map(|m| Cell {
                pruning: m,
                dimension: m.count_ones() as usize - 1,
            })
            .collect();
        Ok(CellComplex { tree, cells })
    }

    pub fn tree(&self) -> &'t PlaneTree {
        self.tree
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn dimension(&self) -> usize {
        self.tree.len() - 1
    }

    /// Whether cell `a` lies in the closure of cell `b`.
    pub fn in_closure(&self, a: usize, b: usize) -> bool {
        self.cells[a].pruning & !self.cells[b].pruning == 0
    }

    /// Number of cells of each dimension.
    pub fn cell_counts(&self) -> Vec<u64> {
        let mut counts = vec![0; self.tree.len()];
        for c in &self.cells {
            counts[c.dimension] += 1;
        }
        counts
    }

    /// `Σ q^dim` over the cells.
    pub fn point_count(&self, q: &BigInt) -> BigInt {
        self.cells.iter().map(|c| q.pow(c.dimension as u32)).sum()
    }
}

/// Whether `q` is a power of a single prime, by trial division.
pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut m = q;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub q: u64,
    /// Serialized as a decimal string.
    #[serde(serialize_with = "serialize_bigint")]
    pub points: BigInt,
    pub prime_power: bool,
}

fn serialize_bigint<S: serde::Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `|X_T(F_q)| = φ_T(q)`. With `strict`, `q` must be a prime power;
/// otherwise other values are evaluated and flagged.
pub fn point_count(tree: &PlaneTree, q: u64, strict: bool) -> Result<PointCount> {
    if q < 2 {
        return Err(Error::invalid(format!("q must be at least 2, got {q}")));
    }
    let prime_power = is_prime_power(q);
    if strict && !prime_power {
        return Err(Error::invalid(format!("q = {q} is not a prime power")));
    }
    Ok(PointCount {
        q,
        points: phi(tree).evaluate_int(&BigInt::from(q)),
        prime_power,
    })
}

/// `χ(X_T(R)) = φ_T(-1)`, always 0 or 1.
pub fn euler_real(tree: &PlaneTree) -> Result<u8> {
    let value = phi(tree).evaluate_int(&-BigInt::one());
    if value.is_zero() {
        Ok(0)
    } else if value.is_one() {
        Ok(1)
    } else {
        Err(Error::Internal(format!("phi(-1) = {value} for {tree}")))
    }
}

/// `χ(X_T(C)) = φ_T(1)`, the number of prunings.
pub fn euler_complex(tree: &PlaneTree) -> BigInt {
    phi(tree).evaluate_int(&BigInt::one())
}

/// `φ_T(q²)`: only even-dimensional real cells appear over C.
pub fn poincare_complex(tree: &PlaneTree) -> IntPolynomial {
    phi(tree).compose_q_squared()
}
