//! The lattice `L_T` of prunings of a tree.
//!
//! A pruning keeps the root and a parent-closed set of other vertices. It is
//! stored as a bitset over the base tree's preorder numbering, so join and
//! meet are union and intersection.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{valid_separator_placements, Permutation};
use crate::poly::IntPolynomial;
use crate::tree::{gamma, PlaneTree};

/// Largest tree whose prunings fit the bitset representation.
pub const MAX_PRUNING_VERTICES: usize = 64;

/// Largest tree for which the full Hasse diagram is materialized.
pub const MAX_HASSE_VERTICES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pruning<'t> {
    base: &'t PlaneTree,
    vertices: u64,
}

impl<'t> Pruning<'t> {
    /// Wraps a vertex bitset, checking that it holds the root and is closed
    /// under taking parents.
    pub fn new(base: &'t PlaneTree, vertices: u64) -> Result<Self> {
        if base.len() > MAX_PRUNING_VERTICES {
            return Err(Error::invalid(format!(
                "prunings need at most {MAX_PRUNING_VERTICES} vertices"
            )));
        }
        if !is_parent_closed(base, vertices) {
            return Err(Error::invalid(format!("{vertices:#x} is not a pruning")));
        }
        Ok(Pruning { base, vertices })
    }

    pub fn root_only(base: &'t PlaneTree) -> Self {
        Pruning { base, vertices: 1 }
    }

    pub fn full(base: &'t PlaneTree) -> Self {
        assert!(base.len() <= MAX_PRUNING_VERTICES);
        Pruning {
            base,
            vertices: full_mask(base.len()),
        }
    }

    pub fn base(&self) -> &'t PlaneTree {
        self.base
    }

    pub fn bits(&self) -> u64 {
        self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices >> v & 1 == 1
    }

    /// Number of edges kept.
    pub fn rank(&self) -> usize {
        self.vertices.count_ones() as usize - 1
    }

    /// Number of prunings covering this one: vertices outside it whose
    /// parent is inside.
    pub fn covers(&self) -> usize {
        (1..self.base.len())
            .filter(|&v| !self.contains(v) && self.contains(self.base.parent(v).unwrap()))
            .count()
    }

    pub fn join(&self, other: &Pruning<'t>) -> Pruning<'t> {
        debug_assert!(std::ptr::eq(self.base, other.base));
        Pruning {
            base: self.base,
            vertices: self.vertices | other.vertices,
        }
    }

    pub fn meet(&self, other: &Pruning<'t>) -> Pruning<'t> {
        debug_assert!(std::ptr::eq(self.base, other.base));
        Pruning {
            base: self.base,
            vertices: self.vertices & other.vertices,
        }
    }

    pub fn leq(&self, other: &Pruning<'t>) -> bool {
        self.vertices & other.vertices == self.vertices
    }

    /// The pruned tree as a plane tree, keeping the base child order.
    pub fn to_plane_tree(&self) -> PlaneTree {
        let n = self.base.len();
        let mut lists = vec![Vec::new(); n];
        for (v, list) in lists.iter_mut().enumerate() {
            if self.contains(v) {
                list.extend(
                    self.base
                        .children(v)
                        .iter()
                        .copied()
                        .filter(|&c| self.contains(c)),
                );
            }
        }
        PlaneTree::from_child_lists(0, &lists).0
    }

    /// Hex form of the vertex bitset.
    pub fn to_hex(&self) -> String {
        format!("{:x}", self.vertices)
    }

    fn write(&self, v: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", v + 1)?;
        let kids: Vec<usize> = self
            .base
            .children(v)
            .iter()
            .copied()
            .filter(|&c| self.contains(c))
            .collect();
        if !kids.is_empty() {
            f.write_str("(")?;
            for (k, &c) in kids.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                self.write(c, f)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Labeled-tree text with base vertices labeled by preorder index + 1.
impl fmt::Display for Pruning<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(0, f)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn is_parent_closed(base: &PlaneTree, vertices: u64) -> bool {
    let n = base.len();
    if vertices & 1 == 0 || vertices & !full_mask(n) != 0 {
        return false;
    }
    (1..n).all(|v| vertices >> v & 1 == 0 || vertices >> base.parent(v).unwrap() & 1 == 1)
}

/// Every pruning of `tree`, ordered by rank and then by bitset.
pub fn enumerate_prunings(tree: &PlaneTree) -> Result<Vec<Pruning<'_>>> {
    let masks = pruning_masks(tree)?;
    Ok(masks
        .into_iter()
        .map(|vertices| Pruning {
            base: tree,
            vertices,
        })
        .collect())
}

pub(crate) fn pruning_masks(tree: &PlaneTree) -> Result<Vec<u64>> {
    let n = tree.len();
    if n > MAX_PRUNING_VERTICES {
        return Err(Error::invalid(format!(
            "pruning enumeration needs at most {MAX_PRUNING_VERTICES} vertices, got {n}"
        )));
    }
    // Decide vertices in preorder; a vertex may join only if its parent did.
    let mut out = Vec::new();
    let mut stack = vec![(1usize, 1u64)];
    while let Some((v, mask)) = stack.pop() {
        if v == n {
            out.push(mask);
            continue;
        }
        stack.push((v + 1, mask));
        if mask >> tree.parent(v).unwrap() & 1 == 1 {
            stack.push((v + 1, mask | 1 << v));
        }
    }
    out.sort_by_key(|&m| (m.count_ones(), m));
    Ok(out)
}

/// `Σ q^rank` over prunings, by enumeration when the tree is small enough
/// and through the product over root subtrees otherwise.
pub fn rank_generating_function(tree: &PlaneTree) -> IntPolynomial {
    if tree.len() <= MAX_HASSE_VERTICES {
        rank_generating_function_by_enumeration(tree).expect("small tree")
    } else {
        crate::poly::phi(tree)
    }
}

/// `Σ q^rank` by listing every pruning.
pub fn rank_generating_function_by_enumeration(tree: &PlaneTree) -> Result<IntPolynomial> {
    let mut counts = vec![0u64; tree.len()];
    for m in pruning_masks(tree)? {
        counts[m.count_ones() as usize - 1] += 1;
    }
    Ok(IntPolynomial::from_coefficients(counts))
}

/// Number of prunings at each rank.
pub fn rank_counts(tree: &PlaneTree) -> Result<Vec<usize>> {
    let mut counts = vec![0; tree.len()];
    for m in pruning_masks(tree)? {
        counts[m.count_ones() as usize - 1] += 1;
    }
    Ok(counts)
}

/// `L_T` with its Hasse diagram.
#[derive(Clone, Debug)]
pub struct PruningLattice<'t> {
    base: &'t PlaneTree,
    elements: Vec<u64>,
    index: HashMap<u64, usize>,
    upper_covers: Vec<Vec<usize>>,
}

impl<'t> PruningLattice<'t> {
    pub fn new(base: &'t PlaneTree) -> Result<Self> {
        if base.len() > MAX_HASSE_VERTICES {
            return Err(Error::invalid(format!(
                "Hasse diagram is only built for trees with at most {MAX_HASSE_VERTICES} vertices"
            )));
        }
        let elements = pruning_masks(base)?;
        let index: HashMap<u64, usize> =
            elements.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        let upper_covers = elements
            .iter()
            .map(|&m| {
                (1..base.len())
                    .filter(|&v| m >> v & 1 == 0 && m >> base.parent(v).unwrap() & 1 == 1)
                    .map(|v| index[&(m | 1 << v)])
                    .collect()
            })
            .collect();
        Ok(PruningLattice {
            base,
            elements,
            index,
            upper_covers,
        })
    }

    pub fn base(&self) -> &'t PlaneTree {
        self.base
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, k: usize) -> Pruning<'t> {
        Pruning {
            base: self.base,
            vertices: self.elements[k],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Pruning<'t>> + '_ {
        (0..self.len()).map(|k| self.element(k))
    }

    pub fn index_of(&self, p: &Pruning<'_>) -> Option<usize> {
        self.index.get(&p.vertices).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.elements[k].count_ones() as usize - 1
    }

    /// Indices of the elements covering element `k`.
    pub fn upper_covers(&self, k: usize) -> &[usize] {
        &self.upper_covers[k]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.index[&(self.elements[a] | self.elements[b])]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index[&(self.elements[a] & self.elements[b])]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a] & self.elements[b] == self.elements[a]
    }

    pub fn rank_generating_function(&self) -> IntPolynomial {
        let mut counts = vec![0u64; self.base.len()];
        for k in 0..self.len() {
            counts[self.rank(k)] += 1;
        }
        IntPolynomial::from_coefficients(counts)
    }

    /// Checks `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` and its dual on every triple.
    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c))
                    {
                        return false;
                    }
                    if self.join(a, self.meet(b, c)) != self.meet(self.join(a, b), self.join(a, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Checks that sending a separator set `S` to the pruning of `gamma(p)` on
/// labels `{p(i) : i ∈ S} ∪ {1}` is a rank-preserving order isomorphism from
/// the valid separator placements of `p` onto the prunings of `gamma(p)`.
pub fn lattice_iso_check(p: &Permutation) -> bool {
    let tree = gamma(p);
    let shape = tree.shape();
    if shape.len() > MAX_PRUNING_VERTICES {
        return false;
    }
    let mut vertex_of_label = vec![0; p.len() + 1];
    for v in 0..shape.len() {
        vertex_of_label[tree.label(v)] = v;
    }
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for placement in valid_separator_placements(p) {
        let mut sep_bits = 0u64;
        let mut image = 1u64;
        for &i in &placement.separators {
            sep_bits |= 1 << (i - 2);
            image |= 1 << vertex_of_label[p.at(i)];
        }
        if !is_parent_closed(shape, image) || image.count_ones() as usize - 1 != placement.rank() {
            return false;
        }
        pairs.push((sep_bits, image));
    }
    let Ok(prunings) = pruning_masks(shape) else {
        return false;
    };
    let mut images: Vec<u64> = pairs.iter().map(|&(_, m)| m).collect();
    images.sort_unstable();
    images.dedup();
    if images.len() != pairs.len() || images.len() != prunings.len() {
        return false;
    }
    pairs
        .iter()
        .all(|&(s, a)| pairs.iter().all(|&(t, b)| (s & t == s) == (a & b == a)))
}
