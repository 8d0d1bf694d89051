use std::fmt;
use std::str::FromStr;

use super::{parse, PlaneTree, Vertex};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A plane tree with a bijective labeling of its vertices by `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    shape: PlaneTree,
    // labels[v] for preorder vertex v
    labels: Vec<usize>,
}

impl LabeledTree {
    pub fn new(shape: PlaneTree, labels: Vec<usize>) -> Result<Self> {
        let n = shape.len();
        if labels.len() != n {
            return Err(Error::invalid(format!(
                "{} labels for {n} vertices",
                labels.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &l in &labels {
            if l == 0 || l > n || std::mem::replace(&mut seen[l], true) {
                return Err(Error::invalid(format!("labels must be exactly 1..={n}")));
            }
        }
        Ok(LabeledTree { shape, labels })
    }

    /// Tree on labels `1..=n` rooted at 1 where `parents[k]` is the parent
    /// of label `k + 2`. Children are ordered by increasing label.
    pub fn from_parents(parents: &[usize]) -> Result<Self> {
        let n = parents.len() + 1;
        let mut lists = vec![Vec::new(); n];
        for (k, &p) in parents.iter().enumerate() {
            let label = k + 2;
            if p == 0 || p > n || p == label {
                return Err(Error::invalid(format!("bad parent {p} for label {label}")));
            }
            lists[p - 1].push(label - 1);
        }
        let (shape, old) = PlaneTree::from_child_lists(0, &lists);
        if shape.len() != n {
            return Err(Error::invalid("parent array contains a cycle"));
        }
        Ok(LabeledTree {
            shape,
            labels: old.into_iter().map(|v| v + 1).collect(),
        })
    }

    pub fn shape(&self) -> &PlaneTree {
        &self.shape
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, v: Vertex) -> usize {
        self.labels[v]
    }

    pub fn vertex_of(&self, label: usize) -> Vertex {
        self.labels
            .iter()
            .position(|&l| l == label)
            .expect("label in range")
    }

    /// Parent label of each label, indexed by label (entry 0 unused,
    /// `None` for the root).
    pub fn parent_labels(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.len() + 1];
        for v in 1..self.len() {
            out[self.labels[v]] = self.shape.parent(v).map(|p| self.labels[p]);
        }
        out
    }

    /// Every non-root label exceeds its parent's label.
    pub fn is_increasing(&self) -> bool {
        (1..self.len()).all(|v| self.labels[v] > self.labels[self.shape.parent(v).unwrap()])
    }

    /// Children of every vertex appear in increasing label order.
    pub fn has_sorted_children(&self) -> bool {
        (0..self.len()).all(|v| {
            self.shape
                .children(v)
                .windows(2)
                .all(|w| self.labels[w[0]] < self.labels[w[1]])
        })
    }

    /// Same labeled tree with children reordered by increasing label.
    pub fn sorted(&self) -> LabeledTree {
        let lists: Vec<Vec<usize>> = (0..self.len())
            .map(|v| {
                let mut kids = self.shape.children(v).to_vec();
                kids.sort_by_key(|&c| self.labels[c]);
                kids
            })
            .collect();
        let (shape, old) = PlaneTree::from_child_lists(0, &lists);
        let labels = old.iter().map(|&v| self.labels[v]).collect();
        LabeledTree { shape, labels }
    }

    fn write(&self, v: Vertex, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.labels[v])?;
        let kids = self.shape.children(v);
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

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(0, f)
    }
}

impl FromStr for LabeledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::labeled_tree(s)
    }
}

/// First-inversion tree: the parent of label `p(i)` is `p(t(i))` when the
/// first inversion from position `i` exists, and 1 otherwise.
pub fn gamma(p: &Permutation) -> LabeledTree {
    let n = p.len();
    let t = p.first_inversion_function();
    let mut parents = vec![0; n.saturating_sub(1)];
    for i in 2..=n {
        let target = t.get(i);
        parents[p.at(i) - 2] = if target <= n { p.at(target) } else { 1 };
    }
    LabeledTree::from_parents(&parents).expect("first-inversion parents form an increasing tree")
}

/// Inverse of [`gamma`]: `p(1) = 1` and `p(i)` is the label of the
/// `(i-1)`-th vertex in postorder of the label-sorted tree.
pub fn gamma_inverse(tree: &LabeledTree) -> Result<Permutation> {
    if tree.label(0) != 1 {
        return Err(Error::invalid("root must be labeled 1"));
    }
    if !tree.is_increasing() {
        return Err(Error::invalid(format!("{tree} is not an increasing tree")));
    }
    let sorted = tree.sorted();
    let post = sorted.shape().postorder();
    let mut values = Vec::with_capacity(tree.len());
    values.push(1);
    values.extend(post[..post.len() - 1].iter().map(|&v| sorted.label(v)));
    Permutation::new(values)
}

/// Plane tree obtained by ordering children by increasing label.
pub fn rho(tree: &LabeledTree) -> PlaneTree {
    tree.sorted().shape
}

/// Labels vertices as they are pushed: pop a vertex, push its children
/// left to right, each receiving the next label.
pub fn eastpush(tree: &PlaneTree) -> LabeledTree {
    let mut labels = vec![0; tree.len()];
    let mut next = 1;
    let mut stack = vec![tree.root()];
    labels[tree.root()] = next;
    next += 1;
    while let Some(v) = stack.pop() {
        for &c in tree.children(v) {
            stack.push(c);
            labels[c] = next;
            next += 1;
        }
    }
    LabeledTree {
        shape: tree.clone(),
        labels,
    }
}

/// Labels vertices as they are popped, pushing children right to left.
pub fn westpop(tree: &PlaneTree) -> LabeledTree {
    let mut labels = vec![0; tree.len()];
    let mut next = 1;
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        labels[v] = next;
        next += 1;
        for &c in tree.children(v).iter().rev() {
            stack.push(c);
        }
    }
    LabeledTree {
        shape: tree.clone(),
        labels,
    }
}

/// Parent-choice vectors of increasing trees on `1..=n`: label `i` picks
/// its parent among `1..i`, giving `(n-1)!` vectors in lexicographic order.
/// Entry `k` of each vector is the parent of label `k + 2`.
pub fn increasing_parent_vectors(n: usize) -> ParentVectors {
    assert!(n >= 1);
    ParentVectors {
        next: Some(vec![1; n - 1]),
    }
}

pub struct ParentVectors {
    next: Option<Vec<usize>>,
}

impl Iterator for ParentVectors {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Mixed radix increment; entry k ranges over 1..=k+1.
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if succ[k] < k + 1 {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = 1;
        }
        Some(current)
    }
}

/// The `index`-th parent vector in [`increasing_parent_vectors`] order,
/// written into `out` (length `n - 1`).
pub(crate) fn decode_parent_vector(mut index: u64, out: &mut [usize]) {
    for k in (0..out.len()).rev() {
        let radix = (k + 1) as u64;
        out[k] = (index % radix) as usize + 1;
        index /= radix;
    }
}

/// Sums `f` over every parent vector of size `n` in parallel. Each worker
/// owns a scratch value built by `scratch`; the result does not depend on
/// scheduling.
pub(crate) fn sum_over_parent_vectors<S, M, F>(n: usize, scratch: M, f: F) -> Result<i64>
where
    S: Send,
    M: Fn() -> S + Sync + Send,
    F: Fn(&[usize], &mut S) -> i64 + Sync + Send,
{
    use rayon::prelude::*;
    let total = (1..n as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .ok_or_else(|| Error::invalid(format!("({n}-1)! does not fit in 64 bits")))?;
    Ok((0..total)
        .into_par_iter()
        .fold(
            || (0i64, vec![0usize; n - 1], scratch()),
            |(acc, mut parents, mut s), index| {
                decode_parent_vector(index, &mut parents);
                let value = f(&parents, &mut s);
                (acc + value, parents, s)
            },
        )
        .map(|(acc, _, _)| acc)
        .sum())
}

/// All increasing trees on `1..=n`, children sorted by label.
pub fn increasing_trees(n: usize) -> impl Iterator<Item = LabeledTree> {
    increasing_parent_vectors(n)
        .map(|p| LabeledTree::from_parents(&p).expect("valid parent vector"))
}
