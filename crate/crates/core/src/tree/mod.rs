//! Plane trees, rooted (unordered) trees and labeled trees.
//!
//! A [`PlaneTree`] is stored as child lists over vertices numbered in
//! preorder, so the root is vertex `0` and two plane trees are equal exactly
//! when their child lists are. Text form is balanced parentheses, a leaf
//! being `()`.

mod labeled;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::FirstInversionFunction;

pub use labeled::{
    eastpush, gamma, gamma_inverse, increasing_parent_vectors, increasing_trees, rho, westpop,
    LabeledTree, ParentVectors,
};

pub(crate) use labeled::sum_over_parent_vectors;

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    children: Vec<Vec<Vertex>>,
    parent: Vec<Option<Vertex>>,
}

impl PlaneTree {
    pub fn leaf() -> Self {
        PlaneTree {
            children: vec![vec![]],
            parent: vec![None],
        }
    }

    /// A root whose children are `subtrees`, left to right.
    pub fn node(subtrees: Vec<PlaneTree>) -> Self {
        let n = 1 + subtrees.iter().map(PlaneTree::len).sum::<usize>();
        let mut children = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        children.push(Vec::new());
        parent.push(None);
        for sub in subtrees {
            let offset = children.len();
            children[0].push(offset);
            for (v, kids) in sub.children.into_iter().enumerate() {
                children.push(kids.into_iter().map(|c| c + offset).collect());
                parent.push(Some(sub.parent[v].map_or(0, |p| p + offset)));
            }
        }
        PlaneTree { children, parent }
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(PlaneTree::leaf(), |t, _| PlaneTree::node(vec![t]))
    }

    /// Root with `leaves` leaf children.
    pub fn star(leaves: usize) -> Self {
        PlaneTree::node(vec![PlaneTree::leaf(); leaves])
    }

    /// Builds a plane tree from arbitrary vertex ids and ordered child lists,
    /// renumbering into preorder. Returns the tree and, for each new vertex,
    /// the id it had in `lists`.
    pub(crate) fn from_child_lists(root: usize, lists: &[Vec<usize>]) -> (PlaneTree, Vec<usize>) {
        let mut order = Vec::with_capacity(lists.len());
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(lists[v].iter().rev());
        }
        let mut new_id = vec![usize::MAX; lists.len()];
        for (k, &old) in order.iter().enumerate() {
            new_id[old] = k;
        }
        let mut children = Vec::with_capacity(order.len());
        let mut parent = vec![None; order.len()];
        for (k, &old) in order.iter().enumerate() {
            let kids: Vec<usize> = lists[old].iter().map(|&c| new_id[c]).collect();
            for &c in &kids {
                parent[c] = Some(k);
            }
            children.push(kids);
        }
        (PlaneTree { children, parent }, order)
    }

    /// Child lists whose vertex ids are already in preorder.
    pub(crate) fn from_preorder_children(children: Vec<Vec<Vertex>>) -> Self {
        let mut parent = vec![None; children.len()];
        for (v, kids) in children.iter().enumerate() {
            for &c in kids {
                parent[c] = Some(v);
            }
        }
        PlaneTree { children, parent }
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> Vertex {
        0
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.children[v].is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.len() - 1
    }

    /// Number of vertices in the subtree rooted at each vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for v in (1..self.len()).rev() {
            let p = self.parent[v].unwrap();
            size[p] += size[v];
        }
        size
    }

    /// The subtree rooted at `v` as a standalone tree.
    pub fn subtree(&self, v: Vertex) -> PlaneTree {
        let size = self.subtree_sizes()[v];
        // Preorder numbering makes the subtree the contiguous block v..v+size.
        let children = (v..v + size)
            .map(|u| self.children[u].iter().map(|&c| c - v).collect())
            .collect();
        PlaneTree::from_preorder_children(children)
    }

    /// Subtrees rooted at the root's children, left to right.
    pub fn child_subtrees(&self) -> Vec<PlaneTree> {
        self.children[0].iter().map(|&c| self.subtree(c)).collect()
    }

    /// Postorder traversal: subtrees left to right, then the vertex itself.
    pub fn postorder(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(0usize, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
            } else {
                stack.push((v, true));
                for &c in self.children[v].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    pub fn is_ancestor(&self, a: Vertex, v: Vertex) -> bool {
        let mut cur = self.parent[v];
        while let Some(p) = cur {
            if p == a {
                return true;
            }
            cur = self.parent[p];
        }
        false
    }

    /// `u` is left of `v` iff `u` lies in a subtree rooted at a left sibling
    /// of `v` or of one of `v`'s ancestors.
    pub fn is_left_of(&self, u: Vertex, v: Vertex) -> bool {
        let mut w = v;
        while let Some(p) = self.parent[w] {
            for &s in &self.children[p] {
                if s == w {
                    break;
                }
                if s == u || self.is_ancestor(s, u) {
                    return true;
                }
            }
            w = p;
        }
        false
    }

    /// Parenthesis encoding without separating spaces.
    pub fn compact(&self) -> String {
        let mut out = String::with_capacity(2 * self.len());
        self.write_encoding(0, &mut out, "");
        out
    }

    fn write_encoding(&self, v: Vertex, out: &mut String, sep: &str) {
        out.push('(');
        for (k, &c) in self.children[v].iter().enumerate() {
            if k > 0 {
                out.push_str(sep);
            }
            self.write_encoding(c, out, sep);
        }
        out.push(')');
    }

    /// All plane trees with `n` vertices, `Catalan(n-1)` of them.
    pub fn enumerate(n: usize) -> Vec<PlaneTree> {
        assert!(n >= 1);
        // forests[m]: every ordered forest with m vertices.
        let mut forests: Vec<Vec<Vec<PlaneTree>>> = vec![vec![vec![]]];
        for m in 1..n {
            let mut here = Vec::new();
            for first in 1..=m {
                for head in &forests[first - 1] {
                    let tree = PlaneTree::node(head.clone());
                    for tail in &forests[m - first] {
                        let mut f = Vec::with_capacity(tail.len() + 1);
                        f.push(tree.clone());
                        f.extend(tail.iter().cloned());
                        here.push(f);
                    }
                }
            }
            forests.push(here);
        }
        forests[n - 1]
            .iter()
            .map(|f| PlaneTree::node(f.clone()))
            .collect()
    }

    /// A random recursive tree on `n` vertices (vertex `k` attaches to a
    /// uniform earlier vertex) with every child list shuffled.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PlaneTree {
        assert!(n >= 1);
        let mut lists = vec![Vec::new(); n];
        for v in 1..n {
            let p = rng.random_range(0..v);
            lists[p].push(v);
        }
        for l in &mut lists {
            l.shuffle(rng);
        }
        PlaneTree::from_child_lists(0, &lists).0
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::with_capacity(3 * self.len());
        self.write_encoding(0, &mut out, " ");
        f.write_str(&out)
    }
}

impl FromStr for PlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::plane_tree(s)
    }
}

/// Recovers the plane tree whose postorder realizes `t`: the vertex at
/// postorder position `i - 1` hangs below the vertex at position `t(i) - 1`,
/// position `n` being the root.
pub fn tree_from_fif(t: &FirstInversionFunction) -> Result<PlaneTree> {
    let n = t.n();
    // Vertices are postorder positions 0..n (0-based), root = n - 1.
    let mut lists = vec![Vec::new(); n];
    for i in 2..=n {
        lists[t.get(i) - 2].push(i - 2);
    }
    let (tree, old_id) = PlaneTree::from_child_lists(n - 1, &lists);
    if old_id.contains(&usize::MAX) || tree.len() != n {
        return Err(Error::invalid(format!("{t} does not describe a tree")));
    }
    let post = tree.postorder();
    if post.iter().enumerate().any(|(k, &v)| old_id[v] != k) {
        return Err(Error::invalid(format!(
            "{t} is not a first-inversion function"
        )));
    }
    Ok(tree)
}

/// First-inversion function read off a plane tree's postorder.
pub fn fif_of_tree(tree: &PlaneTree) -> FirstInversionFunction {
    let n = tree.len();
    let post = tree.postorder();
    let mut position = vec![0; n];
    for (k, &v) in post.iter().enumerate() {
        position[v] = k + 1;
    }
    let mut targets = Vec::with_capacity(n);
    for &v in &post[..n - 1] {
        targets.push(position[tree.parent(v).unwrap()] + 1);
    }
    targets.push(n + 1);
    FirstInversionFunction::new(n, targets).expect("postorder parents never cross")
}

/// A rooted tree without child order, held in canonical form: children are
/// sorted by their compact encodings, shorter first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree(PlaneTreeByEncoding);

// Orders canonical trees by (encoding length, encoding).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct PlaneTreeByEncoding {
    encoding: String,
    tree: PlaneTree,
}

impl PartialOrd for PlaneTreeByEncoding {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PlaneTreeByEncoding {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        encoding_order(&self.encoding, &other.encoding)
    }
}

fn encoding_order(a: &str, b: &str) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl RootedTree {
    pub fn as_plane(&self) -> &PlaneTree {
        &self.0.tree
    }

    pub fn into_plane(self) -> PlaneTree {
        self.0.tree
    }

    /// Compact canonical encoding.
    pub fn encoding(&self) -> &str {
        &self.0.encoding
    }

    pub fn len(&self) -> usize {
        self.0.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every rooted tree on `n` vertices up to isomorphism, in canonical
    /// order.
    pub fn enumerate(n: usize) -> Vec<RootedTree> {
        let set: BTreeSet<RootedTree> = PlaneTree::enumerate(n).iter().map(canonicalize).collect();
        set.into_iter().collect()
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.tree.fmt(f)
    }
}

impl FromStr for RootedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(canonicalize(&s.parse()?))
    }
}

/// Sorts children everywhere by canonical encoding.
pub fn canonicalize(tree: &PlaneTree) -> RootedTree {
    let n = tree.len();
    let mut enc = vec![String::new(); n];
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
    // Children carry larger preorder ids than their parent.
    for v in (0..n).rev() {
        let mut kids = tree.children(v).to_vec();
        kids.sort_by(|&a, &b| encoding_order(&enc[a], &enc[b]));
        let mut e = String::with_capacity(2);
        e.push('(');
        for &c in &kids {
            e.push_str(&enc[c]);
        }
        e.push(')');
        enc[v] = e;
        lists[v] = kids;
    }
    let (canon, _) = PlaneTree::from_child_lists(0, &lists);
    RootedTree(PlaneTreeByEncoding {
        encoding: std::mem::take(&mut enc[0]),
        tree: canon,
    })
}

/// Catalan number `C_m`, as u64 (exact for `m <= 33`).
pub fn catalan(m: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..m as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
