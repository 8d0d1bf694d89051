//! The Tamari lattice as a quotient of the weak order on permutations
//! fixing 1.
//!
//! Two permutations are identified when their first-inversion trees have
//! the same shape after sorting children, which happens exactly when they
//! share a first-inversion function. Classes are keyed by that function.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{enumerate_s1xsn, FirstInversionFunction, Pattern, Permutation};
use crate::tree::{
    catalan, eastpush, fif_of_tree, gamma, gamma_inverse, rho, tree_from_fif, westpop, PlaneTree,
};
use crate::verify::{Check, Report};
use crate::WEAK_ORDER_CAP;

/// One class of the quotient.
#[derive(Clone, Debug)]
pub struct TamariElement {
    fif: FirstInversionFunction,
    tree: PlaneTree,
}

impl PartialEq for TamariElement {
    fn eq(&self, other: &Self) -> bool {
        self.fif == other.fif
    }
}

impl Eq for TamariElement {}

impl std::hash::Hash for TamariElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.fif.hash(state);
    }
}

impl TamariElement {
    pub fn from_tree(tree: &PlaneTree) -> Self {
        TamariElement {
            fif: fif_of_tree(tree),
            tree: tree.clone(),
        }
    }

    pub fn from_fif(fif: FirstInversionFunction) -> Result<Self> {
        let tree = tree_from_fif(&fif)?;
        Ok(TamariElement { fif, tree })
    }

    /// The class of `p`.
    pub fn from_permutation(p: &Permutation) -> Self {
        TamariElement {
            fif: p.first_inversion_function(),
            tree: rho(&gamma(p)),
        }
    }

    pub fn n(&self) -> usize {
        self.tree.len()
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn fif(&self) -> &FirstInversionFunction {
        &self.fif
    }

    /// The 213-avoiding maximum of the class.
    pub fn top(&self) -> Permutation {
        gamma_inverse(&eastpush(&self.tree)).expect("eastpush labels increasingly from 1")
    }

    /// The 312-avoiding minimum of the class.
    pub fn bottom(&self) -> Permutation {
        gamma_inverse(&westpop(&self.tree)).expect("westpop labels increasingly from 1")
    }
}

impl fmt::Display for TamariElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tree.fmt(f)
    }
}

/// All permutations mapping to one plane tree.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub tree: PlaneTree,
    /// Lexicographically sorted.
    pub members: Vec<Permutation>,
    pub top: Permutation,
    pub bottom: Permutation,
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if n > cap {
        return Err(Error::CapExceeded { what, n, cap });
    }
    Ok(())
}

/// Lists the fiber over `tree` by scanning every permutation of the same size.
pub fn fiber(tree: &PlaneTree) -> Result<Fiber> {
    fiber_capped(tree, WEAK_ORDER_CAP)
}

pub fn fiber_capped(tree: &PlaneTree, cap: usize) -> Result<Fiber> {
    check_cap("fiber enumeration", tree.len(), cap)?;
    let element = TamariElement::from_tree(tree);
    let members: Vec<Permutation> = enumerate_s1xsn(tree.len())?
        .filter(|p| p.first_inversion_function() == element.fif)
        .collect();
    let (top, bottom) = (element.top(), element.bottom());
    if members.binary_search(&top).is_err() || members.binary_search(&bottom).is_err() {
        return Err(Error::Internal(format!(
            "fiber extremes of {tree} fall outside the fiber"
        )));
    }
    Ok(Fiber {
        tree: tree.clone(),
        members,
        top,
        bottom,
    })
}

fn same_size(a: &TamariElement, b: &TamariElement) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::invalid(format!(
            "elements have different sizes {} and {}",
            a.n(),
            b.n()
        )));
    }
    Ok(())
}

fn rebuild(n: usize, targets: Vec<usize>, what: &str) -> Result<TamariElement> {
    let fif = FirstInversionFunction::new(n, targets).map_err(|e| {
        Error::Internal(format!(
            "{what} produced an invalid first-inversion function: {e}"
        ))
    })?;
    TamariElement::from_fif(fif)
}

/// Pointwise minimum of the first-inversion functions.
pub fn tamari_join(a: &TamariElement, b: &TamariElement) -> Result<TamariElement> {
    same_size(a, b)?;
    let targets = a
        .fif
        .targets()
        .iter()
        .zip(b.fif.targets())
        .map(|(&x, &y)| x.min(y))
        .collect();
    rebuild(a.n(), targets, "join")
}

/// At each `i`, the least value common to the orbits of `i` under both
/// functions.
pub fn tamari_meet(a: &TamariElement, b: &TamariElement) -> Result<TamariElement> {
    same_size(a, b)?;
    let n = a.n();
    let targets = (2..=n + 1)
        .map(|i| {
            let other = b.fif.orbit(i);
            a.fif
                .orbit(i)
                .into_iter()
                .filter(|j| other.contains(j))
                .min()
                .expect("both orbits end at n + 1")
        })
        .collect();
    rebuild(n, targets, "meet")
}

pub fn tamari_leq(a: &TamariElement, b: &TamariElement) -> Result<bool> {
    Ok(tamari_join(a, b)? == *b)
}

/// Every class for trees on `n` vertices, in plane-tree enumeration order.
pub fn tamari_elements(n: usize) -> Vec<TamariElement> {
    PlaneTree::enumerate(n)
        .iter()
        .map(TamariElement::from_tree)
        .collect()
}

/// All permutations of size `n` with their inversion bitsets.
struct WeakOrder {
    perms: Vec<Permutation>,
    bits: Vec<u128>,
}

impl WeakOrder {
    fn new(n: usize) -> Result<Self> {
        let perms: Vec<Permutation> = enumerate_s1xsn(n)?.collect();
        let bits = perms.iter().map(Permutation::inversion_bits).collect();
        Ok(WeakOrder { perms, bits })
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.bits[x] & !self.bits[y] == 0
    }
}

/// The quotient poset built directly from the weak order: class `X` lies
/// below `Y` when some member of `X` lies below some member of `Y`, closed
/// transitively.
pub struct QuotientOracle {
    elements: Vec<TamariElement>,
    index: HashMap<FirstInversionFunction, usize>,
    below: Vec<Vec<bool>>,
}

impl QuotientOracle {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, WEAK_ORDER_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        check_cap("quotient poset", n, cap)?;
        let weak = WeakOrder::new(n)?;
        Ok(Self::from_weak_order(&weak))
    }

    fn from_weak_order(weak: &WeakOrder) -> Self {
        let mut index = HashMap::new();
        let mut elements = Vec::new();
        let class_of: Vec<usize> = weak
            .perms
            .iter()
            .map(|p| {
                let fif = p.first_inversion_function();
                *index.entry(fif).or_insert_with(|| {
                    elements.push(TamariElement::from_permutation(p));
                    elements.len() - 1
                })
            })
            .collect();
        let m = elements.len();
        let mut below = vec![vec![false; m]; m];
        for x in 0..weak.perms.len() {
            for y in 0..weak.perms.len() {
                if weak.leq(x, y) {
                    below[class_of[x]][class_of[y]] = true;
                }
            }
        }
        for k in 0..m {
            let through = below[k].clone();
            for row in below.iter_mut().filter(|row| row[k]) {
                for (cell, &reach) in row.iter_mut().zip(&through) {
                    *cell |= reach;
                }
            }
        }
        QuotientOracle {
            elements,
            index,
            below,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[TamariElement] {
        &self.elements
    }

    pub fn index_of(&self, e: &TamariElement) -> Option<usize> {
        self.index.get(&e.fif).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    /// Whether the relation is antisymmetric, i.e. a partial order.
    pub fn is_antisymmetric(&self) -> bool {
        (0..self.len())
            .all(|i| (0..self.len()).all(|j| i == j || !(self.below[i][j] && self.below[j][i])))
    }

    /// The least common upper bound, if one exists.
    pub fn lub(&self, i: usize, j: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.len())
            .filter(|&k| self.below[i][k] && self.below[j][k])
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&u| uppers.iter().all(|&v| self.below[u][v]))
    }

    /// The greatest common lower bound, if one exists.
    pub fn glb(&self, i: usize, j: usize) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.len())
            .filter(|&k| self.below[k][i] && self.below[k][j])
            .collect();
        lowers
            .iter()
            .copied()
            .find(|&l| lowers.iter().all(|&v| self.below[v][l]))
    }

    /// Cover relations `(lower, upper)`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i != j
                    && self.below[i][j]
                    && !(0..m).any(|k| k != i && k != j && self.below[i][k] && self.below[k][j])
                {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// Whether the quotient on `n` vertices is the pentagon: five elements,
/// five cover relations, bottom and top joined by chains of lengths 2 and 3.
pub fn is_pentagon(oracle: &QuotientOracle) -> bool {
    if oracle.len() != 5 || !oracle.is_antisymmetric() {
        return false;
    }
    let edges = oracle.hasse_edges();
    if edges.len() != 5 {
        return false;
    }
    let Some(bottom) = (0..5).find(|&i| (0..5).all(|j| oracle.leq(i, j))) else {
        return false;
    };
    let Some(top) = (0..5).find(|&i| (0..5).all(|j| oracle.leq(j, i))) else {
        return false;
    };
    let middle: Vec<usize> = (0..5).filter(|&k| k != bottom && k != top).collect();
    let comparable_pairs = middle
        .iter()
        .flat_map(|&a| middle.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a != b && oracle.leq(a, b))
        .count();
    comparable_pairs == 1
}

fn fail_list<T: fmt::Display>(items: &[T]) -> String {
    let shown: Vec<String> = items.iter().take(3).map(ToString::to_string).collect();
    format!("{} violations, e.g. {}", items.len(), shown.join("; "))
}

/// The congruence conditions on `S_1 × S_{n-1}`: every class is an interval
/// with 213-avoiding top and 312-avoiding bottom, and sending a permutation
/// to the top (or bottom) of its class preserves the weak order.
pub fn verify_congruence(n: usize) -> Result<Report> {
    verify_congruence_capped(n, WEAK_ORDER_CAP)
}

pub fn verify_congruence_capped(n: usize, cap: usize) -> Result<Report> {
    check_cap("congruence verification", n, cap)?;
    let weak = WeakOrder::new(n)?;
    let size = weak.perms.len();
    let mut classes: BTreeMap<FirstInversionFunction, Vec<usize>> = BTreeMap::new();
    for (k, p) in weak.perms.iter().enumerate() {
        classes
            .entry(p.first_inversion_function())
            .or_default()
            .push(k);
    }
    let position: HashMap<&Permutation, usize> =
        weak.perms.iter().enumerate().map(|(k, p)| (p, k)).collect();

    let mut report = Report::new();
    report.push(Check::new(
        "tamari.fiber_count",
        classes.len() as u64 == catalan(n - 1),
        format!(
            "n={n}: {} classes, Catalan({}) = {}",
            classes.len(),
            n - 1,
            catalan(n - 1)
        ),
    ));

    let mut top_of = vec![0usize; size];
    let mut bottom_of = vec![0usize; size];
    let mut interval_failures = Vec::new();
    let mut extreme_failures = Vec::new();
    for (fif, members) in &classes {
        let element = TamariElement::from_fif(fif.clone())?;
        let top = position[&element.top()];
        let bottom = position[&element.bottom()];
        if !weak.perms[top].avoids(Pattern::P213)
            || !weak.perms[bottom].avoids(Pattern::P312)
            || weak.perms[top].first_inversion_function() != *fif
            || weak.perms[bottom].first_inversion_function() != *fif
        {
            extreme_failures.push(element.tree().to_string());
        }
        let in_interval: Vec<usize> = (0..size)
            .filter(|&w| weak.leq(bottom, w) && weak.leq(w, top))
            .collect();
        if in_interval != *members {
            interval_failures.push(element.tree().to_string());
        }
        for &m in members {
            top_of[m] = top;
            bottom_of[m] = bottom;
        }
    }
    report.push(Check::new(
        "tamari.fiber_extremes",
        extreme_failures.is_empty(),
        if extreme_failures.is_empty() {
            format!("n={n}: every class has a 213-avoiding top and 312-avoiding bottom inside it")
        } else {
            fail_list(&extreme_failures)
        },
    ));
    report.push(Check::new(
        "tamari.fibers_are_intervals",
        interval_failures.is_empty(),
        if interval_failures.is_empty() {
            format!("n={n}: {} classes equal [bottom, top]", classes.len())
        } else {
            fail_list(&interval_failures)
        },
    ));

    for (name, proj) in [
        ("tamari.pi_up_order_preserving", &top_of),
        ("tamari.pi_down_order_preserving", &bottom_of),
    ] {
        let bad: Vec<String> = (0..size)
            .into_par_iter()
            .flat_map_iter(|x| {
                let weak = &weak;
                (0..size)
                    .filter(move |&y| weak.leq(x, y) && !weak.leq(proj[x], proj[y]))
                    .map(move |y| format!("{} <= {}", weak.perms[x], weak.perms[y]))
            })
            .collect();
        report.push(Check::new(
            name,
            bad.is_empty(),
            if bad.is_empty() {
                format!("n={n}: all comparable pairs of {size} permutations")
            } else {
                fail_list(&bad)
            },
        ));
    }
    Ok(report)
}

/// Compares the first-inversion-function join and meet with the least upper
/// and greatest lower bounds of the brute-force quotient, over all pairs.
pub fn verify_lattice_operations(n: usize) -> Result<Report> {
    verify_lattice_operations_capped(n, WEAK_ORDER_CAP)
}

pub fn verify_lattice_operations_capped(n: usize, cap: usize) -> Result<Report> {
    let oracle = QuotientOracle::with_cap(n, cap)?;
    let elements = oracle.elements();
    let mut join_bad = Vec::new();
    let mut meet_bad = Vec::new();
    let mut leq_bad = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let join = tamari_join(a, b)?;
            if oracle.lub(i, j) != oracle.index_of(&join) {
                join_bad.push(format!("{a} v {b}"));
            }
            let meet = tamari_meet(a, b)?;
            if oracle.glb(i, j) != oracle.index_of(&meet) {
                meet_bad.push(format!("{a} ^ {b}"));
            }
            if tamari_leq(a, b)? != oracle.leq(i, j) {
                leq_bad.push(format!("{a} <= {b}"));
            }
        }
    }
    let pairs = elements.len() * elements.len();
    let mut report = Report::new();
    report.push(Check::new(
        "tamari.quotient_is_poset",
        oracle.is_antisymmetric(),
        format!("n={n}: {} classes", oracle.len()),
    ));
    for (name, bad) in [
        ("tamari.join_matches_lub", join_bad),
        ("tamari.meet_matches_glb", meet_bad),
        ("tamari.leq_matches_quotient", leq_bad),
    ] {
        report.push(Check::new(
            name,
            bad.is_empty(),
            if bad.is_empty() {
                format!("n={n}: {pairs} pairs")
            } else {
                fail_list(&bad)
            },
        ));
    }
    Ok(report)
}
