//! Permutations of `{1..n}` fixing 1, their inversions, first-inversion
//! functions, pattern avoidance, the weak order and separator placements.
//!
//! Positions and values are 1-indexed everywhere in the public API.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation in one-line notation.
///
/// Values built through [`Permutation::new`] or parsing always fix 1, i.e.
/// live in `S_1 × S_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

fn check_bijection(values: &[usize]) -> Result<()> {
    let n = values.len();
    if n == 0 {
        return Err(Error::invalid("permutation must have at least one entry"));
    }
    let mut seen = vec![false; n + 1];
    for &v in values {
        if v == 0 || v > n {
            return Err(Error::invalid(format!("value {v} outside 1..={n}")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::invalid(format!("value {v} repeated")));
        }
    }
    Ok(())
}

impl Permutation {
    /// Builds a permutation fixing 1 from its one-line notation.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        check_bijection(&values)?;
        if values[0] != 1 {
            return Err(Error::invalid(format!(
                "permutation must fix 1, found {} in position 1",
                values[0]
            )));
        }
        Ok(Permutation { values })
    }

    /// Any permutation of `{1..n}`; only used by internal oracles.
    #[cfg(test)]
    pub(crate) fn from_any(values: Vec<usize>) -> Result<Self> {
        check_bijection(&values)?;
        Ok(Permutation { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(check_bijection(&values).is_ok() && values[0] == 1);
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The value at 1-indexed position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// 1-indexed position holding `value`.
    pub fn position_of(&self, value: usize) -> usize {
        self.values
            .iter()
            .position(|&v| v == value)
            .expect("value in range")
            + 1
    }

    pub fn inversions(&self) -> InversionSet {
        let n = self.len();
        let mut pairs = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.at(i) > self.at(j) {
                    pairs.insert((i, j));
                }
            }
        }
        InversionSet { pairs }
    }

    /// Inversion set packed into a bitmask, one bit per position pair.
    /// Only defined for `n <= 16`.
    pub(crate) fn inversion_bits(&self) -> u128 {
        let n = self.len();
        assert!(n <= 16, "inversion bitmask needs n <= 16");
        let mut bits = 0u128;
        for i in 0..n {
            for j in i + 1..n {
                if self.values[i] > self.values[j] {
                    bits |= 1 << pair_index(n, i + 1, j + 1);
                }
            }
        }
        bits
    }

    pub fn first_inversion_function(&self) -> FirstInversionFunction {
        let n = self.len();
        let mut targets = Vec::with_capacity(n);
        for i in 2..=n {
            let t = (i + 1..=n)
                .find(|&j| self.at(j) < self.at(i))
                .unwrap_or(n + 1);
            targets.push(t);
        }
        targets.push(n + 1);
        FirstInversionFunction { n, targets }
    }

    /// True iff no triple of positions `i < j < k` realizes `pattern`.
    pub fn avoids(&self, pattern: Pattern) -> bool {
        let v = &self.values;
        let n = v.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let hit = match pattern {
                        // middle < first < last
                        Pattern::P213 => v[j] < v[i] && v[i] < v[k],
                        // middle < last < first
                        Pattern::P312 => v[j] < v[k] && v[k] < v[i],
                    };
                    if hit {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Weak order: inversion set containment.
    pub fn weak_leq(&self, other: &Permutation) -> bool {
        assert_eq!(self.len(), other.len(), "weak order compares equal sizes");
        if self.len() <= 16 {
            let a = self.inversion_bits();
            a & other.inversion_bits() == a
        } else {
            self.inversions().is_subset(&other.inversions())
        }
    }
}

pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    let (a, b) = (i - 1, j - 1);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let v = part.parse::<usize>().map_err(|_| {
                Error::parse(offset, format!("expected an integer, found {part:?}"))
            })?;
            values.push(v);
            offset += part.len() + 1;
        }
        Permutation::new(values)
    }
}

/// The set of inversion pairs `(i, j)`, `i < j`, `p(i) > p(j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InversionSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl InversionSet {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        InversionSet {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

/// First-inversion function `t: {2..n+1} -> {2..n+1}`.
///
/// `t(i)` is the least position `j > i` holding a smaller value than
/// position `i`, or `n + 1` when there is none; `t(n+1) = n+1`.
/// Valid functions are exactly the non-crossing ones: for `i < j < t(i)`,
/// `t(j) <= t(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FirstInversionFunction {
    n: usize,
    // targets[i - 2] = t(i)
    targets: Vec<usize>,
}

impl FirstInversionFunction {
    /// `targets` lists `t(2), ..., t(n+1)`.
    pub fn new(n: usize, targets: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("first-inversion function needs n >= 1"));
        }
        if targets.len() != n {
            return Err(Error::invalid(format!(
                "expected {n} values t(2)..t({}), got {}",
                n + 1,
                targets.len()
            )));
        }
        if targets[n - 1] != n + 1 {
            return Err(Error::invalid(format!("t({}) must be {}", n + 1, n + 1)));
        }
        let t = |i: usize| targets[i - 2];
        for i in 2..=n {
            if t(i) <= i || t(i) > n + 1 {
                return Err(Error::invalid(format!(
                    "t({i}) = {} must lie in {}..={}",
                    t(i),
                    i + 1,
                    n + 1
                )));
            }
            for j in i + 1..t(i) {
                if t(j) > t(i) {
                    return Err(Error::invalid(format!(
                        "crossing: {i} < {j} < t({i}) = {} but t({j}) = {}",
                        t(i),
                        t(j)
                    )));
                }
            }
        }
        Ok(FirstInversionFunction { n, targets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `t(i)` for `2 <= i <= n + 1`.
    pub fn get(&self, i: usize) -> usize {
        self.targets[i - 2]
    }

    /// `t(2), ..., t(n+1)`.
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// `t(i), t²(i), ...` up to and including `n + 1`.
    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut j = i;
        loop {
            j = self.get(j);
            out.push(j);
            if j == self.n + 1 {
                return out;
            }
        }
    }

    /// `{(i, j) : t(i) <= j <= n}`: every inversion compatible with `t`.
    pub fn maximal_inversions(&self) -> InversionSet {
        let n = self.n;
        InversionSet::from_pairs((2..=n).flat_map(|i| (self.get(i)..=n).map(move |j| (i, j))))
    }

    /// `{(i, j) : j in orbit(i), j <= n}`: the inversions forced by `t`.
    pub fn forced_inversions(&self) -> InversionSet {
        let n = self.n;
        InversionSet::from_pairs((2..=n).flat_map(|i| {
            self.orbit(i)
                .into_iter()
                .filter(move |&j| j <= n)
                .map(move |j| (i, j))
        }))
    }
}

impl fmt::Display for FirstInversionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.targets.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// The two length-3 patterns the library cares about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    P213,
    P312,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::P213 => "213",
            Pattern::P312 => "312",
        })
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "213" => Ok(Pattern::P213),
            "312" => Ok(Pattern::P312),
            _ => Err(Error::invalid(format!(
                "unsupported pattern {s:?}, expected 213 or 312"
            ))),
        }
    }
}

/// All `(n-1)!` permutations of `{1..n}` fixing 1, in lexicographic order.
pub fn enumerate_s1xsn(n: usize) -> Result<S1xSnIter> {
    if n < 1 {
        return Err(Error::invalid("n must be at least 1"));
    }
    Ok(S1xSnIter {
        next: Some((1..=n).collect()),
    })
}

pub struct S1xSnIter {
    next: Option<Vec<usize>>,
}

impl Iterator for S1xSnIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ[1..]) {
            self.next = Some(succ);
        }
        Some(Permutation::from_values_unchecked(current))
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// A permutation written with separators, each block starting with its
/// minimum. A separator precedes each listed position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorPlacement<'a> {
    pub perm: &'a Permutation,
    pub separators: Vec<usize>,
}

impl SeparatorPlacement<'_> {
    pub fn sign(&self) -> i32 {
        if self.separators.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn rank(&self) -> usize {
        self.separators.len()
    }
}

impl fmt::Display for SeparatorPlacement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.perm.len() {
            if i > 1 {
                let sep = if self.separators.contains(&i) {
                    "|"
                } else {
                    ","
                };
                f.write_str(sep)?;
            }
            write!(f, "{}", self.perm.at(i))?;
        }
        Ok(())
    }
}

/// Block-minimum rule: every block opened by a separator starts with its
/// smallest value. Position 1 always opens the first block, whose minimum
/// is 1.
pub fn is_valid_separator_set(p: &Permutation, separators: &[usize]) -> bool {
    let n = p.len();
    let mut starts: Vec<usize> = separators.to_vec();
    starts.sort_unstable();
    starts.dedup();
    if starts.iter().any(|&s| s < 2 || s > n) {
        return false;
    }
    for (k, &start) in starts.iter().enumerate() {
        let end = starts.get(k + 1).copied().unwrap_or(n + 1);
        let head = p.at(start);
        if (start + 1..end).any(|j| p.at(j) < head) {
            return false;
        }
    }
    true
}

/// Every valid separator placement of `p`, by ascending bitmask over
/// positions `2..=n` (position 2 is the low bit).
pub fn valid_separator_placements(p: &Permutation) -> impl Iterator<Item = SeparatorPlacement<'_>> {
    let n = p.len();
    assert!(n <= 64, "separator enumeration needs n <= 64");
    let count: u64 = 1u64 << (n - 1);
    (0..count).filter_map(move |mask| {
        let separators: Vec<usize> = (2..=n).filter(|&i| mask >> (i - 2) & 1 == 1).collect();
        is_valid_separator_set(p, &separators).then_some(SeparatorPlacement {
            perm: p,
            separators,
        })
    })
}
