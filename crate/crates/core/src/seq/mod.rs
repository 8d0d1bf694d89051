//! The sequence `a_n = Σ_{k=1}^n (-1)^{k-1} (k-1)! c(n,k)` computed five
//! ways: the alternating Stirling sum, coefficients of
//! `log(1 - log(1 - x))`, a census over increasing trees, and two
//! recurrences.

mod series;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::pruning_masks;
use crate::poly::IntPolynomial;
use crate::tree::{increasing_trees, sum_over_parent_vectors};
use crate::CENSUS_CAP;

pub use series::PowerSeries;

/// Rows `0..=n` of the unsigned Stirling numbers of the first kind.
pub fn stirling_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = vec![BigInt::zero(); m + 1];
        for k in 1..=m {
            let mut c = prev.get(k - 1).cloned().unwrap_or_default();
            if k < m {
                c += &prev[k] * (m - 1);
            }
            row[k] = c;
        }
        rows.push(row);
    }
    rows
}

/// `c(n, k)`: permutations of `n` elements with `k` cycles.
pub fn stirling_first(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::invalid(format!(
            "c(n, k) needs k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(stirling_table(n)[n][k].clone())
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for k in 1..=n {
        let next = &out[k - 1] * k;
        out.push(next);
    }
    out
}

/// Rows `0..=n` of Pascal's triangle.
fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = vec![BigInt::one(); m + 1];
        for k in 1..m {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::invalid("the sequence starts at n = 1"))
    } else {
        Ok(())
    }
}

/// The alternating Stirling sum.
pub fn a_stirling(n: usize) -> Result<BigInt> {
    require_positive(n)?;
    let c = stirling_table(n);
    let fact = factorials(n);
    Ok(alternating_sum(&c[n], &fact))
}

fn alternating_sum(row: &[BigInt], fact: &[BigInt]) -> BigInt {
    let mut sum = BigInt::zero();
    for k in 1..row.len() {
        let term = &fact[k - 1] * &row[k];
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// `a_1, ..., a_{n_max}` by the alternating Stirling sum.
pub fn a_stirling_sequence(n_max: usize) -> Result<Vec<BigInt>> {
    require_positive(n_max)?;
    let c = stirling_table(n_max);
    let fact = factorials(n_max);
    Ok((1..=n_max).map(|n| alternating_sum(&c[n], &fact)).collect())
}

/// `a_n = n! [x^n] log(1 + L)` with `L = -log(1 - x)`, in exact arithmetic.
pub fn a_egf(n_max: usize) -> Result<Vec<BigInt>> {
    require_positive(n_max)?;
    let series = PowerSeries::neg_log_one_minus_x(n_max).log_one_plus()?;
    let fact = factorials(n_max);
    (1..=n_max)
        .map(|n| {
            let value = series.coeff(n) * BigRational::from_integer(fact[n].clone());
            if value.is_integer() {
                Ok(value.to_integer())
            } else {
                Err(Error::Internal(format!(
                    "n! [x^n] is not an integer at n = {n}: {value}"
                )))
            }
        })
        .collect()
}

/// `a_n = Σ_{k=1}^{n-1} C(n-2, k-1) ((k-1)! - a_k) a_{n-k}` from `a_1 = 1`.
pub fn a_recurrence_split(n_max: usize) -> Result<Vec<BigInt>> {
    require_positive(n_max)?;
    let fact = factorials(n_max);
    let binom = binomials(n_max);
    // a[k] holds a_k; a[0] is unused.
    let mut a = vec![BigInt::zero(), BigInt::one()];
    for n in 2..=n_max {
        let mut sum = BigInt::zero();
        for k in 1..n {
            sum += &binom[n - 2][k - 1] * (&fact[k - 1] - &a[k]) * &a[n - k];
        }
        a.push(sum);
    }
    Ok(a.split_off(1))
}

/// Solves `(n-1)! - a_n = Σ_{k=1}^{n-1} C(n-1, k-1) (n-k-1)! a_k` for `a_n`.
pub fn a_recurrence_complement(n_max: usize) -> Result<Vec<BigInt>> {
    require_positive(n_max)?;
    let fact = factorials(n_max);
    let binom = binomials(n_max);
    let mut a = vec![BigInt::zero()];
    for n in 1..=n_max {
        let mut sum = BigInt::zero();
        for k in 1..n {
            sum += &binom[n - 1][k - 1] * &fact[n - k - 1] * &a[k];
        }
        a.push(&fact[n - 1] - sum);
    }
    Ok(a.split_off(1))
}

/// `Σ rgf_{L_T}(-1)` over increasing trees on `1..=n`, each rank generating
/// function expanded as `Π (1 + q φ_child)` and evaluated at `-1`.
pub fn a_tree_census(n: usize) -> Result<BigInt> {
    a_tree_census_capped(n, CENSUS_CAP)
}

/// As [`a_tree_census`] with an explicit cap; the work grows like `(n-1)!`.
pub fn a_tree_census_capped(n: usize, cap: usize) -> Result<BigInt> {
    require_positive(n)?;
    if n > cap {
        return Err(Error::CapExceeded {
            what: "tree census",
            n,
            cap,
        });
    }
    let total = sum_over_parent_vectors(
        n,
        || {
            (
                vec![Vec::<i64>::with_capacity(n); n + 1],
                Vec::<i64>::with_capacity(n),
            )
        },
        |parents, (polys, tmp)| {
            for p in polys.iter_mut() {
                p.clear();
                p.push(1);
            }
            for label in (2..=n).rev() {
                let child = std::mem::take(&mut polys[label]);
                let parent = &mut polys[parents[label - 2]];
                // parent *= 1 + q child
                tmp.clear();
                tmp.resize(parent.len() + child.len(), 0);
                for (i, &x) in parent.iter().enumerate() {
                    tmp[i] += x;
                    for (j, &y) in child.iter().enumerate() {
                        tmp[i + j + 1] += x * y;
                    }
                }
                while tmp.len() > 1 && *tmp.last().unwrap() == 0 {
                    tmp.pop();
                }
                parent.clear();
                parent.extend_from_slice(tmp);
                polys[label] = child;
            }
            polys[1]
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
                .sum()
        },
    )?;
    Ok(BigInt::from(total))
}

/// `Σ_{k=1}^n (k-1)! c(n,k) q^{k-1}`.
pub fn rgf_identity_lhs(n: usize) -> Result<IntPolynomial> {
    require_positive(n)?;
    let c = stirling_table(n);
    let fact = factorials(n);
    Ok(IntPolynomial::from_coefficients(
        (1..=n).map(|k| &fact[k - 1] * &c[n][k]).collect(),
    ))
}

/// `Σ rgf_{L_T}(q)` over increasing trees on `1..=n`, listing every pruning
/// of every tree.
pub fn rgf_census(n: usize) -> Result<IntPolynomial> {
    rgf_census_capped(n, CENSUS_CAP)
}

pub fn rgf_census_capped(n: usize, cap: usize) -> Result<IntPolynomial> {
    require_positive(n)?;
    if n > cap {
        return Err(Error::CapExceeded {
            what: "rgf census",
            n,
            cap,
        });
    }
    let mut counts = vec![0u64; n];
    for t in increasing_trees(n) {
        for m in pruning_masks(t.shape())? {
            counts[m.count_ones() as usize - 1] += 1;
        }
    }
    Ok(IntPolynomial::from_coefficients(counts))
}

/// Selector for the five computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Stirling,
    Egf,
    Census,
    Split,
    Complement,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Stirling,
        Method::Egf,
        Method::Census,
        Method::Split,
        Method::Complement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Stirling => "stirling",
            Method::Egf => "egf",
            Method::Census => "census",
            Method::Split => "split",
            Method::Complement => "complement",
        }
    }

    /// `a_1, ..., a_{n_max}`; the census refuses `n_max` above `census_cap`.
    pub fn sequence(self, n_max: usize, census_cap: usize) -> Result<Vec<BigInt>> {
        match self {
            Method::Stirling => a_stirling_sequence(n_max),
            Method::Egf => a_egf(n_max),
            Method::Census => {
                require_positive(n_max)?;
                (1..=n_max)
                    .map(|n| a_tree_census_capped(n, census_cap))
                    .collect()
            }
            Method::Split => a_recurrence_split(n_max),
            Method::Complement => a_recurrence_complement(n_max),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown method {s:?}; expected stirling, egf, census, split or complement"
                ))
            })
    }
}

/// Whether every value is nonnegative.
pub fn all_nonnegative(values: &[BigInt]) -> bool {
    values.iter().all(|v| !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    const KNOWN: [i64; 12] = [1, 0, 1, 1, 8, 26, 194, 1142, 9736, 81384, 823392, 8738016];

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    // Counts permutations of n elements by number of cycles directly.
    fn cycle_counts(n: usize) -> Vec<u64> {
        let mut counts = vec![0u64; n + 1];
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            let mut seen = vec![false; n];
            let mut cycles = 0;
            for s in 0..n {
                if !seen[s] {
                    cycles += 1;
                    let mut v = s;
                    while !seen[v] {
                        seen[v] = true;
                        v = p[v];
                    }
                }
            }
            counts[cycles] += 1;
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                return counts;
            };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling_first(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(stirling_first(6, 3).unwrap(), BigInt::from(225));
        assert_eq!(stirling_first(0, 0).unwrap(), BigInt::one());
        assert_eq!(stirling_first(4, 0).unwrap(), BigInt::zero());
        for n in 0..=8 {
            assert_eq!(stirling_first(n, n).unwrap(), BigInt::one());
        }
        assert!(stirling_first(2, 3).is_err());
        for n in 1..=7 {
            let direct = cycle_counts(n);
            let table = stirling_table(n);
            for k in 0..=n {
                assert_eq!(table[n][k], BigInt::from(direct[k]), "c({n},{k})");
            }
            let row_sum: BigInt = table[n].iter().sum();
            assert_eq!(row_sum, factorials(n)[n]);
        }
    }

    #[test]
    fn closed_form_methods_agree() {
        let expected = big(&KNOWN);
        assert_eq!(a_stirling_sequence(12).unwrap(), expected);
        assert_eq!(a_egf(12).unwrap(), expected);
        assert_eq!(a_recurrence_split(12).unwrap(), expected);
        assert_eq!(a_recurrence_complement(12).unwrap(), expected);
        assert_eq!(a_stirling(3).unwrap(), BigInt::one());
        assert_eq!(a_stirling(5).unwrap(), BigInt::from(8));
        assert!(a_stirling(0).is_err());
        assert!(all_nonnegative(&a_stirling_sequence(30).unwrap()));
    }

    #[test]
    fn long_range_agreement() {
        let s = a_stirling_sequence(40).unwrap();
        assert_eq!(a_egf(40).unwrap(), s);
        assert_eq!(a_recurrence_split(40).unwrap(), s);
        assert_eq!(a_recurrence_complement(40).unwrap(), s);
    }

    #[test]
    fn census_small() {
        for n in 1..=8 {
            assert_eq!(
                a_tree_census(n).unwrap(),
                BigInt::from(KNOWN[n - 1]),
                "n = {n}"
            );
        }
        assert!(matches!(a_tree_census(11), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn rgf_identity() {
        assert_eq!(
            rgf_identity_lhs(3).unwrap(),
            IntPolynomial::from_coefficients(vec![2, 3, 2])
        );
        assert_eq!(rgf_identity_lhs(1).unwrap(), IntPolynomial::one());
        for n in 1..=7 {
            assert_eq!(
                rgf_census(n).unwrap(),
                rgf_identity_lhs(n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
        assert_eq!(Method::Census.sequence(6, 10).unwrap(), big(&KNOWN[..6]));
    }
}
