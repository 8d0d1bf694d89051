use num_bigint::BigInt;

use super::IntPolynomial;
use crate::error::Result;
use crate::game::second_player_wins_within;
use crate::lattice::pruning_masks;
use crate::tree::PlaneTree;

/// `φ_T(q) = Π (1 + q φ_{T_k})` over the root's child subtrees, computed
/// bottom-up. A single vertex gives the empty product `1`.
pub fn phi(tree: &PlaneTree) -> IntPolynomial {
    let n = tree.len();
    let mut at: Vec<IntPolynomial> = vec![IntPolynomial::zero(); n];
    // Preorder ids put every child after its parent.
    for v in (0..n).rev() {
        let mut acc = IntPolynomial::one();
        for &c in tree.children(v) {
            let factor = IntPolynomial::one() + at[c].shift(1);
            acc = acc * factor;
        }
        at[v] = acc;
    }
    std::mem::take(&mut at[0])
}

/// `Σ (-q)^{r(S)} (1+q)^{c(S)}` over the prunings `S` on which the second
/// player wins, `r` being the rank and `c` the number of upper covers.
pub fn phi_via_prunings(tree: &PlaneTree) -> Result<IntPolynomial> {
    let n = tree.len();
    let masks = pruning_masks(tree)?;
    let binomial_rows = binomial_rows(n);
    let mut acc = vec![BigInt::from(0); n];
    let mut scratch = vec![false; n];
    for mask in masks {
        if !second_player_wins_within(tree, mask, &mut scratch) {
            continue;
        }
        let rank = mask.count_ones() as usize - 1;
        let covers = (1..n)
            .filter(|&v| mask >> v & 1 == 0 && mask >> tree.parent(v).unwrap() & 1 == 1)
            .count();
        let row = &binomial_rows[covers];
        for (k, b) in row.iter().enumerate() {
            if rank.is_multiple_of(2) {
                acc[rank + k] += b;
            } else {
                acc[rank + k] -= b;
            }
        }
    }
    Ok(IntPolynomial::from_coefficients(acc))
}

fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for m in 1..n {
        let prev = &rows[m - 1];
        let mut row = vec![BigInt::from(1); m + 1];
        for k in 1..m {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rank_generating_function_by_enumeration;
    use crate::tree::{canonicalize, RootedTree};
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tree(s: &str) -> PlaneTree {
        s.parse().unwrap()
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coefficients(c.to_vec())
    }

    const T1: &str = "(() (() ((()))))";
    const T2: &str = "((()) ((() ())))";
    const T3: &str = "((((() ()))) ((() () ())))";

    #[test]
    fn small_examples() {
        assert_eq!(phi(&PlaneTree::leaf()), IntPolynomial::one());
        assert_eq!(phi(&PlaneTree::star(2)), poly(&[1, 2, 1]));
        assert_eq!(phi(&PlaneTree::path(3)), poly(&[1, 1, 1]));
        assert_eq!(
            phi_via_prunings(&PlaneTree::leaf()).unwrap(),
            IntPolynomial::one()
        );
    }

    #[test]
    fn remark_trees() {
        let expected = poly(&[1, 2, 3, 4, 4, 3, 1]);
        for t in [T1, T2] {
            assert_eq!(phi(&tree(t)), expected);
            assert_eq!(phi_via_prunings(&tree(t)).unwrap(), expected);
        }
        let t3 = tree(T3);
        let recomputed = poly(&[1, 2, 3, 6, 10, 11, 10, 11, 10, 5, 1]);
        assert_eq!(phi(&t3), recomputed);
        assert_eq!(phi_via_prunings(&t3).unwrap(), recomputed);
        assert!(!recomputed.is_unimodal());
    }

    #[test]
    fn pruning_sum_example_terms() {
        let t = tree("(() (() ()))");
        let one_plus_q = poly(&[1, 1]);
        let q2 = IntPolynomial::monomial(1, 2);
        let q3 = IntPolynomial::monomial(1, 3);
        let sq = &one_plus_q * &one_plus_q;
        let expected = &sq + &(&q2 * &sq) + &q2 * &sq - &q3 * &one_plus_q;
        assert_eq!(expected, poly(&[1, 2, 3, 3, 1]));
        assert_eq!(phi_via_prunings(&t).unwrap(), expected);
        assert_eq!(phi(&t), expected);
    }

    #[test]
    fn exhaustive_agreement_up_to_nine_vertices() {
        let minus_one = BigRational::from_integer((-1).into());
        for n in 1..=9 {
            for t in RootedTree::enumerate(n) {
                let t = t.as_plane();
                let p = phi(t);
                assert_eq!(phi_via_prunings(t).unwrap(), p, "{t}");
                assert_eq!(
                    rank_generating_function_by_enumeration(t).unwrap(),
                    p,
                    "{t}"
                );
                let at = p.evaluate(&minus_one);
                assert!(
                    at == BigRational::from_integer(0.into())
                        || at == BigRational::from_integer(1.into())
                );
                assert_eq!(p.coeff(1), BigInt::from(t.children(0).len()));
            }
        }
    }

    #[test]
    fn invariant_under_child_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=14 {
            let t = PlaneTree::random(n, &mut rng);
            assert_eq!(phi(&t), phi(canonicalize(&t).as_plane()));
        }
    }
}
