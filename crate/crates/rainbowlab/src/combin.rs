//! Subset enumeration, ranking, and unranking in lexicographic order.
//!
//! Every coloring in this crate stores one value per r-subset of {0..n-1},
//! indexed by the subset's lexicographic rank. The rank/unrank pair here is
//! the combinatorial number system; `subsets` yields the matching order.

use itertools::Itertools;

/// Binomial coefficient; 0 when k > n. Exact in u128 for every size this
/// crate touches.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // prefix products stay divisible, so this is exact
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All k-subsets of {0..n-1} as sorted index vectors, lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).combinations(k)
}

/// Lexicographic rank of a strictly increasing k-subset of {0..n-1}.
pub fn subset_rank(n: usize, subset: &[usize]) -> u128 {
    let k = subset.len();
    let mut rank: u128 = 0;
    let mut next = 0usize;
    for (i, &c) in subset.iter().enumerate() {
        for v in next..c {
            rank += binomial(n - 1 - v, k - 1 - i);
        }
        next = c + 1;
    }
    rank
}

/// Inverse of [`subset_rank`].
pub fn unrank_subset(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut v = 0usize;
    for i in 0..k {
        loop {
            let block = binomial(n - 1 - v, k - 1 - i);
            if rank < block {
                out.push(v);
                v += 1;
                break;
            }
            rank -= block;
            v += 1;
        }
    }
    out
}

/// Merge two sorted, disjoint index slices into one sorted vector.
pub fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// True when the slice is strictly increasing.
pub fn is_strictly_increasing(s: &[usize]) -> bool {
    s.windows(2).all(|w| w[0] < w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(4, 7), 0);
    }

    #[test]
    fn rank_matches_enumeration_order() {
        for n in 0..=8 {
            for k in 0..=n {
                for (pos, subset) in subsets(n, k).enumerate() {
                    assert_eq!(subset_rank(n, &subset), pos as u128);
                    assert_eq!(unrank_subset(n, k, pos as u128), subset);
                }
            }
        }
    }

    #[test]
    fn merge_keeps_order() {
        assert_eq!(merge_sorted(&[1, 4], &[0, 2, 7]), vec![0, 1, 2, 4, 7]);
        assert_eq!(merge_sorted(&[], &[3]), vec![3]);
    }
}
