//! Brute-force ground truth by pruned backtracking.
//!
//! Every enumerator extends prefixes one symbol at a time and drops a prefix
//! as soon as it contains the pattern; containment is monotone under
//! extension, so no avoider is lost. After each extension only occurrences
//! that use the new symbol are searched.
//!
//! The top two levels of each search tree are fanned out over rayon; the
//! subtrees share nothing.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::ExactInt;
use crate::patterns::{letters_contain_ending_at_last, partial_blocks_contain_using_max, Permutation};

/// What the search is allowed to place at each step.
#[derive(Clone, Copy)]
enum Letters {
    /// Any letter of `[k]`, repeats allowed.
    Free,
    /// Each letter of `[k]` must appear at least once by the end.
    Surjective,
    /// Each letter at most once (permutations when `k == n`).
    Distinct,
}

struct WordSearch<'a> {
    n: usize,
    k: u8,
    pattern: &'a Permutation,
    mode: Letters,
}

impl WordSearch<'_> {
    fn count_from(&self, prefix: &mut Vec<u8>, uses: &mut [u32], distinct: usize) -> u64 {
        if prefix.len() == self.n {
            return match self.mode {
                Letters::Surjective => u64::from(distinct == self.k as usize),
                _ => 1,
            };
        }
        let mut total = 0;
        for c in 1..=self.k {
            let fresh = uses[c as usize] == 0;
            if matches!(self.mode, Letters::Distinct) && !fresh {
                continue;
            }
            let distinct_after = distinct + usize::from(fresh);
            if matches!(self.mode, Letters::Surjective)
                && self.n - prefix.len() - 1 < self.k as usize - distinct_after
            {
                continue;
            }
            prefix.push(c);
            if !letters_contain_ending_at_last(prefix, self.pattern) {
                uses[c as usize] += 1;
                total += self.count_from(prefix, uses, distinct_after);
                uses[c as usize] -= 1;
            }
            prefix.pop();
        }
        total
    }

    fn count(&self) -> u64 {
        if self.n == 0 {
            return match self.mode {
                Letters::Surjective => u64::from(self.k == 0),
                _ => 1,
            };
        }
        if self.k == 0 {
            return 0;
        }
        let depth = self.n.min(2);
        let seeds = self.seeds(depth);
        seeds
            .into_par_iter()
            .map(|mut prefix| {
                let mut uses = vec![0u32; self.k as usize + 1];
                for &c in &prefix {
                    uses[c as usize] += 1;
                }
                let distinct = uses.iter().filter(|&&u| u > 0).count();
                self.count_from(&mut prefix, &mut uses, distinct)
            })
            .sum()
    }

    /// Avoiding prefixes of length `depth`, all branches included.
    fn seeds(&self, depth: usize) -> Vec<Vec<u8>> {
        let mut level = vec![Vec::new()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for prefix in &level {
                for c in 1..=self.k {
                    if matches!(self.mode, Letters::Distinct) && prefix.contains(&c) {
                        continue;
                    }
                    let mut p = prefix.clone();
                    p.push(c);
                    if !letters_contain_ending_at_last(&p, self.pattern) {
                        next.push(p);
                    }
                }
            }
            level = next;
        }
        level
    }
}

fn word_search(n: u32, k: u32, p: &Permutation, mode: Letters) -> ExactInt {
    assert!(k <= u8::MAX as u32, "alphabet too large for the brute-force oracle");
    BigInt::from(
        WordSearch {
            n: n as usize,
            k: k as u8,
            pattern: p,
            mode,
        }
        .count(),
    )
}

/// `|[k]^n(p)|`: words of length `n` over `[k]` avoiding `p`.
pub fn count_words_avoiding(n: u32, k: u32, p: &Permutation) -> ExactInt {
    word_search(n, k, p, Letters::Free)
}

/// `|SW_{n,[k]}(p)|`: surjective words avoiding `p`.
pub fn count_surjective_words_avoiding(n: u32, k: u32, p: &Permutation) -> ExactInt {
    word_search(n, k, p, Letters::Surjective)
}

/// `s_n(p)`: permutations of `[n]` avoiding `p`.
pub fn count_permutations_avoiding(n: u32, p: &Permutation) -> ExactInt {
    word_search(n, n, p, Letters::Distinct)
}

struct PartitionSearch<'a> {
    n: u32,
    k: usize,
    pattern: &'a Permutation,
}

impl PartitionSearch<'_> {
    /// Places elements `next..=n` into the `k` blocks.
    fn count_from(&self, blocks: &mut [Vec<u32>], next: u32, nonempty: usize) -> u64 {
        if next > self.n {
            return u64::from(nonempty == self.k);
        }
        let mut total = 0;
        for b in 0..self.k {
            let fresh = blocks[b].is_empty();
            let nonempty_after = nonempty + usize::from(fresh);
            // every still-empty block needs one of the remaining elements
            if ((self.n - next) as usize) < self.k - nonempty_after {
                continue;
            }
            blocks[b].push(next);
            if !partial_blocks_contain_using_max(blocks, self.pattern, b, next) {
                total += self.count_from(blocks, next + 1, nonempty_after);
            }
            blocks[b].pop();
        }
        total
    }

    fn count(&self) -> u64 {
        if self.n == 0 {
            return u64::from(self.k == 0);
        }
        if self.k == 0 {
            return 0;
        }
        // split on the blocks holding elements 1 and 2
        let depth = self.n.min(2);
        let mut seeds: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..depth {
            seeds = seeds
                .into_iter()
                .flat_map(|s| {
                    (0..self.k).map(move |b| {
                        let mut s = s.clone();
                        s.push(b);
                        s
                    })
                })
                .collect();
        }
        seeds
            .into_par_iter()
            .map(|seed| {
                let mut blocks = vec![Vec::new(); self.k];
                for (i, &b) in seed.iter().enumerate() {
                    let e = i as u32 + 1;
                    blocks[b].push(e);
                    if partial_blocks_contain_using_max(&blocks, self.pattern, b, e) {
                        return 0;
                    }
                }
                let nonempty = blocks.iter().filter(|b| !b.is_empty()).count();
                if ((self.n - depth) as usize) < self.k - nonempty {
                    return 0;
                }
                self.count_from(&mut blocks, depth + 1, nonempty)
            })
            .sum()
    }
}

/// `op_{n,k}(p)` by enumerating ordered partitions of `[n]` into `k` blocks
/// and testing block-level containment directly.
pub fn count_partitions_avoiding(n: u32, k: u32, p: &Permutation) -> ExactInt {
    BigInt::from(
        PartitionSearch {
            n,
            k: k as usize,
            pattern: p,
        }
        .count(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial, factorial, int, stirling2};
    use crate::patterns::{partition_contains, word_contains, OrderedSetPartition, Word};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Unpruned reference: every word of `[k]^n`, tested with the full containment check.
    fn filter_all_words(n: u32, k: u32, p: &Permutation, surjective: bool) -> u64 {
        let total = (k as u64).pow(n);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let letters: Vec<u8> = (0..n)
                    .map(|_| {
                        let l = (c % k as u64) as u8 + 1;
                        c /= k as u64;
                        l
                    })
                    .collect();
                let w = Word::new(letters, k as u8).unwrap();
                (!surjective || w.is_surjective()) && !word_contains(&w, p)
            })
            .count() as u64
    }

    #[test]
    fn word_counts() {
        assert_eq!(count_words_avoiding(3, 3, &perm("321")), int(26));
        assert_eq!(count_words_avoiding(5, 2, &perm("321")), int(32));
        assert_eq!(count_words_avoiding(4, 2, &perm("321")), int(16));
        assert_eq!(count_words_avoiding(4, 3, &perm("321")), int(72));
        assert_eq!(count_words_avoiding(0, 3, &perm("321")), int(1));
    }

    #[test]
    fn surjective_word_counts() {
        assert_eq!(count_surjective_words_avoiding(3, 3, &perm("321")), int(5));
        assert_eq!(count_surjective_words_avoiding(2, 3, &perm("321")), int(0));
        assert_eq!(count_surjective_words_avoiding(4, 3, &perm("321")), int(27));
        assert_eq!(count_surjective_words_avoiding(0, 0, &perm("321")), int(1));
    }

    #[test]
    fn partition_counts() {
        assert_eq!(count_partitions_avoiding(4, 4, &perm("123")), int(14));
        assert_eq!(count_partitions_avoiding(5, 2, &perm("312")), int(30));
        assert_eq!(count_partitions_avoiding(5, 3, &perm("12")), int(6));
        assert_eq!(count_partitions_avoiding(3, 3, &perm("1")), int(0));
        assert_eq!(count_partitions_avoiding(0, 0, &perm("1")), int(1));
        for n in 1..=7 {
            for k in 1..=n {
                assert_eq!(
                    count_partitions_avoiding(n, k, &perm("21")),
                    binomial(n as i64 - 1, k as i64 - 1)
                );
            }
        }
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(count_permutations_avoiding(5, &perm("321")), int(42));
        assert_eq!(count_permutations_avoiding(6, &perm("12")), int(1));
        // s_6(1234) from the oracle words with inclusion-exclusion over alphabets
        let q = perm("1234");
        let surj: BigInt = (1..=6u32)
            .map(|j| {
                let sign = if (6 - j) % 2 == 0 { 1 } else { -1 };
                binomial(6, j as i64) * sign * count_words_avoiding(6, j, &q)
            })
            .sum();
        // surjective words of length n over [n] are exactly the permutations
        assert_eq!(count_permutations_avoiding(6, &q), surj);
        assert_eq!(count_permutations_avoiding(6, &q), int(513));
    }

    #[test]
    fn pruned_search_matches_unpruned_filter() {
        for p in ["321", "132", "1234", "2143"] {
            let p = perm(p);
            for n in 0..=6u32 {
                for k in 1..=4u32 {
                    assert_eq!(count_words_avoiding(n, k, &p), int(filter_all_words(n, k, &p, false) as i64));
                    assert_eq!(
                        count_surjective_words_avoiding(n, k, &p),
                        int(filter_all_words(n, k, &p, true) as i64)
                    );
                }
            }
        }
    }

    #[test]
    fn partition_search_matches_unpruned_filter() {
        // every surjective word, mapped to its partition, full block containment
        let p = perm("231");
        for n in 1..=6u32 {
            for k in 1..=n {
                let total = (k as u64).pow(n);
                let mut expect = 0u64;
                for code in 0..total {
                    let mut c = code;
                    let letters: Vec<u8> = (0..n)
                        .map(|_| {
                            let l = (c % k as u64) as u8 + 1;
                            c /= k as u64;
                            l
                        })
                        .collect();
                    let w = Word::new(letters, k as u8).unwrap();
                    if let Ok(pi) = OrderedSetPartition::from_word(&w) {
                        expect += u64::from(!partition_contains(&pi, &p));
                    }
                }
                assert_eq!(count_partitions_avoiding(n, k, &p), int(expect as i64), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn completeness_against_totals() {
        // avoiders of a length-5 pattern over a 4-letter alphabet: everything
        let p = perm("12345");
        assert_eq!(count_words_avoiding(6, 4, &p), int(4i64.pow(6)));
        assert_eq!(count_partitions_avoiding(6, 4, &p), factorial(4) * stirling2(6, 4));
    }
}
