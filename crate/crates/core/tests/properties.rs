use proptest::prelude::*;

use opavoid_core::arith::int;
use opavoid_core::bridge::{op_small_k, op_via_inclusion_exclusion};
use opavoid_core::formulas::op321_double_sum;
use opavoid_core::method::MethodRegistry;
use opavoid_core::oracle::{count_partitions_avoiding, count_surjective_words_avoiding, count_words_avoiding};
use opavoid_core::patterns::{
    partition_contains, partition_of_word, word_contains, word_of_partition, OrderedSetPartition, Permutation, Word,
};
use opavoid_core::table::{MethodTag, OpTable};

fn s3_and_s4() -> Vec<Permutation> {
    let mut v = Permutation::all(3);
    v.extend(Permutation::all(4));
    v
}

/// A surjective word of length `n` over `[k]`: a random word with each
/// letter forced into a distinct random slot.
fn surjective_word() -> impl Strategy<Value = Word> {
    (1usize..=7)
        .prop_flat_map(|n| (Just(n), 1usize..=n))
        .prop_flat_map(|(n, k)| {
            (
                proptest::collection::vec(1..=k as u8, n),
                Just((1..=n).collect::<Vec<_>>()).prop_shuffle(),
                Just(k),
            )
        })
        .prop_map(|(mut letters, slots, k)| {
            for (letter, &slot) in (1..=k as u8).zip(&slots) {
                letters[slot - 1] = letter;
            }
            Word::new(letters, k as u8).unwrap()
        })
}

fn pattern() -> impl Strategy<Value = Permutation> {
    proptest::sample::select(s3_and_s4())
}

proptest! {
    #[test]
    fn bijection_round_trips(w in surjective_word()) {
        let pi = partition_of_word(&w).unwrap();
        prop_assert_eq!(word_of_partition(&pi), w.clone());
        let again: OrderedSetPartition = pi.to_string().parse().unwrap();
        prop_assert_eq!(again, pi);
    }

    #[test]
    fn containment_transports_through_inverse(w in surjective_word(), p in pattern()) {
        let pi = partition_of_word(&w).unwrap();
        prop_assert_eq!(partition_contains(&pi, &p), word_contains(&w, &p.inverse()));
    }

    #[test]
    fn table_json_round_trip(cells in proptest::collection::btree_map((1u32..12, 1u32..12), 0u64..u64::MAX, 0..20)) {
        let mut t = OpTable::new("2413".parse().unwrap());
        for ((n, k), c) in cells {
            let (n, k) = (n.max(k), n.min(k));
            t.insert(n, k, c.into(), MethodTag::ALL[(n as usize + k as usize) % 6]);
        }
        prop_assert_eq!(OpTable::from_json(&t.to_json()).unwrap(), t);
    }
}

#[test]
fn surjective_words_count_partitions() {
    for p in s3_and_s4() {
        for n in 1..=6 {
            for k in 1..=n {
                assert_eq!(
                    count_partitions_avoiding(n, k, &p),
                    count_surjective_words_avoiding(n, k, &p.inverse()),
                    "p = {p}, n = {n}, k = {k}"
                );
            }
        }
    }
}

#[test]
fn inclusion_exclusion_matches_oracle() {
    for p in s3_and_s4() {
        for n in 0..=6 {
            for k in 0..=n {
                let ie = op_via_inclusion_exclusion(n, k, &p, |n, j, q| Ok(count_words_avoiding(n, j, q))).unwrap();
                assert_eq!(ie, count_partitions_avoiding(n, k, &p), "p = {p}, n = {n}, k = {k}");
            }
        }
    }
}

#[test]
fn s3_patterns_are_wilf_equivalent() {
    let patterns = Permutation::all(3);
    for n in 1..=7 {
        for k in 1..=n {
            let want = op321_double_sum(n, k).unwrap();
            for p in &patterns {
                assert_eq!(count_partitions_avoiding(n, k, p), want, "p = {p}, n = {n}, k = {k}");
            }
        }
    }
}

#[test]
fn too_few_blocks_means_no_constraint() {
    for p in s3_and_s4() {
        for n in 1..=7 {
            for k in 1..(p.len() as u32).min(n + 1) {
                assert_eq!(op_small_k(n, k, &p).unwrap(), count_partitions_avoiding(n, k, &p));
            }
        }
    }
}

#[test]
fn every_method_agrees_within_budget() {
    let registry = MethodRegistry::default();
    for p in Permutation::all(3) {
        let tables: Vec<_> = registry.iter().map(|m| (m.name(), m.table(8, &p).unwrap())).collect();
        for (name, t) in &tables {
            assert!(t.same_counts(&tables[0].1), "{name} differs for {p}");
        }
    }
    let p: Permutation = "1324".parse().unwrap();
    let oracle = registry.get("oracle").unwrap().table(7, &p).unwrap();
    let ie = registry.get("inclusion-exclusion").unwrap().table(7, &p).unwrap();
    assert!(oracle.same_counts(&ie));
}

#[test]
fn length_one_and_two_patterns() {
    let one: Permutation = "1".parse().unwrap();
    let two: Permutation = "12".parse().unwrap();
    for n in 1..=6 {
        for k in 1..=n {
            assert_eq!(count_partitions_avoiding(n, k, &one), int(0));
        }
        assert_eq!(count_partitions_avoiding(n, 1, &two), int(1));
        // n singleton blocks: only the decreasing arrangement avoids 12
        assert_eq!(count_partitions_avoiding(n, n, &two), int(1));
    }
}
