use std::collections::{BTreeSet, HashMap};

use nilcomm::partition::partitions_of;
use nilcomm::verify::partition_counts;
use nilcomm::Partition;
use proptest::prelude::*;

/// Fewest almost rectangular groups a multiset of parts splits into, by
/// trying every group that contains the first part.
fn min_cover(parts: &[usize], memo: &mut HashMap<Vec<usize>, usize>) -> usize {
    if parts.is_empty() {
        return 0;
    }
    if let Some(&v) = memo.get(parts) {
        return v;
    }
    let rest = &parts[1..];
    let mut best = usize::MAX;
    for mask in 0u32..(1 << rest.len()) {
        let mut group = vec![parts[0]];
        let mut left = Vec::new();
        for (i, &p) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                group.push(p);
            } else {
                left.push(p);
            }
        }
        let (lo, hi) = (group.iter().min().unwrap(), group.iter().max().unwrap());
        if hi - lo <= 1 {
            best = best.min(1 + min_cover(&left, memo));
        }
    }
    memo.insert(parts.to_vec(), best);
    best
}

#[test]
fn r_matches_exhaustive_grouping() {
    let mut memo = HashMap::new();
    for n in 1..=10 {
        for p in partitions_of(n) {
            assert_eq!(p.r(), min_cover(p.parts(), &mut memo), "{p}");
        }
    }
}

#[test]
fn enumeration_counts_and_uniqueness() {
    let expected = partition_counts(14);
    for (n, &want) in expected.iter().enumerate().skip(1) {
        let all: Vec<Partition> = partitions_of(n).collect();
        assert_eq!(all.len() as u64, want, "n = {n}");
        let distinct: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.iter().all(|p| p.n() == n));
    }
    assert_eq!(partitions_of(10).count(), 42);
    assert_eq!(partitions_of(12).count(), 77);
}

#[test]
fn dominance_is_a_partial_order() {
    for n in 1..=9 {
        let all: Vec<Partition> = partitions_of(n).collect();
        let leq = |a: &Partition, b: &Partition| a.dominance_leq(b).unwrap();
        for a in &all {
            assert!(leq(a, a));
            for b in &all {
                if leq(a, b) && leq(b, a) {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c), "{a} {b} {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn conjugation_reverses_dominance() {
    for n in 1..=12 {
        let all: Vec<Partition> = partitions_of(n).collect();
        for a in &all {
            assert_eq!(&a.conjugate().conjugate(), a);
            for b in &all {
                assert_eq!(
                    a.dominance_leq(b).unwrap(),
                    b.conjugate().dominance_leq(&a.conjugate()).unwrap(),
                    "{a} {b}"
                );
            }
        }
    }
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..9, 1..10).prop_map(Partition::from_positive)
}

proptest! {
    #[test]
    fn text_and_json_round_trip(p in partition_strategy()) {
        let text: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
        prop_assert_eq!(text.join(",").parse::<Partition>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p);
    }

    #[test]
    fn conjugate_preserves_weight_and_swaps_shape(p in partition_strategy()) {
        let c = p.conjugate();
        prop_assert_eq!(c.n(), p.n());
        prop_assert_eq!(c.len(), p.max_part());
        prop_assert_eq!(c.max_part(), p.len());
    }

    #[test]
    fn r_is_one_exactly_for_almost_rectangular(p in partition_strategy()) {
        prop_assert_eq!(p.r() == 1, p.is_almost_rectangular());
        prop_assert!(p.r() <= p.multiplicities().count());
    }
}
