//! Structure of `D_P`, chain-union profiles, U-chains and the relabeling
//! used by U-processes, checked over every small partition.

use std::collections::BTreeSet;

use nilcomm::greene::{chain_union_profile, greene_lambda, oracle_profile};
use nilcomm::partition::partitions_of;
use nilcomm::poset::vertices_of;
use nilcomm::uchain::{
    all_specs, cardinality_closed_form, lambda_u, lambda_u_exhaustive, materialize,
    max_simple_u_chains,
};
use nilcomm::uprocess::remove_simple_chain;
use nilcomm::{Partition, Poset, UChainSpec, Vertex};
use proptest::prelude::*;

fn upto(n_max: usize) -> impl Iterator<Item = Partition> {
    (1..=n_max).flat_map(partitions_of)
}

#[test]
fn generating_edges_are_covers_of_an_acyclic_order() {
    for p in upto(12) {
        let poset = Poset::build(&p);
        assert!(poset.is_acyclic(), "{p}");
        assert!(poset.redundant_edges().is_empty(), "{p}");
        assert_eq!(poset.len(), p.n());
    }
}

#[test]
fn flow_profile_matches_exhaustive_search() {
    for p in upto(8) {
        let poset = Poset::build(&p);
        assert_eq!(
            chain_union_profile(&poset),
            oracle_profile(&poset).unwrap(),
            "{p}"
        );
    }
}

#[test]
fn lambda_u_is_dominated_and_well_formed() {
    for p in upto(12) {
        let lu = lambda_u(&p);
        assert_eq!(lu, lambda_u_exhaustive(&p), "{p}");
        assert_eq!(lu.n(), p.n());
        assert!(lu.parts().windows(2).all(|w| w[0] >= w[1] + 2), "{p}: {lu}");
        let l = greene_lambda(&Poset::build(&p)).unwrap();
        assert!(lu.dominance_leq(&l).unwrap(), "{p}: {lu} vs {l}");
        assert_eq!(lu.max_part(), max_simple_u_chains(&p).cardinality);
    }
}

#[test]
fn strands_are_disjoint_chains_with_predicted_size() {
    for p in upto(12) {
        let poset = Poset::build(&p);
        let top = p.max_part() + 1;
        for r in 1..=top.div_ceil(2) {
            for spec in all_specs(top, r) {
                let inst = materialize(&p, &spec);
                let total: usize = inst.strands.iter().map(|s| s.len()).sum();
                assert_eq!(total, inst.union.len(), "{p} {spec}");
                assert_eq!(cardinality_closed_form(&p, &spec), total, "{p} {spec}");
                for s in &inst.strands {
                    assert!(poset.is_chain(s).unwrap(), "{p} {spec}");
                }
            }
        }
    }
}

#[test]
fn relabeling_is_a_bijection_onto_the_complement() {
    for p in upto(10) {
        for a in 1..=p.max_part() {
            let Ok(rem) = remove_simple_chain(&p, a) else {
                continue;
            };
            let mut images: Vec<_> = vertices_of(&rem.next)
                .into_iter()
                .map(|v| rem.iota.forward(v))
                .collect();
            let mut expected: Vec<_> = vertices_of(&p)
                .into_iter()
                .filter(|v| !rem.removed.contains(v))
                .collect();
            images.sort();
            expected.sort();
            assert_eq!(images, expected, "{p}, a = {a}");
        }
    }
}

/// `ι(U_𝔅) ∪ U_a` is the U-chain of `P` whose anchors are `a` together with
/// `𝔅`, anchors at or above `a` shifted up by two, whenever those anchors
/// are a valid spec.
#[test]
fn relabeling_carries_u_chains_to_u_chains() {
    let mut compared = 0;
    for p in upto(10) {
        for a in 1..=p.max_part() {
            let Ok(rem) = remove_simple_chain(&p, a) else {
                continue;
            };
            if rem.next.is_empty() {
                continue;
            }
            let top = rem.next.max_part() + 1;
            for r in 1..=top.div_ceil(2) {
                for spec in all_specs(top, r) {
                    let mut lifted: Vec<usize> = spec
                        .anchors()
                        .iter()
                        .map(|&c| if c < a { c } else { c + 2 })
                        .collect();
                    lifted.push(a);
                    lifted.sort_unstable();
                    let Ok(lifted) = UChainSpec::new(lifted) else {
                        continue;
                    };
                    let image: BTreeSet<_> = materialize(&rem.next, &spec)
                        .union
                        .iter()
                        .map(|&v| rem.iota.forward(v))
                        .chain(rem.removed.iter().copied())
                        .collect();
                    assert_eq!(
                        image,
                        materialize(&p, &lifted).union,
                        "{p}, a = {a}, {spec}"
                    );
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 3000);
}

/// The relabeling is only a map of sets. Removing `U_2` from `(4,1)` leaves
/// `(2,1)`, where `(1,1,1) < (2,2,1)`; their images `(1,1,1)` and `(3,4,1)`
/// are incomparable in the original poset.
#[test]
fn relabeling_need_not_preserve_order() {
    let p: Partition = "4,1".parse().unwrap();
    let rem = remove_simple_chain(&p, 2).unwrap();
    let small = Poset::build(&rem.next);
    let (lo, hi) = (Vertex::new(1, 1, 1), Vertex::new(2, 2, 1));
    assert!(small.leq(&lo, &hi).unwrap());
    let big = Poset::build(&p);
    let (lo2, hi2) = (rem.iota.forward(lo), rem.iota.forward(hi));
    assert_eq!(hi2, Vertex::new(3, 4, 1));
    assert!(!big.leq(&lo2, &hi2).unwrap());
    assert!(!big.leq(&hi2, &lo2).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profiles_are_concave_and_end_at_n(
        parts in prop::collection::vec(1usize..7, 1..7)
    ) {
        let p = Partition::from_positive(parts);
        let profile = chain_union_profile(&Poset::build(&p));
        prop_assert_eq!(profile.get(profile.c.len() - 1), p.n());
        let lambda = profile.lambda().unwrap();
        prop_assert_eq!(lambda.n(), p.n());
    }
}
