//! U-chains: unions of `r` disjoint chains cut out of `D_P` by anchor pairs
//! `{a_i, a_i + 1}`, their sizes, and the partition `λ_U(P)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poset::{vertices_of, Vertex, VertexSet};

/// Anchors `a_1 < a_2 < … < a_r`, each at least two above the previous one,
/// so that `{a_1, a_1 + 1, …, a_r, a_r + 1}` has `2r` elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct UChainSpec {
    anchors: Vec<usize>,
}

impl UChainSpec {
    pub fn new(anchors: Vec<usize>) -> Result<Self> {
        let ok =
            anchors.first().is_none_or(|&a| a >= 1) && anchors.windows(2).all(|w| w[1] >= w[0] + 2);
        if ok {
            Ok(UChainSpec { anchors })
        } else {
            Err(Error::InvalidSpec(anchors))
        }
    }

    pub fn simple(a: usize) -> Result<Self> {
        Self::new(vec![a])
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    pub fn r(&self) -> usize {
        self.anchors.len()
    }

    /// The set `{a_1, a_1 + 1, …, a_r, a_r + 1}` in increasing order.
    pub fn expanded(&self) -> Vec<usize> {
        self.anchors.iter().flat_map(|&a| [a, a + 1]).collect()
    }

    pub fn contains_pair(&self, a: usize) -> bool {
        let set = self.expanded();
        set.contains(&a) && set.contains(&(a + 1))
    }

    /// Replaces the anchor at 1-based position `u` by `a`, keeping the
    /// result sorted. `None` if the new anchor set is not a valid spec.
    pub fn replace_as_set(&self, u: usize, a: usize) -> Option<UChainSpec> {
        let mut anchors = self.anchors.clone();
        anchors[u - 1] = a;
        anchors.sort_unstable();
        UChainSpec::new(anchors).ok()
    }
}

impl fmt::Display for UChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.anchors.iter().map(|a| a.to_string()).collect();
        write!(f, "U_{{{}}}", list.join(","))
    }
}

impl fmt::Debug for UChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A spec realised in a particular `D_P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UChainInstance {
    pub spec: UChainSpec,
    pub strands: Vec<VertexSet>,
    pub union: VertexSet,
}

/// Whether `v` lies on strand `i` (1-based) with anchor `a`.
fn on_strand(v: &Vertex, i: usize, a: usize) -> bool {
    if v.p == a || v.p == a + 1 {
        i <= v.u && v.u + i <= v.p + 1
    } else if v.p > a + 1 {
        v.u == i || v.u + i == v.p + 1
    } else {
        false
    }
}

pub fn materialize(partition: &Partition, spec: &UChainSpec) -> UChainInstance {
    let vertices = vertices_of(partition);
    let strands: Vec<VertexSet> = spec
        .anchors()
        .iter()
        .enumerate()
        .map(|(idx, &a)| {
            vertices
                .iter()
                .filter(|v| on_strand(v, idx + 1, a))
                .copied()
                .collect()
        })
        .collect();
    let union = strands.iter().flatten().copied().collect();
    UChainInstance {
        spec: spec.clone(),
        strands,
        union,
    }
}

/// `|U_a| = a·n_a + (a+1)·n_{a+1} + 2·Σ_{p > a+1} n_p`.
pub fn simple_cardinality(partition: &Partition, a: usize) -> usize {
    let above: usize = partition
        .multiplicities()
        .filter(|&(p, _)| p > a + 1)
        .map(|(_, m)| m)
        .sum();
    a * partition.mult(a) + (a + 1) * partition.mult(a + 1) + 2 * above
}

/// Size of strand `i` (1-based) with anchor `a`; strands of one spec are
/// disjoint, so a spec's size is the sum over its strands.
pub fn strand_cardinality(partition: &Partition, i: usize, a: usize) -> usize {
    let on_pair: usize = [a, a + 1]
        .iter()
        .map(|&p| partition.mult(p) * (p + 2).saturating_sub(2 * i))
        .sum();
    let above: usize = partition
        .multiplicities()
        .filter(|&(p, _)| p > a + 1)
        .map(|(_, m)| m)
        .sum();
    on_pair + 2 * above
}

/// `|U_𝔄|` by peeling the first anchor off repeatedly:
/// `|U_𝔄| = |U_{𝔄 \ {a_1, a_1+1}}| + |U_{a_1}| − 2·Σ_{j ≥ 2} (n_{a_j} + n_{a_j+1})`.
pub fn cardinality_closed_form(partition: &Partition, spec: &UChainSpec) -> usize {
    fn peel(partition: &Partition, anchors: &[usize]) -> usize {
        let Some((&first, rest)) = anchors.split_first() else {
            return 0;
        };
        let overlap: usize = rest
            .iter()
            .map(|&a| partition.mult(a) + partition.mult(a + 1))
            .sum();
        peel(partition, rest) + simple_cardinality(partition, first) - 2 * overlap
    }
    peel(partition, spec.anchors())
}

/// The maximum simple U-chain size and one anchor per distinct maximizing
/// vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxSimpleChains {
    pub cardinality: usize,
    /// Increasing. When several anchors give the same vertex set, the
    /// largest one represents it.
    pub anchors: Vec<usize>,
}

/// Scans `a ∈ [1, max part]`. Larger anchors give the empty chain, and
/// `a = max part` already contains the whole top level, so nothing beyond is
/// needed.
pub fn max_simple_u_chains(partition: &Partition) -> MaxSimpleChains {
    let top = partition.max_part();
    let cardinality = (1..=top)
        .map(|a| simple_cardinality(partition, a))
        .max()
        .unwrap_or(0);
    let mut classes: BTreeMap<VertexSet, usize> = BTreeMap::new();
    for a in 1..=top {
        if simple_cardinality(partition, a) == cardinality {
            let spec = UChainSpec::simple(a).expect("single positive anchor");
            classes.insert(materialize(partition, &spec).union, a);
        }
    }
    let mut anchors: Vec<usize> = classes.into_values().collect();
    anchors.sort_unstable();
    MaxSimpleChains {
        cardinality,
        anchors,
    }
}

/// `u_0 = 0, u_1, …` up to the first `u_k = n`, where `u_k` is the largest
/// `k`-U-chain.
///
/// Strand sizes depend only on `(position, anchor)`, so the maximum over
/// anchor sequences is a longest-path dynamic program. Strands whose anchor
/// exceeds the largest part are empty, which makes `u_k` the running maximum
/// of the bounded optimum.
pub fn u_profile(partition: &Partition) -> Vec<usize> {
    let n = partition.n();
    let top = partition.max_part();
    let mut u = vec![0];
    // best[a] = best total with the current number of strands, last anchor a
    let mut best: Vec<Option<usize>> = vec![Some(0); top + 1];
    let mut k = 0;
    while *u.last().unwrap() < n {
        k += 1;
        assert!(
            k <= top + 1,
            "U-chains of {partition} never reach n = {n}; the anchor bound is wrong"
        );
        let mut next = vec![None; top + 1];
        for (a, slot) in next.iter_mut().enumerate().skip(1) {
            let prev = if k == 1 {
                Some(0)
            } else {
                (1..=a.saturating_sub(2)).filter_map(|b| best[b]).max()
            };
            if let Some(prev) = prev {
                *slot = Some(prev + strand_cardinality(partition, k, a));
            }
        }
        let bounded = next.iter().flatten().copied().max().unwrap_or(0);
        u.push(bounded.max(*u.last().unwrap()));
        best = next;
    }
    u
}

fn profile_to_partition(u: &[usize]) -> Partition {
    Partition::from_positive(u.windows(2).map(|w| w[1] - w[0]).collect())
}

/// `λ_U(P)`: successive differences of [`u_profile`].
pub fn lambda_u(partition: &Partition) -> Partition {
    profile_to_partition(&u_profile(partition))
}

/// Every spec of length `r` with anchors in `[1, max_anchor]`.
pub fn all_specs(max_anchor: usize, r: usize) -> Vec<UChainSpec> {
    fn extend(
        start: usize,
        max_anchor: usize,
        left: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<UChainSpec>,
    ) {
        if left == 0 {
            out.push(UChainSpec {
                anchors: prefix.clone(),
            });
            return;
        }
        for a in start..=max_anchor {
            prefix.push(a);
            extend(a + 2, max_anchor, left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(1, max_anchor, r, &mut Vec::new(), &mut out);
    out
}

/// [`u_profile`] by enumerating every spec and counting materialized
/// vertices.
pub fn u_profile_exhaustive(partition: &Partition) -> Vec<usize> {
    let n = partition.n();
    let top = partition.max_part();
    let mut u = vec![0];
    let mut k = 0;
    while *u.last().unwrap() < n {
        k += 1;
        assert!(k <= top + 1, "exhaustive U-chain search cannot reach n");
        let bounded = all_specs(top, k)
            .iter()
            .map(|s| materialize(partition, s).union.len())
            .max()
            .unwrap_or(0);
        u.push(bounded.max(*u.last().unwrap()));
    }
    u
}

pub fn lambda_u_exhaustive(partition: &Partition) -> Partition {
    profile_to_partition(&u_profile_exhaustive(partition))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Replacement {
    /// `{a, a+1}` already lies in the anchor set; nothing changes.
    AlreadyContained { cardinality: usize },
    /// Replacing the anchor at 1-based `position` by `a` does not shrink the
    /// chain.
    Witness {
        position: usize,
        replaced: UChainSpec,
        before: usize,
        after: usize,
    },
    /// No position works. Never expected; kept as data so sweeps can report
    /// it.
    Failure {
        before: usize,
        /// `(position, cardinality after replacement)` for every position
        /// whose replacement is a valid spec.
        tried: Vec<(usize, usize)>,
    },
}

/// Looks for a position `u` with `b_{u−1} < a < b_{u+1} − 1` such that
/// swapping `b_u` for `a` gives a valid spec at least as large. Returns the
/// smallest such `u`.
pub fn check_replacement(
    partition: &Partition,
    spec: &UChainSpec,
    a: usize,
) -> Result<Replacement> {
    let max = max_simple_u_chains(partition).cardinality;
    let size = simple_cardinality(partition, a);
    if size != max {
        return Err(Error::NotMaximumSimpleChain { a, size, max });
    }
    let before = cardinality_closed_form(partition, spec);
    if spec.contains_pair(a) {
        return Ok(Replacement::AlreadyContained {
            cardinality: before,
        });
    }
    let b = spec.anchors();
    let mut tried = Vec::new();
    for u in 1..=spec.r() {
        let lower = if u >= 2 { b[u - 2] } else { 0 };
        let fits_above = b.get(u).is_none_or(|&next| a + 1 < next);
        if !(lower < a && fits_above) {
            continue;
        }
        let Some(replaced) = spec.replace_as_set(u, a) else {
            continue;
        };
        let after = cardinality_closed_form(partition, &replaced);
        if after >= before {
            return Ok(Replacement::Witness {
                position: u,
                replaced,
                before,
                after,
            });
        }
        tried.push((u, after));
    }
    Ok(Replacement::Failure { before, tried })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn spec(a: &[usize]) -> UChainSpec {
        UChainSpec::new(a.to_vec()).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(UChainSpec::new(vec![]).is_ok());
        assert!(UChainSpec::new(vec![1, 3, 5]).is_ok());
        assert_eq!(
            UChainSpec::new(vec![2, 3]),
            Err(Error::InvalidSpec(vec![2, 3]))
        );
        assert_eq!(UChainSpec::new(vec![0]), Err(Error::InvalidSpec(vec![0])));
        assert_eq!(spec(&[2, 4]).expanded(), vec![2, 3, 4, 5]);
    }

    #[test]
    fn top_level_chain() {
        let q = part("7,5,4,3,2,1");
        let inst = materialize(&q, &spec(&[6]));
        let expected: VertexSet = (1..=7).map(|u| Vertex::new(u, 7, 1)).collect();
        assert_eq!(inst.union, expected);
    }

    #[test]
    fn anchor_above_every_part_is_empty() {
        let inst = materialize(&part("4,2,2,1,1"), &spec(&[6]));
        assert!(inst.union.is_empty());
    }

    #[test]
    fn closed_form_examples() {
        let q = part("6,6,5,4,3,2,2,1,1");
        assert_eq!(cardinality_closed_form(&q, &spec(&[5])), 17);
        assert_eq!(cardinality_closed_form(&q, &spec(&[1, 5])), 27);
        assert_eq!(cardinality_closed_form(&q, &spec(&[1, 3])), 25);
        assert_eq!(cardinality_closed_form(&q, &spec(&[3, 5])), 24);
        let q = part("5,4,3,3,2,1");
        assert_eq!(cardinality_closed_form(&q, &spec(&[3])), 12);
        assert_eq!(cardinality_closed_form(&q, &spec(&[2])), 12);
    }

    #[test]
    fn max_simple_examples() {
        let m = max_simple_u_chains(&part("6,6,5,4,3,2,2,1,1"));
        assert_eq!((m.cardinality, m.anchors), (17, vec![5]));
        let m = max_simple_u_chains(&part("5,4,3,3,2,1"));
        assert_eq!((m.cardinality, m.anchors), (12, vec![2, 3]));
        let m = max_simple_u_chains(&part("1,1"));
        assert_eq!((m.cardinality, m.anchors), (2, vec![1]));
    }

    #[test]
    fn max_simple_merges_equal_vertex_sets() {
        // U_4 and U_5 both equal the row of length 5
        let m = max_simple_u_chains(&part("5,1"));
        assert_eq!((m.cardinality, m.anchors), (5, vec![5]));
    }

    #[test]
    fn lambda_u_examples() {
        assert_eq!(lambda_u(&part("5,4,3,3,2,1")).parts(), &[12, 5, 1]);
        assert_eq!(lambda_u(&part("9")).parts(), &[9]);
        let q = part("4,2,2,1,1");
        assert_eq!(lambda_u(&q), lambda_u_exhaustive(&q));
    }

    #[test]
    fn replacement_examples() {
        let q = part("6,6,5,4,3,2,2,1,1");
        let r = check_replacement(&q, &spec(&[1, 3]), 5).unwrap();
        assert_eq!(
            r,
            Replacement::Witness {
                position: 2,
                replaced: spec(&[1, 5]),
                before: 25,
                after: 27
            }
        );
        // swapping the first anchor instead loses a vertex
        let other = spec(&[1, 3]).replace_as_set(1, 5).unwrap();
        assert_eq!(other, spec(&[3, 5]));
        assert_eq!(cardinality_closed_form(&q, &other), 24);

        let r = check_replacement(&q, &spec(&[2, 5]), 5).unwrap();
        assert_eq!(r, Replacement::AlreadyContained { cardinality: 26 });
    }

    #[test]
    fn replacement_requires_maximum() {
        let q = part("6,6,5,4,3,2,2,1,1");
        assert_eq!(
            check_replacement(&q, &spec(&[1, 3]), 3),
            Err(Error::NotMaximumSimpleChain {
                a: 3,
                size: 13,
                max: 17
            })
        );
    }

    #[test]
    fn all_specs_counts() {
        // anchors in [1,5] with gaps >= 2: pairs are C(4,2) = 6
        assert_eq!(all_specs(5, 2).len(), 6);
        assert_eq!(all_specs(5, 3).len(), 1);
        assert_eq!(all_specs(5, 4).len(), 0);
    }
}
