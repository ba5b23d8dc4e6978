//! U-processes: repeatedly strip a maximum simple U-chain, relabel what is
//! left as the poset of a smaller partition, and pull the removed sets back
//! into the original poset.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poset::{vertices_of, Vertex, VertexSet};
use crate::uchain::{all_specs, materialize, max_simple_u_chains, UChainSpec};

/// Default limit on the number of traces [`enumerate_full_processes`] may
/// produce before giving up.
pub const DEFAULT_TRACE_CAP: usize = 1_000_000;

/// The relabeling `ι: D_{P'} → D_P` after removing `U_a` from `D_P`:
/// levels below `a` are kept, everything else moves up two levels and one
/// column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelabelMap {
    pub a: usize,
}

impl RelabelMap {
    pub fn forward(&self, v: Vertex) -> Vertex {
        if v.p < self.a {
            v
        } else {
            Vertex::new(v.u + 1, v.p + 2, v.k)
        }
    }

    /// The map as a table over every vertex of `D_{P'}`.
    pub fn table(&self, next: &Partition) -> HashMap<Vertex, Vertex> {
        vertices_of(next)
            .into_iter()
            .map(|v| (v, self.forward(v)))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Removal {
    pub next: Partition,
    pub iota: RelabelMap,
    pub removed: VertexSet,
}

/// Removes `U_a` from `D_P`. Parts `a` and `a + 1` disappear, parts above
/// `a + 1` shrink by two, smaller parts stay.
pub fn remove_simple_chain(partition: &Partition, a: usize) -> Result<Removal> {
    let spec = UChainSpec::simple(a)?;
    let removed = materialize(partition, &spec).union;
    if removed.is_empty() {
        return Err(Error::EmptyChainRemoval(a));
    }
    let next = Partition::from_positive(
        partition
            .parts()
            .iter()
            .filter(|&&p| p != a && p != a + 1)
            .map(|&p| if p > a + 1 { p - 2 } else { p })
            .collect(),
    );
    Ok(Removal {
        next,
        iota: RelabelMap { a },
        removed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessStep {
    /// Anchor of the maximum simple U-chain removed from `partition`.
    pub a: usize,
    /// `P_i`, the partition this step acts on.
    pub partition: Partition,
    /// `P_{i+1}`.
    pub next: Partition,
    /// `C_i†`, in `D_{P_i}` coordinates.
    pub removed_local: VertexSet,
    /// `C_i`, pulled back to the original poset.
    pub removed: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessTrace {
    pub partition: Partition,
    pub steps: Vec<ProcessStep>,
    pub full: bool,
}

impl ProcessTrace {
    pub fn a_seq(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.a).collect()
    }

    /// `P_1 = P, P_2, …` including the final (empty, when full) partition.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out = vec![self.partition.clone()];
        out.extend(self.steps.iter().map(|s| s.next.clone()));
        out
    }

    pub fn removed_sets(&self) -> impl Iterator<Item = &VertexSet> {
        self.steps.iter().map(|s| &s.removed)
    }

    /// `|C_1|, |C_2|, …`.
    pub fn sizes(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.removed.len()).collect()
    }

    /// `C_1 ∪ ⋯ ∪ C_r`.
    pub fn prefix_union(&self, r: usize) -> VertexSet {
        self.steps[..r]
            .iter()
            .flat_map(|s| s.removed.iter().copied())
            .collect()
    }

    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            partition: self.partition.clone(),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    a: s.a,
                    next: s.next.clone(),
                    removed: s.removed.iter().copied().collect(),
                })
                .collect(),
            q: q_of_trace(self).ok(),
        }
    }
}

/// `{"P": [...], "steps": [{"a", "P_next", "removed"}], "Q": [...]}`.
/// `removed` is in the coordinates of the original poset.
#[derive(Clone, Debug, Serialize)]
pub struct TraceJson {
    #[serde(rename = "P")]
    pub partition: Partition,
    pub steps: Vec<StepJson>,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<Partition>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepJson {
    pub a: usize,
    #[serde(rename = "P_next")]
    pub next: Partition,
    pub removed: Vec<Vertex>,
}

/// State of a partially run process: the current partition and the
/// composite relabeling from its poset back to the original one.
#[derive(Clone)]
struct Frontier {
    current: Partition,
    to_original: HashMap<Vertex, Vertex>,
    steps: Vec<ProcessStep>,
}

impl Frontier {
    fn start(partition: &Partition) -> Self {
        Frontier {
            current: partition.clone(),
            to_original: vertices_of(partition).into_iter().map(|v| (v, v)).collect(),
            steps: Vec::new(),
        }
    }

    fn advance(&self, a: usize) -> Result<Frontier> {
        let removal = remove_simple_chain(&self.current, a)?;
        let removed = removal
            .removed
            .iter()
            .map(|v| self.to_original[v])
            .collect();
        let to_original = vertices_of(&removal.next)
            .into_iter()
            .map(|v| (v, self.to_original[&removal.iota.forward(v)]))
            .collect();
        let mut steps = self.steps.clone();
        steps.push(ProcessStep {
            a,
            partition: self.current.clone(),
            next: removal.next.clone(),
            removed_local: removal.removed,
            removed,
        });
        Ok(Frontier {
            current: removal.next,
            to_original,
            steps,
        })
    }

    fn into_trace(self, partition: &Partition) -> ProcessTrace {
        ProcessTrace {
            partition: partition.clone(),
            full: self.current.is_empty(),
            steps: self.steps,
        }
    }
}

/// Every full U-process of `partition`, branching over all maximum simple
/// U-chains (one per distinct vertex set) at every step. Traces come out in
/// lexicographic order of their anchor sequences.
pub fn enumerate_full_processes(partition: &Partition) -> Result<Vec<ProcessTrace>> {
    enumerate_full_processes_capped(partition, DEFAULT_TRACE_CAP)
}

pub fn enumerate_full_processes_capped(
    partition: &Partition,
    cap: usize,
) -> Result<Vec<ProcessTrace>> {
    fn dfs(
        root: &Partition,
        state: Frontier,
        cap: usize,
        out: &mut Vec<ProcessTrace>,
    ) -> Result<()> {
        if state.current.is_empty() {
            if out.len() == cap {
                return Err(Error::TraceLimitExceeded(cap));
            }
            out.push(state.into_trace(root));
            return Ok(());
        }
        // Every step removes at least one vertex, so the depth is at most n.
        for a in max_simple_u_chains(&state.current).anchors {
            dfs(root, state.advance(a)?, cap, out)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    if partition.is_empty() {
        return Ok(out);
    }
    dfs(partition, Frontier::start(partition), cap, &mut out)?;
    Ok(out)
}

/// The process that always removes the maximum simple U-chain sitting
/// highest in the diagram, i.e. the one with the largest anchor.
pub fn canonical_process(partition: &Partition) -> Result<ProcessTrace> {
    let mut state = Frontier::start(partition);
    while !state.current.is_empty() {
        let a = *max_simple_u_chains(&state.current)
            .anchors
            .last()
            .expect("a non-empty poset has a non-empty maximum simple U-chain");
        state = state.advance(a)?;
    }
    Ok(state.into_trace(partition))
}

/// `Q_𝔠(P) = (|C_1|, …, |C_r|)` of a full trace.
pub fn q_of_trace(trace: &ProcessTrace) -> Result<Partition> {
    if !trace.full {
        return Err(Error::NotFullProcess);
    }
    let sizes = trace.sizes();
    if sizes.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::NonMonotoneSizes(sizes));
    }
    Ok(Partition::from_positive(sizes))
}

/// Anchors in the original poset for the first `r` steps: the value whose
/// relabeled image was the anchor removed at each step.
///
/// After removing anchors `b_1, …` the surviving original levels are the
/// values outside `{b_j, b_j + 1}`, and they are renumbered `1, 2, 3, …` in
/// order. Step `i`'s anchor `a` is mapped back through that renumbering.
pub fn pullback_anchors(trace: &ProcessTrace, r: usize) -> Vec<usize> {
    let mut anchors: Vec<usize> = Vec::with_capacity(r);
    for step in &trace.steps[..r] {
        let excluded: Vec<usize> = anchors.iter().flat_map(|&b| [b, b + 1]).collect();
        let b = (1..)
            .filter(|x| !excluded.contains(x))
            .nth(step.a - 1)
            .expect("infinitely many candidates");
        anchors.push(b);
        anchors.sort_unstable();
    }
    anchors
}

/// A spec whose U-chain equals `C_1 ∪ ⋯ ∪ C_r` as a vertex set.
///
/// Tries [`pullback_anchors`] first and falls back to searching every spec
/// of length `r` with anchors up to the largest part plus one.
pub fn union_as_uchain(trace: &ProcessTrace, r: usize) -> Result<UChainSpec> {
    assert!(r <= trace.steps.len(), "prefix longer than the trace");
    let target = trace.prefix_union(r);
    if let Ok(spec) = UChainSpec::new(pullback_anchors(trace, r)) {
        if materialize(&trace.partition, &spec).union == target {
            return Ok(spec);
        }
    }
    all_specs(trace.partition.max_part() + 1, r)
        .into_iter()
        .find(|s| materialize(&trace.partition, s).union == target)
        .ok_or(Error::NoMatchingSpec { steps: r })
}
