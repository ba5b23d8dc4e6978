//! Greene's chain invariant: `c_k` is the largest size of a union of `k`
//! chains, and `λ_k = c_k − c_{k−1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::MinCostFlow;
use crate::partition::Partition;
use crate::poset::{is_chain_indices, Poset};

/// `c[k]` for `k = 0, 1, …` up to the first `k` with `c[k] = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainUnionProfile {
    pub c: Vec<usize>,
}

impl ChainUnionProfile {
    pub fn n(&self) -> usize {
        *self.c.last().unwrap_or(&0)
    }

    /// `c_k`, which stays at `n` once reached.
    pub fn get(&self, k: usize) -> usize {
        self.c.get(k).copied().unwrap_or_else(|| self.n())
    }

    /// Successive differences. Fails if they are not weakly decreasing.
    pub fn lambda(&self) -> Result<Partition> {
        let diffs: Vec<usize> = self.c.windows(2).map(|w| w[1] - w[0]).collect();
        for (k, w) in diffs.windows(2).enumerate() {
            if w[1] > w[0] {
                return Err(Error::NonMonotoneProfile { k: k + 2 });
            }
        }
        Ok(Partition::from_positive(diffs))
    }
}

/// Incremental solver: each call to [`ChainUnionSolver::next`] adds one more
/// chain and returns the new `c_k`.
///
/// Chains are vertex-disjoint paths in the comparability DAG (any union of
/// `k` chains can be made disjoint without shrinking). Every vertex is split
/// into an in/out pair joined by a unit arc of cost −1, so the cheapest flow
/// of `k` units covers the most vertices.
pub struct ChainUnionSolver {
    graph: MinCostFlow,
    covered: usize,
    n: usize,
    exhausted: bool,
}

const SOURCE: usize = 0;
const SINK: usize = 1;

impl ChainUnionSolver {
    pub fn new(poset: &Poset) -> Self {
        let n = poset.len();
        let node_in = |i: usize| 2 + 2 * i;
        let node_out = |i: usize| 3 + 2 * i;
        let mut graph = MinCostFlow::new(2 + 2 * n);
        for i in 0..n {
            graph.add_arc(SOURCE, node_in(i), 1, 0);
            graph.add_arc(node_in(i), node_out(i), 1, -1);
            graph.add_arc(node_out(i), SINK, 1, 0);
            for j in 0..n {
                if poset.lt_idx(i, j) {
                    graph.add_arc(node_out(i), node_in(j), 1, 0);
                }
            }
        }
        ChainUnionSolver {
            graph,
            covered: 0,
            n,
            exhausted: n == 0,
        }
    }

    /// Adds one chain; returns the new maximum union size.
    pub fn next_union(&mut self) -> usize {
        if !self.exhausted {
            match self.graph.augment_unit_if_improving(SOURCE, SINK) {
                Some(gain) => self.covered += (-gain) as usize,
                None => self.exhausted = true,
            }
            if self.covered == self.n {
                self.exhausted = true;
            }
        }
        self.covered
    }
}

/// The full profile `c_0, c_1, …` up to `n`.
pub fn chain_union_profile(poset: &Poset) -> ChainUnionProfile {
    let mut solver = ChainUnionSolver::new(poset);
    let mut c = vec![0];
    while *c.last().unwrap() < poset.len() {
        let next = solver.next_union();
        assert!(
            next > *c.last().unwrap(),
            "flow stalled below n: every single vertex is a chain"
        );
        c.push(next);
    }
    ChainUnionProfile { c }
}

/// `c_k` by min-cost flow.
pub fn max_k_chain_union(poset: &Poset, k: usize) -> usize {
    let mut solver = ChainUnionSolver::new(poset);
    let mut best = 0;
    for _ in 0..k {
        best = solver.next_union();
    }
    best
}

/// `λ(D_P)`.
pub fn greene_lambda(poset: &Poset) -> Result<Partition> {
    chain_union_profile(poset).lambda()
}

pub const ORACLE_LIMIT: usize = 12;

/// `c_k` by brute force, sharing nothing with the flow code.
///
/// For every vertex subset the least number of chains partitioning it is
/// computed by dynamic programming over subsets (peel off a chain through
/// the lowest element); `c_k` is the largest subset needing at most `k`.
pub fn oracle_max_k_chain_union(poset: &Poset, k: usize) -> Result<usize> {
    Ok(oracle_profile(poset)?.get(k))
}

/// Brute-force version of [`chain_union_profile`].
pub fn oracle_profile(poset: &Poset) -> Result<ChainUnionProfile> {
    let n = poset.len();
    if n > ORACLE_LIMIT {
        return Err(Error::PosetTooLarge {
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    let full = 1usize << n;
    let members = |mask: usize| -> Vec<usize> { (0..n).filter(|i| mask >> i & 1 == 1).collect() };
    let is_chain: Vec<bool> = (0..full)
        .map(|mask| is_chain_indices(poset, &members(mask)))
        .collect();

    let mut cover = vec![usize::MAX; full];
    cover[0] = 0;
    for mask in 1..full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // chains T = low ∪ S for every S ⊆ rest
        let mut sub = rest;
        loop {
            let chain = sub | low;
            if is_chain[chain] {
                let candidate = cover[mask ^ chain] + 1;
                if candidate < cover[mask] {
                    cover[mask] = candidate;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }

    let mut best = vec![0usize; n + 1];
    for (mask, &need) in cover.iter().enumerate().take(full) {
        let size = mask.count_ones() as usize;
        if size > best[need] {
            best[need] = size;
        }
    }
    let mut c = vec![0];
    let mut running = 0;
    for &b in best.iter().skip(1) {
        if running == n {
            break;
        }
        running = running.max(b);
        c.push(running);
    }
    Ok(ChainUnionProfile { c })
}
