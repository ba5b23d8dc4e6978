//! The poset `D_P` on the basis triples `(u, p, k)` of a nilpotent Jordan
//! matrix, built from its covering edges.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Basis vector `(u, p, k)`: position `u` in the `k`-th Jordan block of size
/// `p`. The block size `p` is the vertex's level.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct Vertex {
    pub u: usize,
    pub p: usize,
    pub k: usize,
}

impl Vertex {
    pub const fn new(u: usize, p: usize, k: usize) -> Self {
        Vertex { u, p, k }
    }
}

// Total order used everywhere for determinism: by level, then row, then column.
impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.k, self.u).cmp(&(other.p, other.k, other.u))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.u, self.p, self.k)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<[usize; 3]> for Vertex {
    fn from([u, p, k]: [usize; 3]) -> Self {
        Vertex { u, p, k }
    }
}

impl From<Vertex> for [usize; 3] {
    fn from(v: Vertex) -> Self {
        [v.u, v.p, v.k]
    }
}

pub type VertexSet = BTreeSet<Vertex>;

/// The four families of covering edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// Top row of a level down to the bottom row of the next smaller level.
    Beta,
    /// Top row of a level up to the bottom row of the next larger level,
    /// shifted right by the level difference.
    Alpha,
    /// One row up within a level.
    Row,
    /// Top row to the next column of the bottom row, isolated levels only.
    Omega,
}

/// Every vertex `(u, p, k)` of `D_P`, sorted.
pub fn vertices_of(partition: &Partition) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(partition.n());
    for (p, m) in partition.multiplicities() {
        for k in 1..=m {
            for u in 1..=p {
                out.push(Vertex::new(u, p, k));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Poset {
    partition: Partition,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    covers: Vec<(usize, usize, EdgeKind)>,
    /// Row-major reflexive-transitive closure, `leq[i * n + j]` iff `v_i ≤ v_j`.
    leq: Vec<bool>,
}

impl Poset {
    pub fn build(partition: &Partition) -> Self {
        let vertices = vertices_of(partition);
        let index: HashMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let levels: Vec<usize> = partition.distinct_parts().collect();
        let mut covers = Vec::new();
        let mut push = |from: Vertex, to: Vertex, kind| {
            covers.push((index[&from], index[&to], kind));
        };

        for (i, &p) in levels.iter().enumerate() {
            let top = partition.mult(p);
            if i > 0 {
                let lower = levels[i - 1];
                for u in 1..=lower {
                    push(
                        Vertex::new(u, p, top),
                        Vertex::new(u, lower, 1),
                        EdgeKind::Beta,
                    );
                }
            }
            if let Some(&upper) = levels.get(i + 1) {
                for u in 1..=p {
                    push(
                        Vertex::new(u, p, top),
                        Vertex::new(u + upper - p, upper, 1),
                        EdgeKind::Alpha,
                    );
                }
            }
            for k in 1..top {
                for u in 1..=p {
                    push(
                        Vertex::new(u, p, k),
                        Vertex::new(u, p, k + 1),
                        EdgeKind::Row,
                    );
                }
            }
            // Missing neighbours count as infinitely far away.
            let isolated_below = i == 0 || p - levels[i - 1] > 1;
            let isolated_above = levels.get(i + 1).is_none_or(|&q| q - p > 1);
            if isolated_below && isolated_above {
                for u in 1..p {
                    push(
                        Vertex::new(u, p, top),
                        Vertex::new(u + 1, p, 1),
                        EdgeKind::Omega,
                    );
                }
            }
        }
        covers.sort_unstable();
        covers.dedup();

        let n = vertices.len();
        let leq = transitive_closure(n, covers.iter().map(|&(a, b, _)| (a, b)));
        Poset {
            partition: partition.clone(),
            vertices,
            index,
            covers,
            leq,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        self.vertices[i]
    }

    pub fn index_of(&self, v: &Vertex) -> Result<usize> {
        self.index
            .get(v)
            .copied()
            .ok_or(Error::VertexNotInPoset(*v))
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    /// Covering edges as index pairs, sorted, with their family.
    pub fn cover_edges(&self) -> &[(usize, usize, EdgeKind)] {
        &self.covers
    }

    pub fn covers(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.covers
            .iter()
            .map(|&(a, b, _)| (self.vertices[a], self.vertices[b]))
    }

    #[inline]
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    #[inline]
    pub fn lt_idx(&self, i: usize, j: usize) -> bool {
        i != j && self.leq_idx(i, j)
    }

    #[inline]
    pub fn comparable_idx(&self, i: usize, j: usize) -> bool {
        self.leq_idx(i, j) || self.leq_idx(j, i)
    }

    pub fn leq(&self, a: &Vertex, b: &Vertex) -> Result<bool> {
        Ok(self.leq_idx(self.index_of(a)?, self.index_of(b)?))
    }

    /// True iff every two elements of `set` are comparable.
    pub fn is_chain<'a, I>(&self, set: I) -> Result<bool>
    where
        I: IntoIterator<Item = &'a Vertex>,
    {
        let idx = set
            .into_iter()
            .map(|v| self.index_of(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(is_chain_indices(self, &idx))
    }

    /// Antisymmetry of the closure, i.e. the cover digraph has no cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| !(self.leq_idx(i, j) && self.leq_idx(j, i))))
    }

    /// Covering relation recomputed from the closure: `(i, j)` with `i < j`
    /// and nothing strictly between.
    pub fn covering_relation_of_closure(&self) -> BTreeSet<(usize, usize)> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt_idx(i, j)
                    && !(0..n).any(|m| m != i && m != j && self.lt_idx(i, m) && self.lt_idx(m, j))
                {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    /// Edges of the diagram that are implied by other edges, i.e. not
    /// covering pairs of the closure.
    pub fn redundant_edges(&self) -> Vec<(Vertex, Vertex, EdgeKind)> {
        let covering = self.covering_relation_of_closure();
        self.covers
            .iter()
            .filter(|&&(a, b, _)| !covering.contains(&(a, b)))
            .map(|&(a, b, kind)| (self.vertices[a], self.vertices[b], kind))
            .collect()
    }

    /// Graphviz rendering of the cover diagram. Each level gets a subgraph
    /// and each row of a level is pinned to one rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let part = self.partition.to_string();
        writeln!(out, "digraph D_P {{").unwrap();
        writeln!(out, "  label=\"D_P for P = {part}\";").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
        for (p, m) in self.partition.multiplicities() {
            writeln!(out, "  subgraph cluster_level_{p} {{").unwrap();
            writeln!(out, "    label=\"level {p}\";").unwrap();
            for k in 1..=m {
                write!(out, "    {{ rank=same;").unwrap();
                for u in 1..=p {
                    write!(out, " \"{}\";", Vertex::new(u, p, k)).unwrap();
                }
                writeln!(out, " }}").unwrap();
            }
            writeln!(out, "  }}").unwrap();
        }
        for &(a, b, kind) in &self.covers {
            let style = match kind {
                EdgeKind::Beta => "beta",
                EdgeKind::Alpha => "alpha",
                EdgeKind::Row => "e",
                EdgeKind::Omega => "omega",
            };
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{style}\"];",
                self.vertices[a], self.vertices[b]
            )
            .unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            vertices: self.vertices.clone(),
            covers: self.covers().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// Serialized form: `{"vertices": [[u,p,k],...], "covers": [[[u,p,k],[u',p',k']],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub vertices: Vec<Vertex>,
    pub covers: Vec<[Vertex; 2]>,
}

pub(crate) fn is_chain_indices(poset: &Poset, idx: &[usize]) -> bool {
    idx.iter()
        .enumerate()
        .all(|(a, &i)| idx[a + 1..].iter().all(|&j| poset.comparable_idx(i, j)))
}

/// Reflexive-transitive closure of a digraph on `0..n`, dense row-major.
pub(crate) fn transitive_closure<I>(n: usize, edges: I) -> Vec<bool>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut reach = vec![false; n * n];
    for i in 0..n {
        reach[i * n + i] = true;
    }
    for (a, b) in edges {
        reach[a * n + b] = true;
    }
    // Warshall
    for m in 0..n {
        for i in 0..n {
            if reach[i * n + m] {
                for j in 0..n {
                    if reach[m * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
    }
    reach
}
