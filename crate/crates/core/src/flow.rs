//! Min-cost flow by successive shortest augmenting paths with Johnson
//! potentials. Dense Dijkstra; the graphs here have at most a few hundred
//! nodes.

const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
}

#[derive(Clone, Debug)]
pub struct MinCostFlow {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    potential: Vec<i64>,
    potentials_ready: bool,
}

impl MinCostFlow {
    pub fn new(nodes: usize) -> Self {
        MinCostFlow {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
            potential: vec![0; nodes],
            potentials_ready: false,
        }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) {
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, cost });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
    }

    /// Bellman-Ford from `source` over arcs with residual capacity, so that
    /// reduced costs become non-negative even with negative arc costs.
    fn init_potentials(&mut self, source: usize) {
        let n = self.nodes();
        let mut dist = vec![INF; n];
        dist[source] = 0;
        for _ in 0..n {
            let mut changed = false;
            for v in 0..n {
                if dist[v] == INF {
                    continue;
                }
                for &e in &self.adj[v] {
                    let arc = &self.arcs[e];
                    if arc.cap > 0 && dist[v] + arc.cost < dist[arc.to] {
                        dist[arc.to] = dist[v] + arc.cost;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for (p, d) in self.potential.iter_mut().zip(dist) {
            *p = if d == INF { 0 } else { d };
        }
        self.potentials_ready = true;
    }

    /// Finds the cheapest residual `source → sink` path. Returns its true cost
    /// and the arc used to enter each node on it, or `None` if the sink is
    /// unreachable.
    fn shortest_path(&mut self, source: usize, sink: usize) -> Option<(i64, Vec<usize>)> {
        if !self.potentials_ready {
            self.init_potentials(source);
        }
        let n = self.nodes();
        let mut dist = vec![INF; n];
        let mut via = vec![usize::MAX; n];
        let mut done = vec![false; n];
        dist[source] = 0;
        while let Some(v) = (0..n)
            .filter(|&v| !done[v] && dist[v] < INF)
            .min_by_key(|&v| (dist[v], v))
        {
            done[v] = true;
            for &e in &self.adj[v] {
                let arc = &self.arcs[e];
                if arc.cap <= 0 {
                    continue;
                }
                let reduced = arc.cost + self.potential[v] - self.potential[arc.to];
                debug_assert!(reduced >= 0, "negative reduced cost {reduced}");
                let nd = dist[v] + reduced;
                if nd < dist[arc.to] {
                    dist[arc.to] = nd;
                    via[arc.to] = e;
                }
            }
        }
        if dist[sink] == INF {
            return None;
        }
        // Capping at the sink distance keeps the potential feasible for
        // nodes that were not reached.
        let cap = dist[sink];
        for (p, d) in self.potential.iter_mut().zip(&dist) {
            *p += (*d).min(cap);
        }
        let true_cost = self.potential[sink] - self.potential[source];
        Some((true_cost, via))
    }

    /// Pushes one unit along the cheapest path if that path has negative
    /// cost. Returns the cost gained (always `< 0`) or `None` when no
    /// improving path remains.
    pub fn augment_unit_if_improving(&mut self, source: usize, sink: usize) -> Option<i64> {
        let (cost, via) = self.shortest_path(source, sink)?;
        if cost >= 0 {
            return None;
        }
        let mut v = sink;
        while v != source {
            let e = via[v];
            self.arcs[e].cap -= 1;
            self.arcs[e ^ 1].cap += 1;
            v = self.arcs[e ^ 1].to;
        }
        Some(cost)
    }
}
