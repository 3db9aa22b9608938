//! Maximum-weight bipartite matching (not necessarily perfect).
//!
//! Solved as min-cost flow with successive shortest paths: every augmenting
//! path adds one matched pair, and augmentation stops as soon as the best
//! path no longer increases the total weight. Dijkstra with node potentials
//! keeps reduced costs nonnegative; all arithmetic is integral.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: i64,
    cost: i64,
    rev: usize,
}

struct Graph {
    adj: Vec<Vec<Edge>>,
}

impl Graph {
    fn add(&mut self, from: usize, to: usize, cost: i64) {
        let (rf, rt) = (self.adj[to].len(), self.adj[from].len());
        self.adj[from].push(Edge { to, cap: 1, cost, rev: rf });
        self.adj[to].push(Edge { to: from, cap: 0, cost: -cost, rev: rt });
    }
}

const INF: i64 = i64::MAX / 4;

/// Returns the total weight and the matched `(left, right)` pairs, sorted.
/// Zero-weight edges are never used.
pub fn max_weight_matching(
    n_left: usize,
    n_right: usize,
    edges: &[(usize, usize, u64)],
) -> (u64, Vec<(usize, usize)>) {
    let source = 0;
    let sink = n_left + n_right + 1;
    let mut g = Graph {
        adj: vec![Vec::new(); sink + 1],
    };
    for l in 0..n_left {
        g.add(source, 1 + l, 0);
    }
    for r in 0..n_right {
        g.add(1 + n_left + r, sink, 0);
    }
    for &(l, r, w) in edges {
        assert!(l < n_left && r < n_right, "edge ({l}, {r}) out of range");
        if w > 0 {
            g.add(1 + l, 1 + n_left + r, -(w as i64));
        }
    }

    // Initial potentials: shortest distances in the (acyclic) initial graph.
    let mut pot = vec![INF; sink + 1];
    pot[source] = 0;
    for l in 0..n_left {
        pot[1 + l] = 0;
    }
    for l in 0..n_left {
        for e in &g.adj[1 + l] {
            if e.cap > 0 && e.to != source {
                pot[e.to] = pot[e.to].min(e.cost);
            }
        }
    }
    for r in 0..n_right {
        let v = 1 + n_left + r;
        if pot[v] < INF {
            pot[sink] = pot[sink].min(pot[v]);
        }
    }

    let mut total: i64 = 0;
    let n = sink + 1;
    loop {
        let mut dist = vec![INF; n];
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        dist[source] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0i64, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for (i, e) in g.adj[u].iter().enumerate() {
                if e.cap == 0 || pot[e.to] >= INF {
                    continue;
                }
                let nd = d + e.cost + pot[u] - pot[e.to];
                if nd < dist[e.to] {
                    dist[e.to] = nd;
                    prev[e.to] = Some((u, i));
                    heap.push(Reverse((nd, e.to)));
                }
            }
        }
        if dist[sink] >= INF {
            break;
        }
        let path_cost = dist[sink] + pot[sink] - pot[source];
        if path_cost >= 0 {
            break;
        }
        for v in 0..n {
            if dist[v] < INF {
                pot[v] += dist[v];
            }
        }
        let mut v = sink;
        while let Some((u, i)) = prev[v] {
            let rev = g.adj[u][i].rev;
            g.adj[u][i].cap -= 1;
            g.adj[v][rev].cap += 1;
            v = u;
        }
        total -= path_cost;
    }

    let mut pairs = Vec::new();
    for l in 0..n_left {
        for e in &g.adj[1 + l] {
            if e.to > n_left && e.to < sink && e.cap == 0 && e.cost < 0 {
                pairs.push((l, e.to - 1 - n_left));
            }
        }
    }
    pairs.sort_unstable();
    (total as u64, pairs)
}
