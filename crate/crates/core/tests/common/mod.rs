//! Random instances and brute-force oracles shared by the integration tests.
//! Oracles use only the raw adjacency lists, never the library algorithms.

#![allow(dead_code)]

use std::collections::VecDeque;

use fjqn::percolation::{PrecedenceNode, WeightField};
use fjqn::Network;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Connected DAG: node `i > 0` of a hidden order hangs off `parents[i-1]`,
/// plus the extra forward arcs flagged in `extra` (pairs in row-major
/// order); ids are scrambled by `perm`.
pub fn build_dag(n: usize, parents: &[usize], extra: &[bool], perm: &[usize], b: u32) -> Network {
    let mut arcs = Vec::new();
    for i in 1..n {
        arcs.push((perm[parents[i - 1] % i], perm[i]));
    }
    let mut k = 0;
    for a in 0..n {
        for c in a + 1..n {
            let arc = (perm[a], perm[c]);
            if extra.get(k).copied().unwrap_or(false) && !arcs.contains(&arc) {
                arcs.push(arc);
            }
            k += 1;
        }
    }
    Network::new("random", n, arcs, b).expect("valid by construction")
}

pub fn random_dag(rng: &mut impl Rng, min_n: usize, max_n: usize, b: u32, density: f64) -> Network {
    let n = rng.gen_range(min_n..=max_n);
    let parents: Vec<usize> = (1..n).map(|i| rng.gen_range(0..i)).collect();
    let extra: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.gen_bool(density)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    build_dag(n, &parents, &extra, &perm, b)
}

pub fn dag_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Network> {
    (min_n..=max_n, 1u32..=2)
        .prop_flat_map(|(n, b)| {
            (
                Just(n),
                Just(b),
                proptest::collection::vec(any::<usize>(), n - 1),
                proptest::collection::vec(proptest::bool::weighted(0.3), n * (n - 1) / 2),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, b, parents, extra, perm)| build_dag(n, &parents, &extra, &perm, b))
}

/// Successors of a precedence node straight from the definition.
pub fn successors(net: &Network, p: PrecedenceNode) -> Vec<PrecedenceNode> {
    let b = u64::from(net.buffer_size());
    let mut out: Vec<PrecedenceNode> = net.upstream(p.v).iter().map(|&u| PrecedenceNode::new(p.m, u)).collect();
    if p.m >= 1 {
        out.push(PrecedenceNode::new(p.m - 1, p.v));
    }
    if p.m >= b {
        out.extend(net.downstream(p.v).iter().map(|&w| PrecedenceNode::new(p.m - b, w)));
    }
    out
}

/// Maximum path weight from `p` by enumerating every path.
pub fn brute_max_path(net: &Network, field: &WeightField<'_>, p: PrecedenceNode) -> f64 {
    let tail = successors(net, p)
        .into_iter()
        .map(|q| brute_max_path(net, field, q))
        .fold(0.0f64, f64::max);
    field.weight(p) + tail
}

/// Number of maximal paths from `p`, to keep enumeration affordable.
pub fn count_paths(net: &Network, p: PrecedenceNode, cap: u64) -> u64 {
    let succ = successors(net, p);
    if succ.is_empty() {
        return 1;
    }
    let mut total = 0;
    for q in succ {
        total += count_paths(net, q, cap);
        if total > cap {
            return total;
        }
    }
    total
}

/// All-pairs undirected distances by Floyd-Warshall.
pub fn floyd(net: &Network) -> Vec<Vec<usize>> {
    let n = net.num_nodes();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for &(u, v) in net.arcs() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn brute_diameter(net: &Network) -> usize {
    floyd(net).iter().flatten().copied().max().unwrap_or(0)
}

/// Smallest `k` with an integer labelling `1 <= l(j) - l(i) <= k` on every
/// arc, by backtracking over nodes in undirected BFS order from node 0
/// (labels are shift invariant, so node 0 is pinned at 0).
pub fn brute_min_level(net: &Network) -> usize {
    let n = net.num_nodes();
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut q = VecDeque::from([0usize]);
    while let Some(u) = q.pop_front() {
        for &w in net.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                q.push_back(w);
            }
        }
    }
    (1..=n.max(2))
        .find(|&k| {
            let mut labels = vec![None; n];
            labels[0] = Some(0);
            assign(net, &order, 1, &mut labels, k as i64)
        })
        .expect("k = n - 1 suffices")
}

fn assign(net: &Network, order: &[usize], pos: usize, labels: &mut Vec<Option<i64>>, k: i64) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let (mut lo, mut hi) = (i64::MIN, i64::MAX);
    for &u in net.upstream(v) {
        if let Some(lu) = labels[u] {
            lo = lo.max(lu + 1);
            hi = hi.min(lu + k);
        }
    }
    for &w in net.downstream(v) {
        if let Some(lw) = labels[w] {
            lo = lo.max(lw - k);
            hi = hi.min(lw - 1);
        }
    }
    let mut x = lo;
    while x <= hi {
        labels[v] = Some(x);
        if assign(net, order, pos + 1, labels, k) {
            return true;
        }
        x += 1;
    }
    labels[v] = None;
    false
}

/// Largest class of nodes sharing a distance vector to `subsets`, from a
/// distance matrix.
pub fn brute_lambda(dist: &[Vec<usize>], subsets: &[Vec<usize>]) -> usize {
    let n = dist.len();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|v| subsets.iter().map(|w| w.iter().map(|&x| dist[v][x]).min().unwrap()).collect())
        .collect();
    let mut best = 0;
    for r in &rows {
        best = best.max(rows.iter().filter(|s| *s == r).count());
    }
    best
}

pub fn brute_is_resolving(dist: &[Vec<usize>], w: &[usize]) -> bool {
    let singles: Vec<Vec<usize>> = w.iter().map(|&x| vec![x]).collect();
    brute_lambda(dist, &singles) == 1
}
