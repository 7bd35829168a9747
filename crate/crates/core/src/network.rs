//! Fork-join network topology: construction, validation, and the
//! topological quantities used throughout the crate (degree, distance,
//! diameter, minimum level).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node count up to which `diameter` runs an all-sources BFS.
pub const EXACT_DIAMETER_CUTOFF: usize = 20_000;

/// On-disk representation of a network. Arc order is irrelevant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub name: String,
    pub buffer_size: u32,
    pub num_nodes: usize,
    pub arcs: Vec<[usize; 2]>,
}

/// A single broken network invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    NoNodes,
    ZeroBuffer,
    InvalidNode { arc: (usize, usize) },
    SelfLoop { node: usize },
    DuplicateArc { arc: (usize, usize) },
    Cycle,
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "network has no nodes"),
            Violation::ZeroBuffer => write!(f, "buffer size must be at least 1"),
            Violation::InvalidNode { arc } => write!(f, "arc {arc:?} references a missing node"),
            Violation::SelfLoop { node } => write!(f, "self-loop on node {node}"),
            Violation::DuplicateArc { arc } => write!(f, "duplicate arc {arc:?}"),
            Violation::Cycle => write!(f, "directed cycle found"),
            Violation::Disconnected { components } => {
                write!(f, "network is disconnected ({components} components)")
            }
        }
    }
}

/// Checks every network invariant and reports all violations found.
///
/// Node ids are `0..num_nodes`. A network is valid when it is a weakly
/// connected DAG without self-loops or repeated arcs.
pub fn validate(num_nodes: usize, arcs: &[(usize, usize)], buffer_size: u32) -> Vec<Violation> {
    let mut out = Vec::new();
    if num_nodes == 0 {
        out.push(Violation::NoNodes);
    }
    if buffer_size == 0 {
        out.push(Violation::ZeroBuffer);
    }
    let mut seen = HashSet::with_capacity(arcs.len());
    let mut usable = Vec::with_capacity(arcs.len());
    for &(u, v) in arcs {
        if u >= num_nodes || v >= num_nodes {
            out.push(Violation::InvalidNode { arc: (u, v) });
            continue;
        }
        if u == v {
            out.push(Violation::SelfLoop { node: u });
            continue;
        }
        if !seen.insert((u, v)) {
            out.push(Violation::DuplicateArc { arc: (u, v) });
            continue;
        }
        usable.push((u, v));
    }
    if num_nodes == 0 {
        return out;
    }

    // Kahn's algorithm.
    let mut indeg = vec![0usize; num_nodes];
    let mut succ = vec![Vec::new(); num_nodes];
    for &(u, v) in &usable {
        indeg[v] += 1;
        succ[u].push(v);
    }
    let mut queue: VecDeque<usize> = (0..num_nodes).filter(|&v| indeg[v] == 0).collect();
    let mut visited = 0;
    while let Some(u) = queue.pop_front() {
        visited += 1;
        for &v in &succ[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if visited < num_nodes {
        out.push(Violation::Cycle);
    }

    let components = count_components(num_nodes, &usable);
    if components > 1 {
        out.push(Violation::Disconnected { components });
    }
    out
}

fn count_components(n: usize, arcs: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for &(u, v) in arcs {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// An immutable, validated fork-join network with uniform buffer size.
#[derive(Clone, Debug)]
pub struct Network {
    name: String,
    buffer_size: u32,
    arcs: Vec<(usize, usize)>,
    upstream: Vec<Vec<usize>>,
    downstream: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    topo_order: Vec<usize>,
}

impl Network {
    pub fn new(
        name: impl Into<String>,
        num_nodes: usize,
        arcs: Vec<(usize, usize)>,
        buffer_size: u32,
    ) -> Result<Self> {
        let violations = validate(num_nodes, &arcs, buffer_size);
        if !violations.is_empty() {
            return Err(Error::InvalidNetwork(violations));
        }
        let mut upstream = vec![Vec::new(); num_nodes];
        let mut downstream = vec![Vec::new(); num_nodes];
        let mut neighbors = vec![Vec::new(); num_nodes];
        for &(u, v) in &arcs {
            downstream[u].push(v);
            upstream[v].push(u);
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in upstream
            .iter_mut()
            .chain(downstream.iter_mut())
            .chain(neighbors.iter_mut())
        {
            list.sort_unstable();
        }

        // Kahn with a min-heap so the order is canonical.
        let mut indeg: Vec<usize> = upstream.iter().map(Vec::len).collect();
        let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..num_nodes)
            .filter(|&v| indeg[v] == 0)
            .map(std::cmp::Reverse)
            .collect();
        let mut topo_order = Vec::with_capacity(num_nodes);
        while let Some(std::cmp::Reverse(u)) = heap.pop() {
            topo_order.push(u);
            for &v in &downstream[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(std::cmp::Reverse(v));
                }
            }
        }

        Ok(Network {
            name: name.into(),
            buffer_size,
            arcs,
            upstream,
            downstream,
            neighbors,
            topo_order,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn buffer_size(&self) -> u32 {
        self.buffer_size
    }

    pub fn num_nodes(&self) -> usize {
        self.upstream.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Nodes `u` with an arc `(u, v)`.
    pub fn upstream(&self, v: usize) -> &[usize] {
        &self.upstream[v]
    }

    /// Nodes `w` with an arc `(v, w)`.
    pub fn downstream(&self, v: usize) -> &[usize] {
        &self.downstream[v]
    }

    /// Neighbours in the undirected counterpart.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo_order
    }

    pub fn sources(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_nodes()).filter(|&v| self.upstream[v].is_empty())
    }

    pub fn sinks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_nodes()).filter(|&v| self.downstream[v].is_empty())
    }

    /// Same topology with a different buffer size.
    pub fn with_buffer_size(&self, buffer_size: u32) -> Result<Self> {
        if buffer_size == 0 {
            return Err(Error::InvalidNetwork(vec![Violation::ZeroBuffer]));
        }
        let mut net = self.clone();
        net.buffer_size = buffer_size;
        Ok(net)
    }

    pub fn to_file(&self) -> NetworkFile {
        NetworkFile {
            name: self.name.clone(),
            buffer_size: self.buffer_size,
            num_nodes: self.num_nodes(),
            arcs: self.arcs.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_file(file: NetworkFile) -> Result<Self> {
        let arcs = file.arcs.iter().map(|a| (a[0], a[1])).collect();
        Network::new(file.name, file.num_nodes, arcs, file.buffer_size)
    }

    /// Undirected BFS distances from every node of `sources`; `usize::MAX`
    /// marks unreachable nodes.
    pub fn bfs_from(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_nodes()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u] + 1;
            for &w in &self.neighbors[u] {
                if dist[w] == usize::MAX {
                    dist[w] = d;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest BFS distance from `v`, reusing caller-provided buffers.
    fn eccentricity_with(&self, v: usize, dist: &mut [usize], queue: &mut Vec<usize>) -> usize {
        dist.fill(usize::MAX);
        queue.clear();
        dist[v] = 0;
        queue.push(v);
        let mut head = 0;
        let mut ecc = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let d = dist[u] + 1;
            for &w in &self.neighbors[u] {
                if dist[w] == usize::MAX {
                    dist[w] = d;
                    ecc = d;
                    queue.push(w);
                }
            }
        }
        ecc
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        let mut dist = vec![0; self.num_nodes()];
        let mut queue = Vec::with_capacity(self.num_nodes());
        self.eccentricity_with(v, &mut dist, &mut queue)
    }
}

impl Serialize for Network {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

/// Maximum over nodes of in-degree plus out-degree.
pub fn degree(net: &Network) -> usize {
    (0..net.num_nodes())
        .map(|v| net.upstream(v).len() + net.downstream(v).len())
        .max()
        .unwrap_or(0)
}

/// Undirected shortest-path length between `u` and `v`.
pub fn distance(net: &Network, u: usize, v: usize) -> Result<usize> {
    let n = net.num_nodes();
    if u >= n || v >= n {
        return Err(Error::NodeOutOfRange { node: u.max(v), num_nodes: n });
    }
    match net.bfs_from(&[u])[v] {
        usize::MAX => Err(Error::Unreachable { from: u, to: v }),
        d => Ok(d),
    }
}

/// Diameter of the undirected counterpart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Diameter {
    /// Exact diameter, or the double-sweep lower bound when `exact` is false.
    pub value: usize,
    pub exact: bool,
    /// A value guaranteed to be at least the true diameter.
    pub upper_bound: usize,
}

pub fn diameter(net: &Network) -> Diameter {
    diameter_with_cutoff(net, EXACT_DIAMETER_CUTOFF)
}

pub fn diameter_with_cutoff(net: &Network, cutoff: usize) -> Diameter {
    let n = net.num_nodes();
    let mut dist = vec![0; n];
    let mut queue = Vec::with_capacity(n);
    if n <= cutoff {
        let value = (0..n)
            .map(|v| net.eccentricity_with(v, &mut dist, &mut queue))
            .max()
            .unwrap_or(0);
        return Diameter { value, exact: true, upper_bound: value };
    }
    // Double sweep: the farthest node from 0, then the farthest from it.
    let first = net.eccentricity_with(0, &mut dist, &mut queue);
    let far = *queue.last().unwrap_or(&0);
    let value = net.eccentricity_with(far, &mut dist, &mut queue).max(first);
    Diameter { value, exact: false, upper_bound: 2 * first }
}

/// Nodes within undirected distance `radius` of `v`, sorted by id.
pub fn ball(net: &Network, v: usize, radius: usize) -> Vec<usize> {
    ball_size_profile(net, v, radius)
        .1
}

/// Ball sizes `|B(v, r)|` for `r = 0..=max_radius`, plus the members of
/// the largest ball.
pub fn ball_size_profile(net: &Network, v: usize, max_radius: usize) -> (Vec<usize>, Vec<usize>) {
    let mut dist = vec![usize::MAX; net.num_nodes()];
    let mut queue = VecDeque::new();
    let mut members = vec![v];
    let mut counts = vec![0usize; max_radius + 1];
    dist[v] = 0;
    counts[0] = 1;
    queue.push_back(v);
    while let Some(u) = queue.pop_front() {
        let d = dist[u] + 1;
        if d > max_radius {
            continue;
        }
        for &w in net.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = d;
                counts[d] += 1;
                members.push(w);
                queue.push_back(w);
            }
        }
    }
    for r in 1..=max_radius {
        counts[r] += counts[r - 1];
    }
    members.sort_unstable();
    (counts, members)
}

/// True when an integer labelling with `1 <= l(j) - l(i) <= k` on every arc
/// exists; returns a witnessing labelling normalised to start at zero.
///
/// Difference constraints `l(j) - l(i) >= 1` and `l(j) - l(i) <= k` become
/// edges `j -> i` (weight -1) and `i -> j` (weight k); the system is feasible
/// iff that graph has no negative cycle. Queue-based Bellman-Ford.
pub fn level_feasible(net: &Network, k: usize) -> Option<Vec<i64>> {
    let n = net.num_nodes();
    let k = k as i64;
    // Virtual source at distance zero to everything.
    let mut pot = vec![0i64; n];
    let mut in_queue = vec![true; n];
    let mut relax_count = vec![0usize; n];
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(x) = queue.pop_front() {
        in_queue[x] = false;
        // x -> upstream i with weight -1 (from constraint l(x) - l(i) >= 1)
        // x -> downstream j with weight k (from l(j) - l(x) <= k)
        let dx = pot[x];
        let edges = net
            .upstream(x)
            .iter()
            .map(|&i| (i, dx - 1))
            .chain(net.downstream(x).iter().map(|&j| (j, dx + k)));
        for (y, cand) in edges {
            if cand < pot[y] {
                pot[y] = cand;
                relax_count[y] += 1;
                if relax_count[y] > n {
                    return None;
                }
                if !in_queue[y] {
                    in_queue[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let min = pot.iter().copied().min().unwrap_or(0);
    Some(pot.into_iter().map(|p| p - min).collect())
}

/// Minimum level `L*` and an optimal topological labelling.
///
/// Binary search over `k` in `[1, |V| - 1]`; `k = |V| - 1` is always
/// feasible for a DAG. A single node reports level 1.
pub fn minimum_level(net: &Network) -> (usize, Vec<i64>) {
    let n = net.num_nodes();
    let (mut lo, mut hi) = (1usize, n.saturating_sub(1).max(1));
    let mut best = level_feasible(net, hi).expect("a DAG always admits level |V|-1");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match level_feasible(net, mid) {
            Some(labels) => {
                hi = mid;
                best = labels;
            }
            None => lo = mid + 1,
        }
    }
    (hi, best)
}

/// Largest `l(j) - l(i)` over arcs, or `None` when the network has no arcs.
pub fn max_arc_gap(net: &Network, labels: &[i64]) -> Option<usize> {
    net.arcs()
        .iter()
        .map(|&(i, j)| (labels[j] - labels[i]).max(0) as usize)
        .max()
}

/// Topological summary of a network.
#[derive(Clone, Debug, Serialize)]
pub struct TopologyMetrics {
    pub degree: usize,
    pub diameter: usize,
    pub diameter_exact: bool,
    pub min_level: usize,
    pub labelling: Vec<i64>,
    pub num_nodes: usize,
    pub num_arcs: usize,
    pub num_sources: usize,
    pub num_sinks: usize,
}

pub fn metrics(net: &Network) -> TopologyMetrics {
    let diam = diameter(net);
    let (min_level, labelling) = minimum_level(net);
    TopologyMetrics {
        degree: degree(net),
        diameter: diam.value,
        diameter_exact: diam.exact,
        min_level,
        labelling,
        num_nodes: net.num_nodes(),
        num_arcs: net.arcs().len(),
        num_sources: net.sources().count(),
        num_sinks: net.sinks().count(),
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<Network> {
    let text = std::fs::read_to_string(path.as_ref())?;
    let file: NetworkFile = serde_json::from_str(&text)?;
    Network::from_file(file)
}

/// Writes the network JSON next to `path` and renames it into place.
pub fn save(net: &Network, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(&net.to_file())?;
    crate::io::write_atomic(path.as_ref(), text.as_bytes())
}
