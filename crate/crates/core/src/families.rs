//! Deterministic generators for the growing network families, with their
//! closed-form sizes, diameters and dimensions.
//!
//! Families with a geometric picture (lattice, hexagon, tetrahedron,
//! Sierpinski, ladder, ...) are built from integer coordinates. Node ids are
//! assigned in lexicographic coordinate order and every edge is oriented
//! from the smaller id to the larger, so ids are already a topological order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::Network;

/// Largest network any generator will build.
pub const MAX_GENERATED_NODES: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    Tandem,
    SeriesParallel,
    TandemComponent,
    Ladder,
    Lattice { d: u32 },
    Hexagon,
    Tetrahedron,
    Sierpinski,
    BinaryTree,
    Cycle,
    CompletePlusTandem { clique: u32 },
    TandemPlusTree,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Tandem => write!(f, "tandem"),
            FamilyKind::SeriesParallel => write!(f, "series_parallel"),
            FamilyKind::TandemComponent => write!(f, "tandem_component"),
            FamilyKind::Ladder => write!(f, "ladder"),
            FamilyKind::Lattice { d } => write!(f, "lattice{d}"),
            FamilyKind::Hexagon => write!(f, "hexagon"),
            FamilyKind::Tetrahedron => write!(f, "tetrahedron"),
            FamilyKind::Sierpinski => write!(f, "sierpinski"),
            FamilyKind::BinaryTree => write!(f, "binary_tree"),
            FamilyKind::Cycle => write!(f, "cycle"),
            FamilyKind::CompletePlusTandem { clique } => write!(f, "complete{clique}_plus_tandem"),
            FamilyKind::TandemPlusTree => write!(f, "tandem_plus_tree"),
        }
    }
}

/// Parses the names printed by `Display`, e.g. `lattice3` or
/// `complete5_plus_tandem`.
impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tandem" => FamilyKind::Tandem,
            "series_parallel" => FamilyKind::SeriesParallel,
            "tandem_component" => FamilyKind::TandemComponent,
            "ladder" => FamilyKind::Ladder,
            "hexagon" => FamilyKind::Hexagon,
            "tetrahedron" => FamilyKind::Tetrahedron,
            "sierpinski" => FamilyKind::Sierpinski,
            "binary_tree" => FamilyKind::BinaryTree,
            "cycle" => FamilyKind::Cycle,
            "tandem_plus_tree" => FamilyKind::TandemPlusTree,
            _ => {
                if let Some(d) = s.strip_prefix("lattice").and_then(|t| t.parse().ok()) {
                    FamilyKind::Lattice { d }
                } else if let Some(clique) = s
                    .strip_prefix("complete")
                    .and_then(|t| t.strip_suffix("_plus_tandem"))
                    .and_then(|t| t.parse().ok())
                {
                    FamilyKind::CompletePlusTandem { clique }
                } else {
                    return Err(Error::InvalidParameter(format!("unknown family `{s}`")));
                }
            }
        })
    }
}

/// One member of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub kind: FamilyKind,
    pub index: u32,
    #[serde(default = "default_buffer")]
    pub buffer_size: u32,
}

fn default_buffer() -> u32 {
    1
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, index: u32) -> Self {
        FamilySpec { kind, index, buffer_size: 1 }
    }

    pub fn with_buffer(mut self, buffer_size: u32) -> Self {
        self.buffer_size = buffer_size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.index < 1 {
            return bad(format!("{}: index must be at least 1", self.kind));
        }
        if self.buffer_size < 1 {
            return bad("buffer size must be at least 1".into());
        }
        match self.kind {
            FamilyKind::Lattice { d } if d < 1 => return bad("lattice dimension must be at least 1".into()),
            FamilyKind::CompletePlusTandem { clique } if clique < 2 => {
                return bad("clique size must be at least 2".into())
            }
            _ => {}
        }
        match self.kind.num_nodes(self.index) {
            Some(n) if n <= MAX_GENERATED_NODES => Ok(()),
            _ => Err(Error::BudgetExceeded(format!(
                "{} index {} exceeds the {MAX_GENERATED_NODES}-node generation limit",
                self.kind, self.index
            ))),
        }
    }
}

/// Infinite-or-integer dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmDim {
    Finite(u32),
    Infinite,
}

impl EmDim {
    pub fn as_f64(self) -> f64 {
        match self {
            EmDim::Finite(k) => f64::from(k),
            EmDim::Infinite => f64::INFINITY,
        }
    }
}

/// Closed-form values for a family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroundTruth {
    /// Scaling dimension; `f64::INFINITY` for exponential growth.
    pub dim_s: f64,
    pub dim_em: EmDim,
    /// Multiplicity bound of the canonical extended resolving set, when the
    /// value is stated.
    pub lambda: Option<u32>,
    /// Always "closed_form"; the CLI reports "computed" for measured values.
    pub source: &'static str,
}

impl FamilyKind {
    /// Closed form of `|V_i|`; `None` on overflow.
    pub fn num_nodes(self, i: u32) -> Option<u64> {
        let i64_ = u64::from(i);
        match self {
            FamilyKind::Tandem => Some(i64_ + 1),
            FamilyKind::SeriesParallel => Some(3 * i64_ + 1),
            FamilyKind::TandemComponent => Some(3 * i64_),
            FamilyKind::Ladder => Some(2 * i64_),
            FamilyKind::Lattice { d } => i64_.checked_pow(d),
            FamilyKind::Hexagon => Some(6 * i64_ * i64_),
            FamilyKind::Tetrahedron => Some((i64_ + 1) * (i64_ + 2) * (i64_ + 3) / 6),
            FamilyKind::Sierpinski => 3u64.checked_pow(i - 1).map(|p| (3 * p + 3) / 2),
            FamilyKind::BinaryTree => 2u64.checked_pow(i + 1).map(|p| p - 1),
            FamilyKind::Cycle => Some(2 * i64_ + 2),
            FamilyKind::CompletePlusTandem { clique } => Some(u64::from(clique) + i64_),
            FamilyKind::TandemPlusTree => {
                let tandem = 2u64.checked_pow(i)? + 1;
                if i % 2 == 0 {
                    Some(tandem + 2u64.checked_pow(i + 1)? - 2)
                } else {
                    Some(tandem)
                }
            }
        }
    }

    /// Closed form of `Δ_i` as stated for the family. For the binary tree
    /// this is the stated value `i`; the undirected leaf-to-leaf diameter is
    /// `2i` (see [`FamilyKind::graph_diameter`]).
    pub fn diameter(self, i: u32) -> Option<u64> {
        let n = u64::from(i);
        match self {
            FamilyKind::Tandem => Some(n),
            FamilyKind::SeriesParallel => Some(2 * n),
            FamilyKind::TandemComponent => Some(2 * n - 1),
            FamilyKind::Ladder => Some(n),
            FamilyKind::Lattice { d } => Some(u64::from(d) * (n - 1)),
            FamilyKind::Hexagon => Some(4 * n - 1),
            FamilyKind::Tetrahedron => Some(n),
            FamilyKind::Sierpinski => 2u64.checked_pow(i - 1),
            FamilyKind::BinaryTree => Some(n),
            FamilyKind::Cycle => Some(n + 1),
            FamilyKind::CompletePlusTandem { .. } => Some(n + 1),
            FamilyKind::TandemPlusTree => {
                2u64.checked_pow(i).map(|p| p + if i % 2 == 0 { n } else { 0 })
            }
        }
    }

    /// Undirected graph diameter of the generated network.
    pub fn graph_diameter(self, i: u32) -> Option<u64> {
        match self {
            FamilyKind::BinaryTree => Some(2 * u64::from(i)),
            other => other.diameter(i),
        }
    }

    /// Uniform bound on the network degree along the family.
    pub fn degree_bound(self) -> usize {
        match self {
            FamilyKind::Tandem | FamilyKind::Cycle => 2,
            FamilyKind::Ladder
            | FamilyKind::Hexagon
            | FamilyKind::BinaryTree
            | FamilyKind::TandemComponent
            | FamilyKind::TandemPlusTree => 3,
            FamilyKind::SeriesParallel | FamilyKind::Sierpinski => 4,
            FamilyKind::Lattice { d } => 2 * d as usize,
            FamilyKind::Tetrahedron => 12,
            FamilyKind::CompletePlusTandem { clique } => clique as usize,
        }
    }

    pub fn ground_truth(self) -> GroundTruth {
        let closed = "closed_form";
        let (dim_s, dim_em, lambda, source) = match self {
            FamilyKind::Tandem => (1.0, EmDim::Finite(1), Some(1), closed),
            FamilyKind::SeriesParallel | FamilyKind::TandemComponent => {
                (1.0, EmDim::Finite(1), None, closed)
            }
            FamilyKind::Ladder => (1.0, EmDim::Finite(1), Some(2), closed),
            FamilyKind::Lattice { d } => (f64::from(d), EmDim::Finite(d), Some(1), closed),
            FamilyKind::Hexagon => (2.0, EmDim::Finite(2), None, closed),
            FamilyKind::Tetrahedron => (3.0, EmDim::Finite(3), Some(1), closed),
            FamilyKind::Sierpinski => (3f64.log2(), EmDim::Finite(2), Some(1), closed),
            FamilyKind::BinaryTree | FamilyKind::TandemPlusTree => {
                (f64::INFINITY, EmDim::Infinite, None, closed)
            }
            FamilyKind::Cycle => (1.0, EmDim::Finite(1), Some(2), closed),
            FamilyKind::CompletePlusTandem { clique } => (1.0, EmDim::Finite(1), Some(clique), closed),
        };
        GroundTruth { dim_s, dim_em, lambda, source }
    }

    /// Families used for the scalability table, in presentation order.
    pub fn table_families() -> Vec<FamilyKind> {
        vec![
            FamilyKind::Tandem,
            FamilyKind::SeriesParallel,
            FamilyKind::TandemComponent,
            FamilyKind::Ladder,
            FamilyKind::Lattice { d: 2 },
            FamilyKind::Lattice { d: 3 },
            FamilyKind::Hexagon,
            FamilyKind::Tetrahedron,
            FamilyKind::Sierpinski,
            FamilyKind::BinaryTree,
        ]
    }
}

/// A generated network with the integer coordinates used to build it.
#[derive(Clone, Debug)]
pub struct Layout {
    pub network: Network,
    pub coords: Vec<Vec<i64>>,
}

pub fn generate(spec: FamilySpec) -> Result<Network> {
    layout(spec).map(|l| l.network)
}

pub fn layout(spec: FamilySpec) -> Result<Layout> {
    spec.validate()?;
    let i = spec.index as usize;
    let b = spec.buffer_size;
    let name = format!("{}_{}", spec.kind, spec.index);
    let layout = match spec.kind {
        FamilyKind::Tandem => chain_layout(name, i + 1, b)?,
        FamilyKind::SeriesParallel => series_parallel(name, i, b)?,
        FamilyKind::TandemComponent => tandem_component(name, i, b)?,
        FamilyKind::Ladder => ladder(name, i, b)?,
        FamilyKind::Lattice { d } => lattice(name, d as usize, i, b)?,
        FamilyKind::Hexagon => hexagon(name, i as i64, b)?,
        FamilyKind::Tetrahedron => tetrahedron(name, i as i64, b)?,
        FamilyKind::Sierpinski => sierpinski(name, spec.index, b)?,
        FamilyKind::BinaryTree => {
            let n = (1usize << (i + 1)) - 1;
            let arcs = (1..n).map(|c| ((c - 1) / 2, c)).collect();
            id_layout(name, n, arcs, b)?
        }
        FamilyKind::Cycle => cycle(name, i, b)?,
        FamilyKind::CompletePlusTandem { clique } => complete_plus_tandem(name, clique as usize, i, b)?,
        FamilyKind::TandemPlusTree => tandem_plus_tree(name, i, b)?,
    };
    Ok(layout)
}

fn id_layout(name: String, n: usize, arcs: Vec<(usize, usize)>, b: u32) -> Result<Layout> {
    Ok(Layout {
        network: Network::new(name, n, arcs, b)?,
        coords: (0..n as i64).map(|v| vec![v]).collect(),
    })
}

fn chain_layout(name: String, n: usize, b: u32) -> Result<Layout> {
    id_layout(name, n, (1..n).map(|v| (v - 1, v)).collect(), b)
}

/// Builds a network from coordinate-labelled nodes and undirected edges.
fn from_coords(
    name: String,
    nodes: BTreeSet<Vec<i64>>,
    edges: impl IntoIterator<Item = (Vec<i64>, Vec<i64>)>,
    b: u32,
) -> Result<Layout> {
    let coords: Vec<Vec<i64>> = nodes.into_iter().collect();
    let index: BTreeMap<&Vec<i64>, usize> = coords.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let mut arcs = BTreeSet::new();
    for (p, q) in edges {
        let (Some(&u), Some(&v)) = (index.get(&p), index.get(&q)) else {
            continue;
        };
        if u != v {
            arcs.insert((u.min(v), u.max(v)));
        }
    }
    let network = Network::new(name, coords.len(), arcs.into_iter().collect(), b)?;
    Ok(Layout { network, coords })
}

fn series_parallel(name: String, blocks: usize, b: u32) -> Result<Layout> {
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    for k in 0..blocks as i64 {
        let (join, next) = (vec![2 * k, 0], vec![2 * k + 2, 0]);
        for lane in 0..2 {
            let mid = vec![2 * k + 1, lane];
            edges.push((join.clone(), mid.clone()));
            edges.push((mid.clone(), next.clone()));
            nodes.insert(mid);
        }
        nodes.insert(join);
        nodes.insert(next);
    }
    from_coords(name, nodes, edges, b)
}

fn tandem_component(name: String, components: usize, b: u32) -> Result<Layout> {
    let n = 3 * components as i64;
    let nodes = (0..n).map(|v| vec![v]).collect();
    let mut edges = Vec::new();
    for c in 0..components as i64 {
        let base = 3 * c;
        edges.push((vec![base], vec![base + 1]));
        edges.push((vec![base], vec![base + 2]));
        edges.push((vec![base + 1], vec![base + 2]));
        if base + 3 < n {
            edges.push((vec![base + 2], vec![base + 3]));
        }
    }
    from_coords(name, nodes, edges, b)
}

fn ladder(name: String, rungs: usize, b: u32) -> Result<Layout> {
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    for j in 0..rungs as i64 {
        nodes.insert(vec![j, 0]);
        nodes.insert(vec![j, 1]);
        edges.push((vec![j, 0], vec![j, 1]));
        if j + 1 < rungs as i64 {
            edges.push((vec![j, 0], vec![j + 1, 0]));
            edges.push((vec![j, 1], vec![j + 1, 1]));
        }
    }
    from_coords(name, nodes, edges, b)
}

fn lattice(name: String, d: usize, side: usize, b: u32) -> Result<Layout> {
    let total = side.pow(d as u32);
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    for flat in 0..total {
        let mut c = vec![0i64; d];
        let mut rest = flat;
        for x in c.iter_mut().rev() {
            *x = (rest % side) as i64;
            rest /= side;
        }
        for axis in 0..d {
            if c[axis] + 1 < side as i64 {
                let mut next = c.clone();
                next[axis] += 1;
                edges.push((c.clone(), next));
            }
        }
        nodes.insert(c);
    }
    from_coords(name, nodes, edges, b)
}

/// Honeycomb vertex as a triangle of the dual triangular lattice:
/// `(q, r, 0)` has corners `(q,r),(q+1,r),(q,r+1)`; `(q, r, 1)` has corners
/// `(q+1,r),(q,r+1),(q+1,r+1)`. Corners are hexagon centres.
pub(crate) fn triangle_corners(q: i64, r: i64, down: i64) -> [(i64, i64); 3] {
    if down == 0 {
        [(q, r), (q + 1, r), (q, r + 1)]
    } else {
        [(q + 1, r), (q, r + 1), (q + 1, r + 1)]
    }
}

/// Inverse of the centroid encoding `[3q + 1 + t, 3r + 1 + t]`.
pub(crate) fn hexagon_vertex(coord: &[i64]) -> (i64, i64, i64) {
    let t = (coord[0] - 1).rem_euclid(3);
    ((coord[0] - 1 - t) / 3, (coord[1] - 1 - t) / 3, t)
}

/// Hexagon centres `(q, r)` of the hexagon-shaped patch with `n` per side.
pub(crate) fn in_hex_patch(n: i64, (q, r): (i64, i64)) -> bool {
    q.abs().max(r.abs()).max((q + r).abs()) < n
}

fn hexagon(name: String, n: i64, b: u32) -> Result<Layout> {
    let centroid = |q: i64, r: i64, t: i64| vec![3 * q + 1 + t, 3 * r + 1 + t];
    let inside = |c: (i64, i64)| in_hex_patch(n, c);
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    for q in -n - 1..=n {
        for r in -n - 1..=n {
            for t in 0..2 {
                if triangle_corners(q, r, t).iter().any(|&c| inside(c)) {
                    nodes.insert(centroid(q, r, t));
                }
            }
            // Up triangle (q, r) borders three down triangles; the shared
            // side is a honeycomb edge when one of its ends is a hexagon.
            let shared = [
                ((q, r, 1), [(q + 1, r), (q, r + 1)]),
                ((q - 1, r, 1), [(q, r), (q, r + 1)]),
                ((q, r - 1, 1), [(q, r), (q + 1, r)]),
            ];
            for ((dq, dr, dt), side) in shared {
                if side.iter().any(|&c| inside(c)) {
                    edges.push((centroid(q, r, 0), centroid(dq, dr, dt)));
                }
            }
        }
    }
    from_coords(name, nodes, edges, b)
}

fn tetrahedron(name: String, layers: i64, b: u32) -> Result<Layout> {
    // Points of the simplex x0+x1+x2+x3 = layers; neighbours differ by e_a - e_b.
    let mut nodes = BTreeSet::new();
    for x0 in 0..=layers {
        for x1 in 0..=layers - x0 {
            for x2 in 0..=layers - x0 - x1 {
                nodes.insert(vec![x0, x1, x2, layers - x0 - x1 - x2]);
            }
        }
    }
    let mut edges = Vec::new();
    for p in &nodes {
        for a in 0..4 {
            for c in 0..4 {
                if a != c && p[c] > 0 {
                    let mut q = p.clone();
                    q[a] += 1;
                    q[c] -= 1;
                    if p < &q {
                        edges.push((p.clone(), q));
                    }
                }
            }
        }
    }
    from_coords(name, nodes, edges, b)
}

fn sierpinski(name: String, level: u32, b: u32) -> Result<Layout> {
    // Triangular-lattice coordinates; level 1 is a single triangle.
    let mut edges: BTreeSet<(Vec<i64>, Vec<i64>)> = BTreeSet::new();
    edges.insert((vec![0, 0], vec![1, 0]));
    edges.insert((vec![0, 0], vec![0, 1]));
    edges.insert((vec![0, 1], vec![1, 0]));
    let mut side = 1i64;
    for _ in 1..level {
        let mut next = BTreeSet::new();
        for (dx, dy) in [(0, 0), (side, 0), (0, side)] {
            for (p, q) in &edges {
                let a = vec![p[0] + dx, p[1] + dy];
                let c = vec![q[0] + dx, q[1] + dy];
                next.insert((a.clone().min(c.clone()), a.max(c)));
            }
        }
        edges = next;
        side *= 2;
    }
    let nodes = edges.iter().flat_map(|(p, q)| [p.clone(), q.clone()]).collect();
    from_coords(name, nodes, edges, b)
}

fn cycle(name: String, i: usize, b: u32) -> Result<Layout> {
    // Source 0, top path 1..=i, bottom path i+1..=2i, sink 2i+1.
    let sink = 2 * i + 1;
    let mut arcs = vec![(0, 1), (i, sink), (0, i + 1), (2 * i, sink)];
    for k in 1..i {
        arcs.push((k, k + 1));
        arcs.push((i + k, i + k + 1));
    }
    id_layout(name, 2 * i + 2, arcs, b)
}

fn complete_plus_tandem(name: String, clique: usize, i: usize, b: u32) -> Result<Layout> {
    let mut arcs = Vec::new();
    for a in 0..clique {
        for c in a + 1..clique {
            arcs.push((a, c));
        }
    }
    for v in clique..clique + i {
        arcs.push((v - 1, v));
    }
    id_layout(name, clique + i, arcs, b)
}

fn tandem_plus_tree(name: String, i: usize, b: u32) -> Result<Layout> {
    let tail = 1usize << i;
    let mut arcs: Vec<(usize, usize)> = (1..=tail).map(|v| (v - 1, v)).collect();
    let mut n = tail + 1;
    if i % 2 == 0 {
        // Heap-numbered tree whose root is the tandem's last node.
        let tree = (1usize << (i + 1)) - 1;
        let id = |h: usize| if h == 0 { tail } else { tail + h };
        for h in 1..tree {
            arcs.push((id((h - 1) / 2), id(h)));
        }
        n += tree - 1;
    }
    id_layout(name, n, arcs, b)
}
