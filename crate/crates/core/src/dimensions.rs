//! Metric, extended metric and scaling dimensions.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{self, hexagon_vertex, EmDim, FamilyKind, FamilySpec, Layout};
use crate::network::{ball_size_profile, degree, diameter, Network};
use crate::stats::{fit_line, LineFit};

/// Subsets examined by the exact metric-dimension search before giving up.
pub const DEFAULT_SUBSET_BUDGET: u64 = 2_000_000;

/// Largest network for which all-pairs distances are tabulated.
pub const MAX_ALL_PAIRS_NODES: usize = 5_000;

fn check_nodes(net: &Network, nodes: &[usize]) -> Result<()> {
    match nodes.iter().find(|&&w| w >= net.num_nodes()) {
        Some(&node) => Err(Error::NodeOutOfRange { node, num_nodes: net.num_nodes() }),
        None => Ok(()),
    }
}

/// `(dis(v, w_1), ..., dis(v, w_k))`.
pub fn metric_representation(net: &Network, v: usize, w: &[usize]) -> Result<Vec<usize>> {
    check_nodes(net, w)?;
    check_nodes(net, &[v])?;
    Ok(w.iter().map(|&x| net.bfs_from(&[x])[v]).collect())
}

/// Representations of every node, indexed by node.
pub fn representations(net: &Network, w: &[usize]) -> Result<Vec<Vec<usize>>> {
    check_nodes(net, w)?;
    let columns: Vec<Vec<usize>> = w.iter().map(|&x| net.bfs_from(&[x])).collect();
    Ok((0..net.num_nodes()).map(|v| columns.iter().map(|c| c[v]).collect()).collect())
}

/// Largest number of nodes sharing one row.
fn max_multiplicity(rows: &[Vec<usize>]) -> usize {
    let mut counts: HashMap<&[usize], usize> = HashMap::new();
    for r in rows {
        *counts.entry(r.as_slice()).or_default() += 1;
    }
    counts.values().copied().max().unwrap_or(0)
}

pub fn is_resolving(net: &Network, w: &[usize]) -> Result<bool> {
    Ok(max_multiplicity(&representations(net, w)?) <= 1)
}

fn all_pairs(net: &Network) -> Result<Vec<Vec<u32>>> {
    if net.num_nodes() > MAX_ALL_PAIRS_NODES {
        return Err(Error::BudgetExceeded(format!(
            "all-pairs distances limited to {MAX_ALL_PAIRS_NODES} nodes"
        )));
    }
    Ok((0..net.num_nodes())
        .map(|v| net.bfs_from(&[v]).into_iter().map(|d| d as u32).collect())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricDimension {
    pub value: usize,
    pub witness: Vec<usize>,
}

/// Minimum resolving set by exhaustive search in order of cardinality.
/// Fails with [`Error::BudgetExceeded`] once `budget` subsets were tried.
pub fn metric_dimension_exact(net: &Network, budget: u64) -> Result<MetricDimension> {
    let n = net.num_nodes();
    if n <= 1 {
        return Ok(MetricDimension { value: 0, witness: vec![] });
    }
    let dist = all_pairs(net)?;
    let mut tried = 0u64;
    let mut keys = vec![0u64; n];
    for k in 1..n {
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            tried += 1;
            if tried > budget {
                return Err(Error::BudgetExceeded(format!(
                    "exact metric dimension exceeded {budget} subsets; use the greedy bound"
                )));
            }
            if resolves(&dist, &comb, &mut keys) {
                return Ok(MetricDimension { value: k, witness: comb });
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    unreachable!("V minus one node always resolves")
}

fn resolves(dist: &[Vec<u32>], w: &[usize], keys: &mut [u64]) -> bool {
    let radix = dist.len() as u64 + 1;
    if (radix as f64).powi(w.len() as i32) >= u64::MAX as f64 {
        let mut rows: Vec<Vec<u32>> = (0..dist.len()).map(|v| w.iter().map(|&x| dist[x][v]).collect()).collect();
        rows.sort_unstable();
        return rows.windows(2).all(|p| p[0] != p[1]);
    }
    // Mixed-radix keys are injective since distances are below the radix.
    for (v, key) in keys.iter_mut().enumerate() {
        *key = w.iter().fold(0u64, |acc, &x| acc * radix + u64::from(dist[x][v]));
    }
    keys.sort_unstable();
    keys.windows(2).all(|p| p[0] != p[1])
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Greedy resolving set: repeatedly add the node that leaves the fewest
/// unresolved pairs, ties toward the lowest id.
pub fn metric_dimension_greedy(net: &Network) -> Result<MetricDimension> {
    let n = net.num_nodes();
    let dist = all_pairs(net)?;
    let mut class = vec![0usize; n];
    let mut witness = Vec::new();
    let pairs_left = |class: &[usize]| {
        let mut sizes: HashMap<usize, usize> = HashMap::new();
        for &c in class {
            *sizes.entry(c).or_default() += 1;
        }
        sizes.values().map(|&s| s * (s - 1) / 2).sum::<usize>()
    };
    while pairs_left(&class) > 0 {
        let mut best: Option<(usize, usize)> = None;
        for w in 0..n {
            let mut sizes: HashMap<(usize, u32), usize> = HashMap::new();
            for v in 0..n {
                *sizes.entry((class[v], dist[w][v])).or_default() += 1;
            }
            let left: usize = sizes.values().map(|&s| s * (s - 1) / 2).sum();
            if best.map_or(true, |(bl, _)| left < bl) {
                best = Some((left, w));
            }
        }
        let (_, w) = best.expect("non-empty network");
        witness.push(w);
        let mut relabel: HashMap<(usize, u32), usize> = HashMap::new();
        for v in 0..n {
            let next = relabel.len();
            class[v] = *relabel.entry((class[v], dist[w][v])).or_insert(next);
        }
    }
    Ok(MetricDimension { value: witness.len(), witness })
}

fn check_family(net: &Network, family: &[Vec<usize>]) -> Result<()> {
    if family.is_empty() || family.iter().any(|w| w.is_empty()) {
        return Err(Error::InvalidParameter("extended resolving sets need non-empty subsets".into()));
    }
    family.iter().try_for_each(|w| check_nodes(net, w))
}

/// `(dis(v, W_1), ..., dis(v, W_k))` for every node, one multi-source BFS
/// per subset.
pub fn extended_representations(net: &Network, family: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    check_family(net, family)?;
    let columns: Vec<Vec<usize>> = family.iter().map(|w| net.bfs_from(w)).collect();
    Ok((0..net.num_nodes()).map(|v| columns.iter().map(|c| c[v]).collect()).collect())
}

pub fn extended_representation(net: &Network, v: usize, family: &[Vec<usize>]) -> Result<Vec<usize>> {
    check_nodes(net, &[v])?;
    Ok(extended_representations(net, family)?.swap_remove(v))
}

/// Λ: the largest number of nodes sharing an extended representation.
pub fn check_extended_resolving(net: &Network, family: &[Vec<usize>]) -> Result<usize> {
    Ok(max_multiplicity(&extended_representations(net, family)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedResolvingSet {
    pub subsets: Vec<Vec<usize>>,
    pub lambda: usize,
}

impl ExtendedResolvingSet {
    pub fn certify(net: &Network, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let lambda = check_extended_resolving(net, &subsets)?;
        Ok(ExtendedResolvingSet { subsets, lambda })
    }

    pub fn cardinality(&self) -> usize {
        self.subsets.len()
    }
}

fn select(layout: &Layout, pred: impl Fn(&[i64]) -> bool) -> Vec<usize> {
    (0..layout.coords.len()).filter(|&v| pred(&layout.coords[v])).collect()
}

/// The canonical construction for a family member, with Λ certified on
/// the generated graph.
pub fn family_extended_resolving(kind: FamilyKind, index: u32) -> Result<ExtendedResolvingSet> {
    let layout = families::layout(FamilySpec::new(kind, index))?;
    let net = &layout.network;
    let subsets = match kind {
        FamilyKind::Tandem
        | FamilyKind::SeriesParallel
        | FamilyKind::TandemComponent
        | FamilyKind::Cycle => vec![vec![0]],
        FamilyKind::Ladder => vec![select(&layout, |c| c[0] == 0)],
        FamilyKind::Lattice { d } => (0..d as usize).map(|t| select(&layout, |c| c[t] == 0)).collect(),
        FamilyKind::Hexagon => {
            // Vertices of the hexagons along two adjacent sides of the patch.
            let n = i64::from(index);
            let on_side = |side: fn(i64, i64, i64) -> bool| {
                move |c: &[i64]| {
                    let (q, r, t) = hexagon_vertex(c);
                    families::triangle_corners(q, r, t)
                        .iter()
                        .any(|&(hq, hr)| families::in_hex_patch(n, (hq, hr)) && side(n, hq, hr))
                }
            };
            vec![
                select(&layout, on_side(|n, q, _| q == n - 1)),
                select(&layout, on_side(|n, q, r| q + r == n - 1)),
            ]
        }
        FamilyKind::Tetrahedron => {
            let apex = select(&layout, |c| c[0] == 0 && c[1] == 0 && c[2] == 0);
            vec![apex, select(&layout, |c| c[0] == 0), select(&layout, |c| c[1] == 0)]
        }
        FamilyKind::Sierpinski => {
            // Two corners of the largest triangle. Whole sides only resolve
            // up to a multiplicity that creeps upward with the level.
            let side = 1i64 << (index - 1);
            vec![select(&layout, |c| c == [0, 0]), select(&layout, |c| c == [side, 0])]
        }
        FamilyKind::CompletePlusTandem { clique } => vec![(0..clique as usize).collect()],
        FamilyKind::BinaryTree | FamilyKind::TandemPlusTree => {
            return Err(Error::Unsupported(format!(
                "{kind} grows exponentially; no bounded extended resolving set exists"
            )))
        }
    };
    ExtendedResolvingSet::certify(net, subsets)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingEstimate {
    /// `f64::INFINITY` when exponential growth was detected.
    pub value: f64,
    pub whole_network: Option<LineFit>,
    pub ball: Option<f64>,
    pub exponential: bool,
}

/// Log-linear growth that is both tight and a better fit than log-log.
fn looks_exponential(xs: &[f64], sizes: &[f64]) -> bool {
    let ys: Vec<f64> = sizes.iter().map(|s| s.ln()).collect();
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    match (fit_line(xs, &ys), fit_line(&lx, &ys)) {
        (Some(lin), Some(log)) => lin.r_squared > 0.99 && lin.slope > 0.0 && lin.r_squared > log.r_squared,
        _ => false,
    }
}

/// Ball-growth probe on one network: slope of `log |B(v, r)|` against
/// `log r` for `r = 2, 4, 8, ... <= Δ/2`, maximised over sampled centres
/// (evenly spaced ids plus the lowest-id node of maximum degree).
/// Returns `(slope, exponential)`; `None` when fewer than three radii fit.
pub fn ball_growth(net: &Network, centers: usize) -> Option<(f64, bool)> {
    let d = diameter(net);
    let radii: Vec<usize> = std::iter::successors(Some(2usize), |r| Some(r * 2))
        .take_while(|&r| 2 * r <= d.value)
        .collect();
    if radii.len() < 3 {
        return None;
    }
    let n = net.num_nodes();
    let mut picks: Vec<usize> = (0..centers.max(1)).map(|k| k * n / centers.max(1)).collect();
    let hub = (0..n).max_by_key(|&v| (net.neighbors(v).len(), std::cmp::Reverse(v))).unwrap_or(0);
    picks.push(hub);
    picks.sort_unstable();
    picks.dedup();
    let max_r = *radii.last().expect("radii");
    let xs: Vec<f64> = radii.iter().map(|&r| r as f64).collect();
    let mut best: Option<f64> = None;
    let mut exponential = false;
    for v in picks {
        let (counts, _) = ball_size_profile(net, v, max_r);
        let sizes: Vec<f64> = radii.iter().map(|&r| counts[r] as f64).collect();
        // Any window of three doubling radii may expose exponential growth
        // before the ball saturates (a tree hanging off a long path).
        exponential |= (0..=xs.len() - 3).any(|j| looks_exponential(&xs[j..j + 3], &sizes[j..j + 3]));
        let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
        let ly: Vec<f64> = sizes.iter().map(|s| s.ln()).collect();
        if let Some(fit) = fit_line(&lx, &ly) {
            best = Some(best.map_or(fit.slope, |b: f64| b.max(fit.slope)));
        }
    }
    best.map(|b| (b, exponential))
}

/// Estimates the scaling dimension from a window of family indices.
pub fn scaling_dimension_estimate(kind: FamilyKind, indices: &[u32]) -> Result<ScalingEstimate> {
    if indices.len() < 3 {
        return Err(Error::Degenerate("need at least three indices".into()));
    }
    let nets: Vec<Network> =
        indices.iter().map(|&i| families::generate(FamilySpec::new(kind, i))).collect::<Result<_>>()?;
    scaling_dimension_of(&nets)
}

pub fn scaling_dimension_of(nets: &[Network]) -> Result<ScalingEstimate> {
    let deltas: Vec<f64> = nets.iter().map(|n| diameter(n).value as f64).collect();
    let sizes: Vec<f64> = nets.iter().map(|n| n.num_nodes() as f64).collect();
    if deltas.iter().any(|&d| d < 1.0) {
        return Err(Error::Degenerate("diameters must be positive".into()));
    }
    let lx: Vec<f64> = deltas.iter().map(|d| d.ln()).collect();
    let ly: Vec<f64> = sizes.iter().map(|s| s.ln()).collect();
    let whole = fit_line(&lx, &ly);
    if whole.is_none() {
        return Err(Error::Degenerate("diameters must vary across the window".into()));
    }
    let largest = nets.iter().max_by_key(|n| n.num_nodes()).expect("non-empty");
    let ball = ball_growth(largest, 8);
    let exponential = looks_exponential(&deltas, &sizes) || ball.is_some_and(|b| b.1);
    let finite = whole.map(|f| f.slope).into_iter().chain(ball.map(|b| b.0)).fold(f64::NEG_INFINITY, f64::max);
    Ok(ScalingEstimate {
        value: if exponential { f64::INFINITY } else { finite },
        whole_network: whole,
        ball: ball.map(|b| b.0),
        exponential,
    })
}

/// Certificate for the extended metric dimension over an index window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmCertificate {
    pub dim_em: EmDim,
    /// Lower end when the value is only bracketed.
    pub lower: Option<u32>,
    pub lambda: Option<usize>,
    pub witnesses: Vec<(u32, ExtendedResolvingSet)>,
}

impl EmCertificate {
    pub fn is_interval(&self) -> bool {
        matches!((self.lower, self.dim_em), (Some(lo), EmDim::Finite(k)) if lo < k)
    }
}

/// Certifies `dim_EM` over `indices` from the family construction. The
/// upper end is the construction's cardinality provided its Λ stays within
/// `lambda_max` on every index; the lower end comes from `dim_S <= dim_EM`.
pub fn extended_metric_dimension(kind: FamilyKind, indices: &[u32], lambda_max: usize) -> Result<EmCertificate> {
    let scaling = scaling_dimension_estimate(kind, indices)?;
    if scaling.exponential {
        return Ok(EmCertificate { dim_em: EmDim::Infinite, lower: None, lambda: None, witnesses: vec![] });
    }
    let witnesses: Vec<(u32, ExtendedResolvingSet)> = indices
        .iter()
        .map(|&i| family_extended_resolving(kind, i).map(|e| (i, e)))
        .collect::<Result<_>>()?;
    let lambda = witnesses.iter().map(|(_, e)| e.lambda).max().unwrap_or(0);
    let k = witnesses.iter().map(|(_, e)| e.cardinality()).max().unwrap_or(0) as u32;
    let lower = ((scaling.value - 0.1).ceil().max(1.0) as u32).min(k);
    if lambda > lambda_max {
        return Err(Error::BudgetExceeded(format!(
            "construction for {kind} reaches Λ = {lambda} above the allowed {lambda_max}; dim_EM lies in [{lower}, ∞)"
        )));
    }
    Ok(EmCertificate { dim_em: EmDim::Finite(k), lower: Some(lower), lambda: Some(lambda), witnesses })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DimRelation {
    /// `dim_S estimate <= dim_EM + 0.1`.
    pub ordering_holds: bool,
    /// `dim_EM <= ceil(dim_S estimate)`, reported as evidence only.
    pub conjecture_holds: Option<bool>,
}

pub fn check_dim_relation(dim_s: f64, dim_em: EmDim) -> DimRelation {
    let em = dim_em.as_f64();
    let ordering_holds = dim_s <= em + 0.1 || (dim_s.is_infinite() && em.is_infinite());
    let conjecture_holds = dim_s.is_finite().then(|| em <= dim_s.ceil());
    DimRelation { ordering_holds, conjecture_holds }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexDetail {
    pub index: u32,
    pub num_nodes: usize,
    pub diameter: usize,
    pub degree: usize,
    pub lambda: Option<usize>,
}

/// Metric dimension of one network: exact, or a `(lower, upper)` bracket.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DimM {
    Exact { value: usize },
    Interval { lower: usize, upper: usize },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    pub family: String,
    pub indices: Vec<u32>,
    pub dim_m: DimM,
    pub dim_em: EmCertificate,
    pub dim_s_estimate: f64,
    pub scaling: ScalingEstimate,
    pub relation: DimRelation,
    pub details: Vec<IndexDetail>,
}

/// Metric dimension of `net`, exact when the subset budget allows.
pub fn metric_dimension_bracket(net: &Network, budget: u64) -> DimM {
    match metric_dimension_exact(net, budget) {
        Ok(md) => DimM::Exact { value: md.value },
        Err(_) => match metric_dimension_greedy(net) {
            Ok(g) => {
                // |V| <= (Δ + 1)^k
                let d = diameter(net).value as f64;
                let lower = ((net.num_nodes() as f64).ln() / (d + 1.0).ln()).ceil().max(1.0) as usize;
                DimM::Interval { lower: lower.min(g.value), upper: g.value }
            }
            Err(_) => DimM::Unknown,
        },
    }
}

pub fn dimension_report(kind: FamilyKind, indices: &[u32], lambda_max: usize) -> Result<DimensionReport> {
    let scaling = scaling_dimension_estimate(kind, indices)?;
    let dim_em = extended_metric_dimension(kind, indices, lambda_max)?;
    let mut details = Vec::new();
    for &i in indices {
        let net = families::generate(FamilySpec::new(kind, i))?;
        let lambda = dim_em.witnesses.iter().find(|(j, _)| *j == i).map(|(_, e)| e.lambda);
        details.push(IndexDetail {
            index: i,
            num_nodes: net.num_nodes(),
            diameter: diameter(&net).value,
            degree: degree(&net),
            lambda,
        });
    }
    let last = *indices.last().expect("indices checked");
    let dim_m = metric_dimension_bracket(&families::generate(FamilySpec::new(kind, last))?, 200_000);
    Ok(DimensionReport {
        family: kind.to_string(),
        indices: indices.to_vec(),
        dim_m,
        relation: check_dim_relation(scaling.value, dim_em.dim_em),
        dim_s_estimate: scaling.value,
        dim_em,
        scaling,
        details,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Network {
        Network::new("p", n, (1..n).map(|v| (v - 1, v)).collect(), 1).unwrap()
    }

    fn complete(n: usize) -> Network {
        let arcs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Network::new("k", n, arcs, 1).unwrap()
    }

    fn layout(kind: FamilyKind, i: u32) -> Layout {
        families::layout(FamilySpec::new(kind, i)).unwrap()
    }

    #[test]
    fn representation_examples() {
        assert_eq!(metric_representation(&path(3), 2, &[0]).unwrap(), vec![2]);
        assert_eq!(metric_representation(&path(3), 1, &[2, 1]).unwrap(), vec![1, 0]);
        // Corner basis of a grid recovers coordinates up to an affine map.
        let grid = layout(FamilyKind::Lattice { d: 2 }, 4);
        let rows = representations(&grid.network, &[0, 3]).unwrap();
        for (v, c) in grid.coords.iter().enumerate() {
            assert_eq!(rows[v], vec![(c[0] + c[1]) as usize, (c[0] + 3 - c[1]) as usize]);
        }
    }

    #[test]
    fn resolving_examples() {
        assert!(is_resolving(&path(6), &[0]).unwrap());
        assert!(!is_resolving(&path(6), &[2]).unwrap());
        assert!(!is_resolving(&complete(4), &[0, 1]).unwrap());
        assert!(is_resolving(&complete(4), &[0, 1, 2, 3]).unwrap());
        assert!(is_resolving(&path(3), &[7]).is_err());
    }

    #[test]
    fn exact_dimension_examples() {
        assert_eq!(metric_dimension_exact(&path(10), 1000).unwrap().value, 1);
        assert_eq!(metric_dimension_exact(&complete(5), 1000).unwrap().value, 4);
        let g = layout(FamilyKind::Lattice { d: 2 }, 4).network;
        let md = metric_dimension_exact(&g, 1000).unwrap();
        assert_eq!(md.value, 2);
        assert!(is_resolving(&g, &md.witness).unwrap());
        assert!(matches!(metric_dimension_exact(&complete(6), 3), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(metric_dimension_greedy(&path(8)).unwrap(), MetricDimension { value: 1, witness: vec![0] });
        assert_eq!(metric_dimension_greedy(&complete(5)).unwrap().value, 4);
        let ladder = layout(FamilyKind::Ladder, 6).network;
        let g = metric_dimension_greedy(&ladder).unwrap();
        let exact = metric_dimension_exact(&ladder, 100_000).unwrap().value;
        assert!(is_resolving(&ladder, &g.witness).unwrap());
        assert!(g.value >= exact && g.value < ladder.num_nodes());
    }

    #[test]
    fn extended_examples() {
        let cycle = families::generate(FamilySpec::new(FamilyKind::Cycle, 4)).unwrap();
        let rows = extended_representations(&cycle, &[vec![0]]).unwrap();
        assert_eq!(rows[1], rows[5]);
        assert_eq!(check_extended_resolving(&cycle, &[vec![0]]).unwrap(), 2);
        let ladder = layout(FamilyKind::Ladder, 5);
        let ers = family_extended_resolving(FamilyKind::Ladder, 5).unwrap();
        assert_eq!(ers.lambda, 2);
        let rows = extended_representations(&ladder.network, &ers.subsets).unwrap();
        for (v, c) in ladder.coords.iter().enumerate() {
            assert_eq!(rows[v], vec![c[0] as usize]);
        }
        assert_eq!(check_extended_resolving(&path(5), &[vec![0], vec![4]]).unwrap(), 1);
        assert!(check_extended_resolving(&path(5), &[vec![]]).is_err());
    }

    #[test]
    fn constructions() {
        let t = family_extended_resolving(FamilyKind::Tandem, 9).unwrap();
        assert_eq!((t.cardinality(), t.lambda), (1, 1));
        let s = family_extended_resolving(FamilyKind::Sierpinski, 4).unwrap();
        assert_eq!((s.cardinality(), s.lambda), (2, 1));
        let c = family_extended_resolving(FamilyKind::CompletePlusTandem { clique: 5 }, 4).unwrap();
        assert_eq!((c.cardinality(), c.lambda), (1, 5));
        let tet = family_extended_resolving(FamilyKind::Tetrahedron, 5).unwrap();
        assert_eq!((tet.cardinality(), tet.lambda), (3, 1));
        let hex: Vec<usize> =
            (2..=6).map(|i| family_extended_resolving(FamilyKind::Hexagon, i).unwrap().lambda).collect();
        assert!(hex.iter().all(|&l| l == hex[0]), "{hex:?}");
        assert!(family_extended_resolving(FamilyKind::BinaryTree, 3).is_err());
    }

    #[test]
    fn scaling_estimates() {
        let t = scaling_dimension_estimate(FamilyKind::Tandem, &[32, 64, 128, 256, 512]).unwrap();
        assert!((t.value - 1.0).abs() <= 0.05, "{t:?}");
        let s = scaling_dimension_estimate(FamilyKind::Sierpinski, &[3, 4, 5, 6, 7]).unwrap();
        assert!((s.value - 3f64.log2()).abs() <= 0.1, "{s:?}");
        let b = scaling_dimension_estimate(FamilyKind::BinaryTree, &[4, 6, 8, 10]).unwrap();
        assert!(b.exponential && b.value.is_infinite());
        assert!(scaling_dimension_estimate(FamilyKind::Tandem, &[4, 8]).is_err());
    }

    #[test]
    fn polynomial_families_are_not_flagged() {
        let windows: [(FamilyKind, &[u32]); 10] = [
            (FamilyKind::Tandem, &[16, 32, 64, 128]),
            (FamilyKind::SeriesParallel, &[8, 16, 32, 64]),
            (FamilyKind::TandemComponent, &[8, 16, 32, 64]),
            (FamilyKind::Ladder, &[8, 16, 32, 64]),
            (FamilyKind::Lattice { d: 2 }, &[4, 8, 16, 32]),
            (FamilyKind::Lattice { d: 3 }, &[3, 5, 7, 9]),
            (FamilyKind::Hexagon, &[2, 4, 8, 16]),
            (FamilyKind::Tetrahedron, &[4, 8, 12, 16]),
            (FamilyKind::Sierpinski, &[3, 4, 5, 6, 7]),
            (FamilyKind::Cycle, &[8, 16, 32, 64]),
        ];
        for (kind, idx) in windows {
            let e = scaling_dimension_estimate(kind, idx).unwrap();
            let truth = kind.ground_truth();
            assert!(!e.exponential, "{kind}: {e:?}");
            assert!(e.value <= truth.dim_em.as_f64() + 0.1, "{kind}: {e:?}");
        }
    }

    #[test]
    fn em_certificates() {
        let l = extended_metric_dimension(FamilyKind::Lattice { d: 2 }, &[4, 6, 8], 4).unwrap();
        assert_eq!((l.dim_em, l.lambda), (EmDim::Finite(2), Some(1)));
        let ladder = extended_metric_dimension(FamilyKind::Ladder, &[8, 16, 32], 4).unwrap();
        assert_eq!((ladder.dim_em, ladder.lambda), (EmDim::Finite(1), Some(2)));
        let tree = extended_metric_dimension(FamilyKind::BinaryTree, &[4, 6, 8], 4).unwrap();
        assert_eq!(tree.dim_em, EmDim::Infinite);
    }

    #[test]
    fn relation_examples() {
        assert!(check_dim_relation(3.0, EmDim::Finite(3)).ordering_holds);
        let s = check_dim_relation(3f64.log2(), EmDim::Finite(2));
        assert_eq!((s.ordering_holds, s.conjecture_holds), (true, Some(true)));
        assert!(check_dim_relation(f64::INFINITY, EmDim::Infinite).ordering_holds);
        assert!(!check_dim_relation(2.5, EmDim::Finite(2)).ordering_holds);
    }
}
