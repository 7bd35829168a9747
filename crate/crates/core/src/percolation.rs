//! Last-passage percolation on the precedence graph.
//!
//! Precedence nodes are pairs `(m, v)`. Arcs are generated on demand:
//! Type I `(m,v) -> (m,u)` for `(u,v)` in E, Type II `(m,v) -> (m-1,v)`,
//! Type III `(m,v) -> (m-b,w)` for `(v,w)` in E when `m >= b`. The weight
//! of `(m, v)` is the service time of job `m` at `v` under the shared
//! counter-based field, so the maximum path weight from `(m, v)` equals the
//! completion time `T[m][v]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{diameter, minimum_level, Network};
use crate::service::{derive_seed, uniform, SampleKey, ServiceDistribution};
use crate::stats::{mean, std_error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrecedenceNode {
    pub m: u64,
    pub v: usize,
}

impl PrecedenceNode {
    pub fn new(m: u64, v: usize) -> Self {
        PrecedenceNode { m, v }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcType {
    I,
    II,
    III,
}

/// Legal successors of `p` with their arc types, sorted by `(m, v)`.
pub fn arcs_out(net: &Network, p: PrecedenceNode) -> Vec<(PrecedenceNode, ArcType)> {
    let b = u64::from(net.buffer_size());
    let mut out: Vec<(PrecedenceNode, ArcType)> = Vec::new();
    out.extend(net.upstream(p.v).iter().map(|&u| (PrecedenceNode::new(p.m, u), ArcType::I)));
    if p.m >= 1 {
        out.push((PrecedenceNode::new(p.m - 1, p.v), ArcType::II));
    }
    if p.m >= b {
        out.extend(net.downstream(p.v).iter().map(|&w| (PrecedenceNode::new(p.m - b, w), ArcType::III)));
    }
    // Type II and III can coincide in (m, v) only when b = 1 and v is its
    // own neighbour, which a valid network excludes.
    out.sort_by_key(|&(q, _)| q);
    out
}

/// Weight field of one replication.
#[derive(Clone, Copy, Debug)]
pub struct WeightField<'a> {
    pub dist: &'a ServiceDistribution,
    pub seed: u64,
    pub replication: u64,
}

impl WeightField<'_> {
    #[inline]
    pub fn weight(&self, p: PrecedenceNode) -> f64 {
        self.dist.quantile(uniform(SampleKey {
            seed: self.seed,
            replication: self.replication,
            job: p.m,
            node: p.v as u64,
        }))
    }
}

/// Dense table over the slab `m_lo..=m_hi` of the precedence graph, filled
/// in an order where every successor precedes its predecessors.
struct Slab<T> {
    m_lo: u64,
    n: usize,
    cells: Vec<T>,
}

impl<T: Copy> Slab<T> {
    fn new(m_lo: u64, m_hi: u64, n: usize, fill: T) -> Self {
        Slab { m_lo, n, cells: vec![fill; (m_hi - m_lo + 1) as usize * n] }
    }

    fn idx(&self, p: PrecedenceNode) -> Option<usize> {
        (p.m >= self.m_lo).then(|| (p.m - self.m_lo) as usize * self.n + p.v)
    }

    fn get(&self, p: PrecedenceNode) -> Option<T> {
        self.idx(p).map(|i| self.cells[i])
    }

    fn set(&mut self, p: PrecedenceNode, value: T) {
        let i = self.idx(p).expect("inside slab");
        self.cells[i] = value;
    }
}

/// Visits the slab so that successors come first: `m` ascending, then
/// topological order (Type I successors are upstream).
fn slab_order(net: &Network, m_lo: u64, m_hi: u64) -> impl Iterator<Item = PrecedenceNode> + '_ {
    (m_lo..=m_hi).flat_map(move |m| net.topological_order().iter().map(move |&v| PrecedenceNode::new(m, v)))
}

fn check_node(net: &Network, p: PrecedenceNode) -> Result<()> {
    if p.v >= net.num_nodes() {
        return Err(Error::NodeOutOfRange { node: p.v, num_nodes: net.num_nodes() });
    }
    Ok(())
}

/// Maximum-weight values `W(q)` of paths from `q` down to level 0, for
/// every `q` reachable from `(m, v)`.
fn lpp_table(net: &Network, field: WeightField<'_>, start: PrecedenceNode) -> Slab<f64> {
    let mut reach = Slab::new(0, start.m, net.num_nodes(), false);
    reach.set(start, true);
    // Reverse of the successor-first order visits predecessors first.
    let order: Vec<PrecedenceNode> = slab_order(net, 0, start.m).collect();
    for &q in order.iter().rev() {
        if reach.get(q) == Some(true) {
            for (s, _) in arcs_out(net, q) {
                reach.set(s, true);
            }
        }
    }
    let mut value = Slab::new(0, start.m, net.num_nodes(), f64::NAN);
    for q in order {
        if reach.get(q) != Some(true) {
            continue;
        }
        let best = arcs_out(net, q)
            .into_iter()
            .filter_map(|(s, _)| value.get(s))
            .fold(0.0f64, f64::max);
        value.set(q, field.weight(q) + best);
    }
    value
}

/// Maximum path weight from `(m, v)` to level 0.
pub fn lpp_value(
    net: &Network,
    dist: &ServiceDistribution,
    m: u64,
    v: usize,
    seed: u64,
    replication: u64,
) -> Result<f64> {
    let start = PrecedenceNode::new(m, v);
    check_node(net, start)?;
    let field = WeightField { dist, seed, replication };
    Ok(lpp_table(net, field, start).get(start).expect("start in slab"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathResult {
    pub nodes: Vec<PrecedenceNode>,
    pub weights: Vec<f64>,
    pub weight: f64,
    pub type_counts: [usize; 3],
}

impl PathResult {
    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// A maximum-weight path from `(m, v)`, breaking ties toward the smallest
/// successor in `(m, v)` order.
pub fn extract_max_path(
    net: &Network,
    dist: &ServiceDistribution,
    m: u64,
    v: usize,
    seed: u64,
    replication: u64,
) -> Result<PathResult> {
    let start = PrecedenceNode::new(m, v);
    check_node(net, start)?;
    let field = WeightField { dist, seed, replication };
    let value = lpp_table(net, field, start);
    let mut nodes = vec![start];
    let mut type_counts = [0usize; 3];
    let mut cur = start;
    loop {
        let mut best: Option<(f64, PrecedenceNode, ArcType)> = None;
        for (s, t) in arcs_out(net, cur) {
            let w = value.get(s).expect("successor in slab");
            if best.map_or(true, |(bw, _, _)| w > bw) {
                best = Some((w, s, t));
            }
        }
        let Some((_, next, t)) = best else { break };
        type_counts[t as usize] += 1;
        nodes.push(next);
        cur = next;
    }
    let weights: Vec<f64> = nodes.iter().map(|&p| field.weight(p)).collect();
    Ok(PathResult { weight: weights.iter().sum(), weights, nodes, type_counts })
}

/// Maximum weight of a path from `from` to `to` (both ends included), or
/// `None` when `to` is unreachable.
pub fn point_to_point(
    net: &Network,
    field: WeightField<'_>,
    from: PrecedenceNode,
    to: PrecedenceNode,
) -> Result<Option<f64>> {
    check_node(net, from)?;
    check_node(net, to)?;
    if to.m > from.m {
        return Ok(None);
    }
    // -inf marks nodes that cannot reach `to`.
    let mut value = Slab::new(to.m, from.m, net.num_nodes(), f64::NEG_INFINITY);
    for q in slab_order(net, to.m, from.m) {
        let v = if q == to {
            field.weight(q)
        } else {
            let best = arcs_out(net, q)
                .into_iter()
                .filter_map(|(s, _)| value.get(s))
                .fold(f64::NEG_INFINITY, f64::max);
            if best == f64::NEG_INFINITY {
                best
            } else {
                field.weight(q) + best
            }
        };
        value.set(q, v);
        if q == from {
            break;
        }
    }
    Ok(value.get(from).filter(|w| w.is_finite()))
}

/// Reachability in the precedence graph.
pub fn exists_path(net: &Network, from: PrecedenceNode, to: PrecedenceNode) -> Result<bool> {
    let unit = ServiceDistribution::Deterministic { value: 1.0 };
    let field = WeightField { dist: &unit, seed: 0, replication: 0 };
    Ok(point_to_point(net, field, from, to)?.is_some())
}

/// Checks `W(a ~> c) >= W(a ~> b) + W(b ~> c) - S(b)` on one weight field.
pub fn check_superadditivity(
    net: &Network,
    field: WeightField<'_>,
    a: PrecedenceNode,
    b: PrecedenceNode,
    c: PrecedenceNode,
) -> Result<bool> {
    let first = point_to_point(net, field, a, b)?.ok_or(Error::NoPath { leg: "first" })?;
    let second = point_to_point(net, field, b, c)?.ok_or(Error::NoPath { leg: "second" })?;
    let whole = point_to_point(net, field, a, c)?.expect("concatenation is a path");
    let split = first + second - field.weight(b);
    Ok(whole >= split - 1e-9 * split.abs().max(1.0))
}

/// Length bounds for a path `(m, v) ~> (m', v')`.
///
/// With a labelling `l` satisfying `1 <= l(j) - l(i) <= L*` on arcs, the
/// potential `C m + l(v)` with `C = max(L* + 1, b) / b` drops by at least
/// one along every arc, so `|π| <= C (m - m') + l(v) - l(v')`; each Type III
/// arc lowers `m` by `b`, so their count is at most `(m - m') / b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PathBound {
    pub length: usize,
    pub length_bound: f64,
    pub type_iii: usize,
    pub type_iii_bound: f64,
    pub holds: bool,
}

pub fn path_length_bound(path: &PathResult, net: &Network, level: usize, labels: &[i64]) -> PathBound {
    let b = f64::from(net.buffer_size());
    let (first, last) = (path.nodes[0], *path.nodes.last().expect("non-empty path"));
    let dm = (first.m - last.m) as f64;
    let c = ((level + 1) as f64).max(b) / b;
    let length_bound = c * dm + (labels[first.v] - labels[last.v]) as f64;
    let type_iii_bound = dm / b;
    let (length, type_iii) = (path.len(), path.type_counts[ArcType::III as usize]);
    PathBound {
        length,
        length_bound,
        type_iii,
        type_iii_bound,
        holds: length as f64 <= length_bound + 1e-9 && type_iii as f64 <= type_iii_bound + 1e-9,
    }
}

pub fn path_length_bound_check(path: &PathResult, net: &Network) -> bool {
    let (level, labels) = minimum_level(net);
    path_length_bound(path, net, level, &labels).holds
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UpperBound {
    /// Estimated upper bound on throughput, `3 Δ b / E[max]`.
    pub bound: f64,
    pub std_error: f64,
    pub expected_max: f64,
    pub draws: u64,
    pub diameter: usize,
    pub samples: u32,
}

/// Throughput upper bound from the middle layer of `Δ b |V|` services.
///
/// Each sample draws the maximum of `n` uniforms directly as `U^{1/n}` and
/// maps it through the quantile, which is exact because the quantile is
/// monotone.
pub fn upper_bound_throughput(
    net: &Network,
    dist: &ServiceDistribution,
    samples: u32,
    seed: u64,
) -> Result<UpperBound> {
    if samples < 100 {
        return Err(Error::InvalidParameter("at least 100 samples are required".into()));
    }
    dist.validate()?;
    let d = diameter(net);
    let delta = if d.exact { d.value } else { d.upper_bound };
    let b = u64::from(net.buffer_size());
    let draws = (delta.max(1) as u64) * b * net.num_nodes() as u64;
    let stream = derive_seed(seed, 0x7570_7065_72);
    let maxima: Vec<f64> = (0..u64::from(samples))
        .map(|s| {
            let u = uniform(SampleKey { seed: stream, replication: 0, job: s, node: 0 });
            dist.quantile_upper(sample_max_survival(u, draws))
        })
        .collect();
    let expected_max = mean(&maxima);
    let scale = 3.0 * delta.max(1) as f64 * b as f64;
    Ok(UpperBound {
        bound: scale / expected_max,
        std_error: scale * std_error(&maxima) / (expected_max * expected_max),
        expected_max,
        draws,
        diameter: delta,
        samples,
    })
}

/// Survival value `1 - U^{1/n}` of the maximum of `n` uniforms, computed
/// without cancellation.
pub fn sample_max_survival(u: f64, n: u64) -> f64 {
    -(u.ln() / n as f64).exp_m1()
}
