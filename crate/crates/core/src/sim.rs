//! Streaming evaluation of the blocking recurrence
//!
//! `T[m][v] = S[m][v] + max( T[m][u] for (u,v) in E,
//!                           T[m-1][v] if m >= 1,
//!                           T[m-b][w] for (v,w) in E if m >= b )`
//!
//! and Monte-Carlo throughput estimates built on it. Only the last `b + 1`
//! job rows are kept.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{self, FamilyKind, FamilySpec};
use crate::network::{diameter, Network};
use crate::service::{derive_seed, KeyStream, ServiceDistribution};
use crate::stats::{fit_line, mean, std_error};

/// Differenced windows shorter than this raise the estimate's warning flag.
pub const MIN_MEASURED_JOBS: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub m_max: u64,
    pub warmup: u64,
    pub replications: u32,
    pub seed: u64,
}

impl SimulationConfig {
    /// `m_max = 20000 b`, warmup a quarter of that, 16 replications.
    pub fn for_buffer(buffer_size: u32, seed: u64) -> Self {
        let m_max = 20_000 * u64::from(buffer_size.max(1));
        SimulationConfig { m_max, warmup: m_max / 4, replications: 16, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.warmup >= self.m_max {
            return Err(Error::InvalidParameter(format!(
                "warmup {} must be below m_max {}",
                self.warmup, self.m_max
            )));
        }
        if self.replications == 0 {
            return Err(Error::InvalidParameter("at least one replication is required".into()));
        }
        Ok(())
    }
}

/// Ring of the last `b + 1` job rows of completion times.
#[derive(Clone, Debug)]
pub struct CompletionFront {
    num_nodes: usize,
    rows: usize,
    times: Vec<f64>,
}

impl CompletionFront {
    fn new(num_nodes: usize, buffer_size: u32) -> Self {
        let rows = buffer_size as usize + 1;
        CompletionFront { num_nodes, rows, times: vec![0.0; rows * num_nodes] }
    }

    fn row_start(&self, m: u64) -> usize {
        (m % self.rows as u64) as usize * self.num_nodes
    }
}

/// Adjacency in topological positions, flattened for the inner loop.
struct Plan {
    order: Vec<usize>,
    up_start: Vec<usize>,
    up: Vec<usize>,
    down_start: Vec<usize>,
    down: Vec<usize>,
    buffer: u64,
}

impl Plan {
    fn new(net: &Network) -> Self {
        let order = net.topological_order().to_vec();
        let mut pos = vec![0; order.len()];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let flatten = |upstream: bool| {
            let mut start = vec![0];
            let mut flat = Vec::new();
            for &v in &order {
                let list = if upstream { net.upstream(v) } else { net.downstream(v) };
                flat.extend(list.iter().map(|&u| pos[u]));
                start.push(flat.len());
            }
            (start, flat)
        };
        let (up_start, up) = flatten(true);
        let (down_start, down) = flatten(false);
        Plan { order, up_start, up, down_start, down, buffer: u64::from(net.buffer_size()) }
    }

    /// Fills job row `m`; values are stored by topological position.
    #[inline]
    fn step(&self, front: &mut CompletionFront, m: u64, keys: &mut KeyStream, dist: &ServiceDistribution) {
        let n = front.num_nodes;
        let cur = front.row_start(m);
        let prev = (m >= 1).then(|| front.row_start(m - 1));
        let back = (m >= self.buffer).then(|| front.row_start(m - self.buffer));
        keys.set_job(m);
        let t = &mut front.times;
        for p in 0..n {
            // Completion times are positive, so 0 stands in for "no term".
            let mut start = 0.0f64;
            for &u in &self.up[self.up_start[p]..self.up_start[p + 1]] {
                start = start.max(t[cur + u]);
            }
            if let Some(prev) = prev {
                start = start.max(t[prev + p]);
            }
            if let Some(back) = back {
                for &w in &self.down[self.down_start[p]..self.down_start[p + 1]] {
                    start = start.max(t[back + w]);
                }
            }
            t[cur + p] = start + dist.quantile(keys.uniform(self.order[p] as u64));
        }
    }
}

/// Runs jobs `0..=m_max`, calling `observe(m, row)` with each row indexed by
/// node id.
pub fn simulate_rows(
    net: &Network,
    dist: &ServiceDistribution,
    m_max: u64,
    seed: u64,
    replication: u64,
    mut observe: impl FnMut(u64, &[f64]),
) {
    let plan = Plan::new(net);
    let mut front = CompletionFront::new(net.num_nodes(), net.buffer_size());
    let mut keys = KeyStream::new(seed, replication);
    let mut row = vec![0.0; net.num_nodes()];
    for m in 0..=m_max {
        plan.step(&mut front, m, &mut keys, dist);
        let start = front.row_start(m);
        for (p, &v) in plan.order.iter().enumerate() {
            row[v] = front.times[start + p];
        }
        observe(m, &row);
    }
}

/// Final row `T[m_max][v]`, indexed by node id.
pub fn completion_times(
    net: &Network,
    dist: &ServiceDistribution,
    m_max: u64,
    seed: u64,
    replication: u64,
) -> Vec<f64> {
    let plan = Plan::new(net);
    let mut front = CompletionFront::new(net.num_nodes(), net.buffer_size());
    let mut keys = KeyStream::new(seed, replication);
    for m in 0..=m_max {
        plan.step(&mut front, m, &mut keys, dist);
    }
    let start = front.row_start(m_max);
    let mut row = vec![0.0; net.num_nodes()];
    for (p, &v) in plan.order.iter().enumerate() {
        row[v] = front.times[start + p];
    }
    row
}

/// `(T[warmup][v], T[m_max][v])` for one node, without materialising rows.
fn differenced_times(
    net: &Network,
    dist: &ServiceDistribution,
    config: &SimulationConfig,
    replication: u64,
    node: usize,
) -> (f64, f64) {
    let plan = Plan::new(net);
    let p = plan.order.iter().position(|&v| v == node).expect("node in network");
    let mut front = CompletionFront::new(net.num_nodes(), net.buffer_size());
    let mut keys = KeyStream::new(config.seed, replication);
    let mut at_warmup = 0.0;
    for m in 0..=config.m_max {
        plan.step(&mut front, m, &mut keys, dist);
        if m == config.warmup {
            at_warmup = front.times[front.row_start(m) + p];
        }
    }
    (at_warmup, front.times[front.row_start(config.m_max) + p])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThroughputEstimate {
    pub point: f64,
    pub per_replication: Vec<f64>,
    pub std_error: f64,
    pub reference_node: usize,
    pub config: SimulationConfig,
    pub warning: Option<String>,
}

/// Throughput at the lowest-id sink, one differenced ratio per replication.
pub fn estimate_throughput(
    net: &Network,
    dist: &ServiceDistribution,
    config: &SimulationConfig,
) -> Result<ThroughputEstimate> {
    config.validate()?;
    dist.validate()?;
    let reference_node = net.sinks().next().expect("a DAG has a sink");
    let jobs = (config.m_max - config.warmup) as f64;
    let one = |r: u32| {
        let (t0, t1) = differenced_times(net, dist, config, u64::from(r), reference_node);
        jobs / (t1 - t0)
    };
    #[cfg(feature = "parallel")]
    let per_replication: Vec<f64> = (0..config.replications).into_par_iter().map(one).collect();
    #[cfg(not(feature = "parallel"))]
    let per_replication: Vec<f64> = (0..config.replications).map(one).collect();

    let warning = (config.m_max - config.warmup < MIN_MEASURED_JOBS).then(|| {
        format!(
            "only {} jobs in the measured window; the estimate may carry transient bias",
            config.m_max - config.warmup
        )
    });
    Ok(ThroughputEstimate {
        point: mean(&per_replication),
        std_error: std_error(&per_replication),
        per_replication,
        reference_node,
        config: *config,
        warning,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub index: u32,
    pub num_nodes: usize,
    pub diameter: usize,
    pub estimate: ThroughputEstimate,
}

/// One estimate per family index; each index gets its own derived seed.
pub fn throughput_curve(
    kind: FamilyKind,
    buffer_size: u32,
    dist: &ServiceDistribution,
    indices: &[u32],
    config: &SimulationConfig,
) -> Result<Vec<CurvePoint>> {
    indices
        .iter()
        .map(|&index| {
            let net = families::generate(FamilySpec::new(kind, index).with_buffer(buffer_size))?;
            let cfg = SimulationConfig { seed: derive_seed(config.seed, u64::from(index)), ..*config };
            Ok(CurvePoint {
                index,
                num_nodes: net.num_nodes(),
                diameter: diameter(&net).value,
                estimate: estimate_throughput(&net, dist, &cfg)?,
            })
        })
        .collect()
}

/// Least-squares slope of `log θ` against `log i`.
pub fn decay_exponent(series: &[(f64, f64)]) -> Result<f64> {
    if series.len() < 3 {
        return Err(Error::Degenerate("need at least three points".into()));
    }
    if series.iter().any(|&(i, t)| !(i > 0.0 && t > 0.0)) {
        return Err(Error::Degenerate("indices and throughputs must be positive".into()));
    }
    let xs: Vec<f64> = series.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = series.iter().map(|p| p.1.ln()).collect();
    fit_line(&xs, &ys)
        .map(|f| f.slope)
        .ok_or_else(|| Error::Degenerate("indices must not all coincide".into()))
}

pub const CSV_HEADER: &str = "family,index,num_nodes,diameter,alpha,replication,throughput,std_error,seed";

/// One CSV row per replication; `alpha` is empty for light-tailed laws.
pub fn curve_csv(kind: FamilyKind, dist: &ServiceDistribution, curve: &[CurvePoint]) -> String {
    let alpha = dist.rv_index().map(|a| a.to_string()).unwrap_or_default();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in curve {
        for (r, theta) in p.estimate.per_replication.iter().enumerate() {
            out.push_str(&format!(
                "{kind},{},{},{},{alpha},{r},{theta},{},{}\n",
                p.index, p.num_nodes, p.diameter, p.estimate.std_error, p.estimate.config.seed
            ));
        }
    }
    out
}
