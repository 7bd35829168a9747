//! WebAssembly bindings for the static page in `www/`. Every function
//! returns a JSON string; errors come back as `{"error": "..."}`.

use fjqn::dimensions::scaling_dimension_estimate;
use fjqn::families::generate;
use fjqn::network::metrics;
use fjqn::scalability::{empirical_verdict, table_row, theorem_verdict, Thresholds};
use fjqn::sim::{throughput_curve, SimulationConfig};
use fjqn::{FamilyKind, FamilySpec, Result, ServiceDistribution};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Generates `family` at `index` and reports its size, degree, diameter and
/// minimum level.
#[wasm_bindgen]
pub fn network_metrics(family: &str, index: u32, buffer_size: u32) -> String {
    respond((|| {
        let kind: FamilyKind = family.parse()?;
        let spec = FamilySpec::new(kind, index).with_buffer(buffer_size);
        spec.validate()?;
        let net = generate(spec)?;
        let m = metrics(&net);
        Ok(json!({
            "family": kind.to_string(),
            "index": index,
            "num_nodes": m.num_nodes,
            "num_arcs": m.num_arcs,
            "degree": m.degree,
            "diameter": m.diameter,
            "min_level": m.min_level,
        }))
    })())
}

/// Simulated throughput over comma-separated `indices` under Pareto(α)
/// service, with the fitted trend once four or more points exist.
#[wasm_bindgen]
pub fn throughput(family: &str, indices: &str, alpha: f64, m_max: u32, replications: u32, seed: u32) -> String {
    respond((|| {
        let kind: FamilyKind = family.parse()?;
        let indices = parse_indices(indices)?;
        let dist = ServiceDistribution::pareto(alpha);
        let m_max = u64::from(m_max);
        let cfg = SimulationConfig { m_max, warmup: m_max / 4, replications, seed: u64::from(seed) };
        let curve = throughput_curve(kind, 1, &dist, &indices, &cfg)?;
        let series: Vec<(f64, f64)> = curve.iter().map(|p| (f64::from(p.index), p.estimate.point)).collect();
        let trend = if series.len() >= 4 { Some(empirical_verdict(&series, Thresholds::default())?) } else { None };
        let points: Vec<Value> = curve
            .iter()
            .map(|p| {
                json!({
                    "index": p.index,
                    "num_nodes": p.num_nodes,
                    "throughput": p.estimate.point,
                    "std_error": p.estimate.std_error,
                })
            })
            .collect();
        Ok(json!({ "family": kind.to_string(), "alpha": alpha, "points": points, "trend": trend }))
    })())
}

/// Theorem verdict from the closed-form dimensions, plus the scaling
/// dimension measured over a few small indices.
#[wasm_bindgen]
pub fn verdict(family: &str, alpha: f64) -> String {
    respond((|| {
        let kind: FamilyKind = family.parse()?;
        let g = kind.ground_truth();
        let v = theorem_verdict(g.dim_s, g.dim_em, alpha, true, true)?;
        let measured = scaling_dimension_estimate(kind, &probe_indices(kind)).ok().map(|s| s.value);
        Ok(json!({
            "family": kind.to_string(),
            "outcome": v.outcome,
            "reasons": v.reasons,
            "thresholds": table_row(kind),
            "measured_dim_s": measured,
        }))
    })())
}

fn parse_indices(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| fjqn::Error::InvalidParameter(format!("bad index `{t}`")))
        })
        .collect()
}

fn probe_indices(kind: FamilyKind) -> Vec<u32> {
    match kind {
        FamilyKind::BinaryTree | FamilyKind::TandemPlusTree => vec![3, 4, 5, 6, 7, 8],
        FamilyKind::Sierpinski => vec![3, 4, 5, 6],
        FamilyKind::Lattice { d } if d >= 3 => vec![3, 4, 6, 8],
        FamilyKind::Tetrahedron | FamilyKind::Hexagon => vec![3, 4, 6, 8],
        _ => vec![8, 16, 32, 64],
    }
}
