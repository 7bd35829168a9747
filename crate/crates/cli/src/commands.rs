use std::io::Write;
use std::path::Path;

use fjqn::animals::{animal_growth_rate, evt_max_scaling};
use fjqn::dimensions::{dimension_report, extended_metric_dimension, scaling_dimension_estimate};
use fjqn::families::{generate, EmDim};
use fjqn::network::{load, metrics};
use fjqn::percolation::{extract_max_path, upper_bound_throughput};
use fjqn::scalability::{empirical_verdict, theorem_verdict, TableRow};
use fjqn::sim::{curve_csv, decay_exponent, throughput_curve, SimulationConfig};
use fjqn::{Error, FamilySpec, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::parse_family;
use crate::config::{ExperimentConfig, OutputPaths, SCHEMA_VERSION};
use crate::{Command, SimulateArgs, DEFAULT_SEED};

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Gen { family, index, buffer, out } => {
            let spec = FamilySpec::new(family.kind()?, index).with_buffer(buffer);
            spec.validate()?;
            let net = generate(spec)?;
            emit(out.as_deref(), &pretty(&net.to_file())?)
        }
        Command::Metrics { network, out } => {
            let net = load(&network)?;
            let doc = with_schema(json!({ "name": net.name(), "buffer_size": net.buffer_size() }), &metrics(&net))?;
            emit(out.as_deref(), &pretty(&doc)?)
        }
        Command::Simulate(args) => simulate(args),
        Command::Dimension { family, indices, lambda_max, out } => {
            let report = dimension_report(family.kind()?, &indices, lambda_max)?;
            emit(out.as_deref(), &pretty(&with_schema(json!({}), &report)?)?)
        }
        Command::Verdict { family, alpha, computed, indices, lambda_max, out } => {
            let kind = family.kind()?;
            let truth = kind.ground_truth();
            let (dim_s, dim_em, source) = if computed {
                let s = scaling_dimension_estimate(kind, &indices)?;
                let em = extended_metric_dimension(kind, &indices, lambda_max)?;
                (s.value, em.dim_em, "computed")
            } else {
                (truth.dim_s, truth.dim_em, truth.source)
            };
            // every generated family has bounded degree and level 1 labellings
            let verdict = theorem_verdict(dim_s, dim_em, alpha, true, true)?;
            let thresholds = TableRow { necessary_alpha: 1.0 + dim_s, sufficient_alpha: 1.0 + dim_em.as_f64() };
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "family": kind.to_string(),
                "alpha": alpha,
                "outcome": verdict.outcome,
                "reasons": verdict.reasons,
                "inputs": verdict.inputs,
                "thresholds": thresholds,
                "dim_em": em_value(dim_em),
                "source": source,
            });
            emit(out.as_deref(), &pretty(&doc)?)
        }
        Command::Lpp { network, m, node, dist, seed, replication, out } => {
            let net = load(&network)?;
            let dist = dist.distribution()?;
            let v = match node {
                Some(v) => v,
                None => net.sinks().next().expect("a DAG has a sink"),
            };
            let path = extract_max_path(&net, &dist, m, v, seed, replication)?;
            let mut text = String::new();
            for (p, w) in path.nodes.iter().zip(&path.weights) {
                let line = json!({ "schema_version": SCHEMA_VERSION, "m": p.m, "v": p.v, "weight": w });
                text.push_str(&line.to_string());
                text.push('\n');
            }
            emit(out.as_deref(), &text)
        }
        Command::Animal { k, sizes, dist, replications, seed, strategy, out } => {
            let dist = dist.distribution()?;
            let series = animal_growth_rate(k, &sizes, &dist, replications, seed, strategy.into())?;
            let mut text = String::from("n,mean,stderr\n");
            for p in series {
                text.push_str(&format!("{},{},{}\n", p.n, p.mean, p.std_error));
            }
            emit(out.as_deref(), &text)
        }
        Command::Evt { alpha, n, replications, seed, out } => {
            let mut text = String::from("n,mean,stderr,exact,limit\n");
            for n in n {
                let r = evt_max_scaling(alpha, n, replications, seed)?;
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n, r.mean_scaled_max, r.std_error, r.exact_scaled_max, r.limit
                ));
            }
            emit(out.as_deref(), &text)
        }
    }
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => config_from_flags(&args)?,
    };
    if let Some(seed) = args.seed {
        let mut sim = cfg.simulation();
        sim.seed = seed;
        cfg.simulation = Some(sim);
    }
    if args.out.is_some() {
        cfg.output.csv = args.out.clone();
    }
    if args.summary.is_some() {
        cfg.output.summary = args.summary.clone();
    }
    cfg.validate()?;

    let sim = cfg.simulation();
    let curve = throughput_curve(cfg.family, cfg.buffer_size, &cfg.distribution, &cfg.indices, &sim)?;
    let csv = curve_csv(cfg.family, &cfg.distribution, &curve);

    let series: Vec<(f64, f64)> = curve.iter().map(|p| (f64::from(p.index), p.estimate.point)).collect();
    let mut points = Vec::new();
    for p in &curve {
        let mut point = json!({
            "index": p.index,
            "num_nodes": p.num_nodes,
            "diameter": p.diameter,
            "throughput": p.estimate.point,
            "std_error": p.estimate.std_error,
            "warning": p.estimate.warning,
        });
        if cfg.bound_samples > 0 {
            let net = generate(FamilySpec::new(cfg.family, p.index).with_buffer(cfg.buffer_size))?;
            let ub = upper_bound_throughput(&net, &cfg.distribution, cfg.bound_samples, sim.seed)?;
            point["upper_bound"] = serde_json::to_value(ub)?;
        }
        points.push(point);
    }
    let slope = (series.len() >= 3).then(|| decay_exponent(&series)).transpose()?;
    let trend = (series.len() >= 4).then(|| empirical_verdict(&series, cfg.thresholds)).transpose()?;
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "family": cfg.family.to_string(),
        "buffer_size": cfg.buffer_size,
        "distribution": cfg.distribution,
        "simulation": sim,
        "points": points,
        "decay_exponent": slope,
        "trend": trend,
    });

    // the CSV goes to stdout unless a path is given; the summary only to a file
    emit(cfg.output.csv.as_deref(), &csv)?;
    if let Some(path) = &cfg.output.summary {
        emit(Some(path), &pretty(&summary)?)?;
    }
    Ok(())
}

fn config_from_flags(args: &SimulateArgs) -> Result<ExperimentConfig> {
    let name = args.family.as_deref().expect("clap requires --family without --config");
    if args.indices.is_empty() {
        return Err(Error::InvalidParameter("--indices is required without --config".into()));
    }
    let defaults = SimulationConfig::for_buffer(args.buffer, args.seed.unwrap_or(DEFAULT_SEED));
    let m_max = args.m_max.unwrap_or(defaults.m_max);
    let simulation = SimulationConfig {
        m_max,
        warmup: args.warmup.unwrap_or(m_max / 4),
        replications: args.replications.unwrap_or(defaults.replications),
        seed: defaults.seed,
    };
    Ok(ExperimentConfig {
        schema_version: SCHEMA_VERSION,
        family: parse_family(name, args.d, args.clique)?,
        indices: args.indices.clone(),
        buffer_size: args.buffer,
        distribution: args.dist.distribution()?,
        simulation: Some(simulation),
        output: OutputPaths { csv: args.out.clone(), summary: args.summary.clone() },
        thresholds: Default::default(),
        bound_samples: args.bound_samples,
    })
}

fn em_value(d: EmDim) -> Value {
    match d {
        EmDim::Finite(k) => json!(k),
        EmDim::Infinite => json!("infinite"),
    }
}

/// Merges `body` (a struct serialising to an object) into `head` and stamps
/// the schema version.
fn with_schema(head: Value, body: &impl Serialize) -> Result<Value> {
    let mut doc = head;
    doc["schema_version"] = json!(SCHEMA_VERSION);
    if let Value::Object(fields) = serde_json::to_value(body)? {
        for (k, v) in fields {
            doc[k.as_str()] = v;
        }
    }
    Ok(doc)
}

fn pretty(v: &impl Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fjqn::io::write_atomic(path, text.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush().map_err(Error::from)
        }
    }
}
