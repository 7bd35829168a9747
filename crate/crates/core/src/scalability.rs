//! Scalability verdicts: the dimension/tail-index theorem and an empirical
//! reading of simulated throughput curves.

use serde::{Deserialize, Serialize};

use crate::dimensions::scaling_dimension_estimate;
use crate::error::{Error, Result};
use crate::families::{EmDim, FamilyKind};
use crate::service::{ServiceDistribution, TailIntegral};
use crate::sim::decay_exponent;

/// Dimensions within this distance of `α - 1` count as equal.
const BOUNDARY_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Scalable,
    NotScalable,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerdictInputs {
    pub dim_s: f64,
    pub dim_em: f64,
    pub alpha: f64,
    pub degree_bounded: bool,
    pub level_bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub reasons: Vec<String>,
    pub inputs: VerdictInputs,
}

/// Decision table: not scalable when degree or level is unbounded or
/// `dim_S > α - 1`; scalable when `dim_EM < α - 1`; indeterminate otherwise,
/// including equality at either boundary.
pub fn theorem_verdict(
    dim_s: f64,
    dim_em: EmDim,
    alpha: f64,
    degree_bounded: bool,
    level_bounded: bool,
) -> Result<Verdict> {
    if !(alpha > 1.0) {
        return Err(Error::InvalidParameter(format!("tail index must exceed 1, got {alpha}")));
    }
    if dim_s.is_nan() || dim_s < 0.0 {
        return Err(Error::InvalidParameter("scaling dimension must be non-negative".into()));
    }
    let em = dim_em.as_f64();
    let inputs = VerdictInputs { dim_s, dim_em: em, alpha, degree_bounded, level_bounded };
    let slack = alpha - 1.0;
    let mut reasons = Vec::new();
    if !degree_bounded || !level_bounded {
        let which = match (degree_bounded, level_bounded) {
            (false, false) => "degree and minimum level are",
            (false, true) => "degree is",
            _ => "minimum level is",
        };
        reasons.push(format!(
            "{which} unbounded along the sequence; bounded degree and level are necessary even under light tails"
        ));
    }
    if dim_s > slack + BOUNDARY_EPS {
        reasons.push(format!("scaling dimension {dim_s:.4} exceeds α - 1 = {slack:.4}"));
    }
    if !reasons.is_empty() {
        return Ok(Verdict { outcome: Outcome::NotScalable, reasons, inputs });
    }
    if em < slack - BOUNDARY_EPS {
        reasons.push(format!("extended metric dimension {em} is below α - 1 = {slack:.4}"));
        return Ok(Verdict { outcome: Outcome::Scalable, reasons, inputs });
    }
    reasons.push(format!(
        "α - 1 = {slack:.4} lies in [{dim_s:.4}, {em}]: between the necessary and the sufficient condition"
    ));
    Ok(Verdict { outcome: Outcome::Indeterminate, reasons, inputs })
}

/// `α` thresholds implied by a pair of dimensions: necessary `α >= 1 + dim_S`,
/// sufficient `α > 1 + dim_EM`. Infinite values mean no `α` qualifies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub necessary_alpha: f64,
    pub sufficient_alpha: f64,
}

pub fn table_row(kind: FamilyKind) -> TableRow {
    let g = kind.ground_truth();
    TableRow { necessary_alpha: 1.0 + g.dim_s, sufficient_alpha: 1.0 + g.dim_em.as_f64() }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SufficientK {
    pub holds: bool,
    pub k: Option<u32>,
    pub integral: Option<f64>,
}

/// Looks for `K >= dim_EM + 1` with a finite tail integral. The integrand
/// `(1 - F)^(1/K)` grows with `K`, so only `K = dim_EM + 1` needs checking.
pub fn sufficient_via_k(dist: &ServiceDistribution, dim_em: EmDim) -> Result<SufficientK> {
    let EmDim::Finite(d) = dim_em else {
        return Ok(SufficientK { holds: false, k: None, integral: None });
    };
    let k = d + 1;
    Ok(match dist.tail_integral(k)? {
        TailIntegral::Finite(v) => SufficientK { holds: true, k: Some(k), integral: Some(v) },
        TailIntegral::Divergent => SufficientK { holds: false, k: None, integral: None },
    })
}

pub fn exponential_growth_verdict(kind: FamilyKind, indices: &[u32]) -> Result<bool> {
    Ok(scaling_dimension_estimate(kind, indices)?.exponential)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Decay,
    Plateau,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    /// Decay needs a log-log slope at most this.
    pub decay_slope: f64,
    /// Decay needs `θ_last / θ_first` at most this.
    pub decay_ratio: f64,
    /// Plateau needs `|slope|` below this.
    pub plateau_slope: f64,
    /// Plateau needs `θ_last / θ_first` at least this.
    pub plateau_ratio: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { decay_slope: -0.1, decay_ratio: 0.6, plateau_slope: 0.05, plateau_ratio: 0.7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EmpiricalVerdict {
    pub outcome: Trend,
    pub slope: f64,
    pub ratio: f64,
    pub thresholds: Thresholds,
}

/// Classifies a throughput curve given as `(index, θ)` pairs.
pub fn empirical_verdict(curve: &[(f64, f64)], thresholds: Thresholds) -> Result<EmpiricalVerdict> {
    if curve.len() < 4 {
        return Err(Error::Degenerate("an empirical verdict needs at least four indices".into()));
    }
    let slope = decay_exponent(curve)?;
    let ratio = curve[curve.len() - 1].1 / curve[0].1;
    let outcome = if slope <= thresholds.decay_slope && ratio <= thresholds.decay_ratio {
        Trend::Decay
    } else if slope.abs() < thresholds.plateau_slope && ratio >= thresholds.plateau_ratio {
        Trend::Plateau
    } else {
        Trend::Inconclusive
    };
    Ok(EmpiricalVerdict { outcome, slope, ratio, thresholds })
}
