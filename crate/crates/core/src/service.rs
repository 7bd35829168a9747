//! Service-time laws and counter-based sampling.
//!
//! Every random service time is a pure function of a [`SampleKey`]: the key
//! is hashed to a uniform variate which is pushed through the quantile
//! function. The simulator and the percolation code therefore see exactly
//! the same weight field, and replications need no shared RNG state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Service-time distribution. Pareto uses the survival function
/// `(x_min / x)^alpha` for `x >= x_min`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ServiceDistribution {
    Pareto {
        alpha: f64,
        #[serde(default = "one")]
        xmin: f64,
    },
    Exponential { rate: f64 },
    Deterministic { value: f64 },
    Uniform { a: f64, b: f64 },
}

fn one() -> f64 {
    1.0
}

/// Identifies one i.i.d. draw: service `job` at `node` in `replication`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SampleKey {
    pub seed: u64,
    pub replication: u64,
    pub job: u64,
    pub node: u64,
}

/// Value of the integral `∫_0^∞ (1 - F(x))^{1/K} dx`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum TailIntegral {
    Finite(f64),
    Divergent,
}

impl TailIntegral {
    pub fn is_finite(self) -> bool {
        matches!(self, TailIntegral::Finite(_))
    }
}

impl ServiceDistribution {
    pub fn pareto(alpha: f64) -> Self {
        ServiceDistribution::Pareto { alpha, xmin: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ServiceDistribution::Pareto { alpha, xmin } => alpha > 1.0 && xmin > 0.0,
            ServiceDistribution::Exponential { rate } => rate > 0.0,
            ServiceDistribution::Deterministic { value } => value > 0.0,
            ServiceDistribution::Uniform { a, b } => a >= 0.0 && b > a,
        };
        if ok && self.params_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid service distribution {self:?}")))
        }
    }

    fn params_finite(&self) -> bool {
        match *self {
            ServiceDistribution::Pareto { alpha, xmin } => alpha.is_finite() && xmin.is_finite(),
            ServiceDistribution::Exponential { rate } => rate.is_finite(),
            ServiceDistribution::Deterministic { value } => value.is_finite(),
            ServiceDistribution::Uniform { a, b } => a.is_finite() && b.is_finite(),
        }
    }

    /// Inverse CDF on `(0, 1)`.
    #[inline]
    pub fn quantile(&self, u: f64) -> f64 {
        match *self {
            ServiceDistribution::Pareto { alpha, xmin } => xmin * (1.0 - u).powf(-1.0 / alpha),
            ServiceDistribution::Exponential { rate } => -(1.0 - u).ln() / rate,
            ServiceDistribution::Deterministic { value } => value,
            ServiceDistribution::Uniform { a, b } => a + (b - a) * u,
        }
    }

    /// The `x` with `1 - F(x) = s`, accurate for tiny `s`.
    pub fn quantile_upper(&self, s: f64) -> f64 {
        match *self {
            ServiceDistribution::Pareto { alpha, xmin } => xmin * s.powf(-1.0 / alpha),
            ServiceDistribution::Exponential { rate } => -s.ln() / rate,
            ServiceDistribution::Deterministic { value } => value,
            ServiceDistribution::Uniform { a, b } => b - (b - a) * s,
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            ServiceDistribution::Pareto { alpha, xmin } => {
                if x < xmin {
                    0.0
                } else {
                    1.0 - (xmin / x).powf(alpha)
                }
            }
            ServiceDistribution::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    1.0 - (-rate * x).exp()
                }
            }
            ServiceDistribution::Deterministic { value } => {
                if x < value {
                    0.0
                } else {
                    1.0
                }
            }
            ServiceDistribution::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            ServiceDistribution::Pareto { alpha, xmin } => alpha * xmin / (alpha - 1.0),
            ServiceDistribution::Exponential { rate } => 1.0 / rate,
            ServiceDistribution::Deterministic { value } => value,
            ServiceDistribution::Uniform { a, b } => 0.5 * (a + b),
        }
    }

    /// Tail index for regularly varying laws; `None` for light tails.
    pub fn rv_index(&self) -> Option<f64> {
        match *self {
            ServiceDistribution::Pareto { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    /// Closed form of `∫_0^∞ (1 - F(x))^{1/K} dx`.
    pub fn tail_integral(&self, k: u32) -> Result<TailIntegral> {
        if k == 0 {
            return Err(Error::InvalidParameter("K must be at least 1".into()));
        }
        let k = f64::from(k);
        Ok(match *self {
            ServiceDistribution::Pareto { alpha, xmin } => {
                if alpha <= k {
                    TailIntegral::Divergent
                } else {
                    TailIntegral::Finite(xmin + xmin * k / (alpha - k))
                }
            }
            ServiceDistribution::Exponential { rate } => TailIntegral::Finite(k / rate),
            ServiceDistribution::Deterministic { value } => TailIntegral::Finite(value),
            ServiceDistribution::Uniform { a, b } => TailIntegral::Finite(a + (b - a) * k / (k + 1.0)),
        })
    }

    #[inline]
    pub fn sample(&self, key: SampleKey) -> f64 {
        self.quantile(uniform(key))
    }

    /// Short label used in file names and CSV columns.
    pub fn label(&self) -> String {
        match *self {
            ServiceDistribution::Pareto { alpha, xmin } => format!("pareto({alpha},{xmin})"),
            ServiceDistribution::Exponential { rate } => format!("exponential({rate})"),
            ServiceDistribution::Deterministic { value } => format!("deterministic({value})"),
            ServiceDistribution::Uniform { a, b } => format!("uniform({a},{b})"),
        }
    }
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
const K_REP: u64 = 0xd1b5_4a32_d192_ed03;
const K_JOB: u64 = 0xaef1_7502_108e_f2d9;
const K_NODE: u64 = 0x8cb9_2ba7_2f3d_8dd7;

/// SplitMix64 finaliser.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
fn replication_state(seed: u64, replication: u64) -> u64 {
    mix64(mix64(seed ^ GOLDEN) ^ replication.wrapping_mul(K_REP))
}

#[inline]
fn job_state(rep_state: u64, job: u64) -> u64 {
    mix64(rep_state ^ job.wrapping_mul(K_JOB).wrapping_add(GOLDEN))
}

#[inline]
fn node_bits(job_state: u64, node: u64) -> u64 {
    mix64(job_state ^ node.wrapping_add(1).wrapping_mul(K_NODE))
}

/// 53-bit uniform strictly inside `(0, 1)`.
#[inline]
fn to_unit(bits: u64) -> f64 {
    ((bits >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Uniform variate for a key.
#[inline]
pub fn uniform(key: SampleKey) -> f64 {
    let rep = replication_state(key.seed, key.replication);
    to_unit(node_bits(job_state(rep, key.job), key.node))
}

/// Caches the per-replication and per-job hash prefixes while streaming
/// through `(job, node)` pairs. Produces the same values as [`uniform`].
#[derive(Clone, Copy, Debug)]
pub struct KeyStream {
    rep_state: u64,
    job_state: u64,
    job: u64,
}

impl KeyStream {
    pub fn new(seed: u64, replication: u64) -> Self {
        let rep_state = replication_state(seed, replication);
        KeyStream { rep_state, job_state: job_state(rep_state, 0), job: 0 }
    }

    #[inline]
    pub fn set_job(&mut self, job: u64) {
        if job != self.job {
            self.job = job;
            self.job_state = job_state(self.rep_state, job);
        }
    }

    #[inline]
    pub fn uniform(&self, node: u64) -> f64 {
        to_unit(node_bits(self.job_state, node))
    }
}

/// Derives an independent seed for a labelled sub-experiment.
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    mix64(seed.wrapping_add(GOLDEN) ^ mix64(label.wrapping_mul(K_JOB)))
}
