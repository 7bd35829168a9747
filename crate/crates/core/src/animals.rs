//! Extreme-value scaling, greedy lattice animals and the embedding of
//! precedence paths into `Z^(K+1)`.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::dimensions::{extended_representations, ExtendedResolvingSet};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::percolation::{arcs_out, ArcType, PathResult};
use crate::service::{mix64, uniform, KeyStream, SampleKey, ServiceDistribution, TailIntegral};
use crate::stats::{mean, std_error};

/// Animals enumerated by [`exact_max_animal`] before giving up.
pub const ANIMAL_BUDGET: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaxScalingReport {
    pub n: u64,
    pub alpha: f64,
    pub replications: u32,
    /// Monte-Carlo `E[M_n] / n^(1/α)`.
    pub mean_scaled_max: f64,
    pub std_error: f64,
    /// Exact `E[M_n] / n^(1/α)` from the order-statistics formula.
    pub exact_scaled_max: f64,
    /// `Γ(1 - 1/α)`, the Fréchet mean.
    pub limit: f64,
}

/// `E[max of n Pareto(α, 1)] = Γ(n+1) Γ(1-1/α) / Γ(n+1-1/α)`.
pub fn expected_pareto_max(alpha: f64, n: u64) -> f64 {
    let n = n as f64;
    (ln_gamma(n + 1.0) + ln_gamma(1.0 - 1.0 / alpha) - ln_gamma(n + 1.0 - 1.0 / alpha)).exp()
}

/// Monte-Carlo mean of the scaled maximum of `n` Pareto(α, 1) draws.
///
/// Each replication takes the maximum of `n` uniforms and maps it through
/// the quantile once; the quantile is monotone, so this is the maximum of
/// the Pareto draws themselves.
pub fn evt_max_scaling(alpha: f64, n: u64, replications: u32, seed: u64) -> Result<MaxScalingReport> {
    if !(alpha > 1.0) {
        return Err(Error::InvalidParameter("α must exceed 1 for the Fréchet mean to exist".into()));
    }
    if n == 0 || replications == 0 {
        return Err(Error::InvalidParameter("n and the replication count must be positive".into()));
    }
    let dist = ServiceDistribution::pareto(alpha);
    let one = |r: u32| {
        let keys = KeyStream::new(seed, u64::from(r));
        let u = (0..n).map(|j| keys.uniform(j)).fold(0.0f64, f64::max);
        dist.quantile(u)
    };
    #[cfg(feature = "parallel")]
    let maxima: Vec<f64> = (0..replications).into_par_iter().map(one).collect();
    #[cfg(not(feature = "parallel"))]
    let maxima: Vec<f64> = (0..replications).map(one).collect();
    let scale = (n as f64).powf(1.0 / alpha);
    Ok(MaxScalingReport {
        n,
        alpha,
        replications,
        mean_scaled_max: mean(&maxima) / scale,
        std_error: std_error(&maxima) / scale,
        exact_scaled_max: expected_pareto_max(alpha, n) / scale,
        limit: ln_gamma(1.0 - 1.0 / alpha).exp(),
    })
}

/// Fréchet distribution function `exp(-x^(-α))` for `x > 0`.
pub fn frechet_cdf(alpha: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-x.powf(-alpha)).exp()
    }
}

/// A lattice point is keyed by a hash of all but its last coordinate (the
/// job) and its last coordinate (the node), so a scan along the last axis
/// reuses one job hash.
fn row_job(prefix: &[i64]) -> u64 {
    prefix.iter().fold(0x5bd1_e995u64 ^ prefix.len() as u64, |h, &x| mix64(h ^ x as u64))
}

fn point_key(seed: u64, replication: u64, point: &[i64]) -> SampleKey {
    let (last, prefix) = point.split_last().expect("K >= 1");
    SampleKey { seed, replication, job: row_job(prefix), node: *last as u64 }
}

/// Weight of a lattice point in one replication of the field.
pub fn point_weight(dist: &ServiceDistribution, seed: u64, replication: u64, point: &[i64]) -> f64 {
    dist.quantile(uniform(point_key(seed, replication, point)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeAnimal {
    pub points: Vec<Vec<i64>>,
    pub weight: f64,
}

fn neighbours(p: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    (0..p.len()).flat_map(move |axis| {
        [-1, 1].into_iter().map(move |step| {
            let mut q = p.to_vec();
            q[axis] += step;
            q
        })
    })
}

/// Frontier entry: heaviest first, then smallest point.
struct Candidate {
    weight: f64,
    point: Vec<i64>,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.total_cmp(&other.weight).then_with(|| other.point.cmp(&self.point))
    }
}

/// Grows an animal of `n` points from the origin, always adding the
/// heaviest point adjacent to it.
pub fn greedy_animal(k: usize, n: usize, weight: impl Fn(&[i64]) -> f64) -> Result<LatticeAnimal> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("K and n must be positive".into()));
    }
    Ok(grow_greedy(vec![vec![0i64; k]], n, weight))
}

/// Greedy growth from a connected seed that already contains the origin.
fn grow_greedy(seed: Vec<Vec<i64>>, n: usize, weight: impl Fn(&[i64]) -> f64) -> LatticeAnimal {
    let mut seen: HashSet<Vec<i64>> = seed.iter().cloned().collect();
    let mut frontier = BinaryHeap::new();
    let mut pending: Vec<Candidate> = seed.into_iter().map(|p| Candidate { weight: weight(&p), point: p }).collect();
    let mut points = Vec::with_capacity(n.max(pending.len()));
    let mut total = 0.0;
    pending.reverse();
    loop {
        // Seed points are taken in order before the frontier is consulted.
        let next = match pending.pop() {
            Some(c) => c,
            None if points.len() < n => frontier.pop().expect("the lattice is infinite"),
            None => break,
        };
        for q in neighbours(&next.point) {
            if seen.insert(q.clone()) {
                frontier.push(Candidate { weight: weight(&q), point: q });
            }
        }
        total += next.weight;
        points.push(next.point);
    }
    LatticeAnimal { points, weight: total }
}

/// Points of the `L1` ball scanned by [`targeted_animal`] before it falls
/// back to plain greedy growth.
pub const TARGET_SCAN_BUDGET: u64 = 500_000_000;

fn l1_ball_size(k: usize, r: u64) -> u64 {
    // Σ_j 2^j C(k, j) C(r, j)
    let mut total = 0u64;
    let (mut ck, mut cr) = (1u64, 1u64);
    for j in 0..=k as u64 {
        if j > r {
            break;
        }
        total = total.saturating_add((1u64 << j).saturating_mul(ck).saturating_mul(cr));
        ck = ck * (k as u64 - j) / (j + 1);
        cr = cr.saturating_mul(r - j) / (j + 1);
    }
    total
}

/// Heaviest point of the `L1` ball of radius `r`, by scanning uniforms.
fn heaviest_in_ball(k: usize, r: i64, seed: u64, replication: u64) -> Vec<i64> {
    fn scan(p: &mut Vec<i64>, axis: usize, budget: i64, best: &mut (f64, Vec<i64>), keys: &mut KeyStream) {
        if axis + 1 == p.len() {
            keys.set_job(row_job(&p[..axis]));
            for x in -budget..=budget {
                let u = keys.uniform(x as u64);
                if u > best.0 {
                    p[axis] = x;
                    *best = (u, p.clone());
                }
            }
            p[axis] = 0;
            return;
        }
        for x in -budget..=budget {
            p[axis] = x;
            scan(p, axis + 1, budget - x.abs(), best, keys);
        }
        p[axis] = 0;
    }
    let mut keys = KeyStream::new(seed, replication);
    let mut best = (0.0, vec![0i64; k]);
    scan(&mut vec![0i64; k], 0, r, &mut best, &mut keys);
    best.1
}

/// Lower bound that reaches for the heaviest point within `L1` distance
/// `n - 1`: a staircase path to it, then greedy growth to `n` points, and
/// the better of that and [`greedy_animal`].
pub fn targeted_animal(
    k: usize,
    n: usize,
    dist: &ServiceDistribution,
    seed: u64,
    replication: u64,
) -> Result<LatticeAnimal> {
    let weight = |p: &[i64]| point_weight(dist, seed, replication, p);
    let greedy = greedy_animal(k, n, weight)?;
    let r = n as u64 - 1;
    if r == 0 || l1_ball_size(k, r) > TARGET_SCAN_BUDGET {
        return Ok(greedy);
    }
    let target = heaviest_in_ball(k, r as i64, seed, replication);
    let mut path = vec![vec![0i64; k]];
    let mut cur = vec![0i64; k];
    for axis in 0..k {
        while cur[axis] != target[axis] {
            cur[axis] += target[axis].signum();
            path.push(cur.clone());
        }
    }
    let reached = grow_greedy(path, n, weight);
    Ok(if reached.weight > greedy.weight { reached } else { greedy })
}

/// Exact maximum weight over all animals of `n` points containing the
/// origin, by level-wise extension with deduplication of sorted point sets.
pub fn exact_max_animal(k: usize, n: usize, weight: impl Fn(&[i64]) -> f64) -> Result<LatticeAnimal> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("K and n must be positive".into()));
    }
    let mut cache: HashMap<Vec<i64>, f64> = HashMap::new();
    let mut w = |p: &[i64]| *cache.entry(p.to_vec()).or_insert_with(|| weight(p));
    let mut level: HashSet<Vec<Vec<i64>>> = HashSet::from([vec![vec![0i64; k]]]);
    let mut explored = 1usize;
    for _ in 1..n {
        let mut next = HashSet::new();
        for animal in &level {
            for p in animal {
                for q in neighbours(p) {
                    if animal.binary_search(&q).is_err() {
                        let mut grown = animal.clone();
                        let at = grown.binary_search(&q).unwrap_err();
                        grown.insert(at, q);
                        next.insert(grown);
                    }
                }
            }
        }
        explored += next.len();
        if explored > ANIMAL_BUDGET {
            return Err(Error::BudgetExceeded(format!("more than {ANIMAL_BUDGET} animals")));
        }
        level = next;
    }
    let mut best: Option<LatticeAnimal> = None;
    let mut animals: Vec<Vec<Vec<i64>>> = level.into_iter().collect();
    animals.sort();
    for points in animals {
        let total: f64 = points.iter().map(|p| w(p)).sum();
        if best.as_ref().map_or(true, |b| total > b.weight) {
            best = Some(LatticeAnimal { points, weight: total });
        }
    }
    Ok(best.expect("at least one animal"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthPoint {
    pub n: usize,
    /// Mean greedy-animal weight per site.
    pub mean: f64,
    pub std_error: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnimalStrategy {
    Greedy,
    Targeted,
}

/// Animal weight per site for each size, averaged over replications.
pub fn animal_growth_rate(
    k: usize,
    sizes: &[usize],
    dist: &ServiceDistribution,
    replications: u32,
    seed: u64,
    strategy: AnimalStrategy,
) -> Result<Vec<GrowthPoint>> {
    dist.validate()?;
    if replications == 0 {
        return Err(Error::InvalidParameter("at least one replication is required".into()));
    }
    sizes
        .iter()
        .map(|&n| {
            let per_site = (0..replications)
                .map(|r| {
                    let a = match strategy {
                        AnimalStrategy::Greedy => greedy_animal(k, n, |p| point_weight(dist, seed, u64::from(r), p))?,
                        AnimalStrategy::Targeted => targeted_animal(k, n, dist, seed, u64::from(r))?,
                    };
                    Ok(a.weight / n as f64)
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(GrowthPoint { n, mean: mean(&per_site), std_error: std_error(&per_site) })
        })
        .collect()
}

/// `∫ (1 - F_Λ(x))^(1/K) dx` for the `Λ`-fold sum of service times, from the
/// empirical survival function of `samples` simulated sums, next to the
/// bound `Λ^(1 + 1/K) ∫ (1 - F(x))^(1/K) dx` implied by
/// `P(X_1 + ... + X_Λ > x) <= Λ P(X > x / Λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvolutionTail {
    pub estimate: f64,
    pub bound: TailIntegral,
}

pub fn convolution_tail_integral(
    dist: &ServiceDistribution,
    lambda: u32,
    k: u32,
    samples: u32,
    seed: u64,
) -> Result<ConvolutionTail> {
    if lambda == 0 || samples == 0 {
        return Err(Error::InvalidParameter("Λ and the sample count must be positive".into()));
    }
    let bound = match dist.tail_integral(k)? {
        TailIntegral::Finite(v) => TailIntegral::Finite(f64::from(lambda).powf(1.0 + 1.0 / f64::from(k)) * v),
        TailIntegral::Divergent => TailIntegral::Divergent,
    };
    let mut sums: Vec<f64> = (0..u64::from(samples))
        .map(|s| {
            let keys = KeyStream::new(seed, s);
            (0..u64::from(lambda)).map(|j| dist.quantile(keys.uniform(j))).sum()
        })
        .collect();
    sums.sort_by(f64::total_cmp);
    let n = sums.len() as f64;
    let inv_k = 1.0 / f64::from(k);
    // Survival is 1 below the smallest sum and (n-j-1)/n between order
    // statistics j and j+1.
    let mut estimate = sums[0];
    for (j, gap) in sums.windows(2).map(|w| w[1] - w[0]).enumerate() {
        estimate += gap * ((n - j as f64 - 1.0) / n).powf(inv_k);
    }
    Ok(ConvolutionTail { estimate, bound })
}

/// Outcome of mapping a precedence path into `Z^(K+1)` through
/// `(m, v) -> (m, r(v) - r(v_end))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbedCheck {
    pub ok: bool,
    /// Largest number of path nodes sent to one lattice point.
    pub multiplicity: usize,
    pub lambda: usize,
    pub violations: Vec<String>,
}

pub fn embed_check(net: &Network, ers: &ExtendedResolvingSet, path: &PathResult) -> Result<EmbedCheck> {
    let rows = extended_representations(net, &ers.subsets)?;
    let lambda = rows.iter().fold(HashMap::<&[usize], usize>::new(), |mut acc, r| {
        *acc.entry(r.as_slice()).or_default() += 1;
        acc
    });
    let lambda = lambda.values().copied().max().unwrap_or(0);
    if lambda != ers.lambda {
        return Err(Error::InvalidParameter(format!(
            "extended resolving set claims Λ = {} but its classes reach {lambda}",
            ers.lambda
        )));
    }
    let Some(end) = path.nodes.last() else {
        return Ok(EmbedCheck { ok: true, multiplicity: 0, lambda, violations: vec![] });
    };
    let base = &rows[end.v];
    let image = |v: usize| -> Vec<i64> { rows[v].iter().zip(base).map(|(&a, &b)| a as i64 - b as i64).collect() };
    let sup = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).max().unwrap_or(0);
    let b = u64::from(net.buffer_size());
    let mut violations = Vec::new();
    for pair in path.nodes.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        let Some(&(_, kind)) = arcs_out(net, p).iter().find(|(s, _)| *s == q) else {
            violations.push(format!("({},{}) -> ({},{}) is not an arc", p.m, p.v, q.m, q.v));
            continue;
        };
        let (ip, iq) = (image(p.v), image(q.v));
        let legal = match kind {
            ArcType::I => p.m == q.m && sup(&ip, &iq) <= 1,
            ArcType::II => p.m == q.m + 1 && ip == iq,
            ArcType::III => p.m == q.m + b && sup(&ip, &iq) <= 1,
        };
        if !legal {
            violations.push(format!("{kind:?} arc ({},{}) -> ({},{}) maps too far", p.m, p.v, q.m, q.v));
        }
    }
    let mut hits: HashMap<(u64, Vec<i64>), usize> = HashMap::new();
    for p in &path.nodes {
        *hits.entry((p.m, image(p.v))).or_default() += 1;
    }
    let multiplicity = hits.values().copied().max().unwrap_or(0);
    if multiplicity > lambda {
        violations.push(format!("a lattice point is hit {multiplicity} times, above Λ = {lambda}"));
    }
    Ok(EmbedCheck { ok: violations.is_empty(), multiplicity, lambda, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimensions::family_extended_resolving;
    use crate::families::{generate, FamilyKind, FamilySpec};
    use crate::percolation::extract_max_path;

    #[test]
    fn frechet_examples() {
        assert_eq!(frechet_cdf(2.0, 0.0), 0.0);
        assert!((frechet_cdf(3.0, 1.0) - (-1f64).exp()).abs() < 1e-15);
        assert!(frechet_cdf(2.0, 1e6) > 1.0 - 1e-11);
        let median = (1.0 / 2f64.ln()).sqrt();
        assert!((frechet_cdf(2.0, median) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pareto_max_formula() {
        assert!((expected_pareto_max(3.0, 1) - 1.5).abs() < 1e-12);
        assert!((expected_pareto_max(2.0, 1) - 2.0).abs() < 1e-12);
        let scaled: Vec<f64> = [10u64, 100, 1000, 10_000]
            .iter()
            .map(|&n| expected_pareto_max(2.0, n) / (n as f64).sqrt())
            .collect();
        // Approaches the Fréchet mean from above.
        assert!(scaled.windows(2).all(|w| w[0] > w[1]));
        assert!(scaled[3] > std::f64::consts::PI.sqrt());
        assert!(scaled[3] / std::f64::consts::PI.sqrt() - 1.0 < 1e-4);
    }

    #[test]
    fn evt_small_run() {
        let r = evt_max_scaling(3.0, 1000, 2000, 4).unwrap();
        assert!((r.mean_scaled_max / r.exact_scaled_max - 1.0).abs() < 0.05, "{r:?}");
        assert!(evt_max_scaling(1.0, 10, 10, 0).is_err());
    }

    #[test]
    fn greedy_examples() {
        let det = |_: &[i64]| 1.0;
        let a = greedy_animal(2, 7, det).unwrap();
        assert_eq!(a.weight, 7.0);
        let pareto = ServiceDistribution::pareto(2.0);
        let w = |p: &[i64]| point_weight(&pareto, 3, 0, p);
        let one = greedy_animal(3, 1, w).unwrap();
        assert_eq!(one.points, vec![vec![0, 0, 0]]);
        assert_eq!(one.weight, w(&[0, 0, 0]));
    }

    #[test]
    fn exact_examples() {
        let pareto = ServiceDistribution::pareto(2.0);
        let w = |p: &[i64]| point_weight(&pareto, 5, 1, p);
        assert_eq!(exact_max_animal(2, 1, w).unwrap().weight, w(&[0, 0]));
        let two = exact_max_animal(1, 2, w).unwrap().weight;
        assert_eq!(two, w(&[0]) + w(&[-1]).max(w(&[1])));
    }

    /// All subsets of the box [-3, 3]^2 with four points containing the
    /// origin, kept when connected.
    fn brute_force_four(w: impl Fn(&[i64]) -> f64) -> f64 {
        let cells: Vec<Vec<i64>> = (-3..=3)
            .flat_map(|x| (-3..=3).map(move |y| vec![x, y]))
            .filter(|p| p != &vec![0, 0])
            .collect();
        let connected = |set: &[Vec<i64>]| {
            let mut seen = vec![false; set.len()];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..set.len() {
                    let d: i64 = set[i].iter().zip(&set[j]).map(|(a, b)| (a - b).abs()).sum();
                    if !seen[j] && d == 1 {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        let mut best = f64::NEG_INFINITY;
        for a in 0..cells.len() {
            for b in a + 1..cells.len() {
                for c in b + 1..cells.len() {
                    let set = vec![vec![0, 0], cells[a].clone(), cells[b].clone(), cells[c].clone()];
                    if connected(&set) {
                        best = best.max(set.iter().map(|p| w(p)).sum());
                    }
                }
            }
        }
        best
    }

    #[test]
    fn exact_matches_brute_force() {
        let pareto = ServiceDistribution::pareto(1.5);
        for seed in 0..5 {
            let w = |p: &[i64]| point_weight(&pareto, seed, 0, p);
            let exact = exact_max_animal(2, 4, w).unwrap().weight;
            assert!((exact - brute_force_four(w)).abs() < 1e-9);
            assert!(greedy_animal(2, 4, w).unwrap().weight <= exact + 1e-9);
        }
    }

    #[test]
    fn growth_deterministic() {
        let det = ServiceDistribution::Deterministic { value: 1.0 };
        for strategy in [AnimalStrategy::Greedy, AnimalStrategy::Targeted] {
            let g = animal_growth_rate(2, &[1, 10, 50], &det, 2, 0, strategy).unwrap();
            assert!(g.iter().all(|p| p.mean == 1.0));
        }
    }

    #[test]
    fn targeted_is_a_valid_animal_below_the_exact_maximum() {
        let pareto = ServiceDistribution::pareto(1.5);
        for seed in 0..5 {
            let w = |p: &[i64]| point_weight(&pareto, seed, 0, p);
            let t = targeted_animal(2, 7, &pareto, seed, 0).unwrap();
            assert_eq!(t.points.len(), 7);
            assert!(t.points.contains(&vec![0, 0]));
            let set: HashSet<&Vec<i64>> = t.points.iter().collect();
            assert_eq!(set.len(), 7);
            assert!(t.points.iter().skip(1).all(|p| neighbours(p).any(|q| set.contains(&q))));
            assert!((t.points.iter().map(|p| w(p)).sum::<f64>() - t.weight).abs() < 1e-9);
            assert!(t.weight >= greedy_animal(2, 7, w).unwrap().weight);
            assert!(t.weight <= exact_max_animal(2, 7, w).unwrap().weight + 1e-9);
        }
    }

    #[test]
    fn ball_scan_finds_the_heaviest_point() {
        let pareto = ServiceDistribution::pareto(2.0);
        let best = heaviest_in_ball(2, 4, 9, 1);
        let w = |p: &[i64]| point_weight(&pareto, 9, 1, p);
        for x in -4i64..=4 {
            for y in -(4 - x.abs())..=(4 - x.abs()) {
                assert!(w(&[x, y]) <= w(&best));
            }
        }
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(l1_ball_size(2, 3), 25);
        assert_eq!(l1_ball_size(1, 4), 9);
        assert_eq!(l1_ball_size(3, 1), 7);
    }

    #[test]
    fn convolution_tail() {
        let c = convolution_tail_integral(&ServiceDistribution::pareto(3.0), 2, 1, 200_000, 8).unwrap();
        // K = 1: the integral is the mean of the sum, 2 * 1.5.
        assert!((c.estimate - 3.0).abs() < 0.05, "{c:?}");
        assert!(matches!(c.bound, TailIntegral::Finite(b) if c.estimate <= b));
    }

    #[test]
    fn embedding_on_small_families() {
        let dist = ServiceDistribution::pareto(2.5);
        for (kind, i) in [(FamilyKind::Tandem, 6), (FamilyKind::Ladder, 4), (FamilyKind::Lattice { d: 2 }, 3)] {
            let net = generate(FamilySpec::new(kind, i)).unwrap();
            let ers = family_extended_resolving(kind, i).unwrap();
            let sink = net.num_nodes() - 1;
            let path = extract_max_path(&net, &dist, 12, sink, 2, 0).unwrap();
            let check = embed_check(&net, &ers, &path).unwrap();
            assert!(check.ok, "{kind}: {:?}", check.violations);
        }
        let single = Network::new("s", 1, vec![], 1).unwrap();
        let ers = ExtendedResolvingSet::certify(&single, vec![vec![0]]).unwrap();
        let path = extract_max_path(&single, &dist, 5, 0, 0, 0).unwrap();
        assert!(embed_check(&single, &ers, &path).unwrap().ok);
        let bad = ExtendedResolvingSet { subsets: vec![vec![0]], lambda: 3 };
        assert!(embed_check(&single, &bad, &path).is_err());
    }
}
