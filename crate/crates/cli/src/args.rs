use clap::{Args, ValueEnum};
use fjqn::{Error, FamilyKind, Result, ServiceDistribution};

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Family name: tandem, series_parallel, tandem_component, ladder, lattice,
    /// hexagon, tetrahedron, sierpinski, binary_tree, cycle,
    /// complete_plus_tandem, tandem_plus_tree.
    #[arg(long)]
    pub family: String,
    /// Lattice dimension.
    #[arg(long)]
    pub d: Option<u32>,
    /// Clique size for complete_plus_tandem.
    #[arg(long)]
    pub clique: Option<u32>,
}

impl FamilyArgs {
    pub fn kind(&self) -> Result<FamilyKind> {
        parse_family(&self.family, self.d, self.clique)
    }
}

/// Accepts the display names (`lattice3`) as well as a bare `lattice` or
/// `complete_plus_tandem` with `--d` / `--clique`.
pub fn parse_family(name: &str, d: Option<u32>, clique: Option<u32>) -> Result<FamilyKind> {
    match name {
        "lattice" => Ok(FamilyKind::Lattice { d: d.unwrap_or(2) }),
        "complete_plus_tandem" => Ok(FamilyKind::CompletePlusTandem { clique: clique.unwrap_or(5) }),
        other => other.parse(),
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistKind {
    Pareto,
    Exponential,
    Deterministic,
    Uniform,
}

#[derive(Args, Debug, Clone)]
pub struct DistArgs {
    #[arg(long, value_enum, default_value = "pareto")]
    pub dist: DistKind,
    /// Pareto tail index.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub xmin: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rate: f64,
    #[arg(long, default_value_t = 1.0)]
    pub value: f64,
    /// Uniform lower end.
    #[arg(long, default_value_t = 0.0)]
    pub lo: f64,
    /// Uniform upper end.
    #[arg(long, default_value_t = 2.0)]
    pub hi: f64,
}

impl DistArgs {
    pub fn distribution(&self) -> Result<ServiceDistribution> {
        let dist = match self.dist {
            DistKind::Pareto => {
                let alpha = self
                    .alpha
                    .ok_or_else(|| Error::InvalidParameter("--alpha is required for a pareto law".into()))?;
                ServiceDistribution::Pareto { alpha, xmin: self.xmin }
            }
            DistKind::Exponential => ServiceDistribution::Exponential { rate: self.rate },
            DistKind::Deterministic => ServiceDistribution::Deterministic { value: self.value },
            DistKind::Uniform => ServiceDistribution::Uniform { a: self.lo, b: self.hi },
        };
        dist.validate()?;
        Ok(dist)
    }
}
