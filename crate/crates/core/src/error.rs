//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the simulator and optimizer.
#[derive(Debug, Error)]
pub enum Error {
    /// Configuration violates a structural invariant.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Configuration file could not be parsed.
    #[error("config parse error: {0}")]
    ConfigParse(String),

    /// A state or geometry that the evolution model cannot handle.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// Velocity conversion undefined because the target moves tangentially.
    #[error("geometric singularity: {0}")]
    GeometricSingularity(String),

    /// A matrix that must be invertible is (numerically) singular.
    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    /// An optimization subproblem has no feasible point.
    #[error("infeasible: {0}")]
    Infeasible(Infeasibility),

    /// An iterative solver failed to converge.
    #[error("solver failure: {0}")]
    SolverFailure(String),

    /// A function argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Problem constraints, named after their role in the allocation problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ConstraintId {
    /// C1: per-target angle tracking precision.
    AngleTracking,
    /// C2: per-target distance tracking precision.
    DistanceTracking,
    /// C3: per-target velocity tracking precision.
    VelocityTracking,
    /// C4: per-user minimum rate.
    MinRate,
    /// C5: training power budget.
    TrainingPowerBudget,
    /// C6: per-block data power budget.
    DataPowerBudget,
    /// C7: subcarrier budget.
    BandwidthBudget,
    /// C10: integer subcarrier counts.
    SubcarrierIntegrality,
}

impl std::fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConstraintId::AngleTracking => "angle tracking (C1)",
            ConstraintId::DistanceTracking => "distance tracking (C2)",
            ConstraintId::VelocityTracking => "velocity tracking (C3)",
            ConstraintId::MinRate => "minimum rate (C4)",
            ConstraintId::TrainingPowerBudget => "training power budget (C5)",
            ConstraintId::DataPowerBudget => "data power budget (C6)",
            ConstraintId::BandwidthBudget => "subcarrier budget (C7)",
            ConstraintId::SubcarrierIntegrality => "integer subcarriers (C10)",
        };
        f.write_str(s)
    }
}

/// Structured infeasibility report: which constraint failed, for whom, and when.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Infeasibility {
    pub constraint: ConstraintId,
    /// Target index (1-based, as in band numbering), when target-specific.
    pub target: Option<usize>,
    /// User index (0-based), when user-specific.
    pub user: Option<usize>,
    /// Block index (1-based), when block-specific.
    pub block: Option<usize>,
    pub detail: String,
}

impl Infeasibility {
    pub fn new(constraint: ConstraintId, detail: impl Into<String>) -> Self {
        Self {
            constraint,
            target: None,
            user: None,
            block: None,
            detail: detail.into(),
        }
    }

    pub fn with_target(mut self, k: usize) -> Self {
        self.target = Some(k);
        self
    }

    pub fn with_user(mut self, q: usize) -> Self {
        self.user = Some(q);
        self
    }

    pub fn with_block(mut self, n: usize) -> Self {
        self.block = Some(n);
        self
    }
}

impl std::fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.constraint)?;
        if let Some(k) = self.target {
            write!(f, ", target {k}")?;
        }
        if let Some(q) = self.user {
            write!(f, ", user {q}")?;
        }
        if let Some(n) = self.block {
            write!(f, ", block {n}")?;
        }
        write!(f, ": {}", self.detail)
    }
}
