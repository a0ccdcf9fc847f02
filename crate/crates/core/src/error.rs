use thiserror::Error;

/// Errors raised by hyperbolic-plane constructions and computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinates outside the domain of the {model} model: {detail}")]
    OutOfDomain { model: &'static str, detail: String },

    #[error("not a point of the hyperboloid sheet: {0}")]
    InvalidPoint(String),

    #[error("not a unit spacelike line normal: {0}")]
    InvalidLine(String),

    #[error("points coincide (distance {0:e})")]
    CoincidentPoints(f64),

    #[error("lines do not meet in the hyperbolic plane")]
    NoIntersection,

    #[error("degenerate triangle (area {0:e})")]
    DegenerateTriangle(f64),

    #[error("point lies {0:e} away from its side geodesic")]
    FootOffLine(f64),

    #[error("a side ratio is zero or infinite: {0}")]
    DegenerateRatio(String),

    #[error("point-mass weight must be positive and finite, got {0}")]
    NonPositiveWeight(f64),

    #[error("point-mass system is empty")]
    EmptySystem,

    #[error("equal weights have no finite external centroid")]
    EqualWeights,

    #[error("no finite external centroid: weight ratio {ratio} does not exceed e^d with d = {distance}")]
    NoExternalCentroid { ratio: f64, distance: f64 },

    #[error("lever force magnitude must be positive and finite, got {0}")]
    InvalidForce(f64),

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("regular polygon with {sides} sides and in-radius {inradius} has no vertices")]
    InvalidPolygon { sides: u32, inradius: f64 },

    #[error("invalid wedge: {0}")]
    InvalidWedge(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),

    #[error("quadrature did not converge: estimated error {error:e} exceeds {target:e} after {panels} panels")]
    QuadratureNotConverged { error: f64, target: f64, panels: usize },

    #[error("centroid balance check failed: relative moment {residual:e} about direction {direction}")]
    BalanceCheckFailed { residual: f64, direction: usize },

    #[error("mesh too fine: more than {cap} cells")]
    MeshTooFine { cap: usize },

    #[error("bad decomposition: {0}")]
    BadDecomposition(String),

    #[error("invalid linear set: {0}")]
    InvalidLinearSet(String),

    #[error("slice extraction failed: {0}")]
    SliceExtractionFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
