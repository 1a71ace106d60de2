use thiserror::Error;

/// Failure modes shared across the crate.
///
/// Variants carry the offending quantity so callers can report what broke,
/// not just that something did.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not Hermitian: largest conjugate-pair mismatch {0:.3e}")]
    NotHermitian(f64),

    #[error("trace differs from one by {0:.3e}")]
    TraceNotOne(f64),

    #[error("not positive semidefinite: smallest eigenvalue {0:.3e}")]
    NotPositiveSemidefinite(f64),

    #[error("entry ({row},{col}) breaks the X pattern: magnitude {magnitude:.3e}")]
    NotXShaped {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("negative probability {0:.3e}")]
    NegativeProbability(f64),

    #[error("probabilities sum to {0}, expected 1")]
    ProbabilitySumNotOne(f64),

    #[error("population {index} is negative: {value:.3e}")]
    NegativePopulation { index: usize, value: f64 },

    #[error("{label} coherence {value} exceeds its positivity bound {bound}")]
    CoherenceTooLarge {
        label: &'static str,
        value: f64,
        bound: f64,
    },

    #[error("{name} = {value} outside [{min}, {max}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("mixture weight {index} is negative: {value:.3e}")]
    NegativeWeight { index: usize, value: f64 },

    #[error("mixture weights sum to {0}, expected 1")]
    WeightSumNotOne(f64),

    #[error("coefficients sum to {sum}, declared total is {s}")]
    CoefficientSumMismatch { sum: f64, s: f64 },

    #[error("coefficient {index} = {value} outside [{lo}, {hi}]")]
    CoefficientOutOfRange {
        index: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("total {s} exceeds the mixedness bound {bound}")]
    MixednessBound { s: f64, bound: f64 },

    #[error("point ({x}, {y}) lies outside the rectangle [0, {x0}] x [0, {y0}]")]
    PointOutsideBounds { x: f64, y: f64, x0: f64, y0: f64 },

    #[error("coherences ({x}, {y}) sum to {sum}, above the triangle bound 1/2")]
    OutsideTriangle { x: f64, y: f64, sum: f64 },

    #[error("time grid needs finite start >= 0, end > start, step > 0 (got {start}, {end}, {step})")]
    BadTimeGrid { start: f64, end: f64, step: f64 },

    #[error("entropy trace has too little structure: {minima} strict interior minima")]
    EnvelopeDegenerate { minima: usize },

    #[error("trace carries no envelope; extract it first")]
    EnvelopeMissing,

    #[error("unsupported schema version {0}")]
    UnsupportedSchema(u64),

    #[error("unknown family \"{0}\"")]
    UnknownFamily(String),

    #[error("state document needs exactly one of \"matrix\" or \"family\"")]
    AmbiguousStateDoc,

    #[error("family \"{family}\" requires parameter \"{param}\"")]
    MissingParam {
        family: &'static str,
        param: &'static str,
    },

    #[error("bell index {0} outside 1..=4")]
    BadBellIndex(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
