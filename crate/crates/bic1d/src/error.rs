use thiserror::Error;

/// Errors surfaced by any computation in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma pole at non-positive integer {0}")]
    GammaPole(f64),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("order {nu} is within {band:e} of an integer; nudge the order before calling")]
    NearIntegerOrder { nu: f64, band: f64 },

    #[error("series failed to converge after {terms} terms (abs_err so far {abs_err:e})")]
    NonConvergence { terms: usize, abs_err: f64 },

    #[error("accuracy loss: estimated error {abs_err:e} exceeds tolerance {tol:e}")]
    AccuracyLoss { abs_err: f64, tol: f64 },

    #[error("parameter must be positive: {0}")]
    NonPositiveParameter(String),

    #[error("kappa*a = {kappa_a} is within the integer guard band; the Eq.-style parity states vanish there")]
    IntegerKappaA { kappa_a: f64 },

    #[error("E = {energy} is not an eigenvalue: condition residual {residual:e} exceeds {tol:e}")]
    NotAnEigenvalue {
        energy: f64,
        residual: f64,
        tol: f64,
    },

    #[error("closed-form norm requires r > 0, got r = {0}")]
    NonPositiveR(f64),

    #[error("bracket refinement failed on [{lo}, {hi}]")]
    BracketRefinement { lo: f64, hi: f64 },

    #[error("ill-conditioned linear system: |det| = {det:e}")]
    IllConditioned { det: f64 },

    #[error("step refinement would need more than {0} points")]
    StepUnderflow(usize),

    #[error("only {found} extrema in range; need at least {needed}")]
    InsufficientExtrema { found: usize, needed: usize },

    #[error("tail estimate unreliable: tail fraction {0:.3} exceeds 10%")]
    TailUnreliable(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
