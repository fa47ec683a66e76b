use thiserror::Error;

/// Failures raised by the library; each variant names the violated precondition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be strictly positive (got {value})")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("gauge function term has non-integer angular frequency {0}; it would be multivalued")]
    NonIntegerWinding(f64),
    #[error("loop is not closed on the cylinder: {0}")]
    OpenLoop(String),
    #[error("loop suite has no winding loop; contractible loops cannot resolve the gauge class")]
    InsufficientLoopSuite,
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("shift by {shift} leaves the index window [-{cutoff}, {cutoff}]")]
    WindowOverflow { shift: i64, cutoff: i64 },
    #[error("shift by {shift} pushes {lost_fraction:e} of the state's norm off the grid")]
    GridOverflow { shift: f64, lost_fraction: f64 },
    #[error("grid needs at least {min} points (got {got})")]
    TooFewPoints { got: usize, min: usize },
    #[error("incompatible states: {0}")]
    IncompatibleStates(String),
    #[error("y = {y} lies outside the grid [{y_min}, {y_max}]")]
    OutOfGrid { y: f64, y_min: f64, y_max: f64 },
    #[error("cannot normalize the zero state")]
    ZeroState,
    #[error("grid [{y_min}, {y_max}] does not cover the required interval [{need_min}, {need_max}]")]
    GridTooNarrow {
        y_min: f64,
        y_max: f64,
        need_min: f64,
        need_max: f64,
    },
    #[error("eigensolver failed to converge: {0}")]
    ConvergenceFailure(String),
    #[error("axial translation by a = {length} has a*mu = {a_mu}, not an integer")]
    NonAdmissibleTranslation { length: f64, a_mu: f64 },
    #[error("mode window of {got} modes is smaller than the required {min}")]
    WindowTooSmall { got: usize, min: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
