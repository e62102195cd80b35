use thiserror::Error;

/// Errors produced across the crate.
///
/// The CLI maps [`Error::exit_code`] onto process exit codes: validation
/// failures exit with 2, numerical failures with 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid point: y = {0} must be > 0")]
    InvalidPoint(f64),
    #[error("determinant of ({a},{b};{c},{d}) is not 1")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64 },
    #[error("integer overflow while {0}")]
    IntegerOverflow(&'static str),
    #[error("radius {s} exceeds the configured maximum {max}")]
    RadiusTooLarge { s: f64, max: f64 },
    #[error("negative radius {0}")]
    NegativeRadius(f64),
    #[error("ball contains {count} points, above the memory budget of {budget}")]
    MemoryBudgetExceeded { count: u64, budget: u64 },
    #[error("entry bound {given} is insufficient, at least {required} is needed")]
    BoundInsufficient { given: u64, required: u64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument {0} too close to a pole")]
    PoleProximity(String),
    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),
    #[error("numerical method did not converge: {0}")]
    NonConvergence(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation error on line {line}, field `{field}`: {msg}")]
    Validation { line: usize, field: String, msg: String },
    #[error("form at t = {t} needs {required} coefficients, only {available} available")]
    InsufficientCoefficients { t: f64, required: usize, available: usize },
    #[error("window [{lo}, {hi}] is not covered by the series range [{start}, {end}]")]
    WindowOutOfRange { lo: f64, hi: f64, start: f64, end: f64 },
    #[error("schedule violates the hybrid-limit condition at T = {t}: value {value} > bound {bound}")]
    ScheduleViolation { t: f64, value: f64, bound: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence(_) | Error::PoleProximity(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
