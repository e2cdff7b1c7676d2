use thiserror::Error;

/// Errors produced by the geometry pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sample count {got} is too small (need at least {min})")]
    SampleCountTooSmall { got: usize, min: usize },

    #[error("degenerate parameter interval [{start}, {end}]")]
    DegenerateInterval { start: f64, end: f64 },

    #[error("derivative order {0} is not supported (expected 1, 2 or 3)")]
    UnsupportedOrder(usize),

    #[error("curve is not regular at t = {t}: speed {speed:e} is below {threshold:e}")]
    IrregularCurve { t: f64, speed: f64, threshold: f64 },

    #[error("curve is not unit speed: max |speed - 1| = {max_deviation:e} exceeds {tolerance:e}")]
    NotUnitSpeed { max_deviation: f64, tolerance: f64 },

    #[error("curvature vanishes at s = {s}: kappa = {kappa:e} is below {floor:e}")]
    VanishingCurvature { s: f64, kappa: f64, floor: f64 },

    #[error("Smarandache curve is stationary{}: speed {speed:e}", at_s(*.s))]
    DegenerateSpeed { s: Option<f64>, speed: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("curvature sphere discriminant is negative ({discriminant:e})")]
    DiscriminantNegative { discriminant: f64 },

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("sphere radius {radius} is below the admissible minimum {min_radius}")]
    SphereTooSmall { radius: f64, min_radius: f64 },

    #[error("degenerate frame: {0}")]
    DegenerateFrame(&'static str),

    #[error("osculating sphere undefined: |k1 k2' - k1' k2| = {wronskian:e} is below {threshold:e}")]
    OsculatingUndefined { wronskian: f64, threshold: f64 },

    #[error("index {index} outside the retained range {lo}..{hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("Salkowski parameter m = {m} makes 1 - 2n vanish (n = {n})")]
    ParamDegenerate { m: f64, n: f64 },

    #[error("arc length {s} outside the admissible interval [{lo}, {hi}]")]
    OutOfDomain { s: f64, lo: f64, hi: f64 },

    #[error("{name} must be positive, got {value}")]
    NonpositiveParameter { name: &'static str, value: f64 },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("domain error: {function}({argument})")]
    Domain { function: String, argument: f64 },

    #[error("CSV error at line {line}: {message}")]
    Csv { line: usize, message: String },
}

impl Error {
    /// True when the failure comes from malformed user input rather than
    /// numeric degeneracy of an otherwise valid curve.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::SampleCountTooSmall { .. }
                | Error::DegenerateInterval { .. }
                | Error::UnsupportedOrder(_)
                | Error::OutOfDomain { .. }
                | Error::NonpositiveParameter { .. }
                | Error::Syntax { .. }
                | Error::UnknownIdentifier { .. }
                | Error::Domain { .. }
                | Error::Csv { .. }
                | Error::IndexOutOfRange { .. }
        )
    }

    /// Short variant name, used in machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SampleCountTooSmall { .. } => "SampleCountTooSmall",
            Error::DegenerateInterval { .. } => "DegenerateInterval",
            Error::UnsupportedOrder(_) => "UnsupportedOrder",
            Error::IrregularCurve { .. } => "IrregularCurve",
            Error::NotUnitSpeed { .. } => "NotUnitSpeed",
            Error::VanishingCurvature { .. } => "VanishingCurvature",
            Error::DegenerateSpeed { .. } => "DegenerateSpeed",
            Error::GridMismatch(_) => "GridMismatch",
            Error::DiscriminantNegative { .. } => "DiscriminantNegative",
            Error::DivisionByZero(_) => "DivisionByZero",
            Error::SphereTooSmall { .. } => "SphereTooSmall",
            Error::DegenerateFrame(_) => "DegenerateFrame",
            Error::OsculatingUndefined { .. } => "OsculatingUndefined",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::ParamDegenerate { .. } => "ParamDegenerate",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::NonpositiveParameter { .. } => "NonpositiveParameter",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownIdentifier { .. } => "UnknownIdentifier",
            Error::Domain { .. } => "DomainError",
            Error::Csv { .. } => "CsvError",
        }
    }
}

fn at_s(s: Option<f64>) -> String {
    s.map(|s| format!(" at s = {s}")).unwrap_or_default()
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
