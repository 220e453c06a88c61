use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Pipeline stage that produced a fit error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Smooth,
    Peak,
    Lambda,
    Theta,
    Regression,
    Parameters,
    Segmentation,
    Summary,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Smooth => "smooth",
            Stage::Peak => "peak",
            Stage::Lambda => "lambda",
            Stage::Theta => "theta",
            Stage::Regression => "regression",
            Stage::Parameters => "parameters",
            Stage::Segmentation => "segmentation",
            Stage::Summary => "summary",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// `βφ + α ≤ 0`: the Bose-Einstein occupation diverges.
    #[error("divergent occupation: beta*phi + alpha = {0} is not positive")]
    DivergentOccupation(f64),

    /// The stationarity condition has no root for this right-hand side.
    #[error("no solution: {target} is not below the supremum {supremum} of the stationarity map")]
    NoSolution { target: f64, supremum: f64 },

    #[error("gini {0} exceeds 1/3: no symmetric equivalent exists")]
    NoSymmetricEquivalent(f64),

    #[error("exclusion violated: {entities} entities cannot occupy {states} single-occupancy states")]
    ExclusionViolation { entities: u64, states: u64 },

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("integer overflow while counting {0}")]
    Overflow(String),

    #[error("insufficient data: need at least {needed} usable bins, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("singular regression: abscissae have zero variance")]
    SingularRegression,

    #[error("invalid peak: omega_p = {0} must be positive")]
    InvalidPeak(f64),

    #[error("{stage} stage failed: {source}")]
    Fit {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("unsupported report format version {0:?}")]
    FormatVersion(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at(self, stage: Stage) -> Error {
        Error::Fit {
            stage,
            source: Box::new(self),
        }
    }

    /// True for errors caused by the input data rather than the fit itself.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::Json(_)
                | Error::FormatVersion(_)
                | Error::TooLarge(_)
        )
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: Stage) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: Stage) -> Result<T> {
        self.map_err(|e| e.at(stage))
    }
}
