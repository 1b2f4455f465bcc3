//! Error type shared across the crate.

use crate::dataset::ApprovalGroup;

/// Why a slope utility test could not be carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateCause {
    /// Residual standard error is zero because every point lies on the line.
    PerfectFit,
    /// Residual standard error is zero because the response never varies.
    ConstantResponse,
}

impl std::fmt::Display for DegenerateCause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DegenerateCause::PerfectFit => write!(f, "perfect fit (all residuals are zero)"),
            DegenerateCause::ConstantResponse => {
                write!(f, "constant response (zero variance in y)")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line 1: bad header {found:?}, expected {expected:?}")]
    BadHeader {
        expected: &'static str,
        found: String,
    },

    #[error("line {line}: expected 5 fields, found {found}")]
    WrongFieldCount { line: usize, found: usize },

    #[error("line {line}: invalid {field} {value:?}")]
    InvalidField {
        line: usize,
        field: &'static str,
        value: String,
    },

    #[error("line {line}: approval {value} outside [0, 100]")]
    ApprovalOutOfRange { line: usize, value: f64 },

    #[error("line {line}: duplicate year {year} (first seen on line {first_line})")]
    DuplicateYear {
        line: usize,
        year: i32,
        first_line: usize,
    },

    #[error("line {line}: year {year} is not an even year >= 1900")]
    ImplausibleYear { line: usize, year: i32 },

    #[error("empty series")]
    EmptySeries,

    #[error("empty dataset")]
    EmptyDataset,

    #[error("need at least 3 observations, got {0}")]
    InsufficientData(usize),

    #[error("degenerate design: all x values are equal")]
    DegenerateDesign,

    #[error("slope test undefined: {0}")]
    DegenerateTest(DegenerateCause),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("group {group}: {source}")]
    Group {
        group: ApprovalGroup,
        #[source]
        source: Box<Error>,
    },

    #[error("no group has enough data to fit")]
    NoFittableGroup,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Wraps this error with the approval group it occurred in.
    pub fn for_group(self, group: ApprovalGroup) -> Self {
        Error::Group {
            group,
            source: Box::new(self),
        }
    }
}
