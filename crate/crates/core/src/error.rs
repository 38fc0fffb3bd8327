use thiserror::Error;

use crate::weierstrass::StepKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    NotInvertible,
    #[error("point does not lie on both quadrics")]
    PointNotOnIntersection,
    #[error("the quadrics do not cut out a curve of genus one")]
    DegenerateIntersection,
    #[error("no representation of the map is defined at this point")]
    MapUndefined,
    #[error("point does not lie on the cubic{}", at(.step))]
    PointNotOnCubic { step: Option<StepKind> },
    #[error("point does not lie on the final curve")]
    PointNotOnCurve,
    #[error("the distinguished point is singular{}", at(.step))]
    SingularPoint { step: Option<StepKind> },
    #[error("the distinguished point is a flex; the shortcut branch applies")]
    InflectionShouldHaveShortcut,
    #[error("the curve is singular{}", at(.step))]
    SingularCurve { step: Option<StepKind> },
    #[error("the cubic has no X³ term after completing the square")]
    DegenerateCubic,
    #[error("cubic does not have the shape expected{}", at(.step))]
    UnexpectedShape { step: Option<StepKind> },
    #[error("the four numbers do not form a progression of squares")]
    NotAProgression,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

fn at(step: &Option<StepKind>) -> String {
    match step {
        Some(s) => format!(" (step {})", s.name()),
        None => String::new(),
    }
}

impl Error {
    /// Stable identifier, used in machine-readable error reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::NotSymmetric => "NotSymmetric",
            Error::NotInvertible => "NotInvertible",
            Error::PointNotOnIntersection => "PointNotOnIntersection",
            Error::DegenerateIntersection => "DegenerateIntersection",
            Error::MapUndefined => "MapUndefined",
            Error::PointNotOnCubic { .. } => "PointNotOnCubic",
            Error::PointNotOnCurve => "PointNotOnCurve",
            Error::SingularPoint { .. } => "SingularPoint",
            Error::InflectionShouldHaveShortcut => "InflectionShouldHaveShortcut",
            Error::SingularCurve { .. } => "SingularCurve",
            Error::DegenerateCubic => "DegenerateCubic",
            Error::UnexpectedShape { .. } => "UnexpectedShape",
            Error::NotAProgression => "NotAProgression",
            Error::InvalidInstance(_) => "InvalidInstance",
        }
    }

    pub fn step(&self) -> Option<StepKind> {
        match self {
            Error::PointNotOnCubic { step }
            | Error::SingularPoint { step }
            | Error::SingularCurve { step }
            | Error::UnexpectedShape { step } => *step,
            Error::InflectionShouldHaveShortcut => Some(StepKind::MoveSecondIntersection),
            Error::DegenerateCubic => Some(StepKind::Normalize),
            _ => None,
        }
    }

}
