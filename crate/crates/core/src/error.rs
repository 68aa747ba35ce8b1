use alloc::string::String;

/// Errors raised by the library. Indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("model has no linear factors")]
    EmptyFactors,
    #[error("factor {0} has a = b = 0")]
    ZeroFactor(usize),
    #[error("numerator is identically zero")]
    ZeroNumerator,
    #[error("factor index {index} out of range for {count} factors")]
    FactorIndex { index: usize, count: usize },
    #[error("need at least two factors")]
    TooFewFactors,
    #[error("lines {0} and {1} are parallel")]
    ParallelLines(usize, usize),
    #[error("lines {0}, {1} and {2} are concurrent")]
    ConcurrentTriple(usize, usize, usize),
    #[error("factor {0} has a non-positive coefficient")]
    NonPositiveCoefficient(usize),
    #[error("point does not lie on line {0}")]
    VertexNotOnLine(usize),
    #[error("direction (0, 0)")]
    ZeroDirection,
    #[error("direction has a negative component")]
    NegativeDirection,
    #[error("direction lies on a coordinate axis")]
    AxisDirection,
    #[error("direction lies on a boundary ray between two cones")]
    BoundaryDirection,
    #[error("numerator vanishes at the base point")]
    DegenerateNumerator,
    #[error("pair constant for lines {0} and {1} has a zero denominator")]
    DegenerateDenominator(usize, usize),
    #[error("aggregated saddle constant for line {0} vanishes")]
    DegenerateConstant(usize),
    #[error("recursive and closed-form partial fractions disagree")]
    DecompositionMismatch,
    #[error("need at least three convergence rows")]
    TooFewRows,
    #[error("coefficient f({x}, {y}) vanishes along the diagonal")]
    ZeroCoefficient { x: u64, y: u64 },
    #[error("direction component too large for exact power comparison")]
    DirectionTooLarge,
}

impl Error {
    /// Stable machine-readable name.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BadRational(_) => "BadRational",
            Error::EmptyFactors => "EmptyFactors",
            Error::ZeroFactor(_) => "ZeroFactor",
            Error::ZeroNumerator => "ZeroNumerator",
            Error::FactorIndex { .. } => "FactorIndex",
            Error::TooFewFactors => "TooFewFactors",
            Error::ParallelLines(..) => "ParallelLines",
            Error::ConcurrentTriple(..) => "ConcurrentTriple",
            Error::NonPositiveCoefficient(_) => "NonPositiveCoefficient",
            Error::VertexNotOnLine(_) => "VertexNotOnLine",
            Error::ZeroDirection => "ZeroDirection",
            Error::NegativeDirection => "NegativeDirection",
            Error::AxisDirection => "AxisDirection",
            Error::BoundaryDirection => "BoundaryDirection",
            Error::DegenerateNumerator => "DegenerateNumerator",
            Error::DegenerateDenominator(..) => "DegenerateDenominator",
            Error::DegenerateConstant(_) => "DegenerateConstant",
            Error::DecompositionMismatch => "DecompositionMismatch",
            Error::TooFewRows => "TooFewRows",
            Error::ZeroCoefficient { .. } => "ZeroCoefficient",
            Error::DirectionTooLarge => "DirectionTooLarge",
        }
    }
}
