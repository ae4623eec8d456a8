use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands live over different dimensions.
    DimensionMismatch { expected: usize, found: usize },
    /// The requested dimension exceeds the supported maximum.
    DimensionTooLarge { n: usize, max: usize },
    /// A form degree outside the admissible range for the operation.
    DegreeOutOfRange {
        degree: usize,
        min: usize,
        max: usize,
    },
    /// Two subspaces or a subspace and an operator disagree on degree.
    DegreeMismatch { expected: usize, found: usize },
    /// The operation needs a single-grade multivector.
    NotHomogeneous,
    /// A component index outside `0..n`.
    IndexOutOfRange { index: usize, n: usize },
    /// The same curvature slot was given two different values.
    InconsistentEntry {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    /// `R_{ijkl} != R_{klij}` beyond tolerance.
    NotSymmetric { residual: f64 },
    /// First Bianchi identity violated beyond tolerance.
    BianchiViolation { residual: f64 },
    /// The supplied endomorphism does not square to `-id`.
    NotComplexStructure { residual: f64 },
    /// A subspace required to be invariant under the curvature is not.
    NotInvariant { residual: f64 },
    /// The subspace iteration did not stabilise.
    NoConvergence { steps: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DimensionTooLarge { n, max } => {
                write!(f, "dimension {n} exceeds the supported maximum {max}")
            }
            Error::DegreeOutOfRange { degree, min, max } => {
                write!(
                    f,
                    "degree {degree} outside the admissible range {min}..={max}"
                )
            }
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::NotHomogeneous => write!(f, "multivector is not homogeneous"),
            Error::IndexOutOfRange { index, n } => {
                write!(f, "index {index} out of range for dimension {n}")
            }
            Error::InconsistentEntry { i, j, k, l } => write!(
                f,
                "inconsistent duplicate entry for component ({i},{j},{k},{l})"
            ),
            Error::NotSymmetric { residual } => {
                write!(
                    f,
                    "pair symmetry R_ijkl = R_klij violated (residual {residual:e})"
                )
            }
            Error::BianchiViolation { residual } => {
                write!(f, "first Bianchi identity violated (residual {residual:e})")
            }
            Error::NotComplexStructure { residual } => {
                write!(
                    f,
                    "endomorphism is not a complex structure (residual {residual:e})"
                )
            }
            Error::NotInvariant { residual } => {
                write!(
                    f,
                    "subspace is not curvature invariant (residual {residual:e})"
                )
            }
            Error::NoConvergence { steps } => {
                write!(
                    f,
                    "subspace iteration did not stabilise within {steps} steps"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
