use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field GF({p}^{k}) is too large for this engine")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("division by zero")]
    DivideByZero,
    #[error("operands belong to different fields ({left} vs {right})")]
    CtxMismatch { left: String, right: String },
    #[error("wrong characteristic: expected {expected}, found {found}")]
    WrongCharacteristic { expected: String, found: u64 },
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("denominator does not split into linear factors; residual factor {residual}")]
    NonSplitDenominator { residual: String },
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: String, found: usize },
    #[error("polynomial {0} has repeated roots")]
    NotSquarefree(String),
    #[error("branch point {0} appears more than once")]
    DuplicateBranchPoint(String),
    #[error("residue at branch point {0} is zero")]
    ZeroResidue(String),
    #[error("alpha0 must be nonzero")]
    ZeroAlpha0,
    #[error("genus must be at least 2, got {0}")]
    InvalidGenus(usize),
    #[error("field of size {size} is too small for genus {genus} (need at least {needed} elements)")]
    FieldTooSmall { size: u64, genus: usize, needed: u64 },
    #[error("b is not generic: {0}")]
    NonGenericB(String),
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("constant term {constant} is not of the form d^2 + d in {field}; the normal form needs a quadratic extension")]
    ConstantObstruction { constant: String, field: String },
    #[error("function field elements belong to different curves")]
    ModelMismatch,
    #[error("differential has a pole outside the branch locus")]
    PoleAtBranch,
    #[error("vector {index} is not in the kernel of mu0")]
    NotInKernel { index: usize },
    #[error("section is not regular in the declared coordinates: {0}")]
    DenominatorOverflow(String),
    #[error("classes live on different surfaces F_{left} and F_{right}")]
    SurfaceMismatch { left: u32, right: u32 },
    #[error("(K + C).C = {0} is odd; not the class of a curve")]
    OddAdjunction(i64),
    #[error("Hirzebruch index must be at least 1")]
    InvalidSurface,
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl Error {
    /// Variant name, used as a stable error code in machine output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime { .. } => "NotPrime",
            Error::DegreeZero => "DegreeZero",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::DivideByZero => "DivideByZero",
            Error::CtxMismatch { .. } => "CtxMismatch",
            Error::WrongCharacteristic { .. } => "WrongCharacteristic",
            Error::BothZero => "BothZero",
            Error::NonSplitDenominator { .. } => "NonSplitDenominator",
            Error::WrongDegree { .. } => "WrongDegree",
            Error::NotSquarefree { .. } => "NotSquarefree",
            Error::DuplicateBranchPoint { .. } => "DuplicateBranchPoint",
            Error::ZeroResidue { .. } => "ZeroResidue",
            Error::ZeroAlpha0 => "ZeroAlpha0",
            Error::InvalidGenus { .. } => "InvalidGenus",
            Error::FieldTooSmall { .. } => "FieldTooSmall",
            Error::NonGenericB { .. } => "NonGenericB",
            Error::DegenerateCurve { .. } => "DegenerateCurve",
            Error::ConstantObstruction { .. } => "ConstantObstruction",
            Error::ModelMismatch => "ModelMismatch",
            Error::PoleAtBranch => "PoleAtBranch",
            Error::NotInKernel { .. } => "NotInKernel",
            Error::DenominatorOverflow { .. } => "DenominatorOverflow",
            Error::SurfaceMismatch { .. } => "SurfaceMismatch",
            Error::OddAdjunction { .. } => "OddAdjunction",
            Error::InvalidSurface => "InvalidSurface",
            Error::Parse { .. } => "Parse",
        }
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
