use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },
    #[error("substitution needs {expected} images, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
    #[error("zero coefficient in input term")]
    ZeroCoefficient,
    #[error("monomial {0} appears twice")]
    DuplicateMonomial(String),
    #[error("generator x{} out of range for {ngens} generators", index + 1)]
    GeneratorOutOfRange { index: usize, ngens: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("tower has no stages")]
    Empty,
    #[error("stage {stage} has fiber dimension 0; fibers must be at least CP^1")]
    DegenerateFiber { stage: usize },
    #[error("stage {stage} lists {found} chern classes but its bundle has rank {rank}")]
    TooManyChernClasses { stage: usize, found: usize, rank: usize },
    #[error("stage {stage} chern class c{index} lives in {found} generators, expected {expected}")]
    ChernAmbient { stage: usize, index: usize, found: usize, expected: usize },
    #[error("stage {stage} chern references generator {generator}")]
    ForwardReference { stage: usize, generator: usize },
    #[error("stage {stage} chern class c{index} is not homogeneous of degree {}", 2 * index)]
    Inhomogeneous { stage: usize, index: usize },
    #[error("polynomial lives in {found} generators, presentation has {expected}")]
    Ambient { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl TowerError {
    /// The 1-based stage an error refers to, if any.
    pub fn stage(&self) -> Option<usize> {
        match *self {
            TowerError::DegenerateFiber { stage }
            | TowerError::TooManyChernClasses { stage, .. }
            | TowerError::ChernAmbient { stage, .. }
            | TowerError::ForwardReference { stage, .. }
            | TowerError::Inhomogeneous { stage, .. } => Some(stage),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("operation needs a rank-2 bundle, got rank {0}")]
    RankNotTwo(usize),
    #[error("whitney sum of an empty list of line bundles")]
    EmptySum,
    #[error("line bundle class must be homogeneous of degree 2: {0}")]
    NotDegreeTwo(String),
    #[error("chern class c{index} must be homogeneous of degree {}", 2 * index)]
    Inhomogeneous { index: usize },
    #[error("descriptor of rank {rank} carries {found} chern classes")]
    ChernCount { rank: usize, found: usize },
    #[error("alpha tag only applies to rank-2 bundles over CP^3")]
    AlphaNotApplicable,
    #[error("alpha must be 0 when c1 is odd")]
    AlphaOddFirstChern,
    #[error("alpha must be 0 or 1, got {0}")]
    AlphaRange(u8),
    #[error("milnor hypersurface needs 1 <= i <= j, got i={i}, j={j}")]
    MilnorIndices { i: i64, j: i64 },
    #[error("milnor hypersurface H({i},{j}) has a point fiber")]
    MilnorPointFiber { i: i64, j: i64 },
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("presentations have {0} and {1} generators")]
    GeneratorCount(usize, usize),
    #[error("certificate matrix is not {0}x{0}")]
    MatrixShape(usize),
    #[error("poincare polynomials differ ({0} vs {1}); the rings are trivially not isomorphic")]
    PoincareMismatch(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} expects {expected} parameters, got {found}")]
    Arity { family: String, expected: usize, found: usize },
    #[error("bad parameter `{0}`")]
    BadParameter(String),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("pi6 comparison needs two M8 families")]
    NotM8,
    #[error("pi6 comparison needs equal u, got {0} and {1}; use ring search instead")]
    UMismatch(i64, i64),
    #[error(transparent)]
    Chern(#[from] ChernError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

/// Errors reading or writing the `cpt/1` JSON formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    /// Malformed JSON; the message carries serde's line and column.
    #[error("{0}")]
    Syntax(String),
    #[error("unsupported schema `{0}`, expected `cpt/1`")]
    Schema(String),
    #[error("bad integer `{0}`")]
    Integer(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}
