use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Why a multiplication table fails the group axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotAGroup {
    Empty,
    NotSquare { row: usize, len: usize },
    EntryOutOfRange { row: usize, col: usize, value: usize },
    IdentityNotZero { element: usize },
    NotLatin { row: usize },
    NoInverse { element: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

impl std::fmt::Display for NotAGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotAGroup::Empty => write!(f, "empty table"),
            NotAGroup::NotSquare { row, len } => write!(f, "row {row} has length {len}"),
            NotAGroup::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} out of range")
            }
            NotAGroup::IdentityNotZero { element } => {
                write!(f, "element 0 is not a two-sided identity (fails at {element})")
            }
            NotAGroup::NotLatin { row } => write!(f, "row or column {row} is not a permutation"),
            NotAGroup::NoInverse { element } => write!(f, "element {element} has no inverse"),
            NotAGroup::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
        }
    }
}

#[derive(Debug, Error, strum::IntoStaticStr)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(NotAGroup),
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivideOrder { p: u64, order: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("group of order {order} has prime power (or trivial) order")]
    PrimePowerOrder { order: usize },
    #[error("indices are not coprime (gcd {gcd})")]
    IndicesNotCoprime { gcd: String },
    #[error("override {value} contradicts decided class {class}")]
    InconsistentOverride { value: u64, class: &'static str },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("not a chain complex: {0}")]
    NotAChainComplex(String),
    #[error("carrier of cell {cell} is not face-compatible")]
    CarrierNotFaceCompatible { cell: u64 },
    #[error("per-cell hypothesis fails on cells {cells:?}")]
    HypothesisFails { cells: Vec<u64> },
    #[error("chi(F) = {chi_source} is not congruent to chi(Y) = {chi_target} mod {modulus}")]
    GlobalCongruenceFails { chi_source: i64, chi_target: i64, modulus: u64 },
    #[error("source is empty")]
    EmptySource,
    #[error("target complex is not connected")]
    TargetDisconnected,
    #[error("target complex is not regular")]
    NotRegular,
    #[error("component mismatch: expected {expected}, got {got}")]
    ComponentMismatch { expected: usize, got: usize },
    #[error("stabilizer is not constant along the lift of component {component}")]
    InconsistentStabilizer { component: u64 },
    #[error("lift stabilizer of component {component} is not a complement of the kernel")]
    NotAComplement { component: u64 },
    #[error("the kernel has no complement")]
    NoComplement,
    #[error("element {element} does not map to a generator of the cyclic quotient")]
    GeneratorConditionFails { element: usize },
    #[error("hypothesis fails: {0}")]
    TraceHypothesisFails(String),
    #[error("inconsistent context: {0}")]
    InconsistentContext(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Variant name, for machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        self.into()
    }
}
