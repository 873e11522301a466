use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} is reducible over the prime field")]
    ReducibleModulus(String),
    #[error("invalid extension modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("operation requires positive characteristic")]
    CharacteristicZero,
    #[error("expected {expected} variables/entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("elements belong to different truncations")]
    SpecMismatch,
    #[error("truncations are not comparable (or target is finer)")]
    IncomparableSpecs,
    #[error("element is not a unit (zero constant term)")]
    NotAUnit,
    #[error("image of y{index} has nonzero constant term")]
    ConstantTermNonzero { index: usize },
    #[error("endomorphism is not an automorphism (singular linear part)")]
    NotAnAutomorphism,
    #[error("map does not fix the base point: component {index} of the point map differs")]
    BasePointNotFixed { index: usize },
    #[error("truncated family is not coherent under the connecting projections")]
    IncoherentFamily,
    #[error("no rational point c with map(c) = a over {0}")]
    NoRationalImagePoint(String),
    #[error("jacobian determinant is not a nonzero constant: {0}")]
    JacobianNotConstantUnit(String),
    #[error("domain of size {size} exceeds the enumeration limit {limit}")]
    DomainTooLarge { size: u128, limit: u128 },
    #[error("cannot enumerate points over an infinite field")]
    InfiniteField,
    #[error("invalid truncation level or order: {0}")]
    InvalidLevel(String),
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unknown variable '{name}' at line {line}, column {col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("coefficient {value} is not in the field: {reason}")]
    CoefficientOutOfField { value: String, reason: String },
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
}

impl Error {
    /// Errors that report a failed mathematical hypothesis rather than bad input.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::JacobianNotConstantUnit(_)
                | Error::BasePointNotFixed { .. }
                | Error::NotAnAutomorphism
                | Error::NoRationalImagePoint(_)
                | Error::IncoherentFamily
        )
    }

    /// Stable snake_case tag used in structured reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPrimeModulus(_) => "non_prime_modulus",
            Error::ReducibleModulus(_) => "reducible_modulus",
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::DivisionByZero => "division_by_zero",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::CharacteristicZero => "characteristic_zero",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::SpecMismatch => "spec_mismatch",
            Error::IncomparableSpecs => "incomparable_specs",
            Error::NotAUnit => "not_a_unit",
            Error::ConstantTermNonzero { .. } => "constant_term_nonzero",
            Error::NotAnAutomorphism => "not_an_automorphism",
            Error::BasePointNotFixed { .. } => "base_point_not_fixed",
            Error::IncoherentFamily => "incoherent_family",
            Error::NoRationalImagePoint(_) => "no_rational_image_point",
            Error::JacobianNotConstantUnit(_) => "jacobian_not_constant_unit",
            Error::DomainTooLarge { .. } => "domain_too_large",
            Error::InfiniteField => "infinite_field",
            Error::InvalidLevel(_) => "invalid_level",
            Error::Syntax { .. } => "syntax_error",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::CoefficientOutOfField { .. } => "coefficient_out_of_field",
            Error::InvalidDescriptor(_) => "invalid_descriptor",
        }
    }
}
