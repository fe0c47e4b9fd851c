use thiserror::Error;

/// Every failure the engine can report.
///
/// Each variant maps to a stable machine-readable code via [`Error::code`],
/// which the command line front end emits in its error documents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value is not rational: {0}")]
    NotRational(String),
    #[error("conductor {0} exceeds the supported maximum of {1}")]
    ConductorTooLarge(u64, u32),
    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("group order exceeds the supported maximum of {0}")]
    TooLarge(usize),
    #[error("element is not in the parent group: {0}")]
    NotInParent(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("group does not embed as a subgroup: {0}")]
    NotSubgroup(String),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("character table construction failed: {0}")]
    TableFailure(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("invalid curve datum: {0}")]
    InvalidCurve(String),
    #[error("Riemann-Hurwitz fails on component orbit {component}: {detail}")]
    RiemannHurwitz { component: usize, detail: String },
    #[error("invalid sheaf datum: {0}")]
    InvalidSheaf(String),
    #[error("curve is not stable: {0}")]
    NotStable(String),
    #[error("H^1 vanishing is not established: {0}")]
    NotAmple(String),
    #[error("group action is not faithful: {0}")]
    NotFaithful(String),
    #[error("node correction paths disagree at node orbit {0}")]
    PathMismatch(usize),
    #[error("internal identity violated: {0}")]
    IdentityViolated(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("scenario error: {0}")]
    Scenario(String),
    #[error("scenario does not match the schema: {0}")]
    Schema(String),
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotRational(_) => "not_rational",
            Error::ConductorTooLarge(..) => "conductor_too_large",
            Error::DegreeMismatch(..) => "degree_mismatch",
            Error::NotAPermutation(_) => "not_a_permutation",
            Error::TooLarge(_) => "too_large",
            Error::NotInParent(_) => "not_in_parent",
            Error::NotNormal(_) => "not_normal",
            Error::NotSubgroup(_) => "not_subgroup",
            Error::GroupMismatch => "group_mismatch",
            Error::TableFailure(_) => "table_failure",
            Error::InvalidCharacter(_) => "invalid_character",
            Error::InvalidCurve(_) => "invalid_curve",
            Error::RiemannHurwitz { .. } => "riemann_hurwitz",
            Error::InvalidSheaf(_) => "invalid_sheaf",
            Error::NotStable(_) => "not_stable",
            Error::NotAmple(_) => "not_ample",
            Error::NotFaithful(_) => "not_faithful",
            Error::PathMismatch(_) => "path_mismatch",
            Error::IdentityViolated(_) => "identity_violated",
            Error::UnsupportedShape(_) => "unsupported_shape",
            Error::NotApplicable(_) => "not_applicable",
            Error::Scenario(_) => "scenario",
            Error::Schema(_) => "schema_error",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
