use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be non-negative, got g = {0}")]
    NegativeGenus(i64),

    #[error("r must be at least 1, got r = {0}")]
    NonPositiveR(i64),

    #[error("ell must be <= 0 here, got ell = {0}")]
    PositiveEll(i64),

    #[error("ell must be < 0 here, got ell = {0}")]
    NonNegativeEll(i64),

    #[error("ell must be >= 0 here, got ell = {0}")]
    NegativeEll(i64),

    #[error("E_s is defined only for s >= 1, got s = {0}")]
    VectorIndex(i64),

    #[error("Catalan numbers are defined only for m >= 0, got m = {0}")]
    NegativeCatalan(i64),

    #[error("g = {g} is below the genus floor {floor} for (ell, r)")]
    BelowGenusFloor { g: i64, floor: i64 },

    #[error("|ell| + r = {size} exceeds the enumeration limit {limit}")]
    EnumerationGuard { size: i64, limit: i64 },

    /// A closed formula produced a division with nonzero remainder. This can
    /// only happen if a formula was transcribed incorrectly.
    #[error("integrality fault in {context}: {numerator} is not divisible by {denominator}")]
    Integrality {
        context: &'static str,
        numerator: String,
        denominator: String,
    },

    #[error("{context} produced a negative value {value}")]
    NegativeCount {
        context: &'static str,
        value: String,
    },

    #[error("axis-meeting count needs k >= 2, got k = {0}")]
    AxisMeetings(i64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
