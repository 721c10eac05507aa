use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("closure exceeded the element budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error("malformed group spec: {0}")]
    MalformedSpec(String),
    #[error("element is not in the group")]
    ElementNotInGroup,
    #[error("homomorphisms do not share a target group")]
    NonMatchingTargets,
    #[error("homomorphism is not surjective")]
    NonSurjective,
    #[error("group has no cyclic quotient of order {e}")]
    NoSuchQuotient { e: u64 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("unsupported valuation: v_{ell}(|G|) = {valuation} (at most 1 supported)")]
    UnsupportedValuation { ell: u64, valuation: u32 },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("unknown catalog name: {0}")]
    UnknownName(String),
    #[error("bad prime {0}: an odd prime is required")]
    BadPrime(u64),
    #[error("level {n} is too small: {reason}")]
    LevelTooSmall { n: u32, reason: String },
    #[error("character table construction failed: {0}")]
    TableFailed(String),
}
