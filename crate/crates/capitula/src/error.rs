use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed cycle string {0:?}: {1}")]
    BadCycles(String, String),
    #[error("point {0} out of range 1..={1}")]
    PointOutOfRange(usize, usize),
    #[error("empty generator list")]
    NoGenerators,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not a 3-group (order {0})")]
    NotA3Group(usize),
    #[error("commutator quotient is {0:?}, expected (3,3)")]
    NotRankTwo(Vec<usize>),
    #[error("enumeration cap exceeded: {what} has size {size}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("isomorphism search above order cap {0} (use fingerprint comparison)")]
    IsoAboveCap(usize),
    #[error("invalid capitulation type entry {0} (must be 0..=4)")]
    BadTktEntry(u8),
    #[error("invalid radicand {0}: {1}")]
    BadRadicand(u64, &'static str),
    #[error("cubic residue symbol needs p ≡ 1 (mod 3), got {0}")]
    BadResiduePrime(u64),
    #[error("cubic residue symbol undefined: {0} divisible by {1}")]
    ResidueDivisible(u64, u64),
    #[error("auxiliary DPF type beta is excluded")]
    BetaExcluded,
    #[error("unit norm index must be 1 or 3, got {0}")]
    BadUnitNormIndex(u64),
    #[error("signature r1 + r2 must be positive")]
    ZeroUnitRank,
    #[error("empty abelian type component")]
    EmptyComponent,
    #[error("stable part check inapplicable: canonical type {0} has no transposition family")]
    StablePartInapplicable(String),
    #[error("fixture parse error at {file}:{line}: {msg}")]
    FixtureParse {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("catalog entry {0:?} not found")]
    NoSuchGroup(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
