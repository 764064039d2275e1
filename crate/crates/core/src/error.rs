use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyInput,

    #[error("generators not strictly ascending")]
    NotAscending,

    #[error("generators not coprime (gcd = {gcd})")]
    NonCoprime { gcd: i64 },

    #[error("generator {value} is smaller than 2")]
    UnitGenerator { value: i64 },

    #[error("arithmetic overflow while computing {what}")]
    Overflow { what: &'static str },

    #[error("operation undefined for the full monoid N")]
    DegenerateFullMonoid,

    #[error("Apéry anchor must be positive")]
    AnchorZero,

    #[error("Apéry anchor {anchor} is not an element of the semigroup")]
    AnchorNotInSemigroup { anchor: i64 },

    #[error("semigroup is not almost-symmetric")]
    NotAlmostSymmetric,

    #[error("witness violation: {0}")]
    WitnessViolation(String),

    #[error("genus {requested} exceeds cap {cap}")]
    BudgetExceeded { requested: u32, cap: u32 },

    #[error("at semigroup <{}>: {source}", join_gens(gens))]
    AtSemigroup { gens: Vec<i64>, source: Box<Error> },
}

impl Error {
    /// Attach the offending generator tuple to an error raised mid-sweep.
    pub fn at(self, gens: &[i64]) -> Self {
        match self {
            e @ Error::AtSemigroup { .. } => e,
            e => Error::AtSemigroup {
                gens: gens.to_vec(),
                source: Box::new(e),
            },
        }
    }

    /// Innermost error, skipping any `AtSemigroup` context.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtSemigroup { source, .. } => source.root(),
            e => e,
        }
    }
}

fn join_gens(gens: &[i64]) -> String {
    gens.iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
