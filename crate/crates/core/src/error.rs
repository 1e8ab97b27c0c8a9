use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("input must be a non-trivial element")]
    IdentityInput,
    #[error("images do not generate the free group; map is not an automorphism")]
    NotBijective,
    #[error("element does not belong to the presentation's group")]
    PresentationMismatch,
    #[error("word is not a member of the subgroup")]
    NotAMember,
    #[error("witnesses belong to different twisting contexts")]
    ContextMismatch,
    #[error("witness does not satisfy its defining equation")]
    InvalidWitness,
    #[error("automata or grammars use different alphabets")]
    AlphabetMismatch,
    #[error("centralizer has no vertical generator to build an automaton from")]
    MissingWitness,
    #[error("enumeration of {requested} elements exceeds the cap of {cap}")]
    BudgetTooLarge { requested: u128, cap: u128 },
    #[error("unknown terminal `{0}`")]
    UnknownTerminal(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{0}")]
    Parse(String),
    #[error("line {line}: {cause}")]
    AtLine { line: usize, cause: Box<Error> },
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::AtLine {
            line,
            cause: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
