use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("alphabet mismatch: expected {expected} symbols, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("`{0}` is not a normal form")]
    NotNormalForm(String),
    #[error("no stacking rule covers edge ({word}, {letter})")]
    Uncovered { word: String, letter: String },
    #[error("stacking rules overlap on edge ({word}, {letter})")]
    Overlap { word: String, letter: String },
    #[error("recursion budget of {budget} steps exceeded at edge ({word}, {letter})")]
    BudgetExceeded { budget: usize, word: String, letter: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("missing table entry: {0}")]
    MissingEntry(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid construction input: {0}")]
    InvalidInput(String),
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
}
