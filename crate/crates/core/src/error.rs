use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("index {index} out of range for payload of length {len}")]
    OutOfRange { index: String, len: usize },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("LP solver failure: {0}")]
    Solver(String),

    #[error("resampling budget of {attempts} attempts exhausted: {diagnostics}")]
    BudgetExhausted { attempts: usize, diagnostics: String },

    #[error("adversarial exhaustive search refused: {proofs} proofs exceeds the 2^20 limit; use adversary = hillclimb or auto")]
    ProofSpaceTooLarge { proofs: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
