use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate parameter: a = {value} is a root of {factor}")]
    DegenerateParameter { factor: String, value: String },

    #[error("evaluation at pole")]
    EvaluationAtPole,

    #[error("ansatz degree bound exhausted at cascade stage `{stage}`")]
    AnsatzExhausted { stage: String },

    #[error("no quasi-rational eigenstate at weight {weight}")]
    NoQuasiRationalEigenstate { weight: String },

    #[error("structural violation: {0}")]
    StructuralViolation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not an H-polynomial: {0}")]
    NotHPolynomial(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
