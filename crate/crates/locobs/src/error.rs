use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("normalization exceeded the rewrite budget after {steps} steps")]
    NonTerminating { steps: u64 },
    #[error("mass exchange rule disagrees with the Lie table for C[{mu}]")]
    InconsistentMassRule { mu: usize },
}
