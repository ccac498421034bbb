use thiserror::Error;

use crate::algebra::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two Γ-valued quantities built on different β bases were combined.
    #[error("gamma values have different bases: Γ({left}+1) vs Γ({right}+1)")]
    BetaMismatch { left: Rational, right: Rational },

    /// exp/binomial composition needs an argument with zero constant term.
    #[error("series composition requires a zero constant term, found {constant}")]
    CompositionDomain { constant: String },

    #[error("coefficient t^{index} requested from a series truncated at order {order}")]
    OutOfRange { index: usize, order: usize },

    /// The density z^(β-s) e^(-z) p(z) is not integrable at the origin.
    #[error("inadmissible measure parameters s={s}, beta={beta}: need beta - s > -1")]
    Integrability { s: u32, beta: Rational },

    #[error("singular Gram block for n={n}, s={s}, beta={beta}")]
    DegenerateGram { n: usize, s: u32, beta: Rational },

    #[error("parse error at column {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
