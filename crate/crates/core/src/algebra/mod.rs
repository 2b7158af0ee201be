//! Exact rational arithmetic, sparse multivariate polynomials, rewrite
//! systems for binomial ideals and Sylvester resultants.

mod monomial;
mod polynomial;
mod rational;
mod resultant;
mod rewrite;

use thiserror::Error;

pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use rational::{parse_rational, rat, ratio, to_f64, Rational};
pub use resultant::{bareiss_determinant, resultant, sylvester_matrix};
pub use rewrite::{normal_form, RewriteSystem, Rule};

pub(crate) use rational::is_one;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expression is not a polynomial: {0}")]
    NonPolynomial(String),
    #[error("unsupported rewrite rule {0}")]
    UnsupportedRule(String),
    #[error("rule {0} does not decrease in the monomial order")]
    NotDecreasing(String),
    #[error("rewrite system is not confluent: {overlap} reduces to both {left} and {right}")]
    NotConfluent { overlap: String, left: String, right: String },
    #[error("completion exceeded {0} rules")]
    CompletionLimit(usize),
    #[error("nothing to eliminate: input has degree zero in variable {}", var + 1)]
    NothingToEliminate { var: usize },
}

/// Parses polynomial text: variables `x1..xn` (aliases `x`, `y`, `t`),
/// rational literals, `+ - * ^` and parentheses.
pub fn parse_polynomial(s: &str) -> Result<Polynomial, AlgebraError> {
    let parsed = crate::expr::parse(s).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    parsed.expr.to_polynomial(parsed.expr.arity())
}

/// `p op q` for the three ring operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &Polynomial, q: &Polynomial, op: RingOp) -> Polynomial {
    match op {
        RingOp::Add => p + q,
        RingOp::Sub => p - q,
        RingOp::Mul => p * q,
    }
}
