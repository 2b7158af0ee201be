//! Weil algebras: finite-dimensional quotients of `Q[x1..xn]` whose
//! generators are nilpotent, and arithmetic on their elements.

mod algebra;
mod element;
mod presentation;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};
use crate::expr::Expr;
use crate::scalar::Scalar;

pub use algebra::{monomials_of_degree, WeilAlgebra, BASIS_LIMIT};
pub use element::WeilElement;
pub use presentation::parse_algebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("quotient is infinite-dimensional: basis exceeds {0} monomials")]
    InfiniteDimensional(usize),
    #[error("not a Weil algebra: {0}")]
    NotWeil(String),
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("non-invertible denominator")]
    NonInvertible,
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
    #[error("generator index {index} out of range for {nvars} generators")]
    NoSuchGenerator { index: usize, nvars: usize },
    #[error("invalid algebra presentation: {0}")]
    Presentation(String),
}

/// Builds the algebra presented by `nvars` generators and `relations`.
pub fn weil_build(nvars: usize, relations: &[(crate::algebra::Polynomial, crate::algebra::Polynomial)]) -> Result<Arc<WeilAlgebra>, WeilError> {
    WeilAlgebra::build(nvars, relations)
}

pub fn weil_mul<S: Scalar>(u: &WeilElement<S>, v: &WeilElement<S>) -> Result<WeilElement<S>, WeilError> {
    u.mul(v)
}

pub fn weil_tensor(a: &WeilAlgebra, b: &WeilAlgebra) -> Arc<WeilAlgebra> {
    WeilAlgebra::tensor(a, b)
}

pub fn augmentation<S: Scalar>(u: &WeilElement<S>) -> S {
    u.augmentation().clone()
}

pub fn nilpotency_order<S: Scalar>(u: &WeilElement<S>) -> Option<u32> {
    u.nilpotency_order()
}

/// Evaluates the polynomial map `alpha` at the point `(x1, ..., xn)` of
/// generators of `w` and reports whether `alpha(x) - alpha(0)` squares to zero,
/// i.e. whether `alpha` carries the generic point of `w` into the first-order
/// neighbourhood of `alpha(0)`.
pub fn monad_check(alpha: &Expr, w: &Arc<WeilAlgebra>) -> Result<bool, WeilError> {
    if alpha.arity() > w.nvars() {
        return Err(WeilError::NoSuchGenerator { index: alpha.arity() - 1, nvars: w.nvars() });
    }
    let p = alpha.to_polynomial(w.nvars())?;
    let image = WeilElement::<Rational>::from_polynomial(w, &p, &());
    let moved = image.nilpotent_part();
    Ok(moved.mul(&moved)?.is_zero())
}
