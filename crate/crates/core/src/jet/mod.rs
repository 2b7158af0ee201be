//! Lifting expressions to points with nilpotent displacement.
//!
//! A [`JetPoint`] is a base point `x` together with a displacement `d` whose
//! entries live in the augmentation ideal of a Weil algebra. Lifting `f`
//! evaluates `f(x + d)` exactly up to the nilpotency depth of the algebra, so
//! derivatives, Taylor coefficients and Laplacians are read off as basis
//! coordinates of a single algebra element.

mod lift;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, Monomial, Polynomial, Rational};
use crate::expr::Expr;
use crate::scalar::{Scalar, ScalarError};
use crate::weil::{WeilAlgebra, WeilElement, WeilError};

pub use lift::taylor_lift;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("non-invertible denominator")]
    NonInvertible,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weil(WeilError),
    #[error("variable x{} is out of range (point has {arity} coordinates)", index + 1)]
    Arity { index: usize, arity: usize },
    #[error("invalid jet point: {0}")]
    Point(String),
}

impl From<WeilError> for JetError {
    fn from(e: WeilError) -> Self {
        match e {
            WeilError::NonInvertible => JetError::NonInvertible,
            e => JetError::Weil(e),
        }
    }
}

/// A base point displaced by nilpotent elements of one Weil algebra.
#[derive(Clone, Debug)]
pub struct JetPoint<S: Scalar> {
    algebra: Arc<WeilAlgebra>,
    base: Vec<S>,
    displacement: Vec<WeilElement<S>>,
}

impl<S: Scalar> JetPoint<S> {
    pub fn new(
        algebra: &Arc<WeilAlgebra>,
        base: Vec<S>,
        displacement: Vec<WeilElement<S>>,
    ) -> Result<Self, JetError> {
        if base.is_empty() {
            return Err(JetError::Point("base point has no coordinates".into()));
        }
        if base.len() != displacement.len() {
            return Err(JetError::Point(format!(
                "{} base coordinates but {} displacements",
                base.len(),
                displacement.len()
            )));
        }
        for (i, d) in displacement.iter().enumerate() {
            if !d.same_algebra(&WeilElement::one(algebra, &d.ctx())) {
                return Err(JetError::Point(format!("displacement {} is not in {}", i + 1, algebra.name())));
            }
            if !d.augmentation().is_zero() {
                return Err(JetError::Point(format!("displacement {} is not nilpotent", i + 1)));
            }
        }
        Ok(JetPoint { algebra: algebra.clone(), base, displacement })
    }

    /// `x + (g1, ..., gn, 0, ...)`: coordinate `i` is displaced by the `i`-th
    /// generator of the algebra while generators last.
    pub fn generic(algebra: &Arc<WeilAlgebra>, base: Vec<S>) -> Result<Self, JetError> {
        let ctx = first_ctx(&base)?;
        let displacement = (0..base.len())
            .map(|i| {
                if i < algebra.nvars() {
                    WeilElement::generator(algebra, i, &ctx)
                } else {
                    Ok(WeilElement::zero(algebra, &ctx))
                }
            })
            .collect::<Result<_, _>>()?;
        Self::new(algebra, base, displacement)
    }

    /// Displaces only coordinate `var`, by the first generator.
    pub fn along(algebra: &Arc<WeilAlgebra>, base: Vec<S>, var: usize) -> Result<Self, JetError> {
        let ctx = first_ctx(&base)?;
        if var >= base.len() {
            return Err(JetError::Arity { index: var, arity: base.len() });
        }
        let displacement = (0..base.len())
            .map(|i| {
                if i == var {
                    WeilElement::generator(algebra, 0, &ctx)
                } else {
                    Ok(WeilElement::zero(algebra, &ctx))
                }
            })
            .collect::<Result<_, _>>()?;
        Self::new(algebra, base, displacement)
    }

    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn base(&self) -> &[S] {
        &self.base
    }

    pub fn displacement(&self) -> &[WeilElement<S>] {
        &self.displacement
    }

    pub fn ctx(&self) -> S::Ctx {
        self.base[0].ctx()
    }
}

fn first_ctx<S: Scalar>(base: &[S]) -> Result<S::Ctx, JetError> {
    base.first()
        .map(S::ctx)
        .ok_or_else(|| JetError::Point("base point has no coordinates".into()))
}

/// Partial derivative of `f` in `var` at `base`: the coefficient of `x` in
/// `f(base + x e_var)` over the dual numbers.
pub fn derivative<S: Scalar>(f: &Expr, var: usize, base: &[S]) -> Result<S, JetError> {
    let p = JetPoint::along(&WeilAlgebra::dual(), base.to_vec(), var)?;
    Ok(taylor_lift(f, &p)?.coeffs()[1].clone())
}

/// Symbolic partial derivative, obtained by lifting with expression
/// coordinates.
pub fn derivative_expr(f: &Expr, var: usize, arity: usize) -> Result<Expr, JetError> {
    let base: Vec<Expr> = (0..arity.max(f.arity()).max(var + 1)).map(Expr::var).collect();
    derivative(f, var, &base)
}

/// Taylor coefficients of `f` at `base` up to total degree `k`, in the order
/// of the `D_k(n)` basis. Monomials are in the displacement `h = x - base`.
pub fn taylor_coefficients<S: Scalar>(f: &Expr, base: &[S], k: u32) -> Result<Vec<(Monomial, S)>, JetError> {
    let alg = WeilAlgebra::order_k(k, base.len());
    let lifted = taylor_lift(f, &JetPoint::generic(&alg, base.to_vec())?)?;
    Ok(alg.basis().iter().cloned().zip(lifted.into_coeffs()).collect())
}

/// The degree-`k` Taylor polynomial of `f` at a rational point, as a
/// polynomial in the displacement `h = x - base` (variables `x1..xn` stand
/// for `h1..hn`).
pub fn taylor_poly(f: &Expr, base: &[Rational], k: u32) -> Result<Polynomial, JetError> {
    let n = base.len();
    Ok(Polynomial::from_terms(taylor_coefficients(f, base, k)?, n))
}

/// Laplacian `f_xx + f_yy` at a point of the plane, read off one lift to the
/// four-dimensional algebra `x1^2 = x2^2, x1*x2 = 0`: the lift is
/// `f + f_x x1 + f_y x2 + (f_xx + f_yy)/2 x1^2`.
pub fn laplacian<S: Scalar>(f: &Expr, base: &[S]) -> Result<S, JetError> {
    if base.len() != 2 {
        return Err(JetError::Point(format!("laplacian needs a point of the plane, got {} coordinates", base.len())));
    }
    let dl = WeilAlgebra::laplace();
    let lifted = taylor_lift(f, &JetPoint::generic(&dl, base.to_vec())?)?;
    Ok(lifted.coeff(&Monomial::var_pow(0, 2)).scale(&Rational::from_integer(2.into())))
}

/// Coefficients `(a, b1, ..., bn)` of `f` restricted to `D(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KlCoefficients<S: Scalar> {
    pub coeffs: Vec<S>,
    /// `true` when the lift has no component outside `1, x1, ..., xn`.
    pub affine: bool,
}

/// Lifts `f` at `0 + (x1, ..., xn)` in `D(n)` and returns the affine
/// coefficients.
pub fn kl_coefficients<S: Scalar>(f: &Expr, n: usize, ctx: &S::Ctx) -> Result<KlCoefficients<S>, JetError> {
    kl_coefficients_in(f, &WeilAlgebra::first_order(n), ctx)
}

/// As [`kl_coefficients`], lifting into an arbitrary algebra with `n`
/// generators; `affine` reports whether higher-order components vanish.
pub fn kl_coefficients_in<S: Scalar>(
    f: &Expr,
    algebra: &Arc<WeilAlgebra>,
    ctx: &S::Ctx,
) -> Result<KlCoefficients<S>, JetError> {
    let n = algebra.nvars();
    let lifted = taylor_lift(f, &JetPoint::generic(algebra, vec![S::zero(ctx); n.max(f.arity()).max(1)])?)?;
    let mut coeffs = vec![lifted.augmentation().clone()];
    coeffs.extend((0..n).map(|i| lifted.coeff(&Monomial::var(i))));
    let affine = algebra
        .basis()
        .iter()
        .zip(lifted.coeffs())
        .all(|(m, c)| m.degree() <= 1 || c.is_zero());
    Ok(KlCoefficients { coeffs, affine })
}

/// Decides `r = s` from `d*r = d*s` for square-zero `d`: both products are
/// lifted over the dual numbers with symbolic parameters and their
/// `d`-coefficients compared as polynomials.
pub fn cancel_d(r: &Expr, s: &Expr) -> Result<bool, JetError> {
    let n = r.arity().max(s.arity());
    let d = Expr::var(n);
    let mut base: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(i, n)).collect();
    base.push(Polynomial::zero(n));
    let point = JetPoint::along(&WeilAlgebra::dual(), base, n)?;
    let slope = |e: &Expr| -> Result<Polynomial, JetError> {
        Ok(taylor_lift(&(d.clone() * e.clone()), &point)?.coeffs()[1].clone())
    };
    Ok(slope(r)? == slope(s)?)
}

/// Smallest `k` with `(u - v)^(k+1) = 0`, or `None` when `u - v` is not
/// nilpotent.
pub fn neighbour_order<S: Scalar>(u: &WeilElement<S>, v: &WeilElement<S>) -> Result<Option<u32>, WeilError> {
    Ok(u.sub(v)?.nilpotency_order())
}

/// [`neighbour_order`] for plain scalars, where only equal values are
/// neighbours.
pub fn scalar_neighbour_order<S: Scalar>(u: &S, v: &S) -> Option<u32> {
    u.sub(v).is_zero().then_some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::expr::parse;
    use crate::scalar::{Float, DEFAULT_PRECISION};

    fn e(s: &str) -> Expr {
        parse(s).unwrap().expr
    }

    #[test]
    fn square_on_dual_numbers() {
        let p = JetPoint::generic(&WeilAlgebra::dual(), vec![rat(1)]).unwrap();
        assert_eq!(taylor_lift(&e("x^2"), &p).unwrap().coeffs(), &[rat(1), rat(2)]);
        let p0 = JetPoint::generic(&WeilAlgebra::dual(), vec![rat(0)]).unwrap();
        assert!(taylor_lift(&e("x^3"), &p0).unwrap().is_zero());
    }

    #[test]
    fn exp_on_second_order() {
        let p = JetPoint::generic(&WeilAlgebra::second_order(), vec![rat(0)]).unwrap();
        assert_eq!(taylor_lift(&e("exp(x)"), &p).unwrap().coeffs(), &[rat(1), rat(1), ratio(1, 2)]);
    }

    #[test]
    fn derivatives() {
        assert_eq!(derivative(&e("x^3"), 0, &[rat(2)]).unwrap(), rat(12));
        assert_eq!(derivative(&e("exp(x)"), 0, &[rat(0)]).unwrap(), rat(1));
        assert_eq!(derivative(&e("x*y^2"), 1, &[rat(3), rat(5)]).unwrap(), rat(30));
        assert_eq!(derivative(&e("1/x"), 0, &[rat(2)]).unwrap(), ratio(-1, 4));
        let d = derivative(&e("log(x)"), 0, &[Float::from_rational(&rat(4), &DEFAULT_PRECISION)]).unwrap();
        assert!((d.to_f64() - 0.25).abs() < 1e-30);
    }

    #[test]
    fn constant_trig_arguments() {
        let x = Float::from_rational(&ratio(3, 2), &DEFAULT_PRECISION);
        let c = 0.5f64.cos();
        let d = derivative(&e("1/(x - cos(1/2))"), 0, &[x.clone()]).unwrap();
        assert!((d.to_f64() + 1.0 / (1.5 - c).powi(2)).abs() < 1e-12);
        let d = derivative(&e("x*sin(1/2)"), 0, &[x]).unwrap();
        assert!((d.to_f64() - 0.5f64.sin()).abs() < 1e-12);
        assert_eq!(derivative(&e("x*cos(0)"), 0, &[rat(2)]).unwrap(), rat(1));
    }

    #[test]
    fn exact_mode_errors() {
        assert!(matches!(derivative(&e("exp(x)"), 0, &[rat(1)]), Err(JetError::Scalar(ScalarError::Inexact { .. }))));
        let p = JetPoint::generic(&WeilAlgebra::dual(), vec![rat(0)]).unwrap();
        assert_eq!(taylor_lift(&e("1/x"), &p), Err(JetError::NonInvertible));
        assert!(matches!(derivative(&e("y"), 1, &[rat(0)]), Err(JetError::Arity { .. })));
    }

    #[test]
    fn taylor_polynomials() {
        let x = Polynomial::var(0, 1);
        let exp2 = taylor_poly(&e("exp(x)"), &[rat(0)], 2).unwrap();
        assert_eq!(exp2, Polynomial::one(1) + &x + x.pow(2).scale(&ratio(1, 2)));
        let sin3 = taylor_poly(&e("sin(x)"), &[rat(0)], 3).unwrap();
        assert_eq!(sin3, &x - &x.pow(3).scale(&ratio(1, 6)));
        let xy = taylor_poly(&e("x*y"), &[rat(0), rat(0)], 2).unwrap();
        assert_eq!(xy, Polynomial::var(0, 2) * Polynomial::var(1, 2));
    }

    #[test]
    fn laplacians() {
        assert_eq!(laplacian(&e("x^2+y^2"), &[rat(0), rat(0)]).unwrap(), rat(4));
        assert_eq!(laplacian(&e("x^2-y^2"), &[rat(0), rat(0)]).unwrap(), rat(0));
        assert_eq!(laplacian(&e("exp(x)*cos(y)"), &[rat(0), rat(0)]).unwrap(), rat(0));
        assert_eq!(laplacian(&e("x^3*y + y^4"), &[rat(1), rat(2)]).unwrap(), rat(6 * 2 + 12 * 4));
    }

    #[test]
    fn kl_coefficient_extraction() {
        let k = kl_coefficients::<Rational>(&e("7"), 2, &()).unwrap();
        assert_eq!(k.coeffs, vec![rat(7), rat(0), rat(0)]);
        assert!(k.affine);
        let k = kl_coefficients::<Rational>(&e("x+3*y"), 2, &()).unwrap();
        assert_eq!(k.coeffs, vec![rat(0), rat(1), rat(3)]);
        let k = kl_coefficients::<Rational>(&e("x*y"), 2, &()).unwrap();
        assert_eq!(k.coeffs, vec![rat(0); 3]);
        let k = kl_coefficients_in::<Rational>(&e("x*y"), &WeilAlgebra::order_k(2, 2), &()).unwrap();
        assert!(!k.affine);
    }

    #[test]
    fn cancellation() {
        assert!(cancel_d(&e("x^2 - 1"), &e("(x-1)*(x+1)")).unwrap());
        assert!(!cancel_d(&e("1"), &e("2")).unwrap());
        assert!(!cancel_d(&e("x"), &e("y")).unwrap());
    }

    #[test]
    fn neighbour_orders() {
        let d = WeilAlgebra::dual();
        let eps = WeilElement::<Rational>::generator(&d, 0, &()).unwrap();
        let zero = WeilElement::zero(&d, &());
        assert_eq!(neighbour_order(&eps, &zero).unwrap(), Some(1));
        assert_eq!(neighbour_order(&eps, &eps).unwrap(), Some(0));
        let d2 = WeilAlgebra::second_order();
        let x = WeilElement::<Rational>::generator(&d2, 0, &()).unwrap();
        assert_eq!(neighbour_order(&x, &WeilElement::zero(&d2, &())).unwrap(), Some(2));
        assert_eq!(neighbour_order(&x.add_scalar(&rat(1)), &x).unwrap(), None);
        assert_eq!(scalar_neighbour_order(&rat(2), &rat(2)), Some(0));
        assert_eq!(scalar_neighbour_order(&rat(2), &rat(3)), None);
    }

    #[test]
    fn symbolic_derivative() {
        let ft = derivative_expr(&e("y-(x-t)^3"), 2, 3).unwrap();
        let expected = e("3*(x-t)^2").to_polynomial(3).unwrap();
        assert_eq!(ft.to_polynomial(3).unwrap(), expected);
        let g = derivative_expr(&e("sin(x*y)"), 0, 2).unwrap();
        let at = [rat(0), rat(5)];
        assert_eq!(g.eval(&at).unwrap(), rat(5));
    }

    #[test]
    fn parameters_stay_symbolic() {
        // f(i, d) = i^2 + i*d lifted at (i, 0 + x): a(i) = i^2, b(i) = i
        let base = vec![Polynomial::var(0, 1), Polynomial::zero(1)];
        let p = JetPoint::along(&WeilAlgebra::dual(), base, 1).unwrap();
        let lifted = taylor_lift(&e("x^2 + x*y"), &p).unwrap();
        assert_eq!(lifted.coeffs()[0], Polynomial::var(0, 1).pow(2));
        assert_eq!(lifted.coeffs()[1], Polynomial::var(0, 1));
    }
}
