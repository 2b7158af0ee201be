use crate::algebra::Rational;
use crate::expr::Expr;
use crate::scalar::Scalar;
use crate::weil::WeilElement;

use super::{JetError, JetPoint};

/// `f(base + displacement)` in the displacement's algebra.
///
/// Elementary functions of `u = a + n` (with `n` nilpotent) expand as
/// `sum_k g^(k)(a) n^k / k!`, truncated at the nilpotency depth; the
/// derivatives `g^(k)(a)` come from the closed forms of `exp`, `log`, `sin`
/// and `cos`. Division goes through [`WeilElement::inv`] and fails when the
/// denominator has zero augmentation.
pub fn taylor_lift<S: Scalar>(f: &Expr, p: &JetPoint<S>) -> Result<WeilElement<S>, JetError> {
    lift(f, p, &p.ctx())
}

fn lift<S: Scalar>(f: &Expr, p: &JetPoint<S>, ctx: &S::Ctx) -> Result<WeilElement<S>, JetError> {
    let alg = p.algebra();
    Ok(match f {
        Expr::Const(c) => WeilElement::constant(alg, S::from_rational(c, ctx)),
        Expr::Var(i) => {
            let arity = p.base().len();
            let b = p.base().get(*i).ok_or(JetError::Arity { index: *i, arity })?;
            p.displacement()[*i].add_scalar(b)
        }
        Expr::Add(a, b) => lift(a, p, ctx)?.add(&lift(b, p, ctx)?)?,
        Expr::Sub(a, b) => lift(a, p, ctx)?.sub(&lift(b, p, ctx)?)?,
        Expr::Mul(a, b) => lift(a, p, ctx)?.mul(&lift(b, p, ctx)?)?,
        Expr::Div(a, b) => lift(a, p, ctx)?.mul(&lift(b, p, ctx)?.inv()?)?,
        Expr::Neg(a) => lift(a, p, ctx)?.neg(),
        Expr::Pow(a, e) => {
            let u = lift(a, p, ctx)?;
            let u = if *e < 0 { u.inv()? } else { u };
            u.pow(e.unsigned_abs())
        }
        Expr::Exp(a) => {
            let u = lift(a, p, ctx)?;
            let e = u.augmentation().exp()?;
            series(&u, |k| Ok(vec![e.clone(); k + 1]))?
        }
        Expr::Sin(a) => {
            let u = lift(a, p, ctx)?;
            let a0 = u.augmentation();
            let s = a0.sin()?;
            let c = if needs_derivatives(&u) { a0.cos()? } else { S::zero(ctx) };
            series(&u, |k| Ok(cycle([s.clone(), c.clone(), s.neg(), c.neg()], k)))?
        }
        Expr::Cos(a) => {
            let u = lift(a, p, ctx)?;
            let a0 = u.augmentation();
            let c = a0.cos()?;
            let s = if needs_derivatives(&u) { a0.sin()? } else { S::zero(ctx) };
            series(&u, |k| Ok(cycle([c.clone(), s.neg(), c.neg(), s.clone()], k)))?
        }
        Expr::Log(a) => {
            let u = lift(a, p, ctx)?;
            let a0 = u.augmentation();
            let l = a0.ln()?;
            series(&u, |k| {
                let mut out = vec![l];
                if k > 0 {
                    let r = a0.inv().ok_or(JetError::NonInvertible)?;
                    // g^(j)(a) = (-1)^(j-1) (j-1)! / a^j
                    let mut term = r.clone();
                    for j in 1..=k {
                        out.push(term.clone());
                        term = term.mul(&r).scale(&Rational::from_integer((-(j as i64)).into()));
                    }
                }
                Ok(out)
            })?
        }
    })
}

/// Whether the companion function (`cos` for `sin` and vice versa) is
/// needed. Evaluating only what is used keeps exact lifts at `a = 0` working.
fn needs_derivatives<S: Scalar>(u: &WeilElement<S>) -> bool {
    !u.nilpotent_part().is_zero()
}

fn cycle<S: Scalar>(period: [S; 4], k: usize) -> Vec<S> {
    (0..=k).map(|j| period[j % 4].clone()).collect()
}

/// `sum_{j<=k} derivs[j] / j! * n^j`, with `k` the nilpotency depth (or 0 when
/// `n` vanishes).
fn series<S: Scalar>(
    u: &WeilElement<S>,
    derivs: impl FnOnce(usize) -> Result<Vec<S>, JetError>,
) -> Result<WeilElement<S>, JetError> {
    let n = u.nilpotent_part();
    let k = if n.is_zero() { 0 } else { u.algebra().depth() as usize };
    let d = derivs(k)?;
    let mut acc = WeilElement::constant(u.algebra(), d[0].clone());
    let mut power = WeilElement::one(u.algebra(), &u.ctx());
    let mut factorial = Rational::from_integer(1.into());
    for (j, dj) in d.iter().enumerate().skip(1) {
        power = power.mul(&n)?;
        if power.is_zero() {
            break;
        }
        factorial *= Rational::from_integer((j as i64).into());
        acc = acc.add(&power.scale(&dj.scale(&factorial.recip())))?;
    }
    Ok(acc)
}
