//! Coefficient rings for jet computations.
//!
//! Exact work uses [`Rational`] (or [`Polynomial`] when base points are
//! symbolic); numeric work uses `f64` or the arbitrary-precision [`Float`].
//! Transcendental functions are only available where their values are
//! representable: a rational `exp(0)` is fine, a rational `exp(1)` is not.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{rat, Polynomial, Rational};

/// Default mantissa length for [`Float`] in bits.
pub const DEFAULT_PRECISION: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{func} is not exactly representable at {at} in exact mode")]
    Inexact { func: &'static str, at: String },
    #[error("{func} is undefined at {at}")]
    Domain { func: &'static str, at: String },
}

/// A commutative ring of coefficients, possibly with a partial inverse and
/// partial elementary functions.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    /// Construction context: nothing for rationals, the number of variables
    /// for polynomials, the precision for floats.
    type Ctx: Clone + fmt::Debug + PartialEq;

    fn ctx(&self) -> Self::Ctx;
    fn from_rational(r: &Rational, ctx: &Self::Ctx) -> Self;

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_rational(&<Rational as num_traits::Zero>::zero(), ctx)
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_rational(&<Rational as num_traits::One>::one(), ctx)
    }

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, `None` for non-units.
    fn inv(&self) -> Option<Self>;

    fn scale(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rational(r, &self.ctx()))
    }

    fn exp(&self) -> Result<Self, ScalarError>;
    fn ln(&self) -> Result<Self, ScalarError>;
    fn sin(&self) -> Result<Self, ScalarError>;
    fn cos(&self) -> Result<Self, ScalarError>;

    /// `true` for the exact coefficient rings.
    fn is_exact() -> bool;
}

impl Scalar for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn from_rational(r: &Rational, _: &()) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn exp(&self) -> Result<Self, ScalarError> {
        if Zero::is_zero(self) {
            Ok(rat(1))
        } else {
            Err(ScalarError::Inexact { func: "exp", at: self.to_string() })
        }
    }
    fn ln(&self) -> Result<Self, ScalarError> {
        if !self.is_positive() {
            Err(ScalarError::Domain { func: "log", at: self.to_string() })
        } else if self.is_one() {
            Ok(rat(0))
        } else {
            Err(ScalarError::Inexact { func: "log", at: self.to_string() })
        }
    }
    fn sin(&self) -> Result<Self, ScalarError> {
        if Zero::is_zero(self) {
            Ok(rat(0))
        } else {
            Err(ScalarError::Inexact { func: "sin", at: self.to_string() })
        }
    }
    fn cos(&self) -> Result<Self, ScalarError> {
        if Zero::is_zero(self) {
            Ok(rat(1))
        } else {
            Err(ScalarError::Inexact { func: "cos", at: self.to_string() })
        }
    }
    fn is_exact() -> bool {
        true
    }
}

/// Symbolic coefficients: polynomials over the rationals. Only nonzero
/// constants are invertible.
impl Scalar for Polynomial {
    type Ctx = usize;

    fn ctx(&self) -> usize {
        self.nvars()
    }
    fn from_rational(r: &Rational, nvars: &usize) -> Self {
        Polynomial::constant(r.clone(), *nvars)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_constant() && !Polynomial::is_zero(self) {
            Some(Polynomial::constant(self.constant_term().recip(), self.nvars()))
        } else {
            None
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        Polynomial::scale(self, r)
    }
    fn exp(&self) -> Result<Self, ScalarError> {
        constant_only(self, "exp", Scalar::exp)
    }
    fn ln(&self) -> Result<Self, ScalarError> {
        constant_only(self, "log", Scalar::ln)
    }
    fn sin(&self) -> Result<Self, ScalarError> {
        constant_only(self, "sin", Scalar::sin)
    }
    fn cos(&self) -> Result<Self, ScalarError> {
        constant_only(self, "cos", Scalar::cos)
    }
    fn is_exact() -> bool {
        true
    }
}

fn constant_only(
    p: &Polynomial,
    func: &'static str,
    f: impl Fn(&Rational) -> Result<Rational, ScalarError>,
) -> Result<Polynomial, ScalarError> {
    if !p.is_constant() {
        return Err(ScalarError::Inexact { func, at: p.to_string() });
    }
    Ok(Polynomial::constant(f(&p.constant_term())?, p.nvars()))
}

impl Scalar for f64 {
    type Ctx = ();

    fn ctx(&self) {}
    fn from_rational(r: &Rational, _: &()) -> Self {
        crate::algebra::to_f64(r)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn exp(&self) -> Result<Self, ScalarError> {
        Ok(f64::exp(*self))
    }
    fn ln(&self) -> Result<Self, ScalarError> {
        if *self > 0.0 {
            Ok(f64::ln(*self))
        } else {
            Err(ScalarError::Domain { func: "log", at: self.to_string() })
        }
    }
    fn sin(&self) -> Result<Self, ScalarError> {
        Ok(f64::sin(*self))
    }
    fn cos(&self) -> Result<Self, ScalarError> {
        Ok(f64::cos(*self))
    }
    fn is_exact() -> bool {
        false
    }
}

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Binary floating-point number with a configurable mantissa length.
#[derive(Clone, Debug)]
pub struct Float {
    value: BigFloat,
    prec: usize,
}

impl Float {
    pub fn from_f64(x: f64, prec: usize) -> Self {
        Float { value: BigFloat::from_f64(x, prec), prec }
    }

    pub fn from_rational_prec(r: &Rational, prec: usize) -> Self {
        let parse = |s: String| with_consts(|cc| BigFloat::parse(&s, Radix::Dec, prec + 64, RM, cc));
        let n = parse(r.numer().to_string());
        let d = parse(r.denom().to_string());
        Float { value: n.div(&d, prec, RM), prec }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn as_bigfloat(&self) -> &BigFloat {
        &self.value
    }

    pub fn to_f64(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        self.value.to_string().parse().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Self {
        Float { value: self.value.abs(), prec: self.prec }
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        Float { value: self.value.div(&o.value, p, RM), prec: p }
    }

    pub fn is_nan(&self) -> bool {
        self.value.is_nan()
    }

    fn wrap(&self, value: BigFloat, func: &'static str) -> Result<Self, ScalarError> {
        if value.is_nan() || value.is_inf() {
            Err(ScalarError::Domain { func, at: self.to_string() })
        } else {
            Ok(Float { value, prec: self.prec })
        }
    }
}

impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Scalar for Float {
    type Ctx = usize;

    fn ctx(&self) -> usize {
        self.prec
    }
    fn from_rational(r: &Rational, prec: &usize) -> Self {
        if let (Some(n), true) = (r.numer().to_i64(), r.denom().is_one()) {
            return Float { value: BigFloat::from_i64(n, *prec), prec: *prec };
        }
        Self::from_rational_prec(r, *prec)
    }
    fn add(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        Float { value: self.value.add(&o.value, p, RM), prec: p }
    }
    fn sub(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        Float { value: self.value.sub(&o.value, p, RM), prec: p }
    }
    fn mul(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        Float { value: self.value.mul(&o.value, p, RM), prec: p }
    }
    fn neg(&self) -> Self {
        Float { value: self.value.neg(), prec: self.prec }
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        (!self.value.is_zero()).then(|| Float { value: self.value.reciprocal(self.prec, RM), prec: self.prec })
    }
    fn exp(&self) -> Result<Self, ScalarError> {
        let v = with_consts(|cc| self.value.exp(self.prec, RM, cc));
        self.wrap(v, "exp")
    }
    fn ln(&self) -> Result<Self, ScalarError> {
        if !self.value.is_positive() || self.value.is_zero() {
            return Err(ScalarError::Domain { func: "log", at: self.to_string() });
        }
        let v = with_consts(|cc| self.value.ln(self.prec, RM, cc));
        self.wrap(v, "log")
    }
    fn sin(&self) -> Result<Self, ScalarError> {
        let v = with_consts(|cc| self.value.sin(self.prec, RM, cc));
        self.wrap(v, "sin")
    }
    fn cos(&self) -> Result<Self, ScalarError> {
        let v = with_consts(|cc| self.value.cos(self.prec, RM, cc));
        self.wrap(v, "cos")
    }
    fn is_exact() -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn exact_transcendentals_only_at_special_points() {
        assert_eq!(Scalar::exp(&rat(0)).unwrap(), rat(1));
        assert_eq!(Scalar::ln(&rat(1)).unwrap(), rat(0));
        assert!(matches!(Scalar::exp(&rat(1)), Err(ScalarError::Inexact { .. })));
        assert!(matches!(Scalar::ln(&rat(-1)), Err(ScalarError::Domain { .. })));
    }

    #[test]
    fn float_from_rational_is_correctly_rounded() {
        let third = Float::from_rational(&ratio(1, 3), &DEFAULT_PRECISION);
        let back = third.mul(&Float::from_rational(&rat(3), &DEFAULT_PRECISION));
        let err = back.sub(&Float::one(&DEFAULT_PRECISION)).abs();
        assert!(err.to_f64() < 1e-70);
        assert!((Float::from_rational(&ratio(-7, 4), &64).to_f64() + 1.75).abs() < 1e-15);
    }

    #[test]
    fn float_log_rejects_nonpositive() {
        let z = Float::zero(&128);
        assert!(matches!(z.ln(), Err(ScalarError::Domain { .. })));
        let e = Float::one(&128).exp().unwrap();
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
    }
}
