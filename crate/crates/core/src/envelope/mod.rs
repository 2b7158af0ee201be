//! Envelopes of one-parameter families of plane curves `F(x, y, t) = 0`.
//!
//! The characteristic at `t0` is the set of points lying on every curve with
//! parameter infinitesimally near `t0`: `F(x, y, t0 + d) = 0` for square-zero
//! `d`, which unfolds to `F = 0, F_t = 0`. Eliminating `t` from that system
//! gives a polynomial whose zero set contains the envelope.

mod sample;
mod touch;

use thiserror::Error;

use crate::algebra::{resultant, AlgebraError, Polynomial};
use crate::expr::{parse, Expr, ParseError};
use crate::jet::{derivative_expr, taylor_lift, JetError, JetPoint};
use crate::scalar::Scalar;
use crate::weil::WeilAlgebra;

pub use sample::{sample_envelope, Sample, Sampling};
pub use touch::{touching_check, TOUCH_TOLERANCE};

/// Index of the parameter `t` among the family's variables `(x, y, t)`.
pub const T: usize = 2;

/// Variable names used when printing eliminants.
pub const NAMES: [&str; 3] = ["x", "y", "t"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnvelopeError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("family must be a function of x, y and t only: {0}")]
    Arity(String),
    #[error("singular point: touching undecidable")]
    Singular,
    #[error("point is not on {0}")]
    OffCurve(&'static str),
    #[error("locus has neither an eliminant nor enough samples near the point")]
    NoLocus,
}

/// A family of plane curves `S_t = {F(x, y, t) = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    f: Expr,
}

impl Family {
    pub fn new(f: Expr) -> Result<Self, EnvelopeError> {
        if f.arity() > 3 {
            return Err(EnvelopeError::Arity(f.fmt_with(&|i| NAMES.get(i).map_or(format!("x{}", i + 1), |s| s.to_string()))));
        }
        Ok(Family { f })
    }

    pub fn parse(s: &str) -> Result<Self, EnvelopeError> {
        Self::new(parse(s)?.expr)
    }

    pub fn expr(&self) -> &Expr {
        &self.f
    }

    /// `F` as a polynomial in `(x, y, t)`, when it is one.
    pub fn polynomial(&self) -> Option<Polynomial> {
        self.f.to_polynomial(3).ok()
    }
}

/// The pair `F = 0, F_t = 0` cutting out the characteristics.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicSystem {
    pub f: Expr,
    pub ft: Expr,
    /// `true` when `F_t` vanishes identically (the family does not move).
    pub degenerate: bool,
}

impl CharacteristicSystem {
    /// `(F, F_t)` as polynomials, when `F` is polynomial.
    pub fn polynomials(&self) -> Option<(Polynomial, Polynomial)> {
        Some((self.f.to_polynomial(3).ok()?, self.ft.to_polynomial(3).ok()?))
    }
}

/// `F_t` is the coefficient of `d` in `F(x, y, t + d)`, computed by lifting
/// `F` with symbolic coordinates.
pub fn characteristic_system(fam: &Family) -> Result<CharacteristicSystem, EnvelopeError> {
    let ft = derivative_expr(&fam.f, T, 3)?;
    let degenerate = match ft.to_polynomial(3) {
        Ok(p) => p.is_zero(),
        Err(_) => ft.is_zero(),
    };
    Ok(CharacteristicSystem { f: fam.f.clone(), ft, degenerate })
}

/// Whether `(x, y)` lies on the characteristic at `t0`: `F(x, y, t0 + d)`
/// must vanish in the dual numbers, both its value and its `d`-coefficient.
pub fn synthetic_characteristic_check<S: Scalar>(fam: &Family, t0: &S, pt: (&S, &S)) -> Result<bool, EnvelopeError> {
    let base = vec![pt.0.clone(), pt.1.clone(), t0.clone()];
    let point = JetPoint::along(&WeilAlgebra::dual(), base, T)?;
    Ok(taylor_lift(&fam.f, &point)?.is_zero())
}

/// Result of envelope elimination.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EnvelopeLocus {
    /// `Res_t(F, F_t)` as a polynomial in `x, y` (polynomial families only).
    pub eliminant: Option<Polynomial>,
    /// Points solving `F = F_t = 0` on a parameter grid.
    pub samples: Vec<Sample>,
    /// The eliminant vanishes identically, or the family does not depend on
    /// `t`.
    pub degenerate: bool,
}

impl EnvelopeLocus {
    pub fn eliminant_string(&self) -> Option<String> {
        self.eliminant.as_ref().map(|p| p.display_with(&NAMES).to_string())
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnvelopeOptions {
    /// Replace the eliminant by its squarefree part.
    pub squarefree: bool,
    /// Also solve the characteristic system numerically on this grid.
    /// Non-polynomial families are always sampled, on
    /// [`Sampling::default`] when no grid is given.
    pub sampling: Option<Sampling>,
}

/// Eliminates `t` from `F = F_t = 0`.
pub fn envelope_eliminate(fam: &Family, opts: &EnvelopeOptions) -> Result<EnvelopeLocus, EnvelopeError> {
    let sys = characteristic_system(fam)?;
    let mut locus = EnvelopeLocus { degenerate: sys.degenerate, ..Default::default() };
    match sys.polynomials() {
        Some((f, ft)) => {
            let elim = eliminant(&f, &ft)?;
            let elim = if opts.squarefree { elim.squarefree_part() } else { elim };
            locus.degenerate |= elim.is_zero();
            locus.eliminant = Some(elim);
            if let Some(grid) = &opts.sampling {
                locus.samples = sample_envelope(&sys, grid)?;
            }
        }
        None => {
            let grid = opts.sampling.clone().unwrap_or_default();
            locus.samples = sample_envelope(&sys, &grid)?;
        }
    }
    Ok(locus)
}

/// `Res_t(F, F_t)`, extended to the cases the Sylvester matrix does not
/// cover: a `t`-free `F_t` gives `F_t^deg_t(F)`, a `t`-free `F` gives zero.
fn eliminant(f: &Polynomial, ft: &Polynomial) -> Result<Polynomial, EnvelopeError> {
    if ft.is_zero() || !f.contains_var(T) {
        return Ok(Polynomial::zero(3));
    }
    if !ft.contains_var(T) {
        return Ok(ft.pow(f.degree_in(T).unwrap_or(0)));
    }
    Ok(resultant(f, ft, T)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn p(s: &str) -> Polynomial {
        crate::algebra::parse_polynomial(s).unwrap().with_nvars(3)
    }

    #[test]
    fn characteristic_systems() {
        let courant = characteristic_system(&Family::parse("y-(x-t)^3").unwrap()).unwrap();
        assert_eq!(courant.polynomials().unwrap().1, p("3*(x-t)^2"));
        assert!(!courant.degenerate);
        let circles = characteristic_system(&Family::parse("(x-t)^2+y^2-1").unwrap()).unwrap();
        assert_eq!(circles.polynomials().unwrap().1, p("-2*(x-t)"));
        let still = characteristic_system(&Family::parse("x^2+y^2-1").unwrap()).unwrap();
        assert!(still.degenerate);
    }

    #[test]
    fn symbolic_ft_agrees_with_polynomial_partial() {
        for src in ["y-(x-t)^3", "y-2*t*x+t^2", "(x-t)^2+y^2-1", "t^3*x*y - 5*t + y^2"] {
            let fam = Family::parse(src).unwrap();
            let (f, ft) = characteristic_system(&fam).unwrap().polynomials().unwrap();
            assert_eq!(ft, f.partial(T), "{src}");
        }
    }

    #[test]
    fn synthetic_characteristics() {
        let courant = Family::parse("y-(x-t)^3").unwrap();
        for t0 in [rat(0), ratio(3, 7), rat(-5)] {
            assert!(synthetic_characteristic_check(&courant, &t0, (&t0, &rat(0))).unwrap());
            assert!(!synthetic_characteristic_check(&courant, &t0, (&t0, &rat(1))).unwrap());
        }
        let circles = Family::parse("(x-t)^2+y^2-1").unwrap();
        assert!(synthetic_characteristic_check(&circles, &rat(0), (&rat(0), &rat(1))).unwrap());
        assert!(!synthetic_characteristic_check(&circles, &rat(0), (&rat(0), &rat(0))).unwrap());
    }

    #[test]
    fn eliminants() {
        let opts = EnvelopeOptions::default();
        let courant = envelope_eliminate(&Family::parse("y-(x-t)^3").unwrap(), &opts).unwrap();
        assert_eq!(courant.eliminant_string().unwrap(), "27*y^2");
        assert!(!courant.degenerate);
        let parabola = envelope_eliminate(&Family::parse("y-2*t*x+t^2").unwrap(), &opts).unwrap();
        assert_eq!(parabola.eliminant.unwrap(), p("4*y-4*x^2"));
        let circles = envelope_eliminate(&Family::parse("(x-t)^2+y^2-1").unwrap(), &opts).unwrap();
        assert_eq!(circles.eliminant.unwrap(), p("4*y^2-4"));
        let still = envelope_eliminate(&Family::parse("x+y").unwrap(), &opts).unwrap();
        assert!(still.degenerate);
        assert!(still.eliminant.unwrap().is_zero());
    }

    #[test]
    fn eliminant_for_ft_free_of_t() {
        // F_t = -x does not involve t, so the eliminant is F_t itself
        let lines = envelope_eliminate(&Family::parse("y - t*x").unwrap(), &EnvelopeOptions::default()).unwrap();
        assert_eq!(lines.eliminant.unwrap(), p("-x"));
    }

    #[test]
    fn squarefree_option() {
        let opts = EnvelopeOptions { squarefree: true, ..Default::default() };
        let courant = envelope_eliminate(&Family::parse("y-(x-t)^3").unwrap(), &opts).unwrap();
        assert_eq!(courant.eliminant.unwrap(), p("27*y"));
    }

    #[test]
    fn non_polynomial_family_falls_back_to_sampling() {
        // circles of radius 1 centred on (t, 0), in disguise
        let fam = Family::parse("exp((x-t)^2+y^2-1) - 1").unwrap();
        let opts = EnvelopeOptions { squarefree: false, sampling: Some(Sampling::range(-1.0, 1.0, 5)) };
        let locus = envelope_eliminate(&fam, &opts).unwrap();
        assert!(locus.eliminant.is_none());
        assert!(!locus.samples.is_empty());
        for s in &locus.samples {
            assert!((s.y.abs() - 1.0).abs() < 1e-6, "{s:?}");
            assert!((s.x - s.t).abs() < 1e-6, "{s:?}");
        }
    }
}
