use std::fmt;
use std::sync::Arc;

use crate::algebra::{Monomial, Polynomial, Rational};
use crate::scalar::Scalar;

use super::{WeilAlgebra, WeilError};

/// An element of a Weil algebra: coefficients on the algebra's monomial basis.
#[derive(Clone, Debug)]
pub struct WeilElement<S: Scalar> {
    algebra: Arc<WeilAlgebra>,
    coeffs: Vec<S>,
}

impl<S: Scalar> PartialEq for WeilElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> WeilElement<S> {
    pub fn from_coeffs(algebra: &Arc<WeilAlgebra>, coeffs: Vec<S>) -> Result<Self, WeilError> {
        if coeffs.len() != algebra.dim() {
            return Err(WeilError::Length { expected: algebra.dim(), got: coeffs.len() });
        }
        Ok(WeilElement { algebra: algebra.clone(), coeffs })
    }

    pub fn zero(algebra: &Arc<WeilAlgebra>, ctx: &S::Ctx) -> Self {
        WeilElement { algebra: algebra.clone(), coeffs: vec![S::zero(ctx); algebra.dim()] }
    }

    pub fn constant(algebra: &Arc<WeilAlgebra>, c: S) -> Self {
        let mut e = Self::zero(algebra, &c.ctx());
        e.coeffs[0] = c;
        e
    }

    pub fn one(algebra: &Arc<WeilAlgebra>, ctx: &S::Ctx) -> Self {
        Self::constant(algebra, S::one(ctx))
    }

    /// The generator `x_{i+1}` reduced into the algebra.
    pub fn generator(algebra: &Arc<WeilAlgebra>, i: usize, ctx: &S::Ctx) -> Result<Self, WeilError> {
        if i >= algebra.nvars() {
            return Err(WeilError::NoSuchGenerator { index: i, nvars: algebra.nvars() });
        }
        Ok(Self::from_polynomial(algebra, &Polynomial::var(i, algebra.nvars()), ctx))
    }

    /// Reduces a rational polynomial into the algebra.
    pub fn from_polynomial(algebra: &Arc<WeilAlgebra>, p: &Polynomial, ctx: &S::Ctx) -> Self {
        let coeffs = algebra.coordinates(p).iter().map(|c| S::from_rational(c, ctx)).collect();
        WeilElement { algebra: algebra.clone(), coeffs }
    }

    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of a basis monomial (zero for non-basis monomials).
    pub fn coeff(&self, m: &Monomial) -> S {
        match self.algebra.index_of(m) {
            Some(i) => self.coeffs[i].clone(),
            None => S::zero(&self.ctx()),
        }
    }

    pub fn ctx(&self) -> S::Ctx {
        self.coeffs[0].ctx()
    }

    /// The constant term: evaluation at the base point.
    pub fn augmentation(&self) -> &S {
        &self.coeffs[0]
    }

    /// The element minus its constant term.
    pub fn nilpotent_part(&self) -> Self {
        let mut e = self.clone();
        e.coeffs[0] = S::zero(&self.ctx());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    fn check(&self, other: &Self) -> Result<(), WeilError> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(WeilError::AlgebraMismatch(self.algebra.name().into(), other.algebra.name().into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, WeilError> {
        self.check(other)?;
        Ok(self.zip(other, S::add))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WeilError> {
        self.check(other)?;
        Ok(self.zip(other, S::sub))
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        WeilElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(S::neg)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn add_scalar(&self, s: &S) -> Self {
        let mut e = self.clone();
        e.coeffs[0] = e.coeffs[0].add(s);
        e
    }

    fn map(&self, f: impl Fn(&S) -> S) -> Self {
        WeilElement { algebra: self.algebra.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, WeilError> {
        self.check(other)?;
        let ctx = self.ctx();
        let mut out = vec![S::zero(&ctx); self.algebra.dim()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some((k, c)) = self.algebra.product(i, j) {
                    let term = a.mul(b);
                    let term = if crate::algebra::is_one(c) { term } else { term.scale(c) };
                    out[*k] = out[*k].add(&term);
                }
            }
        }
        Ok(WeilElement { algebra: self.algebra.clone(), coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.algebra, &self.ctx());
        for _ in 0..e {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }

    /// Inverse, defined exactly when the augmentation is a unit:
    /// `1/(a + n) = sum_k (-1)^k n^k / a^(k+1)`.
    pub fn inv(&self) -> Result<Self, WeilError> {
        let a_inv = self.augmentation().inv().ok_or(WeilError::NonInvertible)?;
        let n = self.nilpotent_part();
        let ratio = n.scale(&a_inv.neg());
        let mut term = Self::constant(&self.algebra, a_inv.clone());
        let mut acc = term.clone();
        for _ in 0..self.algebra.depth() {
            term = term.mul(&ratio)?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Smallest `k` with `self^(k+1) = 0`; `None` when the element is not
    /// nilpotent (its augmentation is nonzero).
    pub fn nilpotency_order(&self) -> Option<u32> {
        if !self.augmentation().is_zero() {
            return None;
        }
        let mut power = self.clone();
        let mut k = 0;
        while !power.is_zero() {
            power = power.mul(self).expect("same algebra");
            k += 1;
        }
        Some(k)
    }

    /// Formats with the algebra's generators named by `name`.
    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(self.algebra.basis())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| {
                if m.is_one() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, m.fmt_with(name))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl WeilElement<Rational> {
    /// The element as a polynomial in the generators (basis representative).
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.algebra.basis().iter().cloned().zip(self.coeffs.iter().cloned()),
            self.algebra.nvars(),
        )
    }
}

impl<S: Scalar> fmt::Display for WeilElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&|v| format!("x{}", v + 1)))
    }
}
