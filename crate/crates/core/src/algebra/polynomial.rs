use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{rat, Rational};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map ordered by the graded monomial order, so the last
/// entry is the leading term. Zero coefficients are never stored. `nvars` is
/// the number of variables of the ambient ring; binary operations on
/// polynomials with different `nvars` work in the larger ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rational::one(), nvars)
    }

    pub fn constant(c: Rational, nvars: usize) -> Self {
        Self::term(c, Monomial::one(), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Self::term(Rational::one(), Monomial::var(i), nvars.max(i + 1))
    }

    pub fn term(c: Rational, m: Monomial, nvars: usize) -> Self {
        let nvars = nvars.max(m.max_var().map_or(0, |v| v + 1));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The same polynomial viewed in a ring with at least `nvars` variables.
    pub fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = self.nvars.max(nvars);
        self
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in variable `v`; `None` for the zero polynomial.
    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Highest-indexed variable that actually occurs.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        self.nvars = self.nvars.max(m.max_var().map_or(0, |v| v + 1));
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (k.mul(m), a * c)), self.nvars)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Evaluates at a rational point; missing coordinates are treated as zero.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = point.get(v).cloned().unwrap_or_else(Rational::zero);
                t *= num_traits::pow(x, e as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter().fold(super::rational::to_f64(c), |t, (v, e)| {
                    t * point.get(v).copied().unwrap_or(0.0).powi(e as i32)
                })
            })
            .sum()
    }

    /// Substitutes `value` for variable `v`.
    pub fn substitute(&self, v: usize, value: &Polynomial) -> Self {
        let nvars = self.nvars.max(value.nvars);
        let mut out = Self::zero(nvars);
        let mut powers: Vec<Polynomial> = vec![Self::one(nvars)];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out = out + powers[e as usize].mul_monomial(&rest, c);
        }
        out
    }

    /// Partial derivative in variable `v`.
    pub fn partial(&self, v: usize) -> Self {
        Self::from_terms(
            self.terms.iter().filter_map(|(m, c)| {
                let e = m.exponent(v);
                (e > 0).then(|| (m.div(&Monomial::var(v)).unwrap(), c * rat(e as i64)))
            }),
            self.nvars,
        )
    }

    /// Coefficients with respect to `v`: entry `k` is the coefficient of `v^k`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let nvars = self.nvars.max(divisor.nvars);
        let mut rem = self.clone().with_nvars(nvars);
        let mut quot = Self::zero(nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            rem = rem - divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Greatest common divisor, normalized to a monic polynomial (zero if
    /// both inputs are zero). Computed recursively by primitive
    /// pseudo-remainder sequences in the highest occurring variable.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let nvars = self.nvars.max(other.nvars);
        if self.is_zero() {
            return other.monic().with_nvars(nvars);
        }
        if other.is_zero() {
            return self.monic().with_nvars(nvars);
        }
        let v = match self.max_var().max(other.max_var()) {
            Some(v) => v,
            None => return Self::one(nvars),
        };
        if !self.contains_var(v) {
            return self.gcd(&other.content_in(v));
        }
        if !other.contains_var(v) {
            return other.gcd(&self.content_in(v));
        }
        let (ca, cb) = (self.content_in(v), other.content_in(v));
        let c = ca.gcd(&cb);
        let mut a = self.div_exact(&ca).expect("content divides");
        let mut b = other.div_exact(&cb).expect("content divides");
        if a.degree_in(v) < b.degree_in(v) {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b, v);
            if r.is_zero() {
                break;
            }
            if !r.contains_var(v) {
                b = Self::one(nvars);
                break;
            }
            a = b;
            b = r.primitive_part_in(v);
        }
        (&c * &b.primitive_part_in(v)).monic().with_nvars(nvars)
    }

    /// gcd of the coefficients with respect to `v`.
    pub fn content_in(&self, v: usize) -> Polynomial {
        self.coefficients_in(v)
            .into_iter()
            .filter(|c| !c.is_zero())
            .fold(Self::zero(self.nvars), |g, c| g.gcd(&c))
    }

    pub fn primitive_part_in(&self, v: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.div_exact(&self.content_in(v)).expect("content divides")
    }

    /// Pseudo-remainder of `self` by `divisor` with respect to `v`.
    pub fn pseudo_rem(&self, divisor: &Polynomial, v: usize) -> Polynomial {
        let db = divisor.degree_in(v).unwrap_or(0);
        let lcb = divisor.coefficients_in(v).pop().unwrap_or_else(|| Self::zero(self.nvars));
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(v).unwrap();
            if dr < db {
                break;
            }
            let lcr = r.coefficients_in(v).pop().unwrap();
            let shift = Polynomial::term(Rational::one(), Monomial::var_pow(v, dr - db), self.nvars);
            r = &(&lcb * &r) - &(&(&lcr * &shift) * divisor);
        }
        r
    }

    /// Removes repeated factors: `p / gcd(p, dp/dx_1, ..., dp/dx_n)`.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_constant() {
            return self.clone();
        }
        let g = (0..self.nvars)
            .filter(|&v| self.contains_var(v))
            .fold(self.clone(), |g, v| g.gcd(&self.partial(v)));
        self.div_exact(&g).expect("gcd divides")
    }

    /// Renames variable `i` to `i + offset`.
    pub fn shift_vars(&self, offset: usize) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(m, c)| (m.shift(offset), c.clone())),
            self.nvars + offset,
        )
    }

    /// Formats with the given variable names (falls back to `x{i+1}`).
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, names }
    }
}

struct DisplayWith<'a> {
    poly: &'a Polynomial,
    names: &'a [&'a str],
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let name = |v: usize| {
            self.names
                .get(v)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("x{}", v + 1))
        };
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&m.fmt_with(&name))?;
            } else {
                write!(f, "{abs}*{}", m.fmt_with(&name))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone().with_nvars(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone().with_nvars(rhs.nvars);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars.max(rhs.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
