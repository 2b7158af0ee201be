use std::cmp::Ordering;
use std::fmt;

/// A power product `x_{i1}^{e1} ... x_{ik}^{ek}` stored sparsely: pairs
/// `(variable, exponent)` sorted by variable, exponents never zero.
///
/// Monomials are ordered graded-lexicographically with the highest-indexed
/// variable dominating ties, so `x2^2 > x1*x2 > x1^2` and relations such as
/// `x2^2 = x1^2` orient as `x2^2 -> x1^2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![(i, 1)])
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(vec![(i, e)])
        }
    }

    /// Builds from a dense exponent vector.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect(),
        )
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        pairs
            .into_iter()
            .fold(Self::one(), |m, (i, e)| m.mul(&Self::var_pow(i, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0
            .binary_search_by_key(&i, |&(v, _)| v)
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().copied()
    }

    fn merge(&self, other: &Self, f: impl Fn(u32, u32) -> i64) -> Option<Self> {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        loop {
            let (v, ea, eb) = match (a.get(i), b.get(j)) {
                (None, None) => break,
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, ea, 0)
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, 0, eb)
                }
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        i += 1;
                        (va, ea, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, 0, eb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, ea, eb)
                    }
                },
            };
            let e = f(ea, eb);
            if e < 0 {
                return None;
            }
            if e > 0 {
                out.push((v, e as u32));
            }
        }
        Some(Monomial(out))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a as i64 + b as i64).expect("exponents are nonnegative")
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.merge(other, |a, b| a as i64 - b as i64)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a.max(b) as i64).expect("nonnegative")
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a.min(b) as i64).expect("nonnegative")
    }

    /// Renames every variable `i` to `i + offset`.
    pub fn shift(&self, offset: usize) -> Self {
        Monomial(self.0.iter().map(|&(v, e)| (v + offset, e)).collect())
    }

    /// Drops variable `i`, returning its exponent and the remaining monomial.
    pub fn split_var(&self, i: usize) -> (u32, Self) {
        let e = self.exponent(i);
        (e, Monomial(self.0.iter().copied().filter(|&(v, _)| v != i).collect()))
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    names(v)
                } else {
                    format!("{}^{}", names(v), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (a.len(), b.len());
            while i > 0 || j > 0 {
                let ta = if i > 0 { Some(a[i - 1]) } else { None };
                let tb = if j > 0 { Some(b[j - 1]) } else { None };
                match (ta, tb) {
                    (Some((va, ea)), Some((vb, eb))) if va == vb => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i -= 1;
                        j -= 1;
                    }
                    (Some((va, _)), Some((vb, _))) => {
                        // whoever carries the higher variable is larger
                        return va.cmp(&vb);
                    }
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (None, None) => unreachable!(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&|v| format!("x{}", v + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order_with_last_variable_dominant() {
        let x1sq = Monomial::var_pow(0, 2);
        let x2sq = Monomial::var_pow(1, 2);
        let x1x2 = Monomial::from_exponents(&[1, 1]);
        assert!(x2sq > x1x2);
        assert!(x1x2 > x1sq);
        assert!(Monomial::var(0) < x1sq);
        assert!(Monomial::one() < Monomial::var(0));
        assert!(Monomial::var(0) < Monomial::var(1));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[1, 2]);
        let b = Monomial::from_exponents(&[2, 1]);
        assert_eq!(a.lcm(&b), Monomial::from_exponents(&[2, 2]));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.div(&b), None);
        assert_eq!(a.lcm(&b).div(&a), Some(Monomial::var(0)));
        assert_eq!(Monomial::from_exponents(&[0, 0, 3]).exponent(2), 3);
    }
}
