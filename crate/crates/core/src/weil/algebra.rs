use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Monomial, Polynomial, Rational, RewriteSystem, Rule};

use super::WeilError;

/// Abort basis enumeration beyond this many monomials.
pub const BASIS_LIMIT: usize = 10_000;

/// A finite-dimensional quotient `Q[x1..xn] / I` whose generators are
/// nilpotent.
///
/// The basis consists of the monomials irreducible under the (confluent)
/// rewrite system of `I`, listed in increasing monomial order, so `basis[0]`
/// is always `1`. Products of basis monomials are tabulated once at
/// construction.
#[derive(Clone, Debug)]
pub struct WeilAlgebra {
    name: String,
    nvars: usize,
    rules: RewriteSystem,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    table: Vec<Option<(usize, Rational)>>,
    depth: u32,
}

impl PartialEq for WeilAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.basis == other.basis && self.table == other.table
    }
}

impl Eq for WeilAlgebra {}

impl WeilAlgebra {
    /// Builds the algebra of a confluent rewrite system.
    pub fn from_rewrite_system(name: impl Into<String>, rules: RewriteSystem) -> Result<Arc<Self>, WeilError> {
        let nvars = rules.nvars();
        let basis = enumerate_basis(&rules, nvars)?;
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = basis.len();
        let mut table = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                table.push(rules.reduce_monomial(&a.mul(b)).map(|(c, m)| (index[&m], c)));
            }
        }
        let mut alg = WeilAlgebra { name: name.into(), nvars, rules, basis, index, table, depth: 0 };
        alg.depth = alg.nilpotency_depth()?;
        Ok(Arc::new(alg))
    }

    /// Builds from rewrite rules, rejecting non-confluent systems.
    pub fn from_rules(name: impl Into<String>, nvars: usize, rules: Vec<Rule>) -> Result<Arc<Self>, WeilError> {
        Self::from_rewrite_system(name, RewriteSystem::new(nvars, rules)?)
    }

    /// Builds from relations `lhs = rhs`; the relations are oriented and
    /// completed to a confluent system first.
    pub fn build(nvars: usize, relations: &[(Polynomial, Polynomial)]) -> Result<Arc<Self>, WeilError> {
        let rules = RewriteSystem::from_relations(nvars, relations)?;
        Self::from_rewrite_system(format!("Q[x1..x{nvars}]/I"), rules)
    }

    /// The rationals themselves: no variables, dimension one.
    pub fn trivial() -> Arc<Self> {
        Self::from_rules("Q", 0, Vec::new()).expect("trivial algebra")
    }

    /// Dual numbers `Q[x]/(x^2)`.
    pub fn dual() -> Arc<Self> {
        Self::order_k(1, 1).renamed("D")
    }

    /// First-order neighbourhood `D(n)`: all products `xi*xj` vanish.
    pub fn first_order(n: usize) -> Arc<Self> {
        Self::order_k(1, n).renamed(&format!("D({n})"))
    }

    /// `D_k(n)`: all products of `k+1` generators vanish.
    pub fn order_k(k: u32, n: usize) -> Arc<Self> {
        let rules = monomials_of_degree(n, k + 1)
            .into_iter()
            .map(|m| Rule::to_zero(m, n))
            .collect();
        Self::from_rules(format!("D_{k}({n})"), n, rules).expect("monomial ideals are confluent")
    }

    /// `D_2 = {x : x^3 = 0}`.
    pub fn second_order() -> Arc<Self> {
        Self::order_k(2, 1).renamed("D_2")
    }

    /// The four-dimensional Laplace algebra `x1^2 = x2^2, x1*x2 = 0`.
    pub fn laplace() -> Arc<Self> {
        let rules = vec![
            Rule::to_zero(Monomial::from_exponents(&[1, 1]), 2),
            Rule::to_term(Monomial::var_pow(1, 2), Rational::from_integer(1.into()), Monomial::var_pow(0, 2), 2),
            Rule::to_zero(Monomial::var_pow(0, 3), 2),
        ];
        Self::from_rules("D_L", 2, rules).expect("Laplace presentation is confluent")
    }

    /// Tensor product: the generators of `b` are renamed after those of `a`.
    pub fn tensor(a: &WeilAlgebra, b: &WeilAlgebra) -> Arc<Self> {
        let rules = a
            .rules
            .union(&b.rules.shifted(a.nvars))
            .expect("rules on disjoint variables stay confluent");
        let name = format!("{}⊗{}", a.name, b.name);
        Self::from_rewrite_system(name, rules).expect("tensor of Weil algebras is Weil")
    }

    fn renamed(self: Arc<Self>, name: &str) -> Arc<Self> {
        let mut alg = Arc::unwrap_or_clone(self);
        alg.name = name.to_string();
        Arc::new(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn rules(&self) -> &RewriteSystem {
        &self.rules
    }

    /// Largest total degree among the basis monomials.
    pub fn order(&self) -> u32 {
        self.basis.last().map_or(0, Monomial::degree)
    }

    /// Smallest `N` with `m^(N+1) = 0` for the augmentation ideal `m`. Equal
    /// to [`order`](Self::order) for graded presentations; larger when a
    /// relation identifies a monomial with one of lower degree.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Reduced product of basis monomials `i` and `j`.
    pub fn product(&self, i: usize, j: usize) -> Option<&(usize, Rational)> {
        self.table[i * self.dim() + j].as_ref()
    }

    /// Normal form of a polynomial, as coordinates on the basis.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<Rational> {
        let mut out = vec![Rational::from_integer(0.into()); self.dim()];
        for (m, c) in self.rules.normal_form(p).terms() {
            out[self.index[m]] += c;
        }
        out
    }

    /// Smallest `N` such that every monomial of degree `N+1` reduces to zero.
    fn nilpotency_depth(&self) -> Result<u32, WeilError> {
        let mut level: Vec<usize> = vec![0];
        let mut depth = 0u32;
        loop {
            let mut next = vec![false; self.dim()];
            for &b in &level {
                for v in 0..self.nvars {
                    if let Some((_, k)) = self.rules.reduce_monomial(&self.basis[b].mul(&Monomial::var(v))) {
                        next[self.index[&k]] = true;
                    }
                }
            }
            level = next.iter().enumerate().filter(|(_, &on)| on).map(|(i, _)| i).collect();
            if level.is_empty() {
                return Ok(depth);
            }
            depth += 1;
            if depth as usize > self.dim() {
                let culprit = (0..self.nvars)
                    .find(|&v| {
                        self.rules
                            .reduce_monomial(&Monomial::var_pow(v, self.dim() as u32 + 1))
                            .is_some()
                    })
                    .unwrap_or(0);
                return Err(WeilError::NotWeil(format!("generator x{} is not nilpotent", culprit + 1)));
            }
        }
    }
}

fn enumerate_basis(rules: &RewriteSystem, nvars: usize) -> Result<Vec<Monomial>, WeilError> {
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::from([Monomial::one()]);
    seen.insert(Monomial::one());
    while let Some(m) = queue.pop_front() {
        for v in 0..nvars {
            let next = m.mul(&Monomial::var(v));
            if rules.is_irreducible(&next) && seen.insert(next.clone()) {
                if seen.len() > BASIS_LIMIT {
                    return Err(WeilError::InfiniteDimensional(BASIS_LIMIT));
                }
                queue.push_back(next);
            }
        }
    }
    let mut basis: Vec<Monomial> = seen.into_iter().collect();
    basis.sort();
    Ok(basis)
}

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, var: usize, left: u32, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == n {
            acc[var] = left;
            out.push(Monomial::from_exponents(acc));
            acc[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            acc[var] = e;
            go(n, var + 1, left - e, acc, out);
        }
        acc[var] = 0;
    }
    if n == 0 {
        return if d == 0 { vec![Monomial::one()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    go(n, 0, d, &mut vec![0; n], &mut out);
    out
}

impl fmt::Display for WeilAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn binomial(n: usize, k: usize) -> usize {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn named_dimensions() {
        assert_eq!(WeilAlgebra::dual().dim(), 2);
        assert_eq!(WeilAlgebra::first_order(2).dim(), 3);
        assert_eq!(WeilAlgebra::laplace().dim(), 4);
        assert_eq!(WeilAlgebra::second_order().dim(), 3);
        assert_eq!(WeilAlgebra::trivial().dim(), 1);
        for n in 1..=4 {
            assert_eq!(WeilAlgebra::first_order(n).dim(), n + 1);
            for k in 1..=4u32 {
                assert_eq!(WeilAlgebra::order_k(k, n).dim(), binomial(n + k as usize, k as usize));
            }
        }
    }

    #[test]
    fn laplace_basis() {
        let dl = WeilAlgebra::laplace();
        let expected = vec![
            Monomial::one(),
            Monomial::var(0),
            Monomial::var(1),
            Monomial::var_pow(0, 2),
        ];
        assert_eq!(dl.basis(), &expected[..]);
        assert_eq!(dl.order(), 2);
    }

    #[test]
    fn tensor_products() {
        let d = WeilAlgebra::dual();
        let dd = WeilAlgebra::tensor(&d, &d);
        assert_eq!(dd.dim(), 4);
        assert!(dd.index_of(&Monomial::from_exponents(&[1, 1])).is_some());
        assert_eq!(*WeilAlgebra::tensor(&d, &WeilAlgebra::trivial()), *d);
        assert_eq!(WeilAlgebra::tensor(&WeilAlgebra::first_order(2), &d).dim(), 6);
    }

    #[test]
    fn infinite_quotient_is_rejected() {
        let x1 = Polynomial::var(0, 2);
        let err = WeilAlgebra::build(2, &[(x1.pow(2), Polynomial::zero(2))]).unwrap_err();
        assert!(matches!(err, WeilError::InfiniteDimensional(_)));
    }

    #[test]
    fn idempotent_generator_is_not_weil() {
        let x = Polynomial::var(0, 1);
        let err = WeilAlgebra::build(1, &[(x.pow(2), x.clone())]).unwrap_err();
        assert!(matches!(err, WeilError::NotWeil(_)));
    }

    #[test]
    fn non_graded_presentation_depth_exceeds_order() {
        // x^2 = y, y^2 = 0 is Q[x]/(x^4)
        let x = Polynomial::var(0, 2);
        let y = Polynomial::var(1, 2);
        let alg = WeilAlgebra::build(2, &[(y.clone(), x.pow(2)), (y.pow(2), Polynomial::zero(2))]).unwrap();
        assert_eq!(alg.dim(), 4);
        assert_eq!(alg.order(), 2);
        assert_eq!(alg.depth(), 3);
        assert_eq!(alg.coordinates(&x.pow(4)), vec![rat(0); 4]);
    }
}
