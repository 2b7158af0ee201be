use std::fmt;

use num_traits::One;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::rational::Rational;
use super::AlgebraError;

/// Upper bound on the number of rules completion may create.
const COMPLETION_LIMIT: usize = 2000;

/// A rewrite rule `lhs -> rhs`, where `rhs` is zero or a single term whose
/// monomial is strictly smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: Polynomial,
}

impl Rule {
    pub fn to_zero(lhs: Monomial, nvars: usize) -> Self {
        Rule { lhs, rhs: Polynomial::zero(nvars) }
    }

    pub fn to_term(lhs: Monomial, c: Rational, m: Monomial, nvars: usize) -> Self {
        Rule { lhs, rhs: Polynomial::term(c, m, nvars) }
    }

    fn rhs_term(&self) -> Option<(&Monomial, &Rational)> {
        self.rhs.leading_term()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Confluent, terminating rewrite system for a binomial ideal.
///
/// Admitted rules send a monomial to zero or to a rational multiple of a
/// smaller monomial. Under those rules every monomial reduces to a single
/// term, so normal forms are computed term by term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    nvars: usize,
    rules: Vec<Rule>,
}

impl RewriteSystem {
    /// Validates the rules and checks every critical pair.
    pub fn new(nvars: usize, rules: Vec<Rule>) -> Result<Self, AlgebraError> {
        let system = Self::unchecked(nvars, rules)?;
        if let Some((overlap, left, right)) = system.first_unjoinable_pair() {
            return Err(AlgebraError::NotConfluent {
                overlap: overlap.to_string(),
                left: left.to_string(),
                right: right.to_string(),
            });
        }
        Ok(system)
    }

    /// Like [`RewriteSystem::new`] but adds the rules needed to make the
    /// system confluent instead of rejecting it.
    pub fn complete(nvars: usize, rules: Vec<Rule>) -> Result<Self, AlgebraError> {
        let mut system = Self::unchecked(nvars, rules)?;
        while let Some((_, left, right)) = system.first_unjoinable_pair() {
            if system.rules.len() >= COMPLETION_LIMIT {
                return Err(AlgebraError::CompletionLimit(COMPLETION_LIMIT));
            }
            let rule = orient(&(&left - &right), nvars)?.expect("unjoinable pair has nonzero difference");
            system.rules.push(rule);
        }
        system.interreduce();
        Ok(system)
    }

    /// Orients relations `lhs = rhs` into rules and completes them.
    pub fn from_relations(nvars: usize, relations: &[(Polynomial, Polynomial)]) -> Result<Self, AlgebraError> {
        let mut rules = Vec::new();
        for (l, r) in relations {
            if let Some(rule) = orient(&(l - r), nvars)? {
                rules.push(rule);
            }
        }
        Self::complete(nvars, rules)
    }

    fn unchecked(nvars: usize, rules: Vec<Rule>) -> Result<Self, AlgebraError> {
        for rule in &rules {
            if rule.lhs.is_one() {
                return Err(AlgebraError::UnsupportedRule(format!("{rule}: constant left-hand side")));
            }
            if rule.rhs.len() > 1 {
                return Err(AlgebraError::UnsupportedRule(format!(
                    "{rule}: right-hand side must be zero or a single term"
                )));
            }
            if let Some((m, _)) = rule.rhs_term() {
                if m >= &rule.lhs {
                    return Err(AlgebraError::NotDecreasing(rule.to_string()));
                }
            }
        }
        let nvars = rules
            .iter()
            .filter_map(|r| r.lhs.max_var())
            .map(|v| v + 1)
            .fold(nvars, usize::max);
        Ok(RewriteSystem { nvars, rules })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Renames every variable `i` to `i + offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        RewriteSystem {
            nvars: self.nvars + offset,
            rules: self
                .rules
                .iter()
                .map(|r| Rule { lhs: r.lhs.shift(offset), rhs: r.rhs.shift_vars(offset) })
                .collect(),
        }
    }

    /// Disjoint union of two systems already living on disjoint variables.
    pub(crate) fn union(&self, other: &Self) -> Result<Self, AlgebraError> {
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().cloned());
        Self::new(self.nvars.max(other.nvars), rules)
    }

    pub fn is_irreducible(&self, m: &Monomial) -> bool {
        !self.rules.iter().any(|r| r.lhs.divides(m))
    }

    /// Normal form of a single monomial: `None` when it reduces to zero.
    pub fn reduce_monomial(&self, m: &Monomial) -> Option<(Rational, Monomial)> {
        let mut coeff = Rational::one();
        let mut current = m.clone();
        'outer: loop {
            for rule in &self.rules {
                if let Some(cofactor) = current.div(&rule.lhs) {
                    let (rm, rc) = rule.rhs_term()?;
                    coeff *= rc;
                    current = cofactor.mul(rm);
                    continue 'outer;
                }
            }
            return Some((coeff, current));
        }
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.nvars().max(self.nvars));
        for (m, c) in p.terms() {
            if let Some((rc, rm)) = self.reduce_monomial(m) {
                out.add_term(rm, rc * c);
            }
        }
        out
    }

    fn reduce_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        match self.reduce_monomial(m) {
            Some((rc, rm)) => Polynomial::term(rc * c, rm, self.nvars),
            None => Polynomial::zero(self.nvars),
        }
    }

    /// First critical pair whose two reducts have different normal forms.
    fn first_unjoinable_pair(&self) -> Option<(Monomial, Polynomial, Polynomial)> {
        for (i, a) in self.rules.iter().enumerate() {
            for b in &self.rules[i + 1..] {
                let overlap = a.lhs.lcm(&b.lhs);
                let reduct = |r: &Rule| match r.rhs_term() {
                    Some((m, c)) => self.reduce_term(c, &overlap.div(&r.lhs).unwrap().mul(m)),
                    None => Polynomial::zero(self.nvars),
                };
                let (left, right) = (reduct(a), reduct(b));
                if left != right {
                    return Some((overlap, left, right));
                }
            }
        }
        None
    }

    /// Drops rules whose left-hand side is reducible by another rule and
    /// normalizes right-hand sides. Keeps the presentation minimal after completion.
    fn interreduce(&mut self) {
        let mut kept: Vec<Rule> = Vec::new();
        let mut rules = std::mem::take(&mut self.rules);
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        for rule in rules {
            if !kept.iter().any(|k| k.lhs.divides(&rule.lhs)) {
                kept.retain(|k| !rule.lhs.divides(&k.lhs));
                kept.push(rule);
            }
        }
        self.rules = kept;
        let snapshot = self.clone();
        for rule in &mut self.rules {
            rule.rhs = snapshot.normal_form(&rule.rhs);
        }
    }
}

/// Turns `diff = 0` into a rule, leading monomial first.
fn orient(diff: &Polynomial, nvars: usize) -> Result<Option<Rule>, AlgebraError> {
    let mut terms: Vec<(&Monomial, &Rational)> = diff.terms().rev().collect();
    match terms.len() {
        0 => Ok(None),
        1 => Ok(Some(Rule::to_zero(terms[0].0.clone(), nvars))),
        2 => {
            let (m2, c2) = terms.pop().unwrap();
            let (m1, c1) = terms.pop().unwrap();
            if m2.is_one() && !m1.is_one() {
                // x^k = c makes the generator a unit, never nilpotent
                return Err(AlgebraError::UnsupportedRule(format!(
                    "{diff} = 0 sets a monomial equal to a nonzero constant"
                )));
            }
            Ok(Some(Rule::to_term(m1.clone(), -(c2 / c1), m2.clone(), nvars)))
        }
        _ => Err(AlgebraError::UnsupportedRule(format!(
            "{diff} = 0 has more than two terms"
        ))),
    }
}

/// Normal form of `p` modulo `rules`.
pub fn normal_form(p: &Polynomial, rules: &RewriteSystem) -> Polynomial {
    rules.normal_form(p)
}
