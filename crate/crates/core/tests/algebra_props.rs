mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdg_core::algebra::{rat, resultant, Monomial, Polynomial, RewriteSystem, Rule};

fn poly(seed: u64, nvars: usize) -> Polynomial {
    common::random_polynomial(&mut ChaCha8Rng::seed_from_u64(seed), nvars, 5, 3)
}

fn laplace_rules() -> RewriteSystem {
    RewriteSystem::new(
        2,
        vec![
            Rule::to_zero(Monomial::from_exponents(&[1, 1]), 2),
            Rule::to_term(Monomial::var_pow(1, 2), rat(1), Monomial::var_pow(0, 2), 2),
            Rule::to_zero(Monomial::var_pow(0, 3), 2),
        ],
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (p, q, r) = (poly(a, 3), poly(b, 3), poly(c, 3));
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, Polynomial::zero(3));
        prop_assert_eq!(&p * &Polynomial::one(3), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_form_is_multiplicative(a in any::<u64>(), b in any::<u64>()) {
        let rules = laplace_rules();
        let (p, q) = (poly(a, 2), poly(b, 2));
        let direct = rules.normal_form(&(&p * &q));
        let reduced = rules.normal_form(&(&rules.normal_form(&p) * &rules.normal_form(&q)));
        prop_assert_eq!(&direct, &reduced);
        prop_assert_eq!(rules.normal_form(&(&p + &q)), &rules.normal_form(&p) + &rules.normal_form(&q));
        prop_assert_eq!(rules.normal_form(&direct), direct);
    }

    #[test]
    fn common_factor_kills_resultant(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        // variables x, y, t with t last
        let t = Polynomial::var(2, 3);
        let factor = &t + &poly(c, 2).with_nvars(3);
        let p = &factor * &poly(a, 3);
        let q = &factor * &poly(b, 3);
        prop_assume!(p.degree_in(2).unwrap_or(0) > 0 && q.degree_in(2).unwrap_or(0) > 0);
        prop_assert!(resultant(&p, &q, 2).unwrap().is_zero());
    }
}

#[test]
fn completion_restores_confluence() {
    let rules = vec![
        Rule::to_zero(Monomial::from_exponents(&[1, 1]), 2),
        Rule::to_term(Monomial::var_pow(1, 2), rat(1), Monomial::var_pow(0, 2), 2),
    ];
    assert!(RewriteSystem::new(2, rules.clone()).is_err());
    let completed = RewriteSystem::complete(2, rules).unwrap();
    assert_eq!(RewriteSystem::new(2, completed.rules().to_vec()).unwrap().rules().len(), completed.rules().len());
}
