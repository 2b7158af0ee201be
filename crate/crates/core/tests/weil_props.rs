mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdg_core::algebra::{rat, Polynomial, Rational};
use sdg_core::expr::Expr;
use sdg_core::jet::{taylor_lift, JetPoint};
use sdg_core::scalar::Scalar;
use sdg_core::weil::{parse_algebra, WeilAlgebra, WeilElement};

fn algebras() -> Vec<Arc<WeilAlgebra>> {
    vec![
        WeilAlgebra::dual(),
        WeilAlgebra::first_order(3),
        WeilAlgebra::order_k(3, 2),
        WeilAlgebra::laplace(),
        parse_algebra("D⊗D").unwrap(),
    ]
}

fn element(rng: &mut ChaCha8Rng, alg: &Arc<WeilAlgebra>, augmented: bool) -> WeilElement<Rational> {
    let mut coeffs: Vec<Rational> = (0..alg.dim()).map(|_| common::small_rational(rng)).collect();
    if !augmented {
        coeffs[0] = rat(0);
    }
    WeilElement::from_coeffs(alg, coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn commutative_ring(seed in any::<u64>(), which in 0usize..5) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = (element(&mut rng, alg, true), element(&mut rng, alg, true), element(&mut rng, alg, true));
        prop_assert_eq!(u.mul(&v).unwrap(), v.mul(&u).unwrap());
        prop_assert_eq!(u.mul(&v).unwrap().mul(&w).unwrap(), u.mul(&v.mul(&w).unwrap()).unwrap());
        prop_assert_eq!(u.mul(&v.add(&w).unwrap()).unwrap(), u.mul(&v).unwrap().add(&u.mul(&w).unwrap()).unwrap());
        prop_assert_eq!(u.add(&v).unwrap(), v.add(&u).unwrap());
        prop_assert_eq!(u.mul(&WeilElement::one(alg, &())).unwrap(), u.clone());
        prop_assert!(u.sub(&u).unwrap().is_zero());
    }

    #[test]
    fn augmentation_ideal(seed in any::<u64>(), which in 0usize..5) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (element(&mut rng, alg, false), element(&mut rng, alg, false));
        prop_assert!(n.add(&m).unwrap().augmentation().is_zero());
        prop_assert!(n.mul(&m).unwrap().augmentation().is_zero());
        prop_assert!(n.nilpotency_order().is_some());
        // the augmentation is a ring map
        let (u, v) = (element(&mut rng, alg, true), element(&mut rng, alg, true));
        prop_assert_eq!(u.mul(&v).unwrap().augmentation().clone(), u.augmentation() * v.augmentation());
    }
}

#[test]
fn basis_monomials_are_nilpotent() {
    for alg in algebras() {
        for (i, m) in alg.basis().iter().enumerate().skip(1) {
            let mut coeffs = vec![rat(0); alg.dim()];
            coeffs[i] = rat(1);
            let e = WeilElement::from_coeffs(&alg, coeffs).unwrap();
            assert!(e.nilpotency_order().is_some(), "{m} in {} is not nilpotent", alg.name());
        }
    }
}

#[test]
fn first_neighbourhood_of_a_point() {
    // lifting along y = x + e with x symbolic: f(y) - f(x) = e f'(x)
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let f = common::random_polynomial(&mut rng, 1, 5, 4);
        let expr = Expr::from_polynomial(&f);
        let point = JetPoint::generic(&WeilAlgebra::dual(), vec![Polynomial::var(0, 1)]).unwrap();
        let lifted = taylor_lift(&expr, &point).unwrap();
        assert_eq!(lifted.coeffs()[0], f);
        assert_eq!(lifted.coeffs()[1], f.partial(0));
    }
}

#[test]
fn sum_of_neighbours_is_not_a_neighbour() {
    let dd = parse_algebra("D⊗D").unwrap();
    let e1 = WeilElement::<Rational>::generator(&dd, 0, &()).unwrap();
    let e2 = WeilElement::<Rational>::generator(&dd, 1, &()).unwrap();
    let s = e1.add(&e2).unwrap();
    let square = s.mul(&s).unwrap();
    assert_eq!(square, e1.mul(&e2).unwrap().scale(&rat(2)));
    assert!(!square.is_zero());
    assert!(e1.mul(&e1).unwrap().is_zero());
}
