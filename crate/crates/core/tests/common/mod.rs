//! Random generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use sdg_core::algebra::{ratio, Polynomial, Rational};
use sdg_core::combinat::NeighbourSpace;
use sdg_core::expr::Expr;

/// A nonzero rational `p/q` with `|p| <= 5`, `q <= 4`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let p = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    ratio(p, rng.gen_range(1..=4))
}

/// A rational in `[-2, 2]` on the grid of sixteenths.
pub fn base_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-32..=32), 16)
}

fn leaf(rng: &mut impl Rng, nvars: usize) -> Expr {
    if rng.gen_bool(0.6) {
        Expr::var(rng.gen_range(0..nvars))
    } else {
        Expr::constant(small_rational(rng))
    }
}

/// A random expression tree of depth at most `depth` in `nvars` variables,
/// with elementary functions when `transcendental`.
pub fn random_expr(rng: &mut impl Rng, depth: usize, nvars: usize, transcendental: bool) -> Expr {
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng, nvars);
    }
    let kinds = if transcendental { 10 } else { 6 };
    let sub = |rng: &mut _| random_expr(rng, depth - 1, nvars, transcendental);
    match rng.gen_range(0..kinds) {
        0 => sub(rng) + sub(rng),
        1 => sub(rng) - sub(rng),
        2 => sub(rng) * sub(rng),
        3 => sub(rng) / sub(rng),
        4 => -sub(rng),
        5 => sub(rng).pow(rng.gen_range(-2..=3)),
        6 => sub(rng).exp(),
        7 => sub(rng).log(),
        8 => sub(rng).sin(),
        _ => sub(rng).cos(),
    }
}

/// A random polynomial expression: sums of products, no division.
pub fn random_poly_expr(rng: &mut impl Rng, depth: usize, nvars: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng, nvars);
    }
    let sub = |rng: &mut _| random_poly_expr(rng, depth - 1, nvars);
    match rng.gen_range(0..4) {
        0 => sub(rng) + sub(rng),
        1 => sub(rng) - sub(rng),
        2 => sub(rng) * sub(rng),
        _ => sub(rng).pow(rng.gen_range(0..=3)),
    }
}

/// A random polynomial with at most `terms` terms of degree at most `deg`.
pub fn random_polynomial(rng: &mut impl Rng, nvars: usize, terms: usize, deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..rng.gen_range(0..=terms) {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=deg)).collect();
        let m = sdg_core::algebra::Monomial::from_exponents(&exps);
        p = p + Polynomial::term(ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3)), m, nvars);
    }
    p
}

/// A random graph on `n` points, each pair neighbours with probability `p`.
pub fn random_space(rng: &mut impl Rng, n: usize, p: f64) -> Arc<NeighbourSpace> {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let chosen: Vec<(usize, usize)> = edges.into_iter().filter(|_| rng.gen_bool(p)).collect();
    Arc::new(NeighbourSpace::new(n, chosen).expect("indices in range"))
}
