use std::sync::Arc;

use crate::algebra::Monomial;
use crate::jet::{taylor_lift, JetPoint};
use crate::weil::WeilAlgebra;

use super::{CharacteristicSystem, EnvelopeError};

/// Parameter grid and solver settings for numeric envelope sampling.
#[derive(Clone, Debug, PartialEq)]
pub struct Sampling {
    pub t_min: f64,
    pub t_max: f64,
    /// Number of grid values of `t` (endpoints included).
    pub steps: usize,
    /// Residual bound `|(F, F_t)| < tol` for accepting a solution.
    pub tol: f64,
    /// Box `[x_min, x_max] x [y_min, y_max]` seeding the solver.
    pub seed_box: [f64; 4],
    /// Seeds per axis of the seed box.
    pub seeds: usize,
    pub max_iter: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            t_min: -2.0,
            t_max: 2.0,
            steps: 41,
            tol: 1e-12,
            seed_box: [-4.0, 4.0, -4.0, 4.0],
            seeds: 5,
            max_iter: 200,
        }
    }
}

impl Sampling {
    pub fn range(t_min: f64, t_max: f64, steps: usize) -> Self {
        Sampling { t_min, t_max, steps, ..Default::default() }
    }

    fn grid(&self, lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
        (0..n).map(move |i| lo + step * i as f64)
    }
}

/// A solution `(x, y)` of `F = F_t = 0` at parameter `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

/// Solves the characteristic system at each grid value of `t` by
/// Levenberg-Marquardt iteration from a grid of seeds. Values and
/// derivatives of `F` come from one lift to the second-order neighbourhood
/// in `(x, y, t)`, which carries `F_t` and its gradient as well.
pub fn sample_envelope(sys: &CharacteristicSystem, grid: &Sampling) -> Result<Vec<Sample>, EnvelopeError> {
    if sys.degenerate {
        return Ok(Vec::new());
    }
    let solver = Solver { sys, alg: WeilAlgebra::order_k(2, 3), grid };
    let [x0, x1, y0, y1] = grid.seed_box;
    let mut out = Vec::new();
    for t in grid.grid(grid.t_min, grid.t_max, grid.steps) {
        let mut found: Vec<Sample> = Vec::new();
        for sx in grid.grid(x0, x1, grid.seeds) {
            for sy in grid.grid(y0, y1, grid.seeds) {
                if let Some((x, y)) = solver.solve(t, sx, sy) {
                    if found.iter().all(|s| (s.x - x).hypot(s.y - y) > 1e-6) {
                        found.push(Sample { t, x, y });
                    }
                }
            }
        }
        found.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        out.extend(found);
    }
    Ok(out)
}

struct Solver<'a> {
    sys: &'a CharacteristicSystem,
    alg: Arc<WeilAlgebra>,
    grid: &'a Sampling,
}

impl Solver<'_> {
    /// Residual `(F, F_t)` and its Jacobian in `(x, y)`.
    fn eval(&self, x: f64, y: f64, t: f64) -> Option<([f64; 2], [[f64; 2]; 2])> {
        let p = JetPoint::generic(&self.alg, vec![x, y, t]).ok()?;
        let u = taylor_lift(&self.sys.f, &p).ok()?;
        let c = |m: Monomial| u.coeff(&m);
        let r = [*u.augmentation(), c(Monomial::var(2))];
        let j = [
            [c(Monomial::var(0)), c(Monomial::var(1))],
            [c(Monomial::from_exponents(&[1, 0, 1])), c(Monomial::from_exponents(&[0, 1, 1]))],
        ];
        (r.iter().chain(j.iter().flatten()).all(|v| v.is_finite())).then_some((r, j))
    }

    fn solve(&self, t: f64, mut x: f64, mut y: f64) -> Option<(f64, f64)> {
        let norm = |r: [f64; 2]| r[0].hypot(r[1]);
        let (mut r, mut j) = self.eval(x, y, t)?;
        let mut mu = 1e-3;
        for _ in 0..self.grid.max_iter {
            if norm(r) < self.grid.tol {
                return Some((x, y));
            }
            // (J^T J + mu I) delta = -J^T r
            let a = j[0][0] * j[0][0] + j[1][0] * j[1][0];
            let b = j[0][0] * j[0][1] + j[1][0] * j[1][1];
            let d = j[0][1] * j[0][1] + j[1][1] * j[1][1];
            let g = [j[0][0] * r[0] + j[1][0] * r[1], j[0][1] * r[0] + j[1][1] * r[1]];
            let mut accepted = false;
            for _ in 0..30 {
                let (a, d) = (a + mu, d + mu);
                let det = a * d - b * b;
                if det == 0.0 || !det.is_finite() {
                    mu *= 4.0;
                    continue;
                }
                let dx = -(d * g[0] - b * g[1]) / det;
                let dy = -(a * g[1] - b * g[0]) / det;
                if let Some((r2, j2)) = self.eval(x + dx, y + dy, t) {
                    if norm(r2) < norm(r) {
                        x += dx;
                        y += dy;
                        r = r2;
                        j = j2;
                        mu = (mu / 3.0).max(1e-15);
                        accepted = true;
                        break;
                    }
                }
                mu *= 4.0;
            }
            if !accepted {
                break;
            }
        }
        (norm(r) < self.grid.tol).then_some((x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{characteristic_system, Family};

    #[test]
    fn courant_samples_lie_on_the_x_axis() {
        let sys = characteristic_system(&Family::parse("y-(x-t)^3").unwrap()).unwrap();
        let samples = sample_envelope(&sys, &Sampling::range(-1.0, 1.0, 5)).unwrap();
        assert_eq!(samples.len(), 5);
        for s in samples {
            assert!(s.y.abs() < 1e-12 && (s.x - s.t).abs() < 1e-5, "{s:?}");
        }
    }

    #[test]
    fn circles_have_two_characteristic_points() {
        let sys = characteristic_system(&Family::parse("(x-t)^2+y^2-1").unwrap()).unwrap();
        let samples = sample_envelope(&sys, &Sampling::range(0.0, 1.0, 3)).unwrap();
        assert_eq!(samples.len(), 6);
        for s in samples {
            assert!((s.y.abs() - 1.0).abs() < 1e-12 && (s.x - s.t).abs() < 1e-12);
        }
    }
}
