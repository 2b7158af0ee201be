use num_traits::One;

use super::polynomial::Polynomial;
use super::rational::Rational;
use super::AlgebraError;

/// Sylvester matrix of `p` and `q` with respect to `var`: `deg q` shifted rows
/// of the coefficients of `p` (highest power first) followed by `deg p`
/// shifted rows of the coefficients of `q`.
pub fn sylvester_matrix(p: &Polynomial, q: &Polynomial, var: usize) -> Result<Vec<Vec<Polynomial>>, AlgebraError> {
    let m = positive_degree(p, var)?;
    let n = positive_degree(q, var)?;
    let nvars = p.nvars().max(q.nvars());
    let size = m + n;
    let zero = Polynomial::zero(nvars);
    let rows = |poly: &Polynomial, deg: usize, count: usize| -> Vec<Vec<Polynomial>> {
        let coeffs: Vec<Polynomial> = poly.coefficients_in(var).into_iter().rev().collect();
        (0..count)
            .map(|shift| {
                let mut row = vec![zero.clone(); size];
                for (k, c) in coeffs.iter().enumerate().take(deg + 1) {
                    row[shift + k] = c.clone().with_nvars(nvars);
                }
                row
            })
            .collect()
    };
    let mut matrix = rows(p, m, n);
    matrix.extend(rows(q, n, m));
    Ok(matrix)
}

fn positive_degree(p: &Polynomial, var: usize) -> Result<usize, AlgebraError> {
    match p.degree_in(var) {
        Some(d) if d > 0 => Ok(d as usize),
        _ => Err(AlgebraError::NothingToEliminate { var }),
    }
}

/// Resultant of `p` and `q` with respect to `var`: the determinant of their
/// Sylvester matrix, a polynomial in the remaining variables.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: usize) -> Result<Polynomial, AlgebraError> {
    let matrix = sylvester_matrix(p, q, var)?;
    Ok(bareiss_determinant(matrix))
}

/// Fraction-free Gaussian elimination over the polynomial ring. Every
/// division performed is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    let nvars = m.iter().flatten().map(Polynomial::nvars).max().unwrap_or(0);
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut sign = Rational::one();
    let mut prev = Polynomial::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Polynomial::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = Polynomial::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].scale(&sign);
    if det.is_zero() {
        Polynomial::zero(nvars)
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap().with_nvars(3)
    }

    #[test]
    fn linear_pair() {
        // x1 = a, x2 = b, eliminate x3
        let r = resultant(&p("t - x"), &p("t - y"), 2).unwrap();
        assert_eq!(r, p("x - y"));
    }

    #[test]
    fn degree_zero_input_is_rejected() {
        let err = resultant(&p("x + 1"), &p("t"), 2).unwrap_err();
        assert!(matches!(err, AlgebraError::NothingToEliminate { var: 2 }));
    }

    #[test]
    fn common_factor_gives_zero() {
        let f = p("t - x");
        let r = resultant(&(&f * &p("t + y")), &(&f * &p("t^2 + 3")), 2).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn zero_pivot_triggers_row_swap() {
        let m = vec![
            vec![Polynomial::zero(1), Polynomial::one(1)],
            vec![Polynomial::one(1), Polynomial::var(0, 1)],
        ];
        assert_eq!(bareiss_determinant(m), -Polynomial::one(1));
    }
}
