// SPDX-License-Identifier: Apache-2.0

//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::AbelianError;

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Scales a rational vector by the least common multiple of its denominators.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
}

/// Integer vector if every entry is integral.
pub fn as_integers(v: &[Rational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..m[i].len() {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    row_reduce(&mut m, cols).len()
}

pub fn determinant(m: &[Vec<Rational>]) -> Result<Rational, AbelianError> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|r| r.len() != n) {
        return Err(AbelianError::NotSquare { rows: n, cols: bad.len() });
    }
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let delta = &f * &a[c][j];
                a[i][j] -= delta;
            }
        }
    }
    Ok(det)
}

/// Exact solution of `A x = b`.
///
/// Returns `Ok(None)` when the system is inconsistent and
/// `Err(Underdetermined)` when it is consistent but has more than one solution.
pub fn solve_rational_linear(
    a: &[Vec<Rational>],
    b: &[Rational],
) -> Result<Option<Vec<Rational>>, AbelianError> {
    if a.len() != b.len() {
        return Err(AbelianError::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let cols = a.first().map_or(0, Vec::len);
    if let Some(bad) = a.iter().find(|r| r.len() != cols) {
        return Err(AbelianError::DimensionMismatch {
            expected: cols,
            found: bad.len(),
        });
    }
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    if pivots.len() < cols {
        return Err(AbelianError::Underdetermined {
            rank: pivots.len(),
            unknowns: cols,
        });
    }
    Ok(Some((0..cols).map(|i| aug[i][cols].clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn identity_system() {
        let b = vec![q(3), q_frac(-1, 2)];
        assert_eq!(solve_rational_linear(&qm(&[&[1, 0], &[0, 1]]), &b).unwrap(), Some(b));
    }

    #[test]
    fn boundary_system_for_a_line() {
        // Two orthogonal (-4)-curves each meeting the line class three times.
        let x = solve_rational_linear(&qm(&[&[-4, 0], &[0, -4]]), &[q(-3), q(-3)]).unwrap();
        assert_eq!(x, Some(vec![q_frac(3, 4), q_frac(3, 4)]));
    }

    #[test]
    fn inconsistent_and_ambiguous_are_distinct() {
        let a = qm(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_rational_linear(&a, &[q(1), q(3)]).unwrap(), None);
        assert!(matches!(
            solve_rational_linear(&a, &[q(1), q(2)]),
            Err(AbelianError::Underdetermined { rank: 1, unknowns: 2 })
        ));
    }

    #[test]
    fn overdetermined_consistent() {
        let a = qm(&[&[1, 0], &[0, 1], &[1, 1]]);
        let x = solve_rational_linear(&a, &[q(1), q(2), q(3)]).unwrap();
        assert_eq!(x, Some(vec![q(1), q(2)]));
    }

    #[test]
    fn determinant_and_rank() {
        let m = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m).unwrap(), q(-1));
        assert_eq!(rank(&qm(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(clear_denominators(&[q_frac(1, 2), q_frac(1, 3)]), vec![BigInt::from(3), BigInt::from(2)]);
    }
}
