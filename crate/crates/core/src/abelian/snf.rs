// SPDX-License-Identifier: Apache-2.0

//! Smith normal form with unimodular transformation witnesses.
//!
//! Pivoting always takes the entry of smallest nonzero absolute value in the
//! active block, ties broken leftmost column first and then topmost row, so
//! the witnesses `U` and `V` are reproducible for identical input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U * M * V = D` with `D` diagonal and `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `D`, positive and in divisibility order.
    pub elementary_divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.elementary_divisors.len()
    }
}

/// Summary used in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfSummary {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub elementary_divisors: Vec<String>,
}

impl From<&SnfResult> for SnfSummary {
    fn from(r: &SnfResult) -> Self {
        SnfSummary {
            rows: r.d.rows(),
            cols: r.d.cols(),
            rank: r.rank(),
            elementary_divisors: r.elementary_divisors.iter().map(ToString::to_string).collect(),
        }
    }
}

fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for j in t..d.cols() {
        for i in t..d.rows() {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut rank = 0;
    for t in 0..rows.min(cols) {
        let mut found = false;
        while let Some((pi, pj)) = find_pivot(&d, t) {
            found = true;
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut remainder = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                remainder |= !d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / d.get(t, t));
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                remainder |= !d.get(t, j).is_zero();
            }
            if remainder {
                continue;
            }

            // Row and column t are clear; enforce divisibility of the rest.
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(d.get(i, j) % &pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if !found {
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_col(t);
            v.negate_col(t);
        }
        rank += 1;
    }

    let elementary_divisors = (0..rank).map(|i| d.get(i, i).clone()).collect();
    SnfResult {
        d,
        u,
        v,
        elementary_divisors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisors(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .elementary_divisors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn check_witness(m: &IntMatrix) {
        let r = smith_normal_form(m);
        assert_eq!(&(&r.u * m) * &r.v, r.d);
        assert!(r.u.is_unimodular());
        assert!(r.v.is_unimodular());
        for w in r.elementary_divisors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn zero_matrix_has_no_divisors() {
        let m = IntMatrix::zeros(2, 2);
        let r = smith_normal_form(&m);
        assert!(r.elementary_divisors.is_empty());
        assert!(r.d.is_zero());
    }

    #[test]
    fn already_normal() {
        assert_eq!(divisors(&IntMatrix::from_i64(&[&[2, 0], &[0, 2]])), vec![2, 2]);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let m = IntMatrix::zeros(r, c);
            let res = smith_normal_form(&m);
            assert!(res.elementary_divisors.is_empty());
            assert_eq!((res.u.rows(), res.v.rows()), (r, c));
        }
    }

    #[test]
    fn negative_and_non_divisible() {
        let m = IntMatrix::from_i64(&[&[-2, 0], &[0, 3]]);
        assert_eq!(divisors(&m), vec![1, 6]);
        check_witness(&m);
        let m = IntMatrix::from_i64(&[&[4, 6, 0], &[6, 4, 2], &[0, 2, 8]]);
        check_witness(&m);
        let m = IntMatrix::from_i64(&[&[0, 0, 5], &[0, 0, 0], &[0, -7, 0]]);
        assert_eq!(divisors(&m), vec![1, 35]);
        check_witness(&m);
    }

    #[test]
    fn deterministic() {
        let m = IntMatrix::from_i64(&[&[3, 5, 7], &[2, 4, 6], &[1, 1, 9]]);
        assert_eq!(smith_normal_form(&m), smith_normal_form(&m));
    }
}
