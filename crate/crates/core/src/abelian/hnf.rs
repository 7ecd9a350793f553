// SPDX-License-Identifier: Apache-2.0

//! Row Hermite normal form, integer kernels and saturation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use num_integer::Integer;

use super::{smith_normal_form, AbelianError, IntMatrix};

/// Row-style Hermite normal form of the row span of `m`: upper echelon,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
/// Zero rows are dropped, so the result is a canonical basis of the span.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        loop {
            let pivot = (pr..rows)
                .filter(|&i| !a.get(i, col).is_zero())
                .min_by(|&x, &y| a.get(x, col).abs().cmp(&a.get(y, col).abs()));
            let Some(p) = pivot else { break };
            a.swap_rows(pr, p);
            let mut clean = true;
            for i in pr + 1..rows {
                if a.get(i, col).is_zero() {
                    continue;
                }
                let q = -(a.get(i, col) / a.get(pr, col));
                a.add_row_multiple(i, pr, &q);
                clean &= a.get(i, col).is_zero();
            }
            if clean {
                break;
            }
        }
        if a.get(pr, col).is_zero() {
            continue;
        }
        if a.get(pr, col).is_negative() {
            a.negate_row(pr);
        }
        for i in 0..pr {
            let q = -a.get(i, col).div_floor(a.get(pr, col));
            if !q.is_zero() {
                a.add_row_multiple(i, pr, &q);
            }
        }
        pr += 1;
    }
    IntMatrix::from_fn(pr, cols, |i, j| a.get(i, j).clone())
}

/// Basis of `{x in Z^cols : M x = 0}`, in Hermite normal form.
///
/// The integer kernel is always saturated in `Z^cols`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let cols = m.cols();
    let raw: Vec<Vec<BigInt>> = (snf.rank()..cols).map(|j| snf.v.column(j)).collect();
    let raw = IntMatrix::from_rows(cols, &raw).expect("kernel columns have uniform length");
    hermite_normal_form(&raw).to_rows()
}

/// The smallest direct summand of `Z^n` containing a set of vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    /// Hermite-normalized basis of the saturation.
    pub basis: Vec<Vec<BigInt>>,
    /// Index of the span of the input inside its saturation.
    pub index: BigInt,
}

pub fn saturate(vectors: &[Vec<BigInt>], ambient_rank: usize) -> Result<Saturation, AbelianError> {
    let a = IntMatrix::from_rows(ambient_rank, vectors)?;
    let orthogonal = kernel_basis(&a);
    let orthogonal = IntMatrix::from_rows(ambient_rank, &orthogonal)?;
    let basis = kernel_basis(&orthogonal);
    let index = smith_normal_form(&a)
        .elementary_divisors
        .iter()
        .fold(BigInt::one(), |acc, d| acc * d);
    Ok(Saturation { basis, index })
}

/// True when both vector families span the same sublattice of `Z^n`.
pub fn same_lattice(a: &[Vec<BigInt>], b: &[Vec<BigInt>], n: usize) -> Result<bool, AbelianError> {
    let ha = hermite_normal_form(&IntMatrix::from_rows(n, a)?);
    let hb = hermite_normal_form(&IntMatrix::from_rows(n, b)?);
    Ok(ha == hb)
}

/// Integer coordinates of `v` in the span of the rows of `basis`, if any.
/// The rows of `basis` must be linearly independent.
pub fn integer_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = v.len();
    let k = basis.len();
    // Augment [basis; v] and look for the relation with coefficient 1 on v.
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    let m = IntMatrix::from_rows(n, &rows).ok()?.transpose();
    let ker = kernel_basis(&m);
    // Kernel rank is at most one when the basis is independent.
    let rel = ker.into_iter().next();
    match rel {
        None => v.iter().all(Zero::is_zero).then(|| vec![BigInt::zero(); k]),
        Some(rel) => {
            let last = &rel[k];
            if !last.abs().is_one() {
                return None;
            }
            Some(rel[..k].iter().map(|c| -c * last).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 4, 4], &[0, 6, 0], &[0, 0, 12]]));
        let b = IntMatrix::from_i64(&[&[0, 6, 0], &[2, 4, 4], &[2, 16, 16]]);
        assert_eq!(hermite_normal_form(&b), h);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&IntMatrix::identity(4)).is_empty());
    }

    #[test]
    fn kernel_of_symmetric_row() {
        let k = kernel_basis(&IntMatrix::from_i64(&[&[2, -2]]));
        assert_eq!(k, big(&[&[1, 1]]));
    }

    #[test]
    fn kernel_of_empty_map_is_everything() {
        let k = kernel_basis(&IntMatrix::zeros(0, 3));
        assert_eq!(k, big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn saturate_single_vector() {
        let s = saturate(&big(&[&[2, 0]]), 2).unwrap();
        assert_eq!(s.basis, big(&[&[1, 0]]));
        assert_eq!(s.index, BigInt::from(2));
    }

    #[test]
    fn saturate_full_rank_pair() {
        // Rank 2 inside Z^2: the saturation is all of Z^2 and the span has index |det| = 8.
        let s = saturate(&big(&[&[2, 2], &[0, 4]]), 2).unwrap();
        assert_eq!(s.basis, big(&[&[1, 0], &[0, 1]]));
        assert_eq!(s.index, BigInt::from(8));
    }

    #[test]
    fn saturate_is_idempotent() {
        let s = saturate(&big(&[&[2, 4, 6], &[3, 0, 3]]), 3).unwrap();
        let t = saturate(&s.basis, 3).unwrap();
        assert_eq!(s.basis, t.basis);
        assert_eq!(t.index, BigInt::from(1));
    }

    #[test]
    fn coordinates() {
        let basis = big(&[&[1, 1, 0], &[0, 2, 1]]);
        let v: Vec<BigInt> = [3, 7, 2].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(integer_coordinates(&basis, &v), Some(vec![3.into(), 2.into()]));
        let w: Vec<BigInt> = [0, 1, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(integer_coordinates(&basis, &w), None);
        let z = vec![BigInt::zero(); 3];
        assert_eq!(integer_coordinates(&basis, &z), Some(vec![BigInt::zero(); 2]));
    }

    #[test]
    fn wrong_length_is_error() {
        assert!(saturate(&big(&[&[1, 2, 3]]), 2).is_err());
    }
}
