// SPDX-License-Identifier: Apache-2.0

//! Inputs shared by the benchmarks.

use coble_core::IntMatrix;

/// A dense `n x n` integer matrix with small entries and full rank for the
/// sizes benchmarked here.
pub fn dense_matrix(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| {
        let v = ((i * i + 3 * j + i * j) % 7) as i64 - 3 + if i == j { 5 } else { 0 };
        v.into()
    })
}
