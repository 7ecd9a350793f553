// SPDX-License-Identifier: Apache-2.0

//! Exact rational quadratic lattices.
//!
//! A [`QuadLattice`] is a free Z-module given by a labelled basis and a
//! symmetric Gram matrix with rational entries. Invariants are computed by
//! exact congruence diagonalization; nothing here touches floating point.
//!
//! Recognition of the Enriques lattice `U + E8(-1)` is by invariants alone:
//! an indefinite even unimodular lattice is determined up to isometry by its
//! rank and signature, so rank 10, signature (1, 9), even and
//! `|disc| = 1` characterize it.

mod graph;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::abelian::rational::{clear_denominators, determinant, dot, q};
use crate::abelian::{hermite_normal_form, kernel_basis, AbelianError, IntMatrix, Rational};

pub use graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Gram matrix is not integral")]
    NotIntegral,
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadLattice {
    labels: Vec<String>,
    gram: Vec<Vec<Rational>>,
}

impl QuadLattice {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<Rational>>) -> Result<Self, LatticeError> {
        let n = labels.len();
        if gram.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: gram.len(),
            });
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(LatticeError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        Ok(QuadLattice { labels, gram })
    }

    pub fn from_integer_gram(labels: Vec<String>, gram: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let gram = gram.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::new(labels, gram)
    }

    /// Labels `prefix0, prefix1, ...`.
    pub fn with_default_labels(prefix: &str, gram: Vec<Vec<Rational>>) -> Result<Self, LatticeError> {
        let labels = (0..gram.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(labels, gram)
    }

    pub fn zero() -> Self {
        QuadLattice {
            labels: Vec::new(),
            gram: Vec::new(),
        }
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic_plane() -> Self {
        Self::from_integer_gram(vec!["e".into(), "f".into()], &[vec![0, 1], vec![1, 0]])
            .expect("static Gram")
    }

    /// Negative Cartan matrix of the tree `graph`: -2 on the diagonal, 1 on edges.
    pub fn negative_cartan(prefix: &str, graph: &Graph) -> Self {
        let n = graph.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            q(-2)
                        } else if graph.has_edge(i, j) {
                            q(1)
                        } else {
                            q(0)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::with_default_labels(prefix, gram).expect("Cartan matrices are symmetric")
    }

    /// `E8(-1)`, the negative definite even unimodular lattice of rank 8.
    pub fn e8_negative() -> Self {
        Self::negative_cartan("a", &Graph::t_shape(2, 3, 5))
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.gram[i][j]
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(Rational::is_integer)
    }

    /// Pairing of two coordinate vectors over this basis.
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gy: Vec<Rational> = self.gram.iter().map(|row| dot(row, y)).collect();
        dot(x, &gy)
    }

    pub fn direct_sum(&self, other: &QuadLattice) -> QuadLattice {
        let n = self.rank() + other.rank();
        let mut gram = vec![vec![q(0); n]; n];
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        let o = self.rank();
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                gram[o + i][o + j] = other.gram[i][j].clone();
            }
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        QuadLattice { labels, gram }
    }

    /// Lattice spanned by integer combinations of this basis, with induced Gram.
    pub fn restrict(&self, basis: &[Vec<BigInt>], labels: Vec<String>) -> Result<QuadLattice, LatticeError> {
        if labels.len() != basis.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: basis.len(),
                found: labels.len(),
            });
        }
        let rows: Vec<Vec<Rational>> = basis
            .iter()
            .map(|b| {
                if b.len() != self.rank() {
                    return Err(LatticeError::DimensionMismatch {
                        expected: self.rank(),
                        found: b.len(),
                    });
                }
                Ok(b.iter().cloned().map(Rational::from_integer).collect())
            })
            .collect::<Result<_, _>>()?;
        let gram = rows
            .iter()
            .map(|x| rows.iter().map(|y| self.pair(x, y)).collect())
            .collect();
        QuadLattice::new(labels, gram)
    }

    /// Induced Gram on the Hermite-normalized basis of the span of `basis`;
    /// two sublattices are equal exactly when these agree as (basis, Gram) pairs.
    pub fn canonical_sublattice(&self, basis: &[Vec<BigInt>]) -> Result<(Vec<Vec<BigInt>>, QuadLattice), LatticeError> {
        let h = hermite_normal_form(&IntMatrix::from_rows(self.rank(), basis)?).to_rows();
        let labels = (0..h.len()).map(|i| format!("h{i}")).collect();
        let lat = self.restrict(&h, labels)?;
        Ok((h, lat))
    }

    /// Gram matrix after an integral change of basis (rows of `t` are the new basis).
    pub fn change_basis(&self, t: &IntMatrix) -> Result<QuadLattice, LatticeError> {
        let labels = (0..t.rows()).map(|i| format!("b{i}")).collect();
        self.restrict(&t.to_rows(), labels)
    }
}

/// Builds the Gram matrix of `items` under a symmetric bilinear `pairing`.
pub fn gram_of<T, E>(
    items: &[(String, T)],
    pairing: impl Fn(&T, &T) -> Result<Rational, E>,
) -> Result<QuadLattice, E>
where
    E: From<LatticeError>,
{
    let n = items.len();
    let mut gram = vec![vec![q(0); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = pairing(&items[i].1, &items[j].1)?;
            gram[j][i] = v.clone();
            gram[i][j] = v;
        }
    }
    let labels = items.iter().map(|(l, _)| l.clone()).collect();
    Ok(QuadLattice::new(labels, gram)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    NotIntegral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeProfile {
    pub rank: usize,
    pub signature: Signature,
    pub parity: Parity,
    /// Determinant of the Gram matrix in the stored basis.
    pub discriminant: Rational,
}

impl LatticeProfile {
    pub fn is_even(&self) -> Result<bool, LatticeError> {
        match self.parity {
            Parity::Even => Ok(true),
            Parity::Odd => Ok(false),
            Parity::NotIntegral => Err(LatticeError::NotIntegral),
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.parity != Parity::NotIntegral && self.discriminant.abs().is_one()
    }
}

/// Signature by congruence diagonalization over Q.
///
/// When the next diagonal entry is zero, a later nonzero diagonal entry is
/// swapped in; failing that, a row/column `j` with nonzero `a_kj` is added to
/// row/column `k`, which makes the pivot `2 a_kj`. A row that is zero in the
/// remaining block contributes to the radical.
pub fn signature(gram: &[Vec<Rational>]) -> Signature {
    let n = gram.len();
    let mut a = gram.to_vec();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_zero() {
            sig.zero += 1;
            continue;
        }
        if pivot.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in 0..n {
                let delta = &f * &a[k][c];
                a[i][c] -= delta;
            }
            for r in 0..n {
                let delta = &f * &a[r][k];
                a[r][i] -= delta;
            }
        }
    }
    sig
}

pub fn profile(lattice: &QuadLattice) -> LatticeProfile {
    let parity = if !lattice.is_integral() {
        Parity::NotIntegral
    } else if (0..lattice.rank()).all(|i| lattice.gram[i][i].to_integer().is_even()) {
        Parity::Even
    } else {
        Parity::Odd
    };
    LatticeProfile {
        rank: lattice.rank(),
        signature: signature(&lattice.gram),
        parity,
        discriminant: determinant(&lattice.gram).expect("Gram matrices are square"),
    }
}

/// A saturated sublattice together with its basis in the ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    pub lattice: QuadLattice,
    pub basis: Vec<Vec<BigInt>>,
}

/// Vectors of `lattice` orthogonal to every target (targets given as
/// rational coordinates over the lattice basis). The result is saturated.
pub fn orthogonal_complement(lattice: &QuadLattice, targets: &[Vec<Rational>]) -> Result<Complement, LatticeError> {
    let n = lattice.rank();
    let mut rows = Vec::with_capacity(targets.len());
    for t in targets {
        if t.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: t.len(),
            });
        }
        let functional: Vec<Rational> = (0..n).map(|j| (0..n).map(|i| &t[i] * &lattice.gram[i][j]).sum()).collect();
        rows.push(clear_denominators(&functional));
    }
    let m = IntMatrix::from_rows(n, &rows)?;
    let basis = kernel_basis(&m);
    let labels = basis
        .iter()
        .enumerate()
        .map(|(k, b)| match unit_index(b) {
            Some(i) => lattice.labels[i].clone(),
            None => format!("c{k}"),
        })
        .collect();
    let sub = lattice.restrict(&basis, labels)?;
    Ok(Complement { lattice: sub, basis })
}

fn unit_index(v: &[BigInt]) -> Option<usize> {
    let mut found = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if !x.is_one() || found.is_some() {
            return None;
        }
        found = Some(i);
    }
    found
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnriquesRecognition {
    pub is_enriques: bool,
    pub profile: LatticeProfile,
    /// Which of the defining conditions failed, empty on success.
    pub failures: Vec<String>,
}

/// Rank 10, even, unimodular, signature (1, 9). Since an indefinite even
/// unimodular lattice is unique in its genus, these invariants identify
/// `U + E8(-1)` up to isometry.
pub fn is_enriques_lattice(lattice: &QuadLattice) -> Result<EnriquesRecognition, LatticeError> {
    let profile = profile(lattice);
    let even = profile.is_even()?;
    let mut failures = Vec::new();
    if profile.rank != 10 {
        failures.push(format!("rank {} != 10", profile.rank));
    }
    if !even {
        failures.push("odd".to_string());
    }
    if !profile.discriminant.abs().is_one() {
        failures.push(format!("|disc| = {} != 1", profile.discriminant.abs()));
    }
    let s = profile.signature;
    if (s.positive, s.negative, s.zero) != (1, 9, 0) {
        failures.push(format!("signature {s} != (1, 9, 0)"));
    }
    Ok(EnriquesRecognition {
        is_enriques: failures.is_empty(),
        profile,
        failures,
    })
}

/// Adjacency graph of a Gram matrix: edge `i - j` when the entry is 1.
pub fn pairing_graph(lattice: &QuadLattice) -> Graph {
    let n = lattice.rank();
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if lattice.gram[i][j].is_one() {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// True iff the Gram is a negative Cartan matrix whose Dynkin graph is
/// isomorphic to `expected`: every diagonal entry -2, off-diagonal entries
/// in {0, 1}.
pub fn matches_tree_cartan(lattice: &QuadLattice, expected: &Graph) -> bool {
    let n = lattice.rank();
    if n != expected.len() || !lattice.is_integral() {
        return false;
    }
    let minus_two = q(-2);
    for i in 0..n {
        if lattice.gram[i][i] != minus_two {
            return false;
        }
        for j in 0..n {
            if i != j && !(lattice.gram[i][j].is_zero() || lattice.gram[i][j].is_one()) {
                return false;
            }
        }
    }
    pairing_graph(lattice).is_isomorphic(expected)
}
