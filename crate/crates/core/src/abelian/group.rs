// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, AbelianError, IntMatrix, SnfResult};

/// A finitely generated abelian group `Z^generators / (row span of relations)`.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    generators: Vec<String>,
    relations: IntMatrix,
    snf: SnfResult,
    rank: usize,
    torsion: Vec<BigInt>,
}

/// Rank and torsion coefficients, the isomorphism type of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl std::fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 || self.torsion.is_empty() {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" + "))
    }
}

pub fn present_group(generators: &[String], relations: &IntMatrix) -> Result<PresentedGroup, AbelianError> {
    PresentedGroup::new(generators.to_vec(), relations.clone())
}

impl PresentedGroup {
    pub fn new(generators: Vec<String>, relations: IntMatrix) -> Result<Self, AbelianError> {
        if relations.cols() != generators.len() {
            return Err(AbelianError::DimensionMismatch {
                expected: generators.len(),
                found: relations.cols(),
            });
        }
        let snf = smith_normal_form(&relations);
        let rank = generators.len() - snf.rank();
        let torsion = snf
            .elementary_divisors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        Ok(PresentedGroup {
            generators,
            relations,
            snf,
            rank,
            torsion,
        })
    }

    /// Free group on the given generators.
    pub fn free(generators: Vec<String>) -> Self {
        let n = generators.len();
        Self::new(generators, IntMatrix::zeros(0, n)).expect("empty relations always fit")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn snf(&self) -> &SnfResult {
        &self.snf
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn structure(&self) -> GroupStructure {
        GroupStructure {
            rank: self.rank,
            torsion: self.torsion.clone(),
        }
    }

    /// Coordinates of an element in the diagonalized presentation.
    fn normal_coordinates(&self, element: &[BigInt]) -> Result<Vec<BigInt>, AbelianError> {
        if element.len() != self.generators.len() {
            return Err(AbelianError::DimensionMismatch {
                expected: self.generators.len(),
                found: element.len(),
            });
        }
        Ok(self.snf.v.left_apply(element))
    }

    /// Whether `element` (an integer combination of generators) is zero in the group.
    pub fn is_zero(&self, element: &[BigInt]) -> Result<bool, AbelianError> {
        Ok(self.order_of(element)?.is_some_and(|o| o.is_one()))
    }

    /// Order of an element, `None` when it has infinite order.
    pub fn order_of(&self, element: &[BigInt]) -> Result<Option<BigInt>, AbelianError> {
        let y = self.normal_coordinates(element)?;
        let k = self.snf.rank();
        if y[k..].iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        let order = self.snf.elementary_divisors.iter().zip(&y).fold(BigInt::one(), |acc, (d, c)| {
            let g = d.gcd(c);
            acc.lcm(&(d / g))
        });
        Ok(Some(order))
    }

    pub fn equal(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool, AbelianError> {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        if a.len() != b.len() {
            return Err(AbelianError::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        self.is_zero(&diff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("g{i}")).collect()
    }

    #[test]
    fn free_group() {
        let g = PresentedGroup::free(labels(13));
        assert_eq!(g.rank(), 13);
        assert!(g.torsion().is_empty());
    }

    #[test]
    fn dimension_mismatch() {
        let rel = IntMatrix::from_i64(&[&[1, 2]]);
        assert!(PresentedGroup::new(labels(3), rel).is_err());
    }

    #[test]
    fn orders() {
        // Z^2 / <(2, 0)> = Z/2 + Z
        let g = PresentedGroup::new(labels(2), IntMatrix::from_i64(&[&[2, 0]])).unwrap();
        assert_eq!(g.structure().to_string(), "Z^1 + Z/2");
        let one = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(g.order_of(&one(&[1, 0])).unwrap(), Some(BigInt::from(2)));
        assert_eq!(g.order_of(&one(&[0, 1])).unwrap(), None);
        assert!(g.is_zero(&one(&[4, 0])).unwrap());
        assert!(!g.is_zero(&one(&[3, 0])).unwrap());
    }
}
