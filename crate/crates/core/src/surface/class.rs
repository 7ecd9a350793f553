// SPDX-License-Identifier: Apache-2.0

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abelian::rational::{as_integers, q};
use crate::abelian::Rational;

/// Identity of a Picard basis. Classes only combine when their ids agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisId(u64);

impl BasisId {
    pub(crate) fn of_labels(labels: &[String]) -> Self {
        let mut h = DefaultHasher::new();
        labels.hash(&mut h);
        BasisId(h.finish())
    }
}

/// A divisor class with exact rational coefficients over a named Picard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    basis: BasisId,
    coeffs: Vec<Rational>,
}

impl DivisorClass {
    pub(crate) fn new(basis: BasisId, coeffs: Vec<Rational>) -> Self {
        DivisorClass { basis, coeffs }
    }

    pub fn basis(&self) -> BasisId {
        self.basis
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        as_integers(&self.coeffs)
    }

    pub fn same_basis(&self, other: &DivisorClass) -> bool {
        self.basis == other.basis && self.coeffs.len() == other.coeffs.len()
    }

    pub fn scaled(&self, k: &Rational) -> DivisorClass {
        DivisorClass {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Option<DivisorClass> {
        self.same_basis(other).then(|| DivisorClass {
            basis: self.basis,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &DivisorClass) -> Option<DivisorClass> {
        self.checked_add(&-other)
    }

    /// Human-readable form such as `3H - 2E1 - R1`.
    pub fn display_with(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (c, label) in self.coeffs.iter().zip(labels) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let body = if mag.is_one() {
                label.clone()
            } else if mag.is_integer() {
                format!("{mag}{label}")
            } else {
                format!("({mag}){label}")
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    /// # Panics
    /// Panics when the classes live on different surfaces.
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("divisor classes on different surfaces")
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs).expect("divisor classes on different surfaces")
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.scaled(&-Rational::one())
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scaled(&q(self))
    }
}
