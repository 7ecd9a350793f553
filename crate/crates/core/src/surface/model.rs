// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BasisId, DivisorClass, SurfaceError};
use crate::abelian::rational::{dot, q};
use crate::abelian::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClass {
    pub name: String,
    pub class: DivisorClass,
}

/// Picard lattice of a smooth rational surface with a chosen boundary chain.
///
/// The boundary curves are listed in chain order; they are the curves a
/// later [`contract`](super::contract) collapses. No effectivity or
/// curve-existence checks are made: this is lattice bookkeeping only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    name: String,
    labels: Vec<String>,
    gram: Vec<Vec<BigInt>>,
    canonical: DivisorClass,
    boundary: Vec<NamedClass>,
    classes: Vec<NamedClass>,
    id: BasisId,
}

impl SurfaceModel {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        gram: Vec<Vec<BigInt>>,
        canonical: Vec<Rational>,
    ) -> Result<Self, SurfaceError> {
        let n = labels.len();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SurfaceError::DuplicateLabel(l.clone()));
            }
        }
        if gram.len() != n || gram.iter().any(|r| r.len() != n) || canonical.len() != n {
            return Err(SurfaceError::DimensionMismatch { expected: n });
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(SurfaceError::AsymmetricGram(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let id = BasisId::of_labels(&labels);
        Ok(SurfaceModel {
            name: name.into(),
            labels,
            gram,
            canonical: DivisorClass::new(id, canonical),
            boundary: Vec::new(),
            classes: Vec::new(),
            id,
        })
    }

    /// `P^2`: basis `[H]`, `H^2 = 1`, `K = -3H`.
    pub fn projective_plane() -> Self {
        Self::new("P2", vec!["H".into()], vec![vec![BigInt::from(1)]], vec![q(-3)])
            .expect("static data")
    }

    /// Blow up a general point: adds an exceptional class `E` with `E^2 = -1`,
    /// orthogonal to the old basis, and sets `K' = K + E`. Existing classes
    /// are carried over as total transforms.
    pub fn blow_up_point(&self, label: &str) -> Result<SurfaceModel, SurfaceError> {
        if self.labels.iter().any(|l| l == label) {
            return Err(SurfaceError::DuplicateLabel(label.to_string()));
        }
        let n = self.rank();
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut gram: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.push(BigInt::zero());
                r
            })
            .collect();
        let mut last = vec![BigInt::zero(); n + 1];
        last[n] = BigInt::from(-1);
        gram.push(last);
        let mut canonical = self.canonical.coefficients().to_vec();
        canonical.push(q(1));
        let mut out = SurfaceModel::new(self.name.clone(), labels, gram, canonical)?;
        let lift = |c: &NamedClass| {
            let mut coeffs = c.class.coefficients().to_vec();
            coeffs.push(q(0));
            NamedClass {
                name: c.name.clone(),
                class: DivisorClass::new(out.id, coeffs),
            }
        };
        let boundary = self.boundary.iter().map(lift).collect();
        let classes = self.classes.iter().map(lift).collect();
        out.boundary = boundary;
        out.classes = classes;
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn basis_id(&self) -> BasisId {
        self.id
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn boundary(&self) -> &[NamedClass] {
        &self.boundary
    }

    pub fn boundary_classes(&self) -> Vec<DivisorClass> {
        self.boundary.iter().map(|b| b.class.clone()).collect()
    }

    pub fn named_classes(&self) -> &[NamedClass] {
        &self.classes
    }

    pub fn class_named(&self, name: &str) -> Option<&DivisorClass> {
        self.classes
            .iter()
            .chain(&self.boundary)
            .find(|c| c.name == name)
            .map(|c| &c.class)
    }

    fn index_of(&self, label: &str) -> Result<usize, SurfaceError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SurfaceError::UnknownLabel(label.to_string()))
    }

    pub fn zero_class(&self) -> DivisorClass {
        DivisorClass::new(self.id, vec![q(0); self.rank()])
    }

    pub fn basis_class(&self, label: &str) -> Result<DivisorClass, SurfaceError> {
        self.class(&[(label, 1)])
    }

    /// Integer combination of basis labels, e.g. `[("H", 3), ("E1", -2)]`.
    pub fn class(&self, terms: &[(&str, i64)]) -> Result<DivisorClass, SurfaceError> {
        let mut coeffs = vec![q(0); self.rank()];
        for &(label, k) in terms {
            coeffs[self.index_of(label)?] += q(k);
        }
        Ok(DivisorClass::new(self.id, coeffs))
    }

    pub fn class_from_coefficients(&self, coeffs: Vec<Rational>) -> Result<DivisorClass, SurfaceError> {
        if coeffs.len() != self.rank() {
            return Err(SurfaceError::DimensionMismatch { expected: self.rank() });
        }
        Ok(DivisorClass::new(self.id, coeffs))
    }

    pub fn class_from_integers(&self, coeffs: &[BigInt]) -> Result<DivisorClass, SurfaceError> {
        self.class_from_coefficients(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub(crate) fn check(&self, d: &DivisorClass) -> Result<(), SurfaceError> {
        if d.basis() != self.id || d.rank() != self.rank() {
            return Err(SurfaceError::BasisMismatch);
        }
        Ok(())
    }

    /// Intersection pairing on `Pic`, extended bilinearly to rational classes.
    pub fn pairing(&self, d: &DivisorClass, f: &DivisorClass) -> Result<Rational, SurfaceError> {
        self.check(d)?;
        self.check(f)?;
        let gf: Vec<Rational> = self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .zip(f.coefficients())
                    .map(|(g, c)| c * Rational::from_integer(g.clone()))
                    .sum()
            })
            .collect();
        Ok(dot(d.coefficients(), &gf))
    }

    /// `D - sum m_i E_i` for the listed exceptional labels and multiplicities.
    pub fn proper_transform(&self, d: &DivisorClass, assignments: &[(&str, i64)]) -> Result<DivisorClass, SurfaceError> {
        self.check(d)?;
        let mut coeffs = d.coefficients().to_vec();
        for &(label, m) in assignments {
            coeffs[self.index_of(label)?] -= q(m);
        }
        Ok(DivisorClass::new(self.id, coeffs))
    }

    pub fn with_canonical(mut self, canonical: DivisorClass) -> Result<Self, SurfaceError> {
        self.check(&canonical)?;
        self.canonical = canonical;
        Ok(self)
    }

    pub fn with_class(mut self, name: impl Into<String>, class: DivisorClass) -> Result<Self, SurfaceError> {
        self.check(&class)?;
        let name = name.into();
        if self.class_named(&name).is_some() || self.labels.contains(&name) {
            return Err(SurfaceError::DuplicateLabel(name));
        }
        self.classes.push(NamedClass { name, class });
        Ok(self)
    }

    /// Sets the boundary chain. Boundary classes must be integral.
    pub fn with_boundary(mut self, boundary: Vec<NamedClass>) -> Result<Self, SurfaceError> {
        for b in &boundary {
            self.check(&b.class)?;
            if !b.class.is_integral() {
                return Err(SurfaceError::NonIntegral(b.name.clone()));
            }
        }
        self.boundary = boundary;
        Ok(self)
    }

    pub fn format_class(&self, d: &DivisorClass) -> String {
        d.display_with(&self.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::rational::q;

    fn blown_up(labels: &[&str]) -> SurfaceModel {
        labels
            .iter()
            .fold(SurfaceModel::projective_plane(), |s, l| s.blow_up_point(l).unwrap())
    }

    #[test]
    fn plane() {
        let p = SurfaceModel::projective_plane();
        let h = p.basis_class("H").unwrap();
        assert_eq!(p.pairing(&h, &h).unwrap(), q(1));
        assert_eq!(p.canonical(), &p.class(&[("H", -3)]).unwrap());
        assert_eq!(p.pairing(p.canonical(), p.canonical()).unwrap(), q(9));
    }

    #[test]
    fn canonical_degree_drops_with_blowups() {
        let s = blown_up(&["E"]);
        assert_eq!(s.pairing(s.canonical(), s.canonical()).unwrap(), q(8));
        let nine: Vec<String> = (1..=9).map(|i| format!("R{i}")).collect();
        let nine: Vec<&str> = nine.iter().map(String::as_str).collect();
        let s = blown_up(&nine);
        assert_eq!(s.pairing(s.canonical(), s.canonical()).unwrap(), q(0));
    }

    #[test]
    fn exceptional_class() {
        let s = blown_up(&["E"]);
        let e = s.basis_class("E").unwrap();
        let h = s.basis_class("H").unwrap();
        assert_eq!(s.pairing(&e, &e).unwrap(), q(-1));
        assert_eq!(s.pairing(&e, &h).unwrap(), q(0));
    }

    #[test]
    fn eleven_blowups() {
        let mut labels: Vec<String> = (1..=9).map(|i| format!("R{i}")).collect();
        labels.extend(["E1".to_string(), "E2".to_string()]);
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let s = blown_up(&refs);
        assert_eq!(s.rank(), 12);
        let mut terms: Vec<(&str, i64)> = vec![("H", -3)];
        terms.extend(refs.iter().map(|l| (*l, 1)));
        assert_eq!(s.canonical(), &s.class(&terms).unwrap());
    }

    #[test]
    fn duplicate_label() {
        let s = blown_up(&["E"]);
        assert_eq!(s.blow_up_point("E"), Err(SurfaceError::DuplicateLabel("E".into())));
        assert_eq!(s.blow_up_point("H"), Err(SurfaceError::DuplicateLabel("H".into())));
    }

    #[test]
    fn proper_transforms() {
        let s = blown_up(&["E1"]);
        let cubic = s.class(&[("H", 3)]).unwrap();
        let t = s.proper_transform(&cubic, &[("E1", 2)]).unwrap();
        assert_eq!(t, s.class(&[("H", 3), ("E1", -2)]).unwrap());
        let line = s.basis_class("H").unwrap();
        assert_eq!(s.proper_transform(&line, &[]).unwrap(), line);
        assert_eq!(
            s.proper_transform(&line, &[("E9", 1)]),
            Err(SurfaceError::UnknownLabel("E9".into()))
        );
    }

    #[test]
    fn classes_do_not_mix_across_surfaces() {
        let a = blown_up(&["E"]);
        let b = blown_up(&["F"]);
        let e = a.basis_class("E").unwrap();
        let f = b.basis_class("F").unwrap();
        assert_eq!(a.pairing(&e, &f), Err(SurfaceError::BasisMismatch));
        assert!(e.checked_add(&f).is_none());
    }

    #[test]
    fn display() {
        let s = blown_up(&["E1"]);
        let c = s.class(&[("H", 3), ("E1", -2)]).unwrap();
        assert_eq!(s.format_class(&c), "3H - 2E1");
        assert_eq!(s.format_class(&s.zero_class()), "0");
        let half = c.scaled(&crate::abelian::rational::q_frac(1, 2));
        assert_eq!(s.format_class(&half), "(3/2)H - E1");
    }
}
