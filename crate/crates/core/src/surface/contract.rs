// SPDX-License-Identifier: Apache-2.0

//! Contraction of a boundary chain and Mumford's rational intersection
//! theory on the contracted surface.
//!
//! Classes on the contraction `X` are represented by proper transforms in
//! the resolution's basis, considered modulo the boundary curves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{DivisorClass, SurfaceError, SurfaceModel};
use crate::abelian::rational::q;
use crate::abelian::{
    hermite_normal_form, integer_coordinates, kernel_basis, same_lattice, saturate, smith_normal_form,
    solve_rational_linear, IntMatrix, PresentedGroup, Rational,
};
use crate::qlattice::{signature, QuadLattice};

#[derive(Clone, Debug)]
pub struct ContractedSurface {
    source: SurfaceModel,
    class_group: PresentedGroup,
    boundary_gram: Vec<Vec<Rational>>,
}

/// Contracts the boundary of `surface`. The boundary Gram must be negative
/// definite, which makes the Mumford coefficients unique.
pub fn contract(surface: &SurfaceModel) -> Result<ContractedSurface, SurfaceError> {
    let boundary = surface.boundary_classes();
    if boundary.is_empty() {
        return Err(SurfaceError::EmptyBoundary);
    }
    let mut boundary_gram = Vec::with_capacity(boundary.len());
    for a in &boundary {
        let row = boundary
            .iter()
            .map(|b| surface.pairing(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        boundary_gram.push(row);
    }
    let sig = signature(&boundary_gram);
    if sig.negative != boundary.len() {
        return Err(SurfaceError::BoundaryNotNegativeDefinite(sig));
    }
    let rows: Vec<Vec<BigInt>> = surface
        .boundary()
        .iter()
        .map(|b| b.class.integer_coefficients().ok_or_else(|| SurfaceError::NonIntegral(b.name.clone())))
        .collect::<Result<_, _>>()?;
    let relations = IntMatrix::from_rows(surface.rank(), &rows)?;
    let class_group = PresentedGroup::new(surface.labels().to_vec(), relations)?;
    Ok(ContractedSurface {
        source: surface.clone(),
        class_group,
        boundary_gram,
    })
}

impl ContractedSurface {
    pub fn source(&self) -> &SurfaceModel {
        &self.source
    }

    pub fn class_group(&self) -> &PresentedGroup {
        &self.class_group
    }

    pub fn boundary_gram(&self) -> &[Vec<Rational>] {
        &self.boundary_gram
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary_gram.len()
    }

    /// `(D . C_1, ..., D . C_s)`.
    pub fn boundary_pairings(&self, d: &DivisorClass) -> Result<Vec<Rational>, SurfaceError> {
        self.source
            .boundary()
            .iter()
            .map(|b| self.source.pairing(d, &b.class))
            .collect()
    }

    /// Coefficients `mu_i` with `(D + sum mu_j C_j) . C_i = 0` for every `i`.
    pub fn mumford_coefficients(&self, d: &DivisorClass) -> Result<Vec<Rational>, SurfaceError> {
        let rhs: Vec<Rational> = self.boundary_pairings(d)?.into_iter().map(|x| -x).collect();
        let mu = solve_rational_linear(&self.boundary_gram, &rhs)?
            .expect("negative definite boundary Gram is invertible");
        Ok(mu)
    }

    /// `phi^*(D) = D + sum mu_i C_i`, orthogonal to every boundary curve.
    pub fn mumford_pullback(&self, d: &DivisorClass) -> Result<DivisorClass, SurfaceError> {
        let mu = self.mumford_coefficients(d)?;
        let mut out = d.clone();
        for (m, b) in mu.iter().zip(self.source.boundary()) {
            out = &out + &b.class.scaled(m);
        }
        Ok(out)
    }

    /// Mumford intersection number, computed as `phi^*(D) . F` and as
    /// `D . phi^*(F)`; the two routes are asserted to agree.
    pub fn mumford_pairing(&self, d: &DivisorClass, f: &DivisorClass) -> Result<Rational, SurfaceError> {
        let left = self.source.pairing(&self.mumford_pullback(d)?, f)?;
        let right = self.source.pairing(d, &self.mumford_pullback(f)?)?;
        assert_eq!(left, right, "Mumford pairing is not symmetric");
        Ok(left)
    }

    fn boundary_parities(&self, d: &DivisorClass) -> Result<Vec<bool>, SurfaceError> {
        if !d.is_integral() {
            return Err(SurfaceError::NonIntegral(self.source.format_class(d)));
        }
        Ok(self
            .boundary_pairings(d)?
            .iter()
            .map(|x| x.to_integer().is_odd())
            .collect())
    }

    /// Local multiplicities `d_i = (D . C_i) mod 2` for the first `s - 1`
    /// boundary curves. The last parity is forced (the boundary sums to an
    /// even class) and is checked for consistency.
    pub fn parity_vector(&self, d: &DivisorClass) -> Result<Vec<bool>, SurfaceError> {
        let mut parities = self.boundary_parities(d)?;
        let last = parities.pop().expect("boundary is nonempty");
        let expected = parities.iter().fold(false, |acc, &p| acc ^ p);
        if last != expected {
            return Err(SurfaceError::ParityInconsistent(self.source.format_class(d)));
        }
        Ok(parities)
    }

    /// Integer coordinates of an integral class, for class-group queries.
    pub fn integral(&self, d: &DivisorClass) -> Result<Vec<BigInt>, SurfaceError> {
        self.source.check(d)?;
        d.integer_coefficients()
            .ok_or_else(|| SurfaceError::NonIntegral(self.source.format_class(d)))
    }

    pub fn is_zero_in_class_group(&self, d: &DivisorClass) -> Result<bool, SurfaceError> {
        Ok(self.class_group.is_zero(&self.integral(d)?)?)
    }

    /// Order in `Cl(X)`, `None` for infinite order.
    pub fn order_in_class_group(&self, d: &DivisorClass) -> Result<Option<BigInt>, SurfaceError> {
        Ok(self.class_group.order_of(&self.integral(d)?)?)
    }

    /// Pic of a general fiber of a smoothing, embedded in `Cl(X)`: classes
    /// whose proper transforms meet every boundary curve evenly.
    pub fn picard_of_general_fiber(&self) -> Result<GeneralFiberPicard, SurfaceError> {
        GeneralFiberPicard::compute(self)
    }
}

/// The image of `Pic(X_t)` in `Cl(X)`, with its Mumford Gram.
#[derive(Clone, Debug)]
pub struct GeneralFiberPicard {
    /// Mumford Gram on a basis of the image modulo torsion.
    pub lattice: QuadLattice,
    /// Representatives in `Pic(V)` of that basis.
    pub basis: Vec<DivisorClass>,
    /// Basis of `{D in Pic(V) : D . C_i even for all i}`.
    pub preimage_basis: Vec<Vec<BigInt>>,
    /// Saturation of the boundary span; modulo the boundary it is the torsion of `Cl(X)`.
    pub boundary_saturation: Vec<Vec<BigInt>>,
    pub torsion: Vec<BigInt>,
    /// `[Cl(X)/torsion : image]`.
    pub index_in_free_part: BigInt,
    /// Dimension over F_2 of the image of the parity map.
    pub parity_rank: usize,
}

impl GeneralFiberPicard {
    fn compute(x: &ContractedSurface) -> Result<Self, SurfaceError> {
        let source = &x.source;
        let n = source.rank();
        let s = x.boundary_len();
        for row in &x.boundary_gram {
            for e in row {
                if !e.is_integer() || e.to_integer().is_odd() {
                    return Err(SurfaceError::ParityNotWellDefined);
                }
            }
        }

        // D . C_i as integer functionals on Pic(V).
        let unit = |j: usize| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::one();
            source.class_from_integers(&v)
        };
        let mut functionals = vec![vec![BigInt::zero(); n + s]; s];
        for j in 0..n {
            let e = unit(j)?;
            for (i, p) in x.boundary_pairings(&e)?.iter().enumerate() {
                functionals[i][j] = p.to_integer();
            }
        }
        for (i, row) in functionals.iter_mut().enumerate() {
            row[n + i] = BigInt::from(2);
        }
        // {x : B x = -2 y} projected to x is the even-pairing sublattice.
        let ker = kernel_basis(&IntMatrix::from_rows(n + s, &functionals)?);
        let projected: Vec<Vec<BigInt>> = ker.iter().map(|v| v[..n].to_vec()).collect();
        let preimage_basis = hermite_normal_form(&IntMatrix::from_rows(n, &projected)?).to_rows();

        let boundary_rows = x.class_group.relations().to_rows();
        let boundary_saturation = saturate(&boundary_rows, n)?.basis;
        let coords = boundary_saturation
            .iter()
            .map(|v| integer_coordinates(&preimage_basis, v))
            .collect::<Option<Vec<_>>>()
            .ok_or(SurfaceError::TorsionNotInGeneralFiber)?;

        let parity_rank = saturate(&preimage_basis, n)?
            .index
            .bits()
            .saturating_sub(1) as usize;
        let mut joined = preimage_basis.clone();
        joined.extend(boundary_saturation.iter().cloned());
        let index_in_free_part = saturate(&joined, n)?.index;

        // Split the preimage as (boundary saturation) + complement.
        let m = preimage_basis.len();
        let k = coords.len();
        let qm = IntMatrix::from_rows(m, &coords)?;
        let snf = smith_normal_form(&qm);
        debug_assert!(snf.elementary_divisors.iter().all(One::is_one));
        let v_inv = snf.v.inverse_unimodular().expect("SNF witness is unimodular");
        let pmat = IntMatrix::from_rows(n, &preimage_basis)?;
        let new_basis = &v_inv * &pmat;
        let free_rows: Vec<Vec<BigInt>> = (k..m).map(|i| new_basis.row(i).to_vec()).collect();
        let free_rows = if free_rows.is_empty() {
            free_rows
        } else {
            hermite_normal_form(&IntMatrix::from_rows(n, &free_rows)?).to_rows()
        };

        let basis: Vec<DivisorClass> = free_rows
            .iter()
            .map(|r| source.class_from_integers(r))
            .collect::<Result<_, _>>()?;
        let mut gram = vec![vec![q(0); basis.len()]; basis.len()];
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let v = x.mumford_pairing(&basis[i], &basis[j])?;
                gram[j][i] = v.clone();
                gram[i][j] = v;
            }
        }
        let labels = basis.iter().map(|b| source.format_class(b)).collect();
        let lattice = QuadLattice::new(labels, gram)?;
        debug_assert!(same_lattice(
            &[free_rows.clone(), boundary_saturation.clone()].concat(),
            &preimage_basis,
            n
        )?);
        Ok(GeneralFiberPicard {
            lattice,
            basis,
            preimage_basis,
            boundary_saturation,
            torsion: x.class_group.torsion().to_vec(),
            index_in_free_part,
            parity_rank,
        })
    }

    /// Whether an integral class lies in the image of `Pic(X_t)`.
    pub fn contains(&self, x: &ContractedSurface, d: &DivisorClass) -> Result<bool, SurfaceError> {
        if !d.is_integral() {
            return Ok(false);
        }
        Ok(x.boundary_pairings(d)?.iter().all(|p| p.to_integer().is_even()))
    }

    /// Whether `classes` together with the torsion generate the whole image.
    pub fn generated_by(&self, classes: &[DivisorClass]) -> Result<bool, SurfaceError> {
        let n = self.preimage_basis.first().map_or(0, Vec::len);
        let mut rows: Vec<Vec<BigInt>> = classes
            .iter()
            .map(|c| c.integer_coefficients().ok_or(SurfaceError::NonIntegral(String::new())))
            .collect::<Result<_, _>>()?;
        rows.extend(self.boundary_saturation.iter().cloned());
        Ok(same_lattice(&rows, &self.preimage_basis, n)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::rational::q_frac;
    use crate::surface::{parse_surface, NamedClass};

    fn pencil() -> ContractedSurface {
        let s = parse_surface(include_str!("../../data/cubic_pencil.surface")).unwrap();
        contract(&s).unwrap()
    }

    fn c(x: &ContractedSurface, name: &str) -> DivisorClass {
        let s = x.source();
        s.class_named(name)
            .cloned()
            .or_else(|| s.basis_class(name).ok())
            .unwrap()
    }

    #[test]
    fn boundary_curves() {
        let x = pencil();
        assert_eq!(x.boundary_gram(), &[vec![q(-4), q(0)], vec![q(0), q(-4)]]);
    }

    #[test]
    fn class_group_of_pencil() {
        let x = pencil();
        assert_eq!(x.class_group().rank(), 10);
        assert_eq!(x.class_group().torsion(), &[BigInt::from(2)]);
        let k = c(&x, "K");
        assert_eq!(x.order_in_class_group(&k).unwrap(), Some(BigInt::from(2)));
        assert!(x.is_zero_in_class_group(&(2 * &k)).unwrap());
    }

    #[test]
    fn pullback_coefficients() {
        let x = pencil();
        assert_eq!(x.mumford_coefficients(&c(&x, "H")).unwrap(), vec![q_frac(3, 4), q_frac(3, 4)]);
        assert_eq!(x.mumford_coefficients(&c(&x, "E1")).unwrap(), vec![q_frac(1, 2), q(0)]);
        let orth = c(&x, "alpha1");
        assert_eq!(x.mumford_coefficients(&orth).unwrap(), vec![q(0), q(0)]);
    }

    #[test]
    fn intersection_table() {
        let x = pencil();
        let p = |a: &str, b: &str| x.mumford_pairing(&c(&x, a), &c(&x, b)).unwrap();
        assert_eq!(p("H", "H"), q_frac(11, 2));
        assert_eq!(p("H", "R4"), q_frac(3, 2));
        assert_eq!(p("R4", "R4"), q_frac(-1, 2));
        assert_eq!(p("R4", "R7"), q_frac(1, 2));
        assert_eq!(p("E1", "E1"), q(0));
        assert_eq!(p("E2", "E2"), q(0));
        assert_eq!(p("K", "K"), q(0));
    }

    #[test]
    fn pairing_with_boundary_orthogonal_class_is_plain() {
        let x = pencil();
        let f = c(&x, "alpha3");
        for name in ["H", "E1", "R9", "alpha8"] {
            let d = c(&x, name);
            assert_eq!(x.mumford_pairing(&d, &f).unwrap(), x.source().pairing(&d, &f).unwrap());
        }
    }

    #[test]
    fn parity() {
        let x = pencil();
        assert_eq!(x.parity_vector(&c(&x, "R9")).unwrap(), vec![true]);
        assert_eq!(x.parity_vector(&c(&x, "H")).unwrap(), vec![true]);
        assert_eq!(x.parity_vector(&c(&x, "E1")).unwrap(), vec![false]);
        let half = c(&x, "E1").scaled(&q_frac(1, 2));
        assert!(matches!(x.parity_vector(&half), Err(SurfaceError::NonIntegral(_))));
    }

    #[test]
    fn general_fiber() {
        let x = pencil();
        let pic = x.picard_of_general_fiber().unwrap();
        assert_eq!(pic.lattice.rank(), 10);
        assert_eq!(pic.index_in_free_part, BigInt::from(2));
        assert_eq!(pic.parity_rank, 1);
        let gens: Vec<DivisorClass> = ["u1", "u2", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"]
            .iter()
            .map(|n| c(&x, n))
            .collect();
        for g in &gens {
            assert!(pic.contains(&x, g).unwrap());
        }
        assert!(pic.contains(&x, &c(&x, "K")).unwrap());
        assert!(!pic.contains(&x, &c(&x, "R9")).unwrap());
        assert!(pic.generated_by(&gens).unwrap());
    }

    #[test]
    fn contraction_preconditions() {
        let s = parse_surface(include_str!("../../data/cubic_pencil.surface")).unwrap();
        let bare = s.clone().with_boundary(Vec::new()).unwrap();
        assert!(matches!(contract(&bare), Err(SurfaceError::EmptyBoundary)));
        let h = s.basis_class("H").unwrap();
        let positive = s.with_boundary(vec![NamedClass { name: "H".into(), class: h }]).unwrap();
        assert!(matches!(contract(&positive), Err(SurfaceError::BoundaryNotNegativeDefinite(_))));
    }

    #[test]
    fn single_curve_on_rank_two_surface() {
        // C = 2E has C^2 = -4, so Cl = Z^2 / <(0, 2)>.
        let s = SurfaceModel::projective_plane().blow_up_point("E").unwrap();
        let c2 = s.class(&[("E", 2)]).unwrap();
        let s = s.with_boundary(vec![NamedClass { name: "C".into(), class: c2 }]).unwrap();
        let x = contract(&s).unwrap();
        assert_eq!(x.class_group().rank(), 1);
        assert_eq!(x.class_group().torsion(), &[BigInt::from(2)]);
        let pic = x.picard_of_general_fiber().unwrap();
        assert_eq!(pic.index_in_free_part, BigInt::one());
    }
}
