// SPDX-License-Identifier: Apache-2.0

//! Coble surfaces, their Coble-Mukai lattice, and verification of its
//! identification with `Pic` of a smoothing modulo the canonical class.
//!
//! A Coble surface here is a surface model whose boundary consists of
//! disjoint-up-to-parity (-4)-curves `b_1, ..., b_s` with `-2K ~ sum b_i`.
//! The extended Picard lattice adjoins the half-classes `b_i / 2`; the
//! Coble-Mukai lattice is the part of it orthogonal to every `b_i`.
//!
//! Lattice comparisons use invariants plus explicit pairing-preserving
//! maps. For even unimodular hyperbolic lattices of rank 10 this is
//! complete, since such a lattice is unique in its genus.
//!
//! Rational vectors over `Pic(V)` are stored doubled, as integer vectors.

mod report;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use report::{Check, CheckStatus, VerificationReport};

use crate::abelian::rational::{as_integers, q, to_rational};
use crate::abelian::{
    hermite_normal_form, integer_coordinates, kernel_basis, same_lattice, AbelianError, IntMatrix, Rational,
};
use crate::qlattice::{
    is_enriques_lattice, matches_tree_cartan, Graph, LatticeError, QuadLattice,
};
use crate::surface::{ContractedSurface, DivisorClass, NamedClass, SurfaceError, SurfaceModel};

#[derive(Debug, Error)]
pub enum EnriquesError {
    #[error("boundary curve {name} has self-intersection {value}, expected -4")]
    NotMinusFour { name: String, value: Rational },
    #[error("{0} boundary curves; at most 10 are possible")]
    TooManyCurves(usize),
    #[error("boundary curves {a} and {b} meet with odd intersection number {value}")]
    OddPairing { a: String, b: String, value: Rational },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// A surface model whose boundary is the set of (-4)-curves of a Coble surface.
#[derive(Clone, Debug)]
pub struct CobleSurfaceData {
    surface: SurfaceModel,
}

impl CobleSurfaceData {
    pub fn new(surface: SurfaceModel) -> Result<Self, EnriquesError> {
        let betas = surface.boundary();
        if betas.len() > 10 {
            return Err(EnriquesError::TooManyCurves(betas.len()));
        }
        for (i, a) in betas.iter().enumerate() {
            for b in &betas[i..] {
                let v = surface.pairing(&a.class, &b.class)?;
                if a.name == b.name {
                    if v != q(-4) {
                        return Err(EnriquesError::NotMinusFour { name: a.name.clone(), value: v });
                    }
                } else if !v.is_integer() || v.to_integer().is_odd() {
                    return Err(EnriquesError::OddPairing {
                        a: a.name.clone(),
                        b: b.name.clone(),
                        value: v,
                    });
                }
            }
        }
        Ok(CobleSurfaceData { surface })
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn betas(&self) -> &[NamedClass] {
        self.surface.boundary()
    }

    /// `2K + sum b_i`, which vanishes on a Coble surface.
    pub fn anticanonical_residual(&self) -> DivisorClass {
        anticanonical_residual(&self.surface)
    }
}

fn anticanonical_residual(surface: &SurfaceModel) -> DivisorClass {
    let mut r = 2 * surface.canonical();
    for b in surface.boundary() {
        r = &r + &b.class;
    }
    r
}

/// The check `2K + sum b_i = 0` in `Pic(V)`, included in every report.
pub fn anticanonical_check(surface: &SurfaceModel) -> Check {
    let r = anticanonical_residual(surface);
    let c = Check::pass_if("coble.anticanonical", r.is_zero(), "-2K is the sum of the (-4)-curves")
        .with("curves", surface.boundary().len());
    c.with("2K + sum", surface.format_class(&r))
}

fn pic_pair(surface: &SurfaceModel, x: &[Rational], y: &[Rational]) -> Rational {
    let g = surface.gram();
    let mut acc = Rational::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !g[i][j].is_zero() {
                acc += xi * yj * Rational::from_integer(g[i][j].clone());
            }
        }
    }
    acc
}

fn halve(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::new(x.clone(), BigInt::from(2))).collect()
}

fn double(v: &[Rational]) -> Option<Vec<BigInt>> {
    let two = q(2);
    as_integers(&v.iter().map(|x| x * &two).collect::<Vec<_>>())
}

fn half_label(surface: &SurfaceModel, doubled: &[BigInt]) -> String {
    surface.format_class(&surface.class_from_coefficients(halve(doubled)).expect("ranks agree"))
}

/// A sublattice of `Pic(V) (x) Q` with basis `doubled[k] / 2`.
#[derive(Clone, Debug)]
pub struct HalfLattice {
    pub lattice: QuadLattice,
    pub doubled: Vec<Vec<BigInt>>,
}

impl HalfLattice {
    fn build(surface: &SurfaceModel, doubled: Vec<Vec<BigInt>>) -> Result<Self, EnriquesError> {
        let halves: Vec<Vec<Rational>> = doubled.iter().map(|d| halve(d)).collect();
        let gram = halves
            .iter()
            .map(|x| halves.iter().map(|y| pic_pair(surface, x, y)).collect())
            .collect();
        let labels = doubled.iter().map(|d| half_label(surface, d)).collect();
        Ok(HalfLattice {
            lattice: QuadLattice::new(labels, gram)?,
            doubled,
        })
    }

    pub fn rank(&self) -> usize {
        self.doubled.len()
    }

    /// Basis vectors as rational coordinates over `Pic(V)`.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.doubled.iter().map(|d| halve(d)).collect()
    }

    /// Integer coordinates of `v` (given over `Pic(V)`) in this basis.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<BigInt>> {
        integer_coordinates(&self.doubled, &double(v)?)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// `Pic(V)` together with the half-classes `b_i / 2`.
#[derive(Clone, Debug)]
pub struct ExtendedPicard {
    pub half: HalfLattice,
    /// `[extended : Pic(V)]`.
    pub index: BigInt,
}

pub fn extended_picard(data: &CobleSurfaceData) -> Result<ExtendedPicard, EnriquesError> {
    let surface = data.surface();
    let n = surface.rank();
    let mut gens: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(2);
            v
        })
        .collect();
    for b in data.betas() {
        gens.push(b.class.integer_coefficients().ok_or_else(|| SurfaceError::NonIntegral(b.name.clone()))?);
    }
    let h = hermite_normal_form(&IntMatrix::from_rows(n, &gens)?);
    let det = h.determinant()?.abs();
    let index = BigInt::from(2).pow(n as u32) / det;
    Ok(ExtendedPicard {
        half: HalfLattice::build(surface, h.to_rows())?,
        index,
    })
}

#[derive(Clone, Debug)]
pub struct CobleMukai {
    pub extended: ExtendedPicard,
    pub half: HalfLattice,
}

impl CobleMukai {
    pub fn lattice(&self) -> &QuadLattice {
        &self.half.lattice
    }
}

/// Vectors of the extended Picard lattice orthogonal to every (-4)-curve.
/// The result is saturated in the extended lattice.
pub fn coble_mukai_lattice(data: &CobleSurfaceData) -> Result<CobleMukai, EnriquesError> {
    let surface = data.surface();
    let n = surface.rank();
    let extended = extended_picard(data)?;
    let ext = &extended.half.doubled;
    let mut functionals = Vec::new();
    for b in data.betas() {
        // h . b is an integer since h and b are integral; it is twice (h/2) . b
        let row: Vec<BigInt> = ext
            .iter()
            .map(|h| pic_pair(surface, &to_rational(h), b.class.coefficients()).to_integer())
            .collect();
        functionals.push(row);
    }
    let kernel = kernel_basis(&IntMatrix::from_rows(ext.len(), &functionals)?);
    let doubled: Vec<Vec<BigInt>> = kernel
        .iter()
        .map(|z| {
            let mut v = vec![BigInt::zero(); n];
            for (zk, h) in z.iter().zip(ext) {
                for (vi, hi) in v.iter_mut().zip(h) {
                    *vi += zk * hi;
                }
            }
            v
        })
        .collect();
    let doubled = if doubled.is_empty() {
        doubled
    } else {
        hermite_normal_form(&IntMatrix::from_rows(n, &doubled)?).to_rows()
    };
    let half = HalfLattice::build(surface, doubled)?;
    Ok(CobleMukai { extended, half })
}

fn fmt_vec<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn fmt_matrix<T: ToString>(m: &[Vec<T>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| fmt_vec(r)).collect();
    format!("[{}]", rows.join(", "))
}

/// Compares `Pic(X_t)`, viewed inside `Cl(X)`, with the Coble-Mukai lattice
/// via the Mumford pullback. `k` is the canonical class of the contraction.
/// Failures, including unmet preconditions, are reported rather than
/// returned as errors.
pub fn verify_cm_pic_identification(
    c: &ContractedSurface,
    data: &CobleSurfaceData,
    k: &DivisorClass,
) -> VerificationReport {
    let mut report = VerificationReport::new("Pic of the smoothing modulo K versus the Coble-Mukai lattice");
    report.push(anticanonical_check(data.surface()));
    if let Err(e) = identification_checks(c, data, k, &mut report) {
        report.push(
            Check::new("identification.preconditions", CheckStatus::Fail, "inputs describe one Coble surface")
                .with("error", e),
        );
    }
    report
}

fn identification_checks(
    c: &ContractedSurface,
    data: &CobleSurfaceData,
    k: &DivisorClass,
    report: &mut VerificationReport,
) -> Result<(), EnriquesError> {
    let surface = c.source();
    if surface.basis_id() != data.surface().basis_id() {
        return Err(SurfaceError::BasisMismatch.into());
    }
    surface.pairing(k, k)?;
    let n = surface.rank();
    let pic = c.picard_of_general_fiber()?;
    let cm = coble_mukai_lattice(data)?;

    let images: Vec<DivisorClass> = pic.basis.iter().map(|b| c.mumford_pullback(b)).collect::<Result<_, _>>()?;
    let images_doubled: Vec<Option<Vec<BigInt>>> = images.iter().map(|d| double(d.coefficients())).collect();

    // (a) images lie in CM and pair as on Pic(X_t)
    let in_cm = images.iter().filter(|d| cm.half.contains(d.coefficients())).count();
    let mut mismatches = 0usize;
    for i in 0..images.len() {
        for j in 0..images.len() {
            let via_pullback = pic_pair(surface, images[i].coefficients(), images[j].coefficients());
            if &via_pullback != pic.lattice.entry(i, j) {
                mismatches += 1;
            }
        }
    }
    // membership criterion: a class of Pic(V) pulls back into the extended
    // lattice exactly when it meets every (-4)-curve evenly
    let mut criterion_disagreements = 0usize;
    for j in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[j] = BigInt::one();
        let e = surface.class_from_integers(&v)?;
        let even = c.boundary_pairings(&e)?.iter().all(|p| p.is_integer() && p.to_integer().is_even());
        let member = cm.extended.half.contains(c.mumford_pullback(&e)?.coefficients());
        if even != member {
            criterion_disagreements += 1;
        }
    }
    let ok_a = in_cm == images.len() && mismatches == 0 && criterion_disagreements == 0;
    report.push(
        Check::pass_if("identification.image-in-cm", ok_a, "pullback maps Pic of the smoothing into CM isometrically")
            .with("basis classes", images.len())
            .with("images in CM", in_cm)
            .with("pairing mismatches", format!("{mismatches} of {}", images.len() * images.len()))
            .with("even-intersection criterion disagreements", format!("{criterion_disagreements} of {n}")),
    );

    // (b) surjectivity
    let doubled: Option<Vec<Vec<BigInt>>> = images_doubled.iter().cloned().collect();
    let surjective = match &doubled {
        Some(rows) if !rows.is_empty() && !cm.half.doubled.is_empty() => same_lattice(rows, &cm.half.doubled, n)?,
        Some(rows) => rows.is_empty() && cm.half.doubled.is_empty(),
        None => false,
    };
    report.push(
        Check::pass_if("identification.surjective", surjective, "pullback is onto CM")
            .with("rank of image", images.len())
            .with("rank of CM", cm.half.rank()),
    );

    // (c) kernel on the preimage lattice is the torsion <K>
    let p_images: Vec<Vec<BigInt>> = pic
        .preimage_basis
        .iter()
        .map(|p| {
            let d = surface.class_from_integers(p)?;
            let pulled = c.mumford_pullback(&d)?;
            double(pulled.coefficients()).ok_or(SurfaceError::NonIntegral(surface.format_class(&pulled)))
        })
        .collect::<Result<_, SurfaceError>>()?;
    let m = IntMatrix::from_rows(n, &p_images)?.transpose();
    let kernel_coords = kernel_basis(&m);
    let kernel: Vec<Vec<BigInt>> = kernel_coords
        .iter()
        .map(|z| {
            let mut v = vec![BigInt::zero(); n];
            for (zk, p) in z.iter().zip(&pic.preimage_basis) {
                for (vi, pi) in v.iter_mut().zip(p) {
                    *vi += zk * pi;
                }
            }
            v
        })
        .collect();
    let kernel_is_boundary_saturation = match (kernel.is_empty(), pic.boundary_saturation.is_empty()) {
        (true, true) => true,
        (false, false) => same_lattice(&kernel, &pic.boundary_saturation, n)?,
        _ => false,
    };
    let torsion_order: BigInt = pic.torsion.iter().product();
    let k_order = c.order_in_class_group(k)?;
    let k_in_pic = pic.contains(c, k)?;
    let k_maps_to_zero = k_in_pic && c.mumford_pullback(k)?.is_zero();
    let k_generates = k_order.as_ref() == Some(&torsion_order);
    let ok_c = kernel_is_boundary_saturation && k_maps_to_zero && k_generates && !torsion_order.is_one();
    let mut check = Check::pass_if("identification.kernel", ok_c, "kernel of the pullback is generated by K")
        .with("K", surface.format_class(k))
        .with("order of K in Cl", k_order.map_or("infinite".to_string(), |o| o.to_string()))
        .with("torsion of Cl", fmt_vec(&pic.torsion))
        .with("kernel equals torsion", kernel_is_boundary_saturation)
        .with("K maps to 0", k_maps_to_zero);
    if c.is_zero_in_class_group(k)? {
        check = check.with("reason", "kernel trivial: K is zero in Cl");
    }
    report.push(check);

    // (d) both sides are Enriques lattices with matching Gram
    let left = is_enriques_lattice(&pic.lattice)?;
    let right = is_enriques_lattice(cm.lattice())?;
    report.push(
        Check::pass_if(
            "identification.enriques-profiles",
            left.is_enriques && right.is_enriques,
            "both lattices are even unimodular of signature (1, 9)",
        )
        .with("Pic(X_t) signature", left.profile.signature)
        .with("Pic(X_t) discriminant", &left.profile.discriminant)
        .with("CM signature", right.profile.signature)
        .with("CM discriminant", &right.profile.discriminant)
        .with("CM rank", right.profile.rank)
        .with("CM even", right.profile.is_even().unwrap_or(false)),
    );

    let coords: Option<Vec<Vec<BigInt>>> = images.iter().map(|d| cm.half.coordinates(d.coefficients())).collect();
    let gram_match = match coords {
        Some(t) if !t.is_empty() && t.len() == cm.half.rank() => {
            let labels = (0..t.len()).map(|i| format!("b{i}")).collect();
            let moved = cm.lattice().restrict(&t, labels)?;
            let det = IntMatrix::from_rows(t.len(), &t)?.determinant()?;
            det.abs().is_one() && moved.gram() == pic.lattice.gram()
        }
        _ => false,
    };
    report.push(
        Check::pass_if("identification.gram", gram_match, "CM and Pic of the smoothing modulo K are isometric")
            .with("Pic(X_t) Gram", fmt_matrix(pic.lattice.gram())),
    );
    Ok(())
}

/// Whether ten classes have the Mumford Gram of the `T_{2,3,7}` root basis.
pub fn check_root_basis(c: &ContractedSurface, alphas: &[DivisorClass]) -> VerificationReport {
    let mut report = VerificationReport::new("root basis of type T(2,3,7)");
    report.push(anticanonical_check(c.source()));
    let reference = "ten (-2)-classes forming the T(2,3,7) diagram";
    if alphas.len() != 10 {
        report.push(Check::new("root-basis", CheckStatus::Fail, reference).with("classes", alphas.len()));
        return report;
    }
    let items: Vec<(String, DivisorClass)> =
        alphas.iter().enumerate().map(|(i, a)| (format!("a{i}"), a.clone())).collect();
    match crate::qlattice::gram_of(&items, |a, b| c.mumford_pairing(a, b)) {
        Ok(gram) => {
            let ok = matches_tree_cartan(&gram, &Graph::t_shape(2, 3, 7));
            report.push(Check::pass_if("root-basis", ok, reference).with("gram", fmt_matrix(gram.gram())));
        }
        Err(e) => report.push(Check::new("root-basis", CheckStatus::Fail, reference).with("error", e)),
    }
    report
}

/// Checks `f_i^2 = 0` and `f_i . f_j = 1` under the Mumford pairing and,
/// when `delta` is given, `3 delta = sum f_i`.
pub fn check_isotropic_sequence(
    c: &ContractedSurface,
    fs: &[DivisorClass],
    delta: Option<&DivisorClass>,
) -> VerificationReport {
    let mut report = VerificationReport::new("isotropic sequence");
    report.push(anticanonical_check(c.source()));
    let reference = "isotropic sequence f_i^2 = 0, f_i . f_j = 1";
    if fs.len() < 2 {
        report.push(Check::new("isotropic.pairings", CheckStatus::Fail, reference).with("classes", fs.len()));
        return report;
    }
    let mut gram = vec![vec![q(0); fs.len()]; fs.len()];
    for i in 0..fs.len() {
        for j in i..fs.len() {
            match c.mumford_pairing(&fs[i], &fs[j]) {
                Ok(v) => {
                    gram[i][j] = v.clone();
                    gram[j][i] = v;
                }
                Err(e) => {
                    report.push(Check::new("isotropic.pairings", CheckStatus::Fail, reference).with("error", e));
                    return report;
                }
            }
        }
    }
    let squares: Vec<Rational> = (0..fs.len()).map(|i| gram[i][i].clone()).collect();
    report.push(
        Check::pass_if("isotropic.squares", squares.iter().all(Zero::is_zero), "f_i^2 = 0")
            .with("squares", fmt_vec(&squares)),
    );
    let mutual_ok = (0..fs.len()).all(|i| (0..fs.len()).all(|j| i == j || gram[i][j].is_one()));
    report.push(Check::pass_if("isotropic.mutual", mutual_ok, "f_i . f_j = 1").with("gram", fmt_matrix(&gram)));

    if let Some(delta) = delta {
        let mut sum = c.source().zero_class();
        for f in fs {
            sum = &sum + f;
        }
        let mismatch = &(3 * delta) - &sum;
        report.push(
            Check::pass_if(
                "isotropic.delta",
                mismatch.is_zero() && delta.is_integral(),
                "3 Delta is the sum of the sequence",
            )
            .with("classes summed", fs.len())
            .with("3 Delta - sum", c.source().format_class(&mismatch))
            .with("3 Delta - sum (coefficients)", fmt_vec(mismatch.coefficients()))
            .with("Delta integral", delta.is_integral()),
        );
    }
    report
}

/// Rank equality, parity-map surjectivity and the index `2^(s-1)` of the
/// image of `Pic(X_t)` in `Cl(X)` modulo torsion.
pub fn exact_sequence_report(c: &ContractedSurface) -> VerificationReport {
    let mut report = VerificationReport::new("Pic of the smoothing inside the class group");
    report.push(anticanonical_check(c.source()));
    let s = c.boundary_len();
    let pic = match c.picard_of_general_fiber() {
        Ok(p) => p,
        Err(e) => {
            report.push(
                Check::new("exact-sequence", CheckStatus::Fail, "parity map on the class group").with("error", e),
            );
            return report;
        }
    };
    let cl_rank = c.class_group().rank();
    report.push(
        Check::pass_if("exact-sequence.rank", pic.lattice.rank() == cl_rank, "Pic(X_t) has full rank in Cl(X)")
            .with("rank Pic(X_t)", pic.lattice.rank())
            .with("rank Cl", cl_rank),
    );
    report.push(
        Check::pass_if(
            "exact-sequence.parity-surjective",
            pic.parity_rank + 1 == s,
            "parity map onto (Z/2)^(s-1)",
        )
        .with("s", s)
        .with("parity rank", pic.parity_rank),
    );
    let expected = BigInt::from(2).pow(s.saturating_sub(1) as u32);
    report.push(
        Check::pass_if("exact-sequence.index", pic.index_in_free_part == expected, "index 2^(s-1)")
            .with("index", &pic.index_in_free_part)
            .with("expected", expected),
    );
    report
}
