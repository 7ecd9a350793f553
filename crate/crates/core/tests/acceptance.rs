// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria, one line per criterion. Exits non-zero on any failure.

use std::process::ExitCode;

use coble_core::abelian::rational::{q, q_frac};
use coble_core::abelian::{smith_normal_form, Rational};
use coble_core::enriques::{
    check_isotropic_sequence, check_root_basis, coble_mukai_lattice, verify_cm_pic_identification, CheckStatus,
    CobleSurfaceData,
};
use coble_core::qlattice::{gram_of, is_enriques_lattice, matches_tree_cartan, Graph};
use coble_core::scenarios::{self, degenerate_relations, pencil_surface, KNOWN_DISCREPANCIES};
use coble_core::singular::{
    admissible_degenerations, hj_evaluate, hj_expand, is_wahl, milnor_rank, wahl_family_chain, AdeType,
    HJChain, SingConfiguration, SingPart, WahlType,
};
use coble_core::surface::{contract, ContractedSurface, DivisorClass, SurfaceModel};
use num_bigint::BigInt;
use num_integer::Integer;


type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn pencil() -> (SurfaceModel, ContractedSurface) {
    let s = pencil_surface();
    let c = contract(&s).expect("pencil contracts");
    (s, c)
}

fn named(s: &SurfaceModel, name: &str) -> DivisorClass {
    s.class_named(name).unwrap_or_else(|| panic!("{name} defined")).clone()
}

fn expected_pairing(a: &str, b: &str) -> Rational {
    match (&a[..1], &b[..1]) {
        ("H", "H") => q_frac(11, 2),
        ("H", _) | (_, "H") => q_frac(3, 2),
        ("R", "R") if a == b => q_frac(-1, 2),
        ("E", "E") => q(0),
        _ => q_frac(1, 2),
    }
}

fn intersection_table() -> Outcome {
    let (s, c) = pencil();
    let mut n = 0;
    for a in s.labels() {
        for b in s.labels() {
            let v = c
                .mumford_pairing(&s.basis_class(a).unwrap(), &s.basis_class(b).unwrap())
                .map_err(|e| e.to_string())?;
            ensure(v == expected_pairing(a, b), format!("{a}.{b} = {v}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} pairs, H^2 = 11/2, H.Ri = 3/2, Ri^2 = -1/2, Ri.Rj = 1/2, Ei^2 = 0"))
}

fn class_group() -> Outcome {
    let (s, c) = pencil();
    let g = c.class_group();
    ensure(g.rank() == 10, format!("rank {}", g.rank()))?;
    ensure(g.torsion() == [BigInt::from(2)], format!("torsion {:?}", g.torsion()))?;
    let k = named(&s, "K");
    ensure(!c.is_zero_in_class_group(&k).unwrap(), "K = 0")?;
    ensure(c.is_zero_in_class_group(&(2 * &k)).unwrap(), "2K != 0")?;
    ensure(c.order_in_class_group(&k).unwrap() == Some(BigInt::from(2)), "K does not generate the torsion")?;
    Ok(format!("Cl = {}, K = {} of order 2", g.structure(), s.format_class(&k)))
}

fn coble_mukai() -> Outcome {
    let (s, c) = pencil();
    let data = CobleSurfaceData::new(s.clone()).map_err(|e| e.to_string())?;
    let cm = coble_mukai_lattice(&data).map_err(|e| e.to_string())?;
    let rec = is_enriques_lattice(cm.lattice()).map_err(|e| e.to_string())?;
    let p = &rec.profile;
    ensure(p.rank == 10, "rank")?;
    ensure(p.is_even().unwrap(), "not even")?;
    ensure(p.is_unimodular(), "not unimodular")?;
    ensure((p.signature.positive, p.signature.negative, p.signature.zero) == (1, 9, 0), "signature")?;
    let report = verify_cm_pic_identification(&c, &data, &named(&s, "K"));
    if let Some(f) = report.failures().first() {
        return Err(format!("{} failed", f.id));
    }
    Ok(format!(
        "rank 10, even, disc {}, signature {}; {} identification checks pass",
        p.discriminant,
        p.signature,
        report.checks.len()
    ))
}

fn root_lattices() -> Outcome {
    let (s, c) = pencil();
    let items = |names: &[&str]| -> Vec<(String, DivisorClass)> {
        names.iter().map(|n| (n.to_string(), named(&s, n))).collect()
    };
    let pair = |a: &DivisorClass, b: &DivisorClass| c.mumford_pairing(a, b);
    let u = gram_of(&items(&["u1", "u2"]), pair).map_err(|e| e.to_string())?;
    ensure(u.gram() == [vec![q(0), q(1)], vec![q(1), q(0)]], "U Gram")?;
    let e8 = gram_of(&items(&["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"]), pair).map_err(|e| e.to_string())?;
    ensure(matches_tree_cartan(&e8, &Graph::t_shape(2, 3, 5)), "E8(-1) Gram")?;
    let alphas: Vec<_> = (0..10).map(|i| named(&s, &format!("alpha{i}"))).collect();
    ensure(check_root_basis(&c, &alphas).passed(), "alpha Gram is not T(2,3,7)")?;
    Ok("U, E8(-1) and T(2,3,7) Gram matrices exact".into())
}

fn isotropic() -> Outcome {
    let (s, c) = pencil();
    let fs: Vec<_> = ["f1", "f2", "f3", "f4", "f5", "f6", "f7", "f9", "f10"].iter().map(|n| named(&s, n)).collect();
    let r = check_isotropic_sequence(&c, &fs, None);
    ensure(r.passed(), "R-reading isotropy")?;
    let plain = scenarios::run(scenarios::ScenarioId::Section4, false);
    let failed: Vec<&str> = plain.failures().iter().map(|c| c.id.as_str()).collect();
    ensure(failed == ["section4.isotropic.delta"], format!("failures without table: {failed:?}"))?;
    ensure(KNOWN_DISCREPANCIES == ["section4.isotropic.delta"], "table contents")?;
    let allowed = scenarios::run(scenarios::ScenarioId::Section4, true);
    ensure(allowed.passed(), "section4 fails with the table engaged")?;
    let known: Vec<&str> = allowed
        .checks
        .iter()
        .filter(|c| c.status == CheckStatus::KnownDiscrepancy)
        .map(|c| c.id.as_str())
        .collect();
    ensure(known == ["section4.isotropic.delta"], format!("downgraded: {known:?}"))?;
    let mismatch = plain.check("section4.isotropic.delta").unwrap().value("3 Delta - sum").unwrap_or("");
    Ok(format!("f_i^2 = 0, f_i.f_j = 1 for nine classes; 3 Delta - sum = {mismatch} (known)"))
}

fn section5() -> Outcome {
    let m = degenerate_relations();
    let snf = smith_normal_form(&m);
    let rank = m.cols() - snf.rank();
    ensure(rank == 10, format!("rank {rank}"))?;
    let chain = hj_expand(40, 19).map_err(|e| e.to_string())?;
    ensure(chain == HJChain::new(vec![3, 2, 2, 2, 2, 2, 2, 2, 2, 3]).unwrap(), format!("40/19 = {chain}"))?;
    ensure(milnor_rank(10) == Ok(9), "milnor rank")?;
    Ok(format!("rank Cl = 10, 40/19 = {chain}, Milnor rank 9"))
}

fn round_trips() -> Outcome {
    let mut chains = 0usize;
    let mut current: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..8 {
        let mut next = Vec::with_capacity(current.len() * 5);
        for c in &current {
            for b in 2..=6u64 {
                let mut d = c.clone();
                d.push(b);
                let chain = HJChain::new(d.clone()).unwrap();
                let f = hj_evaluate(&chain).map_err(|e| e.to_string())?;
                ensure(hj_expand(f.num, f.den).as_ref() == Ok(&chain), format!("{chain}"))?;
                chains += 1;
                next.push(d);
            }
        }
        current = next;
    }
    let mut fractions = 0usize;
    for n in 2..=200u64 {
        for a in 1..n {
            if n.gcd(&a) == 1 {
                let f = hj_evaluate(&hj_expand(n, a).unwrap()).unwrap();
                ensure((f.num, f.den) == (n, a), format!("{n}/{a}"))?;
                fractions += 1;
            }
        }
    }
    Ok(format!("{chains} chains and {fractions} fractions round-trip"))
}

fn wahl_family() -> Outcome {
    for k in 1..=10u64 {
        let c = wahl_family_chain(k).map_err(|e| e.to_string())?;
        ensure(is_wahl(&c) == Some(WahlType { n: 2 * k, a: 2 * k - 1 }), format!("k = {k}"))?;
    }
    for (chain, n, a) in [(vec![4], 2, 1), (vec![6, 2, 2], 4, 1), (vec![8, 2, 2, 2, 2], 6, 1)] {
        let c = HJChain::new(chain).unwrap();
        ensure(is_wahl(&c) == Some(WahlType { n, a }), format!("{c}"))?;
    }
    Ok("k = 1..10 give (2k, 2k-1); [4], [6,2,2], [8,2,2,2,2] give (2,1), (4,1), (6,1)".into())
}

fn exact_sequence_index() -> Outcome {
    let (_, c) = pencil();
    let pic = c.picard_of_general_fiber().map_err(|e| e.to_string())?;
    let s = c.boundary_len();
    ensure(s == 2, "s")?;
    ensure(pic.index_in_free_part == BigInt::from(2), format!("index {}", pic.index_in_free_part))?;
    ensure(pic.parity_rank == 1, "parity rank")?;
    Ok("[Cl(X)/torsion : Pic(X_t)] = 2 = 2^(s-1)".into())
}

fn degenerations() -> Outcome {
    const P: [usize; 10] = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    for s in 1..=10u64 {
        let d = admissible_degenerations(s).map_err(|e| e.to_string())?;
        ensure(d.generated == 2 * P[s as usize - 1], format!("s = {s}: {}", d.generated))?;
    }
    let d = admissible_degenerations(10).unwrap();
    let a9 = SingConfiguration { parts: vec![SingPart::Ade(AdeType::A(9))], smooth_points: 0 };
    ensure(d.configurations.contains(&a9), "{A9} missing")?;
    for t in scenarios::RANK_NINE_ROOT_TYPES {
        let r: u32 = AdeType::parse_root_type(t).unwrap().iter().map(AdeType::rank).sum();
        ensure(r == 9, format!("{t} has rank {r}"))?;
    }
    Ok("2 p(s) configurations for s = 1..10, {A9} present, six root types of rank 9".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("intersection table", intersection_table),
        ("class group Z^10 + Z/2 with torsion K", class_group),
        ("Coble-Mukai lattice is Enriques and matches Pic(X_t)", coble_mukai),
        ("U, E8(-1) and T(2,3,7) root basis", root_lattices),
        ("isotropic sequence and known discrepancy", isotropic),
        ("degenerate relations, 40/19 chain, Milnor rank", section5),
        ("continued fraction round trips", round_trips),
        ("Wahl family", wahl_family),
        ("exact sequence index", exact_sequence_index),
        ("degeneration counts and root ranks", degenerations),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(f) {
            Ok(Ok(detail)) => println!("PASS criterion {:>2}: {name}: {detail}", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: panicked", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
