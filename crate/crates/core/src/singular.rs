// SPDX-License-Identifier: Apache-2.0

//! Hirzebruch-Jung continued fractions and cyclic quotient singularities.
//!
//! A chain `[b_1, ..., b_r]` with every `b_i >= 2` stands for
//! `n/a = b_1 - 1/(b_2 - 1/(... - 1/b_r))`, the exceptional chain of the
//! minimal resolution of `1/n(1, a)`. Wahl singularities are
//! `1/n^2(1, na - 1)`; T-singularities are `1/(dn^2)(1, dna - 1)`.
//!
//! Chains are modelled as bare integer sequences; which curve of a chain
//! meets a neighbouring (-1)-curve is not recorded.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error("a chain needs at least one entry, each >= 2")]
    InvalidChain,
    #[error("{n}/{a} is not a valid cyclic quotient type (need 0 < a < n, gcd(n, a) = 1)")]
    InvalidFraction { n: u64, a: u64 },
    #[error("{what} = {value} is out of range [{min}, {max}]")]
    OutOfRange { what: &'static str, value: u64, min: u64, max: u64 },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("cannot parse root type {0:?}")]
    BadRootType(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HJChain(Vec<u64>);

impl HJChain {
    pub fn new(entries: Vec<u64>) -> Result<Self, SingularError> {
        if entries.is_empty() || entries.iter().any(|&b| b < 2) {
            return Err(SingularError::InvalidChain);
        }
        Ok(HJChain(entries))
    }

    /// Parses `3,2,2,3` or `[3,2,2,3]`.
    pub fn parse(text: &str) -> Result<Self, SingularError> {
        let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
        let entries = inner
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| SingularError::InvalidChain))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> HJChain {
        HJChain(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for HJChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Reduced positive fraction `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The cyclic quotient singularity `1/order (1, weight)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicQuotient {
    order: u64,
    weight: u64,
}

impl CyclicQuotient {
    pub fn new(order: u64, weight: u64) -> Result<Self, SingularError> {
        if weight == 0 || weight >= order || order.gcd(&weight) != 1 {
            return Err(SingularError::InvalidFraction { n: order, a: weight });
        }
        Ok(CyclicQuotient { order, weight })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn chain(&self) -> HJChain {
        hj_expand(self.order, self.weight).expect("validated on construction")
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.order, self.weight)
    }
}

/// Expansion `n/a = [b_1, ..., b_r]`.
pub fn hj_expand(n: u64, a: u64) -> Result<HJChain, SingularError> {
    CyclicQuotient::new(n, a)?;
    let (mut num, mut den) = (n, a);
    let mut entries = Vec::new();
    while den != 0 {
        let b = num.div_ceil(den);
        entries.push(b);
        // num/den = b - den/(b*den - num)
        let next = b * den - num;
        num = den;
        den = next;
    }
    HJChain::new(entries)
}

/// Evaluates the chain right to left; the result is always reduced.
pub fn hj_evaluate(chain: &HJChain) -> Result<Fraction, SingularError> {
    let mut entries = chain.entries().iter().rev();
    let first = *entries.next().ok_or(SingularError::InvalidChain)?;
    let (mut num, mut den) = (first, 1u64);
    for &b in entries {
        // b - den/num
        let next = b
            .checked_mul(num)
            .and_then(|x| x.checked_sub(den))
            .ok_or(SingularError::Overflow)?;
        den = num;
        num = next;
    }
    Ok(Fraction { num, den })
}

/// `1/n^2 (1, na - 1)` with `gcd(n, a) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WahlType {
    pub n: u64,
    pub a: u64,
}

impl WahlType {
    pub fn quotient(&self) -> CyclicQuotient {
        CyclicQuotient::new(self.n * self.n, self.n * self.a - 1).expect("Wahl types are valid quotients")
    }
}

/// `1/(d n^2) (1, d n a - 1)` with `gcd(n, a) = 1`, `n >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TType {
    pub d: u64,
    pub n: u64,
    pub a: u64,
}

impl TType {
    pub fn quotient(&self) -> CyclicQuotient {
        CyclicQuotient::new(self.d * self.n * self.n, self.d * self.n * self.a - 1)
            .expect("T types are valid quotients")
    }
}

fn exact_sqrt(x: u64) -> Option<u64> {
    let r = x.isqrt();
    (r * r == x).then_some(r)
}

/// Recognizes `n^2/(na - 1)`.
pub fn is_wahl(chain: &HJChain) -> Option<WahlType> {
    match is_t_chain(chain)? {
        TType { d: 1, n, a } => Some(WahlType { n, a }),
        _ => None,
    }
}

/// Recognizes `d n^2/(d n a - 1)` with `n >= 2`, `0 < a < n`, `gcd(n, a) = 1`.
/// (`n = 1` would be an A-type chain of (-2)-curves, not a T-singularity.)
pub fn is_t_chain(chain: &HJChain) -> Option<TType> {
    let Fraction { num, den } = hj_evaluate(chain).ok()?;
    let mut n = 2u64;
    while n * n <= num {
        if num % (n * n) == 0 {
            let d = num / (n * n);
            let dn = d * n;
            if (den + 1) % dn == 0 {
                let a = (den + 1) / dn;
                if a > 0 && a < n && n.gcd(&a) == 1 {
                    return Some(TType { d, n, a });
                }
            }
        }
        n += 1;
    }
    let _ = exact_sqrt;
    None
}

/// `[4]` for `s = 1`, otherwise `[3, 2, ..., 2, 3]` with `s - 2` twos; this
/// is the chain of `1/4s (1, 2s - 1)`.
pub fn t_chain_from_s(s: u64) -> Result<HJChain, SingularError> {
    if s < 1 {
        return Err(SingularError::OutOfRange { what: "s", value: s, min: 1, max: u64::MAX });
    }
    if s == 1 {
        return HJChain::new(vec![4]);
    }
    let mut v = vec![3];
    v.extend(std::iter::repeat_n(2, (s - 2) as usize));
    v.push(3);
    HJChain::new(v)
}

/// `k`-th chain of the family `[4], [2,2,6], [2,2,2,2,8], ...`:
/// `2k - 2` twos followed by `2k + 2`. It is the Wahl chain of type
/// `(n, a) = (2k, 2k - 1)`.
pub fn wahl_family_chain(k: u64) -> Result<HJChain, SingularError> {
    if k < 1 {
        return Err(SingularError::OutOfRange { what: "k", value: k, min: 1, max: u64::MAX });
    }
    let mut v: Vec<u64> = std::iter::repeat_n(2, (2 * k - 2) as usize).collect();
    v.push(2 * k + 2);
    let chain = HJChain::new(v)?;
    debug_assert_eq!(is_wahl(&chain), Some(WahlType { n: 2 * k, a: 2 * k - 1 }));
    Ok(chain)
}

/// Rank of the second homology of the Milnor fiber of `1/4s (1, 2s - 1)`.
pub fn milnor_rank(s: u64) -> Result<u64, SingularError> {
    if s < 1 {
        return Err(SingularError::OutOfRange { what: "s", value: s, min: 1, max: u64::MAX });
    }
    Ok(s - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeType {
    A(u32),
    D(u32),
    E(u32),
}

impl AdeType {
    pub fn new_a(n: u32) -> Result<Self, SingularError> {
        if n >= 1 { Ok(AdeType::A(n)) } else { Err(SingularError::BadRootType(format!("A{n}"))) }
    }

    pub fn rank(&self) -> u32 {
        match *self {
            AdeType::A(n) | AdeType::D(n) | AdeType::E(n) => n,
        }
    }

    fn parse_single(text: &str) -> Result<Self, SingularError> {
        let bad = || SingularError::BadRootType(text.to_string());
        let mut chars = text.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let n: u32 = chars.as_str().parse().map_err(|_| bad())?;
        match kind {
            'A' if n >= 1 => Ok(AdeType::A(n)),
            'D' if n >= 4 => Ok(AdeType::D(n)),
            'E' if (6..=8).contains(&n) => Ok(AdeType::E(n)),
            _ => Err(bad()),
        }
    }

    /// Parses a root type such as `D8+A1`, `A7+2A1` or `3A3`.
    pub fn parse_root_type(text: &str) -> Result<Vec<AdeType>, SingularError> {
        let mut out = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            let split = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let (mult, body) = term.split_at(split);
            let mult: usize = if mult.is_empty() {
                1
            } else {
                mult.parse().map_err(|_| SingularError::BadRootType(text.to_string()))?
            };
            if mult == 0 {
                return Err(SingularError::BadRootType(text.to_string()));
            }
            let t = Self::parse_single(body).map_err(|_| SingularError::BadRootType(text.to_string()))?;
            out.extend(std::iter::repeat_n(t, mult));
        }
        Ok(out)
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeType::A(n) => write!(f, "A{n}"),
            AdeType::D(n) => write!(f, "D{n}"),
            AdeType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Sum of the ranks of a configuration of rational double points.
pub fn root_configuration_rank(types: &[AdeType]) -> u32 {
    types.iter().map(AdeType::rank).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingPart {
    Ade(AdeType),
    T(CyclicQuotient),
}

impl fmt::Display for SingPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingPart::Ade(t) => t.fmt(f),
            SingPart::T(q) => q.fmt(f),
        }
    }
}

/// Singularities of a degenerate fiber. Parts `A_0` (smooth points) are
/// dropped and only counted in `smooth_points`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingConfiguration {
    pub parts: Vec<SingPart>,
    pub smooth_points: usize,
}

impl SingConfiguration {
    pub fn is_gorenstein(&self) -> bool {
        self.parts.iter().all(|p| matches!(p, SingPart::Ade(_)))
    }

    pub fn contains(&self, part: &SingPart) -> bool {
        self.parts.contains(part)
    }
}

impl fmt::Display for SingConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// All partitions of `s` with parts in non-increasing order, listed in
/// reverse lexicographic order (`[s]` first, `[1, ..., 1]` last).
pub fn partitions(s: u64) -> Vec<Vec<u64>> {
    fn go(remaining: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(s, s, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degenerations {
    pub configurations: Vec<SingConfiguration>,
    /// Number of configurations generated before removing duplicates.
    pub generated: usize,
}

/// Singularity configurations reachable by Q-Gorenstein deformation of the
/// `1/4s (1, 2s - 1)` point: for each partition `e_1 >= ... >= e_r` of `s`,
/// either `A_{e_1 - 1}, ..., A_{e_r - 1}` or
/// `1/4e_1 (1, 2e_1 - 1), A_{e_2 - 1}, ..., A_{e_r - 1}`.
/// Partitions are taken in reverse lexicographic order, each giving its
/// all-A configuration first.
pub fn admissible_degenerations(s: u64) -> Result<Degenerations, SingularError> {
    if !(1..=10).contains(&s) {
        return Err(SingularError::OutOfRange { what: "s", value: s, min: 1, max: 10 });
    }
    let a_parts = |parts: &[u64]| -> (Vec<SingPart>, usize) {
        let mut out = Vec::new();
        let mut smooth = 0;
        for &e in parts {
            if e == 1 {
                smooth += 1;
            } else {
                out.push(SingPart::Ade(AdeType::A((e - 1) as u32)));
            }
        }
        (out, smooth)
    };
    let mut generated = Vec::new();
    for p in partitions(s) {
        let (parts, smooth_points) = a_parts(&p);
        generated.push(SingConfiguration { parts, smooth_points });

        let e1 = p[0];
        let t = CyclicQuotient::new(4 * e1, 2 * e1 - 1)?;
        let (rest, smooth_points) = a_parts(&p[1..]);
        let mut parts = vec![SingPart::T(t)];
        parts.extend(rest);
        generated.push(SingConfiguration { parts, smooth_points });
    }
    let count = generated.len();
    let mut configurations: Vec<SingConfiguration> = Vec::with_capacity(count);
    for c in generated {
        if !configurations.iter().any(|x| x.parts == c.parts) {
            configurations.push(c);
        }
    }
    Ok(Degenerations { configurations, generated: count })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(v: &[u64]) -> HJChain {
        HJChain::new(v.to_vec()).unwrap()
    }

    #[test]
    fn expansions() {
        assert_eq!(hj_expand(40, 19).unwrap(), chain(&[3, 2, 2, 2, 2, 2, 2, 2, 2, 3]));
        assert_eq!(hj_expand(4, 1).unwrap(), chain(&[4]));
        assert_eq!(hj_expand(16, 11).unwrap(), chain(&[2, 2, 6]));
        assert!(hj_expand(6, 4).is_err());
        assert!(hj_expand(5, 5).is_err());
        assert!(hj_expand(5, 0).is_err());
    }

    #[test]
    fn evaluations() {
        let f = |v: &[u64]| hj_evaluate(&chain(v)).unwrap();
        assert_eq!(f(&[3, 3]), Fraction { num: 8, den: 3 });
        assert_eq!(f(&[4]), Fraction { num: 4, den: 1 });
        assert_eq!(f(&[8, 2, 2, 2, 2]), Fraction { num: 36, den: 5 });
        assert_eq!(f(&[2, 2, 6]), Fraction { num: 16, den: 11 });
    }

    #[test]
    fn invalid_chains() {
        assert_eq!(HJChain::new(vec![]), Err(SingularError::InvalidChain));
        assert_eq!(HJChain::new(vec![3, 1]), Err(SingularError::InvalidChain));
        assert_eq!(HJChain::parse("[3, 2,3]").unwrap(), chain(&[3, 2, 3]));
        assert!(HJChain::parse("3,x").is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let long = HJChain::new(vec![1 << 20; 8]).unwrap();
        assert_eq!(hj_evaluate(&long), Err(SingularError::Overflow));
    }

    #[test]
    fn wahl_recognition() {
        assert_eq!(is_wahl(&chain(&[4])), Some(WahlType { n: 2, a: 1 }));
        assert_eq!(is_wahl(&chain(&[6, 2, 2])), Some(WahlType { n: 4, a: 1 }));
        assert_eq!(is_wahl(&chain(&[2, 2, 6])), Some(WahlType { n: 4, a: 3 }));
        assert_eq!(is_wahl(&chain(&[3, 3])), None);
        assert_eq!(WahlType { n: 4, a: 1 }.quotient().to_string(), "1/16(1,3)");
    }

    #[test]
    fn t_recognition() {
        assert_eq!(is_t_chain(&chain(&[3, 3])), Some(TType { d: 2, n: 2, a: 1 }));
        assert_eq!(TType { d: 2, n: 2, a: 1 }.quotient().to_string(), "1/8(1,3)");
        let s10 = t_chain_from_s(10).unwrap();
        assert_eq!(is_t_chain(&s10), Some(TType { d: 10, n: 2, a: 1 }));
        assert_eq!(TType { d: 10, n: 2, a: 1 }.quotient().to_string(), "1/40(1,19)");
        assert_eq!(is_t_chain(&chain(&[2, 2])), None);
    }

    #[test]
    fn t_chains() {
        assert_eq!(t_chain_from_s(1).unwrap(), chain(&[4]));
        assert_eq!(t_chain_from_s(2).unwrap(), chain(&[3, 3]));
        assert_eq!(t_chain_from_s(10).unwrap(), chain(&[3, 2, 2, 2, 2, 2, 2, 2, 2, 3]));
        assert!(t_chain_from_s(0).is_err());
        for s in 1..=30 {
            let f = hj_evaluate(&t_chain_from_s(s).unwrap()).unwrap();
            assert_eq!(f, Fraction { num: 4 * s, den: 2 * s - 1 });
        }
    }

    #[test]
    fn wahl_family() {
        assert_eq!(wahl_family_chain(1).unwrap(), chain(&[4]));
        assert_eq!(wahl_family_chain(2).unwrap(), chain(&[2, 2, 6]));
        let k4 = wahl_family_chain(4).unwrap();
        assert_eq!(k4, chain(&[2, 2, 2, 2, 2, 2, 10]));
        assert_eq!(is_wahl(&k4), Some(WahlType { n: 8, a: 7 }));
        assert!(wahl_family_chain(0).is_err());
    }

    #[test]
    fn milnor() {
        assert_eq!(milnor_rank(1).unwrap(), 0);
        assert_eq!(milnor_rank(2).unwrap(), 1);
        assert_eq!(milnor_rank(10).unwrap(), 9);
        assert!(milnor_rank(0).is_err());
    }

    #[test]
    fn degenerations_small() {
        let d = admissible_degenerations(1).unwrap();
        let shown: Vec<String> = d.configurations.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["{}", "{1/4(1,1)}"]);
        let d = admissible_degenerations(2).unwrap();
        let shown: Vec<String> = d.configurations.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["{A1}", "{1/8(1,3)}", "{}", "{1/4(1,1)}"]);
        assert_eq!(d.configurations[2].smooth_points, 2);
        assert_eq!(admissible_degenerations(3).unwrap().generated, 6);
        assert!(admissible_degenerations(0).is_err());
        assert!(admissible_degenerations(11).is_err());
    }

    #[test]
    fn degenerations_s10() {
        let d = admissible_degenerations(10).unwrap();
        assert_eq!(d.configurations[0].parts, vec![SingPart::Ade(AdeType::A(9))]);
    }

    #[test]
    fn partition_counts() {
        let p: Vec<usize> = (1..=10).map(|s| partitions(s).len()).collect();
        assert_eq!(p, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn root_types() {
        let r = |t: &str| root_configuration_rank(&AdeType::parse_root_type(t).unwrap());
        assert_eq!(r("A9"), 9);
        assert_eq!(r("D8+A1"), 9);
        assert_eq!(r("E8+A1"), 9);
        assert_eq!(r("A7+2A1"), 9);
        assert_eq!(r("3A3"), 9);
        assert_eq!(r("D5+A4"), 9);
        assert!(AdeType::parse_root_type("E9").is_err());
        assert!(AdeType::parse_root_type("D3").is_err());
        assert!(AdeType::parse_root_type("A0").is_err());
        assert!(AdeType::parse_root_type("0A2").is_err());
    }
}
