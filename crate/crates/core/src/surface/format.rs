// SPDX-License-Identifier: Apache-2.0

//! Line-oriented surface description files.
//!
//! ```text
//! surface <name>
//! gen <label> self=<int>            # basis element, diagonal Gram entry
//! pair <label> <label> <int>        # off-diagonal Gram entry, default 0
//! class <name> = <±k*label ± ...>   # named integer combination
//! canonical = <expr>
//! boundary <classname> <classname> ...  # chain order
//! ```
//!
//! `#` starts a comment. Expressions may refer to basis labels and to
//! classes defined on earlier lines. Every malformed line is an error
//! carrying its line number.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{NamedClass, SurfaceError, SurfaceModel};
use crate::abelian::Rational;

fn err(line: usize, message: impl Into<String>) -> SurfaceError {
    SurfaceError::Parse {
        line,
        message: message.into(),
    }
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Parses `3*H - 2*E1 - R1 + C1`. `resolve` maps a name to a coefficient
/// vector over the basis.
fn parse_expr(
    text: &str,
    line: usize,
    rank: usize,
    resolve: &dyn Fn(&str) -> Option<Vec<BigInt>>,
) -> Result<Vec<BigInt>, SurfaceError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err(line, "empty expression"));
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    for c in compact.chars() {
        if (c == '+' || c == '-') && !current.is_empty() && !current.ends_with('*') {
            terms.push(std::mem::take(&mut current));
        }
        current.push(c);
    }
    terms.push(current);

    let mut total = vec![BigInt::zero(); rank];
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-BigInt::one(), rest),
            None => (BigInt::one(), term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coeff, name) = match body.split_once('*') {
            Some((k, name)) => {
                let k: BigInt = k.parse().map_err(|_| err(line, format!("bad coefficient {k:?}")))?;
                (k, name)
            }
            None => (BigInt::one(), body),
        };
        if name == "0" && body == "0" {
            continue;
        }
        if !valid_ident(name) {
            return Err(err(line, format!("bad term {term:?}")));
        }
        let v = resolve(name).ok_or_else(|| err(line, format!("unknown label or class {name:?}")))?;
        for (t, x) in total.iter_mut().zip(v) {
            *t += &sign * &coeff * x;
        }
    }
    Ok(total)
}

fn parse_int(tok: &str, line: usize) -> Result<BigInt, SurfaceError> {
    tok.parse().map_err(|_| err(line, format!("not an integer: {tok:?}")))
}

pub fn parse_surface(text: &str) -> Result<SurfaceModel, SurfaceError> {
    let mut name: Option<String> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut diag: Vec<BigInt> = Vec::new();
    let mut pairs: Vec<(usize, usize, BigInt, usize)> = Vec::new();
    let mut classes: Vec<(String, Vec<BigInt>)> = Vec::new();
    let mut canonical: Option<(Vec<BigInt>, usize)> = None;
    let mut boundary: Option<(Vec<String>, usize)> = None;
    let mut frozen = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "surface" => {
                if name.is_some() {
                    return Err(err(line, "duplicate surface header"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err(line, "expected `surface <name>`"));
                }
                name = Some(rest.to_string());
            }
            _ if name.is_none() => return Err(err(line, "file must start with `surface <name>`")),
            "gen" => {
                if frozen {
                    return Err(err(line, "`gen` after classes were defined"));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [label, selfint] = toks[..] else {
                    return Err(err(line, "expected `gen <label> self=<int>`"));
                };
                let value = selfint
                    .strip_prefix("self=")
                    .ok_or_else(|| err(line, "expected `self=<int>`"))?;
                if !valid_ident(label) {
                    return Err(err(line, format!("bad label {label:?}")));
                }
                if labels.iter().any(|l| l == label) {
                    return Err(err(line, format!("duplicate label {label:?}")));
                }
                labels.push(label.to_string());
                diag.push(parse_int(value, line)?);
            }
            "pair" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [a, b, v] = toks[..] else {
                    return Err(err(line, "expected `pair <label> <label> <int>`"));
                };
                let find = |l: &str| {
                    labels
                        .iter()
                        .position(|x| x == l)
                        .ok_or_else(|| err(line, format!("unknown label {l:?}")))
                };
                let (i, j) = (find(a)?, find(b)?);
                if i == j {
                    return Err(err(line, "use `gen ... self=` for diagonal entries"));
                }
                if pairs.iter().any(|&(x, y, _, _)| (x, y) == (i, j) || (x, y) == (j, i)) {
                    return Err(err(line, format!("duplicate pair {a} {b}")));
                }
                pairs.push((i, j, parse_int(v, line)?, line));
            }
            "class" | "canonical" => {
                frozen = true;
                let (lhs, rhs) = content
                    .split_once('=')
                    .ok_or_else(|| err(line, "expected `=`"))?;
                let resolve = |n: &str| -> Option<Vec<BigInt>> {
                    if let Some(i) = labels.iter().position(|l| l == n) {
                        let mut v = vec![BigInt::zero(); labels.len()];
                        v[i] = BigInt::one();
                        return Some(v);
                    }
                    classes.iter().find(|(c, _)| c == n).map(|(_, v)| v.clone())
                };
                let value = parse_expr(rhs, line, labels.len(), &resolve)?;
                if keyword == "canonical" {
                    if lhs.trim() != "canonical" {
                        return Err(err(line, "expected `canonical = <expr>`"));
                    }
                    if canonical.is_some() {
                        return Err(err(line, "duplicate canonical class"));
                    }
                    canonical = Some((value, line));
                } else {
                    let cname = lhs.trim().strip_prefix("class").unwrap_or("").trim();
                    if !valid_ident(cname) {
                        return Err(err(line, format!("bad class name {cname:?}")));
                    }
                    if labels.iter().any(|l| l == cname) || classes.iter().any(|(c, _)| c == cname) {
                        return Err(err(line, format!("duplicate name {cname:?}")));
                    }
                    classes.push((cname.to_string(), value));
                }
            }
            "boundary" => {
                if boundary.is_some() {
                    return Err(err(line, "duplicate boundary line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(err(line, "boundary needs at least one class"));
                }
                for n in &names {
                    if !classes.iter().any(|(c, _)| c == n) {
                        return Err(err(line, format!("unknown class {n:?}")));
                    }
                }
                boundary = Some((names, line));
            }
            other => return Err(err(line, format!("unknown keyword {other:?}"))),
        }
    }

    let last_line = text.lines().count().max(1);
    let name = name.ok_or_else(|| err(1, "missing `surface <name>` header"))?;
    if labels.is_empty() {
        return Err(err(last_line, "no `gen` lines"));
    }
    let n = labels.len();
    let mut gram = vec![vec![BigInt::zero(); n]; n];
    for (i, d) in diag.into_iter().enumerate() {
        gram[i][i] = d;
    }
    for (i, j, v, _) in pairs {
        gram[i][j] = v.clone();
        gram[j][i] = v;
    }
    let (canonical, _) = canonical.ok_or_else(|| err(last_line, "missing `canonical = <expr>`"))?;
    let canonical = canonical.into_iter().map(Rational::from_integer).collect();
    let mut model = SurfaceModel::new(name, labels, gram, canonical)?;

    let boundary_names = boundary.map(|(b, _)| b).unwrap_or_default();
    let mut boundary_classes = Vec::new();
    let mut lookup = BTreeMap::new();
    for (cname, v) in classes {
        let class = model.class_from_integers(&v)?;
        lookup.insert(cname.clone(), class.clone());
        if !boundary_names.contains(&cname) {
            model = model.with_class(cname, class)?;
        }
    }
    for b in boundary_names {
        boundary_classes.push(NamedClass {
            class: lookup[&b].clone(),
            name: b,
        });
    }
    model.with_boundary(boundary_classes)
}

fn format_expr(labels: &[String], coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (c, l) in coeffs.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let c = c.to_integer();
        let sign = if c.is_negative() { '-' } else { '+' };
        let mag = c.abs();
        if out.is_empty() {
            if sign == '-' {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        if mag.is_one() {
            out.push_str(l);
        } else {
            let _ = write!(out, "{mag}*{l}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl SurfaceModel {
    /// Serializes to the surface file format. Only integral classes can be
    /// written; named classes and boundary classes appear as `class` lines.
    pub fn to_surface_file(&self) -> Result<String, SurfaceError> {
        let mut out = String::new();
        let _ = writeln!(out, "surface {}", self.name());
        let labels = self.labels();
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "gen {l} self={}", self.gram()[i][i]);
        }
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                let v = &self.gram()[i][j];
                if !v.is_zero() {
                    let _ = writeln!(out, "pair {} {} {v}", labels[i], labels[j]);
                }
            }
        }
        let check = |name: &str, c: &super::DivisorClass| {
            if c.is_integral() {
                Ok(())
            } else {
                Err(SurfaceError::NonIntegral(name.to_string()))
            }
        };
        check("canonical", self.canonical())?;
        let _ = writeln!(out, "canonical = {}", format_expr(labels, self.canonical().coefficients()));
        for c in self.named_classes().iter().chain(self.boundary()) {
            check(&c.name, &c.class)?;
            let _ = writeln!(out, "class {} = {}", c.name, format_expr(labels, c.class.coefficients()));
        }
        if !self.boundary().is_empty() {
            let names: Vec<&str> = self.boundary().iter().map(|b| b.name.as_str()).collect();
            let _ = writeln!(out, "boundary {}", names.join(" "));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::rational::q;

    const SMALL: &str = "\
surface toy
gen H self=1
gen E self=-1
pair H E 0
canonical = -3*H + E
class L = H - E
class C = 2*H - 2*E   # a conic
class D = C + L
boundary C
";

    #[test]
    fn parses_small_file() {
        let s = parse_surface(SMALL).unwrap();
        assert_eq!(s.name(), "toy");
        assert_eq!(s.rank(), 2);
        assert_eq!(s.boundary().len(), 1);
        let d = s.class_named("D").unwrap();
        assert_eq!(d, &s.class(&[("H", 3), ("E", -3)]).unwrap());
        assert_eq!(s.pairing(s.canonical(), s.canonical()).unwrap(), q(8));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("gen H self=1\n", 1),
            ("surface s\ngen H self=x\n", 2),
            ("surface s\ngen H self=1\ncanonical = -3*H\nclass A = 2*Q\n", 4),
            ("surface s\ngen H self=1\ncanonical = -3*H\nboundary A\n", 4),
            ("surface s\ngen H self=1\nfrobnicate\n", 3),
            ("surface s\ngen H self=1\ngen H self=1\n", 3),
            ("surface s\ngen H self=1\ncanonical = -3**H\n", 3),
            ("surface s\ngen H self=1\n", 2),
        ];
        for (text, line) in cases {
            match parse_surface(text) {
                Err(SurfaceError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn writes_back() {
        let s = parse_surface(SMALL).unwrap();
        let again = parse_surface(&s.to_surface_file().unwrap()).unwrap();
        assert_eq!(s.gram(), again.gram());
        assert_eq!(s.canonical(), again.canonical());
        assert_eq!(s.boundary(), again.boundary());
    }
}
