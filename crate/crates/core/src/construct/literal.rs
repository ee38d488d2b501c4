use crate::arith;
use crate::error::{GroupError, Result};

use super::{alternating4, cyclic_semidirect, heisenberg27, sl23, symmetric4, GroupSpec};

pub(super) fn parse(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    if let Some(path) = s.strip_prefix("file:") {
        return Ok(if path.ends_with(".perm") {
            GroupSpec::FromPermGenerators { path: path.into() }
        } else {
            GroupSpec::FromCayleyFile { path: path.into() }
        });
    }
    let factors = split_top_level(s, 'x')?;
    let specs = factors
        .iter()
        .map(|f| parse_factor(f))
        .collect::<Result<Vec<_>>>()?;
    if specs.len() == 1 {
        return Ok(specs.into_iter().next().expect("one factor"));
    }
    let cyclic: Option<Vec<u64>> = specs
        .iter()
        .map(|g| match g {
            GroupSpec::Cyclic { n } => Some(*n),
            _ => None,
        })
        .collect();
    if let Some(factors) = cyclic {
        return Ok(GroupSpec::AbelianProduct { factors });
    }
    let mut it = specs.into_iter();
    let first = it.next().expect("nonempty");
    Ok(it.fold(first, GroupSpec::direct))
}

fn split_top_level(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(syntax(s, "unbalanced parentheses"));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(syntax(s, "unbalanced parentheses"));
    }
    parts.push(&s[start..]);
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(syntax(s, "empty factor"));
    }
    Ok(parts)
}

fn syntax(s: &str, why: &str) -> GroupError {
    GroupError::Input(format!("cannot parse group literal '{s}': {why}"))
}

fn parse_factor(f: &str) -> Result<GroupSpec> {
    let f = f.trim();
    if f.len() >= 2 && f.starts_with('(') && f.ends_with(')') && balanced(&f[1..f.len() - 1]) {
        return parse(&f[1..f.len() - 1]);
    }
    let halves = split_top_level(f, ':')?;
    if halves.len() == 2 {
        let (m, s) = match (parse_factor(halves[0])?, parse_factor(halves[1])?) {
            (GroupSpec::Cyclic { n: m }, GroupSpec::Cyclic { n: s }) => (m, s),
            _ => return Err(syntax(f, "':' is only supported between two cyclic groups")),
        };
        let k = (2..m)
            .find(|&k| arith::gcd(k, m) == 1 && arith::pow_mod(k, s, m) == 1)
            .ok_or_else(|| syntax(f, "no nontrivial action of the right order exists"))?;
        return cyclic_semidirect(m, s, k);
    }
    if halves.len() > 2 {
        return Err(syntax(f, "use parentheses to nest ':'"));
    }
    atom(f)
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

fn atom(f: &str) -> Result<GroupSpec> {
    match f {
        "A4" => return Ok(alternating4()),
        "S3" => return Ok(GroupSpec::named("S3", GroupSpec::Dihedral { order: 6 })),
        "S4" => return Ok(symmetric4()),
        "SL23" | "SL(2,3)" => return Ok(sl23()),
        "Heis27" => return Ok(heisenberg27()),
        _ => {}
    }
    let num = |rest: &str| -> Result<u64> {
        rest.parse::<u64>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| syntax(f, "expected a positive integer after the family name"))
    };
    if let Some(rest) = f.strip_prefix("Dic") {
        return Ok(GroupSpec::Dicyclic {
            order: 4 * num(rest)?,
        });
    }
    if let Some(rest) = f.strip_prefix("SD") {
        return Ok(GroupSpec::SemiDihedral { order: num(rest)? });
    }
    if let Some(rest) = f.strip_prefix('Q') {
        return Ok(GroupSpec::GeneralizedQuaternion { order: num(rest)? });
    }
    if let Some(rest) = f.strip_prefix('M') {
        let n = num(rest)?;
        let p = arith::prime_power_base(n)
            .ok_or_else(|| syntax(f, "modular group order must be a prime power"))?;
        return Ok(GroupSpec::Modular {
            p,
            s: arith::log_p(n, p),
        });
    }
    if let Some(rest) = f.strip_prefix('D') {
        return Ok(GroupSpec::Dihedral { order: num(rest)? });
    }
    if let Some(rest) = f.strip_prefix('C') {
        return Ok(GroupSpec::cyclic(num(rest)?));
    }
    Err(syntax(f, "unknown family"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_families() {
        assert_eq!(parse("C12").unwrap(), GroupSpec::cyclic(12));
        assert_eq!(parse("D8").unwrap(), GroupSpec::Dihedral { order: 8 });
        assert_eq!(
            parse("Q8").unwrap(),
            GroupSpec::GeneralizedQuaternion { order: 8 }
        );
        assert_eq!(parse("Dic3").unwrap(), GroupSpec::Dicyclic { order: 12 });
        assert_eq!(parse("M16").unwrap(), GroupSpec::Modular { p: 2, s: 4 });
        assert_eq!(parse("M27").unwrap(), GroupSpec::Modular { p: 3, s: 3 });
        assert_eq!(
            parse("C4xC2").unwrap(),
            GroupSpec::AbelianProduct {
                factors: vec![4, 2]
            }
        );
    }

    #[test]
    fn products_and_semidirects() {
        let g = parse("C3x(C2xQ8)").unwrap();
        assert_eq!(g.order(), Some(48));
        assert_eq!(g.to_string(), "C3x(C2xQ8)");
        let g = parse("C7:C3").unwrap();
        assert_eq!(g.order(), Some(21));
        assert_eq!(g.to_string(), "C7:C3");
        assert!(parse("C7:C5").is_err());
        assert_eq!(parse("SL(2,3)xC2").unwrap().order(), Some(48));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "X3", "C", "C0", "(C2", "C2x", "M12", "D8:C2"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn files() {
        assert_eq!(
            parse("file:a/b.perm").unwrap(),
            GroupSpec::FromPermGenerators {
                path: "a/b.perm".into()
            }
        );
        assert_eq!(
            parse("file:box.cay").unwrap(),
            GroupSpec::FromCayleyFile {
                path: "box.cay".into()
            }
        );
    }
}
