//! Built-in groups by order, and catalog directories of `.cay` files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, Limits};

use super::io::{header_value, parse_cayley, write_cayley};
use super::{
    alternating4, build_with, cyclic_semidirect, heisenberg27, semidirect_from_generator_images,
    sl23, symmetric4, ActionImage, GroupSpec,
};

/// Below this order the built-in families list every group up to
/// isomorphism.
const COMPLETE_BELOW: u64 = 16;

#[derive(Debug, Clone)]
pub struct Catalog {
    pub order: u64,
    pub groups: Vec<FiniteGroup>,
    /// Declared, never inferred: true only when the source vouches that
    /// the list exhausts every isomorphism type of this order.
    pub complete: bool,
    pub source: String,
}

/// Built-in groups of order `n`, complete for `n < 16`.
pub fn builtin_catalog(n: u64, limits: &Limits) -> Result<Catalog> {
    let groups = builtin_specs(n)
        .iter()
        .map(|s| build_with(s, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(Catalog {
        order: n,
        groups,
        complete: n < COMPLETE_BELOW,
        source: "builtin".into(),
    })
}

/// Recipes behind [`builtin_catalog`], in listing order.
pub fn builtin_specs(n: u64) -> Vec<GroupSpec> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = abelian_specs(n);
    if n >= 6 && n.is_multiple_of(2) {
        out.push(if n == 6 {
            GroupSpec::named("S3", GroupSpec::Dihedral { order: 6 })
        } else {
            GroupSpec::Dihedral { order: n }
        });
    }
    if n >= 8 && n.is_multiple_of(4) {
        out.push(if n.is_power_of_two() {
            GroupSpec::GeneralizedQuaternion { order: n }
        } else {
            GroupSpec::Dicyclic { order: n }
        });
    }
    if n >= 16 && n.is_power_of_two() {
        out.push(GroupSpec::SemiDihedral { order: n });
        out.push(GroupSpec::Modular {
            p: 2,
            s: arith::log_p(n, 2),
        });
    }
    if let Some(p) = arith::prime_power_base(n) {
        let s = arith::log_p(n, p);
        if p > 2 && s >= 3 {
            out.push(GroupSpec::Modular { p, s });
        }
    }
    match n {
        12 => out.push(alternating4()),
        24 => {
            out.push(symmetric4());
            out.push(sl23());
        }
        27 => out.push(heisenberg27()),
        _ => {}
    }
    let f = arith::factorize(n);
    if f.len() == 2 && f.iter().all(|&(_, e)| e == 1) {
        let (q, p) = (f[0].0, f[1].0);
        if q > 2 && (p - 1) % q == 0 {
            let k = (2..p)
                .find(|&k| arith::pow_mod(k, q, p) == 1)
                .expect("q | p - 1 gives an element of order q");
            out.push(cyclic_semidirect(p, q, k).expect("valid action"));
        }
    }
    if n.is_multiple_of(8) && (n / 8) % 2 == 1 && n > 8 {
        let m = GroupSpec::cyclic(n / 8);
        out.push(GroupSpec::direct(
            m.clone(),
            GroupSpec::GeneralizedQuaternion { order: 8 },
        ));
        out.push(GroupSpec::direct(m, GroupSpec::Dihedral { order: 8 }));
    }
    out
}

/// All abelian groups of order `n`, by invariant factors, cyclic first.
/// Invariant-factor recipe for the abelian group with the given prime-power
/// cyclic factors (factors equal to 1 are ignored).
pub fn abelian_from_prime_powers(powers: &[u64]) -> GroupSpec {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &q in powers.iter().filter(|&&q| q > 1) {
        let p = arith::prime_power_base(q).expect("prime power factor");
        by_prime.entry(p).or_default().push(q);
    }
    for v in by_prime.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    let width = by_prime.values().map(Vec::len).max().unwrap_or(0).max(1);
    let factors: Vec<u64> = (0..width)
        .map(|i| {
            by_prime
                .values()
                .map(|v| v.get(i).copied().unwrap_or(1))
                .product()
        })
        .collect();
    if factors.len() == 1 {
        GroupSpec::cyclic(factors[0])
    } else {
        GroupSpec::AbelianProduct { factors }
    }
}

pub fn abelian_specs(n: u64) -> Vec<GroupSpec> {
    let per_prime: Vec<(u64, Vec<Vec<u32>>)> = arith::factorize(n)
        .into_iter()
        .map(|(p, e)| (p, partitions(e)))
        .collect();
    let mut choices: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
    for (p, parts) in &per_prime {
        let mut next = Vec::new();
        for prefix in &choices {
            for part in parts {
                let mut c = prefix.clone();
                c.push(part.iter().map(|&k| p.pow(k)).collect());
                next.push(c);
            }
        }
        choices = next;
    }
    choices
        .into_iter()
        .map(|prime_parts| abelian_from_prime_powers(&prime_parts.concat()))
        .collect()
}

/// Partitions of `e` as descending parts, largest first.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    if out.is_empty() {
        out.push(Vec::new());
    }
    out
}

/// Reads `root/<n>/*.cay` in file-name order. `Ok(None)` if the directory
/// does not exist. The catalog is complete only if every file says so.
pub fn load_catalog_dir(root: &Path, n: u64, limits: &Limits) -> Result<Option<Catalog>> {
    let dir = root.join(n.to_string());
    if !dir.is_dir() {
        return Ok(None);
    }
    let io_err = |e: std::io::Error| GroupError::Io {
        path: dir.display().to_string(),
        msg: e.to_string(),
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(io_err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cay"))
        .collect();
    files.sort();
    let mut groups = Vec::new();
    let mut complete = !files.is_empty();
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        complete &= header_value(&text, "complete-catalog").as_deref() == Some("true");
        let label = header_value(&text, "name").unwrap_or_else(|| {
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()
        });
        let g = parse_cayley(&text, &label, limits).map_err(|e| match e {
            GroupError::Parse { line, msg } => GroupError::Parse {
                line,
                msg: format!("{}: {msg}", path.display()),
            },
            other => other,
        })?;
        if g.order() as u64 != n {
            return Err(GroupError::input(format!(
                "{} has order {}, expected {n}",
                path.display(),
                g.order()
            )));
        }
        groups.push(g);
    }
    Ok(Some(Catalog {
        order: n,
        groups,
        complete,
        source: dir.display().to_string(),
    }))
}

/// The catalog directory's list when it has one for `n`, else built-ins.
pub fn catalog_for_order(n: u64, root: Option<&Path>, limits: &Limits) -> Result<Catalog> {
    if let Some(root) = root {
        if let Some(c) = load_catalog_dir(root, n, limits)? {
            return Ok(c);
        }
    }
    builtin_catalog(n, limits)
}

/// File name and contents of every shipped catalog file of order `n`,
/// numbered in recipe order: `NN_slug.cay`.
pub fn reference_catalog_files(n: u64, limits: &Limits) -> Result<Vec<(String, String)>> {
    reference_recipes(n)
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let g = build_with(spec, limits)?;
            let header = [
                format!("name: {}", g.label()),
                "complete-catalog: true".to_string(),
                "source: grouplab reference recipe".to_string(),
            ];
            Ok((
                format!("{:02}_{}.cay", i + 1, slug(g.label())),
                write_cayley(&g, &header),
            ))
        })
        .collect()
}

/// `(C4xC2):C2` becomes `c4xc2_c2`.
fn slug(label: &str) -> String {
    let mut out = String::new();
    for c in label.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.is_empty() && !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_end_matches('_').to_string()
}

/// Recipes for the shipped catalog files of orders 16, 24 and 36, one per
/// isomorphism type. Empty for other orders.
pub fn reference_recipes(n: u64) -> Vec<GroupSpec> {
    let c = GroupSpec::cyclic;
    let ab = |f: &[u64]| GroupSpec::AbelianProduct {
        factors: f.to_vec(),
    };
    let d = |order| GroupSpec::Dihedral { order };
    let x = GroupSpec::direct;
    let named = GroupSpec::named;
    let s3 = || named("S3", d(6));
    let sd = |m, s, k| cyclic_semidirect(m, s, k).expect("valid cyclic action");
    let by_images = |normal, acting, acts: &[(usize, Vec<(usize, usize)>)]| {
        semidirect_from_generator_images(normal, acting, acts).expect("valid action")
    };
    match n {
        16 => vec![
            c(16),
            ab(&[4, 4]),
            // C4 x C2 with a = 1, b = 4.
            named(
                "(C4xC2):C2",
                by_images(ab(&[4, 2]), c(2), &[(1, vec![(1, 5), (4, 4)])]),
            ),
            named("C4:C4", sd(4, 4, 3)),
            ab(&[8, 2]),
            GroupSpec::Modular { p: 2, s: 4 },
            d(16),
            GroupSpec::SemiDihedral { order: 16 },
            GroupSpec::GeneralizedQuaternion { order: 16 },
            ab(&[4, 2, 2]),
            x(c(2), d(8)),
            x(c(2), GroupSpec::GeneralizedQuaternion { order: 8 }),
            named(
                "C4oD8",
                by_images(ab(&[4, 2]), c(2), &[(1, vec![(1, 1), (4, 6)])]),
            ),
            ab(&[2, 2, 2, 2]),
        ],
        24 => vec![
            named("C3:C8", sd(3, 8, 2)),
            c(24),
            sl23(),
            GroupSpec::Dicyclic { order: 24 },
            x(c(4), s3()),
            d(24),
            x(c(2), GroupSpec::Dicyclic { order: 12 }),
            // D8 with r = 1, s = 4: r inverts C3, s centralizes it.
            named(
                "C3:D8",
                GroupSpec::SemidirectProduct {
                    normal: Box::new(c(3)),
                    acting: Box::new(d(8)),
                    action: vec![
                        ActionImage {
                            generator: 1,
                            images: vec![0, 2, 1],
                        },
                        ActionImage {
                            generator: 4,
                            images: vec![0, 1, 2],
                        },
                    ],
                },
            ),
            ab(&[12, 2]),
            x(c(3), d(8)),
            x(c(3), GroupSpec::GeneralizedQuaternion { order: 8 }),
            symmetric4(),
            x(c(2), alternating4()),
            x(ab(&[2, 2]), s3()),
            ab(&[6, 2, 2]),
        ],
        36 => {
            let inversion9: Vec<usize> = (0..9)
                .map(|i| (3 - i % 3) % 3 + 3 * ((3 - i / 3) % 3))
                .collect();
            let c3sq_c2 = named(
                "(C3xC3):C2",
                GroupSpec::SemidirectProduct {
                    normal: Box::new(ab(&[3, 3])),
                    acting: Box::new(c(2)),
                    action: vec![ActionImage {
                        generator: 1,
                        images: inversion9.clone(),
                    }],
                },
            );
            vec![
                GroupSpec::Dicyclic { order: 36 },
                c(36),
                named(
                    "(C2xC2):C9",
                    GroupSpec::SemidirectProduct {
                        normal: Box::new(ab(&[2, 2])),
                        acting: Box::new(c(9)),
                        action: vec![ActionImage {
                            generator: 1,
                            images: vec![0, 2, 3, 1],
                        }],
                    },
                ),
                d(36),
                ab(&[18, 2]),
                x(c(3), GroupSpec::Dicyclic { order: 12 }),
                named(
                    "(C3xC3):C4",
                    GroupSpec::SemidirectProduct {
                        normal: Box::new(ab(&[3, 3])),
                        acting: Box::new(c(4)),
                        action: vec![ActionImage {
                            generator: 1,
                            images: inversion9,
                        }],
                    },
                ),
                ab(&[12, 3]),
                // e1 = 1, e2 = 3 in C3 x C3; the C4 generator sends e1 -> e2 -> e1^-1.
                named(
                    "(C3xC3):C4f",
                    by_images(ab(&[3, 3]), c(4), &[(1, vec![(1, 3), (3, 2)])]),
                ),
                x(s3(), s3()),
                x(c(3), alternating4()),
                x(c(6), s3()),
                x(c(2), c3sq_c2),
                ab(&[6, 6]),
            ]
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: u64) -> Vec<String> {
        builtin_catalog(n, &Limits::default())
            .unwrap()
            .groups
            .iter()
            .map(|g| g.label().to_string())
            .collect()
    }

    #[test]
    fn small_orders() {
        assert_eq!(labels(1), ["C1"]);
        assert_eq!(labels(7), ["C7"]);
        assert_eq!(labels(8), ["C8", "C4xC2", "C2xC2xC2", "D8", "Q8"]);
        assert_eq!(labels(12), ["C12", "C6xC2", "D12", "Dic3", "A4"]);
        assert!(builtin_catalog(15, &Limits::default()).unwrap().complete);
        assert!(!builtin_catalog(16, &Limits::default()).unwrap().complete);
    }

    #[test]
    fn known_counts_below_sixteen() {
        let counts = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1];
        for (i, &want) in counts.iter().enumerate() {
            assert_eq!(builtin_specs(i as u64 + 1).len(), want, "order {}", i + 1);
        }
    }

    #[test]
    fn abelian_invariant_factors() {
        let names: Vec<String> = abelian_specs(72).iter().map(|s| s.to_string()).collect();
        assert_eq!(
            names,
            ["C72", "C24xC3", "C36xC2", "C12xC6", "C18xC2xC2", "C6xC6xC2"]
        );
    }

    #[test]
    fn reference_counts() {
        assert_eq!(reference_recipes(16).len(), 14);
        assert_eq!(reference_recipes(24).len(), 15);
        assert_eq!(reference_recipes(36).len(), 14);
        for n in [16, 24, 36] {
            for spec in reference_recipes(n) {
                assert_eq!(spec.order(), Some(n), "{spec}");
            }
        }
    }
}
