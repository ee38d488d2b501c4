//! Recipes for the standard group families, products and semidirect
//! products, plus file ingestion.

mod catalog;
mod io;
mod literal;

pub use catalog::{
    abelian_from_prime_powers, abelian_specs, builtin_catalog, builtin_specs, catalog_for_order,
    load_catalog_dir, reference_catalog_files, reference_recipes, Catalog,
};
pub use io::{
    load_cayley, load_perm_generators, parse_cayley, parse_perm_generators, write_cayley,
};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::{Elem, FiniteGroup, Limits};

/// One automorphism of the normal factor, attached to an element of the
/// acting group. `images[x]` is the image of element `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionImage {
    pub generator: Elem,
    pub images: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic {
        n: u64,
    },
    /// `C_{k1} × ... × C_{km}`, first factor varying fastest in the indexing.
    AbelianProduct {
        factors: Vec<u64>,
    },
    /// Dihedral group of the given order (`2m`).
    Dihedral {
        order: u64,
    },
    /// Dicyclic group of order `4m`: `a^{2m} = 1, b^2 = a^m, a^b = a^{-1}`.
    Dicyclic {
        order: u64,
    },
    GeneralizedQuaternion {
        order: u64,
    },
    SemiDihedral {
        order: u64,
    },
    /// `M_s(p)`: `a^{p^{s-1}} = b^p = 1, a^b = a^{1+p^{s-2}}`.
    Modular {
        p: u64,
        s: u32,
    },
    DirectProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
    SemidirectProduct {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<ActionImage>,
    },
    /// A recipe with a conventional name (`A4`, `SL(2,3)`, ...).
    Named {
        label: String,
        spec: Box<GroupSpec>,
    },
    FromCayleyFile {
        path: String,
    },
    FromPermGenerators {
        path: String,
    },
}

impl GroupSpec {
    /// Parses the compact literal grammar (`C12`, `D8`, `Q8`, `C4xC2`,
    /// `C7:C3`, `SL(2,3)`, `file:path`, ...).
    pub fn parse(s: &str) -> Result<GroupSpec> {
        literal::parse(s)
    }

    pub fn cyclic(n: u64) -> GroupSpec {
        GroupSpec::Cyclic { n }
    }

    pub fn direct(left: GroupSpec, right: GroupSpec) -> GroupSpec {
        GroupSpec::DirectProduct {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn named(label: impl Into<String>, spec: GroupSpec) -> GroupSpec {
        GroupSpec::Named {
            label: label.into(),
            spec: Box::new(spec),
        }
    }

    /// Group order implied by the recipe (saturating); `None` when a file is
    /// involved.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic { n } => Some(*n),
            GroupSpec::AbelianProduct { factors } => {
                Some(factors.iter().fold(1u64, |acc, &k| acc.saturating_mul(k)))
            }
            GroupSpec::Dihedral { order }
            | GroupSpec::Dicyclic { order }
            | GroupSpec::GeneralizedQuaternion { order }
            | GroupSpec::SemiDihedral { order } => Some(*order),
            GroupSpec::Modular { p, s } => Some(p.saturating_pow(*s)),
            GroupSpec::DirectProduct { left, right } => {
                Some(left.order()?.saturating_mul(right.order()?))
            }
            GroupSpec::SemidirectProduct { normal, acting, .. } => {
                Some(normal.order()?.saturating_mul(acting.order()?))
            }
            GroupSpec::Named { spec, .. } => spec.order(),
            GroupSpec::FromCayleyFile { .. } | GroupSpec::FromPermGenerators { .. } => None,
        }
    }

    fn needs_parens(&self) -> bool {
        match self {
            GroupSpec::AbelianProduct { factors } => factors.len() > 1,
            GroupSpec::DirectProduct { .. } | GroupSpec::SemidirectProduct { .. } => true,
            _ => false,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrapped = |g: &GroupSpec| {
            if g.needs_parens() {
                format!("({g})")
            } else {
                g.to_string()
            }
        };
        match self {
            GroupSpec::Cyclic { n } => write!(f, "C{n}"),
            GroupSpec::AbelianProduct { factors } => {
                let parts: Vec<String> = factors.iter().map(|k| format!("C{k}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Dihedral { order } => write!(f, "D{order}"),
            GroupSpec::Dicyclic { order } => write!(f, "Dic{}", order / 4),
            GroupSpec::GeneralizedQuaternion { order } => write!(f, "Q{order}"),
            GroupSpec::SemiDihedral { order } => write!(f, "SD{order}"),
            GroupSpec::Modular { p, s } => write!(f, "M{}", p.pow(*s)),
            GroupSpec::DirectProduct { left, right } => {
                let l = match **left {
                    GroupSpec::DirectProduct { .. } => left.to_string(),
                    _ => wrapped(left),
                };
                write!(f, "{l}x{}", wrapped(right))
            }
            GroupSpec::SemidirectProduct { normal, acting, .. } => {
                write!(f, "{}:{}", wrapped(normal), wrapped(acting))
            }
            GroupSpec::Named { label, .. } => f.write_str(label),
            GroupSpec::FromCayleyFile { path } | GroupSpec::FromPermGenerators { path } => {
                write!(f, "file:{path}")
            }
        }
    }
}

/// Builds with the default [`Limits`].
pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_with(spec, &Limits::default())
}

pub fn build_with(spec: &GroupSpec, limits: &Limits) -> Result<FiniteGroup> {
    // File-backed parts have no a-priori order; loaders enforce the cap.
    if let Some(order) = spec.order() {
        if order > limits.order_cap as u64 {
            return Err(GroupError::OrderCap {
                order: usize::try_from(order).unwrap_or(usize::MAX),
                cap: limits.order_cap,
            });
        }
    }
    build_nested(spec, limits)
}

fn build_nested(spec: &GroupSpec, limits: &Limits) -> Result<FiniteGroup> {
    let label = spec.to_string();
    let g = match spec {
        GroupSpec::Cyclic { n } => {
            positive(*n, "cyclic order")?;
            metacyclic(*n, 1, 1, 0)
        }
        GroupSpec::AbelianProduct { factors } => {
            if factors.is_empty() {
                return Err(GroupError::input(
                    "abelian product needs at least one factor",
                ));
            }
            for &k in factors {
                positive(k, "abelian factor")?;
            }
            abelian_product(factors)
        }
        GroupSpec::Dihedral { order } => {
            if *order < 2 || order % 2 != 0 {
                return Err(GroupError::input(format!(
                    "dihedral order must be even and at least 2, got {order}"
                )));
            }
            let m = order / 2;
            metacyclic(m, 2, (m - 1).max(1), 0)
        }
        GroupSpec::Dicyclic { order } => {
            if *order < 8 || order % 4 != 0 {
                return Err(GroupError::input(format!(
                    "dicyclic order must be a multiple of 4 and at least 8, got {order}"
                )));
            }
            dicyclic(*order)
        }
        GroupSpec::GeneralizedQuaternion { order } => {
            if *order < 8 || !order.is_power_of_two() {
                return Err(GroupError::input(format!(
                    "generalized quaternion order must be a power of 2 at least 8, got {order}"
                )));
            }
            dicyclic(*order)
        }
        GroupSpec::SemiDihedral { order } => {
            if *order < 16 || !order.is_power_of_two() {
                return Err(GroupError::input(format!(
                    "semidihedral order must be a power of 2 at least 16, got {order}"
                )));
            }
            let m = order / 2;
            metacyclic(m, 2, m / 2 - 1, 0)
        }
        GroupSpec::Modular { p, s } => {
            if !arith::is_prime(*p) || *s < 3 || (*p == 2 && *s < 4) {
                return Err(GroupError::input(format!(
                    "modular group needs a prime p and s >= 3 (s >= 4 when p = 2), got p={p}, s={s}"
                )));
            }
            let m = p.pow(s - 1);
            metacyclic(m, *p, 1 + p.pow(s - 2), 0)
        }
        GroupSpec::DirectProduct { left, right } => {
            let a = build_with(left, limits)?;
            let b = build_with(right, limits)?;
            direct_product(&a, &b, limits)?
        }
        GroupSpec::SemidirectProduct {
            normal,
            acting,
            action,
        } => {
            let n = build_with(normal, limits)?;
            let h = build_with(acting, limits)?;
            semidirect_product(&n, &h, action, limits)?
        }
        GroupSpec::Named { label, spec } => {
            return Ok(build_with(spec, limits)?.with_label(label.clone()))
        }
        GroupSpec::FromCayleyFile { path } => io::load_cayley(path, limits)?,
        GroupSpec::FromPermGenerators { path } => io::load_perm_generators(path, limits)?,
    };
    Ok(g.with_label(label))
}

fn positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(GroupError::input(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

fn dicyclic(order: u64) -> FiniteGroup {
    let m = order / 4;
    metacyclic(2 * m, 2, 2 * m - 1, m)
}

/// `⟨a, b | a^m = 1, b^s = a^t, b a b^{-1} = a^k⟩` with element `a^i b^j`
/// stored at index `i + m j`. The caller guarantees the presentation defines
/// a group of order `m s` (`k^s ≡ 1`, `k t ≡ t` mod `m`).
pub(crate) fn metacyclic(m: u64, s: u64, k: u64, t: u64) -> FiniteGroup {
    let n = (m * s) as usize;
    let k = k % m.max(1);
    let mut kpow = vec![1u64 % m.max(1); s as usize];
    for j in 1..s as usize {
        kpow[j] = kpow[j - 1] * k % m;
    }
    let mut table = vec![0u32; n * n];
    for x in 0..n as u64 {
        let (i, j) = (x % m, x / m);
        for y in 0..n as u64 {
            let (u, v) = (y % m, y / m);
            let mut e = i + u * kpow[j as usize];
            let mut jj = j + v;
            if jj >= s {
                jj -= s;
                e += t;
            }
            table[x as usize * n + y as usize] = ((e % m) + m * jj) as u32;
        }
    }
    FiniteGroup::from_trusted_table(String::new(), n, table)
}

fn abelian_product(factors: &[u64]) -> FiniteGroup {
    let n: u64 = factors.iter().product();
    let n = n as usize;
    let digits = |mut x: usize| -> Vec<u64> {
        factors
            .iter()
            .map(|&k| {
                let d = (x as u64) % k;
                x /= k as usize;
                d
            })
            .collect()
    };
    let all: Vec<Vec<u64>> = (0..n).map(digits).collect();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut idx = 0u64;
            let mut radix = 1u64;
            for (f, &k) in factors.iter().enumerate() {
                idx += (all[a][f] + all[b][f]) % k * radix;
                radix *= k;
            }
            table[a * n + b] = idx as u32;
        }
    }
    FiniteGroup::from_trusted_table(String::new(), n, table)
}

/// `A × B` with `(a, b)` at index `a + |A| b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > limits.order_cap {
        return Err(GroupError::OrderCap {
            order: n,
            cap: limits.order_cap,
        });
    }
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (xa, xb) = (x % na, x / na);
        for y in 0..n {
            let (ya, yb) = (y % na, y / na);
            table[x * n + y] = (a.mul(xa, ya) + na * b.mul(xb, yb)) as u32;
        }
    }
    Ok(FiniteGroup::from_trusted_table(
        format!("{}x{}", a.label(), b.label()),
        n,
        table,
    ))
}

/// Checks that `images` is an automorphism of `n`.
pub fn check_automorphism(n: &FiniteGroup, images: &[Elem]) -> Result<()> {
    let m = n.order();
    if images.len() != m {
        return Err(GroupError::input(format!(
            "image list has {} entries, expected {m}",
            images.len()
        )));
    }
    let mut hit = vec![false; m];
    for &y in images {
        if y >= m || std::mem::replace(&mut hit[y], true) {
            return Err(GroupError::input("image list is not a permutation"));
        }
    }
    for x in 0..m {
        for y in 0..m {
            if images[n.mul(x, y)] != n.mul(images[x], images[y]) {
                return Err(GroupError::input(format!(
                    "image list is not a homomorphism at ({x},{y})"
                )));
            }
        }
    }
    Ok(())
}

/// Extends `gen ↦ image` pairs to a full image list by walking words in the
/// generators, failing if the assignment is not a well-defined automorphism.
pub fn extend_to_automorphism(n: &FiniteGroup, pairs: &[(Elem, Elem)]) -> Result<Vec<Elem>> {
    let m = n.order();
    let mut images = vec![usize::MAX; m];
    images[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &(g, gi) in pairs {
            n.check_index(g)?;
            n.check_index(gi)?;
            let y = n.mul(x, g);
            let yi = n.mul(images[x], gi);
            if images[y] == usize::MAX {
                images[y] = yi;
                queue.push_back(y);
            } else if images[y] != yi {
                return Err(GroupError::input(
                    "generator images do not define a homomorphism",
                ));
            }
        }
    }
    if images.contains(&usize::MAX) {
        return Err(GroupError::input(
            "action generators do not generate the group",
        ));
    }
    check_automorphism(n, &images)?;
    Ok(images)
}

/// `N ⋊ H` where each listed `H` element acts by the given automorphism;
/// `(x, h)` lives at index `x + |N| h` and multiplies as
/// `(x1, h1)(x2, h2) = (x1 φ_{h1}(x2), h1 h2)`.
pub fn semidirect_product(
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &[ActionImage],
    limits: &Limits,
) -> Result<FiniteGroup> {
    let (nn, nh) = (n.order(), h.order());
    let total = nn * nh;
    if total > limits.order_cap {
        return Err(GroupError::OrderCap {
            order: total,
            cap: limits.order_cap,
        });
    }
    for a in action {
        h.check_index(a.generator)?;
        check_automorphism(n, &a.images)?;
    }
    // φ_{hg} = φ_h ∘ φ_g along every edge; agreement on all edges makes φ a
    // homomorphism H → Aut(N).
    let mut phi: Vec<Option<Vec<Elem>>> = vec![None; nh];
    phi[0] = Some((0..nn).collect());
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let px = phi[x].clone().expect("visited");
        for a in action {
            let y = h.mul(x, a.generator);
            let py: Vec<Elem> = (0..nn).map(|v| px[a.images[v]]).collect();
            match &phi[y] {
                None => {
                    phi[y] = Some(py);
                    queue.push_back(y);
                }
                Some(existing) if *existing != py => {
                    return Err(GroupError::input(
                        "action does not define a homomorphism into the automorphism group",
                    ));
                }
                Some(_) => {}
            }
        }
    }
    let phi: Vec<Vec<Elem>> = phi
        .into_iter()
        .map(|p| {
            p.ok_or_else(|| GroupError::input("action elements do not generate the acting group"))
        })
        .collect::<Result<_>>()?;
    let mut table = vec![0u32; total * total];
    for x in 0..total {
        let (x1, h1) = (x % nn, x / nn);
        for y in 0..total {
            let (x2, h2) = (y % nn, y / nn);
            table[x * total + y] = (n.mul(x1, phi[h1][x2]) + nn * h.mul(h1, h2)) as u32;
        }
    }
    Ok(FiniteGroup::from_trusted_table(
        format!("{}:{}", n.label(), h.label()),
        total,
        table,
    ))
}

/// `C_m ⋊ C_s` where the generator of `C_s` acts by `x ↦ x^k`.
pub fn cyclic_semidirect(m: u64, s: u64, k: u64) -> Result<GroupSpec> {
    if m == 0 || s == 0 || arith::gcd(k, m) != 1 || arith::pow_mod(k, s, m) != 1 % m {
        return Err(GroupError::input(format!(
            "x -> x^{k} is not an automorphism of C{m} of order dividing {s}"
        )));
    }
    let images = (0..m).map(|x| (x * k % m) as usize).collect();
    Ok(GroupSpec::SemidirectProduct {
        normal: Box::new(GroupSpec::cyclic(m)),
        acting: Box::new(GroupSpec::cyclic(s)),
        action: vec![ActionImage {
            generator: if s == 1 { 0 } else { 1 },
            images,
        }],
    })
}

/// Semidirect product spec from generator images of each acting element.
pub fn semidirect_from_generator_images(
    normal: GroupSpec,
    acting: GroupSpec,
    acts: &[(Elem, Vec<(Elem, Elem)>)],
) -> Result<GroupSpec> {
    let n = build(&normal)?;
    let action = acts
        .iter()
        .map(|(g, pairs)| {
            Ok(ActionImage {
                generator: *g,
                images: extend_to_automorphism(&n, pairs)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupSpec::SemidirectProduct {
        normal: Box::new(normal),
        acting: Box::new(acting),
        action,
    })
}

pub fn alternating4() -> GroupSpec {
    // V4 = C2 x C2 with x = 1, y = 2, xy = 3; the C3 generator cycles them.
    let spec = GroupSpec::SemidirectProduct {
        normal: Box::new(GroupSpec::AbelianProduct {
            factors: vec![2, 2],
        }),
        acting: Box::new(GroupSpec::cyclic(3)),
        action: vec![ActionImage {
            generator: 1,
            images: vec![0, 2, 3, 1],
        }],
    };
    GroupSpec::named("A4", spec)
}

pub fn symmetric4() -> GroupSpec {
    // S3 as D6: a = 1 rotates the three involutions of V4, b = 3 swaps x, y.
    let spec = GroupSpec::SemidirectProduct {
        normal: Box::new(GroupSpec::AbelianProduct {
            factors: vec![2, 2],
        }),
        acting: Box::new(GroupSpec::Dihedral { order: 6 }),
        action: vec![
            ActionImage {
                generator: 1,
                images: vec![0, 2, 3, 1],
            },
            ActionImage {
                generator: 3,
                images: vec![0, 2, 1, 3],
            },
        ],
    };
    GroupSpec::named("S4", spec)
}

pub fn sl23() -> GroupSpec {
    // Q8 as Dic2: a = 1, b = 4; the order-3 automorphism a -> b -> ab -> a.
    let spec = semidirect_from_generator_images(
        GroupSpec::GeneralizedQuaternion { order: 8 },
        GroupSpec::cyclic(3),
        &[(1, vec![(1, 4), (4, 5)])],
    )
    .expect("valid automorphism of Q8");
    GroupSpec::named("SL(2,3)", spec)
}

/// Extraspecial group of order 27 and exponent 3.
pub fn heisenberg27() -> GroupSpec {
    // C3 x C3 with x = 1, y = 3; the acting generator fixes x and sends y to xy.
    let spec = semidirect_from_generator_images(
        GroupSpec::AbelianProduct {
            factors: vec![3, 3],
        },
        GroupSpec::cyclic(3),
        &[(1, vec![(1, 1), (3, 4)])],
    )
    .expect("valid automorphism of C3 x C3");
    GroupSpec::named("Heis27", spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hist(g: &FiniteGroup) -> Vec<(u64, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for &o in g.element_orders() {
            *m.entry(o).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }

    #[test]
    fn family_histograms() {
        let c6 = build(&GroupSpec::cyclic(6)).unwrap();
        assert_eq!(hist(&c6), vec![(1, 1), (2, 1), (3, 2), (6, 2)]);
        let q8 = build(&GroupSpec::GeneralizedQuaternion { order: 8 }).unwrap();
        assert_eq!(hist(&q8), vec![(1, 1), (2, 1), (4, 6)]);
        let m16 = build(&GroupSpec::Modular { p: 2, s: 4 }).unwrap();
        assert_eq!(m16.order(), 16);
        assert_eq!(m16.exponent(), 8);
        assert!(!m16.is_abelian());
        let sd = build(&GroupSpec::SemiDihedral { order: 16 }).unwrap();
        assert_eq!(hist(&sd), vec![(1, 1), (2, 5), (4, 6), (8, 4)]);
    }

    #[test]
    fn families_validate_as_groups() {
        for spec in [
            GroupSpec::Dihedral { order: 10 },
            GroupSpec::Dicyclic { order: 12 },
            GroupSpec::SemiDihedral { order: 32 },
            GroupSpec::Modular { p: 3, s: 3 },
            GroupSpec::AbelianProduct {
                factors: vec![4, 2, 3],
            },
        ] {
            let g = build(&spec).unwrap();
            FiniteGroup::from_table("check", g.order(), g.table().to_vec()).unwrap();
        }
    }

    #[test]
    fn named_groups() {
        let a4 = build(&alternating4()).unwrap();
        assert_eq!(a4.label(), "A4");
        assert_eq!(hist(&a4), vec![(1, 1), (2, 3), (3, 8)]);
        let s4 = build(&symmetric4()).unwrap();
        assert_eq!(hist(&s4), vec![(1, 1), (2, 9), (3, 8), (4, 6)]);
        let sl = build(&sl23()).unwrap();
        assert_eq!(hist(&sl), vec![(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]);
        let h = build(&heisenberg27()).unwrap();
        assert_eq!(hist(&h), vec![(1, 1), (3, 26)]);
        assert!(!h.is_abelian());
        for g in [a4, s4, sl, h] {
            FiniteGroup::from_table("check", g.order(), g.table().to_vec()).unwrap();
        }
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(build(&GroupSpec::Dihedral { order: 7 }).is_err());
        assert!(build(&GroupSpec::GeneralizedQuaternion { order: 12 }).is_err());
        assert!(build(&GroupSpec::Modular { p: 2, s: 3 }).is_err());
        assert!(cyclic_semidirect(7, 3, 3).is_err());
        let cap = Limits {
            order_cap: 10,
            subgroup_cap: 10,
        };
        assert!(build_with(&GroupSpec::cyclic(11), &cap)
            .unwrap_err()
            .is_capability());
    }

    #[test]
    fn non_homomorphic_action_is_rejected() {
        // Inversion on C5 has order 2, so it cannot be the action of a C3 generator.
        let spec = GroupSpec::SemidirectProduct {
            normal: Box::new(GroupSpec::cyclic(5)),
            acting: Box::new(GroupSpec::cyclic(3)),
            action: vec![ActionImage {
                generator: 1,
                images: vec![0, 4, 3, 2, 1],
            }],
        };
        assert!(build(&spec).is_err());
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = GroupSpec::direct(GroupSpec::cyclic(3), sl23());
        let json = serde_json::to_string(&spec).unwrap();
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
        assert_eq!(
            build(&spec).unwrap().table_bytes(),
            build(&back).unwrap().table_bytes()
        );
    }
}
