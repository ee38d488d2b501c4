//! `LCM_p` sets and A-regular subgroups.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::Result;
use crate::group::{Elem, FiniteGroup, Limits, Subgroup, SubgroupLattice, SylowInfo};

/// Elements of `[x]`: the generators of `⟨x⟩`.
pub fn cyclic_generators(g: &FiniteGroup, x: Elem) -> Vec<Elem> {
    let o = g.order_of(x);
    let mut out: Vec<Elem> = (1..=o)
        .filter(|&k| arith::gcd(k, o) == 1)
        .map(|k| g.pow(x, k))
        .collect();
    out.sort_unstable();
    out
}

/// `LCM_p(G)`: the `p`-elements `x` such that `o(hy) | lcm(o(h), o(y))`
/// for every `h ∈ ⟨x⟩` and every `p`-element `y`.
pub fn lcm_p_set(g: &FiniteGroup, p: u64) -> Vec<Elem> {
    let p_elems = g.p_elements(p);
    let good: Vec<bool> = (0..g.order())
        .map(|h| {
            arith::is_power_of(g.order_of(h), p)
                && p_elems.iter().all(|&y| {
                    let l = arith::lcm(g.order_of(h), g.order_of(y));
                    l.is_multiple_of(g.order_of(g.mul(h, y)))
                })
        })
        .collect();
    p_elems
        .iter()
        .copied()
        .filter(|&x| (1..=g.order_of(x)).all(|k| good[g.pow(x, k)]))
        .collect()
}

/// `LC_p(G) = ⟨LCM_p(G)⟩`.
pub fn lc_p(g: &FiniteGroup, p: u64) -> Subgroup {
    g.generated_subgroup(&lcm_p_set(g, p))
        .expect("indices in range")
}

/// Every product of two elements has order at most the larger of the two
/// orders. For a `p`-group this is `LCM_p(H) = H`.
fn lcm_closed(g: &FiniteGroup, members: &[Elem]) -> bool {
    members.iter().all(|&a| {
        members.iter().all(|&b| {
            let l = g.order_of(a).max(g.order_of(b));
            l.is_multiple_of(g.order_of(g.mul(a, b)))
        })
    })
}

/// First `(y, M)` breaking A-regularity of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityViolation {
    pub y: Elem,
    pub m: Vec<Elem>,
}

/// Per-prime data for A-regularity queries: the subgroups of a fixed Sylow
/// subgroup and, for each, the worst offending element order.
#[derive(Debug)]
pub struct RegularityData {
    pub lattice: SubgroupLattice,
    /// `bad[i] = (max o(y), witness)` over `p`-elements `y` for which
    /// `M_i⟨y⟩` is a subgroup that is not `LCM_p`-closed.
    bad: Vec<Option<(u64, Elem)>>,
}

impl RegularityData {
    /// `within` is a `p`-subgroup whose subgroups are the candidates `M`.
    pub fn new(g: &FiniteGroup, p: u64, within: &Subgroup, limits: &Limits) -> Result<Self> {
        let lattice = g.subgroups_within(within, limits)?;
        let p_elems = g.p_elements(p);
        let commuting = p_elems
            .iter()
            .enumerate()
            .all(|(i, &a)| p_elems[i + 1..].iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        let mut bad = vec![None; lattice.len()];
        if !commuting {
            let mut cache: HashMap<FixedBitSet, bool> = HashMap::new();
            for (i, m) in lattice.subgroups.iter().enumerate() {
                for &y in &p_elems {
                    if m.contains(y) {
                        continue;
                    }
                    let oy = g.order_of(y);
                    if bad[i].is_some_and(|(o, _)| o >= oy) {
                        continue;
                    }
                    let cyc = g.closure_bits(&[y]);
                    let meet = m.elements().iter().filter(|&&x| cyc.contains(x)).count();
                    let product_size = m.order() * oy as usize / meet;
                    let mut gens = m.generators().to_vec();
                    gens.push(y);
                    let joined = g.closure_bits(&gens);
                    if joined.count_ones(..) != product_size {
                        continue;
                    }
                    let closed = *cache.entry(joined.clone()).or_insert_with(|| {
                        let members: Vec<Elem> = joined.ones().collect();
                        lcm_closed(g, &members)
                    });
                    if !closed {
                        bad[i] = Some((oy, y));
                    }
                }
            }
        }
        Ok(RegularityData { lattice, bad })
    }

    /// A-regularity of the `idx`-th subgroup of the lattice.
    pub fn check(
        &self,
        idx: usize,
        g: &FiniteGroup,
    ) -> std::result::Result<(), RegularityViolation> {
        let n = &self.lattice.subgroups[idx];
        let exp = n.exponent(g);
        for (i, m) in self.lattice.subgroups.iter().enumerate() {
            if m.order() > n.order() || !m.is_subgroup_of(n) {
                continue;
            }
            if let Some((o, y)) = self.bad[i] {
                if o > exp {
                    return Err(RegularityViolation {
                        y,
                        m: m.elements().to_vec(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_a_regular(&self, idx: usize, g: &FiniteGroup) -> bool {
        self.check(idx, g).is_ok()
    }

    /// Position of a subgroup of the Sylow subgroup in the lattice.
    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.lattice
            .subgroups
            .iter()
            .position(|s| s.members() == h.members())
    }
}

/// A-regularity of `n ≤ P` with the first violating `(y, M)` on failure.
pub fn is_a_regular(
    g: &FiniteGroup,
    n: &Subgroup,
    sylow: &SylowInfo,
    limits: &Limits,
) -> Result<std::result::Result<(), RegularityViolation>> {
    let data = RegularityData::new(g, sylow.prime, &sylow.representative, limits)?;
    let idx = data.index_of(n).ok_or_else(|| {
        crate::error::GroupError::input("N is not a subgroup of the chosen Sylow subgroup")
    })?;
    Ok(data.check(idx, g))
}
