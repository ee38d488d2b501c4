use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{GroupError, Result};

use super::{Elem, FiniteGroup, Limits, Subgroup};

/// Every subgroup of some ambient subgroup, sorted by `(order, elements)`.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub subgroups: Vec<Subgroup>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn of_order(&self, k: usize) -> impl Iterator<Item = &Subgroup> {
        self.subgroups.iter().filter(move |h| h.order() == k)
    }

    pub fn normal(&self) -> impl Iterator<Item = &Subgroup> {
        self.subgroups.iter().filter(|h| h.is_normal())
    }

    pub fn count_by_order(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for h in &self.subgroups {
            *out.entry(h.order()).or_insert(0) += 1;
        }
        out
    }
}

/// Hard ceiling on how many subgroups a single enumeration may produce.
const MAX_SUBGROUPS: usize = 200_000;

impl FiniteGroup {
    /// All subgroups of `G`.
    pub fn subgroups(&self, limits: &Limits) -> Result<SubgroupLattice> {
        self.subgroups_within(&self.whole(), limits)
    }

    /// All subgroups contained in `within`. Every subgroup is a join of
    /// cyclic subgroups, so closing the cyclic ones under joins with cyclic
    /// subgroups finds them all.
    pub fn subgroups_within(&self, within: &Subgroup, limits: &Limits) -> Result<SubgroupLattice> {
        if within.order() > limits.subgroup_cap {
            return Err(GroupError::SubgroupCap {
                what: "subgroup enumeration",
                order: within.order(),
                cap: limits.subgroup_cap,
            });
        }
        let mut cyclic: Vec<(Elem, FixedBitSet)> = Vec::new();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        for &x in within.elements() {
            let bits = self.closure_bits(&[x]);
            if seen.insert(bits.clone()) {
                cyclic.push((x, bits));
            }
        }
        let mut found: Vec<(Vec<Elem>, FixedBitSet)> = cyclic
            .iter()
            .map(|(x, b)| (if *x == 0 { Vec::new() } else { vec![*x] }, b.clone()))
            .collect();
        let mut i = 0;
        while i < found.len() {
            let (gens, bits) = found[i].clone();
            for (x, cb) in &cyclic {
                if cb.is_subset(&bits) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(*x);
                let joined = self.closure_bits(&g2);
                if seen.insert(joined.clone()) {
                    found.push((g2, joined));
                    if found.len() > MAX_SUBGROUPS {
                        return Err(GroupError::SearchLimit {
                            what: "subgroup count",
                            limit: MAX_SUBGROUPS,
                        });
                    }
                }
            }
            i += 1;
        }
        let mut subgroups: Vec<Subgroup> = found
            .into_iter()
            .map(|(gens, bits)| self.subgroup_from_bits(bits, gens))
            .collect();
        subgroups.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        Ok(SubgroupLattice { subgroups })
    }

    /// Elementary abelian `p`-subgroups of `within` (the trivial one
    /// included), sorted by `(order, elements)`.
    pub fn elementary_abelian_subgroups(&self, p: u64, within: &Subgroup) -> Result<Vec<Subgroup>> {
        let order_p: Vec<Elem> = within
            .elements()
            .iter()
            .copied()
            .filter(|&x| self.order_of(x) == p)
            .collect();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut out: Vec<(Vec<Elem>, FixedBitSet)> = Vec::new();
        let trivial = self.closure_bits(&[]);
        seen.insert(trivial.clone());
        out.push((Vec::new(), trivial));
        let mut i = 0;
        while i < out.len() {
            let (gens, bits) = out[i].clone();
            for &x in &order_p {
                if bits.contains(x) {
                    continue;
                }
                if !gens.iter().all(|&g| self.mul(g, x) == self.mul(x, g)) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let joined = self.closure_bits(&g2);
                if seen.insert(joined.clone()) {
                    out.push((g2, joined));
                    if out.len() > MAX_SUBGROUPS {
                        return Err(GroupError::SearchLimit {
                            what: "elementary abelian subgroup count",
                            limit: MAX_SUBGROUPS,
                        });
                    }
                }
            }
            i += 1;
        }
        let mut subs: Vec<Subgroup> = out
            .into_iter()
            .map(|(gens, bits)| self.subgroup_from_bits(bits, gens))
            .collect();
        subs.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        Ok(subs)
    }

    /// Largest `r` such that `G` has a subgroup `(C_p)^r`.
    pub fn max_elementary_abelian_rank(&self, p: u64) -> u32 {
        let p_elems = self.p_elements(p);
        let commuting = p_elems.iter().enumerate().all(|(i, &a)| {
            p_elems[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        });
        if commuting {
            // The p-elements form an abelian subgroup; its order-p elements
            // plus the identity are the largest elementary abelian one.
            let omega = p_elems.iter().filter(|&&x| self.order_of(x) <= p).count();
            return arith::log_p(omega as u64, p);
        }
        let best = self.max_rank_search(p, &p_elems);
        arith::log_p(best as u64, p)
    }

    fn max_rank_search(&self, p: u64, p_elems: &[Elem]) -> usize {
        let order_p: Vec<Elem> = p_elems
            .iter()
            .copied()
            .filter(|&x| self.order_of(x) == p)
            .collect();
        let mut best = 1usize;
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut stack: Vec<(Vec<Elem>, FixedBitSet)> = vec![(Vec::new(), self.closure_bits(&[]))];
        while let Some((gens, bits)) = stack.pop() {
            best = best.max(bits.count_ones(..));
            for &x in &order_p {
                if bits.contains(x) || !gens.iter().all(|&g| self.mul(g, x) == self.mul(x, g)) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let joined = self.closure_bits(&g2);
                if seen.insert(joined.clone()) {
                    stack.push((g2, joined));
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use crate::construct::{build, GroupSpec};
    use crate::group::Limits;

    fn g(s: &str) -> crate::group::FiniteGroup {
        build(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn subgroup_counts_of_small_groups() {
        let lim = Limits::default();
        assert_eq!(g("S3").subgroups(&lim).unwrap().len(), 6);
        assert_eq!(g("Q8").subgroups(&lim).unwrap().len(), 6);
        assert_eq!(g("D8").subgroups(&lim).unwrap().len(), 10);
        assert_eq!(g("C2xC2xC2").subgroups(&lim).unwrap().len(), 16);
        assert_eq!(g("A4").subgroups(&lim).unwrap().len(), 10);
        assert_eq!(g("S4").subgroups(&lim).unwrap().len(), 30);
        assert_eq!(g("C12").subgroups(&lim).unwrap().len(), 6);
    }

    #[test]
    fn subgroup_cap_is_enforced() {
        let lim = Limits {
            order_cap: 2048,
            subgroup_cap: 8,
        };
        assert!(g("C12").subgroups(&lim).unwrap_err().is_capability());
    }

    #[test]
    fn elementary_abelian_ranks() {
        assert_eq!(g("D8").max_elementary_abelian_rank(2), 2);
        assert_eq!(g("Q8").max_elementary_abelian_rank(2), 1);
        assert_eq!(g("C2xC2xC2").max_elementary_abelian_rank(2), 3);
        assert_eq!(g("C4xC4").max_elementary_abelian_rank(2), 2);
        assert_eq!(g("S4").max_elementary_abelian_rank(2), 2);
    }

    #[test]
    fn elementary_abelian_subgroups_of_c2_cubed() {
        let c = g("C2xC2xC2");
        let all = c.elementary_abelian_subgroups(2, &c.whole()).unwrap();
        assert_eq!(all.len(), 16);
    }
}
