use serde::Serialize;

use crate::arith;

use super::{Elem, FiniteGroup, Subgroup};

/// Position of a 2-group among the families of 2-groups with a cyclic
/// subgroup of index 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoGroupClass {
    NotTwoGroup,
    Cyclic,
    Dihedral,
    Semidihedral,
    GeneralizedQuaternion,
    Modular,
    Other,
}

impl std::fmt::Display for TwoGroupClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TwoGroupClass::NotTwoGroup => "not-2-group",
            TwoGroupClass::Cyclic => "cyclic",
            TwoGroupClass::Dihedral => "dihedral",
            TwoGroupClass::Semidihedral => "semidihedral",
            TwoGroupClass::GeneralizedQuaternion => "generalized-quaternion",
            TwoGroupClass::Modular => "modular",
            TwoGroupClass::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureProfile {
    pub order: usize,
    pub is_cyclic: bool,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_solvable: bool,
    pub is_dedekind: bool,
    pub two_group_class: TwoGroupClass,
    pub fitting_order: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: u64,
}

/// Outcome of a normal `p`-complement test.
#[derive(Debug, Clone)]
pub struct PNilpotency {
    pub holds: bool,
    /// The normal `p`-complement when `holds`.
    pub complement: Option<Subgroup>,
}

impl FiniteGroup {
    pub fn classify(&self) -> StructureProfile {
        let is_cyclic = self.is_cyclic();
        let is_abelian = self.is_abelian();
        let is_nilpotent = is_abelian || self.is_nilpotent();
        let derived = self.derived_subgroup(&self.whole());
        StructureProfile {
            order: self.order(),
            is_cyclic,
            is_abelian,
            is_nilpotent,
            is_solvable: is_nilpotent || self.is_solvable(),
            is_dedekind: is_abelian || self.whole().is_dedekind(self),
            two_group_class: self.two_group_class(),
            fitting_order: self.fitting_subgroup().order(),
            center_order: self.center().order(),
            derived_order: derived.order(),
            exponent: self.exponent(),
        }
    }

    /// Every Sylow subgroup normal.
    pub fn is_nilpotent(&self) -> bool {
        arith::prime_divisors(self.order() as u64)
            .into_iter()
            .all(|p| self.is_normal(&self.sylow_subgroup(p)))
    }

    /// `G = G^(0) > G^(1) > ...` until it stabilizes.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.derived_subgroup(last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().expect("nonempty").order() == 1
    }

    /// `O_p(G)`, the intersection of all Sylow `p`-subgroups.
    pub fn p_core(&self, p: u64) -> Subgroup {
        self.core(&self.sylow_subgroup(p))
    }

    /// Product of the `p`-cores over all prime divisors.
    pub fn fitting_subgroup(&self) -> Subgroup {
        let mut gens: Vec<Elem> = Vec::new();
        for p in arith::prime_divisors(self.order() as u64) {
            gens.extend_from_slice(self.p_core(p).generators());
        }
        gens.sort_unstable();
        let bits = self.closure_bits(&gens);
        let elems: Vec<Elem> = bits.ones().collect();
        self.subgroup_of_known_elements(&elems)
    }

    /// Normal `p`-complement test: the `p'`-elements must number `n_{p'}`
    /// and be closed under multiplication.
    pub fn is_p_nilpotent(&self, p: u64) -> PNilpotency {
        let n = self.order() as u64;
        let want = arith::p_prime_part(n, p) as usize;
        let elems = self.p_prime_elements(p);
        if elems.len() != want {
            return PNilpotency {
                holds: false,
                complement: None,
            };
        }
        let sub = self.subgroup_of_known_elements(&elems);
        let closed = self.closure_bits(sub.generators()).count_ones(..) == want;
        PNilpotency {
            holds: closed,
            complement: closed.then_some(sub),
        }
    }

    pub fn two_group_class(&self) -> TwoGroupClass {
        let n = self.order();
        if !n.is_power_of_two() {
            return TwoGroupClass::NotTwoGroup;
        }
        if self.is_cyclic() {
            return TwoGroupClass::Cyclic;
        }
        if self.is_generalized_quaternion() {
            return TwoGroupClass::GeneralizedQuaternion;
        }
        let involutions = self.element_orders().iter().filter(|&&o| o == 2).count();
        if n == 4 {
            // The Klein group is the dihedral group of order 4.
            return TwoGroupClass::Dihedral;
        }
        let has_index_two_cyclic = self.element_orders().iter().any(|&o| o as usize == n / 2);
        if !has_index_two_cyclic || self.is_abelian() {
            return TwoGroupClass::Other;
        }
        if involutions == n / 2 + 1 {
            TwoGroupClass::Dihedral
        } else if n >= 16 && involutions == n / 4 + 1 {
            TwoGroupClass::Semidihedral
        } else if involutions == 3 {
            TwoGroupClass::Modular
        } else {
            TwoGroupClass::Other
        }
    }
}
