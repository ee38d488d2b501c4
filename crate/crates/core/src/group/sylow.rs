use crate::arith;
use crate::error::{GroupError, Result};

use super::{Elem, FiniteGroup, Subgroup};

/// Sylow data for one prime.
#[derive(Debug, Clone)]
pub struct SylowInfo {
    pub prime: u64,
    /// `α` with `p^α` exactly dividing `|G|`.
    pub exponent_of_n: u32,
    pub representative: Subgroup,
    pub is_cyclic: bool,
    pub is_generalized_quaternion: bool,
    /// Exponent of the representative, a power of `p`.
    pub group_exponent: u64,
    pub max_elementary_abelian_rank: u32,
    /// Number of Sylow `p`-subgroups, `[G : N_G(P)]`.
    pub count: usize,
}

impl SylowInfo {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn is_normal(&self) -> bool {
        self.count == 1
    }
}

impl FiniteGroup {
    /// A Sylow `p`-subgroup with its structural predicates.
    pub fn sylow(&self, p: u64) -> Result<SylowInfo> {
        let n = self.order() as u64;
        if !arith::is_prime(p) || !n.is_multiple_of(p) {
            return Err(GroupError::input(format!(
                "{p} is not a prime divisor of the group order {n}"
            )));
        }
        let representative = self.sylow_subgroup(p);
        let exponent_of_n = arith::valuation(n, p);
        let pg = self.induced_group(&representative, "P");
        let is_cyclic = pg.is_cyclic();
        let is_generalized_quaternion = pg.is_generalized_quaternion();
        let group_exponent = pg.exponent();
        let max_elementary_abelian_rank = pg.max_elementary_abelian_rank(p);
        let count = self.order() / self.normalizer(&representative).order();
        Ok(SylowInfo {
            prime: p,
            exponent_of_n,
            representative,
            is_cyclic,
            is_generalized_quaternion,
            group_exponent,
            max_elementary_abelian_rank,
            count,
        })
    }

    /// Sylow data for every prime divisor, in ascending prime order.
    pub fn sylows(&self) -> Vec<SylowInfo> {
        arith::prime_divisors(self.order() as u64)
            .into_iter()
            .map(|p| self.sylow(p).expect("prime divisor"))
            .collect()
    }

    /// Deterministic Sylow search. Starts from the cyclic subgroup of a
    /// largest-order `p`-element and grows through normalizers: while `P` is
    /// not Sylow, `p` divides `[N_G(P) : P]`, so some `g ∈ N_G(P) \ P` has
    /// `g^p ∈ P` and `⟨P, g⟩` is a `p`-group of order `p|P|`.
    pub fn sylow_subgroup(&self, p: u64) -> Subgroup {
        let target = arith::p_part(self.order() as u64, p) as usize;
        let seed = self
            .elements()
            .filter(|&x| arith::is_power_of(self.order_of(x), p))
            .max_by_key(|&x| (self.order_of(x), std::cmp::Reverse(x)))
            .unwrap_or(0);
        let mut gens: Vec<Elem> = if seed == 0 { Vec::new() } else { vec![seed] };
        let mut bits = self.closure_bits(&gens);
        let mut current = self.subgroup_from_bits(bits.clone(), gens.clone());
        while current.order() < target {
            let norm = self.normalizer(&current);
            let g = norm
                .elements()
                .iter()
                .copied()
                .find(|&g| !bits.contains(g) && bits.contains(self.pow(g, p)))
                .expect("normalizer of a non-Sylow p-subgroup has a p-element outside it");
            gens.push(g);
            bits = self.closure_bits(&gens);
            current = self.subgroup_from_bits(bits.clone(), gens.clone());
        }
        current
    }

    /// Unique involution, nonabelian, order at least 8. For a 2-group this
    /// characterizes the generalized quaternion groups.
    pub fn is_generalized_quaternion(&self) -> bool {
        let n = self.order();
        n >= 8
            && n.is_power_of_two()
            && !self.is_abelian()
            && self.element_orders().iter().filter(|&&o| o == 2).count() == 1
    }

    /// Elements of order coprime to `p`.
    pub fn p_prime_elements(&self, p: u64) -> Vec<Elem> {
        self.elements()
            .filter(|&x| !self.order_of(x).is_multiple_of(p))
            .collect()
    }
}
