//! Finite groups as dense multiplication tables.
//!
//! Elements are indices `0..n`; index 0 is always the identity. Tables are
//! validated once at construction and never mutated afterwards, so every
//! query below is a pure read.

mod lattice;
mod structure;
mod sylow;

pub use lattice::SubgroupLattice;
pub use structure::{PNilpotency, StructureProfile, TwoGroupClass};
pub use sylow::SylowInfo;

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{GroupError, Result};

pub type Elem = usize;

/// Size caps shared by constructions and the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub order_cap: usize,
    pub subgroup_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: 2048,
            subgroup_cap: 512,
        }
    }
}

/// Groups up to this order get the full `n^3` associativity check; larger
/// tables use Light's test over a generating set, which is also exact.
const FULL_ASSOC_LIMIT: usize = 256;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u64>,
    gens: Vec<Elem>,
    label: String,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.n)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates `table` (row-major, `table[a * n + b] = a·b`) and caches
    /// inverses, element orders and a small generating set.
    pub fn from_table(label: impl Into<String>, n: usize, table: Vec<u32>) -> Result<Self> {
        validate_table(n, &table)?;
        Ok(Self::from_trusted_table(label.into(), n, table))
    }

    /// Like [`FiniteGroup::from_table`] but first moves the identity element,
    /// wherever it sits, to index 0.
    pub fn from_table_renumbered(
        label: impl Into<String>,
        n: usize,
        table: Vec<u32>,
    ) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(GroupError::Axiom(format!(
                "expected {} entries for order {n}, found {}",
                n * n,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= n) {
            return Err(GroupError::Axiom(format!(
                "entry {bad} out of range 0..{n}"
            )));
        }
        let identity = (0..n)
            .find(|&e| {
                (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x)
            })
            .ok_or_else(|| GroupError::Axiom("no two-sided identity element".into()))?;
        if identity == 0 {
            return Self::from_table(label, n, table);
        }
        let swap = |x: usize| -> usize {
            if x == 0 {
                identity
            } else if x == identity {
                0
            } else {
                x
            }
        };
        let mut renumbered = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                renumbered[a * n + b] = swap(table[swap(a) * n + swap(b)] as usize) as u32;
            }
        }
        Self::from_table(label, n, renumbered)
    }

    /// Caller guarantees the table satisfies the group axioms.
    pub(crate) fn from_trusted_table(label: String, n: usize, table: Vec<u32>) -> Self {
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row.iter().position(|&v| v == 0).expect("latin row");
            inverses[a] = b as u32;
        }
        let mut orders = vec![0u64; n];
        for x in 0..n {
            let mut k = 1u64;
            let mut y = x;
            while y != 0 {
                y = table[y * n + x] as usize;
                k += 1;
            }
            orders[x] = k;
        }
        let mut g = FiniteGroup {
            n,
            table,
            inverses,
            orders,
            gens: Vec::new(),
            label,
        };
        g.gens = g.greedy_generators(&(0..n).collect::<Vec<_>>());
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a] as usize
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, x: Elem, k: u64) -> Elem {
        let mut k = k % self.orders[x];
        let mut base = x;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Least `k >= 1` with `x^k = e`.
    pub fn element_order(&self, x: Elem) -> Result<u64> {
        self.check_index(x)?;
        Ok(self.orders[x])
    }

    /// Cached element order; panics on an out-of-range index.
    #[inline]
    pub fn order_of(&self, x: Elem) -> u64 {
        self.orders[x]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Little-endian table entries; equal bytes means equal groups.
    pub fn table_bytes(&self) -> Vec<u8> {
        self.table.iter().flat_map(|v| v.to_le_bytes()).collect()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| arith::lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, &a)| {
            self.gens[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o as usize == self.n)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn check_index(&self, x: Elem) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange {
                index: x,
                order: self.n,
            })
        }
    }

    /// Elements of `p`-power order (including the identity).
    pub fn p_elements(&self, p: u64) -> Vec<Elem> {
        self.elements()
            .filter(|&x| arith::is_power_of(self.orders[x], p))
            .collect()
    }

    /// Bitset closure of `seeds` under multiplication.
    pub(crate) fn closure_bits(&self, seeds: &[Elem]) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.n);
        bits.insert(0);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &s in seeds {
                let y = self.mul(x, s);
                if !bits.contains(y) {
                    bits.insert(y);
                    stack.push(y);
                }
            }
        }
        bits
    }

    /// Smallest subgroup containing `seeds`.
    pub fn generated_subgroup(&self, seeds: &[Elem]) -> Result<Subgroup> {
        for &s in seeds {
            self.check_index(s)?;
        }
        let mut gens: Vec<Elem> = seeds.iter().copied().filter(|&s| s != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let bits = self.closure_bits(&gens);
        Ok(self.subgroup_from_bits(bits, gens))
    }

    pub(crate) fn subgroup_from_bits(&self, bits: FixedBitSet, gens: Vec<Elem>) -> Subgroup {
        let elements: Vec<Elem> = bits.ones().collect();
        let normal = self
            .gens
            .iter()
            .all(|&g| gens.iter().all(|&h| bits.contains(self.conj(g, h))));
        Subgroup {
            elements,
            members: bits,
            gens,
            normal,
        }
    }

    /// Accepts an explicit element list, checking that it is a subgroup.
    pub fn subgroup_from_elements(&self, elements: &[Elem]) -> Result<Subgroup> {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for &x in elements {
            self.check_index(x)?;
            bits.insert(x);
        }
        if !bits.contains(0) {
            return Err(GroupError::input("subset does not contain the identity"));
        }
        let elems: Vec<Elem> = bits.ones().collect();
        for &a in &elems {
            for &b in &elems {
                if !bits.contains(self.mul(a, b)) {
                    return Err(GroupError::input(format!(
                        "subset is not closed: {a}·{b} = {} is missing",
                        self.mul(a, b)
                    )));
                }
            }
        }
        let gens = self.greedy_generators(&elems);
        Ok(self.subgroup_from_bits(bits, gens))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_from_bits(self.closure_bits(&[]), Vec::new())
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.n);
        bits.insert_range(..);
        self.subgroup_from_bits(bits, self.gens.clone())
    }

    /// Picks generators in ascending index order until they generate `set`.
    fn greedy_generators(&self, set: &[Elem]) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut bits = self.closure_bits(&gens);
        for &x in set {
            if !bits.contains(x) {
                gens.push(x);
                bits = self.closure_bits(&gens);
            }
        }
        gens
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen.contains(x) {
                continue;
            }
            let mut class = self.conjugacy_class(x);
            class.sort_unstable();
            for &y in &class {
                seen.insert(y);
            }
            classes.push(class);
        }
        classes
    }

    pub fn conjugacy_class(&self, x: Elem) -> Vec<Elem> {
        let mut bits = FixedBitSet::with_capacity(self.n);
        bits.insert(x);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for &g in &self.gens {
                let z = self.conj(g, y);
                if !bits.contains(z) {
                    bits.insert(z);
                    stack.push(z);
                }
            }
        }
        bits.ones().collect()
    }

    /// Closure of a subset under conjugation, as a bitset.
    pub fn conjugation_closure(&self, set: &[Elem]) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.n);
        let mut stack = Vec::new();
        for &x in set {
            if !bits.contains(x) {
                bits.insert(x);
                stack.push(x);
            }
        }
        while let Some(y) = stack.pop() {
            for &g in &self.gens {
                let z = self.conj(g, y);
                if !bits.contains(z) {
                    bits.insert(z);
                    stack.push(z);
                }
            }
        }
        bits
    }

    pub fn centralizer(&self, x: Elem) -> Subgroup {
        let elems: Vec<Elem> = self
            .elements()
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        self.subgroup_of_known_elements(&elems)
    }

    pub fn center(&self) -> Subgroup {
        let elems: Vec<Elem> = self
            .elements()
            .filter(|&z| self.gens.iter().all(|&g| self.mul(g, z) == self.mul(z, g)))
            .collect();
        self.subgroup_of_known_elements(&elems)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<Elem> = self
            .elements()
            .filter(|&g| h.gens.iter().all(|&x| h.contains(self.conj(g, x))))
            .collect();
        self.subgroup_of_known_elements(&elems)
    }

    /// `elems` must already be a subgroup.
    pub(crate) fn subgroup_of_known_elements(&self, elems: &[Elem]) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for &x in elems {
            bits.insert(x);
        }
        let gens = self.greedy_generators(elems);
        self.subgroup_from_bits(bits, gens)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.gens
            .iter()
            .all(|&g| h.gens.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// `g H g^{-1}`.
    pub fn conjugate_subgroup(&self, g: Elem, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.gens.iter().map(|&x| self.conj(g, x)).collect();
        let bits = self.closure_bits(&gens);
        self.subgroup_from_bits(bits, gens)
    }

    /// Intersection of all conjugates of `h` (the normal core).
    pub fn core(&self, h: &Subgroup) -> Subgroup {
        let mut bits = h.members.clone();
        for g in self.elements() {
            let mut conj = FixedBitSet::with_capacity(self.n);
            for &x in &h.elements {
                conj.insert(self.conj(g, x));
            }
            bits.intersect_with(&conj);
        }
        let elems: Vec<Elem> = bits.ones().collect();
        self.subgroup_of_known_elements(&elems)
    }

    /// The subgroup as a group in its own right, elements renumbered in
    /// ascending parent-index order (so the identity stays at 0).
    pub fn induced_group(&self, h: &Subgroup, label: impl Into<String>) -> FiniteGroup {
        let m = h.order();
        let mut index = vec![u32::MAX; self.n];
        for (i, &x) in h.elements.iter().enumerate() {
            index[x] = i as u32;
        }
        let mut table = Vec::with_capacity(m * m);
        for &a in &h.elements {
            for &b in &h.elements {
                table.push(index[self.mul(a, b)]);
            }
        }
        FiniteGroup::from_trusted_table(label.into(), m, table)
    }

    /// `G/N` for normal `N`, cosets numbered by their smallest member.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(GroupError::input(
                "quotient by a subgroup that is not normal",
            ));
        }
        let mut projection = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in self.elements() {
            if projection[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &y in &n.elements {
                projection[self.mul(x, y)] = c;
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(projection[self.mul(a, b)] as u32);
            }
        }
        let group =
            FiniteGroup::from_trusted_table(format!("{}/N{}", self.label, n.order()), m, table);
        Ok(Quotient {
            group,
            projection,
            representatives: reps,
        })
    }

    /// Derived subgroup `[H, H]`.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut comms: Vec<Elem> = Vec::new();
        let mut seen = FixedBitSet::with_capacity(self.n);
        for &a in &h.elements {
            for &b in &h.elements {
                let c = self.commutator(a, b);
                if c != 0 && !seen.contains(c) {
                    seen.insert(c);
                    comms.push(c);
                }
            }
        }
        comms.sort_unstable();
        let bits = self.closure_bits(&comms);
        let elems: Vec<Elem> = bits.ones().collect();
        self.subgroup_of_known_elements(&elems)
    }
}

/// A subgroup of some parent [`FiniteGroup`], stored as parent indices.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<Elem>,
    members: FixedBitSet,
    gens: Vec<Elem>,
    normal: bool,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.elements.len())
            .field("gens", &self.gens)
            .field("normal", &self.normal)
            .finish()
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn exponent(&self, g: &FiniteGroup) -> u64 {
        self.elements
            .iter()
            .fold(1, |acc, &x| arith::lcm(acc, g.order_of(x)))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.gens.iter().enumerate().all(|(i, &a)| {
            self.gens[i + 1..]
                .iter()
                .all(|&b| g.mul(a, b) == g.mul(b, a))
        })
    }

    /// Every cyclic subgroup normal in `self`.
    pub fn is_dedekind(&self, g: &FiniteGroup) -> bool {
        self.elements.iter().all(|&x| {
            let cyc = g.closure_bits(&[x]);
            self.gens.iter().all(|&h| cyc.contains(g.conj(h, x)))
        })
    }
}

/// Result of [`FiniteGroup::quotient`].
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset index of `x`.
    pub projection: Vec<Elem>,
    /// Smallest element of each coset.
    pub representatives: Vec<Elem>,
}

fn validate_table(n: usize, table: &[u32]) -> Result<()> {
    if n == 0 {
        return Err(GroupError::Axiom("empty group".into()));
    }
    if table.len() != n * n {
        return Err(GroupError::Axiom(format!(
            "expected {} entries for order {n}, found {}",
            n * n,
            table.len()
        )));
    }
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    for x in 0..n {
        if at(0, x) != x || at(x, 0) != x {
            return Err(GroupError::Axiom(format!(
                "element 0 is not an identity (fails at {x})"
            )));
        }
    }
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let v = at(a, b);
            if v >= n {
                return Err(GroupError::Axiom(format!(
                    "entry {v} at ({a},{b}) out of range"
                )));
            }
            if seen[v] == a {
                return Err(GroupError::Axiom(format!(
                    "latin square violated: row {a} repeats {v}"
                )));
            }
            seen[v] = a;
        }
    }
    seen.iter_mut().for_each(|s| *s = usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let v = at(a, b);
            if seen[v] == b {
                return Err(GroupError::Axiom(format!(
                    "latin square violated: column {b} repeats {v}"
                )));
            }
            seen[v] = b;
        }
    }
    let middles: Vec<usize> = if n <= FULL_ASSOC_LIMIT {
        (0..n).collect()
    } else {
        loop_generators(n, table)
    };
    for a in 0..n {
        for &b in &middles {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(GroupError::Axiom(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Generators of a loop, reaching every element by right multiplication.
/// Associativity with these in the middle slot implies full associativity.
fn loop_generators(n: usize, table: &[u32]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = FixedBitSet::with_capacity(n);
    reached.insert(0);
    for x in 0..n {
        if reached.contains(x) {
            continue;
        }
        gens.push(x);
        reached.clear();
        reached.insert(0);
        let mut stack = vec![0usize];
        while let Some(y) = stack.pop() {
            for &s in &gens {
                let z = table[y * n + s] as usize;
                if !reached.contains(z) {
                    reached.insert(z);
                    stack.push(z);
                }
            }
        }
    }
    gens
}
