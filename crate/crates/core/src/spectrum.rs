//! Element-order histograms, solution sets of `x^d ∈ U^G`, and the two
//! families of sums over element orders.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::{Elem, FiniteGroup};

/// Multiset of element orders.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderHistogram {
    entries: BTreeMap<u64, u64>,
}

impl Serialize for OrderHistogram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (d, c) in &self.entries {
            seq.serialize_element(&[d, c])?;
        }
        seq.end()
    }
}

impl FromIterator<(u64, u64)> for OrderHistogram {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut h = OrderHistogram::default();
        for (d, c) in iter {
            h.add(d, c);
        }
        h
    }
}

impl OrderHistogram {
    pub fn of_group(g: &FiniteGroup) -> Self {
        Self::of_elements(g, g.elements())
    }

    pub fn of_elements(g: &FiniteGroup, elems: impl IntoIterator<Item = Elem>) -> Self {
        elems.into_iter().map(|x| (g.order_of(x), 1)).collect()
    }

    /// Histogram of `C_n`: `φ(d)` elements of each order `d | n`.
    pub fn cyclic(n: u64) -> Self {
        arith::divisors(n)
            .into_iter()
            .map(|d| (d, arith::euler_phi(d)))
            .collect()
    }

    /// Histogram of `A × B` from those of the factors, using
    /// `o((a, b)) = lcm(o(a), o(b))`.
    pub fn direct_product(&self, other: &OrderHistogram) -> Self {
        let mut h = OrderHistogram::default();
        for (&a, &ca) in &self.entries {
            for (&b, &cb) in &other.entries {
                h.add(arith::lcm(a, b), ca * cb);
            }
        }
        h
    }

    pub fn add(&mut self, d: u64, count: u64) {
        if count > 0 {
            *self.entries.entry(d).or_insert(0) += count;
        }
    }

    pub fn count(&self, d: u64) -> u64 {
        self.entries.get(&d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    /// Distinct orders present, ascending.
    pub fn orders(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn exponent(&self) -> u64 {
        self.orders().fold(1, arith::lcm)
    }

    /// `|Sol(1, d, G)|`: elements whose order divides `d`.
    pub fn sol_count(&self, d: u64) -> u64 {
        self.entries
            .iter()
            .filter(|(&m, _)| d.is_multiple_of(m))
            .map(|(_, &c)| c)
            .sum()
    }
}

/// Same multiset of element orders. Errors if the groups differ in size.
pub fn same_order_type(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool> {
    if a.order() != b.order() {
        return Err(GroupError::input(format!(
            "order type comparison needs equal orders, got {} and {}",
            a.order(),
            b.order()
        )));
    }
    Ok(OrderHistogram::of_group(a) == OrderHistogram::of_group(b))
}

/// `Sol(U, d, G)`: all `x` with `x^m` in the conjugation closure of `U` for
/// some divisor `m` of `d`, ascending.
pub fn sol_set(g: &FiniteGroup, u: &[Elem], d: u64) -> Result<Vec<Elem>> {
    if u.is_empty() || d == 0 {
        return Err(GroupError::input("Sol needs a nonempty U and d >= 1"));
    }
    for &x in u {
        g.check_index(x)?;
    }
    if u == [0] {
        return Ok(g
            .elements()
            .filter(|&x| d.is_multiple_of(g.order_of(x)))
            .collect());
    }
    let closure = g.conjugation_closure(u);
    let divs = arith::divisors(d);
    Ok(g.elements()
        .filter(|&x| {
            let o = g.order_of(x);
            // x^m only depends on m mod o(x).
            let mut seen = Vec::new();
            divs.iter().any(|&m| {
                let r = m % o;
                if seen.contains(&r) {
                    return false;
                }
                seen.push(r);
                closure.contains(g.pow(x, r))
            })
        })
        .collect())
}

/// `B_d(U)`: the elements of `U` of order exactly `d`.
pub fn b_d(g: &FiniteGroup, u: &[Elem], d: u64) -> Vec<Elem> {
    let mut out: Vec<Elem> = u.iter().copied().filter(|&x| g.order_of(x) == d).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Registered functions of the element order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "String")]
pub enum OrderFunction {
    Identity,
    /// `t ↦ t^k`, `k >= 2`.
    Power(u32),
    Reciprocal,
}

impl OrderFunction {
    pub fn apply(&self, t: u64) -> BigRational {
        let t = BigInt::from(t);
        match self {
            OrderFunction::Identity => BigRational::from_integer(t),
            OrderFunction::Power(k) => BigRational::from_integer(num_traits::pow(t, *k as usize)),
            OrderFunction::Reciprocal => BigRational::new(BigInt::one(), t),
        }
    }

    pub fn is_increasing(&self) -> bool {
        !matches!(self, OrderFunction::Reciprocal)
    }

    pub fn is_integer_valued(&self) -> bool {
        self.is_increasing()
    }
}

impl fmt::Display for OrderFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderFunction::Identity => f.write_str("identity"),
            OrderFunction::Power(2) => f.write_str("square"),
            OrderFunction::Power(k) => write!(f, "power:{k}"),
            OrderFunction::Reciprocal => f.write_str("reciprocal"),
        }
    }
}

impl From<OrderFunction> for String {
    fn from(f: OrderFunction) -> String {
        f.to_string()
    }
}

impl FromStr for OrderFunction {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" | "I" => Ok(OrderFunction::Identity),
            "square" => Ok(OrderFunction::Power(2)),
            "reciprocal" => Ok(OrderFunction::Reciprocal),
            _ => match s.strip_prefix("power:").and_then(|k| k.parse::<u32>().ok()) {
                Some(1) => Ok(OrderFunction::Identity),
                Some(k) if k >= 2 => Ok(OrderFunction::Power(k)),
                _ => Err(GroupError::input(format!(
                    "unregistered order function '{s}' (identity, square, power:<k>, reciprocal)"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsiFamily {
    /// `Σ_x f(o(x))^l`.
    PowerSum,
    /// Sum over `l`-subsets of `Π f(o(x))`.
    SubsetProduct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiValue {
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub family: PsiFamily,
    pub f: OrderFunction,
    pub l: u32,
}

impl PsiValue {
    /// The value as an integer when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.value.is_integer().then(|| self.value.to_integer())
    }
}

pub(crate) fn ser_rational<S: Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `ψ^{f,l}`: power sum `Σ_x f(o(x))^l`.
pub fn psi_power(h: &OrderHistogram, f: OrderFunction, l: u32) -> PsiValue {
    let value = h
        .entries()
        .iter()
        .map(|(&d, &c)| num_traits::pow(f.apply(d), l as usize) * BigInt::from(c))
        .fold(BigRational::zero(), |a, b| a + b);
    PsiValue {
        value,
        family: PsiFamily::PowerSum,
        f,
        l,
    }
}

/// `ψ_{f,l}`: the `l`-th elementary symmetric function of the multiset
/// `{f(o(x))}`, via `Π_v (1 + v t)^{count(v)}` truncated at degree `l`.
pub fn psi_subset(h: &OrderHistogram, f: OrderFunction, l: u32) -> Result<PsiValue> {
    let l = l as usize;
    if l == 0 || l as u64 > h.total() {
        return Err(GroupError::input(format!(
            "subset size {l} must lie in 1..={}",
            h.total()
        )));
    }
    let mut poly = vec![BigRational::zero(); l + 1];
    poly[0] = BigRational::one();
    for (&d, &c) in h.entries() {
        let v = f.apply(d);
        let kmax = l.min(c as usize);
        // Coefficients C(c, k) v^k of (1 + v t)^c up to degree l.
        let mut factor = Vec::with_capacity(kmax + 1);
        let mut binom = BigInt::one();
        let mut vk = BigRational::one();
        for k in 0..=kmax {
            factor.push(BigRational::from_integer(binom.clone()) * &vk);
            binom = binom * BigInt::from(c - k as u64) / BigInt::from(k as u64 + 1);
            vk *= &v;
        }
        let mut next = vec![BigRational::zero(); l + 1];
        for (i, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in factor.iter().enumerate().take(l + 1 - i) {
                next[i + k] += a * b;
            }
        }
        poly = next;
    }
    Ok(PsiValue {
        value: poly[l].clone(),
        family: PsiFamily::SubsetProduct,
        f,
        l: l as u32,
    })
}

/// `ψ(G) = Σ o(x)`.
pub fn psi(h: &OrderHistogram) -> BigInt {
    h.entries()
        .iter()
        .map(|(&d, &c)| BigInt::from(d) * BigInt::from(c))
        .sum()
}

/// `ψ(G) / |G|` exactly.
pub fn mean_order(h: &OrderHistogram) -> BigRational {
    BigRational::new(psi(h), BigInt::from(h.total()))
}
