//! Checkable instances of divisibility and lower-bound statements about
//! `|Sol(1, d, G)|`, swept over groups and parameters.

mod claims;
mod regular;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Write;
use std::rc::Rc;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::{Elem, FiniteGroup, Limits, Subgroup, SylowInfo};
use crate::spectrum::{sol_set, OrderHistogram};

pub use regular::{
    cyclic_generators, is_a_regular, lc_p, lcm_p_set, RegularityData, RegularityViolation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    #[serde(rename = "frobenius")]
    Frobenius,
    #[serde(rename = "divv22")]
    Divv22,
    #[serde(rename = "divv2")]
    Divv2,
    #[serde(rename = "divv2222")]
    Divv2222,
    #[serde(rename = "frob3")]
    Frob3,
    #[serde(rename = "lemmm_2va")]
    Lemmm2va,
    #[serde(rename = "t22va")]
    T22va,
    #[serde(rename = "dis")]
    Dis,
    #[serde(rename = "dec")]
    Dec,
    #[serde(rename = "ciic")]
    Ciic,
    #[serde(rename = "noncyc")]
    Noncyc,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::Frobenius,
        ClaimId::Divv22,
        ClaimId::Divv2,
        ClaimId::Divv2222,
        ClaimId::Frob3,
        ClaimId::Lemmm2va,
        ClaimId::T22va,
        ClaimId::Dis,
        ClaimId::Dec,
        ClaimId::Ciic,
        ClaimId::Noncyc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClaimId::Frobenius => "frobenius",
            ClaimId::Divv22 => "divv22",
            ClaimId::Divv2 => "divv2",
            ClaimId::Divv2222 => "divv2222",
            ClaimId::Frob3 => "frob3",
            ClaimId::Lemmm2va => "lemmm_2va",
            ClaimId::T22va => "t22va",
            ClaimId::Dis => "dis",
            ClaimId::Dec => "dec",
            ClaimId::Ciic => "ciic",
            ClaimId::Noncyc => "noncyc",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| GroupError::input(format!("unknown claim `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(u64),
    List(Vec<u64>),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::List(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "[{}]", parts.join(" "))
            }
            ParamValue::Text(t) => f.write_str(t),
        }
    }
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl From<Vec<u64>> for ParamValue {
    fn from(v: Vec<u64>) -> Self {
        ParamValue::List(v)
    }
}

/// What the observed count is compared against. For `Holds` the observed
/// value is 1 when the property holds and 0 otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Requirement {
    Divides(u64),
    AtLeast(u64),
    Equals(u64),
    Holds(String),
}

impl Requirement {
    pub fn satisfied_by(&self, observed: u64) -> bool {
        match self {
            Requirement::Divides(m) => *m != 0 && observed.is_multiple_of(*m),
            Requirement::AtLeast(b) => observed >= *b,
            Requirement::Equals(v) => observed == *v,
            Requirement::Holds(_) => observed == 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Requirement::Divides(_) => "divides",
            Requirement::AtLeast(_) => "at-least",
            Requirement::Equals(_) => "equals",
            Requirement::Holds(_) => "holds",
        }
    }

    fn value(&self) -> String {
        match self {
            Requirement::Divides(v) | Requirement::AtLeast(v) | Requirement::Equals(v) => {
                v.to_string()
            }
            Requirement::Holds(p) => p.clone(),
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind(), self.value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
    CapabilitySkipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::CapabilitySkipped => "capability-skipped",
        })
    }
}

pub type Params = BTreeMap<String, ParamValue>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub claim: ClaimId,
    pub group_label: String,
    pub parameters: Params,
    pub hypothesis_met: bool,
    pub observed: Option<u64>,
    pub required: Option<Requirement>,
    pub verdict: Verdict,
}

impl DivisibilityReport {
    fn checked(
        claim: ClaimId,
        g: &FiniteGroup,
        parameters: Params,
        observed: u64,
        required: Requirement,
    ) -> Self {
        let verdict = if required.satisfied_by(observed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        DivisibilityReport {
            claim,
            group_label: g.label().to_string(),
            parameters,
            hypothesis_met: true,
            observed: Some(observed),
            required: Some(required),
            verdict,
        }
    }

    fn not_met(claim: ClaimId, g: &FiniteGroup, parameters: Params) -> Self {
        DivisibilityReport {
            claim,
            group_label: g.label().to_string(),
            parameters,
            hypothesis_met: false,
            observed: None,
            required: None,
            verdict: Verdict::HypothesisNotMet,
        }
    }

    fn skipped(claim: ClaimId, g: &FiniteGroup, mut parameters: Params, err: &GroupError) -> Self {
        parameters.insert("reason".into(), ParamValue::Text(err.to_string()));
        DivisibilityReport {
            claim,
            group_label: g.label().to_string(),
            parameters,
            hypothesis_met: false,
            observed: None,
            required: None,
            verdict: Verdict::CapabilitySkipped,
        }
    }

    /// `k=v;k=v` rendering of the parameters.
    pub fn params_string(&self) -> String {
        self.parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Build a parameter map from `(key, value)` pairs.
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = $crate::divisibility::Params::new();
        $( m.insert($k.to_string(), $crate::divisibility::ParamValue::from($v)); )*
        m
    }};
}
pub(crate) use params;

/// Fixed values for a claim's quantified variables. Unset fields are swept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClaimParams {
    pub p: Option<u64>,
    pub d: Option<u64>,
    pub j: Option<u64>,
    pub m: Option<u64>,
    pub e: Option<u64>,
    pub y: Option<Elem>,
    /// An explicit `p`-subgroup `N`, by its elements.
    pub n: Option<Vec<Elem>>,
    /// Run `dis` at `p = 2` for every `d`, not only `d = n_{2'}`.
    pub dis_all_d: bool,
}

impl ClaimParams {
    fn fixed(&self) -> Vec<(&'static str, u64)> {
        let mut out = Vec::new();
        for (k, v) in [
            ("p", self.p),
            ("d", self.d),
            ("j", self.j),
            ("m", self.m),
            ("e", self.e),
            ("y", self.y.map(|y| y as u64)),
        ] {
            if let Some(v) = v {
                out.push((k, v));
            }
        }
        out
    }

    fn matches(&self, row: &Params) -> bool {
        self.fixed().iter().all(|(k, v)| match row.get(*k) {
            Some(ParamValue::Int(x)) => x == v,
            _ => true,
        })
    }

    fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let n = g.order() as u64;
        if let Some(p) = self.p {
            if !arith::is_prime(p) || !n.is_multiple_of(p) {
                return Err(GroupError::input(format!(
                    "p = {p} is not a prime divisor of {n}"
                )));
            }
        }
        for (k, v) in [("d", self.d), ("j", self.j), ("m", self.m), ("e", self.e)] {
            if v == Some(0) {
                return Err(GroupError::input(format!("{k} must be positive")));
            }
        }
        if let Some(y) = self.y {
            g.check_index(y)?;
        }
        if let Some(n_elems) = &self.n {
            let h = g.subgroup_from_elements(n_elems)?;
            if arith::prime_power_base(h.order() as u64).is_none() && h.order() > 1 {
                return Err(GroupError::input("N must be a p-subgroup"));
            }
        }
        Ok(())
    }
}

/// Candidate subgroups `N` for one prime, one per `(r, s)` class.
#[derive(Debug, Clone)]
pub(crate) struct Candidate {
    pub r: u32,
    pub s: u32,
    pub subgroup: Subgroup,
    pub abelian: bool,
}

pub(crate) struct PrimeData {
    pub sylow: SylowInfo,
    /// Nontrivial A-regular subgroups of the Sylow subgroup: abelian ones,
    /// then non-abelian Dedekind ones, one witness per `(r, s)` each.
    pub candidates: Result<Vec<Candidate>>,
}

/// Lazily computed per-group data shared by the claim checkers.
pub(crate) struct Lab<'g> {
    pub g: &'g FiniteGroup,
    pub limits: Limits,
    pub hist: OrderHistogram,
    primes: RefCell<HashMap<u64, Rc<PrimeData>>>,
}

impl<'g> Lab<'g> {
    pub fn new(g: &'g FiniteGroup, limits: &Limits) -> Self {
        Lab {
            g,
            limits: *limits,
            hist: OrderHistogram::of_group(g),
            primes: RefCell::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> u64 {
        self.g.order() as u64
    }

    pub fn primes(&self) -> Vec<u64> {
        arith::prime_divisors(self.n())
    }

    pub fn sol(&self, d: u64) -> u64 {
        self.hist.sol_count(d)
    }

    pub fn prime(&self, p: u64) -> Rc<PrimeData> {
        if let Some(d) = self.primes.borrow().get(&p) {
            return d.clone();
        }
        let sylow = self.g.sylow(p).expect("p divides |G|");
        let candidates = self.candidates(p, &sylow.representative);
        let data = Rc::new(PrimeData { sylow, candidates });
        self.primes.borrow_mut().insert(p, data.clone());
        data
    }

    fn candidates(&self, p: u64, within: &Subgroup) -> Result<Vec<Candidate>> {
        let g = self.g;
        let data = RegularityData::new(g, p, within, &self.limits)?;
        let mut abelian: BTreeMap<(u32, u32), Candidate> = BTreeMap::new();
        let mut dedekind: BTreeMap<(u32, u32), Candidate> = BTreeMap::new();
        for (idx, h) in data.lattice.subgroups.iter().enumerate() {
            if h.order() == 1 {
                continue;
            }
            let r = arith::log_p(h.order() as u64, p);
            let s = arith::log_p(h.exponent(g), p);
            let is_abelian = h.is_abelian(g);
            let slot = if is_abelian {
                &mut abelian
            } else {
                &mut dedekind
            };
            if slot.contains_key(&(r, s)) {
                continue;
            }
            if !is_abelian && !h.is_dedekind(g) {
                continue;
            }
            if data.is_a_regular(idx, g) {
                slot.insert(
                    (r, s),
                    Candidate {
                        r,
                        s,
                        subgroup: h.clone(),
                        abelian: is_abelian,
                    },
                );
            }
        }
        Ok(abelian
            .into_values()
            .chain(dedekind.into_values())
            .collect())
    }

    /// Candidates for an explicitly supplied `N`.
    pub fn explicit_candidate(&self, p: u64, n: &Subgroup) -> Result<Vec<Candidate>> {
        let g = self.g;
        if n.order() == 1 || !arith::is_power_of(n.order() as u64, p) {
            return Err(GroupError::input(format!(
                "N is not a nontrivial {p}-subgroup"
            )));
        }
        let data = RegularityData::new(g, p, n, &self.limits)?;
        let idx = data.index_of(n).expect("N lies in its own lattice");
        let abelian = n.is_abelian(g);
        if !data.is_a_regular(idx, g) || !(abelian || n.is_dedekind(g)) {
            return Ok(Vec::new());
        }
        Ok(vec![Candidate {
            r: arith::log_p(n.order() as u64, p),
            s: arith::log_p(n.exponent(g), p),
            subgroup: n.clone(),
            abelian,
        }])
    }
}

/// `m(H, k, p)`: when `Sol(1, p^k, H)` is a subgroup of order `p^r` this is
/// `min(r, k(p-1))`, otherwise `k(p-1)`.
pub fn m_invariant(g: &FiniteGroup, h: &Subgroup, k: u32, p: u64) -> u32 {
    let pk = p.pow(k);
    let sol: Vec<Elem> = h
        .elements()
        .iter()
        .copied()
        .filter(|&x| pk.is_multiple_of(g.order_of(x)))
        .collect();
    let cap = k * (p as u32 - 1);
    if g.closure_bits(&sol).count_ones(..) == sol.len() {
        arith::log_p(sol.len() as u64, p).min(cap)
    } else {
        cap
    }
}

/// Instances of one claim on one group. Unset parameters are swept over
/// every admissible value; a claim with no instance yields a single
/// hypothesis-not-met row.
pub fn check_claim(
    claim: ClaimId,
    g: &FiniteGroup,
    params: &ClaimParams,
    limits: &Limits,
) -> Result<Vec<DivisibilityReport>> {
    params.validate(g)?;
    let lab = Lab::new(g, limits);
    Ok(claim_rows(&lab, claim, params))
}

fn claim_rows(lab: &Lab<'_>, claim: ClaimId, params: &ClaimParams) -> Vec<DivisibilityReport> {
    let mut rows = claims::run(lab, claim, params);
    rows.retain(|r| params.matches(&r.parameters));
    rows.sort_by(|a, b| a.parameters.cmp(&b.parameters));
    if rows.is_empty() {
        let mut p = Params::new();
        for (k, v) in params.fixed() {
            p.insert(k.to_string(), ParamValue::Int(v));
        }
        p.insert("reason".into(), ParamValue::from("no admissible instance"));
        rows.push(DivisibilityReport::not_met(claim, lab.g, p));
    }
    rows
}

/// `|Sol([y], d, G)| = [G : N_G(⟨y⟩)] · |Sol([y], d_y, C_G(y))|` with
/// `d_y = gcd(|C_G(y)|, d)`. The report also records the prediction made
/// with `|y^G|` in place of the index of the normalizer.
pub fn class_anchored_identity(g: &FiniteGroup, y: Elem, d: u64) -> Result<DivisibilityReport> {
    g.check_index(y)?;
    if d == 0 {
        return Err(GroupError::input("d must be positive"));
    }
    let gens = cyclic_generators(g, y);
    let observed = sol_set(g, &gens, d)?.len() as u64;
    let c = g.centralizer(y);
    let cyc = g.generated_subgroup(&[y])?;
    let norm = g.normalizer(&cyc);
    let d_y = arith::gcd(c.order() as u64, d);
    let divs = arith::divisors(d_y);
    // ⟨y⟩ is central in C_G(y), so [y] is a union of C_G(y)-classes.
    let inner = c
        .elements()
        .iter()
        .filter(|&&x| {
            divs.iter()
                .any(|&m| gens.binary_search(&g.pow(x, m)).is_ok())
        })
        .count() as u64;
    let n = g.order() as u64;
    let predicted = (n / norm.order() as u64) * inner;
    let literal = (n / c.order() as u64) * inner;
    let parameters = params! {
        "y" => y as u64,
        "d" => d,
        "d_y" => d_y,
        "class_size" => n / c.order() as u64,
        "normalizer_index" => n / norm.order() as u64,
        "centralizer_count" => inner,
        "class_size_prediction" => literal,
    };
    Ok(DivisibilityReport::checked(
        ClaimId::Divv2,
        g,
        parameters,
        observed,
        Requirement::Equals(predicted),
    ))
}

/// Pass/fail tallies over a report list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub pass: usize,
    pub fail: usize,
    pub hypothesis_not_met: usize,
    pub capability_skipped: usize,
}

impl SweepSummary {
    pub fn of(reports: &[DivisibilityReport]) -> Self {
        let mut s = SweepSummary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::HypothesisNotMet => s.hypothesis_not_met += 1,
                Verdict::CapabilitySkipped => s.capability_skipped += 1,
            }
        }
        s
    }
}

/// All claims over all groups, groups in catalog order, then claim, then
/// parameters. Groups are checked in parallel.
pub fn sweep(
    groups: &[FiniteGroup],
    claims: &[ClaimId],
    params: &ClaimParams,
    limits: &Limits,
) -> Vec<DivisibilityReport> {
    let mut claims = claims.to_vec();
    claims.sort();
    claims.dedup();
    groups
        .par_iter()
        .map(|g| {
            if params.validate(g).is_err() {
                return Vec::new();
            }
            let lab = Lab::new(g, limits);
            claims
                .iter()
                .flat_map(|&c| claim_rows(&lab, c, params))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn write_jsonl<W: Write>(reports: &[DivisibilityReport], mut out: W) -> std::io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(reports: &[DivisibilityReport], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "claim",
        "group",
        "parameters",
        "hypothesis_met",
        "observed",
        "required_kind",
        "required_value",
        "verdict",
    ])?;
    for r in reports {
        let observed = r.observed.map(|o| o.to_string()).unwrap_or_default();
        let (kind, value) = match &r.required {
            Some(req) => (req.kind().to_string(), req.value()),
            None => (String::new(), String::new()),
        };
        w.write_record([
            r.claim.name(),
            &r.group_label,
            &r.params_string(),
            if r.hypothesis_met { "true" } else { "false" },
            &observed,
            &kind,
            &value,
            &r.verdict.to_string(),
        ])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests;
