//! Order-divisibility bijections `f: G → H` with `o(x) | o(f(x))`, decided
//! on order histograms by max-flow, and the target groups such bijections
//! are known to reach.

mod metacyclic;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::construct::{abelian_from_prime_powers, build_with, GroupSpec};
use crate::divisibility::Lab;
use crate::error::{GroupError, Result};
use crate::group::{Elem, FiniteGroup, Limits};
use crate::spectrum::OrderHistogram;

pub use metacyclic::{metacyclic_bijection, MetacyclicBijection, MetacyclicRefusal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Feasibility {
    Feasible,
    Infeasible,
}

/// Outcome of the histogram transportation problem. A feasible certificate
/// carries `(d, m, count)` triples; an infeasible one carries a set `D` of
/// source orders whose elements outnumber the targets with an order
/// divisible by some member of `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionCertificate {
    pub verdict: Feasibility,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<(u64, u64, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violator: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deficiency: Option<u64>,
}

impl BijectionCertificate {
    pub fn is_feasible(&self) -> bool {
        self.verdict == Feasibility::Feasible
    }

    /// Re-checks the certificate against the two histograms.
    pub fn verify(&self, src: &OrderHistogram, tgt: &OrderHistogram) -> bool {
        match self.verdict {
            Feasibility::Feasible => {
                let Some(assignment) = &self.assignment else {
                    return false;
                };
                let mut rows: BTreeMap<u64, u64> = BTreeMap::new();
                let mut cols: BTreeMap<u64, u64> = BTreeMap::new();
                for &(d, m, c) in assignment {
                    if c == 0 || m % d != 0 {
                        return false;
                    }
                    *rows.entry(d).or_default() += c;
                    *cols.entry(m).or_default() += c;
                }
                rows == *src.entries() && cols == *tgt.entries()
            }
            Feasibility::Infeasible => {
                let (Some(v), Some(k)) = (&self.violator, self.deficiency) else {
                    return false;
                };
                let have: u64 = v.iter().map(|&d| src.count(d)).sum();
                let room: u64 = tgt
                    .entries()
                    .iter()
                    .filter(|(&m, _)| v.iter().any(|&d| m % d == 0))
                    .map(|(_, &c)| c)
                    .sum();
                k > 0 && have == room + k
            }
        }
    }
}

/// Decides whether some bijection maps every element of order `d` to an
/// element whose order is a multiple of `d`.
pub fn order_matching(src: &OrderHistogram, tgt: &OrderHistogram) -> Result<BijectionCertificate> {
    let total = src.total();
    if total != tgt.total() {
        return Err(GroupError::input(format!(
            "histograms have different sizes ({total} and {})",
            tgt.total()
        )));
    }
    let mut graph: DiGraph<(), u64> = DiGraph::new();
    let source = graph.add_node(());
    let sink = graph.add_node(());
    let src_nodes: Vec<(u64, NodeIndex)> = src
        .entries()
        .iter()
        .map(|(&d, &c)| {
            let v = graph.add_node(());
            graph.add_edge(source, v, c);
            (d, v)
        })
        .collect();
    let tgt_nodes: Vec<(u64, NodeIndex)> = tgt
        .entries()
        .iter()
        .map(|(&m, &c)| {
            let v = graph.add_node(());
            graph.add_edge(v, sink, c);
            (m, v)
        })
        .collect();
    // Middle edges never bind, so a minimum cut only crosses source and sink
    // edges and reads off as a Hall violator.
    let unbounded = total + 1;
    let mut middle = Vec::new();
    for &(d, dv) in &src_nodes {
        for &(m, mv) in &tgt_nodes {
            if m % d == 0 {
                middle.push((d, m, graph.add_edge(dv, mv, unbounded)));
            }
        }
    }
    let (flow, edge_flows) = petgraph::algo::ford_fulkerson(&graph, source, sink);
    if flow == total {
        let assignment = middle
            .iter()
            .filter_map(|&(d, m, e)| {
                let c = edge_flows[e.index()];
                (c > 0).then_some((d, m, c))
            })
            .collect();
        return Ok(BijectionCertificate {
            verdict: Feasibility::Feasible,
            assignment: Some(assignment),
            violator: None,
            deficiency: None,
        });
    }
    // Residual reachability from the source.
    let mut seen = vec![false; graph.node_count()];
    seen[source.index()] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for e in graph.edges_directed(u, petgraph::Direction::Outgoing) {
            if edge_flows[e.id().index()] < *e.weight() && !seen[e.target().index()] {
                seen[e.target().index()] = true;
                queue.push_back(e.target());
            }
        }
        for e in graph.edges_directed(u, petgraph::Direction::Incoming) {
            if edge_flows[e.id().index()] > 0 && !seen[e.source().index()] {
                seen[e.source().index()] = true;
                queue.push_back(e.source());
            }
        }
    }
    let violator: Vec<u64> = src_nodes
        .iter()
        .filter(|(_, v)| seen[v.index()])
        .map(|&(d, _)| d)
        .collect();
    Ok(BijectionCertificate {
        verdict: Feasibility::Infeasible,
        assignment: None,
        violator: Some(violator),
        deficiency: Some(total - flow),
    })
}

/// Whether `G ∈ cl(H)`.
pub fn cl_member(g: &FiniteGroup, h: &FiniteGroup) -> Result<BijectionCertificate> {
    order_matching(&OrderHistogram::of_group(g), &OrderHistogram::of_group(h))
}

/// Realizes a feasible certificate element by element: within each order,
/// elements are taken in ascending index. `image[x]` is `f(x)`.
pub fn explicit_bijection(
    g: &FiniteGroup,
    h: &FiniteGroup,
    cert: &BijectionCertificate,
) -> Option<Vec<Elem>> {
    let assignment = cert.assignment.as_ref()?;
    let mut src: BTreeMap<u64, VecDeque<Elem>> = BTreeMap::new();
    for x in g.elements() {
        src.entry(g.order_of(x)).or_default().push_back(x);
    }
    let mut tgt: BTreeMap<u64, VecDeque<Elem>> = BTreeMap::new();
    for y in h.elements() {
        tgt.entry(h.order_of(y)).or_default().push_back(y);
    }
    let mut image = vec![usize::MAX; g.order()];
    for &(d, m, c) in assignment {
        for _ in 0..c {
            let x = src.get_mut(&d)?.pop_front()?;
            image[x] = tgt.get_mut(&m)?.pop_front()?;
        }
    }
    image.iter().all(|&y| y != usize::MAX).then_some(image)
}

/// Coarse target: per prime, `C_{p^α}` for a cyclic Sylow subgroup,
/// `C_{p^{α-1}} × C_p` otherwise, except that a non-cyclic Sylow
/// 2-subgroup with `|Sol(1, 2 n_{2'})| = 2 n_{2'}` gives `Q_{2^α}`.
pub fn target_of(g: &FiniteGroup) -> GroupSpec {
    let n = g.order() as u64;
    let hist = OrderHistogram::of_group(g);
    let mut powers = Vec::new();
    let mut quaternion = None;
    for (p, alpha) in arith::factorize(n) {
        let sylow = g.sylow(p).expect("p divides |G|");
        if sylow.is_cyclic {
            powers.push(p.pow(alpha));
            continue;
        }
        let n2 = arith::p_prime_part(n, 2);
        if p == 2 && hist.sol_count(2 * n2) == 2 * n2 {
            quaternion = Some(p.pow(alpha));
        } else {
            powers.push(p.pow(alpha - 1));
            powers.push(p);
        }
    }
    with_quaternion(quaternion, abelian_from_prime_powers(&powers))
}

fn with_quaternion(q: Option<u64>, rest: GroupSpec) -> GroupSpec {
    match q {
        None => rest,
        Some(order) if rest.order() == Some(1) => GroupSpec::GeneralizedQuaternion { order },
        Some(order) => GroupSpec::direct(GroupSpec::GeneralizedQuaternion { order }, rest),
    }
}

/// Which rule produced a prime's factor in the refined target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefinedBranch {
    Cyclic,
    Abelian {
        r: u32,
    },
    NonAbelian {
        r: u32,
    },
    /// Rank 1 at `p = 2` with a non-cyclic Sylow subgroup, decided by the
    /// involution-type count.
    RankOne {
        quaternion: bool,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct RefinedTarget {
    pub spec: GroupSpec,
    pub label: String,
    pub branches: Vec<(u64, RefinedBranch)>,
}

/// Fine target from A-regular Dedekind subgroups of maximal rank: per prime
/// `C_{p^{α-r+1}} × (C_p)^{r-1}` for elementary abelian `N` of order `p^r`.
/// A non-abelian `N ≅ Q_8 × (C_2)^{r-3}` at `p = 2` gives
/// `C_{2^{α-r+1}} × (C_2)^{r-4} × Q_8`, and `C_{2^{α-3}} × Q_8` when `r = 3`.
pub fn refined_target_of(g: &FiniteGroup, limits: &Limits) -> Result<RefinedTarget> {
    let n = g.order() as u64;
    let lab = Lab::new(g, limits);
    let mut powers = Vec::new();
    let mut quaternion = None;
    let mut with_q8 = false;
    let mut branches = Vec::new();
    for (p, alpha) in arith::factorize(n) {
        let data = lab.prime(p);
        if data.sylow.is_cyclic {
            powers.push(p.pow(alpha));
            branches.push((p, RefinedBranch::Cyclic));
            continue;
        }
        let cands = data.candidates.clone()?;
        let r_abelian = cands
            .iter()
            .filter(|c| c.abelian && c.s == 1)
            .map(|c| c.r)
            .max()
            .unwrap_or(0);
        let r_dedekind = cands
            .iter()
            .filter(|c| !c.abelian)
            .map(|c| c.r)
            .max()
            .unwrap_or(0);
        if p == 2 && r_dedekind > r_abelian {
            let r = r_dedekind;
            if r == 3 {
                powers.push(1 << (alpha - 3));
            } else {
                powers.push(1 << (alpha - r + 1));
                powers.extend(std::iter::repeat_n(2, (r - 4) as usize));
            }
            with_q8 = true;
            branches.push((p, RefinedBranch::NonAbelian { r }));
        } else if p == 2 && r_abelian <= 1 {
            let n2 = arith::p_prime_part(n, 2);
            let is_q = lab.sol(2 * n2) == 2 * n2;
            if is_q {
                quaternion = Some(1 << alpha);
            } else {
                powers.push(1 << (alpha - 1));
                powers.push(2);
            }
            branches.push((p, RefinedBranch::RankOne { quaternion: is_q }));
        } else {
            let r = r_abelian.max(1);
            powers.push(p.pow(alpha - r + 1));
            powers.extend(std::iter::repeat_n(p, (r - 1) as usize));
            branches.push((p, RefinedBranch::Abelian { r }));
        }
    }
    let abelian = abelian_from_prime_powers(&powers);
    let spec = if with_q8 {
        with_quaternion(Some(8), abelian)
    } else {
        with_quaternion(quaternion, abelian)
    };
    Ok(RefinedTarget {
        label: spec.to_string(),
        spec,
        branches,
    })
}

/// One membership check made by [`verify_fmain`].
#[derive(Debug, Clone, Serialize)]
pub struct FmainRow {
    pub group: String,
    /// The prime whose Sylow subgroup triggered the check, or `None` for
    /// the coarse-target check.
    pub prime: Option<u64>,
    pub target: String,
    pub certificate: BijectionCertificate,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FmainReport {
    pub rows: Vec<FmainRow>,
    /// Groups whose non-cyclic Sylow subgroups are all generalized
    /// quaternion, so only the coarse target applies.
    pub quaternion_exempt: Vec<String>,
    pub failures: usize,
}

/// For every group: membership in `cl(C_{n/p} × C_p)` for each prime whose
/// Sylow subgroup is neither cyclic nor generalized quaternion, and
/// membership in `cl(target_of(G))`.
pub fn verify_fmain(groups: &[FiniteGroup], limits: &Limits) -> Result<FmainReport> {
    let per_group: Vec<Result<(Vec<FmainRow>, bool)>> = groups
        .par_iter()
        .map(|g| {
            let n = g.order() as u64;
            let mut rows = Vec::new();
            let mut exempt = false;
            for p in arith::prime_divisors(n) {
                let s = g.sylow(p)?;
                if s.is_cyclic {
                    continue;
                }
                if s.is_generalized_quaternion {
                    exempt = true;
                    continue;
                }
                let spec = abelian_from_prime_powers(
                    &prime_powers_of(n / p).chain([p]).collect::<Vec<_>>(),
                );
                let h = build_with(&spec, limits)?;
                rows.push(FmainRow {
                    group: g.label().to_string(),
                    prime: Some(p),
                    target: spec.to_string(),
                    certificate: cl_member(g, &h)?,
                });
            }
            let spec = target_of(g);
            let h = build_with(&spec, limits)?;
            rows.push(FmainRow {
                group: g.label().to_string(),
                prime: None,
                target: spec.to_string(),
                certificate: cl_member(g, &h)?,
            });
            Ok((rows, exempt))
        })
        .collect();
    let mut report = FmainReport::default();
    let mut exempt_seen = BTreeSet::new();
    for (g, res) in groups.iter().zip(per_group) {
        let (rows, exempt) = res?;
        if exempt && exempt_seen.insert(g.label().to_string()) {
            report.quaternion_exempt.push(g.label().to_string());
        }
        report.failures += rows.iter().filter(|r| !r.certificate.is_feasible()).count();
        report.rows.extend(rows);
    }
    Ok(report)
}

/// The prime-power cyclic factors of `C_m`.
fn prime_powers_of(m: u64) -> impl Iterator<Item = u64> {
    arith::factorize(m).into_iter().map(|(p, e)| p.pow(e))
}

#[cfg(test)]
mod tests;
