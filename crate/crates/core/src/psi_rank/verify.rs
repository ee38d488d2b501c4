use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith;
use crate::bijection::cl_member;
use crate::construct::Catalog;
use crate::error::Result;
use crate::group::{FiniteGroup, SylowInfo};
use crate::spectrum::{psi, psi_power, same_order_type, OrderFunction, OrderHistogram};

use super::{group_by_value, psi_values, require_complete, CheckRow, CheckStatus, VerifyReport};

/// Histogram of `C_{f_1} × ... × C_{f_k}`.
pub(crate) fn abelian_hist(factors: &[u64]) -> OrderHistogram {
    factors.iter().fold(OrderHistogram::cyclic(1), |h, &f| {
        h.direct_product(&OrderHistogram::cyclic(f))
    })
}

/// Histogram of `Q_{2^e}`: a cyclic subgroup of index 2 plus `2^{e-1}`
/// elements of order 4.
fn quaternion_hist(order: u64) -> OrderHistogram {
    let mut h = OrderHistogram::cyclic(order / 2);
    h.add(4, order / 2);
    h
}

fn sylow_hist(g: &FiniteGroup, s: &SylowInfo) -> OrderHistogram {
    OrderHistogram::of_elements(g, s.representative.elements().iter().copied())
}

/// Members of the third tier of non-cyclic groups: solvable, `p`-nilpotent
/// at the least prime with a non-cyclic Sylow subgroup, cyclic complement
/// when the other Sylow subgroups are cyclic, and the two direct-product
/// clauses checked through order types.
pub fn verify_main5(catalog: &Catalog, advisory: bool) -> Result<VerifyReport> {
    verify_main5_at_tier(catalog, 3, advisory)
}

/// [`verify_main5`] applied to the members of tier `tier` instead. Tier 2
/// holds the groups with the third-largest `ψ` among all groups of the
/// order, since the cyclic group sits above every tier.
pub fn verify_main5_at_tier(
    catalog: &Catalog,
    tier: usize,
    advisory: bool,
) -> Result<VerifyReport> {
    require_complete(catalog, advisory)?;
    let n = catalog.order;
    let tiers = group_by_value(psi_values(catalog, false));
    let mut report = VerifyReport::default();
    let Some((value, members)) = tier.checked_sub(1).and_then(|i| tiers.get(i)) else {
        report
            .notes
            .push(format!("n={n}: no tier {tier} of non-cyclic groups"));
        return Ok(report);
    };
    report.notes.push(format!(
        "n={n}: tier {tier} has psi={value} with {} member(s)",
        members.len()
    ));
    let rows: Vec<Vec<CheckRow>> = members
        .par_iter()
        .map(|(_, i)| main5_rows(&catalog.groups[*i]))
        .collect();
    report.rows = rows.into_iter().flatten().collect();
    for clause in ["clause-i", "clause-ii"] {
        let used = report
            .rows_for(clause)
            .any(|r| r.status != CheckStatus::NotApplicable);
        if used {
            report.notes.push(format!("n={n}: {clause} exercised"));
        }
    }
    Ok(report)
}

fn main5_rows(g: &FiniteGroup) -> Vec<CheckRow> {
    let label = g.label();
    let n = g.order() as u64;
    let mut rows = vec![CheckRow::new(label, "solvable", "", g.is_solvable().into())];
    let sylows = g.sylows();
    let Some(p_info) = sylows.iter().find(|s| !s.is_cyclic) else {
        rows.push(CheckRow::new(
            label,
            "p-nilpotent",
            "every Sylow subgroup is cyclic",
            CheckStatus::NotApplicable,
        ));
        return rows;
    };
    let p = p_info.prime;
    let pn = g.is_p_nilpotent(p);
    let k_order = arith::p_prime_part(n, p);
    rows.push(CheckRow::new(
        label,
        "p-nilpotent",
        format!("p={p} |K|={k_order}"),
        pn.holds.into(),
    ));
    let others_cyclic = sylows.iter().all(|s| s.prime == p || s.is_cyclic);
    rows.push(match (&pn.complement, others_cyclic) {
        (Some(k), true) => {
            let cyclic = g.induced_group(k, "K").is_cyclic();
            CheckRow::new(
                label,
                "complement-cyclic",
                format!("|K|={k_order}"),
                cyclic.into(),
            )
        }
        (None, true) => CheckRow::new(
            label,
            "complement-cyclic",
            "no normal complement",
            CheckStatus::Fail,
        ),
        (_, false) => CheckRow::new(
            label,
            "complement-cyclic",
            "another Sylow subgroup is non-cyclic",
            CheckStatus::NotApplicable,
        ),
    });

    let gh = OrderHistogram::of_group(g);
    let nilpotent = g.is_nilpotent();
    let p_order = p_info.order() as u64;
    rows.push(if p_info.max_elementary_abelian_rank >= 3 {
        let ph = sylow_hist(g, p_info);
        let split = gh == OrderHistogram::cyclic(n / p_order).direct_product(&ph);
        let shape = ph == abelian_hist(&[p_order / (p * p), p, p]);
        CheckRow::new(
            label,
            "clause-i",
            format!(
                "p={p} rank={} nilpotent={nilpotent} G~C{}xP={split} P~C{}xC{p}^2={shape}",
                p_info.max_elementary_abelian_rank,
                n / p_order,
                p_order / (p * p)
            ),
            (nilpotent && split && shape).into(),
        )
        .surrogate()
    } else {
        CheckRow::new(
            label,
            "clause-i",
            format!("p={p} has no elementary abelian subgroup of rank 3"),
            CheckStatus::NotApplicable,
        )
    });

    let noncyclic: Vec<&SylowInfo> = sylows.iter().filter(|s| !s.is_cyclic).collect();
    if noncyclic.len() < 2 {
        rows.push(CheckRow::new(
            label,
            "clause-ii",
            "fewer than two non-cyclic Sylow subgroups",
            CheckStatus::NotApplicable,
        ));
    }
    for (i, r_info) in noncyclic.iter().enumerate() {
        for q_info in &noncyclic[i + 1..] {
            let (r, q) = (r_info.prime, q_info.prime);
            let (ro, qo) = (r_info.order() as u64, q_info.order() as u64);
            let rq = sylow_hist(g, r_info).direct_product(&sylow_hist(g, q_info));
            let split = gh == OrderHistogram::cyclic(n / (ro * qo)).direct_product(&rq);
            let shape = rq == abelian_hist(&[ro * qo / (r * r * q * q), q, q, r, r]);
            rows.push(
                CheckRow::new(
                    label,
                    "clause-ii",
                    format!(
                        "r={r} q={q} nilpotent={nilpotent} G~C{}xRxQ={split} RQ~C{}xC{q}^2xC{r}^2={shape}",
                        n / (ro * qo),
                        ro * qo / (r * r * q * q)
                    ),
                    (nilpotent && split && shape).into(),
                )
                .surrogate(),
            );
        }
    }
    rows
}

/// Groups with the second-largest `Σ o(x)^k` among all groups of the
/// catalog's order must look like `C_{n/p} × C_p`, `C_m × Q_{2^e}`, or
/// have every Sylow subgroup cyclic.
pub fn verify_coo(catalog: &Catalog, k: u32, advisory: bool) -> Result<VerifyReport> {
    require_complete(catalog, advisory)?;
    let n = catalog.order;
    let values: Vec<(String, BigInt, usize)> = catalog
        .groups
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let v = psi_power(&OrderHistogram::of_group(g), OrderFunction::Identity, k);
            (g.label().to_string(), v.value.to_integer(), i)
        })
        .collect();
    let tiers = group_by_value(values);
    let mut report = VerifyReport::default();
    let Some((value, members)) = tiers.get(1) else {
        report.notes.push(format!(
            "n={n}: only one order type, no second-largest value"
        ));
        return Ok(report);
    };
    report.notes.push(format!(
        "n={n} k={k}: second-largest value {value} with {} member(s)",
        members.len()
    ));
    for (label, i) in members {
        let g = &catalog.groups[*i];
        let (branch, surrogate) = coo_branch(g);
        let mut row = CheckRow::new(
            label.clone(),
            "second-largest-shape",
            format!("k={k} {}", branch.as_deref().unwrap_or("no branch matches")),
            branch.is_some().into(),
        );
        if surrogate {
            row = row.surrogate();
        }
        report.rows.push(row);
    }
    Ok(report)
}

fn coo_branch(g: &FiniteGroup) -> (Option<String>, bool) {
    let n = g.order() as u64;
    let gh = OrderHistogram::of_group(g);
    let nilpotent = g.is_nilpotent();
    if nilpotent {
        for p in arith::prime_divisors(n) {
            if n.is_multiple_of(p * p) && gh == abelian_hist(&[n / p, p]) {
                return (Some(format!("C{}xC{p}", n / p)), true);
            }
        }
        let e = arith::valuation(n, 2);
        if e >= 3 {
            let m = n >> e;
            let q = quaternion_hist(1 << e);
            if gh == OrderHistogram::cyclic(m).direct_product(&q) {
                return (Some(format!("C{m}xQ{}", 1u64 << e)), true);
            }
        }
    }
    if g.sylows().iter().all(|s| s.is_cyclic) {
        return (Some("all Sylow subgroups cyclic".into()), false);
    }
    (None, false)
}

/// `ψ(C_n)` is strictly larger than `ψ` of every other group of order `n`.
pub fn verify_cyclic_max(catalog: &Catalog, advisory: bool) -> Result<VerifyReport> {
    require_complete(catalog, advisory)?;
    let values = psi_values(catalog, true);
    let cyclic: Vec<&(String, BigInt, usize)> = values
        .iter()
        .filter(|(_, _, i)| catalog.groups[*i].is_cyclic())
        .collect();
    let subject = format!("n={}", catalog.order);
    let row = match cyclic.as_slice() {
        [(label, v, _)] => {
            let runner_up = values
                .iter()
                .filter(|(_, _, i)| !catalog.groups[*i].is_cyclic())
                .map(|(_, w, _)| w)
                .max();
            let ok = runner_up.is_none_or(|w| w < v);
            let detail = match runner_up {
                Some(w) => format!("psi({label})={v} next={w}"),
                None => format!("psi({label})={v}, no other group"),
            };
            CheckRow::new(subject, "cyclic-maximal", detail, ok.into())
        }
        _ => CheckRow::new(
            subject,
            "cyclic-maximal",
            format!("catalog holds {} cyclic groups", cyclic.len()),
            CheckStatus::Fail,
        ),
    };
    Ok(VerifyReport {
        rows: vec![row],
        notes: Vec::new(),
    })
}

/// For pairs with an order-divisibility bijection `G → H`: equal `ψ` iff
/// equal order type, and equal `ψ` forces matching `p`-nilpotency.
pub fn verify_same_pnil(pairs: &[(&FiniteGroup, &FiniteGroup)]) -> Result<VerifyReport> {
    let rows: Vec<Result<Vec<CheckRow>>> = pairs
        .par_iter()
        .map(|(g, h)| same_pnil_rows(g, h))
        .collect();
    let mut report = VerifyReport::default();
    for r in rows {
        report.rows.extend(r?);
    }
    Ok(report)
}

fn same_pnil_rows(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<CheckRow>> {
    let subject = format!("{} -> {}", g.label(), h.label());
    if !cl_member(g, h)?.is_feasible() {
        return Ok(vec![CheckRow::new(
            subject,
            "psi-iff-order-type",
            "no order-divisibility bijection",
            CheckStatus::NotApplicable,
        )]);
    }
    let (pg, ph) = (
        psi(&OrderHistogram::of_group(g)),
        psi(&OrderHistogram::of_group(h)),
    );
    let same = same_order_type(g, h)?;
    let mut rows = vec![CheckRow::new(
        subject.clone(),
        "psi-iff-order-type",
        format!("psi {pg} vs {ph}, same order type {same}"),
        ((pg == ph) == same).into(),
    )];
    if pg == ph {
        let mismatched: Vec<u64> = arith::prime_divisors(g.order() as u64)
            .into_iter()
            .filter(|&p| g.is_p_nilpotent(p).holds != h.is_p_nilpotent(p).holds)
            .collect();
        rows.push(CheckRow::new(
            subject,
            "p-nilpotent-agrees",
            if mismatched.is_empty() {
                String::new()
            } else {
                format!("differs at {mismatched:?}")
            },
            mismatched.is_empty().into(),
        ));
    }
    Ok(rows)
}
