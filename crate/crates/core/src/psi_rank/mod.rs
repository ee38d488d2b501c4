//! Rankings of groups by the sum of element orders, and checks of the
//! structural and bound statements built on those sums.

mod bounds;
mod verify;


use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::Catalog;
use crate::error::{GroupError, Result};
use crate::spectrum::{psi, OrderHistogram};

pub use bounds::{
    closed_form_row, eligible_rank_choices, omega_one, verify_bounds, verify_recursion,
    ClosedFormRow,
};
pub use verify::{
    verify_coo, verify_cyclic_max, verify_main5, verify_main5_at_tier, verify_same_pnil,
};

/// Groups of one order sharing one value of `ψ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiTier {
    pub n: u64,
    pub tier_index: usize,
    /// Labels sorted, so file order never leaks into the output.
    pub members: Vec<String>,
    #[serde(serialize_with = "ser_bigint")]
    pub psi: BigInt,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn require_complete(catalog: &Catalog, advisory: bool) -> Result<()> {
    if catalog.complete || advisory {
        Ok(())
    } else {
        Err(GroupError::IncompleteCatalog {
            order: catalog.order,
            source_name: catalog.source.clone(),
        })
    }
}

/// `(label, ψ)` for every catalog member, in catalog order.
pub(crate) fn psi_values(catalog: &Catalog, include_cyclic: bool) -> Vec<(String, BigInt, usize)> {
    catalog
        .groups
        .par_iter()
        .enumerate()
        .filter(|(_, g)| include_cyclic || !g.is_cyclic())
        .map(|(i, g)| (g.label().to_string(), psi(&OrderHistogram::of_group(g)), i))
        .collect()
}

/// Groups `(label, value, index)` into tiers by descending value.
pub(crate) fn group_by_value<T: Ord + Clone>(
    mut values: Vec<(String, T, usize)>,
) -> Vec<(T, Vec<(String, usize)>)> {
    values.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let mut out: Vec<(T, Vec<(String, usize)>)> = Vec::new();
    for (label, v, i) in values {
        match out.last_mut() {
            Some((last, members)) if *last == v => members.push((label, i)),
            _ => out.push((v, vec![(label, i)])),
        }
    }
    out
}

/// The first `k_max` tiers of non-cyclic groups by descending `ψ`.
/// Refuses a catalog not declared complete unless `advisory` is set.
pub fn rank_tiers(catalog: &Catalog, k_max: usize, advisory: bool) -> Result<Vec<PsiTier>> {
    require_complete(catalog, advisory)?;
    Ok(group_by_value(psi_values(catalog, false))
        .into_iter()
        .take(k_max)
        .enumerate()
        .map(|(i, (psi, members))| PsiTier {
            n: catalog.order,
            tier_index: i + 1,
            members: members.into_iter().map(|(l, _)| l).collect(),
            psi,
        })
        .collect())
}

pub fn write_tiers_csv<W: Write>(tiers: &[PsiTier], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| GroupError::Io {
        path: "<csv>".into(),
        msg: e.to_string(),
    };
    w.write_record(["n", "tier", "label", "psi"]).map_err(io)?;
    for t in tiers {
        for m in &t.members {
            w.write_record([
                t.n.to_string(),
                t.tier_index.to_string(),
                m.clone(),
                t.psi.to_string(),
            ])
            .map_err(io)?;
        }
    }
    w.flush().map_err(|e| GroupError::Io {
        path: "<csv>".into(),
        msg: e.to_string(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    /// A known inconsistency, reported but not counted as a failure.
    Flagged,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not-applicable",
            CheckStatus::Flagged => "flagged",
        })
    }
}

impl From<bool> for CheckStatus {
    fn from(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

/// One checked statement about one group (or pair).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub subject: String,
    pub check: String,
    pub detail: String,
    pub status: CheckStatus,
    /// The conclusion is about isomorphism type but was checked through
    /// order type, nilpotency and Sylow data only.
    pub surrogate: bool,
}

impl CheckRow {
    pub fn new(
        subject: impl Into<String>,
        check: impl Into<String>,
        detail: impl Into<String>,
        status: CheckStatus,
    ) -> Self {
        CheckRow {
            subject: subject.into(),
            check: check.into(),
            detail: detail.into(),
            status,
            surrogate: false,
        }
    }

    pub fn surrogate(mut self) -> Self {
        self.surrogate = true;
        self
    }
}

impl fmt::Display for CheckRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.status, self.subject, self.check)?;
        if self.surrogate && self.status == CheckStatus::Pass {
            f.write_str(" (surrogate-verified)")?;
        }
        if !self.detail.is_empty() {
            write!(f, "\t{}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.count(CheckStatus::Fail)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.rows.extend(other.rows);
        self.notes.extend(other.notes);
    }

    pub fn rows_for<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a CheckRow> + 'a {
        self.rows.iter().filter(move |r| r.check == check)
    }

    /// `subject,check,status,surrogate,detail`, one line per row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| GroupError::Io {
            path: "<csv>".into(),
            msg: e.to_string(),
        };
        w.write_record(["subject", "check", "status", "surrogate", "detail"])
            .map_err(io)?;
        for r in &self.rows {
            w.write_record([
                r.subject.as_str(),
                r.check.as_str(),
                &r.status.to_string(),
                if r.surrogate { "true" } else { "false" },
                r.detail.as_str(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| GroupError::Io {
            path: "<csv>".into(),
            msg: e.to_string(),
        })
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.rows {
            let line = serde_json::to_string(r).expect("rows serialize");
            writeln!(out, "{line}").map_err(|e| GroupError::Io {
                path: "<jsonl>".into(),
                msg: e.to_string(),
            })?;
        }
        Ok(())
    }
}
