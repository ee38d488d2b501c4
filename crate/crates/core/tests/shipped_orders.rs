//! Ranking and structure checks on the shipped catalogs of orders 16, 24
//! and 36, including the two places where a statement fails.

use std::path::PathBuf;

use grouplab::bijection::{cl_member, target_of, verify_fmain};
use grouplab::construct::{build, load_catalog_dir, Catalog};
use grouplab::psi_rank::{
    rank_tiers, verify_coo, verify_cyclic_max, verify_main5, verify_main5_at_tier,
    verify_same_pnil, CheckStatus,
};
use grouplab::Limits;

fn catalog(n: u64) -> Catalog {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    load_catalog_dir(&root, n, &Limits::default())
        .unwrap()
        .unwrap()
}

fn top_tiers(n: u64) -> Vec<(Vec<String>, String)> {
    rank_tiers(&catalog(n), 3, false)
        .unwrap()
        .into_iter()
        .map(|t| (t.members, t.psi.to_string()))
        .collect()
}

#[test]
fn tiers_of_shipped_orders() {
    let v = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    assert_eq!(
        top_tiers(16),
        vec![
            (v(&["C8xC2", "M16"]), "87".into()),
            (v(&["Q16"]), "75".into()),
            (v(&["SD16"]), "67".into()),
        ]
    );
    assert_eq!(
        top_tiers(24),
        vec![
            (v(&["C3xQ8"]), "189".into()),
            (v(&["C3:C8"]), "173".into()),
            (v(&["C12xC2"]), "161".into()),
        ]
    );
    assert_eq!(
        top_tiers(36),
        vec![
            (v(&["C18xC2"]), "427".into()),
            (v(&["C12xC3"]), "275".into()),
            (v(&["(C2xC2):C9"]), "265".into()),
        ]
    );
}

#[test]
fn third_tier_holds_at_16_and_24() {
    for n in [16, 24] {
        let r = verify_main5(&catalog(n), false).unwrap();
        assert_eq!(r.failures(), 0, "{r:?}");
    }
}

#[test]
fn third_tier_is_not_2_nilpotent_at_36() {
    let r = verify_main5(&catalog(36), false).unwrap();
    let row = r.rows_for("p-nilpotent").next().unwrap();
    assert_eq!(row.subject, "(C2xC2):C9");
    assert_eq!(row.status, CheckStatus::Fail);
    // The group with the third-largest ψ among all groups of order 36.
    let r = verify_main5_at_tier(&catalog(36), 2, false).unwrap();
    assert_eq!(r.failures(), 0);
    assert_eq!(r.rows[0].subject, "C12xC3");
}

#[test]
fn structure_clauses_are_never_exercised() {
    for n in [16, 24, 36] {
        for tier in [2, 3] {
            let r = verify_main5_at_tier(&catalog(n), tier, false).unwrap();
            for clause in ["clause-i", "clause-ii"] {
                assert!(r
                    .rows_for(clause)
                    .all(|x| x.status == CheckStatus::NotApplicable));
            }
        }
    }
}

#[test]
fn second_largest_and_cyclic_maximum() {
    for n in [16, 24, 36] {
        let c = catalog(n);
        assert_eq!(verify_cyclic_max(&c, false).unwrap().failures(), 0);
        for k in 1..=3 {
            assert_eq!(
                verify_coo(&c, k, false).unwrap().failures(),
                0,
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn equal_psi_pairs_share_p_nilpotency() {
    for n in [16, 24, 36] {
        let c = catalog(n);
        let pairs: Vec<_> = c
            .groups
            .iter()
            .flat_map(|a| c.groups.iter().map(move |b| (a, b)))
            .collect();
        let r = verify_same_pnil(&pairs).unwrap();
        assert_eq!(r.failures(), 0);
        assert!(r.count(CheckStatus::Pass) > 0);
    }
}

#[test]
fn sl23_misses_its_coarse_target() {
    let c = catalog(24);
    let report = verify_fmain(&c.groups, &Limits::default()).unwrap();
    assert_eq!(report.failures, 1);
    let sl = c.groups.iter().find(|g| g.label() == "SL(2,3)").unwrap();
    let target = target_of(sl);
    assert_eq!(target.to_string(), "C12xC2");
    let cert = cl_member(sl, &build(&target).unwrap()).unwrap();
    assert!(!cert.is_feasible());
    assert_eq!(cert.violator, Some(vec![3, 4, 6]));
    assert_eq!(cert.deficiency, Some(2));
    let q = build(&grouplab::GroupSpec::parse("Q8xC3").unwrap()).unwrap();
    assert!(cl_member(sl, &q).unwrap().is_feasible());
}

#[test]
fn incomplete_catalogs_are_refused() {
    let mut c = catalog(16);
    c.complete = false;
    assert!(rank_tiers(&c, 3, false).unwrap_err().is_capability());
    assert!(verify_main5(&c, false).is_err());
}
