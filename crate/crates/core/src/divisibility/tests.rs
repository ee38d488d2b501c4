use super::*;
use crate::construct::{build, GroupSpec};

fn g(s: &str) -> FiniteGroup {
    build(&GroupSpec::parse(s).unwrap()).unwrap()
}

fn run(claim: ClaimId, grp: &FiniteGroup, params: ClaimParams) -> Vec<DivisibilityReport> {
    check_claim(claim, grp, &params, &Limits::default()).unwrap()
}

#[test]
fn divv22_anchors() {
    let a4 = g("A4");
    let rows = run(
        ClaimId::Divv22,
        &a4,
        ClaimParams {
            p: Some(2),
            d: Some(3),
            j: Some(1),
            ..Default::default()
        },
    );
    let v4 = rows
        .iter()
        .find(|r| r.parameters.get("r") == Some(&ParamValue::Int(2)))
        .unwrap();
    assert_eq!(v4.observed, Some(12));
    assert_eq!(v4.required, Some(Requirement::Divides(12)));
    assert_eq!(v4.verdict, Verdict::Pass);

    let c33 = g("C3xC3");
    let rows = run(
        ClaimId::Divv22,
        &c33,
        ClaimParams {
            p: Some(3),
            d: Some(1),
            j: Some(1),
            n: Some((0..9).collect()),
            ..Default::default()
        },
    );
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].observed, Some(9));
    assert_eq!(rows[0].required, Some(Requirement::Divides(9)));
}

#[test]
fn m_invariant_examples() {
    let q8 = g("Q8");
    assert_eq!(m_invariant(&q8, &q8.whole(), 1, 2), 1);
    let d8 = g("D8");
    assert_eq!(m_invariant(&d8, &d8.whole(), 1, 2), 1);
    let c9 = g("C9");
    assert_eq!(m_invariant(&c9, &c9.whole(), 1, 3), 1);
    let c33 = g("C3xC3");
    assert_eq!(m_invariant(&c33, &c33.whole(), 1, 3), 2);
}

#[test]
fn dis_and_dec_anchors() {
    let d8 = g("D8");
    let rows = run(
        ClaimId::Dis,
        &d8,
        ClaimParams {
            d: Some(1),
            m: Some(1),
            ..Default::default()
        },
    );
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].observed, Some(6));
    assert_eq!(rows[0].required, Some(Requirement::AtLeast(4)));
    assert_eq!(rows[0].verdict, Verdict::Pass);

    let sl = g("SL(2,3)");
    let rows = run(
        ClaimId::Dec,
        &sl,
        ClaimParams {
            d: Some(3),
            ..Default::default()
        },
    );
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].verdict, Verdict::HypothesisNotMet);
    assert_eq!(rows[0].parameters["sol"], ParamValue::Int(18));
    // At d = 1 the hypothesis holds (one involution) yet Q8 has no normal
    // complement in SL(2,3).
    let rows = run(
        ClaimId::Dec,
        &sl,
        ClaimParams {
            d: Some(1),
            ..Default::default()
        },
    );
    assert_eq!(rows[0].verdict, Verdict::Fail);
}

#[test]
fn frob3_readings() {
    let a4 = g("A4");
    let rows = run(
        ClaimId::Frob3,
        &a4,
        ClaimParams {
            p: Some(3),
            d: Some(4),
            ..Default::default()
        },
    );
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].required, Some(Requirement::Divides(12)));
    assert_eq!(rows[0].verdict, Verdict::Pass);
    // With m taken on the whole group the same instance would need 36 | 12.
    assert_eq!(m_invariant(&a4, &a4.whole(), 1, 3), 2);
    assert_eq!(
        a4.element_orders().iter().filter(|&&o| 12 % o == 0).count(),
        12
    );
    // Even at d = 1 the whole-group reading breaks: 9 does not divide 15.
    let f21 = g("C7:C3");
    assert_eq!(m_invariant(&f21, &f21.whole(), 1, 3), 2);
    assert_eq!(
        f21.element_orders().iter().filter(|&&o| 3 % o == 0).count(),
        15
    );
}

#[test]
fn t22va_counterexample() {
    let c44 = g("C4xC4");
    let rows = run(
        ClaimId::T22va,
        &c44,
        ClaimParams {
            j: Some(1),
            d: Some(1),
            ..Default::default()
        },
    );
    assert_eq!(rows[0].observed, Some(4));
    assert_eq!(rows[0].required, Some(Requirement::AtLeast(8)));
    assert_eq!(rows[0].verdict, Verdict::Fail);
}

#[test]
fn class_identity() {
    let s3 = g("S3");
    let y = (0..6).find(|&x| s3.order_of(x) == 3).unwrap();
    let r = class_anchored_identity(&s3, y, 1).unwrap();
    assert_eq!(r.observed, Some(2));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.parameters["class_size_prediction"], ParamValue::Int(4));

    let a4 = g("A4");
    for y in 0..12 {
        for d in [1, 2, 3, 4, 6, 12] {
            assert_eq!(
                class_anchored_identity(&a4, y, d).unwrap().verdict,
                Verdict::Pass
            );
        }
    }
    let e = class_anchored_identity(&a4, 0, 2).unwrap();
    assert_eq!(e.observed, Some(4));
}

#[test]
fn frobenius_small_catalogs() {
    let groups: Vec<FiniteGroup> = (1..16)
        .flat_map(|n| {
            crate::construct::builtin_catalog(n, &Limits::default())
                .unwrap()
                .groups
        })
        .collect();
    let rows = sweep(
        &groups,
        &[ClaimId::Frobenius, ClaimId::T22va],
        &ClaimParams::default(),
        &Limits::default(),
    );
    let s = SweepSummary::of(&rows);
    assert_eq!(s.fail, 0);
    assert!(s.pass > 0);
    assert!(sweep(
        &[],
        &[ClaimId::Frobenius],
        &ClaimParams::default(),
        &Limits::default()
    )
    .is_empty());
}

#[test]
fn malformed_params() {
    let c6 = g("C6");
    let bad = ClaimParams {
        p: Some(5),
        ..Default::default()
    };
    assert!(check_claim(ClaimId::Divv22, &c6, &bad, &Limits::default()).is_err());
    let bad = ClaimParams {
        d: Some(0),
        ..Default::default()
    };
    assert!(check_claim(ClaimId::Frobenius, &c6, &bad, &Limits::default()).is_err());
}

#[test]
fn csv_and_jsonl() {
    let rows = run(ClaimId::Frobenius, &g("C2"), ClaimParams::default());
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(
        text,
        "claim,group,parameters,hypothesis_met,observed,required_kind,required_value,verdict\n\
         frobenius,C2,d=1,true,1,divides,1,pass\n\
         frobenius,C2,d=2,true,2,divides,2,pass\n"
    );
    let mut buf = Vec::new();
    write_jsonl(&rows[..1], &mut buf).unwrap();
    assert_eq!(
        String::from_utf8(buf).unwrap(),
        "{\"claim\":\"frobenius\",\"group_label\":\"C2\",\"parameters\":{\"d\":1},\"hypothesis_met\":true,\
         \"observed\":1,\"required\":{\"kind\":\"divides\",\"value\":1},\"verdict\":\"pass\"}\n"
    );
}
