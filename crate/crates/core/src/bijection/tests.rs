use super::*;
use crate::construct::build;

fn g(s: &str) -> FiniteGroup {
    build(&GroupSpec::parse(s).unwrap()).unwrap()
}

fn hist(s: &str) -> OrderHistogram {
    OrderHistogram::of_group(&g(s))
}

#[test]
fn s3_into_c6() {
    let c = order_matching(&hist("S3"), &hist("C6")).unwrap();
    assert!(c.is_feasible());
    assert_eq!(c.assignment.as_ref().unwrap()[0], (1, 1, 1));
    assert!(c.verify(&hist("S3"), &hist("C6")));
}

#[test]
fn quaternion_obstruction() {
    let c = order_matching(&hist("Q8"), &hist("C4xC2")).unwrap();
    assert_eq!(c.verdict, Feasibility::Infeasible);
    assert_eq!(c.violator, Some(vec![4]));
    assert_eq!(c.deficiency, Some(2));
    assert!(c.verify(&hist("Q8"), &hist("C4xC2")));
    assert_eq!(
        serde_json::to_string(&c).unwrap(),
        r#"{"verdict":"infeasible","violator":[4],"deficiency":2}"#
    );

    let c = cl_member(&g("C3xQ8"), &g("C12xC2")).unwrap();
    assert_eq!(c.violator, Some(vec![4, 12]));
    assert_eq!(c.deficiency, Some(6));
}

#[test]
fn size_mismatch() {
    assert!(order_matching(&hist("C4"), &hist("C6")).is_err());
}

#[test]
fn explicit_maps_respect_orders() {
    let (a, b) = (g("D8"), g("C4xC2"));
    let c = cl_member(&a, &b).unwrap();
    let f = explicit_bijection(&a, &b, &c).unwrap();
    let mut seen = f.clone();
    seen.sort_unstable();
    assert_eq!(seen, (0..8).collect::<Vec<_>>());
    for (x, &y) in f.iter().enumerate() {
        assert_eq!(b.order_of(y) % a.order_of(x), 0);
    }
}

#[test]
fn coarse_targets() {
    assert_eq!(target_of(&g("D8")).to_string(), "C4xC2");
    assert_eq!(target_of(&g("Q8")).to_string(), "Q8");
    assert_eq!(target_of(&g("C12")).to_string(), "C12");
    assert_eq!(target_of(&g("A4")).to_string(), "C6xC2");
    assert_eq!(target_of(&g("C3xQ8")).to_string(), "Q8xC3");
}

#[test]
fn refined_targets() {
    let lim = Limits::default();
    let t = refined_target_of(&g("C3xC3"), &lim).unwrap();
    assert_eq!(t.label, "C3xC3");
    assert_eq!(t.branches, vec![(3, RefinedBranch::Abelian { r: 2 })]);
    let t = refined_target_of(&g("A4"), &lim).unwrap();
    assert_eq!(t.label, "C6xC2");
    assert_eq!(t.branches[0], (2, RefinedBranch::Abelian { r: 2 }));
    assert_eq!(refined_target_of(&g("C8"), &lim).unwrap().label, "C8");
    let t = refined_target_of(&g("Q8"), &lim).unwrap();
    assert_eq!(t.label, "Q8");
}

#[test]
fn metacyclic_examples() {
    let lim = Limits::default();
    for s in ["S3", "C7:C3", "D10", "C5:C4"] {
        let b = metacyclic_bijection(&g(s), &lim).unwrap();
        assert!(b.is_valid(), "{s}");
    }
    let b = metacyclic_bijection(&g("C7:C3"), &lim).unwrap();
    assert_eq!(b.target_label, "C1x(C7:C3)");
    assert_eq!(
        metacyclic_bijection(&g("C6"), &lim).unwrap_err(),
        MetacyclicRefusal::CyclicQp
    );
    assert_eq!(
        metacyclic_bijection(&g("Dic3"), &lim).unwrap_err(),
        MetacyclicRefusal::NoComplement
    );
    assert_eq!(
        metacyclic_bijection(&g("D8"), &lim).unwrap_err(),
        MetacyclicRefusal::NonCyclicSylow { p: 2 }
    );
}

#[test]
fn fmain_small_orders() {
    let lim = Limits::default();
    let groups: Vec<FiniteGroup> = [8, 12]
        .iter()
        .flat_map(|&n| crate::construct::builtin_catalog(n, &lim).unwrap().groups)
        .collect();
    let r = verify_fmain(&groups, &lim).unwrap();
    assert_eq!(r.failures, 0);
    assert_eq!(r.quaternion_exempt, vec!["Q8".to_string()]);
}
