//! The nine acceptance criteria, each with an independent oracle where the
//! library's own answer could be wrong. One PASS/FAIL line per criterion;
//! run with `--nocapture` to see them.

use std::time::{Duration, Instant};

use grouplab::arith;
use grouplab::bijection::{cl_member, metacyclic_bijection, verify_fmain};
use grouplab::construct::{build, builtin_catalog, builtin_specs, GroupSpec};
use grouplab::divisibility::{
    check_claim, m_invariant, sweep, ClaimId, ClaimParams, Requirement, Verdict,
};
use grouplab::psi_rank::{rank_tiers, verify_bounds, verify_main5, verify_recursion, CheckStatus};
use grouplab::spectrum::{psi_subset, OrderFunction, OrderHistogram};
use grouplab::{FiniteGroup, Limits};

/// Criteria expected to fail, with the reason. Each is analysed in the
/// project notes; the check itself is not weakened.
const KNOWN_FAILING: &[(u32, &str)] = &[(4, "t22va is false at j = 1 (C4xC4: |Sol(1,2)| = 4 < 8)")];

struct Outcome {
    passed: bool,
    detail: String,
}

fn g(s: &str) -> FiniteGroup {
    build(&GroupSpec::parse(s).unwrap()).unwrap()
}

fn all_builtins(max: u64) -> Vec<FiniteGroup> {
    (1..=max)
        .flat_map(|n| builtin_catalog(n, &Limits::default()).unwrap().groups)
        .collect()
}

fn within(t: Instant, limit_secs: u64) -> (bool, Duration) {
    let e = t.elapsed();
    (e <= Duration::from_secs(limit_secs), e)
}

/// Sum over 2-subsets of `o(x) o(y)`, by pairs of elements.
fn pair_sum(g: &FiniteGroup) -> u64 {
    let o = g.element_orders();
    let mut s = 0;
    for i in 0..o.len() {
        for j in i + 1..o.len() {
            s += o[i] * o[j];
        }
    }
    s
}

fn c1_psi_pairs() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, want) in [("C6", 173u64), ("C3", 15), ("C2", 2)] {
        let grp = g(label);
        let v = psi_subset(&OrderHistogram::of_group(&grp), OrderFunction::Identity, 2)
            .unwrap()
            .as_integer()
            .unwrap();
        ok &= v == want.into() && pair_sum(&grp) == want;
        parts.push(format!("{label}={v}"));
    }
    let (fast, e) = within(t, 1);
    Outcome {
        passed: ok && fast,
        detail: format!("{} in {e:?}", parts.join(" ")),
    }
}

fn c2_quaternion_obstruction() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [1u64, 3, 5] {
        let src = g(&format!("C{m}xQ8"));
        let tgt = g(&format!("C{}xC2", 4 * m));
        let cert = cl_member(&src, &tgt).unwrap();
        let violator = cert.violator.clone().unwrap_or_default();
        // Hall oracle: elements whose order lies in the violator outnumber
        // the targets divisible by some member of it.
        let (hs, ht) = (
            OrderHistogram::of_group(&src),
            OrderHistogram::of_group(&tgt),
        );
        let need: u64 = violator.iter().map(|&d| hs.count(d)).sum();
        let pool: u64 = ht
            .entries()
            .iter()
            .filter(|(&e, _)| violator.iter().any(|&d| e % d == 0))
            .map(|(_, &c)| c)
            .sum();
        let covers = arith::divisors(m)
            .iter()
            .all(|d| violator.contains(&(4 * d)));
        ok &= !cert.is_feasible() && covers && need > pool && cert.deficiency == Some(need - pool);
        if m == 1 {
            ok &= cert.deficiency == Some(2);
        }
        parts.push(format!(
            "m={m} violator={violator:?} deficiency={:?}",
            cert.deficiency
        ));
    }
    let (fast, e) = within(t, 1);
    Outcome {
        passed: ok && fast,
        detail: format!("{} in {e:?}", parts.join("; ")),
    }
}

fn c3_fmain_sweep() -> Outcome {
    let t = Instant::now();
    let groups = all_builtins(15);
    let report = verify_fmain(&groups, &Limits::default()).unwrap();
    let (fast, e) = within(t, 10);
    Outcome {
        passed: report.failures == 0 && fast,
        detail: format!(
            "{} groups, {} rows, {} failures in {e:?}",
            groups.len(),
            report.rows.len(),
            report.failures
        ),
    }
}

fn c4_divisibility_sweep() -> Outcome {
    let t = Instant::now();
    let limits = Limits::default();
    let groups = all_builtins(64);
    let claims = [
        ClaimId::Frobenius,
        ClaimId::Divv22,
        ClaimId::Divv2222,
        ClaimId::Frob3,
        ClaimId::Lemmm2va,
        ClaimId::T22va,
        ClaimId::Dis,
    ];
    let rows = sweep(&groups, &claims, &ClaimParams::default(), &limits);
    let mut fails: Vec<String> = Vec::new();
    let mut checked = 0;
    for r in &rows {
        if r.hypothesis_met {
            checked += 1;
        }
        if r.verdict == Verdict::Fail {
            fails.push(format!(
                "{} {} {}",
                r.claim,
                r.group_label,
                r.params_string()
            ));
        }
    }

    let anchored = |label: &str, want: u64| {
        check_claim(ClaimId::Divv22, &g(label), &ClaimParams::default(), &limits)
            .unwrap()
            .iter()
            .any(|r| {
                r.verdict == Verdict::Pass
                    && r.observed == Some(want)
                    && r.required == Some(Requirement::Divides(want))
            })
    };
    let anchors = anchored("A4", 12)
        && anchored("C3xC3", 9)
        && m_invariant(&g("Q8"), &g("Q8").whole(), 1, 2) == 1
        && m_invariant(&g("D8"), &g("D8").whole(), 1, 2) == 1;
    let (fast, e) = within(t, 60);
    Outcome {
        passed: fails.is_empty() && anchors && fast,
        detail: format!(
            "{} groups, {checked} hypothesis-met instances, {} failures, anchors {}, in {e:?}{}",
            groups.len(),
            fails.len(),
            if anchors { "ok" } else { "WRONG" },
            if fails.is_empty() {
                String::new()
            } else {
                format!(": {}", fails.join(" | "))
            }
        ),
    }
}

fn c5_tiers() -> Outcome {
    let t = Instant::now();
    let limits = Limits::default();
    let mut ok = true;
    let mut parts = Vec::new();
    let expected: [(u64, [(&str, u64); 3]); 2] = [
        (8, [("Q8", 27), ("C4xC2", 23), ("D8", 19)]),
        (12, [("C6xC2", 49), ("Dic3", 45), ("D12", 33)]),
    ];
    for (n, want) in expected {
        let cat = builtin_catalog(n, &limits).unwrap();
        // Oracle: ψ by repeated multiplication, ranked by hand.
        let mut brute: Vec<(u64, String)> = cat
            .groups
            .iter()
            .filter(|h| !h.is_cyclic())
            .map(|h| {
                let psi = h
                    .elements()
                    .map(|x| {
                        let mut k = 1;
                        let mut y = x;
                        while y != 0 {
                            y = h.mul(y, x);
                            k += 1;
                        }
                        k
                    })
                    .sum();
                (psi, h.label().to_string())
            })
            .collect();
        brute.sort_by(|a, b| b.cmp(a));
        let tiers = rank_tiers(&cat, 3, false).unwrap();
        for (i, (label, psi)) in want.iter().enumerate() {
            ok &= tiers[i].members == vec![label.to_string()]
                && tiers[i].psi == (*psi).into()
                && brute[i] == (*psi, label.to_string());
        }
        let main5 = verify_main5(&cat, false).unwrap();
        ok &= main5.failures() == 0 && main5.count(CheckStatus::Pass) > 0;
        parts.push(format!(
            "n={n} [{}]",
            tiers
                .iter()
                .map(|t| format!("{}:{}", t.members.join("/"), t.psi))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    let (fast, e) = within(t, 5);
    Outcome {
        passed: ok && fast,
        detail: format!("{} main5 ok, in {e:?}", parts.join(" ")),
    }
}

fn c6_recursion() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    let mut fails = 0;
    for n in 2..=64u64 {
        if arith::prime_power_base(n).is_none() {
            continue;
        }
        for s in builtin_specs(n) {
            let r = verify_recursion(&build(&s).unwrap(), &[1, 2, 3]).unwrap();
            checked += r
                .rows_for("omega-one-recursion")
                .filter(|x| x.status == CheckStatus::Pass)
                .count();
            fails += r.failures();
        }
    }
    let c2 = verify_recursion(&g("C2"), &[1]).unwrap();
    let flagged = c2
        .rows_for("closed-form-as-written")
        .any(|r| r.status == CheckStatus::Flagged && r.detail.contains("bracket 5/2 vs psi(C2) 3"));
    let (fast, e) = within(t, 10);
    Outcome {
        passed: fails == 0 && checked > 0 && flagged && fast,
        detail: format!(
            "{checked} recursion instances, {fails} failures, closed form flagged: {flagged}, in {e:?}"
        ),
    }
}

/// Perfect matching by subset DP over target elements.
fn brute_bijection(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    let (a, b) = (g.element_orders(), h.element_orders());
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let mut reachable = vec![false; 1 << n];
    reachable[0] = true;
    for mask in 0usize..(1 << n) {
        if !reachable[mask] {
            continue;
        }
        let i = mask.count_ones() as usize;
        if i == n {
            continue;
        }
        for (j, &oj) in b.iter().enumerate() {
            if mask & (1 << j) == 0 && oj % a[i] == 0 {
                reachable[mask | (1 << j)] = true;
            }
        }
    }
    reachable[(1 << n) - 1]
}

fn c7_oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let mut pairs = 0;
    let mut mismatches = Vec::new();
    for n in 1..=10 {
        let groups = builtin_catalog(n, &Limits::default()).unwrap().groups;
        for a in &groups {
            for b in &groups {
                pairs += 1;
                let flow = cl_member(a, b).unwrap();
                let ok = flow.verify(&OrderHistogram::of_group(a), &OrderHistogram::of_group(b));
                if flow.is_feasible() != brute_bijection(a, b) || !ok {
                    mismatches.push(format!("{} -> {}", a.label(), b.label()));
                }
            }
        }
    }
    let (fast, e) = within(t, 30);
    Outcome {
        passed: mismatches.is_empty() && fast,
        detail: format!(
            "{pairs} pairs, {} mismatches {mismatches:?}, in {e:?}",
            mismatches.len()
        ),
    }
}

fn c8_bounds() -> Outcome {
    let t = Instant::now();
    let groups = all_builtins(64);
    let mut rows = 0;
    let mut fails = Vec::new();
    for grp in &groups {
        let r = verify_bounds(grp, &[1, 2, 3]).unwrap();
        rows += r.count(CheckStatus::Pass);
        for row in r.rows.iter().filter(|x| x.status == CheckStatus::Fail) {
            fails.push(row.to_string());
        }
    }
    let (fast, e) = within(t, 60);
    Outcome {
        passed: fails.is_empty() && rows > 0 && fast,
        detail: format!(
            "{} groups, {rows} passing rows, {} failures, in {e:?}",
            groups.len(),
            fails.len()
        ),
    }
}

fn c9_metacyclic() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for label in ["S3", "C7:C3"] {
        let grp = g(label);
        let m = metacyclic_bijection(&grp, &Limits::default()).unwrap();
        let mut seen = vec![false; m.target.order()];
        let mut divides = true;
        for x in grp.elements() {
            let fx = m.image[x];
            seen[fx] = true;
            divides &= m.target.order_of(fx).is_multiple_of(grp.order_of(x));
        }
        let bijective = m.image.len() == m.target.order() && seen.iter().all(|&s| s);
        ok &= bijective && divides && m.is_valid();
        parts.push(format!("{label} -> {}", m.target_label));
    }
    let (fast, e) = within(t, 1);
    Outcome {
        passed: ok && fast,
        detail: format!("{} in {e:?}", parts.join(", ")),
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        (1, "psi_{I,2} of C6, C3, C2", c1_psi_pairs),
        (2, "CmxQ8 obstruction", c2_quaternion_obstruction),
        (3, "order-divisibility target sweep", c3_fmain_sweep),
        (4, "divisibility sweep to order 64", c4_divisibility_sweep),
        (5, "psi tiers at 8 and 12", c5_tiers),
        (6, "omega-one recursion", c6_recursion),
        (7, "matching vs brute force", c7_oracle_equivalence),
        (8, "bound suite to order 64", c8_bounds),
        (9, "metacyclic bijection", c9_metacyclic),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let out = run();
        let known = KNOWN_FAILING.iter().find(|(k, _)| *k == id);
        let verdict = if out.passed { "PASS" } else { "FAIL" };
        match known {
            Some((_, why)) if !out.passed => {
                println!(
                    "criterion {id} {verdict} {name}: {} [known: {why}]",
                    out.detail
                )
            }
            _ => println!("criterion {id} {verdict} {name}: {}", out.detail),
        }
        if out.passed == known.is_some() {
            unexpected.push(id);
        }
    }
    assert!(
        unexpected.is_empty(),
        "criteria with an unexpected outcome: {unexpected:?}"
    );
}
