use crate::arith;
use crate::group::{Subgroup, TwoGroupClass};
use crate::spectrum::sol_set;

use super::{
    cyclic_generators, m_invariant, params, Candidate, ClaimId, ClaimParams,
    DivisibilityReport as Row, Lab, ParamValue, Requirement,
};

pub(super) fn run(lab: &Lab<'_>, claim: ClaimId, params: &ClaimParams) -> Vec<Row> {
    match claim {
        ClaimId::Frobenius => frobenius(lab),
        ClaimId::Divv22 => divv22(lab, params),
        ClaimId::Divv2 => divv2(lab, params),
        ClaimId::Divv2222 => divv2222(lab),
        ClaimId::Frob3 => frob3(lab),
        ClaimId::Lemmm2va => lemmm_2va(lab),
        ClaimId::T22va => t22va(lab),
        ClaimId::Dis => dis(lab, params),
        ClaimId::Dec => dec(lab),
        ClaimId::Ciic => ciic(lab),
        ClaimId::Noncyc => noncyc(lab),
    }
}

fn frobenius(lab: &Lab<'_>) -> Vec<Row> {
    arith::divisors(lab.n())
        .into_iter()
        .map(|d| {
            Row::checked(
                ClaimId::Frobenius,
                lab.g,
                params! {"d" => d},
                lab.sol(d),
                Requirement::Divides(d),
            )
        })
        .collect()
}

/// Candidates for `p`, or the rows explaining why there are none.
fn candidates_for(
    lab: &Lab<'_>,
    claim: ClaimId,
    p: u64,
    params: &ClaimParams,
) -> Result<Vec<Candidate>, Vec<Row>> {
    let g = lab.g;
    let found = match &params.n {
        Some(elems) => {
            let n = g
                .subgroup_from_elements(elems)
                .map_err(|e| vec![Row::skipped(claim, g, params! {"p" => p}, &e)])?;
            if !arith::is_power_of(n.order() as u64, p) {
                return Err(Vec::new());
            }
            lab.explicit_candidate(p, &n)
        }
        None => lab.prime(p).candidates.clone(),
    };
    match found {
        Ok(c) if c.is_empty() => Err(vec![Row::not_met(
            claim,
            g,
            params! {"p" => p, "reason" => "no A-regular candidate N"},
        )]),
        Ok(c) => Ok(c),
        Err(e) => Err(vec![Row::skipped(claim, g, params! {"p" => p}, &e)]),
    }
}

fn witness(c: &Candidate) -> ParamValue {
    ParamValue::List(c.subgroup.elements().iter().map(|&x| x as u64).collect())
}

fn exp_log(lab: &Lab<'_>, p: u64) -> u32 {
    arith::log_p(lab.prime(p).sylow.group_exponent, p)
}

fn divv22(lab: &Lab<'_>, params: &ClaimParams) -> Vec<Row> {
    let mut rows = Vec::new();
    let n = lab.n();
    for p in lab.primes() {
        let cands = match candidates_for(lab, ClaimId::Divv22, p, params) {
            Ok(c) => c,
            Err(r) => {
                rows.extend(r);
                continue;
            }
        };
        let t = exp_log(lab, p);
        for c in &cands {
            let variant = if c.abelian { "abelian" } else { "dedekind" };
            for d in arith::divisors(arith::p_prime_part(n, p)) {
                for j in c.s..=t {
                    let modulus = d * p.pow(c.r + j - c.s);
                    let mut ps = params! {
                        "p" => p, "r" => c.r as u64, "s" => c.s as u64,
                        "d" => d, "j" => j as u64, "variant" => variant,
                    };
                    ps.insert("n".into(), witness(c));
                    rows.push(Row::checked(
                        ClaimId::Divv22,
                        lab.g,
                        ps,
                        lab.sol(d * p.pow(j)),
                        Requirement::Divides(modulus),
                    ));
                }
            }
        }
    }
    rows
}

fn divv2(lab: &Lab<'_>, params: &ClaimParams) -> Vec<Row> {
    let g = lab.g;
    let n = lab.n();
    let mut rows = Vec::new();
    let reps: Vec<usize> = match params.y {
        Some(y) => vec![y],
        None => g.conjugacy_classes().iter().map(|c| c[0]).collect(),
    };
    for p in lab.primes() {
        let cands = match candidates_for(lab, ClaimId::Divv2, p, params) {
            Ok(c) => c,
            Err(r) => {
                rows.extend(r);
                continue;
            }
        };
        let t = exp_log(lab, p);
        for d in arith::divisors(arith::p_prime_part(n, p)) {
            for &y in &reps {
                let oy = g.order_of(y);
                if arith::gcd(oy, d * p) != 1 {
                    continue;
                }
                let gens = cyclic_generators(g, y);
                let d_coprime = arith::coprime_part(d, oy);
                for j in 1..=t {
                    let count = sol_set(g, &gens, d * p.pow(j)).expect("valid U").len() as u64;
                    for c in cands.iter().filter(|c| c.s <= j) {
                        let modulus =
                            arith::lcm(arith::euler_phi(oy), p.pow(c.r + j - c.s) * d_coprime);
                        let mut ps = params! {
                            "p" => p, "r" => c.r as u64, "s" => c.s as u64,
                            "d" => d, "j" => j as u64, "y" => y as u64,
                        };
                        ps.insert("n".into(), witness(c));
                        rows.push(Row::checked(
                            ClaimId::Divv2,
                            g,
                            ps,
                            count,
                            Requirement::Divides(modulus),
                        ));
                    }
                }
            }
        }
    }
    rows
}

fn divv2222(lab: &Lab<'_>) -> Vec<Row> {
    let g = lab.g;
    let n = lab.n();
    let primes = lab.primes();
    let exp = lab.hist.exponent();
    let mut per_prime: Vec<Vec<Candidate>> = Vec::new();
    let mut rows = Vec::new();
    for &p in &primes {
        match &lab.prime(p).candidates {
            Ok(c) => per_prime.push(c.clone()),
            Err(e) => {
                rows.push(Row::skipped(ClaimId::Divv2222, g, params! {"p" => p}, e));
                per_prime.push(Vec::new());
            }
        }
    }
    for mask in 1u32..(1 << primes.len()) {
        let chosen: Vec<usize> = (0..primes.len()).filter(|i| mask & (1 << i) != 0).collect();
        if chosen.iter().any(|&i| per_prime[i].is_empty()) {
            continue;
        }
        let pi: Vec<u64> = chosen.iter().map(|&i| primes[i]).collect();
        let pi_part: u64 = pi.iter().map(|&p| arith::p_part(n, p)).product();
        let exp_pi: u64 = pi.iter().map(|&p| arith::p_part(exp, p)).product();
        // Every combination of one class per chosen prime.
        let mut choice = vec![0usize; chosen.len()];
        loop {
            let (mut r, mut s) = (1u64, 1u64);
            for (k, &i) in chosen.iter().enumerate() {
                let c = &per_prime[i][choice[k]];
                r *= primes[i].pow(c.r);
                s *= primes[i].pow(c.s);
            }
            for d in arith::divisors(n / pi_part) {
                for j in arith::divisors(exp_pi).into_iter().filter(|j| j % s == 0) {
                    let ps = params! {
                        "pi" => pi.clone(), "r" => r, "s" => s, "d" => d, "j" => j,
                    };
                    rows.push(Row::checked(
                        ClaimId::Divv2222,
                        g,
                        ps,
                        lab.sol(d * j),
                        Requirement::Divides(d * r * j / s),
                    ));
                }
            }
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < per_prime[chosen[k]].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    rows
}

fn frob3(lab: &Lab<'_>) -> Vec<Row> {
    let g = lab.g;
    let n = lab.n();
    let mut rows = Vec::new();
    for p in lab.primes() {
        let data = lab.prime(p);
        let alpha = data.sylow.exponent_of_n;
        for j in 1..=alpha {
            let m_sylow = m_invariant(g, &data.sylow.representative, j, p);
            for d in arith::divisors(arith::p_prime_part(n, p)) {
                rows.push(Row::checked(
                    ClaimId::Frob3,
                    g,
                    params! {"p" => p, "j" => j as u64, "d" => d, "m" => m_sylow as u64},
                    lab.sol(d * p.pow(j)),
                    Requirement::Divides(d * p.pow(m_sylow)),
                ));
            }
        }
    }
    rows
}

/// No element of the Sylow 2-subgroup has order `|P|/2`.
fn no_half_order_element(lab: &Lab<'_>) -> Option<(Subgroup, u32)> {
    if !lab.n().is_multiple_of(2) {
        return None;
    }
    let data = lab.prime(2);
    let order = data.sylow.order() as u64;
    let p = &data.sylow.representative;
    if p.elements().iter().any(|&x| 2 * lab.g.order_of(x) == order) {
        return None;
    }
    Some((p.clone(), arith::log_p(data.sylow.group_exponent, 2)))
}

fn lemmm_2va(lab: &Lab<'_>) -> Vec<Row> {
    let g = lab.g;
    let n = lab.n();
    let Some((_, t)) = no_half_order_element(lab) else {
        return vec![Row::not_met(
            ClaimId::Lemmm2va,
            g,
            params! {"p" => 2u64, "reason" => "Sylow 2-subgroup has an element of order |P|/2"},
        )];
    };
    let mut rows = Vec::new();
    for j in 1..=t {
        for d in arith::divisors(arith::p_prime_part(n, 2)) {
            rows.push(Row::checked(
                ClaimId::Lemmm2va,
                g,
                params! {"p" => 2u64, "j" => j as u64, "d" => d, "variant" => "sylow"},
                lab.sol(d << j),
                Requirement::Divides(d << (j + 1)),
            ));
        }
    }
    if n.is_power_of_two() {
        let mut j = 1;
        while (1u64 << j) <= n / 2 {
            rows.push(Row::checked(
                ClaimId::Lemmm2va,
                g,
                params! {"p" => 2u64, "j" => j as u64, "d" => 1u64, "variant" => "two-group"},
                lab.sol(1 << j),
                Requirement::Divides(1 << (j + 1)),
            ));
            j += 1;
        }
    }
    rows
}

fn t22va(lab: &Lab<'_>) -> Vec<Row> {
    let g = lab.g;
    let Some((_, t)) = no_half_order_element(lab) else {
        return vec![Row::not_met(
            ClaimId::T22va,
            g,
            params! {"p" => 2u64, "reason" => "Sylow 2-subgroup has an element of order |P|/2"},
        )];
    };
    let mut rows = Vec::new();
    for j in 1..=t {
        for d in arith::divisors(arith::p_prime_part(lab.n(), 2)) {
            rows.push(Row::checked(
                ClaimId::T22va,
                g,
                params! {"p" => 2u64, "j" => j as u64, "d" => d},
                lab.sol(d << j),
                Requirement::AtLeast(d << (j + 2)),
            ));
        }
    }
    rows
}

fn dis(lab: &Lab<'_>, params: &ClaimParams) -> Vec<Row> {
    let g = lab.g;
    let n = lab.n();
    if n == 1 {
        return Vec::new();
    }
    let p = lab.primes()[0];
    let data = lab.prime(p);
    if data.sylow.is_cyclic || data.sylow.is_generalized_quaternion {
        return vec![Row::not_met(
            ClaimId::Dis,
            g,
            params! {"p" => p, "reason" => "Sylow subgroup is cyclic or generalized quaternion"},
        )];
    }
    let t = arith::log_p(data.sylow.group_exponent, p);
    let n_pp = arith::p_prime_part(n, p);
    let (ds, variant) = if p > 2 {
        (arith::divisors(n_pp), "stated")
    } else if params.dis_all_d {
        (arith::divisors(n_pp), "all-d")
    } else {
        (vec![n_pp], "stated")
    };
    let mut rows = Vec::new();
    for m in 1..=t {
        for &d in &ds {
            let pm = p.pow(m);
            rows.push(Row::checked(
                ClaimId::Dis,
                g,
                params! {"p" => p, "m" => m as u64, "d" => d, "variant" => variant},
                lab.sol(d * pm),
                Requirement::AtLeast(d * pm * p),
            ));
        }
    }
    rows
}

fn dec(lab: &Lab<'_>) -> Vec<Row> {
    let g = lab.g;
    let n = lab.n();
    if !n.is_multiple_of(2) || !lab.prime(2).sylow.is_generalized_quaternion {
        return vec![Row::not_met(
            ClaimId::Dec,
            g,
            params! {"p" => 2u64, "reason" => "Sylow 2-subgroup is not generalized quaternion"},
        )];
    }
    let nilpotency = g.is_p_nilpotent(2).holds;
    arith::divisors(arith::p_prime_part(n, 2))
        .into_iter()
        .map(|d| {
            let count = lab.sol(2 * d);
            let ps = params! {"p" => 2u64, "d" => d, "sol" => count};
            if count != 2 * d {
                Row::not_met(ClaimId::Dec, g, ps)
            } else {
                Row::checked(
                    ClaimId::Dec,
                    g,
                    ps,
                    nilpotency as u64,
                    Requirement::Holds("normal 2-complement".into()),
                )
            }
        })
        .collect()
}

fn ciic(lab: &Lab<'_>) -> Vec<Row> {
    let g = lab.g;
    let n = lab.n();
    let mut rows = Vec::new();
    for e in arith::divisors(n) {
        if lab.sol(e) != e {
            continue;
        }
        for p in arith::prime_divisors(arith::gcd(e, n / e)) {
            let data = lab.prime(p);
            let class = if p == 2 {
                g.induced_group(&data.sylow.representative, "P")
                    .two_group_class()
            } else if data.sylow.is_cyclic {
                TwoGroupClass::Cyclic
            } else {
                TwoGroupClass::Other
            };
            let ok = matches!(
                class,
                TwoGroupClass::Cyclic
                    | TwoGroupClass::GeneralizedQuaternion
                    | TwoGroupClass::Dihedral
                    | TwoGroupClass::Semidihedral
            );
            let shape = if p == 2 {
                class.to_string()
            } else if ok {
                "cyclic".into()
            } else {
                "non-cyclic".into()
            };
            rows.push(Row::checked(
                ClaimId::Ciic,
                g,
                params! {"e" => e, "p" => p, "sylow" => shape.as_str()},
                ok as u64,
                Requirement::Holds(
                    "Sylow subgroup cyclic, generalized quaternion, dihedral or semidihedral"
                        .into(),
                ),
            ));
        }
    }
    rows
}

fn noncyc(lab: &Lab<'_>) -> Vec<Row> {
    let g = lab.g;
    let mut rows = Vec::new();
    for p in lab.primes() {
        let data = lab.prime(p);
        if p == 2 || data.sylow.is_cyclic {
            rows.push(Row::not_met(
                ClaimId::Noncyc,
                g,
                params! {"p" => p, "reason" => "p = 2 or cyclic Sylow subgroup"},
            ));
            continue;
        }
        rows.push(Row::checked(
            ClaimId::Noncyc,
            g,
            params! {"p" => p},
            data.sylow.max_elementary_abelian_rank as u64,
            Requirement::AtLeast(2),
        ));
    }
    rows
}
