use grouplab::bijection::order_matching;
use grouplab::construct::{build, builtin_specs, GroupSpec};
use grouplab::spectrum::{psi_subset, sol_set, OrderFunction, OrderHistogram};
use grouplab::FiniteGroup;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn specs_up_to(max: u64) -> Vec<GroupSpec> {
    (1..=max).flat_map(builtin_specs).collect()
}

fn any_group(max: u64) -> impl Strategy<Value = FiniteGroup> {
    prop::sample::select(specs_up_to(max)).prop_map(|s| build(&s).unwrap())
}

fn power(g: &FiniteGroup, x: usize, k: u64) -> usize {
    (0..k).fold(0, |acc, _| g.mul(acc, x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tables_are_latin_squares_with_identity_zero(g in any_group(40)) {
        let n = g.order();
        for a in 0..n {
            prop_assert_eq!(g.mul(0, a), a);
            prop_assert_eq!(g.mul(a, 0), a);
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[g.mul(a, b)] = true;
                col[g.mul(b, a)] = true;
            }
            prop_assert!(row.iter().all(|&x| x) && col.iter().all(|&x| x));
            prop_assert_eq!(n as u64 % g.order_of(a), 0);
        }
    }

    #[test]
    fn class_size_times_centralizer_is_order(g in any_group(40)) {
        let n = g.order();
        for class in g.conjugacy_classes() {
            prop_assert_eq!(class.len() * g.centralizer(class[0]).order(), n);
        }
    }

    #[test]
    fn histogram_counts_match_solution_sets(g in any_group(40)) {
        let h = OrderHistogram::of_group(&g);
        let n = g.order() as u64;
        for d in 1..=n {
            let brute = g.elements().filter(|&x| power(&g, x, d) == 0).count() as u64;
            prop_assert_eq!(h.sol_count(d), brute);
            prop_assert_eq!(sol_set(&g, &[0], d).unwrap().len() as u64, brute);
        }
    }

    #[test]
    fn product_histogram_is_lcm_convolution(
        a in prop::sample::select(specs_up_to(8)),
        b in prop::sample::select(specs_up_to(8)),
    ) {
        let product = build(&GroupSpec::direct(a.clone(), b.clone())).unwrap();
        let (ga, gb) = (build(&a).unwrap(), build(&b).unwrap());
        prop_assert_eq!(
            OrderHistogram::of_group(&product),
            OrderHistogram::of_group(&ga).direct_product(&OrderHistogram::of_group(&gb))
        );
    }

    #[test]
    fn subset_sums_match_brute_force(
        orders in prop::collection::vec(1u64..=12, 1..=8),
        l in 1u32..=4,
        f in prop::sample::select(vec![
            OrderFunction::Identity,
            OrderFunction::Power(2),
            OrderFunction::Reciprocal,
        ]),
    ) {
        prop_assume!(l as usize <= orders.len());
        let h: OrderHistogram = orders.iter().map(|&o| (o, 1)).collect();
        let mut brute = BigRational::zero();
        for mask in 0u32..(1 << orders.len()) {
            if mask.count_ones() == l {
                let mut prod = BigRational::from_integer(1.into());
                for (i, &o) in orders.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        prod *= f.apply(o);
                    }
                }
                brute += prod;
            }
        }
        prop_assert_eq!(psi_subset(&h, f, l).unwrap().value, brute);
    }

    #[test]
    fn construction_is_deterministic(s in prop::sample::select(specs_up_to(40))) {
        prop_assert_eq!(build(&s).unwrap().table_bytes(), build(&s).unwrap().table_bytes());
    }

    #[test]
    fn quotient_orders_divide(g in any_group(32)) {
        let z = g.center();
        let q = g.quotient(&z).unwrap();
        for x in g.elements() {
            prop_assert_eq!(g.order_of(x) % q.group.order_of(q.projection[x]), 0);
        }
    }
}

#[test]
fn order_divisibility_is_transitive() {
    for n in 1..=24 {
        let hists: Vec<OrderHistogram> = builtin_specs(n)
            .iter()
            .map(|s| OrderHistogram::of_group(&build(s).unwrap()))
            .collect();
        let feasible =
            |a: &OrderHistogram, b: &OrderHistogram| order_matching(a, b).unwrap().is_feasible();
        for a in &hists {
            for b in &hists {
                for c in &hists {
                    if feasible(a, b) && feasible(b, c) {
                        assert!(feasible(a, c), "order {n}");
                    }
                }
            }
        }
    }
}

#[test]
fn p_nilpotency_matches_normal_subgroup_search() {
    let limits = grouplab::Limits::default();
    for n in 1..16 {
        for s in builtin_specs(n) {
            let g = build(&s).unwrap();
            let lattice = g.subgroups(&limits).unwrap();
            for p in grouplab::arith::prime_divisors(n) {
                let k = grouplab::arith::p_prime_part(n, p) as usize;
                let oracle = lattice.normal().any(|h| h.order() == k);
                assert_eq!(g.is_p_nilpotent(p).holds, oracle, "{} p={p}", g.label());
            }
        }
    }
}

#[test]
fn dedekind_families() {
    for m in [1u64, 3, 5, 7, 15] {
        let g = build(&GroupSpec::parse(&format!("C{m}xQ8")).unwrap()).unwrap();
        assert!(g.classify().is_dedekind, "C{m}xQ8");
    }
    assert!(
        !build(&GroupSpec::parse("D8").unwrap())
            .unwrap()
            .classify()
            .is_dedekind
    );
}
