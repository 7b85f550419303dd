mod common;

use common::*;
use proptest::prelude::*;
use sumfree::group::GroupTable;
use sumfree::report::{emit, run, Command, Format, ReportEnvelope, RunConfig, TheoremSelector};
use sumfree::set::{
    inverse_set, is_locally_maximal, is_locally_maximal_naive, is_sum_free, product_set, sqrt_set,
    translate,
};

const DESCRIPTORS: &[&str] = &[
    "C:1",
    "C:5",
    "C:8",
    "Z:2^3",
    "Z:3^2",
    "C:2xC:6",
    "Z:2^2xC:3",
    "C:4xC:4",
    "Z:2^6",
    "C:60",
];

fn group_and_masks() -> impl Strategy<Value = (GroupTable, u64, u64)> {
    (0..DESCRIPTORS.len(), any::<u64>(), any::<u64>()).prop_map(|(i, a, b)| {
        let g: GroupTable = DESCRIPTORS[i]
            .parse::<sumfree::group::GroupSpec>()
            .unwrap()
            .build()
            .unwrap();
        let keep = if g.order() == 64 {
            u64::MAX
        } else {
            (1u64 << g.order()) - 1
        };
        (g, a & keep, b & keep)
    })
}

fn naive_product(g: &GroupTable, a: u64, b: u64) -> u64 {
    let mut out = 0;
    for x in (0..g.order()).filter(|x| a >> x & 1 == 1) {
        for y in (0..g.order()).filter(|y| b >> y & 1 == 1) {
            out |= 1 << g.op(x, y);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boolean_operations_match_masks((g, a, b) in group_and_masks()) {
        let (sa, sb) = (to_set(&g, a), to_set(&g, b));
        let full = if g.order() == 64 { u64::MAX } else { (1u64 << g.order()) - 1 };
        prop_assert_eq!(to_mask(&sa.union(&sb)), a | b);
        prop_assert_eq!(to_mask(&sa.intersection(&sb)), a & b);
        prop_assert_eq!(to_mask(&sa.difference(&sb)), a & !b);
        prop_assert_eq!(to_mask(&sa.complement()), full & !a);
        prop_assert_eq!(sa.len(), a.count_ones() as usize);
        prop_assert_eq!(sa.is_subset(&sb), a & b == a);
        prop_assert_eq!(sa.is_disjoint(&sb), a & b == 0);
        prop_assert_eq!(sa.cmp(&sb), a.cmp(&b));
        prop_assert_eq!(sa.first(), (a != 0).then(|| a.trailing_zeros() as usize));
    }

    #[test]
    fn product_sets_match_definition((g, a, b) in group_and_masks()) {
        let (sa, sb) = (to_set(&g, a), to_set(&g, b));
        prop_assert_eq!(to_mask(&product_set(&g, &sa, &sb).unwrap()), naive_product(&g, a, b));
        let inv = (0..g.order()).filter(|x| a >> x & 1 == 1).fold(0u64, |m, x| m | 1 << g.inv(x));
        prop_assert_eq!(to_mask(&inverse_set(&g, &sa).unwrap()), inv);
        let roots = (0..g.order()).filter(|&x| a >> g.op(x, x) & 1 == 1).fold(0u64, |m, x| m | 1 << x);
        prop_assert_eq!(to_mask(&sqrt_set(&g, &sa).unwrap()), roots);
        let x = (b.trailing_zeros() as usize) % g.order();
        prop_assert_eq!(to_mask(&translate(&g, x, &sa).unwrap()), naive_product(&g, 1 << x, a));
        prop_assert_eq!(is_sum_free(&g, &sa).unwrap(), mask_sum_free(&g, a));
    }

    #[test]
    fn local_maximality_agrees_on_sum_free_sets((g, a, _b) in group_and_masks()) {
        // thin the random mask greedily into a sum-free set
        let mut m = 0u64;
        for x in (0..g.order()).filter(|x| a >> x & 1 == 1) {
            if mask_sum_free(&g, m | 1 << x) {
                m |= 1 << x;
            }
        }
        prop_assume!(m != 0);
        let s = to_set(&g, m);
        let criterion = is_locally_maximal(&g, &s).unwrap();
        prop_assert_eq!(criterion, is_locally_maximal_naive(&g, &s).unwrap());
        prop_assert_eq!(criterion, mask_locally_maximal(&g, m));
    }

    #[test]
    fn group_axioms_hold((g, a, b) in group_and_masks()) {
        let n = g.order();
        let (x, y, z) = (a as usize % n, b as usize % n, (a ^ b) as usize % n);
        prop_assert_eq!(g.op(g.op(x, y), z), g.op(x, g.op(y, z)));
        prop_assert_eq!(g.op(x, g.inv(x)), g.identity());
        prop_assert_eq!(g.op(x, y), g.op(y, x));
        prop_assert_eq!(g.op(g.identity(), x), x);
    }
}

fn config_strategy() -> impl Strategy<Value = RunConfig> {
    let groups = prop::sample::subsequence(
        vec!["C:2", "C:4", "Z:2^2", "Z:3^2", "C:5", "C:2xC:3", "Z:2^3"],
        1..3,
    );
    let theorem = prop::sample::select(vec![
        TheoremSelector::P2,
        TheoremSelector::P3,
        TheoremSelector::C4,
        TheoremSelector::Counts,
        TheoremSelector::N1,
        TheoremSelector::All,
    ]);
    let command = prop::sample::select(vec![Command::Analyze, Command::Enumerate, Command::Verify]);
    (
        command,
        groups,
        theorem,
        any::<bool>(),
        prop::option::of(1u64..2000),
    )
        .prop_map(|(command, groups, theorem, lm, max_nodes)| {
            let mut c = RunConfig::new(command).theorem(theorem);
            c.groups = groups.into_iter().map(String::from).collect();
            c.locally_maximal = lm;
            c.max_nodes = max_nodes;
            c
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn json_reports_round_trip(config in config_strategy()) {
        let env = run(&config).unwrap();
        let json = emit(&env, Format::Json).unwrap();
        let back: ReportEnvelope = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &env);
        prop_assert_eq!(emit(&back, Format::Json).unwrap(), json);
    }

    #[test]
    fn exit_code_agrees_with_verdicts(config in config_strategy()) {
        let env = run(&config).unwrap();
        let failed = env.results.iter().any(|r| !r.errors.is_empty()) || env.truncated;
        let all_true = env.verdicts().all(|v| v.overall);
        let expected = if failed { 2 } else if all_true { 0 } else { 1 };
        prop_assert_eq!(env.exit_code, expected);
        prop_assert_eq!(env.verified, env.exit_code == 0);
        prop_assert!(env.verdicts().all(|v| v.is_consistent()));
        if env.truncated {
            prop_assert!(!env.verified);
        }
    }
}
