use num_bigint::BigInt;
use proptest::prelude::*;

use arbordyn_core::exactalg::Rational;
use arbordyn_core::wreath::{
    brute_force_tower, full_cycle_proportion, obstruction_all_towers, parity_necessary, realizable_in_tower,
    CycleType, GroupDescriptor, ParityOutcome, Tower,
};

fn agl_tower(max_degree: u64) -> impl Strategy<Value = Tower> {
    prop::collection::vec(prop::sample::select(vec![2u64, 3, 5, 7]), 1..=3)
        .prop_filter("degree bound", move |ps| ps.iter().product::<u64>() <= max_degree)
        .prop_map(|ps| Tower::agl1(&ps))
}

/// A random partition of `n`, built by cutting off parts.
fn partition_of(n: u64, cuts: &[u64]) -> CycleType {
    let mut rest = n;
    let mut parts = Vec::new();
    for &c in cuts {
        if rest == 0 {
            break;
        }
        let part = 1 + c % rest;
        parts.push(part);
        rest -= part;
    }
    if rest > 0 {
        parts.push(rest);
    }
    CycleType::new(parts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn agl_tower_full_cycles_are_reciprocal_degree(tower in agl_tower(400)) {
        let expected = Rational::new(BigInt::from(1), BigInt::from(tower.degree()));
        prop_assert_eq!(full_cycle_proportion(&tower).unwrap(), expected);
    }

    #[test]
    fn realizability_witnesses_flatten(tower in agl_tower(60), cuts in prop::collection::vec(0u64..1000, 0..12)) {
        let tau = partition_of(tower.degree(), &cuts);
        if let Some(tree) = realizable_in_tower(&tau, &tower).unwrap() {
            prop_assert_eq!(tree.flatten(), tau);
            prop_assert!(tree.is_valid_for(&tower));
        }
    }

    #[test]
    fn parity_failure_blocks_every_tower(n in 4u64..=60, q in prop::sample::select(vec![3u64, 5, 7, 9]), k in 0u64..20) {
        prop_assume!(n % q != 0 && k * q <= n);
        let mut parts = vec![q; k as usize];
        parts.extend(std::iter::repeat_n(1, (n - k * q) as usize));
        let tau = CycleType::new(parts).unwrap();
        if parity_necessary(&tau, n, q) == ParityOutcome::Fail {
            prop_assert!(obstruction_all_towers(&tau, n).unwrap());
        }
    }

    #[test]
    fn cycle_type_text_round_trip(cuts in prop::collection::vec(0u64..50, 0..10), n in 1u64..40) {
        let tau = partition_of(n, &cuts);
        prop_assert_eq!(tau.to_string().parse::<CycleType>().unwrap(), tau);
    }
}

/// `|G ≀ H| = |G| · |H|^{deg G}` and every enumerated type has the full degree.
#[test]
fn brute_force_counts_the_whole_group() {
    for text in ["S3,C2", "C2,S3", "Hol(4),C3", "AGL1(3),AGL1(2),C2"] {
        let tower: Tower = text.parse().unwrap();
        let counts = brute_force_tower(&tower).unwrap();
        let total: u64 = counts.iter().map(|(_, c)| c).sum();
        let mut order = 1u64;
        for g in tower.members().iter().rev() {
            order = g.order().unwrap() * order.pow(g.degree() as u32);
        }
        assert_eq!(total, order, "{text}");
        assert!(counts.iter().all(|(t, _)| t.degree() == tower.degree()));
    }
}

#[test]
fn explicit_generators_match_named_groups() {
    let s3 = GroupDescriptor::Explicit { degree: 3, generators: vec![vec![1, 2, 0], vec![1, 0, 2]] };
    let named: Tower = "S3,C2".parse().unwrap();
    let explicit = Tower(vec![s3, GroupDescriptor::Cyclic { n: 2 }]);
    assert_eq!(brute_force_tower(&named).unwrap(), brute_force_tower(&explicit).unwrap());
    assert_eq!(full_cycle_proportion(&named).unwrap(), full_cycle_proportion(&explicit).unwrap());
}

#[test]
fn invalid_inputs() {
    assert!("S9".parse::<GroupDescriptor>().is_err());
    assert!("AGL1(4)".parse::<GroupDescriptor>().is_err());
    assert!("0,3".parse::<CycleType>().is_err());
    let tower = Tower::agl1(&[3]);
    assert!(realizable_in_tower(&CycleType::full_cycle(4), &tower).is_err());
}
