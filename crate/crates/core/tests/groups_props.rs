use abcover::{enumerate_groups, FiniteAbelianGroup};
use proptest::prelude::*;

fn partitions(n: u32) -> u64 {
    // p(n) by the standard coin recurrence
    let mut p = vec![0u64; n as usize + 1];
    p[0] = 1;
    for part in 1..=n as usize {
        for total in part..=n as usize {
            p[total] += p[total - part];
        }
    }
    p[n as usize]
}

fn expected_count(mut d: u32) -> u64 {
    let mut count = 1;
    let mut p = 2;
    while d > 1 {
        let mut e = 0;
        while d.is_multiple_of(p) {
            d /= p;
            e += 1;
        }
        if e > 0 {
            count *= partitions(e);
        }
        p += 1;
    }
    count
}

#[test]
fn group_counts_match_partition_products() {
    for d in 2..=64 {
        let groups = enumerate_groups(d).unwrap();
        assert_eq!(groups.len() as u64, expected_count(d), "d = {d}");
        for g in &groups {
            assert_eq!(g.order(), d as usize);
            let f = g.invariant_factors();
            assert!(f.windows(2).all(|w| w[1] % w[0] == 0), "{g}");
            assert!(f.iter().all(|&n| n > 1));
        }
        let mut names: Vec<String> = groups.iter().map(|g| g.to_string()).collect();
        names.dedup();
        assert_eq!(names.len(), groups.len());
    }
}

#[test]
fn order_eight() {
    let names: Vec<String> = enumerate_groups(8)
        .unwrap()
        .iter()
        .map(|g| g.to_string())
        .collect();
    assert_eq!(names, ["8", "2,4", "2,2,2"]);
}

proptest! {
    #[test]
    fn normal_form_is_canonical(factors in prop::collection::vec(2u32..7, 1..4)) {
        let g = FiniteAbelianGroup::new(&factors).unwrap();
        let order: u32 = factors.iter().product();
        prop_assert_eq!(g.order(), order as usize);
        let again = FiniteAbelianGroup::new(g.invariant_factors()).unwrap();
        prop_assert_eq!(&again, &g);
        let mut shuffled = factors.clone();
        shuffled.reverse();
        prop_assert_eq!(FiniteAbelianGroup::new(&shuffled).unwrap(), g);
    }

    #[test]
    fn element_indexing_round_trips(factors in prop::collection::vec(2u32..6, 1..4)) {
        let g = FiniteAbelianGroup::new(&factors).unwrap();
        for (i, e) in g.elements().enumerate() {
            prop_assert_eq!(g.index_of(&e), i);
            prop_assert_eq!(g.element_at(i), e.clone());
            prop_assert!(g.add(&e, &g.neg(&e).unwrap()).unwrap().is_zero());
        }
    }
}
