use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sr2::models::SemiringName;
use sr2::variety::{self, closure_of_blocks, GeneratorSet, MembershipOracle};

#[test]
fn membership_table_matches_golden() {
    let golden = include_str!("golden/membership.tsv");
    assert_eq!(variety::membership_table(), golden);
}

/// Closure by repeated saturation under both operations, with no ordering tricks.
fn naive_closure(blocks: &[SemiringName]) -> HashSet<u128> {
    let c = closure_of_blocks(blocks, 2);
    let mut set: HashSet<u128> = [c.generator(0), c.generator(1)].into_iter().collect();
    loop {
        let items: Vec<u128> = set.iter().copied().collect();
        let before = set.len();
        for &a in &items {
            for &b in &items {
                set.insert(c.add(a, b));
                set.insert(c.mul(a, b));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

#[test]
fn staged_closure_equals_naive_saturation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases: Vec<Vec<SemiringName>> = SemiringName::ALL.iter().map(|&s| vec![s]).collect();
    for _ in 0..12 {
        let mask: u16 = rng.gen_range(1..1024);
        cases.push(GeneratorSet::from_mask(mask).unwrap().iter().collect());
    }
    for blocks in cases {
        let fast: HashSet<u128> = closure_of_blocks(&blocks, 2).elements.into_iter().collect();
        assert_eq!(fast, naive_closure(&blocks), "blocks {blocks:?}");
    }
}

#[test]
fn three_generators_agree_with_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut yes = 0;
    for _ in 0..200 {
        let a = SemiringName::ALL[rng.gen_range(0..10)];
        // Small generator sets keep the 3-generated closure inside 128 bits.
        let t: GeneratorSet = SemiringName::ALL.iter().copied().filter(|_| rng.gen_bool(0.25)).take(3).collect();
        if t.is_empty() {
            continue;
        }
        let two = variety::is_member_with_arity(a, t, 2);
        assert_eq!(two, variety::is_member_with_arity(a, t, 3), "{a} in HSP({t})");
        yes += usize::from(two);
    }
    assert!(yes > 0);
}

#[test]
fn oracle_agrees_with_direct_test() {
    let oracle = MembershipOracle::global();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let t = GeneratorSet::from_mask(rng.gen_range(1..1024)).unwrap();
        let a = SemiringName::ALL[rng.gen_range(0..10)];
        assert_eq!(oracle.is_member(a, t), variety::is_member(a, t), "{a} in HSP({t})");
    }
}

#[test]
fn separating_identities_separate() {
    let oracle = MembershipOracle::global();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 15 {
        let t = GeneratorSet::from_mask(rng.gen_range(1..1024)).unwrap();
        let a = SemiringName::ALL[rng.gen_range(0..10)];
        if oracle.is_member(a, t) {
            continue;
        }
        let (id, _) = variety::find_separating_identity(a, t).expect("witness within the grid");
        for s in t.iter() {
            assert!(sr2::models::satisfies(s.table(), &id).unwrap(), "{id} fails in {s}");
        }
        assert!(!sr2::models::satisfies(a.table(), &id).unwrap(), "{id} holds in {a}");
        checked += 1;
    }
}
