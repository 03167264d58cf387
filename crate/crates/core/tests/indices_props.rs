use std::collections::BTreeSet;

use ffzeta_core::indices::{
    compositions, dim_lower_bound, g_inverse, g_map, independent_family, is_g_independent,
    q_admissible_partitions, GImage, Partition,
};
use ffzeta_core::Index;
use proptest::prelude::*;

/// Every set partition of {1..n}, built by inserting each element into an
/// existing block or a fresh one.
fn all_partitions(n: u32) -> Vec<Vec<Vec<u32>>> {
    let mut acc: Vec<Vec<Vec<u32>>> = vec![vec![]];
    for x in 1..=n {
        let mut next = Vec::new();
        for p in &acc {
            for i in 0..p.len() {
                let mut p2 = p.clone();
                p2[i].push(x);
                next.push(p2);
            }
            let mut p2 = p.clone();
            p2.push(vec![x]);
            next.push(p2);
        }
        acc = next;
    }
    acc
}

fn brute_admissible(w: u32, q: u32) -> BTreeSet<Vec<Vec<u32>>> {
    if w <= 1 {
        return BTreeSet::new();
    }
    all_partitions(w - 1)
        .into_iter()
        .filter(|p| p.iter().all(|b| b.iter().min().unwrap() % (q - 1) != 0))
        .map(|mut p| {
            p.sort();
            p
        })
        .collect()
}

#[test]
fn partitions_match_brute_force() {
    for q in [2u32, 3, 4, 5] {
        for w in 1..=8 {
            let got: Vec<Vec<Vec<u32>>> =
                q_admissible_partitions(w, q).map(|p| p.blocks().to_vec()).collect();
            let set: BTreeSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "duplicates at q={q} w={w}");
            assert_eq!(set, brute_admissible(w, q), "q={q} w={w}");
            for p in q_admissible_partitions(w, q) {
                assert!(p.is_q_admissible(q));
                assert!(Partition::new(p.blocks().to_vec(), w).is_ok());
            }
        }
    }
}

#[test]
fn partition_order_is_deterministic() {
    let a: Vec<_> = q_admissible_partitions(7, 3).collect();
    let b: Vec<_> = q_admissible_partitions(7, 3).collect();
    assert_eq!(a, b);
}

#[test]
fn roundtrip_through_weight_twelve() {
    for w in 1..=12 {
        for s in compositions(w) {
            assert_eq!(g_inverse(&g_map(&s), w).unwrap(), s);
        }
    }
    assert_eq!(compositions(12).len(), 1 << 11);
}

#[test]
fn partition_families_are_independent() {
    for q in [3u32, 4, 5] {
        for w in 2..=9 {
            for p in q_admissible_partitions(w, q) {
                let fam = p.family(w).unwrap();
                assert!(is_g_independent(&fam), "q={q} w={w} {p}");
                assert!(fam[1..].iter().all(|s| s.last() % (q - 1) != 0));
            }
        }
    }
}

#[test]
fn depth_two_bound_closed_form() {
    for q in [2u32, 3, 4, 5] {
        for w in 2..=30u32 {
            let thm = w as u64 - ((w as u64 - 1) / (q as u64 - 1));
            assert_eq!(dim_lower_bound(w, 2, q).unwrap().bound_1r, thm, "q={q} w={w}");
        }
    }
}

#[test]
fn named_families_are_independent() {
    // depth ≤ 2 family: (w) and (w − s_2, s_2) with (q−1) ∤ s_2
    for q in [2u32, 3, 5] {
        for w in 1..=12u32 {
            let mut fam = vec![Index::new(vec![w]).unwrap()];
            for s2 in (1..w).filter(|s| s % (q - 1) != 0) {
                fam.push(Index::new(vec![w - s2, s2]).unwrap());
            }
            assert!(is_g_independent(&fam));
        }
    }
}

proptest! {
    #[test]
    fn g_inverse_roundtrip(w in 2u32..40, mask in any::<u64>()) {
        let elems: BTreeSet<u32> = (1..w).filter(|x| mask >> (x % 64) & 1 == 1).collect();
        prop_assume!(!elems.is_empty());
        let t = GImage::new(elems, w).unwrap();
        let s = g_inverse(&t, w).unwrap();
        prop_assert_eq!(s.weight(), w);
        prop_assert_eq!(g_map(&s), t);
    }

    #[test]
    fn families_are_independent_with_size_bound(w in 1u32..60, r in 2u32..6, q in 2u32..10) {
        let fam = independent_family(w, r, q).unwrap();
        prop_assert!(is_g_independent(&fam));
        prop_assert_eq!(fam.len() as u64, dim_lower_bound(w, r, q).unwrap().bound_1r);
        for s in &fam[1..] {
            prop_assert_eq!(s.depth() as u32, r);
            prop_assert_eq!(s.weight(), w);
            prop_assert!(s.last() % (q - 1) != 0);
        }
    }
}
