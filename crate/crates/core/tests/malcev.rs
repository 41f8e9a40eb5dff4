//! Finite completion plus associativity up to the cap forces an injective
//! completion map; the punctured-plane grids show the converse failure.

mod common;

use std::collections::BTreeSet;

use common::load;
use locgpd::assoc::assoc_order;
use locgpd::groupoid::{cyclic, inv_domain, mult_domain, pair_restriction, restrict};
use locgpd::words::{ac_build, equivalent, AcLimits, AcOutcome};
use locgpd::{Bounds, FiniteLocalGroupoid, Word};
use proptest::prelude::*;

const ORDER_CAP: usize = 6;

/// `Some(injective)` when the premise holds, `None` otherwise.
fn malcev(g: &FiniteLocalGroupoid) -> Option<bool> {
    let AcOutcome::Finite(ac) = ac_build(g, AcLimits::default()).ok()?.outcome else {
        return None;
    };
    if !assoc_order(g, ORDER_CAP).ok()?.passed() {
        return None;
    }
    Some(ac.is_injective())
}

fn graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=5).prop_flat_map(|n| {
        let all: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let m = all.len();
        (Just(n), proptest::sample::subsequence(all, 0..=m))
    })
}

/// Drops plain pairs (neither unit-adjacent nor inverse) from `ℤ/n`.
fn thinned_cyclic(n: usize, drop: &[usize]) -> Option<FiniteLocalGroupoid> {
    let g = cyclic(n).unwrap();
    let plain: Vec<_> = mult_domain(&g)
        .into_iter()
        .filter(|&(a, b)| !g.is_unit_adjacent(a, b) && g.inv(a) != Some(b))
        .collect();
    if plain.is_empty() {
        return Some(g);
    }
    let gone: BTreeSet<_> = drop.iter().map(|&i| plain[i % plain.len()]).collect();
    let keep = mult_domain(&g)
        .into_iter()
        .filter(|p| !gone.contains(p))
        .collect();
    restrict(&g, &keep, &inv_domain(&g)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pair_restrictions((n, edges) in graph()) {
        let g = pair_restriction(n, &edges).unwrap();
        if let Some(inj) = malcev(&g) {
            prop_assert!(inj);
        }
    }

    #[test]
    fn thinned_cyclic_groups(n in 1usize..=6, drop in proptest::collection::vec(any::<usize>(), 0..6)) {
        if let Some(g) = thinned_cyclic(n, &drop) {
            if let Some(inj) = malcev(&g) {
                prop_assert!(inj);
            }
        }
    }
}

#[test]
fn premise_is_not_vacuous() {
    let mut held = 0;
    for n in 1..=6 {
        held += usize::from(malcev(&cyclic(n).unwrap()) == Some(true));
    }
    held +=
        usize::from(malcev(&pair_restriction(4, &[(0, 1), (1, 2), (1, 3)]).unwrap()) == Some(true));
    assert_eq!(held, 7);
}

#[test]
fn punctured_plane_grids_collapse_distinct_arrows() {
    for name in ["cover_grid", "cover_grid_symmetric"] {
        let g = load(name);
        assert!(!assoc_order(&g, 3).unwrap().passed(), "{name}");
        let left = g.find_arrow("(+1.2,+0.0)@0").unwrap();
        let right = g.find_arrow("(+1.2,+0.0)@1").unwrap();
        let v = equivalent(
            &Word::single(left),
            &Word::single(right),
            &g,
            Bounds {
                max_len: 4,
                max_steps: 200_000,
            },
        )
        .unwrap();
        let t = v.trace().expect("the two bracketings are joined by moves");
        assert_eq!(t.replay(&g).unwrap(), Word::single(right));
    }
}
