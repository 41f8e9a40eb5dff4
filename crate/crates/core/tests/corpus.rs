mod common;

use common::{corpus, desk, is_total, load};
use locgpd::groupoid::validate;
use locgpd::homotopy::{chain_h1, pi1_presentation};
use locgpd::intmat::AbelianInvariants;
use locgpd::io::{from_json, to_json};
use locgpd::nerve::{build_nerve, check_simplicial_identities, horn_check};
use locgpd::words::{ac_build, AcError, AcLimits, AcOutcome};

#[test]
fn data_files_match_builtins() {
    for (name, g) in desk() {
        assert_eq!(to_json(&load(name)), to_json(&g), "{name}");
    }
}

#[test]
fn corpus_validates_and_round_trips() {
    for (name, g) in corpus() {
        let r = validate(&g);
        assert!(r.passed(), "{name}: {:?}", r.failed_axioms());
        let back = from_json(&to_json(&g)).unwrap();
        assert_eq!(to_json(&back), to_json(&g), "{name}");
    }
}

#[test]
fn kan_exactly_for_total_tables() {
    for (name, g) in corpus() {
        if is_total(&g) {
            let x = build_nerve(&g, 3).unwrap();
            assert!(check_simplicial_identities(&x).passed, "{name}");
            assert_eq!(horn_check(&x, 3, usize::MAX).unfillable(), 0, "{name}");
        } else {
            let x = build_nerve(&g, 2).unwrap();
            assert!(horn_check(&x, 2, usize::MAX).unfillable() > 0, "{name}");
        }
    }
}

fn free(rank: usize) -> AbelianInvariants {
    AbelianInvariants {
        free_rank: rank,
        torsion: vec![],
    }
}

#[test]
fn completion_outcomes() {
    let finite = |name: &str| match ac_build(&load(name), AcLimits::default()).unwrap().outcome {
        AcOutcome::Finite(ac) => (ac.n_arrows(), ac.vertex_order(0), ac.is_injective()),
        other => panic!("{name}: {other:?}"),
    };
    assert_eq!(finite("z2"), (2, 2, true));
    assert_eq!(finite("z3"), (3, 3, true));
    assert_eq!(finite("tree4"), (16, 1, true));
    assert_eq!(finite("path4"), (16, 1, true));
    for (name, rank) in [
        ("interval1", 1),
        ("interval2", 1),
        ("interval1-mod5", 1),
        ("cycle5", 1),
        ("cover_grid_symmetric", 2),
    ] {
        match ac_build(&load(name), AcLimits::default()).unwrap().outcome {
            AcOutcome::InfiniteCertified { h1, .. } => assert_eq!(h1, free(rank), "{name}"),
            other => panic!("{name}: {other:?}"),
        }
    }
    for name in ["tetra", "cover_grid"] {
        assert!(
            matches!(
                ac_build(&load(name), AcLimits::default()),
                Err(AcError::NotInversional(_))
            ),
            "{name}"
        );
    }
}

#[test]
fn edge_path_h1_matches_chains() {
    let expected = [
        (
            "z2",
            AbelianInvariants {
                free_rank: 0,
                torsion: vec![2],
            },
        ),
        (
            "z3",
            AbelianInvariants {
                free_rank: 0,
                torsion: vec![3],
            },
        ),
        ("interval1", free(1)),
        ("tree4", free(0)),
        ("cycle5", free(1)),
        ("tetra", free(0)),
        ("cover_grid_symmetric", free(2)),
    ];
    for (name, h1) in expected {
        let x = build_nerve(&load(name), 2).unwrap();
        let p = pi1_presentation(&x, 0).unwrap();
        assert_eq!(p.h1(), h1, "{name}");
        assert_eq!(chain_h1(&x), h1, "{name}");
    }
}
