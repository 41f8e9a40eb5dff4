#![allow(dead_code)]

use std::path::PathBuf;

use locgpd::groupoid::{cyclic, interval_group, pair_restriction, path_edges};
use locgpd::io::read_table;
use locgpd::FiniteLocalGroupoid;

pub const CORPUS: [&str; 11] = [
    "z2",
    "z3",
    "interval1",
    "interval2",
    "interval1-mod5",
    "tree4",
    "path4",
    "cycle5",
    "tetra",
    "cover_grid",
    "cover_grid_symmetric",
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn load(name: &str) -> FiniteLocalGroupoid {
    read_table(&data_dir().join(format!("{name}.json"))).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn corpus() -> Vec<(&'static str, FiniteLocalGroupoid)> {
    CORPUS.iter().map(|&n| (n, load(n))).collect()
}

/// The small tables every suite runs on.
pub fn desk() -> Vec<(&'static str, FiniteLocalGroupoid)> {
    vec![
        ("z2", cyclic(2).unwrap()),
        ("z3", cyclic(3).unwrap()),
        ("interval1", interval_group(1, None).unwrap()),
        ("interval1-mod5", interval_group(1, Some(5)).unwrap()),
        (
            "tree4",
            pair_restriction(4, &[(0, 1), (1, 2), (1, 3)]).unwrap(),
        ),
        ("path4", pair_restriction(4, &path_edges(4)).unwrap()),
        (
            "cycle5",
            pair_restriction(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
        ),
    ]
}

/// Every composable pair is in the multiplication domain.
pub fn is_total(g: &FiniteLocalGroupoid) -> bool {
    let composable = (0..g.n_arrows())
        .flat_map(|a| (0..g.n_arrows()).map(move |b| (a, b)))
        .filter(|&(a, b)| g.composable(a, b))
        .count();
    composable == g.mult_entries().len()
}
