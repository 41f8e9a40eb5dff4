use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use locgpd::assoc::assoc_order;
use locgpd::complexes::{certify_equivalence, verify_certificate};
use locgpd::flows::{associator_witness, LadderConfig};
use locgpd::geometry::sphere::{quad_check, tetrahedron_witness};
use locgpd::groupoid::{cyclic, interval_group, pair_restriction};
use locgpd::lace::lace_report;
use locgpd::nerve::{build_nerve, horn_check};
use locgpd::words::{ac_build, random_equivalent_pairs, AcLimits};
use locgpd::Bounds;

fn geometry(c: &mut Criterion) {
    c.bench_function("tetrahedron_witness", |b| b.iter(tetrahedron_witness));
    c.bench_function("quad_check_1000", |b| {
        b.iter(|| quad_check(1000, black_box(1), Some(0.5), 1e-9))
    });
    let mut g = c.benchmark_group("ladder");
    g.sample_size(10);
    g.bench_function("rung_2", |b| {
        b.iter(|| associator_witness(black_box(2), LadderConfig::default()))
    });
    g.finish();
}

fn completion(c: &mut Criterion) {
    let z3 = cyclic(3).unwrap();
    let tree = pair_restriction(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
    let interval = interval_group(1, None).unwrap();
    c.bench_function("ac_build_z3", |b| {
        b.iter(|| ac_build(&z3, AcLimits::default()))
    });
    c.bench_function("ac_build_tree4", |b| {
        b.iter(|| ac_build(&tree, AcLimits::default()))
    });
    c.bench_function("ac_build_interval1", |b| {
        b.iter(|| ac_build(&interval, AcLimits::default()))
    });
    c.bench_function("assoc_order_z3_5", |b| b.iter(|| assoc_order(&z3, 5)));
}

fn nerves(c: &mut Criterion) {
    let z3 = cyclic(3).unwrap();
    c.bench_function("nerve_z3_dim3", |b| b.iter(|| build_nerve(&z3, 3)));
    let x = build_nerve(&z3, 3).unwrap();
    c.bench_function("horn_check_z3_dim3", |b| {
        b.iter(|| horn_check(&x, 3, usize::MAX))
    });
}

fn certificates(c: &mut Criterion) {
    let g = pair_restriction(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let pairs = random_equivalent_pairs(&g, 5, 20);
    let bounds = Bounds {
        max_len: 7,
        max_steps: 200_000,
    };
    c.bench_function("certify_verify_cycle5_20", |b| {
        b.iter_batched(
            || pairs.clone(),
            |pairs| {
                for (w1, w2) in &pairs {
                    let cert = certify_equivalence(w1, w2, &g, bounds).unwrap().unwrap();
                    assert!(verify_certificate(&cert, &g));
                }
            },
            BatchSize::SmallInput,
        )
    });
}

fn laces(c: &mut Criterion) {
    for k in [4, 8, 16] {
        c.bench_function(&format!("lace_report_k{k}"), |b| {
            b.iter(|| lace_report(black_box(k)))
        });
    }
}

criterion_group!(benches, geometry, completion, nerves, certificates, laces);
criterion_main!(benches);
