//! Finite samples of the continuum examples as tables. A product is kept
//! exactly when both factors and the result are sampled; other defined
//! products are reported as dropped.

use std::collections::HashMap;

use serde::Serialize;

use super::cover::{cover_inv, cover_mult, CoverConfig, CoverPoint};
use super::sphere::{mult_sphere, tetrahedron_points, SphereArrow, Tolerances};
use super::{UnitVector3, V2};
use crate::groupoid::{Arrow, ArrowIx, FiniteLocalGroupoid, TableError};

#[derive(Debug, Clone)]
pub struct Export {
    pub table: FiniteLocalGroupoid,
    /// Defined products whose value fell outside the sample.
    pub dropped: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportSummary {
    pub objects: usize,
    pub arrows: usize,
    pub products: usize,
    pub dropped: usize,
}

impl Export {
    pub fn summary(&self) -> ExportSummary {
        ExportSummary {
            objects: self.table.n_objects(),
            arrows: self.table.n_arrows(),
            products: self.table.mult_entries().len(),
            dropped: self.dropped.len(),
        }
    }
}

enum Product {
    Undefined,
    Sampled(ArrowIx),
    Outside,
}

fn assemble(
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    units: Vec<ArrowIx>,
    mul: impl Fn(ArrowIx, ArrowIx) -> Product,
    inv: impl Fn(ArrowIx) -> Option<ArrowIx>,
) -> Result<Export, TableError> {
    let n = arrows.len();
    let mut mult = Vec::new();
    let mut dropped = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if arrows[a].src != arrows[b].tgt {
                continue;
            }
            match mul(a, b) {
                Product::Sampled(p) => mult.push((a, b, p)),
                Product::Outside => dropped.push((arrows[a].id.clone(), arrows[b].id.clone())),
                Product::Undefined => {}
            }
        }
    }
    let inv_list = (0..n).filter_map(|a| inv(a).map(|b| (a, b))).collect();
    let table = FiniteLocalGroupoid::from_indices(objects, arrows, units, mult, inv_list)?;
    Ok(Export { table, dropped })
}

fn area_key(a: f64) -> i64 {
    (a * 1e6).round() as i64
}

/// Sample of the area groupoid over S² on given points. Units are added;
/// arrows are `(target index, source index, area)`.
pub fn export_sphere(
    points: &[UnitVector3],
    sample: &[(usize, usize, f64)],
) -> Result<Export, TableError> {
    let objects: Vec<String> = (1..=points.len()).map(|i| format!("x{i}")).collect();
    let mut list: Vec<(usize, usize, f64)> = (0..points.len()).map(|i| (i, i, 0.0)).collect();
    let mut index: HashMap<(usize, usize, i64), usize> = list
        .iter()
        .enumerate()
        .map(|(k, &(t, s, a))| ((t, s, area_key(a)), k))
        .collect();
    for &(t, s, a) in sample {
        if let std::collections::hash_map::Entry::Vacant(e) = index.entry((t, s, area_key(a))) {
            e.insert(list.len());
            list.push((t, s, a));
        }
    }
    let arrows: Vec<Arrow> = list
        .iter()
        .enumerate()
        .map(|(k, &(t, s, a))| {
            let id = if t == s && k < points.len() {
                format!("1_{}", objects[t])
            } else {
                format!("{}<{}#{a:+.6}", objects[t], objects[s])
            };
            Arrow { id, src: s, tgt: t }
        })
        .collect();
    let units = (0..points.len()).collect();
    let sa = |k: usize| {
        let (t, s, a) = list[k];
        SphereArrow {
            y: points[t],
            x: points[s],
            a,
        }
    };
    let tol = Tolerances::default();
    let mul = |g: usize, h: usize| match mult_sphere(&sa(g), &sa(h), tol) {
        Ok(Some(p)) => {
            let key = (list[g].0, list[h].1, area_key(p.a));
            index
                .get(&key)
                .map_or(Product::Outside, |&k| Product::Sampled(k))
        }
        _ => Product::Undefined,
    };
    let inv = |g: usize| {
        let (t, s, a) = list[g];
        index.get(&(s, t, area_key(-a))).copied()
    };
    assemble(objects, arrows, units, mul, inv)
}

/// The six tetrahedron arrows and every partial product they generate.
pub fn export_tetrahedron() -> Result<Export, TableError> {
    let x = tetrahedron_points();
    let tol = Tolerances::default();
    let mut list: Vec<(usize, usize, f64)> = (0..6).map(|j| (j + 1, j, 0.0)).collect();
    let mut seen: HashMap<(usize, usize, i64), ()> = list
        .iter()
        .map(|&(t, s, a)| ((t, s, area_key(a)), ()))
        .collect();
    let mut grew = true;
    while grew {
        grew = false;
        let snapshot = list.clone();
        for &(t1, s1, a1) in &snapshot {
            for &(t2, s2, a2) in &snapshot {
                if s1 != t2 {
                    continue;
                }
                let g = SphereArrow {
                    y: x[t1],
                    x: x[s1],
                    a: a1,
                };
                let h = SphereArrow {
                    y: x[t2],
                    x: x[s2],
                    a: a2,
                };
                if let Ok(Some(p)) = mult_sphere(&g, &h, tol) {
                    if seen.insert((t1, s2, area_key(p.a)), ()).is_none() {
                        list.push((t1, s2, p.a));
                        grew = true;
                    }
                }
            }
        }
    }
    export_sphere(&x, &list)
}

fn cover_id(g: &CoverPoint) -> String {
    format!("({:+.1},{:+.1})@{}", g.p.0, g.p.1, g.w)
}

/// Grid points `xs × {−0.4, 0, 0.4}` on sheets −1, 0, 1 of the cover, as
/// a one-object table. `symmetric` adds the column `x = −0.6`, so that
/// every sampled element over the ball has its inverse sampled.
pub fn export_cover_grid(cfg: &CoverConfig, symmetric: bool) -> Result<Export, TableError> {
    let mut xs = vec![0.0, 0.6, 1.2];
    if symmetric {
        xs.insert(0, -0.6);
    }
    let mut elems = vec![CoverPoint::origin()];
    for w in [-1, 0, 1] {
        for &x in &xs {
            for y in [-0.4, 0.0, 0.4] {
                let g = CoverPoint { p: V2(x, y), w };
                if g != elems[0] {
                    elems.push(g);
                }
            }
        }
    }
    let find = |g: &CoverPoint| {
        elems
            .iter()
            .position(|e| e.w == g.w && (e.p - g.p).norm() < 1e-9)
    };
    let arrows = elems
        .iter()
        .map(|g| Arrow {
            id: cover_id(g),
            src: 0,
            tgt: 0,
        })
        .collect();
    let mul = |a: usize, b: usize| match cover_mult(cfg, &elems[a], &elems[b]) {
        Ok(p) => find(&p).map_or(Product::Outside, Product::Sampled),
        Err(_) => Product::Undefined,
    };
    let inv = |a: usize| cover_inv(cfg, &elems[a]).and_then(|p| find(&p));
    assemble(vec!["*".into()], arrows, vec![0], mul, inv)
}
