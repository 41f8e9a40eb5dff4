//! Combinatorial homotopy of truncated simplicial sets: free groupoid
//! words on the 1-skeleton, the boundary maps `δ₂`, `δ₃`, π₁
//! presentations, chain-level H₁, the completion/π₁ cross-check and the
//! abelianized simplicial monodromy.
//!
//! The edge quiver of a simplicial set has `s(e) = d₁e`, `t(e) = d₀e`; for
//! a nerve this reverses the groupoid arrows. Words compose right to left:
//! `w₀•w₁•…` needs `s(wᵢ) = t(wᵢ₊₁)`.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::fpgroup::{finite_group, gen_letter, h1, letter_gen, Letter, Presentation};
use crate::groupoid::{FiniteLocalGroupoid, ObjIx};
use crate::intmat::{rank, smith, AbelianInvariants, IntMatrix};
use crate::nerve::{build_nerve, NerveError, SimplicialTruncation};
use crate::words::{ac_build, AcArrow, AcLimits, AcOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("basepoint {0} is not a vertex")]
    UnknownBasepoint(usize),
    #[error("vertices {0:?} are not connected to the basepoint")]
    DisconnectedFromBasepoint(Vec<usize>),
    #[error("the truncation stops below dimension {0}")]
    TooShallow(usize),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Completion(#[from] crate::words::ac::AcError),
}

/// The 1-skeleton of a truncation as a quiver.
#[derive(Debug, Clone)]
pub struct Quiver {
    pub vertices: usize,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
}

impl Quiver {
    pub fn of(x: &SimplicialTruncation) -> Quiver {
        let n = x.count(1);
        Quiver {
            vertices: x.count(0),
            src: (0..n).map(|e| x.face(1, e, 1)).collect(),
            tgt: (0..n).map(|e| x.face(1, e, 0)).collect(),
        }
    }

    pub fn edges(&self) -> usize {
        self.src.len()
    }
}

/// A word in the free groupoid on a quiver. `(e, +1)` runs along `e`,
/// `(e, −1)` against it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FreeWord {
    pub letters: Vec<(usize, i8)>,
    pub src: usize,
    pub tgt: usize,
}

impl FreeWord {
    pub fn identity(v: usize) -> FreeWord {
        FreeWord {
            letters: Vec::new(),
            src: v,
            tgt: v,
        }
    }

    pub fn edge(q: &Quiver, e: usize, exp: i8) -> FreeWord {
        let (s, t) = if exp > 0 {
            (q.src[e], q.tgt[e])
        } else {
            (q.tgt[e], q.src[e])
        };
        FreeWord {
            letters: vec![(e, exp)],
            src: s,
            tgt: t,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self • other`; panics unless `s(self) = t(other)`.
    pub fn compose(&self, other: &FreeWord) -> FreeWord {
        assert_eq!(self.src, other.tgt, "words do not compose");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord {
            letters,
            src: other.src,
            tgt: self.tgt,
        }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(e, x)| (e, -x)).collect(),
            src: self.tgt,
            tgt: self.src,
        }
    }

    /// Checks letter-by-letter composability against `q`.
    pub fn is_well_formed(&self, q: &Quiver) -> bool {
        let ends = |&(e, x): &(usize, i8)| {
            if x > 0 {
                (q.src[e], q.tgt[e])
            } else {
                (q.tgt[e], q.src[e])
            }
        };
        if self.letters.is_empty() {
            return self.src == self.tgt;
        }
        let first = ends(&self.letters[0]);
        let last = ends(self.letters.last().expect("nonempty"));
        first.1 == self.tgt
            && last.0 == self.src
            && self
                .letters
                .windows(2)
                .all(|p| ends(&p[0]).0 == ends(&p[1]).1)
    }
}

/// Free reduction; idempotent and never lengthens.
pub fn reduce(w: &FreeWord) -> FreeWord {
    let mut out: Vec<(usize, i8)> = Vec::with_capacity(w.letters.len());
    for &(e, x) in &w.letters {
        if out.last() == Some(&(e, -x)) {
            out.pop();
        } else {
            out.push((e, x));
        }
    }
    FreeWord {
        letters: out,
        src: w.src,
        tgt: w.tgt,
    }
}

/// `∂σ = d₀σ • d₂σ • (d₁σ)⁻¹`, a reduced loop at `d₀d₁σ`.
pub fn boundary2(x: &SimplicialTruncation, q: &Quiver, sigma: usize) -> FreeWord {
    let e = |i| x.face(2, sigma, i);
    let w = FreeWord::edge(q, e(0), 1)
        .compose(&FreeWord::edge(q, e(2), 1))
        .compose(&FreeWord::edge(q, e(1), -1));
    reduce(&w)
}

/// Last vertex `d₀d₁σ` of a 2-simplex.
pub fn apex2(x: &SimplicialTruncation, sigma: usize) -> usize {
    x.face(1, x.face(2, sigma, 1), 0)
}

/// Last vertex `d₀d₁d₂τ` of a 3-simplex.
pub fn apex3(x: &SimplicialTruncation, tau: usize) -> usize {
    x.face(1, x.face(2, x.face(3, tau, 2), 1), 0)
}

/// A generator `(w, σ)` of Γ₂: `t(w)` is the basepoint, `s(w) = d₀d₁σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Gamma2Gen {
    pub w: FreeWord,
    pub sigma: usize,
}

/// A formal product of Γ₂ generators and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Gamma2Elt {
    pub factors: Vec<(Gamma2Gen, i8)>,
}

impl Gamma2Elt {
    pub fn generator(g: Gamma2Gen) -> Self {
        Gamma2Elt {
            factors: vec![(g, 1)],
        }
    }

    pub fn mul(&self, other: &Gamma2Elt) -> Gamma2Elt {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Gamma2Elt { factors }
    }

    pub fn inverse(&self) -> Gamma2Elt {
        Gamma2Elt {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|(g, x)| (g.clone(), -x))
                .collect(),
        }
    }
}

/// `(w, σ) ↦ w • ∂σ • w⁻¹`.
pub fn delta2_gen(x: &SimplicialTruncation, q: &Quiver, g: &Gamma2Gen) -> FreeWord {
    reduce(
        &g.w.compose(&boundary2(x, q, g.sigma))
            .compose(&g.w.inverse()),
    )
}

pub fn delta2(x: &SimplicialTruncation, q: &Quiver, base: usize, e: &Gamma2Elt) -> FreeWord {
    let mut acc = FreeWord::identity(base);
    for (g, exp) in &e.factors {
        let d = delta2_gen(x, q, g);
        acc = acc.compose(&if *exp > 0 { d } else { d.inverse() });
    }
    reduce(&acc)
}

/// `δ₃(ξ, (w, τ)) = ξ·(w, d₀τ)·(w, d₂τ)·(w, d₁τ)⁻¹·(w•e₂₃, d₃τ)⁻¹·ξ⁻¹`,
/// where `e₂₃ = d₀d₁τ` is the edge from vertex 2 to vertex 3 of `τ` and
/// `s(w) = d₀d₁d₂τ`.
pub fn delta3(
    x: &SimplicialTruncation,
    q: &Quiver,
    xi: &Gamma2Elt,
    w: &FreeWord,
    tau: usize,
) -> Gamma2Elt {
    let face = |i| x.face(3, tau, i);
    let gen = |w: &FreeWord, s| {
        Gamma2Elt::generator(Gamma2Gen {
            w: w.clone(),
            sigma: s,
        })
    };
    let e23 = x.face(2, face(1), 0);
    let w23 = reduce(&w.compose(&FreeWord::edge(q, e23, 1)));
    xi.mul(&gen(w, face(0)))
        .mul(&gen(w, face(2)))
        .mul(&gen(w, face(1)).inverse())
        .mul(&gen(&w23, face(3)).inverse())
        .mul(&xi.inverse())
}

/// Spanning-tree presentation of `π₁(X, x)`.
#[derive(Debug, Clone, Serialize)]
pub struct Pi1Presentation {
    pub basepoint: usize,
    pub tree: Vec<usize>,
    pub generator_edges: Vec<usize>,
    pub presentation: Presentation,
    pub trivial_relators: usize,
    /// `paths[v]`: tree path from the basepoint to `v`.
    #[serde(skip)]
    pub paths: Vec<FreeWord>,
}

impl Pi1Presentation {
    pub fn h1(&self) -> AbelianInvariants {
        h1(&self.presentation)
    }
}

fn degenerate_edge(x: &SimplicialTruncation, e: usize) -> bool {
    x.is_degenerate(1, e)
}

pub fn pi1_presentation(
    x: &SimplicialTruncation,
    base: usize,
) -> Result<Pi1Presentation, HomotopyError> {
    if base >= x.count(0) {
        return Err(HomotopyError::UnknownBasepoint(base));
    }
    if x.m_max() < 2 {
        return Err(HomotopyError::TooShallow(2));
    }
    let q = Quiver::of(x);
    let live: Vec<usize> = (0..q.edges()).filter(|&e| !degenerate_edge(x, e)).collect();
    let mut incident = vec![Vec::new(); q.vertices];
    for &e in &live {
        incident[q.src[e]].push(e);
        incident[q.tgt[e]].push(e);
    }
    let mut paths: Vec<Option<FreeWord>> = vec![None; q.vertices];
    paths[base] = Some(FreeWord::identity(base));
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        let pv = paths[v].clone().expect("visited");
        for &e in &incident[v] {
            let (y, step) = if q.src[e] == v {
                (q.tgt[e], FreeWord::edge(&q, e, 1))
            } else {
                (q.src[e], FreeWord::edge(&q, e, -1))
            };
            if paths[y].is_none() {
                paths[y] = Some(step.compose(&pv));
                tree.push(e);
                queue.push_back(y);
            }
        }
    }
    let unreached: Vec<usize> = (0..q.vertices).filter(|&v| paths[v].is_none()).collect();
    if !unreached.is_empty() {
        return Err(HomotopyError::DisconnectedFromBasepoint(unreached));
    }
    let paths: Vec<FreeWord> = paths.into_iter().map(|p| p.expect("connected")).collect();
    let mut gen_of = vec![None; q.edges()];
    let mut generator_edges = Vec::new();
    for &e in &live {
        if !tree.contains(&e) {
            gen_of[e] = Some(generator_edges.len());
            generator_edges.push(e);
        }
    }
    let letter = |e: usize, exp: i32| -> Vec<Letter> {
        gen_of[e]
            .map(|k| vec![gen_letter(k, exp)])
            .unwrap_or_default()
    };
    let mut p = Presentation::new(generator_edges.iter().map(|&e| format!("e{e}")).collect());
    let mut trivial = 0;
    for s in 0..x.count(2) {
        let mut r = letter(x.face(2, s, 0), 1);
        r.extend(letter(x.face(2, s, 2), 1));
        r.extend(letter(x.face(2, s, 1), -1));
        if !p.add_relator(&r) {
            trivial += 1;
        }
    }
    Ok(Pi1Presentation {
        basepoint: base,
        tree,
        generator_edges,
        presentation: p,
        trivial_relators: trivial,
        paths,
    })
}

/// H₁ of the normalized chain complex of the 2-truncation.
pub fn chain_h1(x: &SimplicialTruncation) -> AbelianInvariants {
    let edges: Vec<usize> = (0..x.count(1))
        .filter(|&e| !x.is_degenerate(1, e))
        .collect();
    let col: BTreeMap<usize, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut d1 = IntMatrix::zeros(edges.len(), x.count(0));
    for (i, &e) in edges.iter().enumerate() {
        d1[(i, x.face(1, e, 0))] += BigInt::one();
        d1[(i, x.face(1, e, 1))] -= BigInt::one();
    }
    let tris: Vec<usize> = (0..x.count(2))
        .filter(|&s| !x.is_degenerate(2, s))
        .collect();
    let mut d2 = IntMatrix::zeros(tris.len(), edges.len());
    for (r, &s) in tris.iter().enumerate() {
        for (i, sign) in [(0, 1i64), (1, -1), (2, 1)] {
            if let Some(&c) = col.get(&x.face(2, s, i)) {
                d2[(r, c)] += BigInt::from(sign);
            }
        }
    }
    let r1 = rank(&d1);
    let s2 = smith(&d2);
    let torsion = s2.cokernel().torsion;
    AbelianInvariants {
        free_rank: edges.len() - r1 - s2.rank(),
        torsion,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    pub basepoint: String,
    pub ac_h1: AbelianInvariants,
    pub pi1_h1: AbelianInvariants,
    pub h1_equal: bool,
    pub ac_order: Option<usize>,
    pub pi1_order: Option<usize>,
    pub relators_map_to_identity: Option<bool>,
    pub images_generate: Option<bool>,
    /// Established when the comparison map is a surjection between groups
    /// of equal finite order.
    pub isomorphic: Option<bool>,
}

/// Compares the completion's vertex group with `π₁` of the 2-nerve at the
/// first object.
pub fn ac_vs_pi1(
    g: &FiniteLocalGroupoid,
    limits: AcLimits,
) -> Result<CrossCheckReport, HomotopyError> {
    let base: ObjIx = 0;
    let build = ac_build(g, limits)?;
    let comp = build.component_of(base);
    let ac_h1 = build.components[comp].h1();
    let x = build_nerve(g, 2)?;
    let pi = pi1_presentation(&x, base)?;
    let pi1_h1 = pi.h1();
    let mut report = CrossCheckReport {
        basepoint: g.object_name(base).to_string(),
        h1_equal: ac_h1 == pi1_h1,
        ac_h1,
        pi1_h1,
        ac_order: None,
        pi1_order: None,
        relators_map_to_identity: None,
        images_generate: None,
        isomorphic: None,
    };
    let AcOutcome::Finite(ac) = &build.outcome else {
        return Ok(report);
    };
    report.ac_order = Some(ac.vertex_order(base));
    let Ok(pg) = finite_group(&pi.presentation, limits.coset_limit) else {
        return Ok(report);
    };
    report.pi1_order = Some(pg.order());
    let q = Quiver::of(&x);
    // a quiver edge of the nerve runs against its arrow
    let phi_letter = |&(e, exp): &(usize, i8)| {
        let c = ac.complete(e);
        if exp > 0 {
            ac.inv(c)
        } else {
            c
        }
    };
    let phi = |w: &FreeWord| -> AcArrow {
        w.letters
            .iter()
            .map(phi_letter)
            .fold(ac.unit(w.tgt), |acc, a| {
                ac.mul(acc, a).expect("word is well-formed")
            })
    };
    let images: Vec<usize> = pi
        .generator_edges
        .iter()
        .map(|&e| {
            let hat = pi.paths[q.tgt[e]]
                .inverse()
                .compose(&FreeWord::edge(&q, e, 1))
                .compose(&pi.paths[q.src[e]]);
            let a = phi(&hat);
            debug_assert!(a.src == base && a.tgt == base);
            a.elem
        })
        .collect();
    let group = &ac.components[comp].group;
    let eval = |r: &[Letter]| {
        r.iter().fold(group.identity(), |acc, &l| {
            let im = images[letter_gen(l)];
            group.mul(acc, if l > 0 { im } else { group.inv(im) })
        })
    };
    let rel_ok = pi
        .presentation
        .relators
        .iter()
        .all(|r| eval(r) == group.identity());
    let gens_ok = group.generated_by(&images);
    report.relators_map_to_identity = Some(rel_ok);
    report.images_generate = Some(gens_ok);
    report.isomorphic = Some(rel_ok && gens_ok && pg.order() == group.order());
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct MonodromyGenerator {
    /// `e • rep⁻¹` as arrow ids; a single id when `rep` is a unit.
    pub word: Vec<String>,
    pub torsion_coords: Vec<u64>,
    pub free_coords: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonodromyReport {
    /// Always "abelianized": only `K₁/δ(K₂)` after abelianization is computed.
    pub label: &'static str,
    pub basepoint: String,
    pub invariants: AbelianInvariants,
    pub generators: Vec<MonodromyGenerator>,
    /// H₁ of the completion of the isotropy group at the basepoint.
    pub isotropy_ac_h1: Option<AbelianInvariants>,
    pub agrees: Option<bool>,
}

/// Abelianized `K₁/δ(K₂)` for `φ: G → U`, `U` the image of `(t, s)`.
pub fn simplicial_monodromy_ab(
    g: &FiniteLocalGroupoid,
    x: ObjIx,
) -> Result<MonodromyReport, HomotopyError> {
    if x >= g.n_objects() {
        return Err(HomotopyError::UnknownBasepoint(x));
    }
    let nerve = build_nerve(g, 2)?;
    // 1-chains: fibres of (t, s); units stand for zero
    let mut fibre1: BTreeMap<(ObjIx, ObjIx), Vec<usize>> = BTreeMap::new();
    for a in 0..g.n_arrows() {
        fibre1.entry((g.tgt(a), g.src(a))).or_default().push(a);
    }
    let mut rep = vec![None; g.n_arrows()];
    let mut basis = Vec::new();
    for (&(t, s), arrows) in &fibre1 {
        let r = if t == s { g.unit(t) } else { arrows[0] };
        for &a in arrows {
            if a != r {
                rep[a] = Some(r);
                basis.push(a);
            }
        }
    }
    let coord: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    // normalized boundary of a 2-simplex, read in the basis {e − rep(e)}
    let boundary = |s: usize| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); basis.len()];
        for (i, sign) in [(0usize, 1i64), (1, -1), (2, 1)] {
            if let Some(&c) = coord.get(&nerve.face(2, s, i)) {
                v[c] += BigInt::from(sign);
            }
        }
        v
    };
    let mut fibre2: BTreeMap<(ObjIx, ObjIx, ObjIx), Vec<usize>> = BTreeMap::new();
    for s in 0..nerve.count(2) {
        let t = nerve.level(2)[s].clone();
        fibre2
            .entry((g.tgt(t[0]), g.src(t[0]), g.src(t[1])))
            .or_default()
            .push(s);
    }
    let mut rows = Vec::new();
    for (&(z, y, w), simplices) in &fibre2 {
        let degenerate_base = z == y || y == w;
        let r = simplices[0];
        let rb = boundary(r);
        for &s in simplices {
            if degenerate_base {
                rows.push(boundary(s));
            } else if s != r {
                rows.push(
                    boundary(s)
                        .iter()
                        .zip(&rb)
                        .map(|(a, b)| a - b)
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    let mut m = IntMatrix::zeros(rows.len(), basis.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            m[(i, j)] = v.clone();
        }
    }
    let sm = smith(&m);
    let generators = basis
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let mut e = vec![BigInt::zero(); basis.len()];
            e[i] = BigInt::one();
            let (torsion_coords, free_coords) = sm.cokernel_image(&e);
            let r = rep[a].expect("basis arrows have a representative");
            let mut word = vec![g.id(a).to_string()];
            if !g.is_unit(r) {
                word.push(format!("{}^-1", g.id(r)));
            }
            MonodromyGenerator {
                word,
                torsion_coords,
                free_coords,
            }
        })
        .collect();
    let invariants = sm.cokernel();
    let isotropy_ac_h1 = ac_build(&g.isotropy_table(x), AcLimits::default())
        .ok()
        .map(|b| b.components[0].h1());
    let agrees = isotropy_ac_h1.as_ref().map(|h| *h == invariants);
    Ok(MonodromyReport {
        label: "abelianized",
        basepoint: g.object_name(x).to_string(),
        invariants,
        generators,
        isotropy_ac_h1,
        agrees,
    })
}

/// JSON view of a π₁ presentation with readable relators.
pub fn pi1_json(g: &FiniteLocalGroupoid, p: &Pi1Presentation) -> Value {
    let name = |e: usize| g.id(e).to_string();
    json!({
        "basepoint": g.object_name(p.basepoint),
        "tree": p.tree.iter().map(|&e| name(e)).collect::<Vec<_>>(),
        "generators": p.generator_edges.iter().map(|&e| name(e)).collect::<Vec<_>>(),
        "relators": p.presentation.relators.iter().map(|r| {
            r.iter().map(|&l| {
                let e = name(p.generator_edges[letter_gen(l)]);
                if l > 0 { e } else { format!("{e}^-1") }
            }).collect::<Vec<_>>().join(" ")
        }).collect::<Vec<_>>(),
        "trivial_relators": p.trivial_relators,
        "h1": p.h1(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic, interval_group, pair_restriction};

    fn tree4() -> FiniteLocalGroupoid {
        pair_restriction(4, &[(0, 1), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let g = cyclic(3).unwrap();
        let x = build_nerve(&g, 2).unwrap();
        let q = Quiver::of(&x);
        let e = FreeWord::edge(&q, 1, 1);
        assert!(reduce(&e.compose(&e.inverse())).is_identity());
        let f = FreeWord::edge(&q, 2, 1);
        let w = e.compose(&f).compose(&f.inverse()).compose(&e);
        assert_eq!(reduce(&w).letters, vec![(1, 1), (1, 1)]);
        assert_eq!(reduce(&reduce(&w)), reduce(&w));
    }

    #[test]
    fn boundary_of_nerve_pair() {
        let g = cyclic(3).unwrap();
        let x = build_nerve(&g, 2).unwrap();
        let q = Quiver::of(&x);
        let s = x.find(2, &[1, 2]).unwrap();
        // d₀ = (2), d₂ = (1), d₁ = (0)
        assert_eq!(boundary2(&x, &q, s).letters, vec![(2, 1), (1, 1), (0, -1)]);
        let d = x.find(2, &[0, 1]).unwrap();
        // degenerate: 1 • 0 • 1⁻¹ does not reduce freely, but contains a unit edge
        assert_eq!(boundary2(&x, &q, d).len(), 3);
    }

    #[test]
    fn delta_squared_vanishes() {
        for g in [
            cyclic(3).unwrap(),
            interval_group(1, None).unwrap(),
            tree4(),
        ] {
            let x = build_nerve(&g, 3).unwrap();
            let q = Quiver::of(&x);
            let pi = pi1_presentation(&x, 0).unwrap();
            for tau in 0..x.count(3) {
                let w = pi.paths[apex3(&x, tau)].inverse();
                let xi = Gamma2Elt::generator(Gamma2Gen {
                    w: pi.paths[apex2(&x, 0)].inverse(),
                    sigma: 0,
                });
                let d = delta3(&x, &q, &xi, &w, tau);
                assert!(delta2(&x, &q, 0, &d).is_identity());
            }
        }
    }

    #[test]
    fn conjugated_relator_is_a_generator_image() {
        let g = cyclic(3).unwrap();
        let x = build_nerve(&g, 2).unwrap();
        let q = Quiver::of(&x);
        let loop_ = FreeWord::edge(&q, 1, 1);
        let s = x.find(2, &[1, 1]).unwrap();
        let gen = Gamma2Gen {
            w: FreeWord::identity(0),
            sigma: s,
        };
        let conj = reduce(
            &loop_
                .compose(&delta2_gen(&x, &q, &gen))
                .compose(&loop_.inverse()),
        );
        let moved = Gamma2Gen {
            w: loop_.clone(),
            sigma: s,
        };
        assert_eq!(conj, delta2_gen(&x, &q, &moved));
    }

    #[test]
    fn pi1_examples() {
        let z3 = build_nerve(&cyclic(3).unwrap(), 2).unwrap();
        assert_eq!(
            pi1_presentation(&z3, 0).unwrap().h1(),
            AbelianInvariants {
                free_rank: 0,
                torsion: vec![3]
            }
        );
        let t = build_nerve(&tree4(), 2).unwrap();
        let p = pi1_presentation(&t, 0).unwrap();
        assert_eq!(finite_group(&p.presentation, 1000).unwrap().order(), 1);
        let two = pair_restriction(2, &[]).unwrap();
        let n = build_nerve(&two, 2).unwrap();
        assert!(matches!(
            pi1_presentation(&n, 0),
            Err(HomotopyError::DisconnectedFromBasepoint(_))
        ));
    }

    #[test]
    fn five_cycle_without_triangles() {
        // pair groupoid of a 5-cycle: no composable chords, so no nondegenerate 2-simplices
        let c5 = pair_restriction(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let x = build_nerve(&c5, 2).unwrap();
        let p = pi1_presentation(&x, 0).unwrap();
        assert_eq!(p.h1().free_rank, 1);
        assert!(p.h1().torsion.is_empty());
        assert_eq!(p.h1(), chain_h1(&x));
    }

    #[test]
    fn chain_level_agrees() {
        for g in [
            cyclic(3).unwrap(),
            interval_group(1, None).unwrap(),
            interval_group(2, Some(7)).unwrap(),
            tree4(),
        ] {
            let x = build_nerve(&g, 2).unwrap();
            assert_eq!(pi1_presentation(&x, 0).unwrap().h1(), chain_h1(&x));
        }
    }

    #[test]
    fn thm_cross_checks() {
        let r = ac_vs_pi1(&cyclic(3).unwrap(), AcLimits::default()).unwrap();
        assert_eq!(
            (r.ac_order, r.pi1_order, r.isomorphic),
            (Some(3), Some(3), Some(true))
        );
        let r = ac_vs_pi1(&tree4(), AcLimits::default()).unwrap();
        assert_eq!(r.isomorphic, Some(true));
        assert_eq!(r.ac_order, Some(1));
        let r = ac_vs_pi1(&interval_group(1, None).unwrap(), AcLimits::default()).unwrap();
        assert!(r.h1_equal);
        assert_eq!(r.pi1_h1.free_rank, 1);
    }

    #[test]
    fn monodromy_examples() {
        let r = simplicial_monodromy_ab(&cyclic(3).unwrap(), 0).unwrap();
        assert_eq!(
            r.invariants,
            AbelianInvariants {
                free_rank: 0,
                torsion: vec![3]
            }
        );
        assert_eq!(r.agrees, Some(true));
        let r = simplicial_monodromy_ab(&tree4(), 0).unwrap();
        assert!(r.invariants.is_trivial());
        let r = simplicial_monodromy_ab(&interval_group(1, Some(5)).unwrap(), 0).unwrap();
        assert_eq!(
            r.invariants,
            AbelianInvariants {
                free_rank: 1,
                torsion: vec![]
            }
        );
        assert_eq!(r.agrees, Some(true));
    }
}
