//! Edge sequences on the subdivided triangle `{x, y ≥ 0, x + y ≤ k}` that
//! reduce to the boundary by cancelling backtracks and also split into
//! laces, one around each face.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

pub const MAX_K: usize = 64;

pub type Vertex = (usize, usize);

#[derive(Debug, Error)]
pub enum LaceError {
    #[error("k must lie in 1..={MAX_K}, got {0}")]
    BadK(usize),
    #[error("sequence is not well formed at position {0}")]
    IllFormed(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrientedEdge {
    pub from: Vertex,
    pub to: Vertex,
}

impl OrientedEdge {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        OrientedEdge { from, to }
    }

    pub fn inverse(self) -> Self {
        OrientedEdge {
            from: self.to,
            to: self.from,
        }
    }

    fn euclidean(self, k: usize) -> f64 {
        let dx = self.from.0 as f64 - self.to.0 as f64;
        let dy = self.from.1 as f64 - self.to.1 as f64;
        dx.hypot(dy) / k as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FaceKind {
    Up,
    Down,
}

#[derive(Debug, Clone, Serialize)]
pub struct Face {
    pub kind: FaceKind,
    pub x: usize,
    pub y: usize,
    /// Corners in counterclockwise order.
    pub corners: [Vertex; 3],
}

impl Face {
    pub fn label(&self) -> String {
        let c = if self.kind == FaceKind::Up { 'U' } else { 'D' };
        format!("{c}({},{})", self.x, self.y)
    }

    /// The counterclockwise cycle starting at corner `i`.
    pub fn cycle_from(&self, i: usize) -> [OrientedEdge; 3] {
        let c = |j: usize| self.corners[(i + j) % 3];
        [
            OrientedEdge::new(c(0), c(1)),
            OrientedEdge::new(c(1), c(2)),
            OrientedEdge::new(c(2), c(0)),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Triangulation {
    pub k: usize,
    pub vertices: Vec<Vertex>,
    /// Undirected edges, smaller endpoint first.
    pub edges: Vec<(Vertex, Vertex)>,
    pub faces: Vec<Face>,
    #[serde(skip)]
    left_face: HashMap<OrientedEdge, usize>,
}

fn undirected(e: OrientedEdge) -> (Vertex, Vertex) {
    if e.from <= e.to {
        (e.from, e.to)
    } else {
        (e.to, e.from)
    }
}

pub fn triangulate(k: usize) -> Result<Triangulation, LaceError> {
    if !(1..=MAX_K).contains(&k) {
        return Err(LaceError::BadK(k));
    }
    let vertices = (0..=k)
        .flat_map(|i| (0..=k - i).map(move |j| (i, j)))
        .collect();
    let mut faces = Vec::with_capacity(k * k);
    for x in 0..k {
        for y in 0..k - x {
            faces.push(Face {
                kind: FaceKind::Up,
                x,
                y,
                corners: [(x, y), (x + 1, y), (x, y + 1)],
            });
            if x + y + 2 <= k {
                faces.push(Face {
                    kind: FaceKind::Down,
                    x,
                    y,
                    corners: [(x + 1, y), (x + 1, y + 1), (x, y + 1)],
                });
            }
        }
    }
    let mut left_face = HashMap::new();
    let mut edges = HashSet::new();
    for (f, face) in faces.iter().enumerate() {
        for e in face.cycle_from(0) {
            left_face.insert(e, f);
            edges.insert(undirected(e));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort();
    Ok(Triangulation {
        k,
        vertices,
        edges,
        faces,
        left_face,
    })
}

impl Triangulation {
    pub fn has_edge(&self, e: OrientedEdge) -> bool {
        self.left_face.contains_key(&e) || self.left_face.contains_key(&e.inverse())
    }

    pub fn face_at(&self, kind: FaceKind, x: usize, y: usize) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.kind == kind && f.x == x && f.y == y)
    }

    /// Edges lying on exactly one face.
    pub fn boundary_edge_count(&self) -> usize {
        self.left_face
            .keys()
            .filter(|e| !self.left_face.contains_key(&e.inverse()))
            .count()
    }

    /// `ε₁, …, ε_{3k}` in the order they are walked, counterclockwise from the origin.
    pub fn boundary_word(&self) -> Vec<OrientedEdge> {
        let k = self.k;
        let mut w = Vec::with_capacity(3 * k);
        w.extend((0..k).map(|i| OrientedEdge::new((i, 0), (i + 1, 0))));
        w.extend((0..k).map(|i| OrientedEdge::new((k - i, i), (k - i - 1, i + 1))));
        w.extend((0..k).map(|i| OrientedEdge::new((0, k - i), (0, k - i - 1))));
        w
    }

    /// Bands parallel to the hypotenuse from the outside in, alternating
    /// direction. A band's end down-triangle touching a rail is taken
    /// after the corner up-triangle beside it, so the rest stays a disk.
    pub fn face_order(&self) -> Vec<usize> {
        let k = self.k;
        let up = |x, y| self.face_at(FaceKind::Up, x, y).expect("face");
        let down = |x, y| self.face_at(FaceKind::Down, x, y).expect("face");
        let mut order = Vec::with_capacity(k * k);
        for (b, d) in (0..k).rev().enumerate() {
            if d == 0 {
                order.push(up(0, 0));
            } else if b % 2 == 0 {
                for x in (2..=d).rev() {
                    order.extend([up(x, d - x), down(x - 1, d - x)]);
                }
                order.extend([up(1, d - 1), up(0, d), down(0, d - 1)]);
            } else {
                for x in 0..d - 1 {
                    order.extend([up(x, d - x), down(x, d - x - 1)]);
                }
                order.extend([up(d - 1, 1), up(d, 0), down(d - 1, 0)]);
            }
        }
        order
    }

    /// Boundary walk of a set of faces from the origin; `None` unless it is
    /// a single simple cycle through the origin covering every boundary edge.
    fn region_boundary(&self, alive: &[bool]) -> Option<Vec<OrientedEdge>> {
        let mut next = HashMap::new();
        let mut count = 0;
        for (_, face) in self.faces.iter().enumerate().filter(|(f, _)| alive[*f]) {
            for e in face.cycle_from(0) {
                let other = self.left_face.get(&e.inverse()).is_some_and(|&g| alive[g]);
                if !other {
                    count += 1;
                    if next.insert(e.from, e).is_some() {
                        return None;
                    }
                }
            }
        }
        let mut walk = Vec::with_capacity(count);
        let mut v = (0, 0);
        loop {
            let e = *next.get(&v)?;
            walk.push(e);
            v = e.to;
            if v == (0, 0) || walk.len() > count {
                break;
            }
        }
        (walk.len() == count).then_some(walk)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Lace {
    pub face: usize,
    /// Position of the lace's first edge in the sequence.
    pub start: usize,
    /// `(e_n, …, e_1)` in walk order: the edges from the origin to the face.
    pub end: Vec<OrientedEdge>,
    pub cycle: [OrientedEdge; 3],
}

impl Lace {
    pub fn len(&self) -> usize {
        2 * self.end.len() + 3
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> Vec<OrientedEdge> {
        let mut v = self.end.clone();
        v.extend(self.cycle);
        v.extend(self.end.iter().rev().map(|e| e.inverse()));
        v
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeSequence {
    pub k: usize,
    pub edges: Vec<OrientedEdge>,
    pub laces: Vec<Lace>,
}

/// Peels faces in `face_order`; each lace's end is the boundary walk of
/// the remaining region up to the face.
pub fn generate_sequence(k: usize) -> Result<EdgeSequence, LaceError> {
    let t = triangulate(k)?;
    let mut alive = vec![true; t.faces.len()];
    let mut edges = Vec::new();
    let mut laces = Vec::with_capacity(t.faces.len());
    for f in t.face_order() {
        let walk = t
            .region_boundary(&alive)
            .expect("remaining region is a disk");
        let pos = walk
            .iter()
            .position(|e| t.left_face.get(e) == Some(&f))
            .expect("face meets the boundary");
        let u = walk[pos].from;
        let i = t.faces[f]
            .corners
            .iter()
            .position(|&c| c == u)
            .expect("corner");
        let lace = Lace {
            face: f,
            start: edges.len(),
            end: walk[..pos].to_vec(),
            cycle: t.faces[f].cycle_from(i),
        };
        edges.extend(lace.edges());
        laces.push(lace);
        alive[f] = false;
    }
    Ok(EdgeSequence { k, edges, laces })
}

/// Consecutive edges meet, every edge exists, and the walk is a loop at the origin.
pub fn check_well_formed(t: &Triangulation, seq: &[OrientedEdge]) -> Result<(), LaceError> {
    for (i, e) in seq.iter().enumerate() {
        let joins = if i == 0 {
            e.from == (0, 0)
        } else {
            seq[i - 1].to == e.from
        };
        if !t.has_edge(*e) || !joins {
            return Err(LaceError::IllFormed(i));
        }
    }
    match seq.last() {
        Some(e) if e.to != (0, 0) => Err(LaceError::IllFormed(seq.len() - 1)),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockDerivation {
    pub ok: bool,
    /// Cancelled mirror pairs as positions in the input, innermost first.
    pub removals: Vec<(usize, usize)>,
    pub residual: Vec<OrientedEdge>,
}

/// Cancels adjacent mirror pairs until none remain and compares with the boundary.
pub fn verify_block_derivation(
    seq: &[OrientedEdge],
    k: usize,
) -> Result<BlockDerivation, LaceError> {
    let t = triangulate(k)?;
    check_well_formed(&t, seq)?;
    let mut stack: Vec<usize> = Vec::new();
    let mut removals = Vec::new();
    for (i, e) in seq.iter().enumerate() {
        match stack.last() {
            Some(&j) if seq[j] == e.inverse() => {
                stack.pop();
                removals.push((j, i));
            }
            _ => stack.push(i),
        }
    }
    let residual: Vec<_> = stack.iter().map(|&i| seq[i]).collect();
    Ok(BlockDerivation {
        ok: residual == t.boundary_word(),
        removals,
        residual,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LaceDecomposition {
    pub ok: bool,
    pub laces: Vec<Lace>,
    pub max_end: usize,
    pub max_end_length: f64,
}

fn lace_at(t: &Triangulation, seq: &[OrientedEdge], p: usize, n: usize) -> Option<Lace> {
    if seq[p].from != (0, 0) || p + 2 * n + 3 > seq.len() {
        return None;
    }
    let c = &seq[p + n..p + n + 3];
    let &f = t.left_face.get(&c[0])?;
    if t.left_face.get(&c[1]) != Some(&f)
        || t.left_face.get(&c[2]) != Some(&f)
        || c[2].to != c[0].from
    {
        return None;
    }
    let end = &seq[p..p + n];
    let back = &seq[p + n + 3..p + 2 * n + 3];
    if !end.iter().rev().zip(back).all(|(a, b)| *b == a.inverse()) {
        return None;
    }
    Some(Lace {
        face: f,
        start: p,
        end: end.to_vec(),
        cycle: [c[0], c[1], c[2]],
    })
}

/// Splits the sequence into laces with ends of at most `2k` edges, each
/// face used exactly once. Backtracks over the end length.
pub fn verify_lace_decomposition(
    seq: &[OrientedEdge],
    k: usize,
) -> Result<LaceDecomposition, LaceError> {
    let t = triangulate(k)?;
    check_well_formed(&t, seq)?;
    let mut used = vec![false; t.faces.len()];
    let mut laces: Vec<Lace> = Vec::new();
    // next end length to try at the current position
    let mut tries = vec![0usize];
    let mut pos = 0;
    let ok = loop {
        if pos == seq.len() {
            break laces.len() == t.faces.len();
        }
        let n = tries.last_mut().expect("frame");
        let mut found = None;
        while *n <= 2 * k && found.is_none() {
            found = lace_at(&t, seq, pos, *n).filter(|l| !used[l.face]);
            *n += 1;
        }
        match found {
            Some(l) => {
                used[l.face] = true;
                pos += l.len();
                laces.push(l);
                tries.push(0);
            }
            None => {
                tries.pop();
                match laces.pop() {
                    Some(l) => {
                        used[l.face] = false;
                        pos = l.start;
                    }
                    None => break false,
                }
            }
        }
    };
    if !ok {
        laces.clear();
    }
    let max_end = laces.iter().map(|l| l.end.len()).max().unwrap_or(0);
    let max_end_length = laces
        .iter()
        .map(|l| l.end.iter().map(|e| e.euclidean(k)).sum::<f64>())
        .fold(0.0, f64::max);
    Ok(LaceDecomposition {
        ok,
        laces,
        max_end,
        max_end_length,
    })
}

fn lace_of_step(laces: &[Lace], step: usize) -> usize {
    laces.partition_point(|l| l.start + l.len() <= step)
}

/// One frame per prefix, `frame_0001.svg` onwards. The root element
/// carries the step, the current lace and its face index.
pub fn emit_svg(seq: &EdgeSequence, out_dir: &Path) -> Result<Vec<PathBuf>, LaceError> {
    let t = triangulate(seq.k)?;
    std::fs::create_dir_all(out_dir)?;
    let scale = 480.0 / seq.k as f64;
    let pt = |v: Vertex| (20.0 + v.0 as f64 * scale, 500.0 - v.1 as f64 * scale);
    let mut grid = String::new();
    for &(a, b) in &t.edges {
        let (p, q) = (pt(a), pt(b));
        let _ = writeln!(
            grid,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#bbb"/>"##,
            p.0, p.1, q.0, q.1
        );
    }
    let mut files = Vec::with_capacity(seq.edges.len());
    for step in 1..=seq.edges.len() {
        let li = lace_of_step(&seq.laces, step - 1);
        let face = &t.faces[seq.laces[li].face];
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="520" height="520" data-step="{step}" data-lace="{li}" data-face="{}">"#,
            seq.laces[li].face
        );
        let corners: Vec<String> = face
            .corners
            .iter()
            .map(|&c| pt(c))
            .map(|(x, y)| format!("{x:.2},{y:.2}"))
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon points="{}" fill="#fd8" data-label="{}"/>"##,
            corners.join(" "),
            face.label()
        );
        s.push_str(&grid);
        for (i, e) in seq.edges[..step].iter().enumerate() {
            let (p, q) = (pt(e.from), pt(e.to));
            let colour = if i + 1 == step { "#c00" } else { "#036" };
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-width="2"/>"#,
                p.0, p.1, q.0, q.1
            );
        }
        s.push_str("</svg>\n");
        let path = out_dir.join(format!("frame_{step:04}.svg"));
        std::fs::write(&path, s)?;
        files.push(path);
    }
    Ok(files)
}

#[derive(Debug, Clone, Serialize)]
pub struct LaceReport {
    pub k: usize,
    pub faces: usize,
    pub edges: usize,
    pub boundary_edges: usize,
    pub length: usize,
    pub face_order: Vec<String>,
    pub block_derivation: bool,
    pub removals: usize,
    pub lace_decomposition: bool,
    pub max_end: usize,
    pub max_end_length: f64,
}

pub fn lace_report(k: usize) -> Result<(EdgeSequence, LaceReport), LaceError> {
    let t = triangulate(k)?;
    let seq = generate_sequence(k)?;
    let b = verify_block_derivation(&seq.edges, k)?;
    let d = verify_lace_decomposition(&seq.edges, k)?;
    let report = LaceReport {
        k,
        faces: t.faces.len(),
        edges: t.edges.len(),
        boundary_edges: t.boundary_edge_count(),
        length: seq.edges.len(),
        face_order: seq.laces.iter().map(|l| t.faces[l.face].label()).collect(),
        block_derivation: b.ok,
        removals: b.removals.len(),
        lace_decomposition: d.ok,
        max_end: d.max_end,
        max_end_length: d.max_end_length,
    };
    Ok((seq, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(vs: &[Vertex]) -> Vec<OrientedEdge> {
        vs.windows(2)
            .map(|w| OrientedEdge::new(w[0], w[1]))
            .collect()
    }

    #[test]
    fn counts() {
        for k in [1, 2, 8] {
            let t = triangulate(k).unwrap();
            assert_eq!(t.faces.len(), k * k);
            assert_eq!(t.boundary_edge_count(), 3 * k);
            assert_eq!(t.edges.len(), 3 * k * (k + 1) / 2);
            assert_eq!(t.vertices.len(), (k + 1) * (k + 2) / 2);
        }
        assert!(matches!(triangulate(0), Err(LaceError::BadK(0))));
        assert!(matches!(triangulate(65), Err(LaceError::BadK(65))));
    }

    #[test]
    fn single_face() {
        let s = generate_sequence(1).unwrap();
        let t = triangulate(1).unwrap();
        assert_eq!(s.edges, t.boundary_word());
        assert!(s.laces[0].end.is_empty());
    }

    #[test]
    fn k2_matches_reference_walk() {
        let s = generate_sequence(2).unwrap();
        let expected = walk(&[
            (0, 0),
            (1, 0),
            (2, 0),
            (1, 1),
            (1, 0),
            (0, 0),
            (1, 0),
            (1, 1),
            (0, 2),
            (0, 1),
            (1, 1),
            (1, 0),
            (0, 0),
            (1, 0),
            (1, 1),
            (0, 1),
            (1, 0),
            (0, 0),
            (1, 0),
            (0, 1),
            (0, 0),
        ]);
        assert_eq!(s.edges, expected);
        let t = triangulate(2).unwrap();
        let labels: Vec<_> = s.laces.iter().map(|l| t.faces[l.face].label()).collect();
        assert_eq!(labels, ["U(1,0)", "U(0,1)", "D(0,0)", "U(0,0)"]);
    }

    #[test]
    fn both_conditions_hold() {
        for k in 1..=8 {
            let s = generate_sequence(k).unwrap();
            let b = verify_block_derivation(&s.edges, k).unwrap();
            assert!(b.ok, "k={k}");
            let d = verify_lace_decomposition(&s.edges, k).unwrap();
            assert!(d.ok, "k={k}");
            assert_eq!(d.laces.len(), k * k);
            assert!(d.max_end <= 2 * k);
            assert!(d.max_end_length < 10.0);
            let ends: usize = d.laces.iter().map(|l| l.end.len()).sum();
            assert_eq!(b.removals.len(), ends + (3 * k * k - 3 * k) / 2);
            let parsed: Vec<_> = d.laces.iter().map(|l| l.face).collect();
            let built: Vec<_> = s.laces.iter().map(|l| l.face).collect();
            assert_eq!(parsed, built);
        }
    }

    #[test]
    fn peeling_examples() {
        let t = triangulate(3).unwrap();
        let eps = t.boundary_word();
        let b = verify_block_derivation(&eps, 3).unwrap();
        assert!(b.ok && b.removals.is_empty());
        let mut one = eps.clone();
        one.insert(1, OrientedEdge::new((1, 0), (1, 1)));
        one.insert(2, OrientedEdge::new((1, 1), (1, 0)));
        let b = verify_block_derivation(&one, 3).unwrap();
        assert!(b.ok);
        assert_eq!(b.removals, vec![(1, 2)]);
        let mut detour = eps.clone();
        detour.splice(1..1, walk(&[(1, 0), (1, 1), (0, 1), (1, 0)]));
        assert!(!verify_block_derivation(&detour, 3).unwrap().ok);
        let mut broken = eps;
        broken.swap(0, 1);
        assert!(matches!(
            verify_block_derivation(&broken, 3),
            Err(LaceError::IllFormed(0))
        ));
    }

    #[test]
    fn missing_lace_fails() {
        let s = generate_sequence(3).unwrap();
        let l = &s.laces[4];
        let mut cut = s.edges.clone();
        cut.drain(l.start..l.start + l.len());
        assert!(!verify_lace_decomposition(&cut, 3).unwrap().ok);
    }

    #[test]
    fn end_bound_is_enforced() {
        let t = triangulate(1).unwrap();
        let lace_with_end = |end: &[Vertex]| {
            let end = walk(end);
            let corner = t.faces[0]
                .corners
                .iter()
                .position(|&c| c == end.last().unwrap().to)
                .unwrap();
            let mut seq = end.clone();
            seq.extend(t.faces[0].cycle_from(corner));
            seq.extend(end.iter().rev().map(|e| e.inverse()));
            seq
        };
        assert!(
            verify_lace_decomposition(&lace_with_end(&[(0, 0), (1, 0), (0, 0)]), 1)
                .unwrap()
                .ok
        );
        assert!(
            !verify_lace_decomposition(&lace_with_end(&[(0, 0), (1, 0), (0, 0), (1, 0)]), 1)
                .unwrap()
                .ok
        );
        let k = 2;
        let seq = generate_sequence(k).unwrap();
        let mut long = Vec::new();
        let pad = walk(&[(0, 0), (1, 0), (0, 0), (1, 0), (0, 0)]);
        long.extend(pad.iter().copied());
        let first = &seq.laces[0];
        long.extend(first.edges());
        long.extend(pad.iter().rev().map(|e| e.inverse()));
        long.extend(seq.edges[first.len()..].iter().copied());
        assert!(verify_block_derivation(&long, k).unwrap().ok);
        assert!(!verify_lace_decomposition(&long, k).unwrap().ok);
        let d = verify_lace_decomposition(&seq.edges, k).unwrap();
        assert!(d.ok);
    }

    #[test]
    fn frames() {
        let dir = tempfile::tempdir().unwrap();
        let s = generate_sequence(1).unwrap();
        let files = emit_svg(&s, dir.path()).unwrap();
        assert_eq!(files.len(), 3);
        assert!(files[0].ends_with("frame_0001.svg"));
        let s = generate_sequence(2).unwrap();
        let files = emit_svg(&s, &dir.path().join("k2")).unwrap();
        assert_eq!(files.len(), s.edges.len());
        let text = std::fs::read_to_string(&files[6]).unwrap();
        assert!(text.contains(r#"data-lace="1""#));
    }

    #[test]
    fn large_k() {
        let (_, r) = lace_report(20).unwrap();
        assert!(r.block_derivation && r.lace_decomposition);
        assert!(r.max_end <= 40);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn generated_sequences_verify(k in 1usize..=16) {
                let s = generate_sequence(k).unwrap();
                prop_assert!(verify_block_derivation(&s.edges, k).unwrap().ok);
                let d = verify_lace_decomposition(&s.edges, k).unwrap();
                prop_assert!(d.ok);
                prop_assert!(d.max_end <= 2 * k);
            }

            #[test]
            fn inserted_blocks_peel(k in 1usize..=6, at in any::<prop::sample::Index>(), steps in 1usize..6, seed in any::<u64>()) {
                let t = triangulate(k).unwrap();
                let mut seq = t.boundary_word();
                let i = at.index(seq.len() + 1);
                let mut v = if i == 0 { (0, 0) } else { seq[i - 1].to };
                let mut walk = Vec::new();
                let mut r = seed;
                for _ in 0..steps {
                    let next: Vec<_> = t.edges.iter().filter_map(|&(a, b)| {
                        if a == v { Some(b) } else if b == v { Some(a) } else { None }
                    }).collect();
                    r = r.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let w = next[(r >> 33) as usize % next.len()];
                    walk.push(OrientedEdge::new(v, w));
                    v = w;
                }
                let mut block: Vec<_> = walk.clone();
                block.extend(walk.iter().rev().map(|e| e.inverse()));
                seq.splice(i..i, block);
                let b = verify_block_derivation(&seq, k).unwrap();
                prop_assert!(b.ok);
                prop_assert!(!b.removals.is_empty());
            }
        }
    }
}
