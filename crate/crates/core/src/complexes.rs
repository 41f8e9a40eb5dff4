//! Ordered 2-complexes grown from a line `W_k` by expansions and
//! contractions, their boundary paths, labelings into the nerve, and
//! word-equivalence certificates built from move traces.
//!
//! A labeled edge `{u < v}` carrying `g` has `φ(u) = t(g)` and
//! `φ(v) = s(g)`, so a boundary path read from the source spells a word
//! left to right.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::groupoid::{ArrowIx, FiniteLocalGroupoid, ObjIx};
use crate::words::{
    equivalent_minimal, moves_from, Bounds, Move, MoveTrace, Verdict, Word, WordError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("W_k needs k >= 1")]
    EmptyLine,
    #[error("illegal move: {0}")]
    IllegalMove(String),
}

type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexMove {
    /// Splits a boundary edge `{u, w}` through a new vertex. Without a
    /// position the vertex goes halfway between `u` and its successor.
    Expansion {
        edge: Edge,
        position: Option<BigRational>,
    },
    /// Closes `{u, v}`, `{v, w}` with `u < v < w` by a new edge `{u, w}`.
    Contraction { edge1: Edge, edge2: Edge },
}

impl ComplexMove {
    pub fn to_json(&self) -> Value {
        match self {
            ComplexMove::Expansion { edge, position } => json!({
                "kind": "expansion", "edge": [edge.0, edge.1],
                "position": position.as_ref().map(|p| p.to_string()),
            }),
            ComplexMove::Contraction { edge1, edge2 } => json!({
                "kind": "contraction", "edge1": [edge1.0, edge1.1], "edge2": [edge2.0, edge2.1],
            }),
        }
    }
}

/// What a move added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveEffect {
    pub vertex: Option<usize>,
    pub edges: Vec<usize>,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedComplex2 {
    k: usize,
    positions: Vec<BigRational>,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, usize>,
    edge_faces: Vec<u8>,
    faces: Vec<[usize; 3]>,
    history: Vec<ComplexMove>,
}

impl OrderedComplex2 {
    pub fn from_wk(k: usize) -> Result<Self, ComplexError> {
        if k == 0 {
            return Err(ComplexError::EmptyLine);
        }
        let mut c = OrderedComplex2 {
            k,
            positions: (0..=k)
                .map(|i| BigRational::from_integer(BigInt::from(i)))
                .collect(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
            edge_faces: Vec::new(),
            faces: Vec::new(),
            history: Vec::new(),
        };
        for i in 0..k {
            c.add_edge(i, i + 1);
        }
        Ok(c)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> usize {
        let id = self.edges.len();
        self.edges.push((u, v));
        self.edge_index.insert((u, v), id);
        self.edge_faces.push(0);
        id
    }

    /// Orders a vertex pair by position.
    pub fn edge_key(&self, a: usize, b: usize) -> Edge {
        if self.positions[a] < self.positions[b] {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.positions.len() || b >= self.positions.len() {
            return None;
        }
        self.edge_index.get(&self.edge_key(a, b)).copied()
    }

    pub fn line_length(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.positions.len(), self.edges.len(), self.faces.len())
    }

    pub fn position(&self, v: usize) -> &BigRational {
        &self.positions[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn history(&self) -> &[ComplexMove] {
        &self.history
    }

    pub fn faces_on(&self, e: usize) -> u8 {
        self.edge_faces[e]
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.edge_faces[e] <= 1
    }

    fn successor(&self, u: usize) -> Option<&BigRational> {
        self.positions
            .iter()
            .filter(|p| **p > self.positions[u])
            .min()
    }

    fn boundary_edge(&self, e: Edge, what: &str) -> Result<usize, ComplexError> {
        let id = self
            .find_edge(e.0, e.1)
            .ok_or_else(|| ComplexError::IllegalMove(format!("{what} {e:?} is not an edge")))?;
        if !self.is_boundary_edge(id) {
            return Err(ComplexError::IllegalMove(format!(
                "{what} {e:?} already has two faces"
            )));
        }
        Ok(id)
    }

    /// Applies a move in place; checks the Euler bookkeeping afterwards.
    pub fn apply(&mut self, m: &ComplexMove) -> Result<MoveEffect, ComplexError> {
        let before = self.counts();
        let (effect, recorded, delta) = match m {
            ComplexMove::Expansion { edge, position } => {
                let id = self.boundary_edge(*edge, "edge")?;
                let (u, w) = self.edges[id];
                let p = match position {
                    Some(p) => {
                        if !(self.positions[u] < *p && *p < self.positions[w]) {
                            return Err(ComplexError::IllegalMove(format!(
                                "position {p} is not between the endpoints"
                            )));
                        }
                        if self.positions.contains(p) {
                            return Err(ComplexError::IllegalMove(format!(
                                "position {p} is taken"
                            )));
                        }
                        p.clone()
                    }
                    None => {
                        let next = self.successor(u).expect("w lies above u");
                        (self.positions[u].clone() + next)
                            / BigRational::from_integer(BigInt::from(2))
                    }
                };
                let v = self.positions.len();
                self.positions.push(p.clone());
                let e1 = self.add_edge(u, v);
                let e2 = self.add_edge(v, w);
                for e in [id, e1, e2] {
                    self.edge_faces[e] += 1;
                }
                self.faces.push([u, v, w]);
                let effect = MoveEffect {
                    vertex: Some(v),
                    edges: vec![e1, e2],
                    face: self.faces.len() - 1,
                };
                (
                    effect,
                    ComplexMove::Expansion {
                        edge: (u, w),
                        position: Some(p),
                    },
                    (1, 2, 1),
                )
            }
            ComplexMove::Contraction { edge1, edge2 } => {
                let a = self.boundary_edge(*edge1, "edge")?;
                let b = self.boundary_edge(*edge2, "edge")?;
                let (u, v) = self.edges[a];
                let (v2, w) = self.edges[b];
                if v != v2 {
                    return Err(ComplexError::IllegalMove(
                        "edges do not meet as u<v<w".into(),
                    ));
                }
                if self.find_edge(u, w).is_some() {
                    return Err(ComplexError::IllegalMove(format!(
                        "{{{u}, {w}}} is already an edge"
                    )));
                }
                let e = self.add_edge(u, w);
                for x in [a, b, e] {
                    self.edge_faces[x] += 1;
                }
                self.faces.push([u, v, w]);
                let effect = MoveEffect {
                    vertex: None,
                    edges: vec![e],
                    face: self.faces.len() - 1,
                };
                (
                    effect,
                    ComplexMove::Contraction {
                        edge1: (u, v),
                        edge2: (v, w),
                    },
                    (0, 1, 1),
                )
            }
        };
        let after = self.counts();
        assert_eq!(
            (after.0 - before.0, after.1 - before.1, after.2 - before.2),
            delta,
            "Euler bookkeeping"
        );
        self.history.push(recorded);
        Ok(effect)
    }

    pub fn apply_move(&self, m: &ComplexMove) -> Result<OrderedComplex2, ComplexError> {
        let mut c = self.clone();
        c.apply(m)?;
        Ok(c)
    }

    fn boundary_vertices(&self) -> BTreeSet<usize> {
        self.edges
            .iter()
            .zip(&self.edge_faces)
            .filter(|(_, &f)| f <= 1)
            .flat_map(|(&(u, v), _)| [u, v])
            .collect()
    }

    fn extreme(&self, max: bool) -> usize {
        let vs = self.boundary_vertices();
        let pick = |a: &&usize, b: &&usize| self.positions[**a].cmp(&self.positions[**b]);
        let v = if max {
            vs.iter().max_by(pick)
        } else {
            vs.iter().min_by(pick)
        };
        *v.expect("a good complex has boundary edges")
    }

    pub fn source(&self) -> usize {
        self.extreme(false)
    }

    pub fn target(&self) -> usize {
        self.extreme(true)
    }

    /// Every increasing path from source to target along boundary edges.
    pub fn boundary_paths(&self) -> Vec<Vec<usize>> {
        let mut up = vec![Vec::new(); self.positions.len()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if self.is_boundary_edge(i) {
                up[u].push(v);
            }
        }
        let (s, t) = (self.source(), self.target());
        let mut out = Vec::new();
        let mut stack = vec![vec![s]];
        while let Some(path) = stack.pop() {
            let last = *path.last().expect("nonempty");
            if last == t {
                out.push(path);
                continue;
            }
            for &v in up[last].iter().rev() {
                let mut p = path.clone();
                p.push(v);
                stack.push(p);
            }
        }
        out
    }

    pub fn is_boundary_path(&self, path: &[usize]) -> bool {
        path.first() == Some(&self.source())
            && path.last() == Some(&self.target())
            && path.windows(2).all(|p| {
                self.positions[p[0]] < self.positions[p[1]]
                    && self
                        .find_edge(p[0], p[1])
                        .is_some_and(|e| self.is_boundary_edge(e))
            })
    }

    /// Disk test: every edge is on a face, Euler characteristic 1, and the
    /// boundary edges form one cycle.
    pub fn is_disk(&self) -> bool {
        let (v, e, f) = self.counts();
        if f == 0 || self.edge_faces.contains(&0) || v + f != e + 1 {
            return false;
        }
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if self.is_boundary_edge(i) {
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
        }
        if adj.values().any(|n| n.len() != 2) {
            return false;
        }
        let start = *adj.keys().next().expect("nonempty boundary");
        let (mut prev, mut cur, mut len) = (start, adj[&start][0], 1);
        while cur != start {
            let n = &adj[&cur];
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
            len += 1;
        }
        len == adj.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "line_length": self.k,
            "vertices": self.positions.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
            "faces": self.faces,
            "history": self.history.iter().map(ComplexMove::to_json).collect::<Vec<_>>(),
        })
    }
}

/// A simplicial map to the nerve: objects on vertices, arrows on edges,
/// composable pairs on faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerveLabeling {
    pub vertices: Vec<ObjIx>,
    pub edges: Vec<ArrowIx>,
    pub faces: Vec<(ArrowIx, ArrowIx)>,
}

impl NerveLabeling {
    pub fn check(&self, c: &OrderedComplex2, g: &FiniteLocalGroupoid) -> Result<(), String> {
        let (v, e, f) = c.counts();
        if (self.vertices.len(), self.edges.len(), self.faces.len()) != (v, e, f) {
            return Err("labeling does not match the complex".into());
        }
        if self.edges.iter().any(|&a| a >= g.n_arrows())
            || self.vertices.iter().any(|&x| x >= g.n_objects())
        {
            return Err("label out of range".into());
        }
        for (i, &(a, b)) in c.edges.iter().enumerate() {
            let arrow = self.edges[i];
            if g.tgt(arrow) != self.vertices[a] || g.src(arrow) != self.vertices[b] {
                return Err(format!("edge {{{a}, {b}}} has mismatched endpoints"));
            }
        }
        for (i, &[u, v, w]) in c.faces.iter().enumerate() {
            let l = |a, b| self.edges[c.find_edge(a, b).expect("face edges exist")];
            let (left, right) = (l(u, v), l(v, w));
            if self.faces[i] != (left, right) {
                return Err(format!("face {i} label disagrees with its edges"));
            }
            if g.mul(left, right) != Some(l(u, w)) {
                return Err(format!(
                    "face {i}: ({}, {}) does not compose to {}",
                    g.id(left),
                    g.id(right),
                    g.id(l(u, w))
                ));
            }
        }
        Ok(())
    }

    pub fn read(&self, c: &OrderedComplex2, path: &[usize]) -> Option<Vec<ArrowIx>> {
        path.windows(2)
            .map(|p| c.find_edge(p[0], p[1]).map(|e| self.edges[e]))
            .collect()
    }
}

/// A good complex with a labeling whose boundary words are `w1`, `w2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub w1: Word,
    pub w2: Word,
    pub complex: OrderedComplex2,
    pub labeling: NerveLabeling,
    pub path1: Vec<usize>,
    pub path2: Vec<usize>,
}

impl Certificate {
    pub fn to_json(&self, g: &FiniteLocalGroupoid) -> Value {
        json!({
            "w1": self.w1.ids(g),
            "w2": self.w2.ids(g),
            "complex": self.complex.to_json(),
            "labeling": {
                "vertices": self.labeling.vertices.iter().map(|&x| g.object_name(x)).collect::<Vec<_>>(),
                "edges": self.labeling.edges.iter().map(|&a| g.id(a)).collect::<Vec<_>>(),
                "faces": self.labeling.faces.iter().map(|&(a, b)| [g.id(a), g.id(b)]).collect::<Vec<_>>(),
            },
            "path1": self.path1,
            "path2": self.path2,
            "boundary_paths": self.complex.boundary_paths().len(),
            "disk": self.complex.is_disk(),
        })
    }
}

struct ChordHit;

fn build_certificate(
    w1: &Word,
    w2: &Word,
    moves: &[Move],
    g: &FiniteLocalGroupoid,
) -> Result<Certificate, ChordHit> {
    let letters = w1.letters();
    let mut c = OrderedComplex2::from_wk(letters.len()).expect("words are nonempty");
    let mut vertices = vec![g.tgt(letters[0])];
    vertices.extend(letters.iter().map(|&a| g.src(a)));
    let mut edges = letters.to_vec();
    let mut faces = Vec::new();
    let mut front: Vec<usize> = (0..=letters.len()).collect();
    for m in moves {
        match *m {
            Move::Expansion {
                index, left, right, ..
            } => {
                let eff = c
                    .apply(&ComplexMove::Expansion {
                        edge: (front[index], front[index + 1]),
                        position: None,
                    })
                    .expect("front edges are boundary edges");
                let v = eff.vertex.expect("expansion adds a vertex");
                vertices.push(g.src(left));
                edges.extend([left, right]);
                faces.push((left, right));
                front.insert(index + 1, v);
            }
            Move::Contraction {
                index,
                left,
                right,
                product,
            } => {
                let (u, v, w) = (front[index], front[index + 1], front[index + 2]);
                if c.find_edge(u, w).is_some() {
                    return Err(ChordHit);
                }
                c.apply(&ComplexMove::Contraction {
                    edge1: (u, v),
                    edge2: (v, w),
                })
                .expect("checked above");
                edges.push(product);
                faces.push((left, right));
                front.remove(index + 1);
            }
        }
    }
    Ok(Certificate {
        w1: w1.clone(),
        w2: w2.clone(),
        complex: c,
        labeling: NerveLabeling {
            vertices,
            edges,
            faces,
        },
        path1: (0..=letters.len()).collect(),
        path2: front,
    })
}

/// Breadth-first search that remembers which front positions are already
/// joined by an edge, so that no contraction reuses one.
fn chord_aware_trace(
    w1: &Word,
    w2: &Word,
    g: &FiniteLocalGroupoid,
    bounds: Bounds,
) -> Option<Vec<Move>> {
    type State = (Vec<ArrowIx>, Vec<(usize, usize)>);
    let max_len = bounds.max_len.max(w1.len()).max(w2.len());
    let start: State = (w1.letters().to_vec(), Vec::new());
    let mut parent: HashMap<State, Option<(State, Move)>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    let mut steps = 0;
    while let Some(state) = queue.pop_front() {
        if state.0 == w2.letters() {
            let mut moves = Vec::new();
            let mut cur = state;
            while let Some(Some((prev, m))) = parent.get(&cur).cloned() {
                moves.push(m);
                cur = prev;
            }
            moves.reverse();
            return Some(moves);
        }
        let word = Word::new(g, state.0.clone()).expect("states are well-formed");
        for (m, next) in moves_from(&word, g) {
            steps += 1;
            if steps > bounds.max_steps {
                return None;
            }
            if next.len() > max_len {
                continue;
            }
            let chords: Vec<(usize, usize)> = match m {
                Move::Expansion { index, .. } => {
                    let shift = |p: usize| if p <= index { p } else { p + 1 };
                    let mut c: Vec<_> =
                        state.1.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
                    c.push((index, index + 2));
                    c
                }
                Move::Contraction { index, .. } => {
                    if state.1.contains(&(index, index + 2)) {
                        continue;
                    }
                    let shift = |p: usize| if p > index + 1 { p - 1 } else { p };
                    state
                        .1
                        .iter()
                        .filter(|&&(a, b)| a != index + 1 && b != index + 1)
                        .map(|&(a, b)| (shift(a), shift(b)))
                        .collect()
                }
            };
            let mut chords = chords;
            chords.sort_unstable();
            let key: State = (next.letters().to_vec(), chords);
            if !parent.contains_key(&key) {
                parent.insert(key.clone(), Some((state.clone(), m)));
                queue.push_back(key);
            }
        }
    }
    None
}

/// A certificate for `w1 ∼ w2` from a shortest move trace; `None` when no
/// trace is found within `bounds`.
pub fn certify_equivalence(
    w1: &Word,
    w2: &Word,
    g: &FiniteLocalGroupoid,
    bounds: Bounds,
) -> Result<Option<Certificate>, WordError> {
    let Verdict::Equivalent(trace) = equivalent_minimal(w1, w2, g, bounds)? else {
        return Ok(None);
    };
    if let Ok(c) = build_certificate(w1, w2, &trace.moves, g) {
        return Ok(Some(c));
    }
    Ok(chord_aware_trace(w1, w2, g, bounds).map(|moves| {
        build_certificate(w1, w2, &moves, g)
            .unwrap_or_else(|_| panic!("chord-aware traces avoid existing edges"))
    }))
}

/// Replays the complex's history as word moves from `w1` and checks that
/// it rebuilds the same complex, respects the labeling, and ends at `w2`.
pub fn verify_detailed(cert: &Certificate, g: &FiniteLocalGroupoid) -> Result<MoveTrace, String> {
    let c = &cert.complex;
    let lab = &cert.labeling;
    lab.check(c, g)?;
    let k = cert.w1.len();
    if k == 0 || c.line_length() != k {
        return Err("complex does not start from W_k with k = |w1|".into());
    }
    let mut replay = OrderedComplex2::from_wk(k).map_err(|e| e.to_string())?;
    let mut front: Vec<usize> = (0..=k).collect();
    if lab.read(&replay, &front).as_deref() != Some(cert.w1.letters()) {
        return Err("the initial line does not spell w1".into());
    }
    let mut word = cert.w1.letters().to_vec();
    let mut moves = Vec::new();
    let label = |a: usize, b: usize| {
        c.find_edge(a, b)
            .map(|e| lab.edges[e])
            .ok_or("missing edge".to_string())
    };
    for (n, cm) in c.history().iter().enumerate() {
        let m = match cm {
            ComplexMove::Expansion { edge: (u, w), .. } => {
                let index = front
                    .windows(2)
                    .position(|p| p == [*u, *w])
                    .ok_or(format!("move {n} is off the front"))?;
                let v = replay.positions.len();
                let eff = replay.apply(cm).map_err(|e| format!("move {n}: {e}"))?;
                debug_assert_eq!(eff.vertex, Some(v));
                front.insert(index + 1, v);
                Move::Expansion {
                    index,
                    product: label(*u, *w)?,
                    left: label(*u, v)?,
                    right: label(v, *w)?,
                }
            }
            ComplexMove::Contraction {
                edge1: (u, v),
                edge2: (_, w),
            } => {
                let index = front
                    .windows(3)
                    .position(|p| p == [*u, *v, *w])
                    .ok_or(format!("move {n} is off the front"))?;
                replay.apply(cm).map_err(|e| format!("move {n}: {e}"))?;
                front.remove(index + 1);
                Move::Contraction {
                    index,
                    left: label(*u, *v)?,
                    right: label(*v, *w)?,
                    product: label(*u, *w)?,
                }
            }
        };
        word = m.apply(g, &word).map_err(|e| format!("move {n}: {e}"))?;
        moves.push(m);
    }
    if replay != *c {
        return Err("history does not rebuild the complex".into());
    }
    if front != cert.path2 || cert.path1 != (0..=k).collect::<Vec<_>>() {
        return Err("paths do not match the replay".into());
    }
    if !c.is_boundary_path(&cert.path1) || !c.is_boundary_path(&cert.path2) {
        return Err("claimed paths are not boundary paths".into());
    }
    if word != cert.w2.letters() || lab.read(c, &cert.path2).as_deref() != Some(cert.w2.letters()) {
        return Err("the final boundary word is not w2".into());
    }
    Ok(MoveTrace {
        start: cert.w1.clone(),
        moves,
    })
}

pub fn verify_certificate(cert: &Certificate, g: &FiniteLocalGroupoid) -> bool {
    verify_detailed(cert, g).is_ok()
}

/// `1/2` as a rational, handy for explicit positions.
pub fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}
