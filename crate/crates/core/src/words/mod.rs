//! Well-formed words over a local groupoid, contraction/expansion moves and
//! the bounded search for `∼`.
//!
//! A word `(w₀, …, w_{n−1})` is read as the composite `w₀·w₁·…`, so
//! `src(wᵢ) = tgt(wᵢ₊₁)`; its source is `src(w_{n−1})` and its target
//! `tgt(w₀)`.

pub mod ac;

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::groupoid::{ArrowIx, FiniteLocalGroupoid, ObjIx};

pub use ac::{
    ac_build, associators, completion_kernel, AcArrow, AcBuild, AcError, AcGroupoid, AcLimits,
    AcOutcome, AssociatorCert, AssociatorSet, KernelReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("letters {0} and {1} do not compose")]
    IllFormed(usize, usize),
    #[error("words have different endpoints")]
    SourceTargetMismatch,
    #[error("move {index} does not apply: {reason}")]
    BadMove { index: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<ArrowIx>);

impl Word {
    pub fn new(g: &FiniteLocalGroupoid, letters: Vec<ArrowIx>) -> Result<Word, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        if let Some(&a) = letters.iter().find(|&&a| a >= g.n_arrows()) {
            return Err(WordError::UnknownArrow(a.to_string()));
        }
        for i in 0..letters.len() - 1 {
            if !g.composable(letters[i], letters[i + 1]) {
                return Err(WordError::IllFormed(i, i + 1));
            }
        }
        Ok(Word(letters))
    }

    /// Parses comma-separated arrow ids, e.g. `"1,1,-1"`.
    pub fn parse(g: &FiniteLocalGroupoid, s: &str) -> Result<Word, WordError> {
        let letters = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                g.find_arrow(t)
                    .ok_or_else(|| WordError::UnknownArrow(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(g, letters)
    }

    pub fn single(a: ArrowIx) -> Word {
        Word(vec![a])
    }

    pub fn letters(&self) -> &[ArrowIx] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn src(&self, g: &FiniteLocalGroupoid) -> ObjIx {
        g.src(*self.0.last().expect("words are nonempty"))
    }

    pub fn tgt(&self, g: &FiniteLocalGroupoid) -> ObjIx {
        g.tgt(self.0[0])
    }

    pub fn ids(&self, g: &FiniteLocalGroupoid) -> Vec<String> {
        self.0.iter().map(|&a| g.id(a).to_string()).collect()
    }

    pub fn show(&self, g: &FiniteLocalGroupoid) -> String {
        format!("({})", self.ids(g).join(", "))
    }
}

/// A single rewriting step. A contraction replaces positions `index`,
/// `index+1` by their product; an expansion splits position `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    Contraction {
        index: usize,
        left: ArrowIx,
        right: ArrowIx,
        product: ArrowIx,
    },
    Expansion {
        index: usize,
        product: ArrowIx,
        left: ArrowIx,
        right: ArrowIx,
    },
}

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::Contraction {
                index,
                left,
                right,
                product,
            } => Move::Expansion {
                index,
                product,
                left,
                right,
            },
            Move::Expansion {
                index,
                product,
                left,
                right,
            } => Move::Contraction {
                index,
                left,
                right,
                product,
            },
        }
    }

    pub fn is_contraction(&self) -> bool {
        matches!(self, Move::Contraction { .. })
    }

    /// Applies the move after checking it against the word and the table.
    pub fn apply(&self, g: &FiniteLocalGroupoid, w: &[ArrowIx]) -> Result<Vec<ArrowIx>, String> {
        match *self {
            Move::Contraction {
                index,
                left,
                right,
                product,
            } => {
                if index + 1 >= w.len() || w[index] != left || w[index + 1] != right {
                    return Err("pair not present".into());
                }
                if g.mul(left, right) != Some(product) {
                    return Err(format!(
                        "({}, {}) does not multiply to {}",
                        g.id(left),
                        g.id(right),
                        g.id(product)
                    ));
                }
                let mut out = w.to_vec();
                out.splice(index..index + 2, [product]);
                Ok(out)
            }
            Move::Expansion {
                index,
                product,
                left,
                right,
            } => {
                if index >= w.len() || w[index] != product {
                    return Err("letter not present".into());
                }
                if g.mul(left, right) != Some(product) {
                    return Err(format!(
                        "({}, {}) does not multiply to {}",
                        g.id(left),
                        g.id(right),
                        g.id(product)
                    ));
                }
                let mut out = w.to_vec();
                out.splice(index..index + 1, [left, right]);
                Ok(out)
            }
        }
    }

    pub fn to_json(&self, g: &FiniteLocalGroupoid) -> Value {
        match *self {
            Move::Contraction {
                index,
                left,
                right,
                product,
            } => json!({
                "kind": "contraction", "index": index,
                "left": g.id(left), "right": g.id(right), "product": g.id(product),
            }),
            Move::Expansion {
                index,
                product,
                left,
                right,
            } => json!({
                "kind": "expansion", "index": index,
                "product": g.id(product), "left": g.id(left), "right": g.id(right),
            }),
        }
    }
}

/// A start word and a sequence of moves; a certificate for `∼`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: Word,
    pub moves: Vec<Move>,
}

impl MoveTrace {
    pub fn empty(start: Word) -> Self {
        MoveTrace {
            start,
            moves: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// All intermediate words, starting with `start`.
    pub fn words(&self, g: &FiniteLocalGroupoid) -> Result<Vec<Word>, WordError> {
        let mut cur = self.start.0.clone();
        let mut out = vec![self.start.clone()];
        for (index, m) in self.moves.iter().enumerate() {
            cur = m
                .apply(g, &cur)
                .map_err(|reason| WordError::BadMove { index, reason })?;
            out.push(Word(cur.clone()));
        }
        Ok(out)
    }

    pub fn replay(&self, g: &FiniteLocalGroupoid) -> Result<Word, WordError> {
        Ok(self.words(g)?.pop().expect("at least the start word"))
    }

    /// The same path walked backwards, starting from `end`.
    pub fn reversed(&self, end: Word) -> MoveTrace {
        MoveTrace {
            start: end,
            moves: self.moves.iter().rev().map(|m| m.inverse()).collect(),
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn then(mut self, other: &MoveTrace) -> MoveTrace {
        self.moves.extend_from_slice(&other.moves);
        self
    }

    pub fn to_json(&self, g: &FiniteLocalGroupoid) -> Value {
        let end = self.replay(g).map(|w| w.ids(g)).unwrap_or_default();
        json!({
            "start": self.start.ids(g),
            "moves": self.moves.iter().map(|m| m.to_json(g)).collect::<Vec<_>>(),
            "end": end,
        })
    }
}

/// Search limits. `max_len` bounds intermediate word length, `max_steps`
/// the number of generated neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_len: usize,
    pub max_steps: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_len: 12,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equivalent(MoveTrace),
    NotWithinBounds { explored: usize },
}

impl Verdict {
    pub fn trace(&self) -> Option<&MoveTrace> {
        match self {
            Verdict::Equivalent(t) => Some(t),
            Verdict::NotWithinBounds { .. } => None,
        }
    }
}

/// Every single-step neighbour of `w`, contractions first.
pub fn moves_from(w: &Word, g: &FiniteLocalGroupoid) -> Vec<(Move, Word)> {
    let mut out = Vec::new();
    neighbours(g, &w.0, usize::MAX, false, |m, v| out.push((m, Word(v))));
    out
}

fn neighbours(
    g: &FiniteLocalGroupoid,
    w: &[ArrowIx],
    max_len: usize,
    expansions_only: bool,
    mut f: impl FnMut(Move, Vec<ArrowIx>),
) {
    if !expansions_only {
        for i in 0..w.len().saturating_sub(1) {
            if let Some(p) = g.mul(w[i], w[i + 1]) {
                let mut v = Vec::with_capacity(w.len() - 1);
                v.extend_from_slice(&w[..i]);
                v.push(p);
                v.extend_from_slice(&w[i + 2..]);
                f(
                    Move::Contraction {
                        index: i,
                        left: w[i],
                        right: w[i + 1],
                        product: p,
                    },
                    v,
                );
            }
        }
    }
    if w.len() < max_len {
        for (i, &a) in w.iter().enumerate() {
            for &(l, r) in g.factorizations(a) {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.extend_from_slice(&w[..i]);
                v.push(l);
                v.push(r);
                v.extend_from_slice(&w[i + 1..]);
                f(
                    Move::Expansion {
                        index: i,
                        product: a,
                        left: l,
                        right: r,
                    },
                    v,
                );
            }
        }
    }
}

type Key = Box<[u32]>;

fn key(w: &[ArrowIx]) -> Key {
    w.iter().map(|&a| a as u32).collect()
}

fn unkey(k: &Key) -> Vec<ArrowIx> {
    k.iter().map(|&a| a as usize).collect()
}

/// One side of a breadth-first search over words.
pub(crate) struct Explorer {
    nodes: Vec<Key>,
    index: HashMap<Key, usize>,
    parent: Vec<Option<(usize, Move)>>,
    depth: Vec<u32>,
    frontier: Vec<usize>,
}

pub(crate) struct OutOfSteps;

impl Explorer {
    pub(crate) fn new(start: &[ArrowIx]) -> Self {
        let k = key(start);
        Explorer {
            nodes: vec![k.clone()],
            index: HashMap::from([(k, 0)]),
            parent: vec![None],
            depth: vec![0],
            frontier: vec![0],
        }
    }

    pub(crate) fn frontier_is_empty(&self) -> bool {
        self.frontier.is_empty()
    }

    pub(crate) fn word(&self, id: usize) -> Vec<ArrowIx> {
        unkey(&self.nodes[id])
    }

    pub(crate) fn ids(&self) -> std::ops::Range<usize> {
        0..self.nodes.len()
    }

    /// Expands one full layer; returns the newly discovered node ids.
    pub(crate) fn expand(
        &mut self,
        g: &FiniteLocalGroupoid,
        max_len: usize,
        expansions_only: bool,
        steps: &mut usize,
        max_steps: usize,
    ) -> Result<Vec<usize>, OutOfSteps> {
        let frontier = std::mem::take(&mut self.frontier);
        let mut fresh = Vec::new();
        for id in frontier {
            let w = unkey(&self.nodes[id]);
            let d = self.depth[id] + 1;
            let mut exhausted = false;
            neighbours(g, &w, max_len, expansions_only, |m, v| {
                if exhausted {
                    return;
                }
                *steps += 1;
                if *steps > max_steps {
                    exhausted = true;
                    return;
                }
                let k = key(&v);
                if !self.index.contains_key(&k) {
                    let nid = self.nodes.len();
                    self.index.insert(k.clone(), nid);
                    self.nodes.push(k);
                    self.parent.push(Some((id, m)));
                    self.depth.push(d);
                    fresh.push(nid);
                }
            });
            if exhausted {
                return Err(OutOfSteps);
            }
        }
        self.frontier = fresh.clone();
        Ok(fresh)
    }

    fn lookup(&self, k: &Key) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Moves from the root to `id`.
    pub(crate) fn path_to(&self, mut id: usize) -> Vec<Move> {
        let mut out = Vec::new();
        while let Some((p, m)) = self.parent[id] {
            out.push(m);
            id = p;
        }
        out.reverse();
        out
    }
}

fn check_pair(w1: &Word, w2: &Word, g: &FiniteLocalGroupoid) -> Result<(), WordError> {
    Word::new(g, w1.0.clone())?;
    Word::new(g, w2.0.clone())?;
    if w1.src(g) != w2.src(g) || w1.tgt(g) != w2.tgt(g) {
        return Err(WordError::SourceTargetMismatch);
    }
    Ok(())
}

fn bidirectional(
    w1: &Word,
    w2: &Word,
    g: &FiniteLocalGroupoid,
    bounds: Bounds,
    expansions_only: bool,
    steps: &mut usize,
) -> Option<MoveTrace> {
    if w1 == w2 {
        return Some(MoveTrace::empty(w1.clone()));
    }
    let max_len = bounds.max_len.max(w1.len()).max(w2.len());
    let mut sides = [Explorer::new(&w1.0), Explorer::new(&w2.0)];
    loop {
        if sides[0].frontier_is_empty() || sides[1].frontier_is_empty() {
            return None;
        }
        let s = usize::from(sides[1].frontier.len() < sides[0].frontier.len());
        let fresh = sides[s]
            .expand(g, max_len, expansions_only, steps, bounds.max_steps)
            .ok()?;
        // the whole layer is in; keep the shortest meeting point
        let mut best: Option<(u32, usize, usize)> = None;
        for id in fresh {
            if let Some(other) = sides[1 - s].lookup(&sides[s].nodes[id]) {
                let total = sides[s].depth[id] + sides[1 - s].depth[other];
                if best.map_or(true, |(b, _, _)| total < b) {
                    best = Some((total, id, other));
                }
            }
        }
        if let Some((_, id, other)) = best {
            let (a, b) = if s == 0 { (id, other) } else { (other, id) };
            let forward = sides[0].path_to(a);
            let back = sides[1].path_to(b);
            let mut moves = forward;
            moves.extend(back.iter().rev().map(|m| m.inverse()));
            return Some(MoveTrace {
                start: w1.clone(),
                moves,
            });
        }
    }
}

/// Semi-decides `w1 ∼ w2`: first looks for a common expansion `w₃` with
/// `w1 ≤ w₃ ≥ w2`, then falls back to a full bidirectional search.
pub fn equivalent(
    w1: &Word,
    w2: &Word,
    g: &FiniteLocalGroupoid,
    bounds: Bounds,
) -> Result<Verdict, WordError> {
    check_pair(w1, w2, g)?;
    let mut steps = 0;
    let upper = Bounds {
        max_len: bounds.max_len,
        max_steps: bounds.max_steps / 4,
    };
    if let Some(t) = bidirectional(w1, w2, g, upper, true, &mut steps) {
        return Ok(Verdict::Equivalent(t));
    }
    let spent = steps;
    let mut steps = 0;
    let rest = Bounds {
        max_len: bounds.max_len,
        max_steps: bounds.max_steps.saturating_sub(spent),
    };
    Ok(match bidirectional(w1, w2, g, rest, false, &mut steps) {
        Some(t) => Verdict::Equivalent(t),
        None => Verdict::NotWithinBounds {
            explored: spent + steps,
        },
    })
}

/// Like [`equivalent`] but always returns a shortest trace.
pub fn equivalent_minimal(
    w1: &Word,
    w2: &Word,
    g: &FiniteLocalGroupoid,
    bounds: Bounds,
) -> Result<Verdict, WordError> {
    check_pair(w1, w2, g)?;
    let mut steps = 0;
    Ok(match bidirectional(w1, w2, g, bounds, false, &mut steps) {
        Some(t) => Verdict::Equivalent(t),
        None => Verdict::NotWithinBounds { explored: steps },
    })
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equivalent(t) => write!(f, "equivalent ({} moves)", t.len()),
            Verdict::NotWithinBounds { explored } => {
                write!(f, "not within bounds ({explored} steps)")
            }
        }
    }
}

/// A random composable word of length `len`.
pub fn random_word<R: Rng>(g: &FiniteLocalGroupoid, rng: &mut R, len: usize) -> Word {
    let mut w = vec![rng.gen_range(0..g.n_arrows())];
    while w.len() < len {
        let s = g.src(*w.last().expect("nonempty"));
        let next: Vec<_> = (0..g.n_arrows()).filter(|&a| g.tgt(a) == s).collect();
        w.push(next[rng.gen_range(0..next.len())]);
    }
    Word::new(g, w).expect("composable by construction")
}

/// Equivalent pairs `(w, w′)`: `w` has 1 to 3 letters and `w′` comes from
/// up to four random moves that stay within 5 letters.
pub fn random_equivalent_pairs(g: &FiniteLocalGroupoid, seed: u64, n: usize) -> Vec<(Word, Word)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            let start = random_word(g, &mut rng, len);
            let mut w = start.clone();
            for _ in 0..rng.gen_range(1..=4) {
                let next: Vec<_> = moves_from(&w, g)
                    .into_iter()
                    .filter(|(_, v)| v.len() <= 5)
                    .collect();
                if next.is_empty() {
                    break;
                }
                w = next[rng.gen_range(0..next.len())].1.clone();
            }
            (start, w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic, interval_group};

    #[test]
    fn neighbours_in_interval_group() {
        let g = interval_group(1, None).unwrap();
        let w = Word::parse(&g, "1,1").unwrap();
        let n = moves_from(&w, &g);
        assert!(n.iter().all(|(m, _)| !m.is_contraction()));
        let one = g.find_arrow("1").unwrap();
        let zero = g.find_arrow("0").unwrap();
        // 1 = 1+0 = 0+1, each at two positions
        assert_eq!(n.len(), 4);
        assert!(n.iter().any(|(_, v)| v.letters() == [one, zero, one]));
    }

    #[test]
    fn unit_contracts() {
        let g = cyclic(3).unwrap();
        let w = Word::parse(&g, "2,0").unwrap();
        let v = equivalent(&w, &Word::parse(&g, "2").unwrap(), &g, Bounds::default()).unwrap();
        let t = v.trace().unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.replay(&g).unwrap().ids(&g), vec!["2"]);
    }

    #[test]
    fn z3_cube_is_trivial() {
        let g = cyclic(3).unwrap();
        let w = Word::parse(&g, "1,1,1").unwrap();
        let u = Word::parse(&g, "0").unwrap();
        let v = equivalent_minimal(&w, &u, &g, Bounds::default()).unwrap();
        let t = v.trace().unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.replay(&g).unwrap(), u);
    }

    #[test]
    fn wrapped_interval_stays_unresolved() {
        let g = interval_group(1, Some(5)).unwrap();
        let w = Word::parse(&g, "1,1,1,1,1").unwrap();
        let u = Word::parse(&g, "0").unwrap();
        let v = equivalent(
            &w,
            &u,
            &g,
            Bounds {
                max_len: 7,
                max_steps: 200_000,
            },
        )
        .unwrap();
        assert!(matches!(v, Verdict::NotWithinBounds { .. }));
    }

    #[test]
    fn endpoints_must_match() {
        let g = crate::groupoid::pair_restriction(2, &[(0, 1)]).unwrap();
        let a = Word::parse(&g, "v0<v0").unwrap();
        let b = Word::parse(&g, "v1<v1").unwrap();
        assert_eq!(
            equivalent(&a, &b, &g, Bounds::default()),
            Err(WordError::SourceTargetMismatch)
        );
        assert!(matches!(
            Word::parse(&g, "v0<v0,v1<v1"),
            Err(WordError::IllFormed(0, 1))
        ));
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let g = cyclic(3).unwrap();
        let w = Word::parse(&g, "1,2").unwrap();
        let bad = MoveTrace {
            start: w,
            moves: vec![Move::Contraction {
                index: 0,
                left: 1,
                right: 2,
                product: 1,
            }],
        };
        assert!(bad.replay(&g).is_err());
    }

    mod props {
        use super::*;
        use crate::groupoid::pair_restriction;
        use proptest::prelude::*;

        fn table(i: usize) -> FiniteLocalGroupoid {
            match i {
                0 => cyclic(4).unwrap(),
                1 => interval_group(1, None).unwrap(),
                _ => pair_restriction(4, &[(0, 1), (1, 2), (1, 3)]).unwrap(),
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn moves_undo(i in 0usize..3, seed in any::<u64>()) {
                let g = table(i);
                let (w, _) = random_equivalent_pairs(&g, seed, 1).pop().unwrap();
                for (m, v) in moves_from(&w, &g) {
                    let back = m.inverse().apply(&g, v.letters()).unwrap();
                    prop_assert_eq!(back.as_slice(), w.letters());
                }
            }

            #[test]
            fn walks_are_found_and_replay(i in 0usize..3, seed in any::<u64>()) {
                let g = table(i);
                let (w1, w2) = random_equivalent_pairs(&g, seed, 1).pop().unwrap();
                let b = Bounds { max_len: 7, max_steps: 200_000 };
                let v = equivalent(&w1, &w2, &g, b).unwrap();
                let t = v.trace().expect("walk pairs are equivalent");
                prop_assert_eq!(&t.start, &w1);
                prop_assert_eq!(t.replay(&g).unwrap(), w2);
            }
        }
    }
}
