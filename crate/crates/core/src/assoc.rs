//! Bracketings, partial evaluation, n-associativity checks and the greedy
//! restriction to an n-associative table.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::groupoid::{
    inv_domain, mult_domain, restrict, ArrowIx, FiniteLocalGroupoid, TableError,
};
use crate::words::{Move, MoveTrace, Word};

pub const MAX_LEAVES: usize = 12;
pub const DEFAULT_MAX_TUPLES: u128 = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssocError {
    #[error("bracketings of {0} leaves requested; the limit is {MAX_LEAVES}")]
    TooLarge(usize),
    #[error("order {0} is below 3")]
    OrderTooSmall(usize),
    #[error("{tuples} well-formed {m}-tuples exceed the search limit")]
    SearchSpaceTooLarge { m: usize, tuples: u128 },
    #[error("failure at {0:?} involves only unit-adjacent pairs")]
    CannotRestrict(Vec<String>),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// A full binary tree; leaves are read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bracketing {
    Leaf,
    Node(Rc<Bracketing>, Rc<Bracketing>),
}

impl Bracketing {
    pub fn leaves(&self) -> usize {
        match self {
            Bracketing::Leaf => 1,
            Bracketing::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Renders with the given leaf names, e.g. `((a b) c)`.
    pub fn render(&self, names: &[String]) -> String {
        fn go(b: &Bracketing, names: &[String], pos: &mut usize) -> String {
            match b {
                Bracketing::Leaf => {
                    *pos += 1;
                    names[*pos - 1].clone()
                }
                Bracketing::Node(l, r) => {
                    let a = go(l, names, pos);
                    let c = go(r, names, pos);
                    format!("({a} {c})")
                }
            }
        }
        go(self, names, &mut 0)
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracketing::Leaf => write!(f, "x"),
            Bracketing::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// All `Catalan(m−1)` bracketings of `m` leaves, ordered by the size of
/// the left subtree and then recursively.
pub fn bracketings(m: usize) -> Result<Vec<Rc<Bracketing>>, AssocError> {
    if m == 0 || m > MAX_LEAVES {
        return Err(AssocError::TooLarge(m));
    }
    let mut table: Vec<Vec<Rc<Bracketing>>> = vec![Vec::new(), vec![Rc::new(Bracketing::Leaf)]];
    for n in 2..=m {
        let mut level = Vec::new();
        for k in 1..n {
            for l in &table[k] {
                for r in &table[n - k] {
                    level.push(Rc::new(Bracketing::Node(l.clone(), r.clone())));
                }
            }
        }
        table.push(level);
    }
    Ok(table.swap_remove(m))
}

pub fn evaluate(w: &[ArrowIx], b: &Bracketing, g: &FiniteLocalGroupoid) -> Option<ArrowIx> {
    fn go(
        w: &[ArrowIx],
        b: &Bracketing,
        g: &FiniteLocalGroupoid,
        pos: &mut usize,
    ) -> Option<ArrowIx> {
        match b {
            Bracketing::Leaf => {
                *pos += 1;
                Some(w[*pos - 1])
            }
            Bracketing::Node(l, r) => {
                let a = go(w, l, g, pos)?;
                let c = go(w, r, g, pos)?;
                g.mul(a, c)
            }
        }
    }
    assert_eq!(w.len(), b.leaves(), "word length must match the leaf count");
    go(w, b, g, &mut 0)
}

/// The pairs multiplied while evaluating `b`, innermost first.
pub fn pairs_used(
    w: &[ArrowIx],
    b: &Bracketing,
    g: &FiniteLocalGroupoid,
) -> Option<Vec<(ArrowIx, ArrowIx)>> {
    fn go(
        w: &[ArrowIx],
        b: &Bracketing,
        g: &FiniteLocalGroupoid,
        pos: &mut usize,
        out: &mut Vec<(ArrowIx, ArrowIx)>,
    ) -> Option<ArrowIx> {
        match b {
            Bracketing::Leaf => {
                *pos += 1;
                Some(w[*pos - 1])
            }
            Bracketing::Node(l, r) => {
                let a = go(w, l, g, pos, out)?;
                let c = go(w, r, g, pos, out)?;
                out.push((a, c));
                g.mul(a, c)
            }
        }
    }
    let mut out = Vec::new();
    go(w, b, g, &mut 0, &mut out)?;
    Some(out)
}

/// Contractions carrying `w` to the single letter `b` evaluates to.
pub fn contraction_trace(w: &Word, b: &Bracketing, g: &FiniteLocalGroupoid) -> Option<MoveTrace> {
    fn go(
        cur: &mut Vec<ArrowIx>,
        b: &Bracketing,
        g: &FiniteLocalGroupoid,
        at: usize,
        moves: &mut Vec<Move>,
    ) -> Option<ArrowIx> {
        match b {
            Bracketing::Leaf => Some(cur[at]),
            Bracketing::Node(l, r) => {
                let left = go(cur, l, g, at, moves)?;
                let right = go(cur, r, g, at + 1, moves)?;
                let product = g.mul(left, right)?;
                cur.splice(at..at + 2, [product]);
                moves.push(Move::Contraction {
                    index: at,
                    left,
                    right,
                    product,
                });
                Some(product)
            }
        }
    }
    let mut cur = w.letters().to_vec();
    let mut moves = Vec::new();
    go(&mut cur, b, g, 0, &mut moves)?;
    Some(MoveTrace {
        start: w.clone(),
        moves,
    })
}

/// Every value some bracketing of `w` takes, with one bracketing each.
pub fn all_values(w: &[ArrowIx], g: &FiniteLocalGroupoid) -> BTreeMap<ArrowIx, Rc<Bracketing>> {
    let n = w.len();
    let leaf = Rc::new(Bracketing::Leaf);
    // dp[i][j]: values of w[i..=j]
    let mut dp: Vec<Vec<BTreeMap<ArrowIx, Rc<Bracketing>>>> = vec![vec![BTreeMap::new(); n]; n];
    for i in 0..n {
        dp[i][i].insert(w[i], leaf.clone());
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len - 1;
            let mut here = BTreeMap::new();
            for k in i..j {
                for (&a, la) in &dp[i][k] {
                    for (&c, rc) in &dp[k + 1][j] {
                        if let Some(p) = g.mul(a, c) {
                            here.entry(p).or_insert_with(|| {
                                Rc::new(Bracketing::Node(la.clone(), rc.clone()))
                            });
                        }
                    }
                }
            }
            dp[i][j] = here;
        }
    }
    std::mem::take(&mut dp[0][n - 1])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssocVerdict {
    Pass,
    Fail {
        m: usize,
        tuple: Vec<ArrowIx>,
        bracketing_a: Rc<Bracketing>,
        bracketing_b: Rc<Bracketing>,
        value_a: ArrowIx,
        value_b: ArrowIx,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocReport {
    pub order_checked: usize,
    pub tuples_checked: u64,
    pub verdict: AssocVerdict,
}

impl AssocReport {
    pub fn passed(&self) -> bool {
        self.verdict == AssocVerdict::Pass
    }

    pub fn to_json(&self, g: &FiniteLocalGroupoid) -> Value {
        let verdict = match &self.verdict {
            AssocVerdict::Pass => json!("pass"),
            AssocVerdict::Fail {
                m,
                tuple,
                bracketing_a,
                bracketing_b,
                value_a,
                value_b,
            } => {
                let names: Vec<String> = tuple.iter().map(|&a| g.id(a).to_string()).collect();
                json!({
                    "fail": {
                        "m": m,
                        "tuple": names,
                        "bracketing_a": bracketing_a.render(&names),
                        "bracketing_b": bracketing_b.render(&names),
                        "value_a": g.id(*value_a),
                        "value_b": g.id(*value_b),
                    }
                })
            }
        };
        json!({ "order_checked": self.order_checked, "tuples_checked": self.tuples_checked, "verdict": verdict })
    }
}

/// Number of well-formed `m`-tuples.
pub fn count_tuples(g: &FiniteLocalGroupoid, m: usize) -> u128 {
    // by[x]: tuples whose last letter has source x
    let mut by = vec![0u128; g.n_objects()];
    for a in g.arrows() {
        by[a.src] += 1;
    }
    for _ in 1..m {
        let mut next = vec![0u128; g.n_objects()];
        for a in g.arrows() {
            next[a.src] = next[a.src].saturating_add(by[a.tgt]);
        }
        by = next;
    }
    by.iter().fold(0u128, |s, &c| s.saturating_add(c))
}

struct Search<'a> {
    g: &'a FiniteLocalGroupoid,
    m: usize,
    tuple: Vec<ArrowIx>,
    // sets[j][i]: values of tuple[i..=j]
    sets: Vec<Vec<Vec<ArrowIx>>>,
    checked: u64,
}

impl Search<'_> {
    fn push(&mut self, a: ArrowIx) {
        let j = self.tuple.len();
        self.tuple.push(a);
        let mut col: Vec<Vec<ArrowIx>> = vec![Vec::new(); j + 1];
        col[j] = vec![a];
        for i in (0..j).rev() {
            let mut vals = Vec::new();
            for k in i..j {
                let left = &self.sets[k][i];
                let right = &col[k + 1];
                for &x in left {
                    for &y in right {
                        if let Some(p) = self.g.mul(x, y) {
                            vals.push(p);
                        }
                    }
                }
            }
            vals.sort_unstable();
            vals.dedup();
            col[i] = vals;
        }
        self.sets.push(col);
    }

    fn pop(&mut self) {
        self.tuple.pop();
        self.sets.pop();
    }

    fn dfs(&mut self) -> Option<Vec<ArrowIx>> {
        let d = self.tuple.len();
        if d == self.m {
            self.checked += 1;
            return (self.sets[d - 1][0].len() > 1).then(|| self.tuple.clone());
        }
        let candidates: Vec<ArrowIx> = match self.tuple.last() {
            None => (0..self.g.n_arrows()).collect(),
            Some(&last) => (0..self.g.n_arrows())
                .filter(|&b| self.g.composable(last, b))
                .collect(),
        };
        for b in candidates {
            self.push(b);
            let found = self.dfs();
            self.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

pub fn assoc_order(g: &FiniteLocalGroupoid, n: usize) -> Result<AssocReport, AssocError> {
    assoc_order_with(g, n, DEFAULT_MAX_TUPLES)
}

/// Checks every well-formed `m`-tuple for `m = 3..=n`; the witness is the
/// lexicographically first failing tuple of the smallest failing length.
pub fn assoc_order_with(
    g: &FiniteLocalGroupoid,
    n: usize,
    max_tuples: u128,
) -> Result<AssocReport, AssocError> {
    if n < 3 {
        return Err(AssocError::OrderTooSmall(n));
    }
    if n > MAX_LEAVES {
        return Err(AssocError::TooLarge(n));
    }
    let mut checked = 0;
    for m in 3..=n {
        let tuples = count_tuples(g, m);
        if tuples > max_tuples {
            return Err(AssocError::SearchSpaceTooLarge { m, tuples });
        }
        let mut s = Search {
            g,
            m,
            tuple: Vec::new(),
            sets: Vec::new(),
            checked: 0,
        };
        let found = s.dfs();
        checked += s.checked;
        if let Some(tuple) = found {
            let all = bracketings(m)?;
            let mut first: Option<(Rc<Bracketing>, ArrowIx)> = None;
            for b in all {
                let Some(v) = evaluate(&tuple, &b, g) else {
                    continue;
                };
                match &first {
                    None => first = Some((b, v)),
                    Some((a, va)) if *va != v => {
                        return Ok(AssocReport {
                            order_checked: n,
                            tuples_checked: checked,
                            verdict: AssocVerdict::Fail {
                                m,
                                tuple,
                                bracketing_a: a.clone(),
                                bracketing_b: b,
                                value_a: *va,
                                value_b: v,
                            },
                        });
                    }
                    Some(_) => {}
                }
            }
            unreachable!("interval sets reported two values");
        }
    }
    Ok(AssocReport {
        order_checked: n,
        tuples_checked: checked,
        verdict: AssocVerdict::Pass,
    })
}

/// Greedily removes non-unit pairs from 𝒰 until the table is
/// `n`-associative. Inverse pairs go last, taking their arrows out of 𝒱.
pub fn restrict_to_n_associative(
    g: &FiniteLocalGroupoid,
    n: usize,
) -> Result<FiniteLocalGroupoid, AssocError> {
    let mut cur = g.clone();
    loop {
        let report = assoc_order(&cur, n)?;
        let AssocVerdict::Fail {
            tuple,
            bracketing_a,
            bracketing_b,
            ..
        } = report.verdict
        else {
            return Ok(cur);
        };
        let mut used =
            pairs_used(&tuple, &bracketing_b, &cur).expect("witness bracketing is defined");
        used.extend(
            pairs_used(&tuple, &bracketing_a, &cur).expect("witness bracketing is defined"),
        );
        let plain = used
            .iter()
            .find(|&&(a, b)| !cur.is_unit_adjacent(a, b) && cur.inv(a) != Some(b));
        let mut keep_mult = mult_domain(&cur);
        let mut keep_inv = inv_domain(&cur);
        if let Some(&pair) = plain {
            keep_mult.remove(&pair);
        } else if let Some(&(a, b)) = used.iter().find(|&&(a, b)| !cur.is_unit_adjacent(a, b)) {
            keep_mult.remove(&(a, b));
            keep_mult.remove(&(b, a));
            keep_inv.remove(&a);
            keep_inv.remove(&b);
        } else {
            return Err(AssocError::CannotRestrict(
                tuple.iter().map(|&a| cur.id(a).to_string()).collect(),
            ));
        }
        cur = restrict(&cur, &keep_mult, &keep_inv)?;
    }
}

/// Pairs of 𝒰 removed by a restriction.
pub fn removed_pairs(
    before: &FiniteLocalGroupoid,
    after: &FiniteLocalGroupoid,
) -> BTreeSet<(ArrowIx, ArrowIx)> {
    mult_domain(before)
        .difference(&mult_domain(after))
        .copied()
        .collect()
}
