//! Finitely presented groups: free reduction, abelianization and
//! Todd–Coxeter coset enumeration (HLT strategy with coincidence handling).
//!
//! A letter is a nonzero `i32`: `+k` is generator `k−1`, `−k` its inverse.

use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::intmat::{smith, AbelianInvariants, IntMatrix, Smith};

pub type Letter = i32;

pub fn gen_letter(g: usize, exp: i32) -> Letter {
    let l = g as i32 + 1;
    if exp >= 0 {
        l
    } else {
        -l
    }
}

pub fn letter_gen(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Free reduction by a stack pass.
pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&l| -l).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Self {
        Presentation {
            generators,
            relators: Vec::new(),
        }
    }

    /// Adds the cyclic reduction of `r` unless it is trivial; reports whether
    /// anything was added.
    pub fn add_relator(&mut self, r: &[Letter]) -> bool {
        let r = cyclic_reduce(r);
        if r.is_empty() {
            return false;
        }
        self.relators.push(r);
        true
    }

    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_matrix(&self) -> IntMatrix {
        let n = self.generators.len();
        let mut m = IntMatrix::zeros(self.relators.len(), n);
        for (i, r) in self.relators.iter().enumerate() {
            for &l in r {
                m[(i, letter_gen(l))] += BigInt::from(l.signum());
            }
        }
        m
    }

    /// Human-readable word, e.g. `a b^-1`.
    pub fn word_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&l| {
                let g = &self.generators[letter_gen(l)];
                if l > 0 {
                    g.clone()
                } else {
                    format!("{g}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Abelianization with the Smith data for coordinates.
pub fn h1_smith(p: &Presentation) -> Smith {
    smith(&p.relator_matrix())
}

pub fn h1(p: &Presentation) -> AbelianInvariants {
    h1_smith(p).cokernel()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("coset enumeration exceeded {0} cosets")]
    LimitExceeded(usize),
}

struct Enumerator<'a> {
    rels: &'a [Vec<usize>],
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    limit: usize,
}

fn col(l: Letter) -> usize {
    2 * letter_gen(l) + usize::from(l < 0)
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl<'a> Enumerator<'a> {
    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), EnumerationError> {
        if self.table.len() >= self.limit {
            return Err(EnumerationError::LimitExceeded(self.limit));
        }
        let d = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.parent.push(d);
        self.table[c][x] = Some(d);
        self.table[d][inv_col(x)] = Some(c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.cols {
                let Some(f) = self.table[e][x] else { continue };
                if self.table[f][inv_col(x)] == Some(e) {
                    self.table[f][inv_col(x)] = None;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                if let Some(t) = self.table[e1][x] {
                    self.merge(f1, t, &mut queue);
                } else if let Some(t) = self.table[f1][inv_col(x)] {
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = Some(f1);
                    self.table[f1][inv_col(x)] = Some(e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), EnumerationError> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j {
                match self.table[f][w[i as usize]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.table[b][inv_col(w[j as usize])] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.table[f][x] = Some(b);
                self.table[b][inv_col(x)] = Some(f);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

/// A complete coset table: `action[c][col]` is the coset reached from `c`
/// by the letter in column `col` (`2g` for generator `g`, `2g+1` for its
/// inverse). Coset 0 is the subgroup itself.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub action: Vec<Vec<usize>>,
    pub defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.action.len()
    }

    pub fn apply(&self, c: usize, w: &[Letter]) -> usize {
        w.iter().fold(c, |c, &l| self.action[c][col(l)])
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
pub fn enumerate_cosets(
    p: &Presentation,
    subgroup: &[Vec<Letter>],
    coset_limit: usize,
) -> Result<CosetTable, EnumerationError> {
    let cols = 2 * p.n_generators();
    let to_cols = |w: &Vec<Letter>| w.iter().map(|&l| col(l)).collect::<Vec<_>>();
    let rels: Vec<Vec<usize>> = p.relators.iter().map(to_cols).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect();
    let mut e = Enumerator {
        rels: &rels,
        cols,
        table: vec![vec![None; cols]],
        parent: vec![0],
        limit: coset_limit.max(1),
    };
    for h in &subs {
        e.scan_and_fill(0, h)?;
    }
    let mut c = 0;
    while c < e.table.len() {
        for r in e.rels {
            if !e.live(c) {
                break;
            }
            e.scan_and_fill(c, r)?;
        }
        for x in 0..cols {
            if e.live(c) && e.table[c][x].is_none() {
                e.define(c, x)?;
            }
        }
        c += 1;
    }
    let defined = e.table.len();
    let live: Vec<usize> = (0..e.table.len()).filter(|&c| e.live(c)).collect();
    let mut renum = vec![usize::MAX; e.table.len()];
    for (i, &c) in live.iter().enumerate() {
        renum[c] = i;
    }
    let mut action = Vec::with_capacity(live.len());
    for &c in &live {
        let mut row = Vec::with_capacity(cols);
        for x in 0..cols {
            let d = e.table[c][x].expect("complete after enumeration");
            row.push(renum[e.rep(d)]);
        }
        action.push(row);
    }
    Ok(CosetTable { action, defined })
}

/// A finite group given by its regular coset table. Element `i` is the
/// coset reached by `reps[i]`; element 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    pub table: CosetTable,
    pub reps: Vec<Vec<Letter>>,
    n_generators: usize,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.table.index()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn eval(&self, w: &[Letter]) -> usize {
        self.table.apply(0, w)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.apply(a, &self.reps[b])
    }

    pub fn inv(&self, a: usize) -> usize {
        self.eval(&invert(&self.reps[a]))
    }

    pub fn generator(&self, g: usize) -> usize {
        self.eval(&[gen_letter(g, 1)])
    }

    /// Does `elems` generate the whole group?
    pub fn generated_by(&self, elems: &[usize]) -> bool {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &e in elems {
                let b = self.mul(a, e);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

pub fn finite_group(p: &Presentation, coset_limit: usize) -> Result<FiniteGroup, EnumerationError> {
    let table = enumerate_cosets(p, &[], coset_limit)?;
    let mut reps: Vec<Option<Vec<Letter>>> = vec![None; table.index()];
    reps[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for g in 0..p.n_generators() {
            for exp in [1, -1] {
                let l = gen_letter(g, exp);
                let d = table.action[c][col(l)];
                if reps[d].is_none() {
                    let mut w = reps[c].clone().expect("visited");
                    w.push(l);
                    reps[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
    }
    let reps = reps
        .into_iter()
        .map(|r| r.expect("regular table is connected"))
        .collect();
    Ok(FiniteGroup {
        table,
        reps,
        n_generators: p.n_generators(),
    })
}
