//! Truncated nerve of a local groupoid, simplicial identities and horn
//! filling.
//!
//! Level 0 holds `[x]` for each object, level 1 `[g]` for each arrow, and
//! level `m` the tuples `(g₁,…,g_m)` all of whose bracketings (of every
//! contiguous run) are defined and agree. Faces: `d₀` drops the first
//! letter, `dᵢ` multiplies letters `i` and `i+1`, `d_m` drops the last; on
//! level 1, `d₀g = s(g)` and `d₁g = t(g)`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{ArrowIx, FiniteLocalGroupoid};

pub const MAX_DIM: usize = 6;
pub const MAX_SIMPLICES: usize = 4_000_000;
const MAX_WITNESSES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NerveError {
    #[error("dimension {0} exceeds the limit {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("level {m} would hold more than {MAX_SIMPLICES} simplices")]
    SearchSpaceTooLarge { m: usize },
}

#[derive(Debug, Clone)]
pub struct SimplicialTruncation {
    m_max: usize,
    levels: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    degens: Vec<Vec<Vec<usize>>>,
}

/// Value of `t` under any bracketing, if every contiguous run of `t` has a
/// unique defined value.
fn coherent_value(g: &FiniteLocalGroupoid, t: &[ArrowIx]) -> Option<ArrowIx> {
    let n = t.len();
    let mut val = vec![vec![0usize; n]; n];
    for i in 0..n {
        val[i][i] = t[i];
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len - 1;
            let mut v = None;
            for k in i..j {
                let p = g.mul(val[i][k], val[k + 1][j])?;
                match v {
                    None => v = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
            val[i][j] = v?;
        }
    }
    Some(val[0][n - 1])
}

pub fn build_nerve(
    g: &FiniteLocalGroupoid,
    m_max: usize,
) -> Result<SimplicialTruncation, NerveError> {
    if m_max > MAX_DIM {
        return Err(NerveError::DimensionTooLarge(m_max));
    }
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..g.n_objects()).map(|x| vec![x]).collect()];
    if m_max >= 1 {
        levels.push((0..g.n_arrows()).map(|a| vec![a]).collect());
    }
    for m in 2..=m_max {
        let mut next = Vec::new();
        for t in &levels[m - 1] {
            let last = *t.last().expect("nonempty");
            for a in 0..g.n_arrows() {
                if !g.composable(last, a) {
                    continue;
                }
                let mut cand = t.clone();
                cand.push(a);
                if coherent_value(g, &cand).is_some() {
                    next.push(cand);
                    if next.len() > MAX_SIMPLICES {
                        return Err(NerveError::SearchSpaceTooLarge { m });
                    }
                }
            }
        }
        levels.push(next);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let mut faces = vec![Vec::new()];
    for m in 1..=m_max {
        let mut fm = Vec::with_capacity(levels[m].len());
        for s in &levels[m] {
            let f: Vec<usize> = face_tuples(g, s, m)
                .iter()
                .map(|t| index[m - 1][t])
                .collect();
            fm.push(f);
        }
        faces.push(fm);
    }
    let mut degens = Vec::new();
    for m in 0..m_max {
        let mut dm = Vec::with_capacity(levels[m].len());
        for s in &levels[m] {
            let d: Vec<usize> = degeneracy_tuples(g, s, m)
                .iter()
                .map(|t| index[m + 1][t])
                .collect();
            dm.push(d);
        }
        degens.push(dm);
    }
    Ok(SimplicialTruncation {
        m_max,
        levels,
        index,
        faces,
        degens,
    })
}

fn face_tuples(g: &FiniteLocalGroupoid, s: &[usize], m: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![g.src(s[0])], vec![g.tgt(s[0])]];
    }
    let mut out = Vec::with_capacity(m + 1);
    out.push(s[1..].to_vec());
    for i in 1..m {
        let mut t = s[..i - 1].to_vec();
        t.push(g.mul(s[i - 1], s[i]).expect("nerve simplices multiply"));
        t.extend_from_slice(&s[i + 1..]);
        out.push(t);
    }
    out.push(s[..m - 1].to_vec());
    out
}

fn degeneracy_tuples(g: &FiniteLocalGroupoid, s: &[usize], m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![g.unit(s[0])]];
    }
    (0..=m)
        .map(|i| {
            let u = if i == 0 {
                g.unit(g.tgt(s[0]))
            } else {
                g.unit(g.src(s[i - 1]))
            };
            let mut t = s.to_vec();
            t.insert(i, u);
            t
        })
        .collect()
}

impl SimplicialTruncation {
    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn level(&self, m: usize) -> &[Vec<usize>] {
        &self.levels[m]
    }

    pub fn count(&self, m: usize) -> usize {
        self.levels[m].len()
    }

    pub fn find(&self, m: usize, s: &[usize]) -> Option<usize> {
        self.index[m].get(s).copied()
    }

    pub fn face(&self, m: usize, s: usize, i: usize) -> usize {
        self.faces[m][s][i]
    }

    pub fn degeneracy(&self, m: usize, s: usize, i: usize) -> usize {
        self.degens[m][s][i]
    }

    /// Is the stored simplex in the image of some degeneracy?
    pub fn is_degenerate(&self, m: usize, s: usize) -> bool {
        m > 0 && (0..m).any(|i| self.degens[m - 1][self.faces[m][s][i]][i] == s)
    }

    /// Overwrites one face entry; for fault-injection tests.
    pub fn set_face(&mut self, m: usize, s: usize, i: usize, target: usize) {
        self.faces[m][s][i] = target;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<String>,
}

pub fn check_simplicial_identities(n: &SimplicialTruncation) -> IdentityReport {
    let mut checked = 0;
    let mut failures = 0;
    let mut witnesses = Vec::new();
    let mut note = |ok: bool, w: String| {
        checked += 1;
        if !ok {
            failures += 1;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(w);
            }
        }
    };
    let d = |m: usize, s: usize, i: usize| n.faces[m][s][i];
    let sd = |m: usize, s: usize, i: usize| n.degens[m][s][i];
    // d_i d_j = d_{j-1} d_i for i < j
    for m in 2..=n.m_max {
        for s in 0..n.count(m) {
            for j in 1..=m {
                for i in 0..j {
                    let l = d(m - 1, d(m, s, j), i);
                    let r = d(m - 1, d(m, s, i), j - 1);
                    note(
                        l == r,
                        format!("d{i}d{j} on level {m} simplex {:?}", n.levels[m][s]),
                    );
                }
            }
        }
    }
    for m in 0..n.m_max {
        for s in 0..n.count(m) {
            for j in 0..=m {
                let t = sd(m, s, j);
                for i in 0..=m + 1 {
                    let face = d(m + 1, t, i);
                    let ok = if i == j || i == j + 1 {
                        face == s
                    } else if i < j {
                        face == sd(m - 1, d(m, s, i), j - 1)
                    } else {
                        face == sd(m - 1, d(m, s, i - 1), j)
                    };
                    note(
                        ok,
                        format!("d{i}s{j} on level {m} simplex {:?}", n.levels[m][s]),
                    );
                }
                // s_i s_j = s_{j+1} s_i for i <= j
                if m + 2 <= n.m_max {
                    for i in 0..=j {
                        let l = sd(m + 1, t, i);
                        let r = sd(m + 1, sd(m, s, i), j + 1);
                        note(
                            l == r,
                            format!("s{i}s{j} on level {m} simplex {:?}", n.levels[m][s]),
                        );
                    }
                }
            }
        }
    }
    IdentityReport {
        passed: failures == 0,
        checked,
        failures,
        witnesses,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HornCount {
    pub dim: usize,
    pub index: usize,
    pub horns: usize,
    pub fillable: usize,
    pub unfillable: usize,
}

/// `(dimension, missing face, faces)`, with the missing face as `None`.
pub type HornWitness = (usize, usize, Vec<Option<Vec<usize>>>);

#[derive(Debug, Clone, Serialize)]
pub struct HornReport {
    pub up_to_dim: usize,
    pub counts: Vec<HornCount>,
    /// Faces (as tuples, the missing one marked `None`) of unfillable horns.
    pub witnesses: Vec<HornWitness>,
    pub truncated: bool,
}

impl HornReport {
    pub fn unfillable(&self) -> usize {
        self.counts.iter().map(|c| c.unfillable).sum()
    }

    pub fn horns(&self) -> usize {
        self.counts.iter().map(|c| c.horns).sum()
    }
}

struct HornSearch<'a> {
    n: &'a SimplicialTruncation,
    k: usize,
    skip: usize,
    // by_face[a][v]: level-(k−1) simplices whose a-th face is v
    by_face: Vec<HashMap<usize, Vec<usize>>>,
    fillers: HashSet<Vec<usize>>,
    chosen: Vec<(usize, usize)>,
    count: HornCount,
    witnesses: Vec<Vec<Option<Vec<usize>>>>,
    budget: usize,
}

impl HornSearch<'_> {
    fn candidates(&self, b: usize) -> Vec<usize> {
        let lvl = self.k - 1;
        match self.chosen.first() {
            None => (0..self.n.count(lvl)).collect(),
            Some(&(a, ya)) => {
                // d_a y_b = d_{b−1} y_a
                let need = self.n.face(lvl, ya, b - 1);
                self.by_face[a].get(&need).cloned().unwrap_or_default()
            }
        }
    }

    fn compatible(&self, b: usize, yb: usize) -> bool {
        let lvl = self.k - 1;
        self.chosen
            .iter()
            .all(|&(a, ya)| self.n.face(lvl, yb, a) == self.n.face(lvl, ya, b - 1))
    }

    fn run(&mut self, pos: usize) -> bool {
        if pos > self.k {
            self.count.horns += 1;
            let key: Vec<usize> = self.chosen.iter().map(|&(_, y)| y).collect();
            if self.fillers.contains(&key) {
                self.count.fillable += 1;
            } else {
                self.count.unfillable += 1;
                if self.witnesses.len() < MAX_WITNESSES {
                    let mut faces = vec![None; self.k + 1];
                    for &(a, y) in &self.chosen {
                        faces[a] = Some(self.n.levels[self.k - 1][y].clone());
                    }
                    self.witnesses.push(faces);
                }
            }
            return self.count.horns < self.budget;
        }
        if pos == self.skip {
            return self.run(pos + 1);
        }
        for y in self.candidates(pos) {
            if !self.compatible(pos, y) {
                continue;
            }
            self.chosen.push((pos, y));
            let go_on = self.run(pos + 1);
            self.chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Enumerates every horn `Λᵏᵢ` for `2 ≤ k ≤ up_to_dim` and tests for a
/// filler among the stored `k`-simplices. At most `max_horns` horns are
/// visited per `(k, i)`.
pub fn horn_check(n: &SimplicialTruncation, up_to_dim: usize, max_horns: usize) -> HornReport {
    let top = up_to_dim.min(n.m_max);
    let mut counts = Vec::new();
    let mut witnesses = Vec::new();
    let mut truncated = false;
    for k in 2..=top {
        let lvl = k - 1;
        let mut by_face = vec![HashMap::new(); k + 1];
        for y in 0..n.count(lvl) {
            for (a, map) in by_face.iter_mut().enumerate().take(k) {
                map.entry(n.face(lvl, y, a))
                    .or_insert_with(Vec::new)
                    .push(y);
            }
        }
        for skip in 0..=k {
            let fillers: HashSet<Vec<usize>> = (0..n.count(k))
                .map(|x| {
                    (0..=k)
                        .filter(|&j| j != skip)
                        .map(|j| n.face(k, x, j))
                        .collect()
                })
                .collect();
            let mut s = HornSearch {
                n,
                k,
                skip,
                by_face: by_face.clone(),
                fillers,
                chosen: Vec::new(),
                count: HornCount {
                    dim: k,
                    index: skip,
                    horns: 0,
                    fillable: 0,
                    unfillable: 0,
                },
                witnesses: Vec::new(),
                budget: max_horns,
            };
            truncated |= !s.run(0);
            witnesses.extend(s.witnesses.into_iter().map(|w| (k, skip, w)));
            counts.push(s.count);
        }
    }
    witnesses.truncate(MAX_WITNESSES);
    HornReport {
        up_to_dim: top,
        counts,
        witnesses,
        truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic, interval_group, pair_restriction, path_edges};

    #[test]
    fn level_two_counts() {
        assert_eq!(
            build_nerve(&interval_group(1, None).unwrap(), 2)
                .unwrap()
                .count(2),
            7
        );
        assert_eq!(build_nerve(&cyclic(3).unwrap(), 2).unwrap().count(2), 9);
        assert_eq!(build_nerve(&cyclic(3).unwrap(), 3).unwrap().count(3), 27);
    }

    #[test]
    fn level_one_faces() {
        let g = pair_restriction(2, &[(0, 1)]).unwrap();
        let n = build_nerve(&g, 1).unwrap();
        let a = g.find_arrow("v1<v0").unwrap();
        assert_eq!(n.face(1, a, 0), 0);
        assert_eq!(n.face(1, a, 1), 1);
    }

    #[test]
    fn identities_hold_and_faults_are_caught() {
        for g in [
            cyclic(3).unwrap(),
            interval_group(1, None).unwrap(),
            pair_restriction(3, &path_edges(3)).unwrap(),
        ] {
            let n = build_nerve(&g, 4).unwrap();
            let r = check_simplicial_identities(&n);
            assert!(r.passed, "{:?}", r.witnesses);
        }
        let mut n = build_nerve(&cyclic(3).unwrap(), 3).unwrap();
        let wrong = (n.face(2, 4, 1) + 1) % n.count(1);
        n.set_face(2, 4, 1, wrong);
        let r = check_simplicial_identities(&n);
        assert!(!r.passed);
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn kan_exactly_for_groups() {
        let n = build_nerve(&cyclic(3).unwrap(), 3).unwrap();
        let r = horn_check(&n, 3, usize::MAX);
        assert_eq!(r.unfillable(), 0);
        assert!(r.horns() > 0);
        let i = interval_group(1, None).unwrap();
        let r = horn_check(&build_nerve(&i, 3).unwrap(), 2, usize::MAX);
        // the inner horn with faces (1) and (1) has no filler
        let inner = r
            .counts
            .iter()
            .find(|c| c.dim == 2 && c.index == 1)
            .unwrap();
        assert!(inner.unfillable > 0);
        let one = i.find_arrow("1").unwrap();
        assert!(r
            .witnesses
            .iter()
            .any(|(_, idx, f)| *idx == 1 && f[0] == Some(vec![one]) && f[2] == Some(vec![one])));
    }

    #[test]
    fn tree_has_outer_holes() {
        let g = pair_restriction(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let r = horn_check(&build_nerve(&g, 3).unwrap(), 2, usize::MAX);
        let outer = r
            .counts
            .iter()
            .find(|c| c.dim == 2 && c.index == 0)
            .unwrap();
        assert!(outer.unfillable > 0);
    }

    #[test]
    fn degenerate_detection() {
        let n = build_nerve(&cyclic(2).unwrap(), 2).unwrap();
        let s = n.find(2, &[0, 1]).unwrap();
        assert!(n.is_degenerate(2, s));
        let t = n.find(2, &[1, 1]).unwrap();
        assert!(!n.is_degenerate(2, t));
    }
}
