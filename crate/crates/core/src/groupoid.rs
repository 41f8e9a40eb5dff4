//! Finite local groupoids: the table model, axiom validation, restriction,
//! inversional/generation closure and the canonical example constructors.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type ObjIx = usize;
pub type ArrowIx = usize;

const NONE: u32 = u32::MAX;
const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub id: String,
    pub src: ObjIx,
    pub tgt: ObjIx,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("restriction removes the unit-adjacent pair ({0}, {1})")]
    UnitPairRemoved(String, String),
    #[error("restriction removes the unit {0} from the inverse domain")]
    UnitInverseRemoved(String),
    #[error("restriction keeps ({0}, {1}) which is not in the original domain")]
    NotASubset(String, String),
    #[error("restricted table fails axioms: {0}")]
    RestrictionInvalid(String),
    #[error("bad example parameters: {0}")]
    BadParams(String),
}

/// A finite local groupoid with explicit multiplication domain 𝒰 and
/// inversion domain 𝒱. Arrows and objects are addressed by index; the
/// string ids are kept for interchange.
#[derive(Debug, Clone)]
pub struct FiniteLocalGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    units: Vec<ArrowIx>,
    mult_list: Vec<(ArrowIx, ArrowIx, ArrowIx)>,
    inv_list: Vec<(ArrowIx, ArrowIx)>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    factors: Vec<Vec<(ArrowIx, ArrowIx)>>,
    obj_index: HashMap<String, ObjIx>,
    arrow_index: HashMap<String, ArrowIx>,
}

impl PartialEq for FiniteLocalGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.arrows == other.arrows
            && self.units == other.units
            && self.mult == other.mult
            && self.inv == other.inv
    }
}

impl FiniteLocalGroupoid {
    /// Builds a table from index data. Only referential integrity is checked
    /// here; the axioms are the business of [`validate`].
    pub fn from_indices(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        units: Vec<ArrowIx>,
        mult_list: Vec<(ArrowIx, ArrowIx, ArrowIx)>,
        inv_list: Vec<(ArrowIx, ArrowIx)>,
    ) -> Result<Self, TableError> {
        let n = arrows.len();
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(TableError::Malformed(format!("duplicate object {o}")));
            }
        }
        let mut arrow_index = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(TableError::Malformed(format!(
                    "arrow {} has a dangling endpoint",
                    a.id
                )));
            }
            if arrow_index.insert(a.id.clone(), i).is_some() {
                return Err(TableError::Malformed(format!("duplicate arrow {}", a.id)));
            }
        }
        if units.len() != objects.len() {
            return Err(TableError::Malformed(
                "every object needs exactly one unit".into(),
            ));
        }
        if let Some(&u) = units.iter().find(|&&u| u >= n) {
            return Err(TableError::Malformed(format!(
                "unit index {u} out of range"
            )));
        }
        let mut mult = vec![NONE; n * n];
        let mut factors = vec![Vec::new(); n];
        for &(g, h, p) in &mult_list {
            if g >= n || h >= n || p >= n {
                return Err(TableError::Malformed(
                    "product entry references a missing arrow".into(),
                ));
            }
            let slot = &mut mult[g * n + h];
            if *slot != NONE {
                return Err(TableError::Malformed(format!(
                    "product ({}, {}) listed twice",
                    arrows[g].id, arrows[h].id
                )));
            }
            *slot = p as u32;
            factors[p].push((g, h));
        }
        let mut inv = vec![NONE; n];
        for &(g, gi) in &inv_list {
            if g >= n || gi >= n {
                return Err(TableError::Malformed(
                    "inverse entry references a missing arrow".into(),
                ));
            }
            if inv[g] != NONE {
                return Err(TableError::Malformed(format!(
                    "inverse of {} listed twice",
                    arrows[g].id
                )));
            }
            inv[g] = gi as u32;
        }
        for f in &mut factors {
            f.sort_unstable();
        }
        Ok(Self {
            objects,
            arrows,
            units,
            mult_list,
            inv_list,
            mult,
            inv,
            factors,
            obj_index,
            arrow_index,
        })
    }

    /// Builds a table from string ids, as found in the interchange format.
    pub fn from_named(
        objects: Vec<String>,
        arrows: Vec<(String, String, String)>,
        units: Vec<(String, String)>,
        mult: Vec<(String, String, String)>,
        inv: Vec<(String, String)>,
    ) -> Result<Self, TableError> {
        let obj: HashMap<&str, usize> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.as_str(), i))
            .collect();
        let find_obj = |o: &str| {
            obj.get(o)
                .copied()
                .ok_or_else(|| TableError::Malformed(format!("unknown object {o}")))
        };
        let mut arr = Vec::with_capacity(arrows.len());
        for (id, s, t) in &arrows {
            arr.push(Arrow {
                id: id.clone(),
                src: find_obj(s)?,
                tgt: find_obj(t)?,
            });
        }
        let aix: HashMap<&str, usize> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.0.as_str(), i))
            .collect();
        let find = |a: &str| {
            aix.get(a)
                .copied()
                .ok_or_else(|| TableError::Malformed(format!("unknown arrow {a}")))
        };
        let mut unit_ix = vec![usize::MAX; objects.len()];
        for (o, a) in &units {
            let oi = find_obj(o)?;
            if unit_ix[oi] != usize::MAX {
                return Err(TableError::Malformed(format!("object {o} has two units")));
            }
            unit_ix[oi] = find(a)?;
        }
        if let Some(i) = unit_ix.iter().position(|&u| u == usize::MAX) {
            return Err(TableError::Malformed(format!(
                "object {} has no unit",
                objects[i]
            )));
        }
        let mut ml = Vec::with_capacity(mult.len());
        for (g, h, p) in &mult {
            ml.push((find(g)?, find(h)?, find(p)?));
        }
        let mut il = Vec::with_capacity(inv.len());
        for (g, gi) in &inv {
            il.push((find(g)?, find(gi)?));
        }
        Self::from_indices(objects, arr, unit_ix, ml, il)
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, g: ArrowIx) -> &Arrow {
        &self.arrows[g]
    }

    pub fn id(&self, g: ArrowIx) -> &str {
        &self.arrows[g].id
    }

    pub fn object_name(&self, x: ObjIx) -> &str {
        &self.objects[x]
    }

    pub fn find_arrow(&self, id: &str) -> Option<ArrowIx> {
        self.arrow_index.get(id).copied()
    }

    pub fn find_object(&self, name: &str) -> Option<ObjIx> {
        self.obj_index.get(name).copied()
    }

    pub fn src(&self, g: ArrowIx) -> ObjIx {
        self.arrows[g].src
    }

    pub fn tgt(&self, g: ArrowIx) -> ObjIx {
        self.arrows[g].tgt
    }

    pub fn unit(&self, x: ObjIx) -> ArrowIx {
        self.units[x]
    }

    pub fn units(&self) -> &[ArrowIx] {
        &self.units
    }

    pub fn is_unit(&self, g: ArrowIx) -> bool {
        let a = &self.arrows[g];
        a.src == a.tgt && self.units[a.src] == g
    }

    pub fn composable(&self, g: ArrowIx, h: ArrowIx) -> bool {
        self.arrows[g].src == self.arrows[h].tgt
    }

    /// The product `g·h` (apply `h` first), if `(g, h) ∈ 𝒰`.
    pub fn mul(&self, g: ArrowIx, h: ArrowIx) -> Option<ArrowIx> {
        let v = self.mult[g * self.arrows.len() + h];
        (v != NONE).then_some(v as usize)
    }

    pub fn inv(&self, g: ArrowIx) -> Option<ArrowIx> {
        let v = self.inv[g];
        (v != NONE).then_some(v as usize)
    }

    /// All `(u, v) ∈ 𝒰` with `u·v = p`, sorted.
    pub fn factorizations(&self, p: ArrowIx) -> &[(ArrowIx, ArrowIx)] {
        &self.factors[p]
    }

    /// The multiplication domain in interchange order.
    pub fn mult_entries(&self) -> &[(ArrowIx, ArrowIx, ArrowIx)] {
        &self.mult_list
    }

    pub fn inv_entries(&self) -> &[(ArrowIx, ArrowIx)] {
        &self.inv_list
    }

    /// Is `(g, h)` a pair with one factor a unit at the junction or ends?
    pub fn is_unit_adjacent(&self, g: ArrowIx, h: ArrowIx) -> bool {
        self.is_unit(g) || self.is_unit(h)
    }

    /// Arrows of the isotropy group at `x`.
    pub fn isotropy(&self, x: ObjIx) -> Vec<ArrowIx> {
        (0..self.n_arrows())
            .filter(|&g| self.src(g) == x && self.tgt(g) == x)
            .collect()
    }

    /// Is multiplication total on composable pairs and inversion total?
    pub fn is_global(&self) -> bool {
        let n = self.n_arrows();
        (0..n).all(|g| self.inv(g).is_some())
            && (0..n).all(|g| (0..n).all(|h| !self.composable(g, h) || self.mul(g, h).is_some()))
    }

    /// Connected components of the arrow quiver, each sorted.
    pub fn components(&self) -> Vec<Vec<ObjIx>> {
        let n = self.n_objects();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.src].push(a.tgt);
            adj[a.tgt].push(a.src);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut q = VecDeque::from([start]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        q.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The local subgroupoid on the arrows of `G_x`.
    pub fn isotropy_table(&self, x: ObjIx) -> FiniteLocalGroupoid {
        let keep = self.isotropy(x);
        let pos: HashMap<ArrowIx, usize> = keep.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let arrows = keep
            .iter()
            .map(|&g| Arrow {
                id: self.id(g).to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let mult = self
            .mult_list
            .iter()
            .filter_map(|&(g, h, p)| Some((*pos.get(&g)?, *pos.get(&h)?, *pos.get(&p)?)))
            .collect();
        let inv = self
            .inv_list
            .iter()
            .filter_map(|&(g, gi)| Some((*pos.get(&g)?, *pos.get(&gi)?)))
            .collect();
        FiniteLocalGroupoid::from_indices(
            vec![self.objects[x].clone()],
            arrows,
            vec![pos[&self.units[x]]],
            mult,
            inv,
        )
        .expect("isotropy of a well-formed table is well-formed")
    }
}

impl fmt::Display for FiniteLocalGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "local groupoid: {} objects, {} arrows, |U| = {}, |V| = {}",
            self.n_objects(),
            self.n_arrows(),
            self.mult_list.len(),
            self.inv_list.len()
        )
    }
}

/// The axioms checked by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    UnitShape,
    UnitLaw,
    Composability,
    ProductEndpoints,
    InverseClosure,
    InverseEndpoints,
    InverseLaw,
    UnitsInvertible,
    /// 𝒱×𝒱-composable pairs lie in 𝒰. Reported, but only part of the
    /// strict verdict: the interval examples violate it by design.
    InverseDomainClosed,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub failures: usize,
    pub witnesses: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeAssociativity {
    pub holds: bool,
    pub triples_checked: usize,
    pub witness: Option<[String; 3]>,
    pub values: Option<[String; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
    pub three_associativity: ThreeAssociativity,
}

impl ValidationReport {
    /// Core axioms hold (everything except the 𝒱×𝒱 closure).
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.passed || c.axiom == Axiom::InverseDomainClosed)
    }

    pub fn passed_strict(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is checked")
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.axiom)
            .collect()
    }
}

struct Collector {
    axiom: Axiom,
    failures: usize,
    witnesses: Vec<Vec<String>>,
}

impl Collector {
    fn new(axiom: Axiom) -> Self {
        Self {
            axiom,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    fn fail(&mut self, g: &FiniteLocalGroupoid, w: &[ArrowIx]) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses
                .push(w.iter().map(|&a| g.id(a).to_string()).collect());
        }
    }

    fn fail_named(&mut self, w: Vec<String>) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            axiom: self.axiom,
            passed: self.failures == 0,
            failures: self.failures,
            witnesses: self.witnesses,
        }
    }
}

/// Checks the local groupoid axioms and reports global 3-associativity.
pub fn validate(g: &FiniteLocalGroupoid) -> ValidationReport {
    let n = g.n_arrows();
    let mut unit_shape = Collector::new(Axiom::UnitShape);
    for x in 0..g.n_objects() {
        let u = g.unit(x);
        if g.src(u) != x || g.tgt(u) != x {
            unit_shape.fail_named(vec![g.object_name(x).to_string(), g.id(u).to_string()]);
        }
    }
    let mut unit_law = Collector::new(Axiom::UnitLaw);
    for a in 0..n {
        let us = g.unit(g.src(a));
        let ut = g.unit(g.tgt(a));
        if g.mul(a, us) != Some(a) {
            unit_law.fail(g, &[a, us]);
        }
        if g.mul(ut, a) != Some(a) {
            unit_law.fail(g, &[ut, a]);
        }
    }
    let mut composability = Collector::new(Axiom::Composability);
    let mut endpoints = Collector::new(Axiom::ProductEndpoints);
    for &(a, b, p) in g.mult_entries() {
        if !g.composable(a, b) {
            composability.fail(g, &[a, b]);
        }
        if g.src(p) != g.src(b) || g.tgt(p) != g.tgt(a) {
            endpoints.fail(g, &[a, b]);
        }
    }
    let mut closure = Collector::new(Axiom::InverseClosure);
    let mut inv_ends = Collector::new(Axiom::InverseEndpoints);
    let mut inv_law = Collector::new(Axiom::InverseLaw);
    for &(a, ai) in g.inv_entries() {
        if g.inv(ai) != Some(a) {
            closure.fail(g, &[a, ai]);
        }
        if g.src(ai) != g.tgt(a) || g.tgt(ai) != g.src(a) {
            inv_ends.fail(g, &[a, ai]);
        }
        if g.mul(ai, a) != Some(g.unit(g.src(a))) {
            inv_law.fail(g, &[ai, a]);
        }
        if g.mul(a, ai) != Some(g.unit(g.tgt(a))) {
            inv_law.fail(g, &[a, ai]);
        }
    }
    let mut units_inv = Collector::new(Axiom::UnitsInvertible);
    for &u in g.units() {
        if g.inv(u).is_none() {
            units_inv.fail(g, &[u]);
        }
    }
    let mut v_closed = Collector::new(Axiom::InverseDomainClosed);
    let vs: Vec<ArrowIx> = (0..n).filter(|&a| g.inv(a).is_some()).collect();
    for &a in &vs {
        for &b in &vs {
            if g.composable(a, b) && g.mul(a, b).is_none() {
                v_closed.fail(g, &[a, b]);
            }
        }
    }
    ValidationReport {
        checks: vec![
            unit_shape.finish(),
            unit_law.finish(),
            composability.finish(),
            endpoints.finish(),
            closure.finish(),
            inv_ends.finish(),
            inv_law.finish(),
            units_inv.finish(),
            v_closed.finish(),
        ],
        three_associativity: three_associativity(g),
    }
}

fn three_associativity(g: &FiniteLocalGroupoid) -> ThreeAssociativity {
    let n = g.n_arrows();
    let mut checked = 0;
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = g.mul(a, b) else { continue };
            for c in 0..n {
                let (Some(bc), true) = (g.mul(b, c), g.composable(b, c)) else {
                    continue;
                };
                let (Some(l), Some(r)) = (g.mul(ab, c), g.mul(a, bc)) else {
                    continue;
                };
                checked += 1;
                if l != r {
                    return ThreeAssociativity {
                        holds: false,
                        triples_checked: checked,
                        witness: Some([g.id(a).into(), g.id(b).into(), g.id(c).into()]),
                        values: Some([g.id(l).into(), g.id(r).into()]),
                    };
                }
            }
        }
    }
    ThreeAssociativity {
        holds: true,
        triples_checked: checked,
        witness: None,
        values: None,
    }
}

/// Shrinks 𝒰 to `keep_mult` and 𝒱 to `keep_inv`. Both must be subsets of
/// the current domains; unit-adjacent pairs and units must survive.
pub fn restrict(
    g: &FiniteLocalGroupoid,
    keep_mult: &BTreeSet<(ArrowIx, ArrowIx)>,
    keep_inv: &BTreeSet<ArrowIx>,
) -> Result<FiniteLocalGroupoid, TableError> {
    for &(a, b) in keep_mult {
        if a >= g.n_arrows() || b >= g.n_arrows() || g.mul(a, b).is_none() {
            let name = |i: usize| {
                g.arrows
                    .get(i)
                    .map_or_else(|| i.to_string(), |x| x.id.clone())
            };
            return Err(TableError::NotASubset(name(a), name(b)));
        }
    }
    for &a in keep_inv {
        if a >= g.n_arrows() || g.inv(a).is_none() {
            return Err(TableError::NotASubset(a.to_string(), "inverse".into()));
        }
    }
    for &(a, b, _) in g.mult_entries() {
        if g.is_unit_adjacent(a, b) && !keep_mult.contains(&(a, b)) {
            return Err(TableError::UnitPairRemoved(g.id(a).into(), g.id(b).into()));
        }
    }
    for &u in g.units() {
        if !keep_inv.contains(&u) {
            return Err(TableError::UnitInverseRemoved(g.id(u).into()));
        }
    }
    let mult = g
        .mult_entries()
        .iter()
        .copied()
        .filter(|&(a, b, _)| keep_mult.contains(&(a, b)))
        .collect();
    let inv = g
        .inv_entries()
        .iter()
        .copied()
        .filter(|&(a, _)| keep_inv.contains(&a))
        .collect();
    let out = FiniteLocalGroupoid::from_indices(
        g.objects.clone(),
        g.arrows.clone(),
        g.units.clone(),
        mult,
        inv,
    )?;
    let report = validate(&out);
    if !report.passed() {
        let failed: Vec<String> = report
            .failed_axioms()
            .into_iter()
            .filter(|a| *a != Axiom::InverseDomainClosed)
            .map(|a| format!("{a:?}"))
            .collect();
        return Err(TableError::RestrictionInvalid(failed.join(", ")));
    }
    Ok(out)
}

/// The current 𝒰 as a set of pairs.
pub fn mult_domain(g: &FiniteLocalGroupoid) -> BTreeSet<(ArrowIx, ArrowIx)> {
    g.mult_entries().iter().map(|&(a, b, _)| (a, b)).collect()
}

/// The current 𝒱 as a set.
pub fn inv_domain(g: &FiniteLocalGroupoid) -> BTreeSet<ArrowIx> {
    g.inv_entries().iter().map(|&(a, _)| a).collect()
}

/// How an arrow was reached in a product closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    Seed,
    Product(ArrowIx, ArrowIx),
}

/// Result of closing a seed set under defined products.
#[derive(Debug, Clone)]
pub struct Closure {
    pub derivations: Vec<Option<Derivation>>,
}

impl Closure {
    pub fn covers_all(&self) -> bool {
        self.derivations.iter().all(Option::is_some)
    }

    pub fn unreachable(&self) -> Vec<ArrowIx> {
        self.derivations
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_none())
            .map(|(i, _)| i)
            .collect()
    }

    /// A bracketed expression over seed arrows evaluating to `a`.
    pub fn expression(&self, g: &FiniteLocalGroupoid, a: ArrowIx) -> Option<String> {
        match self.derivations[a]? {
            Derivation::Seed => Some(g.id(a).to_string()),
            Derivation::Product(x, y) => Some(format!(
                "({}·{})",
                self.expression(g, x)?,
                self.expression(g, y)?
            )),
        }
    }

    /// Re-evaluates the derivation tree of `a` through the table.
    pub fn replay(&self, g: &FiniteLocalGroupoid, a: ArrowIx) -> Option<ArrowIx> {
        match self.derivations[a]? {
            Derivation::Seed => Some(a),
            Derivation::Product(x, y) => g.mul(self.replay(g, x)?, self.replay(g, y)?),
        }
    }
}

/// BFS closure of `seeds` under the partial multiplication.
pub fn product_closure(g: &FiniteLocalGroupoid, seeds: &[ArrowIx]) -> Closure {
    let mut der = vec![None; g.n_arrows()];
    let mut reached = Vec::new();
    let mut queue = VecDeque::new();
    for &s in seeds {
        if der[s].is_none() {
            der[s] = Some(Derivation::Seed);
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        reached.push(x);
        for &y in &reached {
            for (a, b) in [(x, y), (y, x)] {
                if let Some(p) = g.mul(a, b) {
                    if der[p].is_none() {
                        der[p] = Some(Derivation::Product(a, b));
                        queue.push_back(p);
                    }
                }
            }
        }
    }
    Closure { derivations: der }
}

/// Is every arrow a well-defined product of invertible arrows? The closure
/// doubles as the certificate (or lists the unreachable arrows).
pub fn is_inversional(g: &FiniteLocalGroupoid) -> (bool, Closure) {
    let seeds: Vec<ArrowIx> = (0..g.n_arrows()).filter(|&a| g.inv(a).is_some()).collect();
    let c = product_closure(g, &seeds);
    (c.covers_all(), c)
}

/// Does `s` generate `g` under defined products?
pub fn generates(g: &FiniteLocalGroupoid, s: &[ArrowIx]) -> bool {
    product_closure(g, s).covers_all()
}

/// Parameters for [`make_example`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExampleKind {
    /// `{−k..k}`, with products defined iff they land back in the range.
    /// With a modulus `n > 2k` the range sits inside `ℤ/n`.
    IntervalGroup {
        k: i64,
        modulus: Option<i64>,
    },
    /// The pair groupoid of `vertices` restricted to the graph's edges.
    PairRestriction {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Cyclic {
        n: usize,
    },
}

pub fn make_example(kind: &ExampleKind) -> Result<FiniteLocalGroupoid, TableError> {
    let g = match kind {
        ExampleKind::IntervalGroup { k, modulus } => interval_group(*k, *modulus)?,
        ExampleKind::PairRestriction { vertices, edges } => pair_restriction(*vertices, edges)?,
        ExampleKind::Cyclic { n } => cyclic(*n)?,
    };
    debug_assert!(validate(&g).passed());
    Ok(g)
}

fn single_object(
    labels: Vec<String>,
    unit: ArrowIx,
    mult: Vec<(ArrowIx, ArrowIx, ArrowIx)>,
    inv: Vec<(ArrowIx, ArrowIx)>,
) -> Result<FiniteLocalGroupoid, TableError> {
    let arrows = labels
        .into_iter()
        .map(|id| Arrow { id, src: 0, tgt: 0 })
        .collect();
    FiniteLocalGroupoid::from_indices(vec!["*".into()], arrows, vec![unit], mult, inv)
}

pub fn interval_group(k: i64, modulus: Option<i64>) -> Result<FiniteLocalGroupoid, TableError> {
    if k < 0 {
        return Err(TableError::BadParams(format!(
            "interval radius {k} is negative"
        )));
    }
    if let Some(n) = modulus {
        if n <= 2 * k {
            return Err(TableError::BadParams(format!(
                "modulus {n} must exceed 2k = {}",
                2 * k
            )));
        }
    }
    let values: Vec<i64> = (-k..=k).collect();
    let index = |v: i64| (v + k) as usize;
    // Representative in [−k, k] of a sum, if the sum lands in the range.
    let land = |s: i64| -> Option<i64> {
        match modulus {
            None => (-k..=k).contains(&s).then_some(s),
            Some(n) => {
                let r = s.rem_euclid(n);
                let r = if r > n / 2 { r - n } else { r };
                (-k..=k).contains(&r).then_some(r)
            }
        }
    };
    let mut mult = Vec::new();
    for &a in &values {
        for &b in &values {
            if let Some(p) = land(a + b) {
                mult.push((index(a), index(b), index(p)));
            }
        }
    }
    let inv = values.iter().map(|&a| (index(a), index(-a))).collect();
    single_object(
        values.iter().map(i64::to_string).collect(),
        index(0),
        mult,
        inv,
    )
}

pub fn cyclic(n: usize) -> Result<FiniteLocalGroupoid, TableError> {
    if n == 0 {
        return Err(TableError::BadParams("cyclic group of order 0".into()));
    }
    let mut mult = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mult.push((a, b, (a + b) % n));
        }
    }
    let inv = (0..n).map(|a| (a, (n - a) % n)).collect();
    single_object((0..n).map(|a| a.to_string()).collect(), 0, mult, inv)
}

/// Arrow id of the pair `(t, s)` (an arrow from `s` to `t`).
pub fn pair_id(t: usize, s: usize) -> String {
    format!("v{t}<v{s}")
}

pub fn pair_restriction(
    vertices: usize,
    edges: &[(usize, usize)],
) -> Result<FiniteLocalGroupoid, TableError> {
    if vertices == 0 {
        return Err(TableError::BadParams("graph without vertices".into()));
    }
    let mut present = vec![vec![false; vertices]; vertices];
    for (i, row) in present.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        if a >= vertices || b >= vertices || a == b {
            return Err(TableError::BadParams(format!("bad edge ({a}, {b})")));
        }
        present[a][b] = true;
        present[b][a] = true;
    }
    let objects: Vec<String> = (0..vertices).map(|v| format!("v{v}")).collect();
    let mut arrows = Vec::new();
    let mut ix = vec![vec![usize::MAX; vertices]; vertices];
    // units first, then the remaining pairs in (target, source) order
    for (v, row) in ix.iter_mut().enumerate() {
        row[v] = arrows.len();
        arrows.push(Arrow {
            id: pair_id(v, v),
            src: v,
            tgt: v,
        });
    }
    for t in 0..vertices {
        for s in 0..vertices {
            if t != s && present[t][s] {
                ix[t][s] = arrows.len();
                arrows.push(Arrow {
                    id: pair_id(t, s),
                    src: s,
                    tgt: t,
                });
            }
        }
    }
    let mut mult = Vec::new();
    for z in 0..vertices {
        for y in 0..vertices {
            if !present[z][y] {
                continue;
            }
            for x in 0..vertices {
                if present[y][x] && present[z][x] {
                    mult.push((ix[z][y], ix[y][x], ix[z][x]));
                }
            }
        }
    }
    let inv = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (i, ix[a.src][a.tgt]))
        .collect();
    let units = (0..vertices).collect();
    FiniteLocalGroupoid::from_indices(objects, arrows, units, mult, inv)
}

/// Edges of the path graph `0 – 1 – … – (n−1)`.
pub fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> FiniteLocalGroupoid {
        cyclic(3).unwrap()
    }

    #[test]
    fn z3_validates_and_is_three_associative() {
        let r = validate(&z3());
        assert!(r.passed_strict());
        assert!(r.three_associativity.holds);
    }

    #[test]
    fn interval_one_has_seven_pairs() {
        let g = interval_group(1, None).unwrap();
        assert_eq!(g.n_arrows(), 3);
        assert_eq!(g.mult_entries().len(), 7);
        let one = g.find_arrow("1").unwrap();
        let minus = g.find_arrow("-1").unwrap();
        assert_eq!(g.mul(one, one), None);
        assert_eq!(g.mul(minus, minus), None);
        let r = validate(&g);
        assert!(r.passed());
        assert!(!r.check(Axiom::InverseDomainClosed).passed);
    }

    #[test]
    fn modulus_wraps_only_below_four_k() {
        let plain = interval_group(1, Some(5)).unwrap();
        assert_eq!(
            plain.mult_entries().len(),
            interval_group(1, None).unwrap().mult_entries().len()
        );
        // {−1,0,1} ⊂ ℤ/3 is the whole group
        assert!(interval_group(1, Some(3)).unwrap().is_global());
        let wrap = interval_group(2, Some(6)).unwrap();
        let two = wrap.find_arrow("2").unwrap();
        assert_eq!(wrap.mul(two, two), wrap.find_arrow("-2"));
        assert!(interval_group(2, Some(4)).is_err());
    }

    #[test]
    fn bad_source_is_reported_with_witness() {
        // two objects, product of the loop at y with the arrow y<-x claimed to be the unit at y
        let g = FiniteLocalGroupoid::from_named(
            vec!["x".into(), "y".into()],
            vec![
                ("ex".into(), "x".into(), "x".into()),
                ("ey".into(), "y".into(), "y".into()),
                ("f".into(), "x".into(), "y".into()),
            ],
            vec![("x".into(), "ex".into()), ("y".into(), "ey".into())],
            vec![
                ("ex".into(), "ex".into(), "ex".into()),
                ("ey".into(), "ey".into(), "ey".into()),
                ("f".into(), "ex".into(), "f".into()),
                ("ey".into(), "f".into(), "ey".into()),
            ],
            vec![("ex".into(), "ex".into()), ("ey".into(), "ey".into())],
        )
        .unwrap();
        let r = validate(&g);
        let c = r.check(Axiom::ProductEndpoints);
        assert!(!c.passed);
        assert_eq!(c.witnesses[0], vec!["ey".to_string(), "f".to_string()]);
    }

    #[test]
    fn dangling_ids_are_malformed() {
        let e = FiniteLocalGroupoid::from_named(
            vec!["*".into()],
            vec![("e".into(), "*".into(), "*".into())],
            vec![("*".into(), "e".into())],
            vec![("e".into(), "q".into(), "e".into())],
            vec![],
        );
        assert!(matches!(e, Err(TableError::Malformed(_))));
    }

    #[test]
    fn path_graph_pairs() {
        let g = pair_restriction(3, &path_edges(3)).unwrap();
        assert_eq!(g.n_arrows(), 7);
        // unit pairs (3), unit-adjacent non-unit pairs (4 arrows × 2), inverse pairs (4)
        assert_eq!(g.mult_entries().len(), 15);
        for &(a, b, _) in g.mult_entries() {
            assert!(g.is_unit_adjacent(a, b) || g.inv(a) == Some(b));
        }
        assert!(
            validate(&g).passed_strict() || !validate(&g).check(Axiom::InverseDomainClosed).passed
        );
    }

    #[test]
    fn identity_restriction_and_unit_pair_guard() {
        let g = z3();
        let same = restrict(&g, &mult_domain(&g), &inv_domain(&g)).unwrap();
        assert_eq!(same, g);
        let mut keep = mult_domain(&g);
        keep.remove(&(0, 1));
        assert!(matches!(
            restrict(&g, &keep, &inv_domain(&g)),
            Err(TableError::UnitPairRemoved(..))
        ));
    }

    #[test]
    fn unit_adjacent_restriction_of_z3_is_not_inversional() {
        let g = z3();
        let keep: BTreeSet<_> = mult_domain(&g)
            .into_iter()
            .filter(|&(a, b)| g.is_unit_adjacent(a, b))
            .collect();
        // the inverse laws force 𝒱 down to the unit
        let r = restrict(&g, &keep, &BTreeSet::from([0])).unwrap();
        assert!(!is_inversional(&r).0);
        assert!(validate(&r).passed());
    }

    #[test]
    fn inversional_examples() {
        assert!(is_inversional(&z3()).0);
        let (ok, cert) = is_inversional(&interval_group(1, None).unwrap());
        assert!(ok);
        let g = interval_group(1, None).unwrap();
        for a in 0..g.n_arrows() {
            assert_eq!(cert.replay(&g, a), Some(a));
        }
    }

    #[test]
    fn non_inversional_lists_the_arrow() {
        // ℤ/3 with 𝒱 shrunk to the unit and 1·1 kept: 2 = 1·1 is reachable only from 1
        let g = z3();
        let keep: BTreeSet<_> = mult_domain(&g)
            .into_iter()
            .filter(|&(a, b)| g.is_unit_adjacent(a, b))
            .collect();
        let r = restrict(&g, &keep, &BTreeSet::from([0])).unwrap();
        let (ok, cert) = is_inversional(&r);
        assert!(!ok);
        assert_eq!(cert.unreachable(), vec![1, 2]);
    }

    #[test]
    fn generation_examples() {
        let g = interval_group(2, None).unwrap();
        let s: Vec<_> = ["-1", "0", "1"]
            .iter()
            .map(|a| g.find_arrow(a).unwrap())
            .collect();
        assert!(generates(&g, &s));
        assert!(generates(&g, &(0..g.n_arrows()).collect::<Vec<_>>()));
        let t = pair_restriction(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let mut seeds: Vec<_> = t.units().to_vec();
        for &(a, b) in &[(0, 1), (1, 2), (1, 3)] {
            seeds.push(t.find_arrow(&pair_id(b, a)).unwrap());
        }
        // one direction per tree edge is not enough without inverses
        assert!(!generates(&t, &seeds));
        for &(a, b) in &[(0, 1), (1, 2), (1, 3)] {
            seeds.push(t.find_arrow(&pair_id(a, b)).unwrap());
        }
        assert!(generates(&t, &seeds));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
            (2usize..=5).prop_flat_map(|n| {
                let all: Vec<(usize, usize)> = (0..n)
                    .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                    .collect();
                let m = all.len();
                (Just(n), proptest::sample::subsequence(all, 0..=m))
            })
        }

        proptest! {
            #[test]
            fn pair_restrictions_are_valid_and_associative((n, edges) in graph()) {
                let g = pair_restriction(n, &edges).unwrap();
                let r = validate(&g);
                prop_assert!(r.passed(), "{:?}", r.failed_axioms());
                prop_assert!(r.three_associativity.holds);
                prop_assert!(is_inversional(&g).0);
            }

            #[test]
            fn intervals_invert(k in 0i64..4, extra in 1i64..4) {
                let g = interval_group(k, Some(2 * k + extra)).unwrap();
                prop_assert!(validate(&g).passed());
                for a in 0..g.n_arrows() {
                    let b = g.inv(a).unwrap();
                    prop_assert_eq!(g.mul(a, b), Some(g.unit(0)));
                }
            }
        }
    }
}
