//! Associative completion through vertex-group presentations, associator
//! search and the completion kernel.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use super::{Bounds, Explorer, MoveTrace, Word};
use crate::assoc::{all_values, contraction_trace};
use crate::fpgroup::{
    finite_group, gen_letter, h1_smith, invert, FiniteGroup, Letter, Presentation,
};
use crate::groupoid::{is_inversional, validate, Arrow, ArrowIx, FiniteLocalGroupoid, ObjIx};
use crate::intmat::{AbelianInvariants, Smith};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AcError {
    #[error("the table is not inversional; unreachable arrows: {0:?}")]
    NotInversional(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AcLimits {
    pub coset_limit: usize,
    /// Word-length bound for the associator searches that back the kernel
    /// when the completion is not finite.
    pub len_limit: usize,
}

impl Default for AcLimits {
    fn default() -> Self {
        AcLimits {
            coset_limit: 200_000,
            len_limit: 8,
        }
    }
}

/// Spanning-tree presentation of one connected component's vertex group.
#[derive(Debug, Clone)]
pub struct ComponentPresentation {
    pub root: ObjIx,
    pub objects: Vec<ObjIx>,
    pub tree: Vec<ArrowIx>,
    /// Arrow behind each generator.
    pub generator_arrows: Vec<ArrowIx>,
    pub presentation: Presentation,
    pub trivial_relators: usize,
    pub smith: Smith,
}

impl ComponentPresentation {
    pub fn h1(&self) -> AbelianInvariants {
        self.smith.cokernel()
    }
}

/// An element of the completion: `(target, source, vertex-group element)`,
/// standing for `p_tgt · elem · p_src⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AcArrow {
    pub tgt: ObjIx,
    pub src: ObjIx,
    pub elem: usize,
}

#[derive(Debug, Clone)]
pub struct AcComponent {
    pub objects: Vec<ObjIx>,
    pub group: FiniteGroup,
}

/// The completion as a finite groupoid, with the completion map.
#[derive(Debug, Clone)]
pub struct AcGroupoid {
    pub components: Vec<AcComponent>,
    component_of: Vec<usize>,
    pub completion: Vec<AcArrow>,
}

impl AcGroupoid {
    pub fn vertex_order(&self, x: ObjIx) -> usize {
        self.components[self.component_of[x]].group.order()
    }

    pub fn n_arrows(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.objects.len().pow(2) * c.group.order())
            .sum()
    }

    pub fn unit(&self, x: ObjIx) -> AcArrow {
        AcArrow {
            tgt: x,
            src: x,
            elem: 0,
        }
    }

    pub fn mul(&self, a: AcArrow, b: AcArrow) -> Option<AcArrow> {
        (a.src == b.tgt).then(|| AcArrow {
            tgt: a.tgt,
            src: b.src,
            elem: self.components[self.component_of[a.src]]
                .group
                .mul(a.elem, b.elem),
        })
    }

    pub fn inv(&self, a: AcArrow) -> AcArrow {
        AcArrow {
            tgt: a.src,
            src: a.tgt,
            elem: self.components[self.component_of[a.src]].group.inv(a.elem),
        }
    }

    pub fn complete(&self, a: ArrowIx) -> AcArrow {
        self.completion[a]
    }

    /// Completion of a word: the product of its letters' images.
    pub fn complete_word(&self, w: &[ArrowIx]) -> AcArrow {
        let mut it = w.iter().map(|&a| self.completion[a]);
        let first = it.next().expect("nonempty word");
        it.fold(first, |acc, b| self.mul(acc, b).expect("well-formed word"))
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.completion.iter().collect();
        set.len() == self.completion.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.completion.len() == self.n_arrows()
    }

    /// Arrows sent to a unit.
    pub fn kernel(&self) -> Vec<ArrowIx> {
        (0..self.completion.len())
            .filter(|&a| {
                let c = self.completion[a];
                c.src == c.tgt && c.elem == 0
            })
            .collect()
    }

    /// The completion written out as a (global) table, when it has at
    /// most `max_arrows` arrows.
    pub fn to_table(
        &self,
        g: &FiniteLocalGroupoid,
        max_arrows: usize,
    ) -> Option<FiniteLocalGroupoid> {
        if self.n_arrows() > max_arrows {
            return None;
        }
        let mut arrows = Vec::new();
        let mut index = BTreeMap::new();
        for c in &self.components {
            for &y in &c.objects {
                for &x in &c.objects {
                    for e in 0..c.group.order() {
                        let a = AcArrow {
                            tgt: y,
                            src: x,
                            elem: e,
                        };
                        index.insert(a, arrows.len());
                        let id = format!("{}<{}#{}", g.object_name(y), g.object_name(x), e);
                        arrows.push((a, Arrow { id, src: x, tgt: y }));
                    }
                }
            }
        }
        let mut mult = Vec::new();
        let mut inv = Vec::new();
        for (i, &(a, _)) in arrows.iter().enumerate() {
            inv.push((i, index[&self.inv(a)]));
            for (j, &(b, _)) in arrows.iter().enumerate() {
                if let Some(p) = self.mul(a, b) {
                    mult.push((i, j, index[&p]));
                }
            }
        }
        let units = (0..g.n_objects()).map(|x| index[&self.unit(x)]).collect();
        let table = FiniteLocalGroupoid::from_indices(
            g.objects().to_vec(),
            arrows.into_iter().map(|(_, a)| a).collect(),
            units,
            mult,
            inv,
        )
        .ok()?;
        debug_assert!(validate(&table).passed_strict());
        Some(table)
    }
}

#[derive(Debug, Clone)]
pub enum AcOutcome {
    Finite(AcGroupoid),
    /// Some vertex group has infinite abelianization.
    InfiniteCertified {
        component: usize,
        h1: AbelianInvariants,
    },
    NotStabilized {
        component: usize,
        coset_limit: usize,
    },
}

#[derive(Debug, Clone)]
pub struct AcBuild {
    pub components: Vec<ComponentPresentation>,
    component_of: Vec<usize>,
    generator_of: Vec<Option<usize>>,
    pub outcome: AcOutcome,
}

impl AcBuild {
    pub fn component_of(&self, x: ObjIx) -> usize {
        self.component_of[x]
    }

    /// The vertex-group word of `a`: a single generator, or empty for
    /// units and tree arrows.
    pub fn hat(&self, a: ArrowIx) -> Vec<Letter> {
        self.generator_of[a]
            .map(|k| vec![gen_letter(k, 1)])
            .unwrap_or_default()
    }

    pub fn finite(&self) -> Option<&AcGroupoid> {
        match &self.outcome {
            AcOutcome::Finite(a) => Some(a),
            _ => None,
        }
    }

    /// Is the image of `a` in the abelianized vertex group zero?
    pub fn abelian_zero(&self, a: ArrowIx) -> bool {
        let Some(k) = self.generator_of[a] else {
            return true;
        };
        let c = &self.components[self.component_of_arrow(a)];
        let mut v = vec![BigInt::zero(); c.presentation.n_generators()];
        v[k] = BigInt::from(1);
        c.smith.in_row_span(&v)
    }

    fn component_of_arrow(&self, a: ArrowIx) -> usize {
        self.generator_of[a]
            .and_then(|k| {
                self.components
                    .iter()
                    .position(|c| c.generator_arrows.get(k) == Some(&a))
            })
            .expect("generator arrows belong to a component")
    }

    pub fn to_json(&self, g: &FiniteLocalGroupoid) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "root": g.object_name(c.root),
                    "objects": c.objects.iter().map(|&x| g.object_name(x)).collect::<Vec<_>>(),
                    "tree": c.tree.iter().map(|&a| g.id(a)).collect::<Vec<_>>(),
                    "generators": c.presentation.generators,
                    "relators": c.presentation.relators.iter().map(|r| c.presentation.word_string(r)).collect::<Vec<_>>(),
                    "trivial_relators": c.trivial_relators,
                    "h1": c.h1(),
                })
            })
            .collect();
        let outcome = match &self.outcome {
            AcOutcome::Finite(ac) => json!({
                "finite": {
                    "arrows": ac.n_arrows(),
                    "vertex_group_orders": ac.components.iter().map(|c| c.group.order()).collect::<Vec<_>>(),
                    "injective": ac.is_injective(),
                    "bijective": ac.is_bijective(),
                    "completion": (0..g.n_arrows()).map(|a| {
                        let c = ac.complete(a);
                        json!([g.id(a), g.object_name(c.tgt), g.object_name(c.src), c.elem])
                    }).collect::<Vec<_>>(),
                }
            }),
            AcOutcome::InfiniteCertified { component, h1 } => {
                json!({ "infinite_certified": { "component": component, "h1": h1 } })
            }
            AcOutcome::NotStabilized {
                component,
                coset_limit,
            } => {
                json!({ "not_stabilized": { "component": component, "coset_limit": coset_limit } })
            }
        };
        json!({ "components": comps, "outcome": outcome })
    }
}

/// Breadth-first spanning forest of the arrow quiver, ignoring direction.
/// Returns, per component, its objects and tree arrows.
pub fn spanning_forest(g: &FiniteLocalGroupoid) -> Vec<(Vec<ObjIx>, Vec<ArrowIx>)> {
    let mut incident = vec![Vec::new(); g.n_objects()];
    for (i, a) in g.arrows().iter().enumerate() {
        if a.src != a.tgt {
            incident[a.src].push(i);
            incident[a.tgt].push(i);
        }
    }
    let mut seen = vec![false; g.n_objects()];
    let mut out = Vec::new();
    for root in 0..g.n_objects() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut objs = vec![root];
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &a in &incident[x] {
                let y = if g.src(a) == x { g.tgt(a) } else { g.src(a) };
                if !seen[y] {
                    seen[y] = true;
                    objs.push(y);
                    tree.push(a);
                    queue.push_back(y);
                }
            }
        }
        objs.sort_unstable();
        out.push((objs, tree));
    }
    out
}

/// Builds the completion: one vertex-group presentation per component,
/// an abelian infinity test, then coset enumeration.
pub fn ac_build(g: &FiniteLocalGroupoid, limits: AcLimits) -> Result<AcBuild, AcError> {
    let (ok, closure) = is_inversional(g);
    if !ok {
        return Err(AcError::NotInversional(
            closure
                .unreachable()
                .iter()
                .map(|&a| g.id(a).to_string())
                .collect(),
        ));
    }
    let forest = spanning_forest(g);
    let mut component_of = vec![0; g.n_objects()];
    for (c, (objs, _)) in forest.iter().enumerate() {
        for &x in objs {
            component_of[x] = c;
        }
    }
    let mut generator_of = vec![None; g.n_arrows()];
    let mut components = Vec::new();
    for (c, (objs, tree)) in forest.into_iter().enumerate() {
        let tree_set: BTreeSet<ArrowIx> = tree.iter().copied().collect();
        let gens: Vec<ArrowIx> = (0..g.n_arrows())
            .filter(|&a| component_of[g.src(a)] == c && !g.is_unit(a) && !tree_set.contains(&a))
            .collect();
        for (k, &a) in gens.iter().enumerate() {
            generator_of[a] = Some(k);
        }
        let hat = |a: ArrowIx| {
            generator_of[a]
                .map(|k| vec![gen_letter(k, 1)])
                .unwrap_or_default()
        };
        let mut p = Presentation::new(gens.iter().map(|&a| g.id(a).to_string()).collect());
        let mut trivial = 0;
        for &(u, v, w) in g.mult_entries() {
            if component_of[g.src(u)] != c {
                continue;
            }
            let mut r = hat(u);
            r.extend(hat(v));
            r.extend(invert(&hat(w)));
            if !p.add_relator(&r) {
                trivial += 1;
            }
        }
        let smith = h1_smith(&p);
        components.push(ComponentPresentation {
            root: objs[0],
            objects: objs,
            tree,
            generator_arrows: gens,
            presentation: p,
            trivial_relators: trivial,
            smith,
        });
    }
    let infinite = components
        .iter()
        .enumerate()
        .find(|(_, c)| c.h1().free_rank > 0);
    let outcome = if let Some((component, c)) = infinite {
        AcOutcome::InfiniteCertified {
            component,
            h1: c.h1(),
        }
    } else {
        let mut groups = Vec::new();
        let mut stalled = None;
        for (i, c) in components.iter().enumerate() {
            match finite_group(&c.presentation, limits.coset_limit) {
                Ok(grp) => groups.push(AcComponent {
                    objects: c.objects.clone(),
                    group: grp,
                }),
                Err(_) => {
                    stalled = Some(i);
                    break;
                }
            }
        }
        match stalled {
            Some(component) => AcOutcome::NotStabilized {
                component,
                coset_limit: limits.coset_limit,
            },
            None => {
                let completion = (0..g.n_arrows())
                    .map(|a| {
                        let grp = &groups[component_of[g.src(a)]].group;
                        let elem = match generator_of[a] {
                            Some(k) => grp.generator(k),
                            None => grp.identity(),
                        };
                        AcArrow {
                            tgt: g.tgt(a),
                            src: g.src(a),
                            elem,
                        }
                    })
                    .collect();
                AcOutcome::Finite(AcGroupoid {
                    components: groups,
                    component_of: component_of.clone(),
                    completion,
                })
            }
        }
    };
    Ok(AcBuild {
        components,
        component_of,
        generator_of,
        outcome,
    })
}

/// An associator `arrow` at some object, witnessed by a word contracting
/// both to the unit and to `arrow`.
#[derive(Debug, Clone)]
pub struct AssociatorCert {
    pub arrow: ArrowIx,
    pub word: Word,
    pub to_unit: MoveTrace,
    pub to_arrow: MoveTrace,
}

impl AssociatorCert {
    pub fn verify(&self, g: &FiniteLocalGroupoid, x: ObjIx) -> bool {
        self.to_unit.start == self.word
            && self.to_arrow.start == self.word
            && self
                .to_unit
                .replay(g)
                .map(|w| w.letters() == [g.unit(x)])
                .unwrap_or(false)
            && self
                .to_arrow
                .replay(g)
                .map(|w| w.letters() == [self.arrow])
                .unwrap_or(false)
    }

    pub fn to_json(&self, g: &FiniteLocalGroupoid) -> Value {
        json!({
            "arrow": g.id(self.arrow),
            "word": self.word.ids(g),
            "to_unit": self.to_unit.to_json(g),
            "to_arrow": self.to_arrow.to_json(g),
        })
    }
}

#[derive(Debug, Clone)]
pub struct AssociatorSet {
    pub object: ObjIx,
    pub certs: Vec<AssociatorCert>,
    /// The search exhausted every word up to the length bound.
    pub complete: bool,
    pub explored: usize,
}

impl AssociatorSet {
    pub fn arrows(&self) -> Vec<ArrowIx> {
        self.certs.iter().map(|c| c.arrow).collect()
    }

    pub fn to_json(&self, g: &FiniteLocalGroupoid) -> Value {
        json!({
            "object": g.object_name(self.object),
            "arrows": self.certs.iter().map(|c| g.id(c.arrow)).collect::<Vec<_>>(),
            "complete": self.complete,
            "explored": self.explored,
            "certificates": self.certs.iter().map(|c| c.to_json(g)).collect::<Vec<_>>(),
        })
    }
}

const MAX_SEEDS: usize = 256;

/// Words `(a, b, c, c⁻¹, b⁻¹, a⁻¹)` at `x` built from 3-associativity
/// failures among invertible arrows.
fn failure_seeds(g: &FiniteLocalGroupoid, x: ObjIx) -> Vec<Vec<ArrowIx>> {
    let mut out = Vec::new();
    let n = g.n_arrows();
    for a in (0..n).filter(|&a| g.tgt(a) == x) {
        let Some(ai) = g.inv(a) else { continue };
        for b in 0..n {
            let (Some(ab), Some(bi)) = (g.mul(a, b), g.inv(b)) else {
                continue;
            };
            for c in 0..n {
                let (Some(bc), Some(ci)) = (g.mul(b, c), g.inv(c)) else {
                    continue;
                };
                match (g.mul(ab, c), g.mul(a, bc)) {
                    (Some(l), Some(r)) if l != r => {
                        out.push(vec![a, b, c, ci, bi, ai]);
                        if out.len() >= MAX_SEEDS {
                            return out;
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

/// Associators at `x`: seeded from 3-associativity failures, then a
/// bounded search outward from the unit word.
pub fn associators(g: &FiniteLocalGroupoid, x: ObjIx, bounds: Bounds) -> AssociatorSet {
    let unit = g.unit(x);
    let unit_word = Word::single(unit);
    let mut found: BTreeMap<ArrowIx, AssociatorCert> = BTreeMap::new();
    found.insert(
        unit,
        AssociatorCert {
            arrow: unit,
            word: unit_word.clone(),
            to_unit: MoveTrace::empty(unit_word.clone()),
            to_arrow: MoveTrace::empty(unit_word.clone()),
        },
    );
    for seed in failure_seeds(g, x) {
        let values = all_values(&seed, g);
        let Some(to_unit_b) = values.get(&unit) else {
            continue;
        };
        let w = Word::new(g, seed.clone()).expect("seed words are well-formed");
        let to_unit = contraction_trace(&w, to_unit_b, g).expect("defined bracketing");
        for (&v, b) in &values {
            if found.contains_key(&v) {
                continue;
            }
            let to_arrow = contraction_trace(&w, b, g).expect("defined bracketing");
            found.insert(
                v,
                AssociatorCert {
                    arrow: v,
                    word: w.clone(),
                    to_unit: to_unit.clone(),
                    to_arrow,
                },
            );
        }
    }
    let mut ex = Explorer::new(&[unit]);
    let mut steps = 0;
    let mut complete = true;
    while !ex.frontier_is_empty() {
        if ex
            .expand(g, bounds.max_len, false, &mut steps, bounds.max_steps)
            .is_err()
        {
            complete = false;
            break;
        }
    }
    for id in ex.ids() {
        let w = ex.word(id);
        if w.len() != 1 || found.contains_key(&w[0]) {
            continue;
        }
        let to_arrow = MoveTrace {
            start: unit_word.clone(),
            moves: ex.path_to(id),
        };
        found.insert(
            w[0],
            AssociatorCert {
                arrow: w[0],
                word: unit_word.clone(),
                to_unit: MoveTrace::empty(unit_word.clone()),
                to_arrow,
            },
        );
    }
    AssociatorSet {
        object: x,
        certs: found.into_values().collect(),
        complete,
        explored: steps,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    /// The kernel is known exactly (the completion is finite).
    pub exact: bool,
    /// Exact kernel, or the associator lower bound.
    pub kernel: Vec<ArrowIx>,
    /// Arrows that may lie in the kernel: those with zero abelian image.
    pub upper: Vec<ArrowIx>,
    pub associators: Vec<ArrowIx>,
    pub associator_search_complete: bool,
    /// Associators coincide with the kernel (or the bounds meet).
    pub agrees: bool,
}

impl KernelReport {
    pub fn to_json(&self, g: &FiniteLocalGroupoid) -> Value {
        let ids = |v: &[ArrowIx]| v.iter().map(|&a| g.id(a).to_string()).collect::<Vec<_>>();
        json!({
            "exact": self.exact,
            "kernel": ids(&self.kernel),
            "upper": ids(&self.upper),
            "associators": ids(&self.associators),
            "associator_search_complete": self.associator_search_complete,
            "agrees": self.agrees,
        })
    }
}

/// The kernel of `G → AC(G)`, cross-checked against the associators.
pub fn completion_kernel(
    g: &FiniteLocalGroupoid,
    limits: AcLimits,
    bounds: Bounds,
) -> Result<KernelReport, AcError> {
    let build = ac_build(g, limits)?;
    let bounds = Bounds {
        max_len: bounds.max_len.min(limits.len_limit.max(1)),
        ..bounds
    };
    let mut assoc = BTreeSet::new();
    let mut complete = true;
    for x in 0..g.n_objects() {
        let s = associators(g, x, bounds);
        complete &= s.complete;
        assoc.extend(s.arrows());
    }
    let associators: Vec<ArrowIx> = assoc.iter().copied().collect();
    Ok(match build.finite() {
        Some(ac) => {
            let kernel = ac.kernel();
            KernelReport {
                exact: true,
                agrees: kernel == associators,
                upper: kernel.clone(),
                kernel,
                associators,
                associator_search_complete: complete,
            }
        }
        None => {
            let upper: Vec<ArrowIx> = (0..g.n_arrows())
                .filter(|&a| g.src(a) == g.tgt(a) && build.abelian_zero(a))
                .collect();
            KernelReport {
                exact: false,
                agrees: upper == associators,
                kernel: associators.clone(),
                upper,
                associators,
                associator_search_complete: complete,
            }
        }
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
    fn z3_completes_to_itself() {
        let g = cyclic(3).unwrap();
        let b = ac_build(&g, AcLimits::default()).unwrap();
        let ac = b.finite().unwrap();
        assert_eq!(ac.n_arrows(), 3);
        assert!(ac.is_bijective());
    }

    #[test]
    fn tree_completes_to_pair_groupoid() {
        let g = tree4();
        let b = ac_build(&g, AcLimits::default()).unwrap();
        let ac = b.finite().unwrap();
        assert_eq!(ac.n_arrows(), 16);
        assert_eq!(ac.vertex_order(0), 1);
        assert!(ac.is_injective());
        let t = ac.to_table(&g, 100).unwrap();
        assert!(t.is_global());
    }

    #[test]
    fn interval_is_infinite() {
        let b = ac_build(&interval_group(1, None).unwrap(), AcLimits::default()).unwrap();
        match b.outcome {
            AcOutcome::InfiniteCertified { h1, .. } => assert_eq!(h1.free_rank, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrapped_interval_has_free_vertex_group() {
        let b = ac_build(&interval_group(1, Some(5)).unwrap(), AcLimits::default()).unwrap();
        assert!(matches!(b.outcome, AcOutcome::InfiniteCertified { .. }));
        assert!(matches!(
            ac_build(&interval_group(1, Some(3)).unwrap(), AcLimits::default())
                .unwrap()
                .outcome,
            AcOutcome::Finite(_)
        ));
    }

    #[test]
    fn completion_respects_products() {
        let g = cyclic(6).unwrap();
        let b = ac_build(&g, AcLimits::default()).unwrap();
        let ac = b.finite().unwrap();
        for &(u, v, p) in g.mult_entries() {
            assert_eq!(ac.mul(ac.complete(u), ac.complete(v)), Some(ac.complete(p)));
        }
    }

    #[test]
    fn group_associators_are_trivial() {
        let g = cyclic(3).unwrap();
        let s = associators(
            &g,
            0,
            Bounds {
                max_len: 5,
                max_steps: 100_000,
            },
        );
        assert_eq!(s.arrows(), vec![0]);
        assert!(s.complete);
        let i = interval_group(1, None).unwrap();
        let s = associators(
            &i,
            0,
            Bounds {
                max_len: 6,
                max_steps: 100_000,
            },
        );
        assert_eq!(s.arrows(), vec![i.find_arrow("0").unwrap()]);
    }

    #[test]
    fn kernels() {
        let r = completion_kernel(
            &cyclic(3).unwrap(),
            AcLimits::default(),
            Bounds {
                max_len: 5,
                max_steps: 50_000,
            },
        )
        .unwrap();
        assert!(r.exact && r.agrees);
        assert_eq!(r.kernel, vec![0]);
        let t = tree4();
        let r = completion_kernel(
            &t,
            AcLimits::default(),
            Bounds {
                max_len: 4,
                max_steps: 50_000,
            },
        )
        .unwrap();
        assert_eq!(r.kernel, t.units().to_vec());
        assert!(r.agrees);
    }
}
