//! Enriched formal contexts, concept lattices and graded implications.
//!
//! For a context `(G, M, ι)` the derivation operators are
//!
//! ```text
//! φ↑(m) = ⋀_g φ(g) ⊸ ι(g,m)        (attributes shared by the objects of φ)
//! ψ↓(g) = ⋀_m ψ(m) ⊸ ι(g,m)        (objects having the attributes of ψ)
//! ```
//!
//! A hard concept `(φ, ψ)` is a pair with `e ⪯ (φ↑ ⇔ ψ) ⊗ (φ ⊸ ψ↓)`.
//! Concepts are ordered by the specialization measure `φ1 ⊸ φ2`.
//!
//! Enumeration works over a finite grid of truth values containing every
//! incidence value, closed under `⊸`, `∧` and `∨`. Every concept extent over
//! that grid is a meet of attribute extents `{v/m}↓`, so the extents are
//! generated as the meet-closure of those generators plus the top extent.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::predicate::{hom_metric, pointwise_equiv};
use crate::quantale::Quantale;
use crate::vrelation::VRelation;
use crate::vspace::ApproximationSpace;

/// Upper bound on the size of the generated truth-value grid.
pub const GRID_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct FormalContext<Q: Quantale> {
    objects: ApproximationSpace<Q>,
    attributes: ApproximationSpace<Q>,
    incidence: VRelation<Q>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Concept<V> {
    pub extent: Vec<V>,
    pub intent: Vec<V>,
}

/// The soft measure `(φ↑ ⇔ ψ) ⊗ (φ ⊸ ψ↓)` and whether it reaches `e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hardness<V> {
    pub measure: V,
    pub hard: bool,
}

/// A named attribute predicate used as an implication premise or conclusion.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedPredicate<V> {
    pub name: String,
    pub values: Vec<V>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<V> {
    pub premise: NamedPredicate<V>,
    pub conclusion: NamedPredicate<V>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Implication<V> {
    pub premise: String,
    pub conclusion: String,
    pub measure: V,
}

impl<Q: Quantale> FormalContext<Q> {
    /// Builds a context, rejecting incidence matrices that are not valid
    /// relations between the two spaces.
    pub fn new(
        objects: ApproximationSpace<Q>,
        attributes: ApproximationSpace<Q>,
        incidence: Matrix<Q::Value>,
    ) -> Result<Self> {
        let ctx = Self::unchecked(objects, attributes, incidence)?;
        ctx.incidence.validate().into_result()?;
        Ok(ctx)
    }

    /// Builds a context after closing the incidence to `γ ∘ ι ∘ μ`.
    pub fn repaired(
        objects: ApproximationSpace<Q>,
        attributes: ApproximationSpace<Q>,
        incidence: Matrix<Q::Value>,
    ) -> Result<Self> {
        let mut ctx = Self::unchecked(objects, attributes, incidence)?;
        ctx.incidence = ctx.incidence.repair()?;
        Ok(ctx)
    }

    /// Builds a context without checking relation compatibility.
    pub fn unchecked(
        objects: ApproximationSpace<Q>,
        attributes: ApproximationSpace<Q>,
        incidence: Matrix<Q::Value>,
    ) -> Result<Self> {
        let incidence = VRelation::new(
            objects.space().clone(),
            attributes.space().clone(),
            incidence,
        )?;
        Ok(Self {
            objects,
            attributes,
            incidence,
        })
    }

    /// A context with discrete object and attribute spaces.
    pub fn discrete(
        quantale: Q,
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: Matrix<Q::Value>,
    ) -> Result<Self> {
        Self::new(
            ApproximationSpace::discrete(quantale.clone(), objects)?,
            ApproximationSpace::discrete(quantale, attributes)?,
            incidence,
        )
    }

    pub fn quantale(&self) -> &Q {
        self.objects.quantale()
    }

    /// Same identifiers, with metrics and incidence equal up to `≡`.
    pub fn equiv(&self, other: &Self) -> bool {
        self.objects.same_space(&other.objects)
            && self.attributes.same_space(&other.attributes)
            && self.incidence.equiv(&other.incidence)
    }

    pub fn objects(&self) -> &ApproximationSpace<Q> {
        &self.objects
    }

    pub fn attributes(&self) -> &ApproximationSpace<Q> {
        &self.attributes
    }

    pub fn incidence(&self) -> &VRelation<Q> {
        &self.incidence
    }

    pub fn value(&self, g: usize, m: usize) -> Q::Value {
        self.incidence.get(g, m)
    }

    fn check_objects(&self, phi: &[Q::Value]) -> Result<()> {
        if phi.len() != self.objects.len() {
            return Err(Error::structural(format!(
                "object predicate has {} values, the context has {} objects",
                phi.len(),
                self.objects.len()
            )));
        }
        Ok(())
    }

    fn check_attributes(&self, psi: &[Q::Value]) -> Result<()> {
        if psi.len() != self.attributes.len() {
            return Err(Error::structural(format!(
                "attribute predicate has {} values, the context has {} attributes",
                psi.len(),
                self.attributes.len()
            )));
        }
        Ok(())
    }

    /// `φ↑(m) = ⋀_g φ(g) ⊸ ι(g,m)`.
    pub fn derive_intent(&self, phi: &[Q::Value]) -> Result<Vec<Q::Value>> {
        self.check_objects(phi)?;
        let q = self.quantale();
        Ok((0..self.attributes.len())
            .map(|m| {
                q.inf(
                    phi.iter()
                        .enumerate()
                        .map(|(g, &p)| q.implies(p, self.value(g, m))),
                )
            })
            .collect())
    }

    /// `ψ↓(g) = ⋀_m ψ(m) ⊸ ι(g,m)`.
    pub fn derive_extent(&self, psi: &[Q::Value]) -> Result<Vec<Q::Value>> {
        self.check_attributes(psi)?;
        let q = self.quantale();
        Ok((0..self.objects.len())
            .map(|g| {
                q.inf(
                    psi.iter()
                        .enumerate()
                        .map(|(m, &p)| q.implies(p, self.value(g, m))),
                )
            })
            .collect())
    }

    /// `(ψ ⊸ φ↑, φ ⊸ ψ↓)`; the derivations are adjoint, so the two agree.
    pub fn adjointness_measure(
        &self,
        phi: &[Q::Value],
        psi: &[Q::Value],
    ) -> Result<(Q::Value, Q::Value)> {
        let q = self.quantale();
        let up = self.derive_intent(phi)?;
        let down = self.derive_extent(psi)?;
        Ok((hom_metric(q, psi, &up)?, hom_metric(q, phi, &down)?))
    }

    pub fn hardness(&self, phi: &[Q::Value], psi: &[Q::Value]) -> Result<Hardness<Q::Value>> {
        let q = self.quantale();
        let up = self.derive_intent(phi)?;
        let down = self.derive_extent(psi)?;
        let intent_match = q.inf(up.iter().zip(psi).map(|(&a, &b)| q.biimplies(a, b)));
        let extent_match = hom_metric(q, phi, &down)?;
        let measure = q.tensor(intent_match, extent_match);
        Ok(Hardness {
            measure,
            hard: q.leq(q.unit(), measure),
        })
    }

    pub fn is_hard_concept(&self, concept: &Concept<Q::Value>) -> Result<bool> {
        Ok(self.hardness(&concept.extent, &concept.intent)?.hard)
    }

    /// `ψ1 → ψ2 = ψ1↓ ⊸ ψ2↓`.
    pub fn implication_measure(&self, psi1: &[Q::Value], psi2: &[Q::Value]) -> Result<Q::Value> {
        let d1 = self.derive_extent(psi1)?;
        let d2 = self.derive_extent(psi2)?;
        hom_metric(self.quantale(), &d1, &d2)
    }

    /// The crisp attribute predicate `e` at `m`, `⊥` elsewhere.
    pub fn singleton_attribute(&self, m: usize) -> NamedPredicate<Q::Value> {
        let q = self.quantale();
        NamedPredicate {
            name: self.attributes.elements()[m].clone(),
            values: (0..self.attributes.len())
                .map(|k| if k == m { q.unit() } else { q.bottom() })
                .collect(),
        }
    }

    /// Ordered pairs of distinct single-attribute predicates.
    pub fn default_candidates(&self) -> Vec<Candidate<Q::Value>> {
        let n = self.attributes.len();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1));
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    out.push(Candidate {
                        premise: self.singleton_attribute(a),
                        conclusion: self.singleton_attribute(b),
                    });
                }
            }
        }
        out
    }

    /// Candidates whose measure reaches `threshold`, sorted by premise then
    /// conclusion name.
    pub fn list_implications(
        &self,
        candidates: &[Candidate<Q::Value>],
        threshold: Q::Value,
    ) -> Result<Vec<Implication<Q::Value>>> {
        let q = self.quantale();
        let mut out = Vec::new();
        for c in candidates {
            let measure = self.implication_measure(&c.premise.values, &c.conclusion.values)?;
            if q.leq(threshold, measure) {
                out.push(Implication {
                    premise: c.premise.name.clone(),
                    conclusion: c.conclusion.name.clone(),
                    measure,
                });
            }
        }
        out.sort_by(|a, b| {
            a.premise
                .cmp(&b.premise)
                .then_with(|| a.conclusion.cmp(&b.conclusion))
        });
        Ok(out)
    }

    /// The truth-value grid used by enumeration: `seeds` (or the incidence
    /// values when `None`), together with `⊥`, `e` and `⊤`, closed under
    /// `⊸`, `∧` and `∨`.
    pub fn value_grid(&self, seeds: Option<&[Q::Value]>) -> Result<Vec<Q::Value>> {
        let q = self.quantale();
        let mut start: Vec<Q::Value> = match seeds {
            Some(s) => s.to_vec(),
            None => Vec::new(),
        };
        start.extend(self.incidence.matrix().values());
        generate_grid(q, start)
    }

    /// All hard concepts whose extents and intents take values in the grid.
    pub fn enumerate_concepts(&self, seeds: Option<&[Q::Value]>) -> Result<ConceptLattice<Q>> {
        let q = self.quantale().clone();
        let grid = self.value_grid(seeds)?;
        let snapper = Snapper::new(&q, &grid);
        let (n_obj, n_attr) = (self.objects.len(), self.attributes.len());

        let mut extents: Vec<Vec<Q::Value>> = Vec::new();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut push = |ext: Vec<Q::Value>, extents: &mut Vec<Vec<Q::Value>>| {
            if seen.insert(snapper.keys(&ext)) {
                extents.push(ext);
            }
        };

        push(vec![q.top(); n_obj], &mut extents);
        for m in 0..n_attr {
            for &v in &grid {
                let ext = (0..n_obj)
                    .map(|g| snapper.snap(q.implies(v, self.value(g, m))))
                    .collect();
                push(ext, &mut extents);
            }
        }
        let mut i = 0;
        while i < extents.len() {
            for j in 0..i {
                let meet: Vec<Q::Value> = extents[i]
                    .iter()
                    .zip(&extents[j])
                    .map(|(&a, &b)| q.meet(a, b))
                    .collect();
                push(meet, &mut extents);
            }
            i += 1;
        }

        let mut concepts = Vec::with_capacity(extents.len());
        for extent in extents {
            let intent = snapper.snap_all(self.derive_intent(&extent)?);
            concepts.push(Concept { extent, intent });
        }
        concepts.sort_by(|a, b| lex_cmp(&q, &a.extent, &b.extent));

        let order = Matrix::from_fn(concepts.len(), concepts.len(), |i, j| {
            q.inf(
                concepts[i]
                    .extent
                    .iter()
                    .zip(&concepts[j].extent)
                    .map(|(&a, &b)| q.implies(a, b)),
            )
        });
        let lattice = ConceptLattice::from_parts(
            q,
            self.objects.elements().to_vec(),
            self.attributes.elements().to_vec(),
            grid,
            concepts,
            order,
        );
        lattice.check_complete(self)?;
        Ok(lattice)
    }
}

fn lex_cmp<Q: Quantale>(q: &Q, a: &[Q::Value], b: &[Q::Value]) -> std::cmp::Ordering {
    for (&x, &y) in a.iter().zip(b) {
        let c = q.total_cmp(x, y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

/// Closes `seeds ∪ {⊥, e, ⊤}` under `⊸`, `∧` and `∨`, sorted by
/// [`Quantale::total_cmp`].
pub fn generate_grid<Q: Quantale>(q: &Q, seeds: Vec<Q::Value>) -> Result<Vec<Q::Value>> {
    let mut grid: Vec<Q::Value> = Vec::new();
    let mut keys: HashSet<u64> = HashSet::new();
    let mut add = |v: Q::Value, grid: &mut Vec<Q::Value>| -> Result<()> {
        if keys.insert(q.canonical_key(v)) {
            if grid.len() >= GRID_CAP {
                return Err(Error::Resource {
                    what: "generated truth-value grid".to_string(),
                    cap: GRID_CAP,
                });
            }
            grid.push(v);
        }
        Ok(())
    };
    for v in [q.bottom(), q.unit(), q.top()].into_iter().chain(seeds) {
        add(q.check(v)?, &mut grid)?;
    }
    let mut i = 0;
    while i < grid.len() {
        for j in 0..=i {
            let (a, b) = (grid[i], grid[j]);
            for v in [q.implies(a, b), q.implies(b, a), q.meet(a, b), q.join(a, b)] {
                add(v, &mut grid)?;
            }
        }
        i += 1;
    }
    grid.sort_by(|&a, &b| q.total_cmp(a, b));
    Ok(grid)
}

struct Snapper<'a, Q: Quantale> {
    q: &'a Q,
    by_key: HashMap<u64, Q::Value>,
}

impl<'a, Q: Quantale> Snapper<'a, Q> {
    fn new(q: &'a Q, grid: &[Q::Value]) -> Self {
        Self {
            q,
            by_key: grid.iter().map(|&v| (q.canonical_key(v), v)).collect(),
        }
    }

    fn snap(&self, v: Q::Value) -> Q::Value {
        self.by_key
            .get(&self.q.canonical_key(v))
            .copied()
            .unwrap_or(v)
    }

    fn snap_all(&self, vs: Vec<Q::Value>) -> Vec<Q::Value> {
        vs.into_iter().map(|v| self.snap(v)).collect()
    }

    fn keys(&self, vs: &[Q::Value]) -> Vec<u64> {
        vs.iter().map(|&v| self.q.canonical_key(v)).collect()
    }
}

/// Hard concepts of a context with their specialization metric.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptLattice<Q: Quantale> {
    quantale: Q,
    objects: Vec<String>,
    attributes: Vec<String>,
    grid: Vec<Q::Value>,
    concepts: Vec<Concept<Q::Value>>,
    order: Matrix<Q::Value>,
    index: HashMap<Vec<u64>, usize>,
}

impl<Q: Quantale> ConceptLattice<Q> {
    pub fn from_parts(
        quantale: Q,
        objects: Vec<String>,
        attributes: Vec<String>,
        grid: Vec<Q::Value>,
        concepts: Vec<Concept<Q::Value>>,
        order: Matrix<Q::Value>,
    ) -> Self {
        let index = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| {
                (
                    c.extent
                        .iter()
                        .map(|&v| quantale.canonical_key(v))
                        .collect(),
                    i,
                )
            })
            .collect();
        Self {
            quantale,
            objects,
            attributes,
            grid,
            concepts,
            order,
            index,
        }
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
    }

    /// Same identifiers and concepts, with every value equal up to `≡`.
    pub fn equiv(&self, other: &Self) -> bool {
        let q = &self.quantale;
        let same = |a: &[Q::Value], b: &[Q::Value]| {
            a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| q.equiv(x, y))
        };
        q == &other.quantale
            && self.objects == other.objects
            && self.attributes == other.attributes
            && same(&self.grid, &other.grid)
            && self.concepts.len() == other.concepts.len()
            && self
                .concepts
                .iter()
                .zip(&other.concepts)
                .all(|(a, b)| same(&a.extent, &b.extent) && same(&a.intent, &b.intent))
            && self.order.rows() == other.order.rows()
            && same(
                &self.order.values().collect::<Vec<_>>(),
                &other.order.values().collect::<Vec<_>>(),
            )
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn grid(&self) -> &[Q::Value] {
        &self.grid
    }

    pub fn concepts(&self) -> &[Concept<Q::Value>] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// `order[i][j] = extent_i ⊸ extent_j`.
    pub fn order(&self) -> &Matrix<Q::Value> {
        &self.order
    }

    /// `c_i ⪯ c_j` in the underlying preorder.
    pub fn below(&self, i: usize, j: usize) -> bool {
        self.quantale
            .leq(self.quantale.unit(), self.order.get(i, j))
    }

    /// Index of the concept with this extent (up to `≡`).
    pub fn position_of_extent(&self, extent: &[Q::Value]) -> Option<usize> {
        let key: Vec<u64> = extent
            .iter()
            .map(|&v| self.quantale.canonical_key(v))
            .collect();
        self.index.get(&key).copied().or_else(|| {
            self.concepts
                .iter()
                .position(|c| pointwise_equiv(&self.quantale, &c.extent, extent))
        })
    }

    pub fn position(&self, concept: &Concept<Q::Value>) -> Option<usize> {
        self.position_of_extent(&concept.extent)
            .filter(|&i| pointwise_equiv(&self.quantale, &self.concepts[i].intent, &concept.intent))
    }

    fn indices(&self, cs: &[&Concept<Q::Value>]) -> Result<Vec<usize>> {
        cs.iter()
            .map(|c| {
                self.position(c)
                    .ok_or_else(|| Error::domain("concept is not a member of the lattice"))
            })
            .collect()
    }

    /// Meet: pointwise inf of extents. The empty meet is the top concept.
    pub fn meet_indices(&self, ctx: &FormalContext<Q>, idx: &[usize]) -> Result<usize> {
        let q = &self.quantale;
        let extent: Vec<Q::Value> = (0..self.objects.len())
            .map(|g| q.inf(idx.iter().map(|&i| self.concepts[i].extent[g])))
            .collect();
        let closed = ctx.derive_extent(&ctx.derive_intent(&extent)?)?;
        self.position_of_extent(&closed)
            .ok_or_else(|| Error::structural("meet of concepts is missing from the lattice"))
    }

    /// Join: pointwise inf of intents. The empty join is the bottom concept.
    pub fn join_indices(&self, ctx: &FormalContext<Q>, idx: &[usize]) -> Result<usize> {
        let q = &self.quantale;
        let intent: Vec<Q::Value> = (0..self.attributes.len())
            .map(|m| q.inf(idx.iter().map(|&i| self.concepts[i].intent[m])))
            .collect();
        let extent = ctx.derive_extent(&intent)?;
        self.position_of_extent(&extent)
            .ok_or_else(|| Error::structural("join of concepts is missing from the lattice"))
    }

    pub fn meet(
        &self,
        ctx: &FormalContext<Q>,
        cs: &[&Concept<Q::Value>],
    ) -> Result<Concept<Q::Value>> {
        let idx = self.indices(cs)?;
        Ok(self.concepts[self.meet_indices(ctx, &idx)?].clone())
    }

    pub fn join(
        &self,
        ctx: &FormalContext<Q>,
        cs: &[&Concept<Q::Value>],
    ) -> Result<Concept<Q::Value>> {
        let idx = self.indices(cs)?;
        Ok(self.concepts[self.join_indices(ctx, &idx)?].clone())
    }

    /// Checks that binary and empty meets and joins exist among the concepts.
    pub fn check_complete(&self, ctx: &FormalContext<Q>) -> Result<()> {
        self.meet_indices(ctx, &[])?;
        self.join_indices(ctx, &[])?;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                self.meet_indices(ctx, &[i, j])?;
                self.join_indices(ctx, &[i, j])?;
            }
        }
        Ok(())
    }

    /// Covering pairs `(lower, upper)` of the underlying order, with strictly
    /// equivalent concepts already collapsed by construction.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let strictly = |i: usize, j: usize| i != j && self.below(i, j) && !self.below(j, i);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if strictly(i, j) && !(0..n).any(|k| strictly(i, k) && strictly(k, j)) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}
