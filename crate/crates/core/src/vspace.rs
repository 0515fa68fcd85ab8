//! Enriched spaces: finite sets carrying a quantale-valued metric.
//!
//! A `VSpace` satisfies the zero law `e ⪯ μ(x,x)` and the triangle axiom
//! `μ(x1,x2) ⊗ μ(x2,x3) ⪯ μ(x1,x3)`. Construction only checks structure
//! (shape, identifiers, carrier membership); the axioms are checked by
//! [`VSpace::validate`] so that near-spaces can be loaded, reported on and
//! repaired.

use std::collections::BTreeMap;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quantale::Quantale;
use crate::report::{Axiom, ValidationReport};

#[derive(Debug, Clone, PartialEq)]
pub struct VSpace<Q: Quantale> {
    quantale: Q,
    elements: Vec<String>,
    metric: Matrix<Q::Value>,
}

impl<Q: Quantale> VSpace<Q> {
    pub fn new(quantale: Q, elements: Vec<String>, metric: Matrix<Q::Value>) -> Result<Self> {
        let n = elements.len();
        if metric.rows() != n || metric.cols() != n {
            return Err(Error::structural(format!(
                "metric is {}x{} but the space has {n} elements",
                metric.rows(),
                metric.cols()
            )));
        }
        check_identifiers(&elements)?;
        for v in metric.values() {
            quantale.check(v)?;
        }
        Ok(Self {
            quantale,
            elements,
            metric,
        })
    }

    pub fn from_fn(
        quantale: Q,
        elements: Vec<String>,
        f: impl FnMut(usize, usize) -> Q::Value,
    ) -> Result<Self> {
        let n = elements.len();
        let metric = Matrix::from_fn(n, n, f);
        Self::new(quantale, elements, metric)
    }

    /// The discrete space: `e` on the diagonal, `⊥` elsewhere.
    pub fn discrete(quantale: Q, elements: Vec<String>) -> Result<Self> {
        let (e, bot) = (quantale.unit(), quantale.bottom());
        Self::from_fn(quantale, elements, |i, j| if i == j { e } else { bot })
    }

    pub fn empty(quantale: Q) -> Self {
        let metric = Matrix::filled(0, 0, quantale.unit());
        Self {
            quantale,
            elements: Vec::new(),
            metric,
        }
    }

    /// The least valid space above a raw matrix: the diagonal is raised to
    /// `e` and the matrix is closed under `⊗`-paths.
    pub fn closure(quantale: Q, elements: Vec<String>, raw: Matrix<Q::Value>) -> Result<Self> {
        let mut space = Self::new(quantale, elements, raw)?;
        let q = space.quantale.clone();
        let n = space.len();
        for i in 0..n {
            let d = q.join(space.metric.get(i, i), q.unit());
            space.metric.set(i, i, d);
        }
        // Floyd-Warshall over the (sup, ⊗) semiring
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = q.tensor(space.metric.get(i, k), space.metric.get(k, j));
                    let cur = space.metric.get(i, j);
                    if !q.leq(via, cur) {
                        space.metric.set(i, j, q.join(cur, via));
                    }
                }
            }
        }
        Ok(space)
    }

    /// The quantale viewed as a space with metric `a ⊸ b`, over `values`.
    pub fn of_quantale(quantale: Q, values: &[Q::Value]) -> Result<Self> {
        let elements = values.iter().map(|&v| quantale.format_value(v)).collect();
        let q = quantale.clone();
        Self::from_fn(quantale, elements, |i, j| q.implies(values[i], values[j]))
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn metric(&self) -> &Matrix<Q::Value> {
        &self.metric
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == id)
    }

    pub fn distance(&self, i: usize, j: usize) -> Q::Value {
        self.metric.get(i, j)
    }

    /// Same quantale, same identifiers in the same order, equivalent metric.
    pub fn same_space(&self, other: &Self) -> bool {
        self.quantale == other.quantale
            && self.elements == other.elements
            && self.metric_equiv(other)
    }

    pub fn metric_equiv(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .metric
                .values()
                .zip(other.metric.values())
                .all(|(a, b)| self.quantale.equiv(a, b))
    }

    pub fn validate(&self) -> ValidationReport {
        let q = &self.quantale;
        let f = |v| q.format_value(v);
        let mut report = ValidationReport::new();
        let n = self.len();
        for i in 0..n {
            let d = self.metric.get(i, i);
            if !q.leq(q.unit(), d) {
                report.push(
                    Axiom::Reflexivity,
                    &[&self.elements[i]],
                    format!("e = {} ⋠ μ(x,x) = {}", f(q.unit()), f(d)),
                );
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (
                        self.metric.get(i, j),
                        self.metric.get(j, k),
                        self.metric.get(i, k),
                    );
                    let lhs = q.tensor(a, b);
                    if !q.leq(lhs, c) {
                        report.push(
                            Axiom::Transitivity,
                            &[&self.elements[i], &self.elements[j], &self.elements[k]],
                            format!("{} ⊗ {} = {} ⋠ {}", f(a), f(b), f(lhs), f(c)),
                        );
                    }
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_report().is_valid()
    }

    fn symmetry_report(&self) -> ValidationReport {
        let q = &self.quantale;
        let mut report = ValidationReport::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let (a, b) = (self.metric.get(i, j), self.metric.get(j, i));
                if !q.equiv(a, b) {
                    report.push(
                        Axiom::Symmetry,
                        &[&self.elements[i], &self.elements[j]],
                        format!("{} ≢ {}", q.format_value(a), q.format_value(b)),
                    );
                }
            }
        }
        report
    }

    /// The opposite space, with the metric transposed.
    pub fn dual(&self) -> Self {
        Self {
            quantale: self.quantale.clone(),
            elements: self.elements.clone(),
            metric: self.metric.transpose(),
        }
    }

    /// Disjoint union with `⊥` across the two blocks.
    ///
    /// Identifiers are kept when the two element sets are disjoint; otherwise
    /// every identifier is qualified as `0:x` / `1:y`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.quantale != other.quantale {
            return Err(Error::structural("sum of spaces over different quantales"));
        }
        let elements = sum_identifiers(&self.elements, &other.elements);
        let (n0, bot) = (self.len(), self.quantale.bottom());
        Self::from_fn(self.quantale.clone(), elements, |i, j| {
            match (i < n0, j < n0) {
                (true, true) => self.metric.get(i, j),
                (false, false) => other.metric.get(i - n0, j - n0),
                _ => bot,
            }
        })
    }

    /// The junction metric `μ(x1,x2) ⊗ μ(x2,x1)`.
    pub fn symmetrize(&self) -> ApproximationSpace<Q> {
        let q = &self.quantale;
        let metric = Matrix::from_fn(self.len(), self.len(), |i, j| {
            q.tensor(self.metric.get(i, j), self.metric.get(j, i))
        });
        ApproximationSpace(Self {
            quantale: self.quantale.clone(),
            elements: self.elements.clone(),
            metric,
        })
    }

    /// `x1 ⪯ x2` iff `e ⪯ μ(x1,x2)`, with the induced indiscernibility classes.
    pub fn underlying_preorder(&self) -> UnderlyingPreorder {
        let q = &self.quantale;
        let n = self.len();
        let relation = Matrix::from_fn(n, n, |i, j| q.leq(q.unit(), self.metric.get(i, j)));

        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if relation.get(i, j) && relation.get(j, i) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            groups
                .entry(root)
                .or_default()
                .push(self.elements[i].clone());
        }
        let mut classes: Vec<Vec<String>> = groups
            .into_values()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect();
        classes.sort();
        let strict = classes.iter().all(|c| c.len() == 1);
        UnderlyingPreorder {
            elements: self.elements.clone(),
            relation,
            classes,
            strict,
        }
    }
}

pub(crate) fn check_identifiers(ids: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for id in ids {
        if id.is_empty() {
            return Err(Error::structural("empty element identifier"));
        }
        if !seen.insert(id.as_str()) {
            return Err(Error::structural(format!(
                "duplicate element identifier `{id}`"
            )));
        }
    }
    Ok(())
}

fn sum_identifiers(left: &[String], right: &[String]) -> Vec<String> {
    let clash = left.iter().any(|l| right.contains(l));
    if clash {
        left.iter()
            .map(|x| format!("0:{x}"))
            .chain(right.iter().map(|y| format!("1:{y}")))
            .collect()
    } else {
        left.iter().chain(right.iter()).cloned().collect()
    }
}

/// The crisp preorder underlying a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderlyingPreorder {
    pub elements: Vec<String>,
    pub relation: Matrix<bool>,
    /// Indiscernibility classes, each sorted, listed in order of their
    /// lexicographically least member (the class representative).
    pub classes: Vec<Vec<String>>,
    pub strict: bool,
}

impl UnderlyingPreorder {
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.relation.get(i, j)
    }

    pub fn is_equivalence(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| (0..n).all(|j| self.relation.get(i, j) == self.relation.get(j, i)))
    }

    pub fn representative(&self, id: &str) -> Option<&str> {
        self.classes
            .iter()
            .find(|c| c.iter().any(|x| x == id))
            .map(|c| c[0].as_str())
    }
}

/// A symmetric space: the metric is a graded indiscernibility measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationSpace<Q: Quantale>(VSpace<Q>);

impl<Q: Quantale> ApproximationSpace<Q> {
    pub fn new(space: VSpace<Q>) -> Result<Self> {
        let report = space.symmetry_report();
        if report.is_valid() {
            Ok(Self(space))
        } else {
            Err(Error::domain(format!(
                "space is not symmetric: {}",
                report.violations[0]
            )))
        }
    }

    pub fn discrete(quantale: Q, elements: Vec<String>) -> Result<Self> {
        Ok(Self(VSpace::discrete(quantale, elements)?))
    }

    pub fn space(&self) -> &VSpace<Q> {
        &self.0
    }

    pub fn into_space(self) -> VSpace<Q> {
        self.0
    }
}

impl<Q: Quantale> Deref for ApproximationSpace<Q> {
    type Target = VSpace<Q>;

    fn deref(&self) -> &VSpace<Q> {
        &self.0
    }
}

impl<Q: Quantale> TryFrom<VSpace<Q>> for ApproximationSpace<Q> {
    type Error = Error;

    fn try_from(space: VSpace<Q>) -> Result<Self> {
        Self::new(space)
    }
}

/// A total function between the elements of two spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct VMap<Q: Quantale> {
    source: VSpace<Q>,
    target: VSpace<Q>,
    mapping: Vec<usize>,
}

impl<Q: Quantale> VMap<Q> {
    pub fn new(source: VSpace<Q>, target: VSpace<Q>, mapping: Vec<usize>) -> Result<Self> {
        if source.quantale != target.quantale {
            return Err(Error::structural(
                "map between spaces over different quantales",
            ));
        }
        if mapping.len() != source.len() {
            return Err(Error::structural(format!(
                "mapping has {} entries for {} source elements",
                mapping.len(),
                source.len()
            )));
        }
        if let Some(&bad) = mapping.iter().find(|&&t| t >= target.len()) {
            return Err(Error::structural(format!(
                "mapping target index {bad} is not an element of the target"
            )));
        }
        Ok(Self {
            source,
            target,
            mapping,
        })
    }

    /// Builds a map from `(source id, target id)` pairs covering the source.
    pub fn from_pairs(
        source: VSpace<Q>,
        target: VSpace<Q>,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let mut mapping = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            let i = source
                .index_of(x)
                .ok_or_else(|| Error::structural(format!("`{x}` is not a source element")))?;
            let j = target
                .index_of(y)
                .ok_or_else(|| Error::structural(format!("`{y}` is not a target element")))?;
            mapping[i] = j;
        }
        if let Some(i) = mapping.iter().position(|&m| m == usize::MAX) {
            return Err(Error::structural(format!(
                "mapping is not total: `{}` has no image",
                source.elements[i]
            )));
        }
        Self::new(source, target, mapping)
    }

    pub fn identity(space: VSpace<Q>) -> Self {
        let mapping = (0..space.len()).collect();
        Self {
            target: space.clone(),
            source: space,
            mapping,
        }
    }

    pub fn source(&self) -> &VSpace<Q> {
        &self.source
    }

    pub fn target(&self) -> &VSpace<Q> {
        &self.target
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    /// Pairs violating `μ(x1,x2) ⪯ ν(f x1, f x2)`.
    pub fn check(&self) -> ValidationReport {
        let q = &self.source.quantale;
        let mut report = ValidationReport::new();
        for i in 0..self.source.len() {
            for j in 0..self.source.len() {
                let a = self.source.distance(i, j);
                let b = self.target.distance(self.mapping[i], self.mapping[j]);
                if !q.leq(a, b) {
                    report.push(
                        Axiom::MapPreservesMetric,
                        &[&self.source.elements[i], &self.source.elements[j]],
                        format!("{} ⋠ {}", q.format_value(a), q.format_value(b)),
                    );
                }
            }
        }
        report
    }

    pub fn is_isometry(&self) -> bool {
        let q = &self.source.quantale;
        (0..self.source.len()).all(|i| {
            (0..self.source.len()).all(|j| {
                q.equiv(
                    self.source.distance(i, j),
                    self.target.distance(self.mapping[i], self.mapping[j]),
                )
            })
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &VMap<Q>) -> Result<VMap<Q>> {
        if !self.target.same_space(&next.source) {
            return Err(Error::structural(
                "maps do not compose: target differs from source",
            ));
        }
        let mapping = self.mapping.iter().map(|&j| next.mapping[j]).collect();
        VMap::new(self.source.clone(), next.target.clone(), mapping)
    }
}

/// Pulls the target metric back along `mapping`, making the map an isometry.
pub fn induced_metric<Q: Quantale>(
    elements: Vec<String>,
    target: &VSpace<Q>,
    mapping: Vec<usize>,
) -> Result<(VSpace<Q>, VMap<Q>)> {
    if let Some(&bad) = mapping.iter().find(|&&t| t >= target.len()) {
        return Err(Error::structural(format!(
            "mapping target index {bad} is not an element of the target"
        )));
    }
    let space = VSpace::from_fn(target.quantale.clone(), elements, |i, j| {
        target.distance(mapping[i], mapping[j])
    })?;
    let map = VMap::new(space.clone(), target.clone(), mapping)?;
    Ok((space, map))
}

/// Checks `μ_Y(f x, y) ≡ μ_X(x, g y)` for all `x`, `y`.
pub fn check_adjoint<Q: Quantale>(f: &VMap<Q>, g: &VMap<Q>) -> Result<ValidationReport> {
    if !f.source.same_space(&g.target) || !f.target.same_space(&g.source) {
        return Err(Error::structural(
            "adjoint check needs maps X→Y and Y→X between the same spaces",
        ));
    }
    let (x_space, y_space) = (&f.source, &f.target);
    let q = &x_space.quantale;
    let mut report = ValidationReport::new();
    for x in 0..x_space.len() {
        for y in 0..y_space.len() {
            let lhs = y_space.distance(f.apply(x), y);
            let rhs = x_space.distance(x, g.apply(y));
            if !q.equiv(lhs, rhs) {
                report.push(
                    Axiom::Adjointness,
                    &[&x_space.elements[x], &y_space.elements[y]],
                    format!(
                        "μ_Y(f x, y) = {} ≢ μ_X(x, g y) = {}",
                        q.format_value(lhs),
                        q.format_value(rhs)
                    ),
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{Bool2, CostReal, Fuzzy01};

    fn ids(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn cost_ab() -> VSpace<CostReal> {
        let m = Matrix::from_rows(vec![vec![0.0, 3.0], vec![4.0, 0.0]], 2).unwrap();
        VSpace::new(CostReal, ids(&["a", "b"]), m).unwrap()
    }

    fn chain3(xz: bool) -> VSpace<Bool2> {
        let m = Matrix::from_rows(
            vec![
                vec![true, true, xz],
                vec![false, true, true],
                vec![false, false, true],
            ],
            3,
        )
        .unwrap();
        VSpace::new(Bool2, ids(&["x", "y", "z"]), m).unwrap()
    }

    #[test]
    fn singleton_space_is_valid() {
        let s = VSpace::discrete(Fuzzy01, ids(&["x"])).unwrap();
        assert!(s.is_valid());
    }

    #[test]
    fn broken_chain_reports_the_triple() {
        let report = chain3(false).validate();
        assert_eq!(report.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.axiom, Axiom::Transitivity);
        assert_eq!(v.elements, ids(&["x", "y", "z"]));
        assert!(chain3(true).is_valid());
    }

    #[test]
    fn asymmetric_cost_space() {
        let s = cost_ab();
        assert!(s.is_valid());
        assert!(!s.is_symmetric());
        let d = s.dual();
        assert_eq!(d.distance(0, 1), 4.0);
        assert_eq!(d.distance(1, 0), 3.0);
        assert_eq!(d.dual(), s);
    }

    #[test]
    fn structural_errors() {
        let m = Matrix::filled(2, 3, true);
        assert!(matches!(
            VSpace::new(Bool2, ids(&["a", "b"]), m),
            Err(Error::Structural(_))
        ));
        let m = Matrix::filled(2, 2, 0.5);
        assert!(VSpace::new(Fuzzy01, ids(&["a", "a"]), m).is_err());
        let m = Matrix::filled(1, 1, 1.5);
        assert!(matches!(
            VSpace::new(Fuzzy01, ids(&["a"]), m),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sums() {
        let s = chain3(true);
        assert_eq!(s.sum(&VSpace::empty(Bool2)).unwrap(), s);
        let x = VSpace::discrete(Bool2, ids(&["x"])).unwrap();
        let y = VSpace::discrete(Bool2, ids(&["y"])).unwrap();
        let xy = x.sum(&y).unwrap();
        assert_eq!(xy, VSpace::discrete(Bool2, ids(&["x", "y"])).unwrap());
        let a = VSpace::discrete(CostReal, ids(&["a"])).unwrap();
        let b = VSpace::discrete(CostReal, ids(&["b"])).unwrap();
        let ab = a.sum(&b).unwrap();
        assert_eq!(ab.distance(0, 1), f64::INFINITY);
        assert!(ab.is_valid());
        // colliding identifiers get qualified
        let xx = x.sum(&x).unwrap();
        assert_eq!(xx.elements(), &ids(&["0:x", "1:x"])[..]);
    }

    #[test]
    fn symmetrize_examples() {
        let s = cost_ab().symmetrize();
        assert_eq!(s.distance(0, 1), 7.0);
        assert_eq!(s.distance(1, 0), 7.0);
        assert!(s.is_valid());

        let m = Matrix::from_rows(vec![vec![true, true], vec![false, true]], 2).unwrap();
        let chain = VSpace::new(Bool2, ids(&["x", "y"]), m).unwrap();
        let sym = chain.symmetrize();
        assert!(!sym.distance(0, 1) && !sym.distance(1, 0));
        assert_eq!(sym.symmetrize(), sym);
    }

    #[test]
    fn underlying_preorders() {
        let p = chain3(true).underlying_preorder();
        assert!(p.leq(0, 2) && !p.leq(2, 0));
        assert!(p.strict);

        let m = Matrix::from_rows(vec![vec![1.0, 0.6], vec![0.6, 1.0]], 2).unwrap();
        let f = VSpace::new(Fuzzy01, ids(&["a", "b"]), m).unwrap();
        let p = f.underlying_preorder();
        assert!(!p.leq(0, 1) && !p.leq(1, 0));

        let m = Matrix::filled(2, 2, 0.0);
        let c = VSpace::new(CostReal, ids(&["b", "a"]), m).unwrap();
        let p = c.underlying_preorder();
        assert!(!p.strict);
        assert_eq!(p.classes, vec![ids(&["a", "b"])]);
        assert_eq!(p.representative("b"), Some("a"));
    }

    #[test]
    fn quantale_space_is_strict_and_recovers_the_order() {
        let values = CostReal.samples();
        let v = VSpace::of_quantale(CostReal, &values).unwrap();
        assert!(v.is_valid());
        let p = v.underlying_preorder();
        assert!(p.strict);
        for (i, &a) in values.iter().enumerate() {
            for (j, &b) in values.iter().enumerate() {
                assert_eq!(p.leq(i, j), CostReal.leq(a, b));
            }
        }
    }

    #[test]
    fn maps() {
        let s = chain3(true);
        let id = VMap::identity(s.clone());
        assert!(id.check().is_valid());
        assert!(id.is_isometry());

        let point = VSpace::discrete(Fuzzy01, ids(&["p"])).unwrap();
        let m = Matrix::from_rows(vec![vec![1.0, 0.2], vec![0.7, 1.0]], 2).unwrap();
        let src = VSpace::new(Fuzzy01, ids(&["a", "b"]), m).unwrap();
        let constant = VMap::new(src, point, vec![0, 0]).unwrap();
        assert!(constant.check().is_valid());

        let target = VSpace::new(
            Fuzzy01,
            ids(&["u", "v"]),
            Matrix::from_rows(vec![vec![1.0, 0.3], vec![0.3, 1.0]], 2).unwrap(),
        )
        .unwrap();
        let (induced, f) = induced_metric(ids(&["a", "b"]), &target, vec![0, 1]).unwrap();
        assert_eq!(induced.distance(0, 1), 0.3);
        assert!(f.is_isometry());
        assert!(induced_metric(ids(&["a"]), &target, vec![5]).is_err());
    }

    #[test]
    fn map_violation_is_reported() {
        // identity ids but the target forgets the order
        let s = chain3(true);
        let flat = VSpace::discrete(Bool2, ids(&["x", "y", "z"])).unwrap();
        let f = VMap::new(s, flat, vec![0, 1, 2]).unwrap();
        assert_eq!(f.check().len(), 3);
    }

    #[test]
    fn tensor_implication_adjunction_on_bool_quantale() {
        let values = Bool2.samples();
        let space = VSpace::of_quantale(Bool2, &values).unwrap();
        let index = |v: bool| values.iter().position(|&w| w == v).unwrap();
        for &v in &values {
            let f = VMap::new(
                space.clone(),
                space.clone(),
                values.iter().map(|&x| index(Bool2.tensor(x, v))).collect(),
            )
            .unwrap();
            let g = VMap::new(
                space.clone(),
                space.clone(),
                values.iter().map(|&y| index(Bool2.implies(v, y))).collect(),
            )
            .unwrap();
            assert!(check_adjoint(&f, &g).unwrap().is_valid());
        }
    }

    #[test]
    fn non_adjoint_constants() {
        let s = chain3(true);
        let f = VMap::new(s.clone(), s.clone(), vec![2, 2, 2]).unwrap();
        let g = VMap::new(s.clone(), s.clone(), vec![0, 0, 0]).unwrap();
        assert!(!check_adjoint(&f, &g).unwrap().is_valid());
        let id = VMap::identity(s);
        assert!(check_adjoint(&id, &id).unwrap().is_valid());
    }

    #[test]
    fn closure_repairs() {
        let raw = chain3(false).metric().clone();
        let fixed = VSpace::closure(Bool2, ids(&["x", "y", "z"]), raw).unwrap();
        assert!(fixed.is_valid());
        assert_eq!(fixed, chain3(true));
    }
}
