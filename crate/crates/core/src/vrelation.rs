//! Enriched relations between spaces.
//!
//! A relation `τ: X ⇀ Y` is a matrix of truth values compatible with both
//! metrics. Relations compose like matrices over `(sup, ⊗)`, and composition
//! has right adjoints on either side computed by `(inf, ⊸)`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quantale::Quantale;
use crate::report::{Axiom, ValidationReport};
use crate::vspace::{VMap, VSpace};

#[derive(Debug, Clone, PartialEq)]
pub struct VRelation<Q: Quantale> {
    source: VSpace<Q>,
    target: VSpace<Q>,
    matrix: Matrix<Q::Value>,
}

impl<Q: Quantale> VRelation<Q> {
    pub fn new(source: VSpace<Q>, target: VSpace<Q>, matrix: Matrix<Q::Value>) -> Result<Self> {
        if source.quantale() != target.quantale() {
            return Err(Error::structural(
                "relation between spaces over different quantales",
            ));
        }
        if matrix.rows() != source.len() || matrix.cols() != target.len() {
            return Err(Error::structural(format!(
                "relation matrix is {}x{}, spaces need {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.len(),
                target.len()
            )));
        }
        for v in matrix.values() {
            source.quantale().check(v)?;
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn from_fn(
        source: VSpace<Q>,
        target: VSpace<Q>,
        f: impl FnMut(usize, usize) -> Q::Value,
    ) -> Result<Self> {
        let matrix = Matrix::from_fn(source.len(), target.len(), f);
        Self::new(source, target, matrix)
    }

    /// The metric of `space` read as a relation; the unit for composition.
    pub fn identity(space: &VSpace<Q>) -> Self {
        Self {
            source: space.clone(),
            target: space.clone(),
            matrix: space.metric().clone(),
        }
    }

    pub fn bottom(source: VSpace<Q>, target: VSpace<Q>) -> Result<Self> {
        let bot = source.quantale().bottom();
        Self::from_fn(source, target, |_, _| bot)
    }

    /// `f_*(x, y) = ν(f x, y)`.
    pub fn lift_lower(f: &VMap<Q>) -> Self {
        let target = f.target();
        Self {
            source: f.source().clone(),
            target: target.clone(),
            matrix: Matrix::from_fn(f.source().len(), target.len(), |x, y| {
                target.distance(f.apply(x), y)
            }),
        }
    }

    /// `f^*(y, x) = ν(y, f x)`.
    pub fn lift_upper(f: &VMap<Q>) -> Self {
        let target = f.target();
        Self {
            source: target.clone(),
            target: f.source().clone(),
            matrix: Matrix::from_fn(target.len(), f.source().len(), |y, x| {
                target.distance(y, f.apply(x))
            }),
        }
    }

    pub fn quantale(&self) -> &Q {
        self.source.quantale()
    }

    pub fn source(&self) -> &VSpace<Q> {
        &self.source
    }

    pub fn target(&self) -> &VSpace<Q> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<Q::Value> {
        &self.matrix
    }

    pub fn get(&self, x: usize, y: usize) -> Q::Value {
        self.matrix.get(x, y)
    }

    /// Violations of `μ(x',x) ⊗ τ(x,y) ⪯ τ(x',y)` and `τ(x,y) ⊗ ν(y,y') ⪯ τ(x,y')`.
    pub fn validate(&self) -> ValidationReport {
        let q = self.quantale();
        let f = |v| q.format_value(v);
        let (xs, ys) = (self.source.elements(), self.target.elements());
        let mut report = ValidationReport::new();
        for x in 0..xs.len() {
            for y in 0..ys.len() {
                let t = self.matrix.get(x, y);
                for x2 in 0..xs.len() {
                    let m = self.source.distance(x2, x);
                    let lhs = q.tensor(m, t);
                    let rhs = self.matrix.get(x2, y);
                    if !q.leq(lhs, rhs) {
                        report.push(
                            Axiom::LeftCompatibility,
                            &[&xs[x2], &xs[x], &ys[y]],
                            format!("{} ⊗ {} ⋠ {}", f(m), f(t), f(rhs)),
                        );
                    }
                }
                for y2 in 0..ys.len() {
                    let n = self.target.distance(y, y2);
                    let lhs = q.tensor(t, n);
                    let rhs = self.matrix.get(x, y2);
                    if !q.leq(lhs, rhs) {
                        report.push(
                            Axiom::RightCompatibility,
                            &[&xs[x], &ys[y], &ys[y2]],
                            format!("{} ⊗ {} ⋠ {}", f(t), f(n), f(rhs)),
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

    /// `(s ∘ t)(x, z) = ⋁_y s(x,y) ⊗ t(y,z)`.
    pub fn compose(&self, next: &Self) -> Result<Self> {
        if !self.target.same_space(&next.source) {
            return Err(Error::structural(
                "cannot compose: target of the first relation is not the source of the second",
            ));
        }
        let q = self.quantale();
        let matrix = Matrix::from_fn(self.source.len(), next.target.len(), |x, z| {
            q.sup((0..self.target.len()).map(|y| q.tensor(self.get(x, y), next.get(y, z))))
        });
        Ok(Self {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix,
        })
    }

    /// Source-side residuation `(s ⊸ r)(y, z) = ⋀_x s(x,y) ⊸ r(x,z)` for
    /// `s: X ⇀ Y` and `r: X ⇀ Z`, giving `Y ⇀ Z`.
    ///
    /// Right adjoint to composition: `s ∘ t ⪯ r` iff `t ⪯ s ⊸ r`.
    pub fn residuate_source(&self, r: &Self) -> Result<Self> {
        if !self.source.same_space(&r.source) {
            return Err(Error::structural(
                "source residuation needs a shared source space",
            ));
        }
        let q = self.quantale();
        let matrix = Matrix::from_fn(self.target.len(), r.target.len(), |y, z| {
            q.inf((0..self.source.len()).map(|x| q.implies(self.get(x, y), r.get(x, z))))
        });
        Ok(Self {
            source: self.target.clone(),
            target: r.target.clone(),
            matrix,
        })
    }

    /// Target-side residuation `(r ⇐ t)(x, z) = ⋀_y t(z,y) ⊸ r(x,y)` for
    /// `r: X ⇀ Y` (`self`) and `t: Z ⇀ Y`, giving `X ⇀ Z`.
    pub fn residuate_target(&self, t: &Self) -> Result<Self> {
        if !self.target.same_space(&t.target) {
            return Err(Error::structural(
                "target residuation needs a shared target space",
            ));
        }
        let q = self.quantale();
        let matrix = Matrix::from_fn(self.source.len(), t.source.len(), |x, z| {
            q.inf((0..self.target.len()).map(|y| q.implies(t.get(z, y), self.get(x, y))))
        });
        Ok(Self {
            source: self.source.clone(),
            target: t.source.clone(),
            matrix,
        })
    }

    /// The relation `Y^op ⇀ X^op` with the matrix transposed.
    pub fn opposite(&self) -> Self {
        Self {
            source: self.target.dual(),
            target: self.source.dual(),
            matrix: self.matrix.transpose(),
        }
    }

    /// `μ ∘ τ ∘ ν`: the least valid relation above the raw matrix.
    pub fn repair(&self) -> Result<Self> {
        Self::identity(&self.source)
            .compose(self)?
            .compose(&Self::identity(&self.target))
    }

    /// Cellwise `self ⪯ other`.
    pub fn leq(&self, other: &Self) -> bool {
        let q = self.quantale();
        self.matrix.rows() == other.matrix.rows()
            && self.matrix.cols() == other.matrix.cols()
            && self
                .matrix
                .values()
                .zip(other.matrix.values())
                .all(|(a, b)| q.leq(a, b))
    }

    /// Cellwise `≡`.
    pub fn equiv(&self, other: &Self) -> bool {
        self.leq(other) && other.leq(self)
    }

    /// Cells whose values differ (up to `≡`) from `other`, as `(row, col)`.
    pub fn diff(&self, other: &Self) -> Vec<(usize, usize)> {
        let q = self.quantale();
        let mut out = Vec::new();
        for i in 0..self.matrix.rows().min(other.matrix.rows()) {
            for j in 0..self.matrix.cols().min(other.matrix.cols()) {
                if !q.equiv(self.get(i, j), other.get(i, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{Bool2, CostReal, Fuzzy01};

    fn ids(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn chain(names: &[&str]) -> VSpace<Bool2> {
        VSpace::from_fn(Bool2, ids(names), |i, j| i <= j).unwrap()
    }

    #[test]
    fn identity_relation_is_valid() {
        let s = chain(&["x", "y", "z"]);
        assert!(VRelation::identity(&s).is_valid());
    }

    #[test]
    fn bottom_relation_is_valid() {
        let s = chain(&["x", "y"]);
        let t = VSpace::discrete(Bool2, ids(&["u", "v", "w"])).unwrap();
        assert!(VRelation::bottom(s, t).unwrap().is_valid());
    }

    #[test]
    fn left_violation() {
        // x ⪯ y in the source, and τ relates y to u but not x to u
        let s = chain(&["x", "y"]);
        let t = VSpace::discrete(Bool2, ids(&["u"])).unwrap();
        let r = VRelation::from_fn(s, t, |x, _| x == 1).unwrap();
        let report = r.validate();
        assert_eq!(report.count(Axiom::LeftCompatibility), 1);
        assert_eq!(report.violations[0].elements, ids(&["x", "y", "u"]));
    }

    #[test]
    fn quantale_mismatch_and_shape_errors() {
        let s = chain(&["x", "y"]);
        assert!(VRelation::new(s.clone(), s.clone(), Matrix::filled(3, 2, true)).is_err());
        let a = VRelation::identity(&s);
        let other = chain(&["p", "q"]);
        assert!(a.compose(&VRelation::identity(&other)).is_err());
    }

    #[test]
    fn boolean_composition_is_relational_product() {
        let x = VSpace::discrete(Bool2, ids(&["a", "b"])).unwrap();
        let y = VSpace::discrete(Bool2, ids(&["p", "q", "r"])).unwrap();
        let z = VSpace::discrete(Bool2, ids(&["u", "v"])).unwrap();
        let s = VRelation::from_fn(x, y.clone(), |i, j| (i + j) % 2 == 0).unwrap();
        let t = VRelation::from_fn(y, z, |j, k| j == 2 && k == 1 || j == 1 && k == 0).unwrap();
        let c = s.compose(&t).unwrap();
        for i in 0..2 {
            for k in 0..2 {
                let expect = (0..3).any(|j| s.get(i, j) && t.get(j, k));
                assert_eq!(c.get(i, k), expect);
            }
        }
    }

    #[test]
    fn cost_composition_is_min_plus() {
        let x = VSpace::discrete(CostReal, ids(&["a", "b"])).unwrap();
        let y = VSpace::discrete(CostReal, ids(&["p", "q"])).unwrap();
        let z = VSpace::discrete(CostReal, ids(&["u", "v"])).unwrap();
        let s = VRelation::new(
            x,
            y.clone(),
            Matrix::from_rows(vec![vec![1.0, 4.0], vec![2.0, 0.5]], 2).unwrap(),
        )
        .unwrap();
        let t = VRelation::new(
            y,
            z,
            Matrix::from_rows(vec![vec![3.0, 1.0], vec![0.0, 2.5]], 2).unwrap(),
        )
        .unwrap();
        let c = s.compose(&t).unwrap();
        // min(1+3, 4+0) = 4; min(1+1, 4+2.5) = 2; min(2+3, 0.5+0) = 0.5; min(2+1, 0.5+2.5) = 3
        assert_eq!(c.matrix().row(0), &[4.0, 2.0]);
        assert_eq!(c.matrix().row(1), &[0.5, 3.0]);
    }

    #[test]
    fn identity_laws_on_a_fuzzy_relation() {
        let x = VSpace::closure(
            Fuzzy01,
            ids(&["a", "b"]),
            Matrix::from_rows(vec![vec![1.0, 0.4], vec![0.7, 1.0]], 2).unwrap(),
        )
        .unwrap();
        let y = VSpace::closure(
            Fuzzy01,
            ids(&["p", "q"]),
            Matrix::from_rows(vec![vec![1.0, 0.9], vec![0.2, 1.0]], 2).unwrap(),
        )
        .unwrap();
        let raw = VRelation::new(
            x.clone(),
            y.clone(),
            Matrix::from_rows(vec![vec![0.3, 0.1], vec![0.6, 0.0]], 2).unwrap(),
        )
        .unwrap();
        let tau = raw.repair().unwrap();
        assert!(tau.is_valid());
        assert!(raw.leq(&tau));
        assert_eq!(VRelation::identity(&x).compose(&tau).unwrap(), tau);
        assert_eq!(tau.compose(&VRelation::identity(&y)).unwrap(), tau);
        // identity on the source residuates to the relation itself
        assert_eq!(VRelation::identity(&x).residuate_source(&tau).unwrap(), tau);
        assert_eq!(tau.residuate_target(&VRelation::identity(&y)).unwrap(), tau);
    }

    #[test]
    fn singleton_source_residuation_is_pointwise() {
        let one = VSpace::discrete(Bool2, ids(&["*"])).unwrap();
        let y = VSpace::discrete(Bool2, ids(&["p", "q"])).unwrap();
        let z = VSpace::discrete(Bool2, ids(&["u", "v"])).unwrap();
        let s = VRelation::from_fn(one.clone(), y, |_, j| j == 0).unwrap();
        let r = VRelation::from_fn(one, z, |_, k| k == 1).unwrap();
        let res = s.residuate_source(&r).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(res.get(j, k), Bool2.implies(s.get(0, j), r.get(0, k)));
            }
        }
    }

    #[test]
    fn target_residuation_matches_source_residuation_on_opposites() {
        let x = chain(&["a", "b"]);
        let y = chain(&["p", "q"]);
        let z = VSpace::discrete(Bool2, ids(&["u", "v"])).unwrap();
        for bits_r in 0..16u32 {
            for bits_t in 0..16u32 {
                let r =
                    VRelation::from_fn(x.clone(), y.clone(), |i, j| bits_r >> (2 * i + j) & 1 == 1)
                        .unwrap();
                let t =
                    VRelation::from_fn(z.clone(), y.clone(), |i, j| bits_t >> (2 * i + j) & 1 == 1)
                        .unwrap();
                let direct = r.residuate_target(&t).unwrap();
                let via = t.opposite().residuate_source(&r.opposite()).unwrap();
                assert_eq!(direct.matrix(), &via.matrix().transpose());
            }
        }
    }

    #[test]
    fn lifted_identity_is_the_metric() {
        let s = chain(&["x", "y", "z"]);
        let id = VMap::identity(s.clone());
        let lower = VRelation::lift_lower(&id);
        let upper = VRelation::lift_upper(&id);
        assert_eq!(lower.matrix(), s.metric());
        assert_eq!(upper.matrix(), s.metric());
        // Yoneda: row x of the lifted identity is μ(x, ·)
        for x in 0..3 {
            assert_eq!(lower.matrix().row(x), s.metric().row(x));
        }
    }

    #[test]
    fn lifting_is_functorial_on_a_chain_of_maps() {
        let x = chain(&["x0", "x1", "x2"]);
        let y = chain(&["y0", "y1"]);
        let z = chain(&["z0", "z1", "z2"]);
        let f = VMap::new(x, y.clone(), vec![0, 0, 1]).unwrap();
        let g = VMap::new(y, z, vec![1, 2]).unwrap();
        assert!(f.check().is_valid() && g.check().is_valid());
        let fg = f.then(&g).unwrap();
        let lower = VRelation::lift_lower(&f)
            .compose(&VRelation::lift_lower(&g))
            .unwrap();
        assert_eq!(VRelation::lift_lower(&fg), lower);
        let upper = VRelation::lift_upper(&g)
            .compose(&VRelation::lift_upper(&f))
            .unwrap();
        assert_eq!(VRelation::lift_upper(&fg), upper);
        assert!(VRelation::lift_lower(&f).is_valid());
        assert!(VRelation::lift_upper(&f).is_valid());
    }
}
