//! Linguistic variables (conceptual scales) and granulation.
//!
//! A linguistic variable over a data domain `D` assigns to every term `m` a
//! predicate `σ_m` over `D`. Applying it to objects described by a map
//! `φ: G → D` yields the derived context `ι(g,m) = σ_m(φ(g))`.

use serde::{Deserialize, Serialize};

use crate::concept::FormalContext;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::predicate::{check_predicate, close_predicate, hom_metric, tensor_space};
use crate::quantale::{Fuzzy01, Quantale};
use crate::report::{Axiom, ValidationReport};
use crate::vrelation::VRelation;
use crate::vspace::{ApproximationSpace, VMap, VSpace};

/// A piecewise-linear membership function, constant beyond its first and
/// last breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinear {
    points: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain(
                "piecewise-linear function needs a breakpoint",
            ));
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::domain("breakpoints must be finite"));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::domain("breakpoints must have distinct abscissae"));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn eval(&self, x: f64) -> f64 {
        let first = self.points[0];
        let last = self.points[self.points.len() - 1];
        if x <= first.0 {
            return first.1;
        }
        if x >= last.0 {
            return last.1;
        }
        let k = self.points.partition_point(|p| p.0 <= x);
        let (x0, y0) = self.points[k - 1];
        let (x1, y1) = self.points[k];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// `1` up to 20, `−d/20 + 2` on [20, 40], `0` from 40.
pub fn young() -> PiecewiseLinear {
    PiecewiseLinear::new(vec![(20.0, 1.0), (40.0, 0.0)]).expect("static breakpoints")
}

/// Trapezoid rising on [20, 40], `1` on [40, 60], falling on [60, 80].
pub fn middle_age() -> PiecewiseLinear {
    PiecewiseLinear::new(vec![(20.0, 0.0), (40.0, 1.0), (60.0, 1.0), (80.0, 0.0)])
        .expect("static breakpoints")
}

/// `0` up to 40, rising on [40, 60], `1` from 60.
pub fn old() -> PiecewiseLinear {
    PiecewiseLinear::new(vec![(40.0, 0.0), (60.0, 1.0)]).expect("static breakpoints")
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable<Q: Quantale> {
    terms: ApproximationSpace<Q>,
    domain: ApproximationSpace<Q>,
    assignment: VRelation<Q>,
}

impl<Q: Quantale> LinguisticVariable<Q> {
    /// Validates a raw assignment matrix (terms × data elements).
    ///
    /// Rows that are not predicates over the data domain are an error unless
    /// `repair` is set, in which case they are closed and the returned report
    /// lists what was repaired. A term metric that the assignment does not
    /// respect is always an error.
    pub fn new(
        terms: ApproximationSpace<Q>,
        domain: ApproximationSpace<Q>,
        assignment: Matrix<Q::Value>,
        repair: bool,
    ) -> Result<(Self, ValidationReport)> {
        let mut assignment =
            VRelation::new(terms.space().clone(), domain.space().clone(), assignment)?;
        let mut report = ValidationReport::new();
        for m in 0..terms.len() {
            let row = assignment.matrix().row(m).to_vec();
            let r = check_predicate(&domain, &row)?;
            if !r.is_valid() {
                for mut v in r.violations {
                    v.elements.insert(0, terms.elements()[m].clone());
                    report.violations.push(v);
                }
            }
        }
        if !report.is_valid() {
            if !repair {
                return Err(Error::Validation(report));
            }
            let n = domain.len();
            let mut rows = Vec::with_capacity(terms.len());
            for m in 0..terms.len() {
                rows.push(close_predicate(&domain, assignment.matrix().row(m))?);
            }
            assignment = VRelation::new(
                terms.space().clone(),
                domain.space().clone(),
                Matrix::from_rows(rows, n)?,
            )?;
        }
        let var = Self {
            terms,
            domain,
            assignment,
        };
        var.term_metric_report().into_result()?;
        Ok((var, report))
    }

    /// Violations of `μ(m1,m2) ⪯ σ_{m1} ⊸ σ_{m2}`.
    pub fn term_metric_report(&self) -> ValidationReport {
        let q = self.terms.quantale();
        let mut report = ValidationReport::new();
        let names = self.terms.elements();
        for a in 0..self.terms.len() {
            for b in 0..self.terms.len() {
                let m = self.terms.distance(a, b);
                let hom = hom_metric(q, self.row(a), self.row(b)).expect("rows share the domain");
                if !q.leq(m, hom) {
                    report.push(
                        Axiom::TermMetric,
                        &[&names[a], &names[b]],
                        format!("{} ⋠ {}", q.format_value(m), q.format_value(hom)),
                    );
                }
            }
        }
        report
    }

    pub fn quantale(&self) -> &Q {
        self.terms.quantale()
    }

    /// Same identifiers, with metrics and memberships equal up to `≡`.
    pub fn equiv(&self, other: &Self) -> bool {
        self.terms.same_space(&other.terms)
            && self.domain.same_space(&other.domain)
            && self.assignment.equiv(&other.assignment)
    }

    pub fn terms(&self) -> &ApproximationSpace<Q> {
        &self.terms
    }

    pub fn domain(&self) -> &ApproximationSpace<Q> {
        &self.domain
    }

    pub fn assignment(&self) -> &VRelation<Q> {
        &self.assignment
    }

    /// `σ_m` as a predicate over the data domain.
    pub fn row(&self, m: usize) -> &[Q::Value] {
        self.assignment.matrix().row(m)
    }

    pub fn membership(&self, m: usize, d: usize) -> Q::Value {
        self.assignment.get(m, d)
    }

    pub fn term_index(&self, name: &str) -> Option<usize> {
        self.terms.index_of(name)
    }

    /// Membership of data element `d` (by identifier) in term `term`.
    pub fn evaluate(&self, term: &str, d: &str) -> Option<Q::Value> {
        let m = self.terms.index_of(term)?;
        let d = self.domain.index_of(d)?;
        Some(self.membership(m, d))
    }

    /// Copairing over a shared data domain; terms form the sum space.
    pub fn constraint_sum(&self, other: &Self) -> Result<Self> {
        if !self.domain.same_space(&other.domain) {
            return Err(Error::structural(
                "constraint sum needs identical data domains",
            ));
        }
        let terms = ApproximationSpace::new(self.terms.sum(&other.terms)?)?;
        let n0 = self.terms.len();
        let assignment = Matrix::from_fn(terms.len(), self.domain.len(), |m, d| {
            if m < n0 {
                self.membership(m, d)
            } else {
                other.membership(m - n0, d)
            }
        });
        let (var, _) = Self::new(terms, self.domain.clone(), assignment, false)?;
        Ok(var)
    }

    /// `(σ0⊗σ1)((m0,m1),(d0,d1)) = σ0(m0,d0) ⊗ σ1(m1,d1)` over tensor spaces.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let q = self.quantale();
        let terms = ApproximationSpace::new(tensor_space(&self.terms, &other.terms)?)?;
        let domain = ApproximationSpace::new(tensor_space(&self.domain, &other.domain)?)?;
        let (t1, d1) = (other.terms.len(), other.domain.len());
        let assignment = Matrix::from_fn(terms.len(), domain.len(), |m, d| {
            q.tensor(
                self.membership(m / t1, d / d1),
                other.membership(m % t1, d % d1),
            )
        });
        let (var, _) = Self::new(terms, domain, assignment, false)?;
        Ok(var)
    }
}

/// The standard "age" variable over `{0, …, 100}` with discrete metrics.
pub fn age_variable() -> LinguisticVariable<Fuzzy01> {
    let q = Fuzzy01;
    let domain: Vec<String> = (0..=100).map(|d| d.to_string()).collect();
    let terms = vec![
        "young".to_string(),
        "middle-age".to_string(),
        "old".to_string(),
    ];
    let shapes = [young(), middle_age(), old()];
    let assignment = Matrix::from_fn(terms.len(), domain.len(), |m, d| shapes[m].eval(d as f64));
    let (var, _) = LinguisticVariable::new(
        ApproximationSpace::discrete(q, terms).expect("distinct terms"),
        ApproximationSpace::discrete(q, domain).expect("distinct data elements"),
        assignment,
        false,
    )
    .expect("age memberships are valid on a discrete domain");
    var
}

/// A map from objects to data elements.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptionFunction<Q: Quantale> {
    objects: ApproximationSpace<Q>,
    map: VMap<Q>,
}

impl<Q: Quantale> DescriptionFunction<Q> {
    pub fn new(
        objects: ApproximationSpace<Q>,
        domain: &ApproximationSpace<Q>,
        mapping: Vec<usize>,
    ) -> Result<Self> {
        let map = VMap::new(objects.space().clone(), domain.space().clone(), mapping)?;
        map.check().into_result()?;
        Ok(Self { objects, map })
    }

    /// Objects with a discrete metric, described by `(object, data)` pairs.
    pub fn from_pairs(domain: &ApproximationSpace<Q>, pairs: &[(String, String)]) -> Result<Self> {
        let q = domain.quantale().clone();
        let objects: Vec<String> = pairs.iter().map(|(g, _)| g.clone()).collect();
        let mapping = pairs
            .iter()
            .map(|(g, d)| {
                domain.index_of(d).ok_or_else(|| {
                    Error::structural(format!("`{g}` is described by `{d}`, not a data element"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ApproximationSpace::discrete(q, objects)?, domain, mapping)
    }

    pub fn objects(&self) -> &ApproximationSpace<Q> {
        &self.objects
    }

    pub fn map(&self) -> &VMap<Q> {
        &self.map
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map.apply(g)
    }

    fn check_domain(&self, var: &LinguisticVariable<Q>) -> Result<()> {
        if !self.map.target().same_space(var.domain()) {
            return Err(Error::structural(
                "description target is not the variable's data domain",
            ));
        }
        Ok(())
    }
}

/// Derived context `ι(g,m) = σ_m(φ(g))`.
pub fn granulate<Q: Quantale>(
    description: &DescriptionFunction<Q>,
    var: &LinguisticVariable<Q>,
) -> Result<FormalContext<Q>> {
    description.check_domain(var)?;
    let n = description.objects.len();
    let incidence = Matrix::from_fn(n, var.terms().len(), |g, m| {
        var.membership(m, description.apply(g))
    });
    FormalContext::new(description.objects.clone(), var.terms().clone(), incidence)
}

/// The compositional form `φ_* ∘ σ^op`; equals [`granulate`] on discrete
/// data domains.
pub fn granulate_relational<Q: Quantale>(
    description: &DescriptionFunction<Q>,
    var: &LinguisticVariable<Q>,
) -> Result<VRelation<Q>> {
    description.check_domain(var)?;
    VRelation::lift_lower(&description.map).compose(&var.assignment().opposite())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Indiscernibility<Q: Quantale> {
    /// `γ_φ(g1,g2) = ⋀_m σ_m(φ g1) ⇔ σ_m(φ g2)`.
    pub induced: VSpace<Q>,
    /// Axiom violations of the induced space itself (expected empty).
    pub space_report: ValidationReport,
    /// Pairs where the given `γ` is not below `γ_φ`.
    pub fineness: ValidationReport,
}

pub fn induced_indiscernibility<Q: Quantale>(
    description: &DescriptionFunction<Q>,
    var: &LinguisticVariable<Q>,
) -> Result<Indiscernibility<Q>> {
    description.check_domain(var)?;
    let q = var.quantale();
    let objects = &description.objects;
    let n = objects.len();
    let induced = VSpace::from_fn(q.clone(), objects.elements().to_vec(), |a, b| {
        let (da, db) = (description.apply(a), description.apply(b));
        q.inf(
            (0..var.terms().len())
                .map(|m| q.biimplies(var.membership(m, da), var.membership(m, db))),
        )
    })?;
    let mut fineness = ValidationReport::new();
    let ids = objects.elements();
    for a in 0..n {
        for b in 0..n {
            let (given, derived) = (objects.distance(a, b), induced.distance(a, b));
            if !q.leq(given, derived) {
                fineness.push(
                    Axiom::Fineness,
                    &[&ids[a], &ids[b]],
                    format!(
                        "γ = {} ⋠ γ_φ = {}",
                        q.format_value(given),
                        q.format_value(derived)
                    ),
                );
            }
        }
    }
    let mut space_report = induced.validate();
    if !induced.is_symmetric() {
        space_report.push(
            Axiom::Symmetry,
            &[],
            "induced indiscernibility is not symmetric",
        );
    }
    Ok(Indiscernibility {
        induced,
        space_report,
        fineness,
    })
}

fn check_shared_objects<Q: Quantale>(
    facets: &[(DescriptionFunction<Q>, LinguisticVariable<Q>)],
) -> Result<&ApproximationSpace<Q>> {
    let (first, _) = facets
        .first()
        .ok_or_else(|| Error::structural("apposition needs at least one facet"))?;
    for (d, _) in &facets[1..] {
        if !d.objects.same_space(&first.objects) {
            return Err(Error::structural(
                "apposition facets describe different objects",
            ));
        }
    }
    Ok(&first.objects)
}

/// Apposition: per-facet derived contexts placed side by side over the sum
/// of the term spaces.
pub fn apposition<Q: Quantale>(
    facets: &[(DescriptionFunction<Q>, LinguisticVariable<Q>)],
) -> Result<FormalContext<Q>> {
    let objects = check_shared_objects(facets)?;
    let mut contexts = Vec::with_capacity(facets.len());
    for (d, v) in facets {
        contexts.push(granulate(d, v)?);
    }
    let mut attributes = contexts[0].attributes().space().clone();
    for (k, c) in contexts.iter().enumerate().skip(1) {
        attributes = sum_all(&attributes, c.attributes().space(), k)?;
    }
    let widths: Vec<usize> = contexts.iter().map(|c| c.attributes().len()).collect();
    let incidence = Matrix::from_fn(objects.len(), attributes.len(), |g, mut m| {
        for (c, &w) in contexts.iter().zip(&widths) {
            if m < w {
                return c.value(g, m);
            }
            m -= w;
        }
        unreachable!("column index within the summed attribute space")
    });
    FormalContext::new(
        objects.clone(),
        ApproximationSpace::new(attributes)?,
        incidence,
    )
}

// Like `VSpace::sum`, but a clash only qualifies the new block, as
// "k:term" for facet k, so that earlier names stay stable.
fn sum_all<Q: Quantale>(acc: &VSpace<Q>, next: &VSpace<Q>, k: usize) -> Result<VSpace<Q>> {
    let clash = next.elements().iter().any(|e| acc.index_of(e).is_some());
    if !clash {
        return acc.sum(next);
    }
    let ids = next.elements().iter().map(|e| format!("{k}:{e}")).collect();
    let renamed = VSpace::new(next.quantale().clone(), ids, next.metric().clone())?;
    acc.sum(&renamed)
}

/// Apposition as granulation of the tensor of the variables along the
/// pairing of the descriptions.
pub fn apposition_tensor<Q: Quantale>(
    facets: &[(DescriptionFunction<Q>, LinguisticVariable<Q>)],
) -> Result<FormalContext<Q>> {
    let objects = check_shared_objects(facets)?;
    let mut var = facets[0].1.clone();
    let mut mapping: Vec<usize> = (0..objects.len()).map(|g| facets[0].0.apply(g)).collect();
    for (d, v) in &facets[1..] {
        d.check_domain(v)?;
        let width = v.domain().len();
        var = var.tensor(v)?;
        for (g, slot) in mapping.iter_mut().enumerate() {
            *slot = *slot * width + d.apply(g);
        }
    }
    let description = DescriptionFunction::new(objects.clone(), var.domain(), mapping)?;
    granulate(&description, &var)
}
