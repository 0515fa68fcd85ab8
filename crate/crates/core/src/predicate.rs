//! Enriched predicates (definable subsets) over a space.
//!
//! A predicate over `X` is a vector `φ` of truth values indexed by the
//! elements of `X` satisfying `φ(x1) ⊗ μ(x1,x2) ⪯ φ(x2)`. Predicates are
//! plain slices here; the space they live on is passed alongside.
//!
//! The power space of all predicates is never materialized. Its metric is
//! [`hom_metric`], `φ ⊸ ψ = ⋀_x φ(x) ⊸ ψ(x)`.
//!
//! Rough approximations over an approximation space `(X, μ)`:
//!
//! ```text
//! upper(φ)(x) = ⋁_x' μ(x,x') ⊗ φ(x')
//! lower(φ)(x) = ⋀_x' μ(x,x') ⊸ φ(x')
//! ```
//!
//! On boolean equivalence metrics these are the classical block-based
//! approximations.

use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::report::{Axiom, ValidationReport};
use crate::vspace::VSpace;

fn check_len<Q: Quantale>(space: &VSpace<Q>, values: &[Q::Value]) -> Result<()> {
    if values.len() != space.len() {
        return Err(Error::structural(format!(
            "predicate has {} values for a space of {} elements",
            values.len(),
            space.len()
        )));
    }
    for &v in values {
        space.quantale().check(v)?;
    }
    Ok(())
}

/// Pairs violating `φ(x1) ⊗ μ(x1,x2) ⪯ φ(x2)`.
pub fn check_predicate<Q: Quantale>(
    space: &VSpace<Q>,
    values: &[Q::Value],
) -> Result<ValidationReport> {
    check_len(space, values)?;
    let q = space.quantale();
    let f = |v| q.format_value(v);
    let ids = space.elements();
    let mut report = ValidationReport::new();
    for i in 0..space.len() {
        for j in 0..space.len() {
            let m = space.distance(i, j);
            let lhs = q.tensor(values[i], m);
            if !q.leq(lhs, values[j]) {
                report.push(
                    Axiom::PredicateConstraint,
                    &[&ids[i], &ids[j]],
                    format!("{} ⊗ {} ⋠ {}", f(values[i]), f(m), f(values[j])),
                );
            }
        }
    }
    Ok(report)
}

/// `φ(x') = ⋁_x χ(x) ⊗ μ(x,x')`: the least predicate above `χ`.
pub fn close_predicate<Q: Quantale>(space: &VSpace<Q>, raw: &[Q::Value]) -> Result<Vec<Q::Value>> {
    check_len(space, raw)?;
    let q = space.quantale();
    Ok((0..space.len())
        .map(|j| q.sup((0..space.len()).map(|i| q.tensor(raw[i], space.distance(i, j)))))
        .collect())
}

/// `⋀_x φ(x) ⊸ ψ(x)`.
pub fn hom_metric<Q: Quantale>(q: &Q, phi: &[Q::Value], psi: &[Q::Value]) -> Result<Q::Value> {
    if phi.len() != psi.len() {
        return Err(Error::structural(format!(
            "predicates over different spaces ({} vs {} values)",
            phi.len(),
            psi.len()
        )));
    }
    Ok(q.inf(phi.iter().zip(psi).map(|(&a, &b)| q.implies(a, b))))
}

pub fn pointwise_leq<Q: Quantale>(q: &Q, phi: &[Q::Value], psi: &[Q::Value]) -> bool {
    phi.len() == psi.len() && phi.iter().zip(psi).all(|(&a, &b)| q.leq(a, b))
}

pub fn pointwise_equiv<Q: Quantale>(q: &Q, phi: &[Q::Value], psi: &[Q::Value]) -> bool {
    phi.len() == psi.len() && phi.iter().zip(psi).all(|(&a, &b)| q.equiv(a, b))
}

/// Indices where `e ⪯ φ(x)`.
pub fn extension_indices<Q: Quantale>(q: &Q, phi: &[Q::Value]) -> Vec<usize> {
    phi.iter()
        .enumerate()
        .filter(|(_, &v)| q.leq(q.unit(), v))
        .map(|(i, _)| i)
        .collect()
}

/// The crisp subset `{x | e ⪯ φ(x)}`, as element identifiers.
pub fn extension<Q: Quantale>(space: &VSpace<Q>, phi: &[Q::Value]) -> Result<Vec<String>> {
    check_len(space, phi)?;
    Ok(extension_indices(space.quantale(), phi)
        .into_iter()
        .map(|i| space.elements()[i].clone())
        .collect())
}

fn require_symmetric<Q: Quantale>(space: &VSpace<Q>) -> Result<()> {
    if space.is_symmetric() {
        Ok(())
    } else {
        Err(Error::domain(
            "rough approximations need a symmetric (approximation) space",
        ))
    }
}

pub fn upper_approx<Q: Quantale>(space: &VSpace<Q>, phi: &[Q::Value]) -> Result<Vec<Q::Value>> {
    require_symmetric(space)?;
    check_len(space, phi)?;
    let q = space.quantale();
    Ok((0..space.len())
        .map(|x| q.sup((0..space.len()).map(|y| q.tensor(space.distance(x, y), phi[y]))))
        .collect())
}

pub fn lower_approx<Q: Quantale>(space: &VSpace<Q>, phi: &[Q::Value]) -> Result<Vec<Q::Value>> {
    require_symmetric(space)?;
    check_len(space, phi)?;
    let q = space.quantale();
    Ok((0..space.len())
        .map(|x| q.inf((0..space.len()).map(|y| q.implies(space.distance(x, y), phi[y]))))
        .collect())
}

/// Product space on pairs with `(μ⊗ν)((x1,y1),(x2,y2)) = μ(x1,x2) ⊗ ν(y1,y2)`.
///
/// Pairs are ordered row-major (`x` outer, `y` inner) and named `x*y`.
pub fn tensor_space<Q: Quantale>(left: &VSpace<Q>, right: &VSpace<Q>) -> Result<VSpace<Q>> {
    if left.quantale() != right.quantale() {
        return Err(Error::structural(
            "tensor of spaces over different quantales",
        ));
    }
    let q = left.quantale();
    let m = right.len();
    let elements = left
        .elements()
        .iter()
        .flat_map(|x| right.elements().iter().map(move |y| format!("{x}*{y}")))
        .collect();
    VSpace::from_fn(q.clone(), elements, |i, j| {
        q.tensor(left.distance(i / m, j / m), right.distance(i % m, j % m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::quantale::{Bool2, CostReal, Fuzzy01};

    fn ids(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn fuzzy_pair(ab: f64, ba: f64) -> VSpace<Fuzzy01> {
        VSpace::new(
            Fuzzy01,
            ids(&["a", "b"]),
            Matrix::from_rows(vec![vec![1.0, ab], vec![ba, 1.0]], 2).unwrap(),
        )
        .unwrap()
    }

    fn bool_chain() -> VSpace<Bool2> {
        VSpace::from_fn(Bool2, ids(&["x", "y", "z"]), |i, j| i <= j).unwrap()
    }

    #[test]
    fn constant_unit_predicate_is_valid() {
        let s = fuzzy_pair(0.8, 0.2);
        assert!(check_predicate(&s, &[1.0, 1.0]).unwrap().is_valid());
    }

    #[test]
    fn boolean_up_sets() {
        let s = bool_chain();
        assert!(check_predicate(&s, &[false, true, true])
            .unwrap()
            .is_valid());
        let report = check_predicate(&s, &[true, false, false]).unwrap();
        assert_eq!(report.len(), 2);
    }

    #[test]
    fn fuzzy_predicate_violation() {
        let s = fuzzy_pair(0.8, 0.0);
        let report = check_predicate(&s, &[0.9, 0.5]).unwrap();
        assert_eq!(report.len(), 1);
        assert_eq!(report.violations[0].elements, ids(&["a", "b"]));
    }

    #[test]
    fn closing_predicates() {
        let s = bool_chain();
        assert_eq!(
            close_predicate(&s, &[false, true, false]).unwrap(),
            vec![false, true, true]
        );
        let valid = vec![false, false, true];
        assert_eq!(close_predicate(&s, &valid).unwrap(), valid);

        let f = fuzzy_pair(0.8, 0.0);
        assert_eq!(close_predicate(&f, &[0.9, 0.0]).unwrap(), vec![0.9, 0.8]);
    }

    #[test]
    fn hom_metric_examples() {
        assert_eq!(hom_metric(&Fuzzy01, &[0.8, 0.3], &[0.5, 0.6]).unwrap(), 0.5);
        assert!(hom_metric(&Bool2, &[true, false], &[true, true]).unwrap());
        assert!(!hom_metric(&Bool2, &[true, true], &[true, false]).unwrap());
        assert!(hom_metric(&Bool2, &[true], &[true, false]).is_err());
    }

    #[test]
    fn extensions() {
        let s = bool_chain();
        assert_eq!(
            extension(&s, &[false, true, true]).unwrap(),
            ids(&["y", "z"])
        );
        assert!(extension(&s, &[false; 3]).unwrap().is_empty());
        let c = VSpace::discrete(CostReal, ids(&["p", "q"])).unwrap();
        assert_eq!(extension(&c, &[0.0, 2.0]).unwrap(), ids(&["p"]));
    }

    #[test]
    fn fuzzy_rough_pair() {
        let s = fuzzy_pair(0.6, 0.6);
        assert_eq!(upper_approx(&s, &[1.0, 0.0]).unwrap(), vec![1.0, 0.6]);
        // 0.6 ⊸ 0 = 0 under the Gödel implication
        assert_eq!(lower_approx(&s, &[1.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn approximations_reject_asymmetric_spaces() {
        let s = fuzzy_pair(0.6, 0.2);
        assert!(matches!(
            upper_approx(&s, &[1.0, 0.0]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            lower_approx(&s, &[1.0, 0.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tensor_space_metric() {
        let a = fuzzy_pair(0.4, 0.4);
        let b = fuzzy_pair(0.7, 0.7);
        let t = tensor_space(&a, &b).unwrap();
        assert_eq!(t.elements(), &ids(&["a*a", "a*b", "b*a", "b*b"])[..]);
        assert_eq!(t.distance(0, 3), 0.4);
        assert_eq!(t.distance(0, 1), 0.7);
        assert!(t.is_valid());
    }
}
