#![allow(dead_code)]

use proptest::prelude::*;
use qfca_core::{ApproximationSpace, Matrix, Powerset, Quantale, VRelation, VSpace};

pub fn powerset3() -> Powerset {
    Powerset::new(vec!["a".into(), "b".into(), "c".into()]).unwrap()
}

pub fn ids(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn values<Q: Quantale>(q: &Q, n: usize) -> impl Strategy<Value = Vec<Q::Value>> {
    let samples = q.samples();
    prop::collection::vec(0..samples.len(), n)
        .prop_map(move |ix| ix.into_iter().map(|i| samples[i]).collect())
}

pub fn matrix<Q: Quantale>(
    q: &Q,
    rows: usize,
    cols: usize,
) -> impl Strategy<Value = Matrix<Q::Value>> {
    values(q, rows * cols).prop_map(move |v| Matrix::from_fn(rows, cols, |i, j| v[i * cols + j]))
}

/// A valid space: the closure of a random matrix.
pub fn space<Q: Quantale>(
    q: &Q,
    prefix: &'static str,
    n: usize,
) -> impl Strategy<Value = VSpace<Q>> {
    let q = q.clone();
    matrix(&q, n, n).prop_map(move |m| VSpace::closure(q.clone(), ids(prefix, n), m).unwrap())
}

/// A valid symmetric space: the closure of a symmetrized random matrix.
pub fn approximation_space<Q: Quantale>(
    q: &Q,
    prefix: &'static str,
    n: usize,
) -> impl Strategy<Value = ApproximationSpace<Q>> {
    let q = q.clone();
    matrix(&q, n, n).prop_map(move |mut m| {
        for i in 0..n {
            for j in 0..i {
                m.set(i, j, m.get(j, i));
            }
        }
        let s = VSpace::closure(q.clone(), ids(prefix, n), m).unwrap();
        ApproximationSpace::new(s).unwrap()
    })
}

/// A valid relation between two spaces: the repair of a random matrix.
pub fn relation<Q: Quantale>(
    source: VSpace<Q>,
    target: VSpace<Q>,
) -> impl Strategy<Value = VRelation<Q>> {
    let (n, m) = (source.len(), target.len());
    matrix(source.quantale(), n, m).prop_map(move |raw| {
        VRelation::new(source.clone(), target.clone(), raw)
            .unwrap()
            .repair()
            .unwrap()
    })
}

pub fn pointwise_leq<Q: Quantale>(q: &Q, a: &[Q::Value], b: &[Q::Value]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| q.leq(x, y))
}

pub fn pointwise_equiv<Q: Quantale>(q: &Q, a: &[Q::Value], b: &[Q::Value]) -> bool {
    pointwise_leq(q, a, b) && pointwise_leq(q, b, a)
}
