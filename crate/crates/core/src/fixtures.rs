//! Seeded random instances for law tests.
//!
//! Values are drawn from [`Quantale::samples`]; spaces, relations and
//! predicates are made valid by closing random matrices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::concept::FormalContext;
use crate::matrix::Matrix;
use crate::predicate::close_predicate;
use crate::quantale::Quantale;
use crate::vrelation::VRelation;
use crate::vspace::{ApproximationSpace, VSpace};

pub type FixtureRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FixtureRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_value<Q: Quantale, R: Rng>(q: &Q, rng: &mut R) -> Q::Value {
    *q.samples().choose(rng).expect("quantales have samples")
}

/// Values from the samples, biased towards `⊥` so that closures do not
/// collapse to the top matrix.
pub fn random_matrix<Q: Quantale, R: Rng>(
    q: &Q,
    rng: &mut R,
    rows: usize,
    cols: usize,
) -> Matrix<Q::Value> {
    let samples = q.samples();
    Matrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(0.4) {
            q.bottom()
        } else {
            *samples.choose(rng).expect("quantales have samples")
        }
    })
}

/// `N` sizes drawn uniformly from `lo..=hi`.
pub fn random_sizes<const N: usize, R: Rng>(rng: &mut R, lo: usize, hi: usize) -> [usize; N] {
    std::array::from_fn(|_| rng.gen_range(lo..=hi))
}

pub fn ids(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A valid space on `n` elements named `{prefix}0..`.
pub fn random_space<Q: Quantale, R: Rng>(q: &Q, rng: &mut R, prefix: &str, n: usize) -> VSpace<Q> {
    let raw = random_matrix(q, rng, n, n);
    VSpace::closure(q.clone(), ids(prefix, n), raw).expect("generated identifiers are distinct")
}

/// A valid symmetric space: the closure of a symmetric matrix.
pub fn random_approximation_space<Q: Quantale, R: Rng>(
    q: &Q,
    rng: &mut R,
    prefix: &str,
    n: usize,
) -> ApproximationSpace<Q> {
    let mut raw = random_matrix(q, rng, n, n);
    for i in 0..n {
        for j in 0..i {
            raw.set(i, j, raw.get(j, i));
        }
    }
    let space = VSpace::closure(q.clone(), ids(prefix, n), raw)
        .expect("generated identifiers are distinct");
    ApproximationSpace::new(space).expect("closure of a symmetric matrix is symmetric")
}

pub fn random_relation<Q: Quantale, R: Rng>(
    rng: &mut R,
    source: &VSpace<Q>,
    target: &VSpace<Q>,
) -> VRelation<Q> {
    let q = source.quantale();
    let raw = random_matrix(q, rng, source.len(), target.len());
    VRelation::new(source.clone(), target.clone(), raw)
        .and_then(|r| r.repair())
        .expect("shapes match")
}

/// A raw vector, not necessarily a predicate.
pub fn random_vector<Q: Quantale, R: Rng>(q: &Q, rng: &mut R, n: usize) -> Vec<Q::Value> {
    (0..n).map(|_| random_value(q, rng)).collect()
}

pub fn random_predicate<Q: Quantale, R: Rng>(rng: &mut R, space: &VSpace<Q>) -> Vec<Q::Value> {
    let raw = random_vector(space.quantale(), rng, space.len());
    close_predicate(space, &raw).expect("length matches")
}

/// A context over discrete spaces with `g` objects and `m` attributes.
pub fn random_discrete_context<Q: Quantale, R: Rng>(
    q: &Q,
    rng: &mut R,
    g: usize,
    m: usize,
) -> FormalContext<Q> {
    let incidence = Matrix::from_fn(g, m, |_, _| random_value(q, rng));
    FormalContext::discrete(q.clone(), ids("g", g), ids("m", m), incidence)
        .expect("discrete spaces accept any incidence")
}

/// A context over random approximation spaces, repaired to be valid.
pub fn random_context<Q: Quantale, R: Rng>(
    q: &Q,
    rng: &mut R,
    g: usize,
    m: usize,
) -> FormalContext<Q> {
    let objects = random_approximation_space(q, rng, "g", g);
    let attributes = random_approximation_space(q, rng, "m", m);
    let raw = random_matrix(q, rng, g, m);
    FormalContext::repaired(objects, attributes, raw).expect("shapes match")
}
