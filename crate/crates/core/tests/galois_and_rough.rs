mod common;

use std::collections::HashSet;

use common::*;
use proptest::prelude::*;
use qfca_core::concept::FormalContext;
use qfca_core::predicate::{close_predicate, hom_metric, lower_approx, upper_approx};
use qfca_core::{ApproximationSpace, Bool2, CostReal, Fuzzy01, Quantale};

fn context<Q: Quantale>(q: Q, max: usize) -> impl Strategy<Value = FormalContext<Q>> {
    (0..=max, 0..=max)
        .prop_flat_map(move |(g, m)| {
            (
                approximation_space(&q, "g", g),
                approximation_space(&q, "m", m),
                matrix(&q, g, m),
            )
        })
        .prop_map(|(g, m, raw)| FormalContext::repaired(g, m, raw).unwrap())
}

fn with_vectors<Q: Quantale>(
    q: Q,
) -> impl Strategy<Value = (FormalContext<Q>, Vec<Q::Value>, Vec<Q::Value>)> {
    context(q.clone(), 5).prop_flat_map(move |ctx| {
        let (g, m) = (ctx.objects().len(), ctx.attributes().len());
        (Just(ctx), values(&q, g), values(&q, m))
    })
}

fn galois<Q: Quantale>(
    ctx: FormalContext<Q>,
    phi: Vec<Q::Value>,
    psi: Vec<Q::Value>,
) -> Result<(), TestCaseError> {
    let q = ctx.quantale().clone();
    let up = ctx.derive_intent(&phi).unwrap();
    let up_down = ctx.derive_extent(&up).unwrap();
    prop_assert!(pointwise_leq(&q, &phi, &up_down), "φ ⪯ φ↑↓");
    prop_assert!(
        pointwise_equiv(&q, &up, &ctx.derive_intent(&up_down).unwrap()),
        "φ↑ = φ↑↓↑"
    );
    let down = ctx.derive_extent(&psi).unwrap();
    prop_assert!(
        pointwise_leq(&q, &psi, &ctx.derive_intent(&down).unwrap()),
        "ψ ⪯ ψ↓↑"
    );
    // φ ⊸ ψ↓ = ψ ⊸ φ↑
    let a = hom_metric(&q, &phi, &down).unwrap();
    let b = hom_metric(&q, &psi, &up).unwrap();
    prop_assert!(q.equiv(a, b), "derivations form a Galois connection");
    let c = ctx.hardness(&up_down, &up).unwrap();
    prop_assert!(c.hard, "(φ↑↓, φ↑) is a hard concept");
    Ok(())
}

fn rough<Q: Quantale>(
    space: ApproximationSpace<Q>,
    phi: Vec<Q::Value>,
) -> Result<(), TestCaseError> {
    let q = space.quantale().clone();
    let lower = lower_approx(&space, &phi).unwrap();
    let upper = upper_approx(&space, &phi).unwrap();
    prop_assert!(pointwise_leq(&q, &lower, &phi), "lower ⪯ φ");
    prop_assert!(pointwise_leq(&q, &phi, &upper), "φ ⪯ upper");
    prop_assert!(
        pointwise_equiv(&q, &upper_approx(&space, &upper).unwrap(), &upper),
        "upper idempotent"
    );
    prop_assert!(
        pointwise_equiv(&q, &lower_approx(&space, &lower).unwrap(), &lower),
        "lower idempotent"
    );
    prop_assert!(
        pointwise_equiv(&q, &upper, &close_predicate(&space, &phi).unwrap()),
        "upper is the closure on symmetric spaces"
    );
    Ok(())
}

fn rough_case<Q: Quantale>(q: Q) -> impl Strategy<Value = (ApproximationSpace<Q>, Vec<Q::Value>)> {
    (0..=6usize).prop_flat_map(move |n| (approximation_space(&q, "x", n), values(&q, n)))
}

/// Concepts obtained by closing every grid-valued intent, as value keys.
fn brute_force<Q: Quantale>(ctx: &FormalContext<Q>, grid: &[Q::Value]) -> HashSet<Vec<u64>> {
    let q = ctx.quantale();
    let m = ctx.attributes().len();
    let mut out = HashSet::new();
    let mut idx = vec![0usize; m];
    loop {
        let psi: Vec<Q::Value> = idx.iter().map(|&i| grid[i]).collect();
        let extent = ctx.derive_extent(&psi).unwrap();
        out.insert(extent.iter().map(|&v| q.canonical_key(v)).collect());
        let mut k = 0;
        while k < m && idx[k] + 1 == grid.len() {
            idx[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
        idx[k] += 1;
    }
    out
}

fn lattice<Q: Quantale>(ctx: FormalContext<Q>) -> Result<(), TestCaseError> {
    let q = ctx.quantale().clone();
    let lat = ctx.enumerate_concepts(None).unwrap();
    for c in lat.concepts() {
        prop_assert!(pointwise_equiv(
            &q,
            &ctx.derive_intent(&c.extent).unwrap(),
            &c.intent
        ));
        prop_assert!(pointwise_equiv(
            &q,
            &ctx.derive_extent(&c.intent).unwrap(),
            &c.extent
        ));
    }
    let found: HashSet<Vec<u64>> = lat
        .concepts()
        .iter()
        .map(|c| c.extent.iter().map(|&v| q.canonical_key(v)).collect())
        .collect();
    prop_assert_eq!(found.len(), lat.len(), "no duplicate concepts");
    prop_assert_eq!(found, brute_force(&ctx, lat.grid()));
    for (i, a) in lat.concepts().iter().enumerate() {
        for (j, b) in lat.concepts().iter().enumerate() {
            let ext = hom_metric(&q, &a.extent, &b.extent).unwrap();
            let int = hom_metric(&q, &b.intent, &a.intent).unwrap();
            prop_assert!(q.equiv(ext, int), "order duality");
            prop_assert!(q.equiv(lat.order().get(i, j), ext));
        }
    }
    prop_assert!(lat.check_complete(&ctx).is_ok());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn galois_bool((c, p, s) in with_vectors(Bool2)) { galois(c, p, s)?; }
    #[test]
    fn galois_powerset((c, p, s) in with_vectors(powerset3())) { galois(c, p, s)?; }
    #[test]
    fn galois_fuzzy((c, p, s) in with_vectors(Fuzzy01)) { galois(c, p, s)?; }
    #[test]
    fn galois_cost((c, p, s) in with_vectors(CostReal)) { galois(c, p, s)?; }

    #[test]
    fn rough_bool((s, p) in rough_case(Bool2)) { rough(s, p)?; }
    #[test]
    fn rough_powerset((s, p) in rough_case(powerset3())) { rough(s, p)?; }
    #[test]
    fn rough_fuzzy((s, p) in rough_case(Fuzzy01)) { rough(s, p)?; }
    #[test]
    fn rough_cost((s, p) in rough_case(CostReal)) { rough(s, p)?; }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_bool(c in context(Bool2, 4)) { lattice(c)?; }
    #[test]
    fn lattice_powerset(c in context(powerset3(), 2)) { lattice(c)?; }
    #[test]
    fn lattice_fuzzy(c in context(Fuzzy01, 3)) { lattice(c)?; }
    #[test]
    fn lattice_cost(c in context(CostReal, 2)) { lattice(c)?; }
}
