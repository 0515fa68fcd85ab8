mod common;

use common::*;
use proptest::prelude::*;
use qfca_core::{Bool2, CostReal, Fuzzy01, Quantale, VRelation};

#[derive(Debug, Clone)]
struct Chain<Q: Quantale> {
    r: VRelation<Q>,
    s: VRelation<Q>,
    t: VRelation<Q>,
    /// Shares its source with `r` and its target with `s`.
    u: VRelation<Q>,
    /// Shares its source with `r`.
    v: VRelation<Q>,
}

fn chain<Q: Quantale>(q: Q) -> impl Strategy<Value = Chain<Q>> {
    (1..=4usize, 1..=4usize, 1..=4usize, 1..=4usize)
        .prop_flat_map(move |(a, b, c, d)| {
            (
                space(&q, "x", a),
                space(&q, "y", b),
                space(&q, "z", c),
                space(&q, "w", d),
            )
        })
        .prop_flat_map(|(x, y, z, w)| {
            (
                relation(x.clone(), y.clone()),
                relation(y.clone(), z.clone()),
                relation(z.clone(), w.clone()),
                relation(x.clone(), z),
                relation(x, w),
            )
        })
        .prop_map(|(r, s, t, u, v)| Chain { r, s, t, u, v })
}

fn check<Q: Quantale>(c: Chain<Q>) -> Result<(), TestCaseError> {
    let Chain { r, s, t, u, v } = c;
    let rs = r.compose(&s).unwrap();
    prop_assert!(rs.is_valid(), "composites are relations");

    let left = rs.compose(&t).unwrap();
    let right = r.compose(&s.compose(&t).unwrap()).unwrap();
    prop_assert!(left.equiv(&right), "associativity");

    let id_x = VRelation::identity(r.source());
    let id_y = VRelation::identity(r.target());
    prop_assert!(id_x.compose(&r).unwrap().equiv(&r), "left identity");
    prop_assert!(r.compose(&id_y).unwrap().equiv(&r), "right identity");

    // (r ∘ s) ⊸ v = s ⊸ (r ⊸ v)
    let curried = s
        .residuate_source(&r.residuate_source(&v).unwrap())
        .unwrap();
    prop_assert!(rs.residuate_source(&v).unwrap().equiv(&curried), "currying");

    // r ∘ s ⪯ u  iff  s ⪯ r ⊸ u, on a random u and on u := r ∘ s
    prop_assert_eq!(rs.leq(&u), s.leq(&r.residuate_source(&u).unwrap()));
    prop_assert!(
        s.leq(&r.residuate_source(&rs).unwrap()),
        "unit of the adjunction"
    );

    // r ∘ s ⪯ u  iff  r ⪯ u ⇐ s
    prop_assert_eq!(rs.leq(&u), r.leq(&u.residuate_target(&s).unwrap()));

    prop_assert_eq!(r.opposite().opposite(), r.clone());
    let op = s.opposite().compose(&r.opposite()).unwrap();
    prop_assert!(op.equiv(&rs.opposite()), "opposite reverses composition");
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bool2(c in chain(Bool2)) { check(c)?; }

    #[test]
    fn powerset(c in chain(powerset3())) { check(c)?; }

    #[test]
    fn fuzzy(c in chain(Fuzzy01)) { check(c)?; }

    #[test]
    fn cost(c in chain(CostReal)) { check(c)?; }
}

proptest! {
    #[test]
    fn repair_is_least_above_raw(
        (x, y, raw) in (1..=4usize, 1..=4usize)
            .prop_flat_map(|(a, b)| (space(&Fuzzy01, "x", a), space(&Fuzzy01, "y", b), matrix(&Fuzzy01, a, b)))
    ) {
        let raw = VRelation::new(x.clone(), y.clone(), raw).unwrap();
        let fixed = raw.repair().unwrap();
        prop_assert!(fixed.is_valid());
        prop_assert!(raw.leq(&fixed));
        prop_assert!(fixed.repair().unwrap().equiv(&fixed));
    }
}
