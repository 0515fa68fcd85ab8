//! Closed preorders (commutative quantales) and their four standard instances.
//!
//! A closed preorder is a preordered commutative monoid `(V, ⪯, ⊗, e)` in which
//! every `(·) ⊗ b` has a right adjoint `b ⊸ (·)`:
//!
//! ```text
//! a ⊗ b ⪯ c   iff   a ⪯ b ⊸ c
//! ```
//!
//! | instance   | carrier      | order | ⊗      | ⊸                   | e   |
//! |------------|--------------|-------|--------|---------------------|-----|
//! | `Bool2`    | {0,1}        | ≤     | and    | implies             | 1   |
//! | `Powerset` | subsets of A | ⊆     | ∩      | −B1 ∪ B2            | A   |
//! | `Fuzzy01`  | [0,1]        | ≤     | min    | 1 if r ≤ s, else s  | 1   |
//! | `CostReal` | [0,∞]        | ≥     | +      | truncated `s − r`   | 0   |
//!
//! Numeric instances compare with an absolute tolerance of [`EPSILON`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for order and equality on `Fuzzy01` and `CostReal`.
pub const EPSILON: f64 = 1e-9;

/// Maximum number of atoms in a [`Powerset`] base set.
pub const MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuantaleTag {
    Bool2,
    Powerset(Vec<String>),
    Fuzzy01,
    CostReal,
}

impl fmt::Display for QuantaleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantaleTag::Bool2 => f.write_str("bool"),
            QuantaleTag::Powerset(atoms) => write!(f, "powerset:{}", atoms.join(",")),
            QuantaleTag::Fuzzy01 => f.write_str("fuzzy"),
            QuantaleTag::CostReal => f.write_str("cost"),
        }
    }
}

impl std::str::FromStr for QuantaleTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "bool" | "bool2" | "2" => Ok(QuantaleTag::Bool2),
            "fuzzy" | "fuzzy01" | "[0,1]" => Ok(QuantaleTag::Fuzzy01),
            "cost" | "costreal" | "real" => Ok(QuantaleTag::CostReal),
            _ => {
                let atoms = s
                    .strip_prefix("powerset:")
                    .ok_or_else(|| Error::domain(format!("unknown quantale `{s}`")))?;
                let atoms: Vec<String> = atoms
                    .split(',')
                    .map(|a| a.trim().to_string())
                    .filter(|a| !a.is_empty())
                    .collect();
                Powerset::new(atoms.clone())?;
                Ok(QuantaleTag::Powerset(atoms))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleKind {
    pub tag: QuantaleTag,
    pub is_cartesian: bool,
    pub is_normal: bool,
}

/// A closed preorder with finite sups and infs.
///
/// `Value` is the carrier element type. Operations are total on `Value`; use
/// the `try_` variants to reject values that lie outside the carrier (for
/// example a fuzzy grade above 1 or a negative cost).
pub trait Quantale: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Value: Copy + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn kind(&self) -> QuantaleKind;

    fn contains(&self, v: Self::Value) -> bool;

    /// `a ⪯ b`.
    fn leq(&self, a: Self::Value, b: Self::Value) -> bool;

    /// `a ⊗ b`.
    fn tensor(&self, a: Self::Value, b: Self::Value) -> Self::Value;

    /// `b ⊸ c`: the largest `a` with `a ⊗ b ⪯ c`.
    fn implies(&self, b: Self::Value, c: Self::Value) -> Self::Value;

    fn unit(&self) -> Self::Value;

    /// `⊥ = sup ∅`.
    fn bottom(&self) -> Self::Value;

    /// `⊤ = inf ∅`.
    fn top(&self) -> Self::Value;

    /// Binary infimum `a ∧ b`.
    fn meet(&self, a: Self::Value, b: Self::Value) -> Self::Value;

    /// Binary supremum `a ∨ b`.
    fn join(&self, a: Self::Value, b: Self::Value) -> Self::Value;

    fn parse_value(&self, literal: &str) -> Result<Self::Value>;

    fn format_value(&self, v: Self::Value) -> String;

    /// Finite sample of the carrier used for law checks: the whole carrier
    /// when finite, a grid otherwise.
    fn samples(&self) -> Vec<Self::Value>;

    /// A total order used only for deterministic output ordering.
    fn total_cmp(&self, a: Self::Value, b: Self::Value) -> Ordering;

    /// Hash key identifying `v` up to `≡` (numeric values are bucketed at
    /// the [`EPSILON`] resolution).
    fn canonical_key(&self, v: Self::Value) -> u64;

    fn tag(&self) -> QuantaleTag {
        self.kind().tag
    }

    fn is_cartesian(&self) -> bool {
        self.kind().is_cartesian
    }

    fn is_normal(&self) -> bool {
        self.kind().is_normal
    }

    /// `a ≡ b`, i.e. `a ⪯ b` and `b ⪯ a`.
    fn equiv(&self, a: Self::Value, b: Self::Value) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// `(a ⊸ b) ⊗ (b ⊸ a)`.
    fn biimplies(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        self.tensor(self.implies(a, b), self.implies(b, a))
    }

    fn sup<I: IntoIterator<Item = Self::Value>>(&self, vs: I) -> Self::Value {
        vs.into_iter()
            .fold(self.bottom(), |acc, v| self.join(acc, v))
    }

    fn inf<I: IntoIterator<Item = Self::Value>>(&self, vs: I) -> Self::Value {
        vs.into_iter().fold(self.top(), |acc, v| self.meet(acc, v))
    }

    fn check(&self, v: Self::Value) -> Result<Self::Value> {
        if self.contains(v) {
            Ok(v)
        } else {
            Err(Error::domain(format!(
                "value {v:?} lies outside the carrier of {}",
                self.tag()
            )))
        }
    }

    fn try_tensor(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value> {
        Ok(self.tensor(self.check(a)?, self.check(b)?))
    }

    fn try_implies(&self, b: Self::Value, c: Self::Value) -> Result<Self::Value> {
        Ok(self.implies(self.check(b)?, self.check(c)?))
    }

    fn try_biimplies(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value> {
        Ok(self.biimplies(self.check(a)?, self.check(b)?))
    }

    /// Replaces `v` by an equivalent member of `grid` when one exists.
    fn snap(&self, v: Self::Value, grid: &[Self::Value]) -> Self::Value {
        grid.iter()
            .copied()
            .find(|&g| self.equiv(g, v))
            .unwrap_or(v)
    }
}

/// Boolean truth values `{0, 1}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Bool2;

impl Quantale for Bool2 {
    type Value = bool;

    fn kind(&self) -> QuantaleKind {
        QuantaleKind {
            tag: QuantaleTag::Bool2,
            is_cartesian: true,
            is_normal: true,
        }
    }

    fn contains(&self, _v: bool) -> bool {
        true
    }

    fn leq(&self, a: bool, b: bool) -> bool {
        !a || b
    }

    fn tensor(&self, a: bool, b: bool) -> bool {
        a && b
    }

    fn implies(&self, b: bool, c: bool) -> bool {
        !b || c
    }

    fn unit(&self) -> bool {
        true
    }

    fn bottom(&self) -> bool {
        false
    }

    fn top(&self) -> bool {
        true
    }

    fn meet(&self, a: bool, b: bool) -> bool {
        a && b
    }

    fn join(&self, a: bool, b: bool) -> bool {
        a || b
    }

    fn parse_value(&self, literal: &str) -> Result<bool> {
        match literal.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::domain(format!(
                "`{other}` is not a boolean literal (expected 0 or 1)"
            ))),
        }
    }

    fn format_value(&self, v: bool) -> String {
        if v { "1" } else { "0" }.to_string()
    }

    fn samples(&self) -> Vec<bool> {
        vec![false, true]
    }

    fn total_cmp(&self, a: bool, b: bool) -> Ordering {
        a.cmp(&b)
    }

    fn canonical_key(&self, v: bool) -> u64 {
        u64::from(v)
    }
}

/// A subset of the atoms of a [`Powerset`] base set, one bit per atom.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(pub u16);

impl AtomSet {
    pub fn contains(self, atom: usize) -> bool {
        self.0 & (1 << atom) != 0
    }
}

/// Subset truth values `P(A)` ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Powerset {
    atoms: Vec<String>,
}

impl Powerset {
    pub fn new(atoms: Vec<String>) -> Result<Self> {
        if atoms.len() > MAX_ATOMS {
            return Err(Error::domain(format!(
                "powerset base sets are limited to {MAX_ATOMS} atoms, got {}",
                atoms.len()
            )));
        }
        for (i, a) in atoms.iter().enumerate() {
            if a.is_empty() || a.contains(['{', '}', ',']) || a.trim() != a {
                return Err(Error::domain(format!("invalid atom name `{a}`")));
            }
            if atoms[..i].contains(a) {
                return Err(Error::domain(format!("duplicate atom `{a}`")));
            }
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    fn full(&self) -> u16 {
        ((1u32 << self.atoms.len()) - 1) as u16
    }

    /// Builds the set of the named atoms.
    pub fn set_of(&self, names: &[&str]) -> Result<AtomSet> {
        let mut bits = 0u16;
        for name in names {
            let i = self
                .atoms
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| Error::domain(format!("unknown atom `{name}`")))?;
            bits |= 1 << i;
        }
        Ok(AtomSet(bits))
    }
}

impl Quantale for Powerset {
    type Value = AtomSet;

    fn kind(&self) -> QuantaleKind {
        QuantaleKind {
            tag: QuantaleTag::Powerset(self.atoms.clone()),
            is_cartesian: true,
            is_normal: true,
        }
    }

    fn contains(&self, v: AtomSet) -> bool {
        v.0 & !self.full() == 0
    }

    fn leq(&self, a: AtomSet, b: AtomSet) -> bool {
        a.0 & !b.0 == 0
    }

    fn tensor(&self, a: AtomSet, b: AtomSet) -> AtomSet {
        AtomSet(a.0 & b.0)
    }

    fn implies(&self, b: AtomSet, c: AtomSet) -> AtomSet {
        AtomSet((!b.0 | c.0) & self.full())
    }

    fn unit(&self) -> AtomSet {
        AtomSet(self.full())
    }

    fn bottom(&self) -> AtomSet {
        AtomSet(0)
    }

    fn top(&self) -> AtomSet {
        AtomSet(self.full())
    }

    fn meet(&self, a: AtomSet, b: AtomSet) -> AtomSet {
        AtomSet(a.0 & b.0)
    }

    fn join(&self, a: AtomSet, b: AtomSet) -> AtomSet {
        AtomSet(a.0 | b.0)
    }

    fn parse_value(&self, literal: &str) -> Result<AtomSet> {
        let inner = literal
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| {
                Error::domain(format!("`{literal}` is not a set literal like {{a,b}}"))
            })?;
        let names: Vec<&str> = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        self.set_of(&names)
    }

    fn format_value(&self, v: AtomSet) -> String {
        let names: Vec<&str> = self
            .atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| v.contains(*i))
            .map(|(_, a)| a.as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    fn samples(&self) -> Vec<AtomSet> {
        (0..=u32::from(self.full()))
            .map(|b| AtomSet(b as u16))
            .collect()
    }

    fn total_cmp(&self, a: AtomSet, b: AtomSet) -> Ordering {
        a.cmp(&b)
    }

    fn canonical_key(&self, v: AtomSet) -> u64 {
        u64::from(v.0)
    }
}

fn parse_decimal(literal: &str) -> Result<f64> {
    literal
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::domain(format!("`{literal}` is not a decimal literal")))
}

fn decimal_key(v: f64) -> u64 {
    if v == f64::INFINITY {
        u64::MAX
    } else {
        (v.max(0.0) / EPSILON).round() as u64
    }
}

fn format_decimal(v: f64) -> String {
    // avoid printing "-0.000000000"
    let v = if v.abs() < 0.5e-9 { 0.0 } else { v };
    format!("{v:.9}")
}

/// Fuzzy truth values `[0, 1]` with min and the Gödel implication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Fuzzy01;

impl Quantale for Fuzzy01 {
    type Value = f64;

    fn kind(&self) -> QuantaleKind {
        QuantaleKind {
            tag: QuantaleTag::Fuzzy01,
            is_cartesian: true,
            is_normal: true,
        }
    }

    fn contains(&self, v: f64) -> bool {
        v.is_finite() && (-EPSILON..=1.0 + EPSILON).contains(&v)
    }

    fn leq(&self, a: f64, b: f64) -> bool {
        a <= b + EPSILON
    }

    fn tensor(&self, a: f64, b: f64) -> f64 {
        a.min(b)
    }

    fn implies(&self, b: f64, c: f64) -> f64 {
        if self.leq(b, c) {
            1.0
        } else {
            c
        }
    }

    fn unit(&self) -> f64 {
        1.0
    }

    fn bottom(&self) -> f64 {
        0.0
    }

    fn top(&self) -> f64 {
        1.0
    }

    fn meet(&self, a: f64, b: f64) -> f64 {
        a.min(b)
    }

    fn join(&self, a: f64, b: f64) -> f64 {
        a.max(b)
    }

    fn parse_value(&self, literal: &str) -> Result<f64> {
        self.check(parse_decimal(literal)?)
    }

    fn format_value(&self, v: f64) -> String {
        format_decimal(v)
    }

    fn samples(&self) -> Vec<f64> {
        (0..=10).map(|i| f64::from(i) / 10.0).collect()
    }

    fn total_cmp(&self, a: f64, b: f64) -> Ordering {
        a.total_cmp(&b)
    }

    fn canonical_key(&self, v: f64) -> u64 {
        decimal_key(v)
    }
}

/// Cost truth values `[0, ∞]` ordered downward, with `+` and truncated
/// subtraction. `⊥ = ∞`, `⊤ = e = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CostReal;

impl Quantale for CostReal {
    type Value = f64;

    fn kind(&self) -> QuantaleKind {
        QuantaleKind {
            tag: QuantaleTag::CostReal,
            is_cartesian: false,
            is_normal: true,
        }
    }

    fn contains(&self, v: f64) -> bool {
        !v.is_nan() && v >= -EPSILON
    }

    fn leq(&self, a: f64, b: f64) -> bool {
        a >= b - EPSILON
    }

    fn tensor(&self, a: f64, b: f64) -> f64 {
        a + b
    }

    fn implies(&self, b: f64, c: f64) -> f64 {
        if c == f64::INFINITY {
            if b == f64::INFINITY {
                0.0
            } else {
                f64::INFINITY
            }
        } else if b >= c {
            0.0
        } else {
            c - b
        }
    }

    fn unit(&self) -> f64 {
        0.0
    }

    fn bottom(&self) -> f64 {
        f64::INFINITY
    }

    fn top(&self) -> f64 {
        0.0
    }

    fn meet(&self, a: f64, b: f64) -> f64 {
        a.max(b)
    }

    fn join(&self, a: f64, b: f64) -> f64 {
        a.min(b)
    }

    fn parse_value(&self, literal: &str) -> Result<f64> {
        match literal.trim() {
            "inf" | "∞" | "Infinity" => Ok(f64::INFINITY),
            other => self.check(parse_decimal(other)?),
        }
    }

    fn format_value(&self, v: f64) -> String {
        if v == f64::INFINITY {
            "inf".to_string()
        } else {
            format_decimal(v)
        }
    }

    fn samples(&self) -> Vec<f64> {
        let mut grid: Vec<f64> = (0..=10).map(|i| f64::from(i) * 0.5).collect();
        grid.push(f64::INFINITY);
        grid
    }

    fn total_cmp(&self, a: f64, b: f64) -> Ordering {
        a.total_cmp(&b)
    }

    fn canonical_key(&self, v: f64) -> u64 {
        decimal_key(v)
    }
}

/// Checks the closed-preorder laws exhaustively over `samples`, returning a
/// description of every failing instance.
pub fn check_laws<Q: Quantale>(q: &Q, samples: &[Q::Value]) -> Vec<String> {
    let mut failures = Vec::new();
    let f = |v| q.format_value(v);
    let e = q.unit();

    for &a in samples {
        if !q.leq(a, a) {
            failures.push(format!("reflexivity fails at {}", f(a)));
        }
        if !q.equiv(q.tensor(e, a), a) {
            failures.push(format!("unit law fails at {}", f(a)));
        }
        if !q.leq(q.bottom(), a) || !q.leq(a, q.top()) {
            failures.push(format!("bounds fail at {}", f(a)));
        }
    }
    for &a in samples {
        for &b in samples {
            if !q.equiv(q.tensor(a, b), q.tensor(b, a)) {
                failures.push(format!("commutativity fails at ({}, {})", f(a), f(b)));
            }
            let (m, j) = (q.meet(a, b), q.join(a, b));
            if !(q.leq(m, a) && q.leq(m, b) && q.leq(a, j) && q.leq(b, j)) {
                failures.push(format!("meet/join bounds fail at ({}, {})", f(a), f(b)));
            }
            if q.is_normal() && !q.leq(q.tensor(a, b), m) {
                failures.push(format!("normality a⊗b ⪯ a∧b fails at ({}, {})", f(a), f(b)));
            }
            for &c in samples {
                if q.leq(a, b) && q.leq(b, c) && !q.leq(a, c) {
                    failures.push(format!(
                        "transitivity fails at ({}, {}, {})",
                        f(a),
                        f(b),
                        f(c)
                    ));
                }
                let lhs = q.tensor(q.tensor(a, b), c);
                let rhs = q.tensor(a, q.tensor(b, c));
                if !q.equiv(lhs, rhs) {
                    failures.push(format!(
                        "associativity fails at ({}, {}, {})",
                        f(a),
                        f(b),
                        f(c)
                    ));
                }
                if q.leq(a, b) {
                    if !q.leq(q.tensor(a, c), q.tensor(b, c)) {
                        failures.push(format!(
                            "tensor monotonicity fails at ({}, {}; {})",
                            f(a),
                            f(b),
                            f(c)
                        ));
                    }
                    if !q.leq(q.implies(c, a), q.implies(c, b)) {
                        failures.push(format!(
                            "implication monotonicity fails at ({}, {}; {})",
                            f(a),
                            f(b),
                            f(c)
                        ));
                    }
                }
                if q.leq(q.tensor(a, b), c) != q.leq(a, q.implies(b, c)) {
                    failures.push(format!(
                        "adjunction fails at ({}, {}, {})",
                        f(a),
                        f(b),
                        f(c)
                    ));
                }
            }
        }
    }
    if q.is_normal() && !q.equiv(e, q.top()) {
        failures.push("normal quantale with unit different from top".to_string());
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pow3() -> Powerset {
        Powerset::new(vec!["a".into(), "b".into(), "c".into()]).unwrap()
    }

    #[test]
    fn tensor_examples() {
        assert!(Bool2.tensor(true, true));
        assert_eq!(Fuzzy01.tensor(0.3, 0.7), 0.3);
        assert_eq!(CostReal.tensor(2.0, 3.0), 5.0);
        let p = pow3();
        let ab = p.set_of(&["a", "b"]).unwrap();
        let bc = p.set_of(&["b", "c"]).unwrap();
        assert_eq!(p.tensor(ab, bc), p.set_of(&["b"]).unwrap());
    }

    #[test]
    fn unit_law_on_samples() {
        for &a in &Fuzzy01.samples() {
            assert_eq!(Fuzzy01.tensor(Fuzzy01.unit(), a), a);
        }
        for &a in &CostReal.samples() {
            assert_eq!(CostReal.tensor(CostReal.unit(), a), a);
        }
    }

    #[test]
    fn implies_examples() {
        assert_eq!(Fuzzy01.implies(0.7, 0.4), 0.4);
        assert_eq!(Fuzzy01.implies(0.3, 0.8), 1.0);
        assert_eq!(CostReal.implies(3.0, 5.0), 2.0);
        assert_eq!(CostReal.implies(5.0, 3.0), 0.0);
        let p = pow3();
        let got = p.implies(p.set_of(&["a", "b"]).unwrap(), p.set_of(&["b"]).unwrap());
        assert_eq!(got, p.set_of(&["b", "c"]).unwrap());
    }

    #[test]
    fn cost_infinity_arithmetic() {
        let inf = f64::INFINITY;
        assert_eq!(CostReal.tensor(inf, 2.0), inf);
        assert_eq!(CostReal.implies(2.0, inf), inf);
        assert_eq!(CostReal.implies(inf, 2.0), 0.0);
        assert_eq!(CostReal.implies(inf, inf), 0.0);
    }

    #[test]
    fn biimplies_examples() {
        assert!(!Bool2.biimplies(true, false));
        assert_eq!(Fuzzy01.biimplies(0.4, 0.9), 0.4);
        for &a in &CostReal.samples() {
            assert!(CostReal.leq(CostReal.unit(), CostReal.biimplies(a, a)));
        }
    }

    #[test]
    fn sup_inf_examples() {
        assert!(Bool2.sup([false, true]));
        assert_eq!(CostReal.sup([2.0, 5.0]), 2.0);
        assert_eq!(Fuzzy01.inf([0.2, 0.7]), 0.2);
        assert_eq!(CostReal.sup([]), f64::INFINITY);
        assert_eq!(CostReal.inf([]), 0.0);
        assert_eq!(Fuzzy01.sup([]), 0.0);
        assert_eq!(pow3().inf([]), pow3().top());
    }

    #[test]
    fn domain_errors() {
        assert!(Fuzzy01.try_tensor(1.5, 0.2).is_err());
        assert!(CostReal.try_implies(-1.0, 0.2).is_err());
        assert!(Fuzzy01.parse_value("1.2").is_err());
        assert!(CostReal.parse_value("-3").is_err());
        assert!(pow3().parse_value("{a,z}").is_err());
        assert!(pow3().try_tensor(AtomSet(0b1000), AtomSet(0)).is_err());
    }

    #[test]
    fn kinds() {
        assert!(Bool2.is_cartesian() && Bool2.is_normal());
        assert!(pow3().is_cartesian() && pow3().is_normal());
        assert!(Fuzzy01.is_cartesian() && Fuzzy01.is_normal());
        assert!(!CostReal.is_cartesian() && CostReal.is_normal());
    }

    #[test]
    fn laws_hold_on_all_instances() {
        assert!(check_laws(&Bool2, &Bool2.samples()).is_empty());
        let p = pow3();
        assert!(check_laws(&p, &p.samples()).is_empty());
        assert!(check_laws(&Fuzzy01, &Fuzzy01.samples()).is_empty());
        assert!(check_laws(&CostReal, &CostReal.samples()).is_empty());
    }

    #[test]
    fn idempotency_only_on_cartesian() {
        for &a in &Fuzzy01.samples() {
            assert_eq!(Fuzzy01.tensor(a, a), a);
        }
        assert!(!CostReal.equiv(CostReal.tensor(2.0, 2.0), 2.0));
    }

    #[test]
    fn literals() {
        let p = pow3();
        let v = p.parse_value("{c, a}").unwrap();
        assert_eq!(p.format_value(v), "{a,c}");
        assert_eq!(p.format_value(p.bottom()), "{}");
        assert_eq!(CostReal.format_value(f64::INFINITY), "inf");
        assert_eq!(Fuzzy01.format_value(0.5), "0.500000000");
        assert_eq!(Fuzzy01.format_value(-0.0), "0.000000000");
        assert_eq!(
            "powerset:a,b".parse::<QuantaleTag>().unwrap().to_string(),
            "powerset:a,b"
        );
    }
}
