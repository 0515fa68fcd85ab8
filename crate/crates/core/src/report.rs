use std::fmt;

use serde::{Deserialize, Serialize};

/// Which axiom a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Reflexivity,
    Transitivity,
    Symmetry,
    MapPreservesMetric,
    Adjointness,
    LeftCompatibility,
    RightCompatibility,
    PredicateConstraint,
    TermMetric,
    Fineness,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Transitivity => "transitivity",
            Axiom::Symmetry => "symmetry",
            Axiom::MapPreservesMetric => "map-preserves-metric",
            Axiom::Adjointness => "adjointness",
            Axiom::LeftCompatibility => "left-compatibility",
            Axiom::RightCompatibility => "right-compatibility",
            Axiom::PredicateConstraint => "predicate-constraint",
            Axiom::TermMetric => "term-metric",
            Axiom::Fineness => "fineness",
        };
        f.write_str(name)
    }
}

/// One failing instance of an axiom: the elements involved and the values
/// that made the inequality fail, already rendered as literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub elements: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({}): {}",
            self.axiom,
            self.elements.join(","),
            self.detail
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: Axiom, elements: &[&str], detail: impl Into<String>) {
        self.violations.push(Violation {
            axiom,
            elements: elements.iter().map(|s| s.to_string()).collect(),
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }

    /// Turns a non-empty report into an error.
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}
