//! Quantale-enriched concept analysis.
//!
//! Everything is generic over a [`Quantale`](quantale::Quantale), a closed
//! preorder of truth values. Four instances are provided: booleans, subsets
//! of a finite atom set, the fuzzy interval `[0,1]` and costs `[0,∞]`.
//!
//! - [`vspace`]: enriched spaces, approximation spaces and maps
//! - [`vrelation`]: relations, composition and residuation
//! - [`predicate`]: enriched subsets, tensor spaces and rough approximations
//! - [`concept`]: formal contexts, concept lattices and graded implications
//! - [`lingvar`]: linguistic variables and granulation into derived contexts
//! - [`io`]: the text file formats read and written by the CLI
//! - [`fixtures`]: seeded random instances for law tests

pub mod concept;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lingvar;
pub mod matrix;
pub mod predicate;
pub mod quantale;
pub mod report;
pub mod vrelation;
pub mod vspace;

pub use concept::{Concept, ConceptLattice, FormalContext};
pub use error::{Error, Result};
pub use lingvar::{DescriptionFunction, LinguisticVariable, PiecewiseLinear};
pub use matrix::Matrix;
pub use quantale::{
    AtomSet, Bool2, CostReal, Fuzzy01, Powerset, Quantale, QuantaleKind, QuantaleTag, EPSILON,
};
pub use report::{Axiom, ValidationReport, Violation};
pub use vrelation::VRelation;
pub use vspace::{ApproximationSpace, UnderlyingPreorder, VMap, VSpace};
