//! Reliability identities and bounds for coherent multistate systems via
//! monomial ideals.
//!
//! The minimal operating states of a coherent system generate a monomial
//! ideal. Any free resolution of that ideal, read through its lcm labels,
//! turns into an inclusion-exclusion identity for the system reliability.
//! The Scarf complex gives a far shorter identity than the full Taylor
//! (complete inclusion-exclusion) expansion, and its truncations bracket the
//! reliability at least as tightly as the Bonferroni bounds.
//!
//! ```
//! use scarf_core::{analysis, resolution, system, MonomialIdeal};
//!
//! let profit = system::ProfitSpec {
//!     linear: vec![1.0, 1.0, 4.0, 5.0],
//!     interactions: vec![system::Interaction { i: 2, j: 3, coeff: 2.0 }],
//!     cutoff: 28.0,
//! };
//! let ideal: MonomialIdeal = profit.minimal_points(&[4, 4, 4, 4]).unwrap();
//! assert_eq!(ideal.len(), 11);
//! assert!(!ideal.is_generic());
//!
//! let complex = resolution::deform_and_scarf(&ideal, 12).unwrap();
//! assert_eq!(complex.len(), 49); // against 2^11 - 1 = 2047 Taylor terms
//!
//! let sys = system::CoherentSystem::new(
//!     (1..=4).map(|i| system::Component::new(format!("c{i}"), vec![0.25; 4])).collect(),
//! ).unwrap();
//! let r = analysis::reliability_identity(&sys, &complex).unwrap();
//! let oracle = analysis::brute_force_reliability(&sys, &ideal).unwrap();
//! assert!((r - oracle).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod monomial;
pub mod resolution;
pub mod system;

pub use analysis::{AnalysisError, Bound, BoundKind, ReliabilityReport};
pub use monomial::{ExponentVector, MonomialError, MonomialIdeal};
pub use resolution::{
    ComplexKind, DeformationRecord, Face, LabeledComplex, Perturbation, ResolutionError,
    SignedTerm, SignedTermList,
};
pub use system::{CoherentSystem, Component, ContinuousSpec, ProfitSpec, SystemError};
