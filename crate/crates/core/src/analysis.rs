//! Reliability identities, truncation bounds and the enumeration oracle.
//!
//! Given a complex that resolves the ideal of minimal nonfailure points, the
//! reliability is `Σ_{I ≠ ∅} (-1)^{|I|+1} P(Q_{m_I})`. Truncating the sum
//! after all faces of cardinality `m` gives an upper bound for odd `m` and a
//! lower bound for even `m`.

use serde::Serialize;
use thiserror::Error;

use crate::monomial::{ExponentVector, MonomialError, MonomialIdeal};
use crate::resolution::{ComplexKind, LabeledComplex};
use crate::system::{advance, CoherentSystem, SystemError};

/// Largest grid accepted by [`brute_force_reliability`] by default.
pub const DEFAULT_STATE_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("system has {system} components but the ideal has dimension {ideal}")]
    DimensionMismatch { system: usize, ideal: usize },
    #[error("depth {depth} outside 1..={max}")]
    DepthOutOfRange { depth: usize, max: usize },
    #[error("Bonferroni bounds need the Taylor complex, got {0}")]
    NotTaylor(ComplexKind),
    #[error("state space of {states} points exceeds the cap of {cap}")]
    StateSpaceTooLarge { states: u128, cap: u128 },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Upper,
    Lower,
}

impl BoundKind {
    pub fn for_depth(depth: usize) -> Self {
        if depth % 2 == 1 {
            BoundKind::Upper
        } else {
            BoundKind::Lower
        }
    }
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundKind::Upper => "upper",
            BoundKind::Lower => "lower",
        })
    }
}

/// Partial sum over faces of cardinality at most `depth`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bound {
    pub depth: usize,
    pub value: f64,
    pub kind: BoundKind,
    /// Set when `depth` reaches the largest face, where the sum is exact.
    pub exact: bool,
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

fn check_dims(system: &CoherentSystem, ideal: &MonomialIdeal) -> Result<(), AnalysisError> {
    if system.dim() != ideal.dim() {
        return Err(AnalysisError::DimensionMismatch {
            system: system.dim(),
            ideal: ideal.dim(),
        });
    }
    Ok(())
}

/// `(cardinality, (-1)^{|I|+1} P(Q_{m_I}))` per face, in face order.
fn signed_face_probs(
    system: &CoherentSystem,
    complex: &LabeledComplex,
) -> Result<Vec<(usize, f64)>, AnalysisError> {
    check_dims(system, complex.ideal())?;
    Ok(complex
        .faces()
        .iter()
        .map(|f| {
            let p = system.orthant_prob_unchecked(f.label());
            (f.cardinality(), -f64::from(f.sign()) * p)
        })
        .collect())
}

/// Reliability as the alternating sum of orthant probabilities over the
/// nonempty faces of `complex`.
pub fn reliability_identity(
    system: &CoherentSystem,
    complex: &LabeledComplex,
) -> Result<f64, AnalysisError> {
    let terms = signed_face_probs(system, complex)?;
    Ok(terms.into_iter().map(|(_, x)| x).collect::<CompensatedSum>().value())
}

fn truncated(terms: &[(usize, f64)], depth: usize, max: usize) -> Result<Bound, AnalysisError> {
    if depth == 0 || depth > max {
        return Err(AnalysisError::DepthOutOfRange { depth, max });
    }
    let value = terms
        .iter()
        .filter(|(c, _)| *c <= depth)
        .map(|&(_, x)| x)
        .collect::<CompensatedSum>()
        .value();
    Ok(Bound {
        depth,
        value,
        kind: BoundKind::for_depth(depth),
        exact: depth == max,
    })
}

/// Tube bound from truncating the identity at face cardinality `depth`.
pub fn tube_bound(
    system: &CoherentSystem,
    complex: &LabeledComplex,
    depth: usize,
) -> Result<Bound, AnalysisError> {
    let terms = signed_face_probs(system, complex)?;
    truncated(&terms, depth, complex.max_cardinality())
}

/// Tube bounds for every depth `1..=max_cardinality`.
pub fn tube_bounds(
    system: &CoherentSystem,
    complex: &LabeledComplex,
) -> Result<Vec<Bound>, AnalysisError> {
    let terms = signed_face_probs(system, complex)?;
    let max = complex.max_cardinality();
    (1..=max).map(|m| truncated(&terms, m, max)).collect()
}

/// Classical Bonferroni bound: the Taylor identity truncated at `depth`.
pub fn bonferroni_bound(
    system: &CoherentSystem,
    taylor: &LabeledComplex,
    depth: usize,
) -> Result<Bound, AnalysisError> {
    if taylor.kind() != ComplexKind::Taylor {
        return Err(AnalysisError::NotTaylor(taylor.kind()));
    }
    tube_bound(system, taylor, depth)
}

pub fn bonferroni_bounds(
    system: &CoherentSystem,
    taylor: &LabeledComplex,
) -> Result<Vec<Bound>, AnalysisError> {
    if taylor.kind() != ComplexKind::Taylor {
        return Err(AnalysisError::NotTaylor(taylor.kind()));
    }
    tube_bounds(system, taylor)
}

/// Exact reliability by summing the probability of every grid state that
/// lies in the ideal.
pub fn brute_force_reliability(
    system: &CoherentSystem,
    ideal: &MonomialIdeal,
) -> Result<f64, AnalysisError> {
    brute_force_reliability_with_cap(system, ideal, DEFAULT_STATE_CAP)
}

pub fn brute_force_reliability_with_cap(
    system: &CoherentSystem,
    ideal: &MonomialIdeal,
    cap: u128,
) -> Result<f64, AnalysisError> {
    check_dims(system, ideal)?;
    let states = system.state_count();
    if states > cap {
        return Err(AnalysisError::StateSpaceTooLarge { states, cap });
    }
    let levels = system.levels();
    let mut state = vec![0u32; levels.len()];
    let mut total = CompensatedSum::default();
    loop {
        if ideal
            .generators()
            .iter()
            .any(|g| g.as_slice().iter().zip(&state).all(|(a, b)| a <= b))
        {
            total.add(system.state_prob(&state));
        }
        if !advance(&mut state, &levels) {
            break;
        }
    }
    Ok(total.value())
}

/// One nonempty face of the identity with its orthant probability.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportTerm {
    pub members: Vec<usize>,
    pub sign: i8,
    pub label: ExponentVector,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityReport {
    pub complex_kind: ComplexKind,
    pub deformation_v: Option<u64>,
    pub identity_value: f64,
    pub term_count: usize,
    pub terms: Vec<ReportTerm>,
    pub bounds: Vec<Bound>,
    /// Term count of the complete inclusion-exclusion formula, `2^r - 1`
    /// (saturating).
    pub baseline_term_count: u64,
    pub oracle_value: Option<f64>,
}

impl ReliabilityReport {
    /// Assembles the report; the oracle runs only when the grid has at most
    /// `oracle_cap` states.
    pub fn build(
        system: &CoherentSystem,
        complex: &LabeledComplex,
        oracle_cap: u128,
    ) -> Result<Self, AnalysisError> {
        let identity_value = reliability_identity(system, complex)?;
        let bounds = tube_bounds(system, complex)?;
        let terms = complex
            .faces()
            .iter()
            .map(|f| ReportTerm {
                members: f.members().to_vec(),
                // sign in the reliability sum, (-1)^{|I|+1}
                sign: -f.sign(),
                label: f.label().clone(),
                probability: system.orthant_prob_unchecked(f.label()),
            })
            .collect();
        let r = complex.ideal().len() as u32;
        let baseline_term_count = 1u64.checked_shl(r).map_or(u64::MAX, |x| x - 1);
        let oracle_value = if system.state_count() <= oracle_cap {
            Some(brute_force_reliability_with_cap(system, complex.ideal(), oracle_cap)?)
        } else {
            None
        };
        Ok(Self {
            complex_kind: complex.kind(),
            deformation_v: complex.deformation().map(|d| d.v()),
            identity_value,
            term_count: complex.len(),
            terms,
            bounds,
            baseline_term_count,
            oracle_value,
        })
    }

    pub fn discrepancy(&self) -> Option<f64> {
        self.oracle_value.map(|o| (o - self.identity_value).abs())
    }
}
