//! Labeled simplicial complexes over the generators of a monomial ideal.
//!
//! Three complexes are built here: the Taylor complex (every subset of
//! generators), the Scarf complex of a generic ideal (subsets whose lcm label
//! is unique), and the Scarf complex of a generic deformation relabeled with
//! the original generators. Each one yields the numerator of the fine Hilbert
//! series of `S/M` as an alternating sum of face labels, and every one of
//! those numerators is exact.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::monomial::{ExponentVector, GenericityViolation, MonomialError, MonomialIdeal};

/// Largest generator count accepted by [`taylor_complex`] by default.
pub const DEFAULT_TAYLOR_CAP: usize = 20;

/// Largest generator count accepted by [`scarf_brute_oracle`].
pub const BRUTE_ORACLE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("{generators} generators exceed the cap of {cap} for this construction")]
    TooManyGenerators { generators: usize, cap: usize },
    #[error("ideal is not generic ({0}); use the deformed Scarf complex instead")]
    NotGeneric(GenericityViolation),
    #[error("deformation parameter v = {v} must exceed the generator count {generators}")]
    InvalidDeformation { v: u64, generators: usize },
    #[error("complex invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Taylor,
    Scarf,
    ScarfDeformed,
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::Taylor => "taylor",
            ComplexKind::Scarf => "scarf",
            ComplexKind::ScarfDeformed => "scarf_deformed",
        })
    }
}

/// A nonempty set of generator indices (1-based, ascending) and its lcm label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    members: Vec<usize>,
    label: ExponentVector,
}

impl Face {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Lcm of the original generators in this face.
    pub fn label(&self) -> &ExponentVector {
        &self.label
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    /// `(-1)^{|I|}`, the sign of this face in the Hilbert numerator.
    pub fn sign(&self) -> i8 {
        if self.members.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Indices written together when all are single digits (`{489}`),
    /// comma separated otherwise.
    pub fn compact(&self) -> String {
        if self.members.iter().all(|&m| m < 10) {
            let digits: String = self.members.iter().map(|m| m.to_string()).collect();
            format!("{{{digits}}}")
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Direction of the index perturbation used to break exponent ties.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Perturbation {
    /// Generator `i` is shifted by `i/v`: among equal exponents the earlier
    /// generator ranks lower.
    #[default]
    Increasing,
    /// Generator `i` is shifted by `(r + 1 - i)/v`: among equal exponents the
    /// later generator ranks lower.
    Decreasing,
}

/// A generic deformation of an ideal, stored as per-coordinate dense ranks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationRecord {
    v: u64,
    perturbation: Perturbation,
    deformed: Vec<ExponentVector>,
}

impl DeformationRecord {
    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn perturbation(&self) -> Perturbation {
        self.perturbation
    }

    /// Deformed exponents, one per generator in the original order.
    pub fn deformed(&self) -> &[ExponentVector] {
        &self.deformed
    }

    /// The deformed generators as an ideal. It is always generic, and still
    /// minimal because strict per-coordinate orders are preserved.
    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.deformed.clone())
            .expect("dense ranks of a minimal generating set are minimal")
    }
}

/// Perturbs every exponent of generator `i` by a multiple of `1/v`, then
/// replaces each coordinate by its 0-based rank among the `r` generators.
pub fn deform(ideal: &MonomialIdeal, v: u64) -> Result<DeformationRecord, ResolutionError> {
    deform_with(ideal, v, Perturbation::Increasing)
}

pub fn deform_with(
    ideal: &MonomialIdeal,
    v: u64,
    perturbation: Perturbation,
) -> Result<DeformationRecord, ResolutionError> {
    let r = ideal.len();
    if v <= r as u64 {
        return Err(ResolutionError::InvalidDeformation { v, generators: r });
    }
    let gens = ideal.generators();
    let mut ranks = vec![vec![0u32; ideal.dim()]; r];
    let mut order: Vec<usize> = (0..r).collect();
    for k in 0..ideal.dim() {
        // Perturbations are below 1 and pairwise distinct, so comparing the
        // shifted values is comparing (exponent, shift) lexicographically.
        match perturbation {
            Perturbation::Increasing => order.sort_by_key(|&i| (gens[i][k], i)),
            Perturbation::Decreasing => order.sort_by_key(|&i| (gens[i][k], std::cmp::Reverse(i))),
        }
        for (rank, &i) in order.iter().enumerate() {
            ranks[i][k] = rank as u32;
        }
    }
    Ok(DeformationRecord {
        v,
        perturbation,
        deformed: ranks.into_iter().map(ExponentVector::new).collect(),
    })
}

/// A simplicial complex on `{1, …, r}` whose faces carry lcm labels.
///
/// Only nonempty faces are stored; the empty face (label `1`) is implicit.
/// Faces are ordered by cardinality, then lexicographically by members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledComplex {
    ideal: MonomialIdeal,
    kind: ComplexKind,
    faces: Vec<Face>,
    deformation: Option<DeformationRecord>,
}

impl LabeledComplex {
    fn from_member_sets(
        ideal: &MonomialIdeal,
        kind: ComplexKind,
        mut sets: Vec<Vec<usize>>,
        deformation: Option<DeformationRecord>,
    ) -> Self {
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let gens = ideal.generators();
        let faces = sets
            .into_iter()
            .map(|members| {
                let mut label = gens[members[0]].clone();
                for &i in &members[1..] {
                    label.lcm_assign(&gens[i]);
                }
                Face {
                    members: members.into_iter().map(|i| i + 1).collect(),
                    label,
                }
            })
            .collect();
        Self {
            ideal: ideal.clone(),
            kind,
            faces,
            deformation,
        }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn deformation(&self) -> Option<&DeformationRecord> {
        self.deformation.as_ref()
    }

    /// Number of nonempty faces.
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn max_cardinality(&self) -> usize {
        self.faces.last().map_or(0, Face::cardinality)
    }

    /// Count of faces per cardinality; entry `s - 1` counts faces of size `s`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.max_cardinality()];
        for face in &self.faces {
            f[face.cardinality() - 1] += 1;
        }
        f
    }

    /// Looks up a face by its 1-based members (ascending).
    pub fn face(&self, members: &[usize]) -> Option<&Face> {
        self.faces
            .binary_search_by(|f| {
                f.members
                    .len()
                    .cmp(&members.len())
                    .then_with(|| f.members.as_slice().cmp(members))
            })
            .ok()
            .map(|i| &self.faces[i])
    }

    /// Maximal faces, in canonical order.
    pub fn facets(&self) -> Vec<&Face> {
        // Downward closure means a face is maximal iff no face one larger
        // contains it.
        self.faces
            .iter()
            .filter(|f| {
                !self.faces.iter().any(|g| {
                    g.cardinality() == f.cardinality() + 1 && is_subset(&f.members, &g.members)
                })
            })
            .collect()
    }

    /// Checks the structural invariants: downward closure, all vertices
    /// present, correct labels, dimension bound for Scarf kinds, and distinct
    /// labels for a plain Scarf complex.
    pub fn validate(&self) -> Result<(), ResolutionError> {
        let r = self.ideal.len();
        for i in 1..=r {
            if self.face(&[i]).is_none() {
                return Err(ResolutionError::Invariant(format!("vertex {{{i}}} missing")));
            }
        }
        for face in &self.faces {
            let m = &face.members;
            if m.is_empty() || m.windows(2).any(|w| w[0] >= w[1]) || m[m.len() - 1] > r || m[0] == 0 {
                return Err(ResolutionError::Invariant(format!("malformed face {face}")));
            }
            let gens: Vec<&ExponentVector> = m.iter().map(|&i| &self.ideal.generators()[i - 1]).collect();
            if crate::monomial::lcm(gens)? != face.label {
                return Err(ResolutionError::Invariant(format!("wrong label on {face}")));
            }
            if m.len() > 1 {
                for skip in 0..m.len() {
                    let sub: Vec<usize> = m
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    if self.face(&sub).is_none() {
                        return Err(ResolutionError::Invariant(format!(
                            "face {face} present but its subset {sub:?} is not"
                        )));
                    }
                }
            }
        }
        if self.kind != ComplexKind::Taylor && self.max_cardinality() > self.ideal.dim() {
            return Err(ResolutionError::Invariant(format!(
                "Scarf face of size {} exceeds dimension {}",
                self.max_cardinality(),
                self.ideal.dim()
            )));
        }
        if self.kind == ComplexKind::Scarf {
            let mut seen: HashMap<&ExponentVector, &Face> = HashMap::new();
            for face in &self.faces {
                if let Some(prev) = seen.insert(&face.label, face) {
                    return Err(ResolutionError::Invariant(format!(
                        "faces {prev} and {face} share label {}",
                        face.label
                    )));
                }
            }
        }
        Ok(())
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Full Taylor complex: every nonempty subset of generators.
pub fn taylor_complex(ideal: &MonomialIdeal) -> Result<LabeledComplex, ResolutionError> {
    taylor_complex_with_cap(ideal, DEFAULT_TAYLOR_CAP)
}

pub fn taylor_complex_with_cap(
    ideal: &MonomialIdeal,
    cap: usize,
) -> Result<LabeledComplex, ResolutionError> {
    let r = ideal.len();
    if r > cap {
        return Err(ResolutionError::TooManyGenerators { generators: r, cap });
    }
    let sets = (1u64..(1u64 << r))
        .map(|mask| (0..r).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    Ok(LabeledComplex::from_member_sets(ideal, ComplexKind::Taylor, sets, None))
}

/// Scarf complex of a generic ideal.
pub fn scarf_complex(ideal: &MonomialIdeal) -> Result<LabeledComplex, ResolutionError> {
    if let Some(v) = ideal.genericity_violation() {
        return Err(ResolutionError::NotGeneric(v));
    }
    let sets = scarf_member_sets(ideal.generators());
    let complex = LabeledComplex::from_member_sets(ideal, ComplexKind::Scarf, sets, None);
    complex.validate()?;
    Ok(complex)
}

/// Scarf complex of the deformed ideal, relabeled with the original
/// generators. Resolves `S/M` for any ideal, possibly non-minimally.
pub fn deform_and_scarf(ideal: &MonomialIdeal, v: u64) -> Result<LabeledComplex, ResolutionError> {
    deform_and_scarf_with(ideal, v, Perturbation::Increasing)
}

pub fn deform_and_scarf_with(
    ideal: &MonomialIdeal,
    v: u64,
    perturbation: Perturbation,
) -> Result<LabeledComplex, ResolutionError> {
    let record = deform_with(ideal, v, perturbation)?;
    let sets = scarf_member_sets(record.deformed());
    Ok(LabeledComplex::from_member_sets(
        ideal,
        ComplexKind::ScarfDeformed,
        sets,
        Some(record),
    ))
}

/// Default deformation parameter `v = r + 1`.
pub fn default_v(ideal: &MonomialIdeal) -> u64 {
    ideal.len() as u64 + 1
}

/// The Scarf complex when the ideal is generic, otherwise the deformed one
/// (with `v` defaulting to `r + 1`).
pub fn scarf_or_deformed(
    ideal: &MonomialIdeal,
    v: Option<u64>,
) -> Result<LabeledComplex, ResolutionError> {
    if ideal.is_generic() {
        scarf_complex(ideal)
    } else {
        deform_and_scarf(ideal, v.unwrap_or_else(|| default_v(ideal)))
    }
}

/// Faces of the Scarf complex of `gens` as 0-based member lists.
///
/// A set `I` has a unique label iff (a) dropping any member changes the lcm
/// and (b) no generator outside `I` divides the lcm. Faces are grown one
/// member at a time from accepted faces, which reaches every face since the
/// complex is downward closed.
fn scarf_member_sets(gens: &[ExponentVector]) -> Vec<Vec<usize>> {
    let r = gens.len();
    let mut out: Vec<Vec<usize>> = (0..r).map(|i| vec![i]).collect();
    let mut layer: Vec<(Vec<usize>, ExponentVector)> =
        (0..r).map(|i| (vec![i], gens[i].clone())).collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (members, label) in &layer {
            let last = *members.last().expect("faces are nonempty");
            for j in last + 1..r {
                let joined = label.lcm_unchecked(&gens[j]);
                let mut candidate = members.clone();
                candidate.push(j);
                if every_member_is_essential(gens, &candidate, &joined)
                    && !(0..r).any(|t| !candidate.contains(&t) && gens[t].divides_unchecked(&joined))
                {
                    next.push((candidate, joined));
                }
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

/// True when every member attains the lcm in some coordinate where no other
/// member does, i.e. `lcm(I \ {i}) != lcm(I)` for all `i`.
fn every_member_is_essential(gens: &[ExponentVector], members: &[usize], label: &ExponentVector) -> bool {
    let d = label.dim();
    let mut attained = vec![0usize; d];
    for &i in members {
        for k in 0..d {
            if gens[i][k] == label[k] {
                attained[k] += 1;
            }
        }
    }
    members.iter().all(|&i| {
        (0..d).any(|k| gens[i][k] == label[k] && attained[k] == 1)
    })
}

/// Exhaustive reference for the Scarf complex: enumerates every nonempty
/// subset and keeps those whose label no other subset shares.
///
/// Exponential in `r`; meant for cross-checking.
pub fn scarf_brute_oracle(ideal: &MonomialIdeal) -> Result<LabeledComplex, ResolutionError> {
    let r = ideal.len();
    if r > BRUTE_ORACLE_CAP {
        return Err(ResolutionError::TooManyGenerators {
            generators: r,
            cap: BRUTE_ORACLE_CAP,
        });
    }
    let gens = ideal.generators();
    let d = ideal.dim();
    let mut labels: Vec<(u32, Vec<u32>)> = Vec::with_capacity((1 << r) - 1);
    let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
    for mask in 1u32..(1u32 << r) {
        let mut label = vec![0u32; d];
        for (i, g) in gens.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (l, &x) in label.iter_mut().zip(g.as_slice()) {
                    if x > *l {
                        *l = x;
                    }
                }
            }
        }
        *counts.entry(label.clone()).or_default() += 1;
        labels.push((mask, label));
    }
    let sets = labels
        .into_iter()
        .filter(|(_, label)| counts[label] == 1)
        .map(|(mask, _)| (0..r).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    Ok(LabeledComplex::from_member_sets(ideal, ComplexKind::Scarf, sets, None))
}

/// One term `sign · x^exponent` of a Hilbert numerator, coming from a face of
/// the given cardinality (0 for the empty face).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignedTerm {
    pub sign: i8,
    pub exponent: ExponentVector,
    pub cardinality: usize,
}

/// Numerator of `H(S/M; x) = Σ_I (-1)^{|I|} x^{m_I} / ∏(1 - x_i)`, one term
/// per face including the empty one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedTermList {
    dim: usize,
    terms: Vec<SignedTerm>,
}

impl SignedTermList {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[SignedTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^beta` in the expanded series: the signed count of
    /// terms whose exponent divides `beta`. Equals 1 off the ideal and 0 on it.
    pub fn pointwise_coefficient(&self, beta: &ExponentVector) -> Result<i64, MonomialError> {
        if beta.dim() != self.dim {
            return Err(MonomialError::DimensionMismatch {
                expected: self.dim,
                found: beta.dim(),
            });
        }
        Ok(self
            .terms
            .iter()
            .filter(|t| t.exponent.divides_unchecked(beta))
            .map(|t| i64::from(t.sign))
            .sum())
    }

    /// Combines like terms, dropping those that cancel. Ordered by exponent.
    pub fn collected(&self) -> Vec<(i64, ExponentVector)> {
        let mut acc: std::collections::BTreeMap<&ExponentVector, i64> = Default::default();
        for t in &self.terms {
            *acc.entry(&t.exponent).or_default() += i64::from(t.sign);
        }
        acc.into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(e, c)| (c, e.clone()))
            .collect()
    }

    /// The numerator as a polynomial string, terms in face order.
    pub fn polynomial(&self) -> String {
        let mut s = String::new();
        for (n, t) in self.terms.iter().enumerate() {
            let mono = t.exponent.monomial();
            match (n, t.sign) {
                (0, 1) => s.push_str(&mono),
                (0, _) => s.push_str(&format!("-{mono}")),
                (_, 1) => s.push_str(&format!(" + {mono}")),
                _ => s.push_str(&format!(" - {mono}")),
            }
        }
        s
    }
}

/// Signed label list of a complex with the empty-face term `+1` first.
///
/// For a Scarf complex the nonempty-face labels are pairwise distinct
/// ([`LabeledComplex::validate`]), so nothing cancels. The only overlap with
/// the empty term is the unit ideal, whose single generator is `1`.
pub fn hilbert_numerator(complex: &LabeledComplex) -> SignedTermList {
    let dim = complex.ideal().dim();
    let mut terms = Vec::with_capacity(complex.len() + 1);
    terms.push(SignedTerm {
        sign: 1,
        exponent: ExponentVector::zeros(dim),
        cardinality: 0,
    });
    terms.extend(complex.faces().iter().map(|f| SignedTerm {
        sign: f.sign(),
        exponent: f.label().clone(),
        cardinality: f.cardinality(),
    }));
    SignedTermList { dim, terms }
}

/// Coefficient of `x^beta` in `numerator / ∏(1 - x_i)`.
pub fn pointwise_coefficient(
    terms: &SignedTermList,
    beta: &ExponentVector,
) -> Result<i64, MonomialError> {
    terms.pointwise_coefficient(beta)
}
