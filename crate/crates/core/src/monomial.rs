//! Exponent vectors and monomial ideals.
//!
//! A point `α ∈ N^d` stands both for a state of a `d`-component system and for
//! the monomial `x^α`. Divisibility of monomials is the componentwise order on
//! states, so an ideal generated by a finite antichain of points describes an
//! upward-closed (coherent) set of states.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Width of a single exponent.
pub type Exponent = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty generator list")]
    Empty,
    #[error("exponent vectors must have at least one coordinate")]
    ZeroDimension,
    #[error("generator {divisor} divides generator {multiple}; generators must be minimal")]
    NotMinimal { divisor: usize, multiple: usize },
    #[error("generator {first} is repeated as generator {second}")]
    Duplicate { first: usize, second: usize },
    #[error("exponent {value} does not fit in {bits} bits")]
    Overflow { value: u128, bits: u32 },
}

/// A point of the integer grid `N^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<Exponent>);

impl ExponentVector {
    pub fn new(coords: Vec<Exponent>) -> Self {
        Self(coords)
    }

    /// Builds a vector from wide integers, rejecting anything outside the
    /// exponent range instead of wrapping.
    pub fn try_from_wide<I>(coords: I) -> Result<Self, MonomialError>
    where
        I: IntoIterator<Item = u128>,
    {
        coords
            .into_iter()
            .map(|c| {
                Exponent::try_from(c).map_err(|_| MonomialError::Overflow {
                    value: c,
                    bits: Exponent::BITS,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Exponent] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Exponent> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    /// `x^self | x^other`, i.e. `self ⪯ other` componentwise.
    pub fn divides(&self, other: &Self) -> Result<bool, MonomialError> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum of two vectors.
    pub fn lcm_with(&self, other: &Self) -> Result<Self, MonomialError> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub(crate) fn lcm_assign(&mut self, other: &Self) {
        for (a, &b) in self.0.iter_mut().zip(&other.0) {
            *a = (*a).max(b);
        }
    }

    /// Renders the vector as a monomial in `x1, …, xd` (or `x, y, z` when `d ≤ 3`).
    pub fn monomial(&self) -> String {
        if self.is_zero() {
            return "1".to_owned();
        }
        let short = self.dim() <= 3;
        let mut parts = Vec::new();
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let var = if short {
                ["x", "y", "z"][k].to_owned()
            } else {
                format!("x{}", k + 1)
            };
            if e == 1 {
                parts.push(var);
            } else {
                parts.push(format!("{var}^{e}"));
            }
        }
        parts.join("*")
    }
}

impl From<Vec<Exponent>> for ExponentVector {
    fn from(v: Vec<Exponent>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[Exponent; N]> for ExponentVector {
    fn from(v: [Exponent; N]) -> Self {
        Self(v.to_vec())
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = Exponent;

    fn index(&self, k: usize) -> &Exponent {
        &self.0[k]
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), MonomialError> {
    if expected == found {
        Ok(())
    } else {
        Err(MonomialError::DimensionMismatch { expected, found })
    }
}

pub fn divides(a: &ExponentVector, b: &ExponentVector) -> Result<bool, MonomialError> {
    a.divides(b)
}

/// Least common multiple of a nonempty family of vectors.
///
/// The empty family has no dimension to take a zero vector from, so it is
/// rejected; callers that need the label of the empty face use
/// [`ExponentVector::zeros`].
pub fn lcm<'a, I>(vs: I) -> Result<ExponentVector, MonomialError>
where
    I: IntoIterator<Item = &'a ExponentVector>,
{
    let mut it = vs.into_iter();
    let mut acc = it.next().ok_or(MonomialError::Empty)?.clone();
    for v in it {
        check_dim(acc.dim(), v.dim())?;
        acc.lcm_assign(v);
    }
    Ok(acc)
}

/// Where an ideal fails to be generic: two generators share the same nonzero
/// exponent in one coordinate. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericityViolation {
    pub coordinate: usize,
    pub first: usize,
    pub second: usize,
    pub exponent: Exponent,
}

impl fmt::Display for GenericityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "generators {} and {} both have exponent {} in coordinate {}",
            self.first, self.second, self.exponent, self.coordinate
        )
    }
}

/// A monomial ideal given by its minimal generators.
///
/// Generators keep the order in which they were supplied (first occurrence
/// wins when duplicates are collapsed), and are addressed with 1-based
/// indices everywhere outside this module. Use [`MonomialIdeal::sorted_lex`]
/// for an input-independent ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Wraps a list that is already a minimal generating set.
    pub fn new(gens: Vec<ExponentVector>) -> Result<Self, MonomialError> {
        let dim = common_dim(&gens)?;
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate().skip(i + 1) {
                if a == b {
                    return Err(MonomialError::Duplicate {
                        first: i + 1,
                        second: j + 1,
                    });
                }
                if a.divides_unchecked(b) {
                    return Err(MonomialError::NotMinimal {
                        divisor: i + 1,
                        multiple: j + 1,
                    });
                }
                if b.divides_unchecked(a) {
                    return Err(MonomialError::NotMinimal {
                        divisor: j + 1,
                        multiple: i + 1,
                    });
                }
            }
        }
        Ok(Self { dim, gens })
    }

    /// Reduces an arbitrary generating list to the minimal generators of the
    /// ideal it spans. Relative order of the survivors is kept.
    pub fn minimalize(gens: Vec<ExponentVector>) -> Result<Self, MonomialError> {
        let dim = common_dim(&gens)?;
        let mut kept: Vec<ExponentVector> = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if kept.contains(g) {
                continue;
            }
            let dominated = gens
                .iter()
                .enumerate()
                .any(|(j, h)| j != i && h != g && h.divides_unchecked(g));
            if !dominated {
                kept.push(g.clone());
            }
        }
        Ok(Self { dim, gens: kept })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of minimal generators `r`.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    /// Generator by 1-based index.
    pub fn generator(&self, index: usize) -> Option<&ExponentVector> {
        index.checked_sub(1).and_then(|i| self.gens.get(i))
    }

    /// Lemma-1 membership: `x^beta ∈ M` iff some generator divides it.
    pub fn contains(&self, beta: &ExponentVector) -> Result<bool, MonomialError> {
        check_dim(self.dim, beta.dim())?;
        Ok(self.gens.iter().any(|g| g.divides_unchecked(beta)))
    }

    /// Lcm of all generators.
    pub fn lcm_all(&self) -> ExponentVector {
        let mut acc = ExponentVector::zeros(self.dim);
        for g in &self.gens {
            acc.lcm_assign(g);
        }
        acc
    }

    /// First pair of generators sharing a nonzero exponent in some
    /// coordinate, scanning coordinates first.
    pub fn genericity_violation(&self) -> Option<GenericityViolation> {
        for k in 0..self.dim {
            for (i, a) in self.gens.iter().enumerate() {
                if a[k] == 0 {
                    continue;
                }
                for (j, b) in self.gens.iter().enumerate().skip(i + 1) {
                    if a[k] == b[k] {
                        return Some(GenericityViolation {
                            coordinate: k + 1,
                            first: i + 1,
                            second: j + 1,
                            exponent: a[k],
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_generic(&self) -> bool {
        self.genericity_violation().is_none()
    }

    /// Same ideal with generators in ascending lexicographic order.
    pub fn sorted_lex(&self) -> Self {
        let mut gens = self.gens.clone();
        gens.sort();
        Self {
            dim: self.dim,
            gens,
        }
    }
}

fn common_dim(gens: &[ExponentVector]) -> Result<usize, MonomialError> {
    let first = gens.first().ok_or(MonomialError::Empty)?;
    let dim = first.dim();
    if dim == 0 {
        return Err(MonomialError::ZeroDimension);
    }
    for g in gens {
        check_dim(dim, g.dim())?;
    }
    Ok(dim)
}
