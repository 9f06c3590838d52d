//! Probability model of a coherent multistate system.
//!
//! Component `i` takes levels `0, …, n_i - 1` with probabilities `p_ij`;
//! components are independent. Nonfailure sets are upward closed in the
//! level grid and are described by their minimal points, which become the
//! generators of a monomial ideal.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monomial::{ExponentVector, MonomialError, MonomialIdeal};

/// Tolerance on `Σ_j p_ij = 1`.
pub const PROB_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SystemError {
    #[error("system has no components")]
    NoComponents,
    #[error("component {component} ({name}): needs at least 2 levels, got {levels}")]
    TooFewLevels {
        component: usize,
        name: String,
        levels: usize,
    },
    #[error("component {component} ({name}): probability {value} at level {level} is outside [0, 1]")]
    BadProbability {
        component: usize,
        name: String,
        level: usize,
        value: f64,
    },
    #[error("component {component} ({name}): probabilities sum to {sum}, not 1")]
    BadSum {
        component: usize,
        name: String,
        sum: f64,
    },
    #[error("component index {index} out of range for {count} components")]
    BadComponent { index: usize, count: usize },
    #[error("point {point} leaves the level grid at coordinate {coordinate}")]
    OutOfGrid { point: String, coordinate: usize },
    #[error("profit specification: {0}")]
    BadProfit(String),
    #[error("cutoff {cutoff} exceeds the maximum profit {max}; the nonfailure set is empty")]
    UnreachableCutoff { cutoff: f64, max: f64 },
    #[error("critical points violate general position: coordinate {coordinate} has value {value} at points {first} and {second}")]
    NotGeneralPosition {
        coordinate: usize,
        first: usize,
        second: usize,
        value: f64,
    },
    #[error("continuous specification: {0}")]
    BadContinuous(String),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub probs: Vec<f64>,
}

impl Component {
    pub fn new(name: impl Into<String>, probs: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            probs,
        }
    }

    /// Two-state component working with probability `p`.
    pub fn binary(name: impl Into<String>, p: f64) -> Self {
        Self::new(name, vec![1.0 - p, p])
    }

    pub fn levels(&self) -> usize {
        self.probs.len()
    }
}

/// Independent components with validated level distributions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherentSystem {
    components: Vec<Component>,
    // tail[i][j] = P(X_i >= j), length levels + 1
    #[serde(skip)]
    tails: Vec<Vec<f64>>,
}

impl CoherentSystem {
    pub fn new(components: Vec<Component>) -> Result<Self, SystemError> {
        if components.is_empty() {
            return Err(SystemError::NoComponents);
        }
        let mut components = components;
        for (i, c) in components.iter_mut().enumerate() {
            let trimmed = c.name.trim();
            c.name = if trimmed.is_empty() {
                format!("c{}", i + 1)
            } else {
                trimmed.to_owned()
            };
            if c.levels() < 2 {
                return Err(SystemError::TooFewLevels {
                    component: i + 1,
                    name: c.name.clone(),
                    levels: c.levels(),
                });
            }
            for (level, &value) in c.probs.iter().enumerate() {
                if !(0.0..=1.0).contains(&value) {
                    return Err(SystemError::BadProbability {
                        component: i + 1,
                        name: c.name.clone(),
                        level,
                        value,
                    });
                }
            }
            let sum: f64 = c.probs.iter().sum();
            if (sum - 1.0).abs() > PROB_SUM_TOLERANCE {
                return Err(SystemError::BadSum {
                    component: i + 1,
                    name: c.name.clone(),
                    sum,
                });
            }
        }
        let tails = components
            .iter()
            .map(|c| {
                let mut t = vec![0.0; c.levels() + 1];
                for j in (0..c.levels()).rev() {
                    t[j] = t[j + 1] + c.probs[j];
                }
                // the total mass is 1 by definition, not up to rounding
                t[0] = 1.0;
                t
            })
            .collect();
        Ok(Self { components, tails })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Number of components `d`.
    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn levels(&self) -> Vec<usize> {
        self.components.iter().map(Component::levels).collect()
    }

    /// Number of grid states `∏ n_i`, saturating.
    pub fn state_count(&self) -> u128 {
        self.components
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.levels() as u128))
    }

    /// `P(X_i >= level)` for a 0-based component index. Levels past the top
    /// have probability 0.
    pub fn survival(&self, component: usize, level: u32) -> Result<f64, SystemError> {
        let tail = self.tails.get(component).ok_or(SystemError::BadComponent {
            index: component,
            count: self.dim(),
        })?;
        Ok(tail.get(level as usize).copied().unwrap_or(0.0))
    }

    /// Probability of the orthant `{X ⪰ alpha}` under independence.
    pub fn orthant_prob(&self, alpha: &ExponentVector) -> Result<f64, SystemError> {
        if alpha.dim() != self.dim() {
            return Err(MonomialError::DimensionMismatch {
                expected: self.dim(),
                found: alpha.dim(),
            }
            .into());
        }
        Ok(self.orthant_prob_unchecked(alpha))
    }

    pub(crate) fn orthant_prob_unchecked(&self, alpha: &ExponentVector) -> f64 {
        alpha
            .as_slice()
            .iter()
            .zip(&self.tails)
            .map(|(&a, t)| t.get(a as usize).copied().unwrap_or(0.0))
            .product()
    }

    /// Probability of a single grid state.
    pub fn state_prob(&self, state: &[u32]) -> f64 {
        state
            .iter()
            .zip(&self.components)
            .map(|(&j, c)| c.probs.get(j as usize).copied().unwrap_or(0.0))
            .product()
    }

    /// Rejects points that do not lie in the level grid.
    pub fn check_in_grid(&self, point: &ExponentVector) -> Result<(), SystemError> {
        if point.dim() != self.dim() {
            return Err(MonomialError::DimensionMismatch {
                expected: self.dim(),
                found: point.dim(),
            }
            .into());
        }
        for (k, (&a, c)) in point.as_slice().iter().zip(&self.components).enumerate() {
            if a as usize >= c.levels() {
                return Err(SystemError::OutOfGrid {
                    point: point.to_string(),
                    coordinate: k + 1,
                });
            }
        }
        Ok(())
    }
}

/// Pairwise interaction term `coeff · α_i · α_j` (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interaction {
    pub i: usize,
    pub j: usize,
    pub coeff: f64,
}

/// Profit `Ψ(α) = Σ a_k α_k + Σ c_ij α_i α_j` with nonnegative coefficients,
/// and the cutoff `c` defining the nonfailure set `{Ψ >= c}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfitSpec {
    pub linear: Vec<f64>,
    pub interactions: Vec<Interaction>,
    pub cutoff: f64,
}

impl ProfitSpec {
    pub fn validate(&self) -> Result<(), SystemError> {
        let d = self.linear.len();
        if d == 0 {
            return Err(SystemError::BadProfit("no linear coefficients".into()));
        }
        if let Some((k, a)) = self
            .linear
            .iter()
            .enumerate()
            .find(|(_, a)| !(a.is_finite() && **a >= 0.0))
        {
            return Err(SystemError::BadProfit(format!(
                "linear coefficient {} is {a}; coefficients must be finite and nonnegative",
                k + 1
            )));
        }
        for t in &self.interactions {
            if t.i >= d || t.j >= d {
                return Err(SystemError::BadProfit(format!(
                    "interaction ({}, {}) references a component beyond {d}",
                    t.i + 1,
                    t.j + 1
                )));
            }
            if t.i == t.j {
                return Err(SystemError::BadProfit(format!(
                    "interaction ({}, {}) pairs a component with itself",
                    t.i + 1,
                    t.j + 1
                )));
            }
            if !(t.coeff.is_finite() && t.coeff >= 0.0) {
                return Err(SystemError::BadProfit(format!(
                    "interaction ({}, {}) coefficient {} must be finite and nonnegative",
                    t.i + 1,
                    t.j + 1,
                    t.coeff
                )));
            }
        }
        if !self.cutoff.is_finite() {
            return Err(SystemError::BadProfit("cutoff must be finite".into()));
        }
        Ok(())
    }

    pub fn profit(&self, alpha: &[u32]) -> f64 {
        let lin: f64 = self
            .linear
            .iter()
            .zip(alpha)
            .map(|(a, &x)| a * f64::from(x))
            .sum();
        let inter: f64 = self
            .interactions
            .iter()
            .map(|t| t.coeff * f64::from(alpha[t.i]) * f64::from(alpha[t.j]))
            .sum();
        lin + inter
    }

    /// Minimal points of `{α ∈ D : Ψ(α) >= c}` on the grid
    /// `D = ∏ {0, …, levels_k - 1}`.
    ///
    /// Points are emitted in grid enumeration order with the first
    /// coordinate varying fastest. Because `Ψ` is increasing, a point is
    /// minimal iff it qualifies and each single-step decrease does not.
    pub fn minimal_points(&self, levels: &[usize]) -> Result<MonomialIdeal, SystemError> {
        self.validate()?;
        if levels.len() != self.linear.len() {
            return Err(MonomialError::DimensionMismatch {
                expected: self.linear.len(),
                found: levels.len(),
            }
            .into());
        }
        if let Some(&l) = levels.iter().find(|&&l| l == 0) {
            return Err(SystemError::BadProfit(format!("level count {l} is empty")));
        }
        let top: Vec<u32> = levels.iter().map(|&l| l as u32 - 1).collect();
        let max = self.profit(&top);
        if max < self.cutoff {
            return Err(SystemError::UnreachableCutoff {
                cutoff: self.cutoff,
                max,
            });
        }
        let mut found = Vec::new();
        let mut point = vec![0u32; levels.len()];
        loop {
            if self.profit(&point) >= self.cutoff {
                let minimal = (0..point.len()).all(|i| {
                    if point[i] == 0 {
                        return true;
                    }
                    point[i] -= 1;
                    let below = self.profit(&point) < self.cutoff;
                    point[i] += 1;
                    below
                });
                if minimal {
                    found.push(ExponentVector::new(point.clone()));
                }
            }
            if !advance(&mut point, levels) {
                break;
            }
        }
        Ok(MonomialIdeal::new(found)?)
    }
}

/// Odometer step over the grid, first coordinate fastest. Returns false
/// after the last point.
pub(crate) fn advance(point: &mut [u32], levels: &[usize]) -> bool {
    for (x, &l) in point.iter_mut().zip(levels) {
        if (*x as usize) + 1 < l {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

/// Continuous-state system: the nonfailure event is the union of the open
/// orthants `{Z > z^(i)}` over the critical points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousSpec {
    pub critical_points: Vec<Vec<f64>>,
}

/// Rank-quantized continuous system.
///
/// The ideal's generators are the per-coordinate 0-based ranks of the
/// critical points. A face label (a rank vector) maps back to the real point
/// whose coordinates are the critical values at those ranks, which is the
/// coordinatewise maximum of the critical points in the face.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedSystem {
    ideal: MonomialIdeal,
    // sorted[k][rank] = critical value of coordinate k at that rank
    sorted: Vec<Vec<f64>>,
}

impl ContinuousSpec {
    pub fn new(critical_points: Vec<Vec<f64>>) -> Self {
        Self { critical_points }
    }

    pub fn dim(&self) -> usize {
        self.critical_points.first().map_or(0, Vec::len)
    }

    #[allow(clippy::needless_range_loop)] // column-wise over a row-major matrix
    pub fn quantize(&self) -> Result<QuantizedSystem, SystemError> {
        let m = self.critical_points.len();
        if m == 0 {
            return Err(SystemError::BadContinuous("no critical points".into()));
        }
        let d = self.dim();
        if d == 0 {
            return Err(MonomialError::ZeroDimension.into());
        }
        for p in &self.critical_points {
            if p.len() != d {
                return Err(MonomialError::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                }
                .into());
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(SystemError::BadContinuous(
                    "critical coordinates must be finite".into(),
                ));
            }
        }
        let mut ranks = vec![vec![0u32; d]; m];
        let mut sorted = Vec::with_capacity(d);
        for k in 0..d {
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| {
                self.critical_points[a][k].total_cmp(&self.critical_points[b][k])
            });
            for w in order.windows(2) {
                let (a, b) = (w[0], w[1]);
                if self.critical_points[a][k] == self.critical_points[b][k] {
                    return Err(SystemError::NotGeneralPosition {
                        coordinate: k + 1,
                        first: a.min(b) + 1,
                        second: a.max(b) + 1,
                        value: self.critical_points[a][k],
                    });
                }
            }
            for (rank, &i) in order.iter().enumerate() {
                ranks[i][k] = rank as u32;
            }
            sorted.push(order.iter().map(|&i| self.critical_points[i][k]).collect());
        }
        // Critical points may be dominated by others; those orthants add
        // nothing to the union and drop out here.
        let ideal = MonomialIdeal::minimalize(ranks.into_iter().map(ExponentVector::new).collect())?;
        Ok(QuantizedSystem { ideal, sorted })
    }
}

impl QuantizedSystem {
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    /// Real corner of the orthant labeled by a rank vector.
    pub fn corner(&self, label: &ExponentVector) -> Result<Vec<f64>, SystemError> {
        if label.dim() != self.sorted.len() {
            return Err(MonomialError::DimensionMismatch {
                expected: self.sorted.len(),
                found: label.dim(),
            }
            .into());
        }
        label
            .as_slice()
            .iter()
            .zip(&self.sorted)
            .map(|(&r, vals)| {
                vals.get(r as usize).copied().ok_or_else(|| {
                    SystemError::BadContinuous(format!("rank {r} out of range"))
                })
            })
            .collect()
    }

    /// `P(Z > corner(label))` via the caller's joint survival function.
    pub fn orthant_prob<F>(&self, label: &ExponentVector, survival: F) -> Result<f64, SystemError>
    where
        F: Fn(&[f64]) -> f64,
    {
        Ok(survival(&self.corner(label)?))
    }
}
