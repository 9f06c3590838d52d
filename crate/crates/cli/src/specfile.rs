//! JSON system description.
//!
//! ```json
//! {
//!   "components": [{"name": "pump", "levels": 4, "probs": [0.1, 0.2, 0.3, 0.4]}, ...],
//!   "minimal_nonfailure_points": [[3, 0], [2, 2], [0, 3]],
//!   "deformation_v": 10
//! }
//! ```
//!
//! Instead of explicit points a `"profit"` object may be given:
//! `{"linear": [1, 1, 4, 5], "interactions": [[3, 4, 2]], "cutoff": 28}`,
//! where interaction indices are 1-based component numbers.

use serde::Deserialize;

use scarf_core::resolution::Perturbation;
use scarf_core::system::{Interaction, ProfitSpec};
use scarf_core::{CoherentSystem, Component, ExponentVector, MonomialIdeal};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    components: Vec<RawComponent>,
    #[serde(default)]
    minimal_nonfailure_points: Option<Vec<Vec<u64>>>,
    #[serde(default)]
    profit: Option<RawProfit>,
    #[serde(default)]
    deformation_v: Option<u64>,
    #[serde(default)]
    perturbation: Option<RawPerturbation>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    #[serde(default)]
    name: String,
    levels: usize,
    probs: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfit {
    linear: Vec<f64>,
    #[serde(default)]
    interactions: Vec<(usize, usize, f64)>,
    cutoff: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawPerturbation {
    Increasing,
    Decreasing,
}

/// Where the minimal points came from.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSource {
    Listed,
    Profit(ProfitSpec),
}

/// A validated system description.
#[derive(Debug, Clone)]
pub struct SystemSpec {
    pub system: CoherentSystem,
    pub ideal: MonomialIdeal,
    pub source: PointSource,
    /// Number of points given before reduction to minimal generators.
    pub listed_points: usize,
    pub deformation_v: Option<u64>,
    pub perturbation: Perturbation,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidSpec(msg.into())
}

impl SystemSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| {
            invalid(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawSpec) -> Result<Self, CliError> {
        if raw.components.is_empty() {
            return Err(invalid("components: at least one component is required"));
        }
        for (i, c) in raw.components.iter().enumerate() {
            if c.levels != c.probs.len() {
                return Err(invalid(format!(
                    "components[{i}]: levels is {} but probs has {} entries",
                    c.levels,
                    c.probs.len()
                )));
            }
        }
        let system = CoherentSystem::new(
            raw.components
                .into_iter()
                .map(|c| Component::new(c.name, c.probs))
                .collect(),
        )
        .map_err(|e| invalid(format!("components: {e}")))?;
        let d = system.dim();

        let (ideal, source, listed_points) = match (raw.minimal_nonfailure_points, raw.profit) {
            (Some(_), Some(_)) => {
                return Err(invalid(
                    "give exactly one of minimal_nonfailure_points and profit, not both",
                ))
            }
            (None, None) => {
                return Err(invalid(
                    "one of minimal_nonfailure_points or profit is required",
                ))
            }
            (Some(points), None) => {
                if points.is_empty() {
                    return Err(invalid(
                        "minimal_nonfailure_points: empty list (the nonfailure set must be nonempty)",
                    ));
                }
                let mut gens = Vec::with_capacity(points.len());
                for (n, p) in points.iter().enumerate() {
                    if p.len() != d {
                        return Err(invalid(format!(
                            "minimal_nonfailure_points[{n}]: has {} coordinates, system has {d} components",
                            p.len()
                        )));
                    }
                    let v = ExponentVector::try_from_wide(p.iter().map(|&x| u128::from(x)))
                        .map_err(|e| invalid(format!("minimal_nonfailure_points[{n}]: {e}")))?;
                    system
                        .check_in_grid(&v)
                        .map_err(|e| invalid(format!("minimal_nonfailure_points[{n}]: {e}")))?;
                    gens.push(v);
                }
                let listed = gens.len();
                let ideal = MonomialIdeal::minimalize(gens)
                    .map_err(|e| invalid(format!("minimal_nonfailure_points: {e}")))?;
                (ideal, PointSource::Listed, listed)
            }
            (None, Some(p)) => {
                if p.linear.len() != d {
                    return Err(invalid(format!(
                        "profit.linear: has {} coefficients, system has {d} components",
                        p.linear.len()
                    )));
                }
                let mut interactions = Vec::with_capacity(p.interactions.len());
                for (n, &(i, j, coeff)) in p.interactions.iter().enumerate() {
                    if i == 0 || j == 0 || i > d || j > d {
                        return Err(invalid(format!(
                            "profit.interactions[{n}]: component numbers run from 1 to {d}, got [{i}, {j}]"
                        )));
                    }
                    interactions.push(Interaction {
                        i: i - 1,
                        j: j - 1,
                        coeff,
                    });
                }
                let spec = ProfitSpec {
                    linear: p.linear,
                    interactions,
                    cutoff: p.cutoff,
                };
                let ideal = spec
                    .minimal_points(&system.levels())
                    .map_err(|e| invalid(format!("profit: {e}")))?;
                let n = ideal.len();
                (ideal, PointSource::Profit(spec), n)
            }
        };

        if let Some(v) = raw.deformation_v {
            if v <= ideal.len() as u64 {
                return Err(invalid(format!(
                    "deformation_v: {v} must exceed the number of minimal points ({})",
                    ideal.len()
                )));
            }
        }
        let perturbation = match raw.perturbation {
            None | Some(RawPerturbation::Increasing) => Perturbation::Increasing,
            Some(RawPerturbation::Decreasing) => Perturbation::Decreasing,
        };
        Ok(Self {
            system,
            ideal,
            source,
            listed_points,
            deformation_v: raw.deformation_v,
            perturbation,
        })
    }
}
