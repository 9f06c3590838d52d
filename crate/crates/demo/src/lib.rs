//! WebAssembly entry points for the browser explorer in `www/`.
//!
//! Each export takes a JSON string and returns a JSON string, or an error
//! message that the page shows verbatim.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use scarf_core::analysis::{bonferroni_bounds, brute_force_reliability_with_cap, tube_bounds};
use scarf_core::resolution::{
    self, hilbert_numerator, scarf_or_deformed, taylor_complex, DEFAULT_TAYLOR_CAP,
};
use scarf_core::system::{Interaction, ProfitSpec};
use scarf_core::{
    CoherentSystem, Component, ExponentVector, LabeledComplex, MonomialIdeal, ReliabilityReport,
};

/// Largest state grid the demo will enumerate for its exact check.
const DEMO_ORACLE_CAP: u128 = 2_000_000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse<'a, T: Deserialize<'a>>(input: &'a str) -> Result<T, String> {
    serde_json::from_str(input).map_err(|e| format!("bad input: {e}"))
}

fn render<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(err)
}

fn system_from(levels: &[usize], probs: Option<Vec<Vec<f64>>>) -> Result<CoherentSystem, String> {
    let components = match probs {
        Some(p) => {
            if p.len() != levels.len() {
                return Err(format!(
                    "{} probability rows for {} components",
                    p.len(),
                    levels.len()
                ));
            }
            p.into_iter()
                .enumerate()
                .map(|(i, row)| Component::new(format!("c{}", i + 1), row))
                .collect()
        }
        None => levels
            .iter()
            .enumerate()
            .map(|(i, &l)| Component::new(format!("c{}", i + 1), vec![1.0 / l as f64; l]))
            .collect(),
    };
    CoherentSystem::new(components).map_err(err)
}

fn complex_for(ideal: &MonomialIdeal, v: Option<u64>) -> Result<LabeledComplex, String> {
    if let Some(v) = v {
        if !ideal.is_generic() && v <= ideal.len() as u64 {
            return Err(format!(
                "v = {v} must exceed the number of minimal points ({})",
                ideal.len()
            ));
        }
    }
    scarf_or_deformed(ideal, v).map_err(err)
}

#[derive(Serialize)]
struct FaceOut {
    members: Vec<usize>,
    label: ExponentVector,
}

fn faces_out(c: &LabeledComplex) -> Vec<FaceOut> {
    c.faces()
        .iter()
        .map(|f| FaceOut {
            members: f.members().to_vec(),
            label: f.label().clone(),
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfitInput {
    levels: Vec<usize>,
    #[serde(default)]
    probs: Option<Vec<Vec<f64>>>,
    linear: Vec<f64>,
    /// `[i, j, coeff]` with 1-based component numbers.
    #[serde(default)]
    interactions: Vec<(usize, usize, f64)>,
    cutoff: f64,
    #[serde(default)]
    v: Option<u64>,
}

#[derive(Serialize)]
struct ProfitOutput {
    minimal_points: Vec<ExponentVector>,
    generic: bool,
    kind: String,
    deformation_v: Option<u64>,
    faces: Vec<FaceOut>,
    facets: Vec<Vec<usize>>,
    f_vector: Vec<usize>,
    reliability: f64,
    oracle: Option<f64>,
    term_count: usize,
    complete_term_count: u64,
}

/// Minimal nonfailure points of a profit threshold system, the (deformed)
/// Scarf complex on them, and the resulting reliability.
#[wasm_bindgen]
pub fn profit_explorer(input: &str) -> Result<String, String> {
    let p: ProfitInput = parse(input)?;
    let d = p.levels.len();
    if p.linear.len() != d {
        return Err(format!("{} linear coefficients for {d} components", p.linear.len()));
    }
    let system = system_from(&p.levels, p.probs)?;
    let mut interactions = Vec::with_capacity(p.interactions.len());
    for &(i, j, coeff) in &p.interactions {
        if i == 0 || j == 0 || i > d || j > d {
            return Err(format!("interaction [{i}, {j}]: components run from 1 to {d}"));
        }
        interactions.push(Interaction { i: i - 1, j: j - 1, coeff });
    }
    let spec = ProfitSpec {
        linear: p.linear,
        interactions,
        cutoff: p.cutoff,
    };
    let ideal = spec.minimal_points(&p.levels).map_err(err)?;
    let complex = complex_for(&ideal, p.v)?;
    let report = ReliabilityReport::build(&system, &complex, DEMO_ORACLE_CAP).map_err(err)?;
    render(&ProfitOutput {
        minimal_points: ideal.generators().to_vec(),
        generic: ideal.is_generic(),
        kind: complex.kind().to_string(),
        deformation_v: report.deformation_v,
        faces: faces_out(&complex),
        facets: complex.facets().iter().map(|f| f.members().to_vec()).collect(),
        f_vector: complex.f_vector(),
        reliability: report.identity_value,
        oracle: report.oracle_value,
        term_count: report.term_count,
        complete_term_count: report.baseline_term_count,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundsInput {
    levels: Vec<usize>,
    #[serde(default)]
    probs: Option<Vec<Vec<f64>>>,
    points: Vec<Vec<u32>>,
    #[serde(default)]
    v: Option<u64>,
}

#[derive(Serialize)]
struct BoundsRow {
    depth: usize,
    kind: String,
    scarf: f64,
    bonferroni: Option<f64>,
}

#[derive(Serialize)]
struct BoundsOutput {
    minimal_points: Vec<ExponentVector>,
    exact: f64,
    oracle: Option<f64>,
    scarf_terms: usize,
    rows: Vec<BoundsRow>,
}

/// Truncated Scarf bounds next to Bonferroni bounds at every depth, for
/// plotting against the exact value.
#[wasm_bindgen]
pub fn bounds_curve(input: &str) -> Result<String, String> {
    let b: BoundsInput = parse(input)?;
    let system = system_from(&b.levels, b.probs)?;
    let gens: Vec<ExponentVector> = b.points.into_iter().map(ExponentVector::new).collect();
    for g in &gens {
        system.check_in_grid(g).map_err(err)?;
    }
    let ideal = MonomialIdeal::minimalize(gens).map_err(err)?;
    let complex = complex_for(&ideal, b.v)?;
    let scarf = tube_bounds(&system, &complex).map_err(err)?;
    let exact = scarf.last().map_or(0.0, |b| b.value);
    let bonferroni = if ideal.len() <= DEFAULT_TAYLOR_CAP {
        let taylor = taylor_complex(&ideal).map_err(err)?;
        Some(bonferroni_bounds(&system, &taylor).map_err(err)?)
    } else {
        None
    };
    let depths = bonferroni.as_ref().map_or(scarf.len(), Vec::len);
    let rows = (1..=depths)
        .map(|depth| BoundsRow {
            depth,
            kind: scarf_core::BoundKind::for_depth(depth).to_string(),
            // past the top cardinality the Scarf sum is already complete
            scarf: scarf.get(depth - 1).map_or(exact, |b| b.value),
            bonferroni: bonferroni.as_ref().map(|bs| bs[depth - 1].value),
        })
        .collect();
    let oracle = if system.state_count() <= DEMO_ORACLE_CAP {
        Some(brute_force_reliability_with_cap(&system, &ideal, DEMO_ORACLE_CAP).map_err(err)?)
    } else {
        None
    };
    render(&BoundsOutput {
        minimal_points: ideal.generators().to_vec(),
        exact,
        oracle,
        scarf_terms: complex.len(),
        rows,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StaircaseInput {
    points: Vec<[u32; 2]>,
    #[serde(default)]
    v: Option<u64>,
}

#[derive(Serialize)]
struct StaircaseOutput {
    minimal_points: Vec<ExponentVector>,
    kind: String,
    faces: Vec<FaceOut>,
    numerator: String,
    width: u32,
    height: u32,
    /// `coefficients[y][x]` is the numerator's coefficient sum at `(x, y)`.
    coefficients: Vec<Vec<i64>>,
}

/// Two-variable staircase: Scarf faces and the pointwise numerator
/// coefficients over a grid one step past the corners.
#[wasm_bindgen]
pub fn staircase(input: &str) -> Result<String, String> {
    let s: StaircaseInput = parse(input)?;
    let gens: Vec<ExponentVector> = s.points.iter().map(|&p| ExponentVector::from(p)).collect();
    let ideal = MonomialIdeal::minimalize(gens).map_err(err)?;
    let complex = complex_for(&ideal, s.v)?;
    let numerator = hilbert_numerator(&complex);
    let top = ideal.lcm_all();
    let (width, height) = (top[0] + 2, top[1] + 2);
    let coefficients = (0..height)
        .map(|y| {
            (0..width)
                .map(|x| resolution::pointwise_coefficient(&numerator, &ExponentVector::from([x, y])))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    render(&StaircaseOutput {
        minimal_points: ideal.generators().to_vec(),
        kind: complex.kind().to_string(),
        faces: faces_out(&complex),
        numerator: numerator.polynomial(),
        width,
        height,
        coefficients,
    })
}
