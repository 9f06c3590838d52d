use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use scarf_core::analysis::{
    self, brute_force_reliability_with_cap, reliability_identity, tube_bounds, Bound,
    DEFAULT_STATE_CAP,
};
use scarf_core::resolution::{
    self, deform_and_scarf_with, scarf_complex, taylor_complex, Perturbation, DEFAULT_TAYLOR_CAP,
};
use scarf_core::{
    BoundKind, CoherentSystem, Component, ExponentVector, LabeledComplex, MonomialIdeal,
    ReliabilityReport,
};

use crate::specfile::SystemSpec;
use crate::{fmt_prob, CliError};

#[derive(Debug, Clone)]
pub struct Options {
    pub json: bool,
    /// Overrides the spec file's `deformation_v`.
    pub v: Option<u64>,
    pub perturbation: Option<Perturbation>,
    pub oracle_cap: u128,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            json: false,
            v: None,
            perturbation: None,
            oracle_cap: DEFAULT_STATE_CAP,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(runtime)?;
    s.push('\n');
    Ok(s)
}

fn perturbation_name(p: Perturbation) -> &'static str {
    match p {
        Perturbation::Increasing => "increasing",
        Perturbation::Decreasing => "decreasing",
    }
}

/// Scarf complex for generic ideals, deformed Scarf complex otherwise.
pub fn build_complex(spec: &SystemSpec, opts: &Options) -> Result<LabeledComplex, CliError> {
    if spec.ideal.is_generic() {
        return scarf_complex(&spec.ideal).map_err(runtime);
    }
    let v = opts
        .v
        .or(spec.deformation_v)
        .unwrap_or_else(|| resolution::default_v(&spec.ideal));
    if v <= spec.ideal.len() as u64 {
        return Err(CliError::Usage(format!(
            "--v {v} must exceed the number of minimal points ({})",
            spec.ideal.len()
        )));
    }
    let p = opts.perturbation.unwrap_or(spec.perturbation);
    deform_and_scarf_with(&spec.ideal, v, p).map_err(runtime)
}

fn deformation_line(c: &LabeledComplex) -> String {
    match c.deformation() {
        Some(d) => format!(
            "v = {}, {} perturbation",
            d.v(),
            perturbation_name(d.perturbation())
        ),
        None => "none".to_owned(),
    }
}

#[derive(Serialize)]
struct JsonFace<'a> {
    members: &'a [usize],
    label: &'a ExponentVector,
}

#[derive(Serialize)]
struct JsonDeformation<'a> {
    v: u64,
    perturbation: &'static str,
    deformed: &'a [ExponentVector],
}

#[derive(Serialize)]
struct ScarfJson<'a> {
    dimension: usize,
    generators: &'a [ExponentVector],
    generic: bool,
    genericity_violation: Option<String>,
    deformation: Option<JsonDeformation<'a>>,
    kind: scarf_core::ComplexKind,
    faces: Vec<JsonFace<'a>>,
    facets: Vec<&'a [usize]>,
    face_count: usize,
    facet_count: usize,
    f_vector: Vec<usize>,
}

pub fn cmd_scarf(spec: &SystemSpec, opts: &Options) -> Result<String, CliError> {
    let c = build_complex(spec, opts)?;
    let facets = c.facets();
    let m = &spec.ideal;
    if opts.json {
        return to_json(&ScarfJson {
            dimension: m.dim(),
            generators: m.generators(),
            generic: m.is_generic(),
            genericity_violation: m.genericity_violation().map(|v| v.to_string()),
            deformation: c.deformation().map(|d| JsonDeformation {
                v: d.v(),
                perturbation: perturbation_name(d.perturbation()),
                deformed: d.deformed(),
            }),
            kind: c.kind(),
            faces: c
                .faces()
                .iter()
                .map(|f| JsonFace {
                    members: f.members(),
                    label: f.label(),
                })
                .collect(),
            facets: facets.iter().map(|f| f.members()).collect(),
            face_count: c.len(),
            facet_count: facets.len(),
            f_vector: c.f_vector(),
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "generators: {} (dimension {})", m.len(), m.dim());
    for (i, g) in m.generators().iter().enumerate() {
        let _ = writeln!(out, "  {:>3}  {}", i + 1, g);
    }
    match m.genericity_violation() {
        None => out.push_str("generic: yes\n"),
        Some(v) => {
            let _ = writeln!(out, "generic: no ({v})");
        }
    }
    let _ = writeln!(out, "deformation: {}", deformation_line(&c));
    if let Some(d) = c.deformation() {
        out.push_str("deformed generators:\n");
        for (i, g) in d.deformed().iter().enumerate() {
            let _ = writeln!(out, "  {:>3}  {}", i + 1, g);
        }
    }
    let _ = writeln!(out, "complex: {}", c.kind());
    out.push_str("faces:\n");
    let width = c.faces().iter().map(|f| f.to_string().len()).max().unwrap_or(0);
    for f in c.faces() {
        let _ = writeln!(out, "  {:<width$}  {}", f.to_string(), f.label());
    }
    out.push_str("facets:\n");
    for f in &facets {
        let _ = writeln!(out, "  {f}");
    }
    let _ = writeln!(out, "{} faces, {} facets", c.len(), facets.len());
    Ok(out)
}

#[derive(Serialize)]
struct ReliabilityJson<'a> {
    generators: &'a [ExponentVector],
    #[serde(flatten)]
    report: &'a ReliabilityReport,
    discrepancy: Option<f64>,
    states: u128,
}

pub fn cmd_reliability(spec: &SystemSpec, opts: &Options) -> Result<String, CliError> {
    let c = build_complex(spec, opts)?;
    let report = ReliabilityReport::build(&spec.system, &c, opts.oracle_cap).map_err(runtime)?;
    let states = spec.system.state_count();
    if opts.json {
        return to_json(&ReliabilityJson {
            generators: spec.ideal.generators(),
            report: &report,
            discrepancy: report.discrepancy(),
            states,
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "complex: {} (deformation: {})", c.kind(), deformation_line(&c));
    let _ = writeln!(out, "minimal points: {}", spec.ideal.len());
    let _ = writeln!(out, "reliability: {}", fmt_prob(report.identity_value));
    let _ = writeln!(
        out,
        "terms: {} terms (complete formula: {})",
        report.term_count, report.baseline_term_count
    );
    match report.oracle_value {
        Some(o) => {
            let _ = writeln!(out, "oracle: {} ({states} states)", fmt_prob(o));
            let _ = writeln!(
                out,
                "discrepancy: {}",
                fmt_prob(report.discrepancy().unwrap_or_default())
            );
        }
        None => {
            let _ = writeln!(
                out,
                "oracle: skipped ({states} states exceed the cap of {})",
                opts.oracle_cap
            );
        }
    }
    Ok(out)
}

/// One line of the bounds table. `bonferroni` is absent when the Taylor
/// complex is too large to build.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow {
    pub depth: usize,
    pub kind: BoundKind,
    pub scarf: f64,
    pub scarf_exact: bool,
    pub bonferroni: Option<f64>,
    pub tighter: &'static str,
}

#[derive(Serialize)]
struct BoundsJson<'a> {
    kind: scarf_core::ComplexKind,
    scarf_max_depth: usize,
    exact: f64,
    rows: &'a [BoundsRow],
}

pub fn bounds_rows(
    spec: &SystemSpec,
    c: &LabeledComplex,
    depths: Option<&[usize]>,
) -> Result<Vec<BoundsRow>, CliError> {
    let r = spec.ideal.len();
    let scarf = tube_bounds(&spec.system, c).map_err(runtime)?;
    let max_scarf = c.max_cardinality();
    let top = max_scarf.max(if r <= DEFAULT_TAYLOR_CAP { r } else { 0 });
    let depths: Vec<usize> = match depths {
        Some(d) => d.to_vec(),
        None => (1..=max_scarf).collect(),
    };
    if let Some(&bad) = depths.iter().find(|&&d| d == 0 || d > top) {
        return Err(CliError::Usage(format!("depth {bad} outside 1..={top}")));
    }
    let bonf: Option<Vec<Bound>> = if r <= DEFAULT_TAYLOR_CAP {
        let t = taylor_complex(&spec.ideal).map_err(runtime)?;
        Some(analysis::bonferroni_bounds(&spec.system, &t).map_err(runtime)?)
    } else {
        None
    };
    let exact = scarf.last().map(|b| b.value).unwrap_or_default();
    Ok(depths
        .into_iter()
        .map(|depth| {
            // past the largest face the truncated sum is the whole identity
            let (value, scarf_exact) = if depth <= max_scarf {
                (scarf[depth - 1].value, scarf[depth - 1].exact)
            } else {
                (exact, true)
            };
            let kind = BoundKind::for_depth(depth);
            let b = bonf.as_ref().map(|v| v[depth - 1].value);
            let tighter = match b {
                None => "n/a",
                Some(b) if (b - value).abs() <= 1e-15 => "equal",
                Some(b) => match kind {
                    BoundKind::Upper if value < b => "scarf",
                    BoundKind::Lower if value > b => "scarf",
                    _ => "bonferroni",
                },
            };
            BoundsRow {
                depth,
                kind,
                scarf: value,
                scarf_exact,
                bonferroni: b,
                tighter,
            }
        })
        .collect())
}

pub fn cmd_bounds(
    spec: &SystemSpec,
    opts: &Options,
    depths: Option<&[usize]>,
) -> Result<String, CliError> {
    let c = build_complex(spec, opts)?;
    let rows = bounds_rows(spec, &c, depths)?;
    let exact = reliability_identity(&spec.system, &c).map_err(runtime)?;
    if opts.json {
        return to_json(&BoundsJson {
            kind: c.kind(),
            scarf_max_depth: c.max_cardinality(),
            exact,
            rows: &rows,
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "complex: {} (deformation: {})", c.kind(), deformation_line(&c));
    let _ = writeln!(
        out,
        "{:>5}  {:<5}  {:<17}  {:<17}  tighter",
        "depth", "kind", "scarf", "bonferroni"
    );
    for row in &rows {
        let scarf = if row.scarf_exact {
            format!("{}*", fmt_prob(row.scarf))
        } else {
            fmt_prob(row.scarf)
        };
        let bonf = row.bonferroni.map(fmt_prob).unwrap_or_else(|| "n/a".into());
        let _ = writeln!(
            out,
            "{:>5}  {:<5}  {:<17}  {:<17}  {}",
            row.depth,
            row.kind.to_string(),
            scarf,
            bonf,
            row.tighter
        );
    }
    let _ = writeln!(out, "exact: {} (* marks the full identity)", fmt_prob(exact));
    Ok(out)
}

#[derive(Serialize)]
struct OracleJson {
    oracle_value: f64,
    states: u128,
}

pub fn cmd_oracle(spec: &SystemSpec, opts: &Options) -> Result<String, CliError> {
    let value = brute_force_reliability_with_cap(&spec.system, &spec.ideal, opts.oracle_cap)
        .map_err(runtime)?;
    let states = spec.system.state_count();
    if opts.json {
        return to_json(&OracleJson {
            oracle_value: value,
            states,
        });
    }
    Ok(format!("oracle: {} ({states} states)\n", fmt_prob(value)))
}

#[derive(Serialize)]
struct CompareJson {
    kind: scarf_core::ComplexKind,
    scarf_terms: usize,
    scarf_value: f64,
    taylor_terms: u64,
    taylor_value: Option<f64>,
    oracle_value: Option<f64>,
    scarf_discrepancy: Option<f64>,
    taylor_discrepancy: Option<f64>,
}

pub fn cmd_compare(spec: &SystemSpec, opts: &Options) -> Result<String, CliError> {
    let c = build_complex(spec, opts)?;
    let scarf_value = reliability_identity(&spec.system, &c).map_err(runtime)?;
    let r = spec.ideal.len();
    let taylor_value = if r <= DEFAULT_TAYLOR_CAP {
        let t = taylor_complex(&spec.ideal).map_err(runtime)?;
        Some(reliability_identity(&spec.system, &t).map_err(runtime)?)
    } else {
        None
    };
    let oracle_value = if spec.system.state_count() <= opts.oracle_cap {
        Some(
            brute_force_reliability_with_cap(&spec.system, &spec.ideal, opts.oracle_cap)
                .map_err(runtime)?,
        )
    } else {
        None
    };
    let cmp = CompareJson {
        kind: c.kind(),
        scarf_terms: c.len(),
        scarf_value,
        taylor_terms: 1u64.checked_shl(r as u32).map_or(u64::MAX, |x| x - 1),
        taylor_value,
        oracle_value,
        scarf_discrepancy: oracle_value.map(|o| (o - scarf_value).abs()),
        taylor_discrepancy: oracle_value.zip(taylor_value).map(|(o, t)| (o - t).abs()),
    };
    if opts.json {
        return to_json(&cmp);
    }
    let na = || "n/a".to_owned();
    let mut out = String::new();
    let _ = writeln!(out, "{:<8}  {:>8}  {:<17}  discrepancy", "method", "terms", "value");
    let _ = writeln!(
        out,
        "{:<8}  {:>8}  {:<17}  {}",
        "scarf",
        cmp.scarf_terms,
        fmt_prob(scarf_value),
        cmp.scarf_discrepancy.map(fmt_prob).unwrap_or_else(na)
    );
    let _ = writeln!(
        out,
        "{:<8}  {:>8}  {:<17}  {}",
        "taylor",
        cmp.taylor_terms,
        taylor_value.map(fmt_prob).unwrap_or_else(na),
        cmp.taylor_discrepancy.map(fmt_prob).unwrap_or_else(na)
    );
    let _ = writeln!(
        out,
        "{:<8}  {:>8}  {}",
        "oracle",
        spec.system.state_count(),
        oracle_value.map(fmt_prob).unwrap_or_else(na)
    );
    Ok(out)
}

#[derive(Debug, Default, Serialize)]
pub struct SelfTestSummary {
    pub seed: u64,
    pub systems: usize,
    pub worst_identity_error: f64,
    pub bound_checks: usize,
    pub violations: Vec<String>,
}

/// Random systems checked against enumeration: identity agreement, bound
/// bracketing and tightness against Bonferroni.
pub fn self_test(seed: u64, count: usize) -> SelfTestSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = SelfTestSummary {
        seed,
        systems: count,
        ..Default::default()
    };
    for n in 0..count {
        let d = rng.gen_range(1..=5);
        let levels: Vec<usize> = (0..d).map(|_| rng.gen_range(2..=4)).collect();
        let comps = levels
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let w: Vec<f64> = (0..l).map(|_| rng.gen_range(0.05..1.0)).collect();
                let s: f64 = w.iter().sum();
                Component::new(format!("c{}", i + 1), w.into_iter().map(|x| x / s).collect())
            })
            .collect();
        let sys = CoherentSystem::new(comps).expect("normalized rows are valid");
        let r = rng.gen_range(1..=8);
        let pts = (0..r)
            .map(|_| ExponentVector::new(levels.iter().map(|&l| rng.gen_range(0..l as u32)).collect()))
            .collect();
        let m = MonomialIdeal::minimalize(pts).expect("nonempty points");
        let c = resolution::scarf_or_deformed(&m, None).expect("valid ideal");
        let t = taylor_complex(&m).expect("r <= 8");
        let oracle = analysis::brute_force_reliability(&sys, &m).expect("small grid");
        for (name, cx) in [("scarf", &c), ("taylor", &t)] {
            let v = reliability_identity(&sys, cx).expect("dims agree");
            let err = (v - oracle).abs();
            summary.worst_identity_error = summary.worst_identity_error.max(err);
            if err > 1e-12 {
                summary.violations.push(format!("system {n}: {name} identity off by {err:e}"));
            }
        }
        let sb = tube_bounds(&sys, &c).expect("dims agree");
        let bb = analysis::bonferroni_bounds(&sys, &t).expect("taylor");
        for (s, b) in sb.iter().zip(&bb) {
            summary.bound_checks += 1;
            let ok = match s.kind {
                BoundKind::Upper => s.value >= oracle - 1e-12 && s.value <= b.value + 1e-12,
                BoundKind::Lower => s.value <= oracle + 1e-12 && s.value >= b.value - 1e-12,
            };
            if !ok {
                summary.violations.push(format!(
                    "system {n}: depth {} {} bound {} (bonferroni {}, exact {oracle})",
                    s.depth, s.kind, s.value, b.value
                ));
            }
        }
    }
    summary
}

pub fn cmd_selftest(seed: u64, count: usize, opts: &Options) -> Result<String, CliError> {
    let summary = self_test(seed, count);
    let out = if opts.json {
        to_json(&summary)?
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "seed: {seed}");
        let _ = writeln!(out, "systems: {}", summary.systems);
        let _ = writeln!(out, "worst identity error: {}", fmt_prob(summary.worst_identity_error));
        let _ = writeln!(out, "bound checks: {}", summary.bound_checks);
        let _ = writeln!(out, "violations: {}", summary.violations.len());
        for v in &summary.violations {
            let _ = writeln!(out, "  {v}");
        }
        out
    };
    if summary.violations.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Runtime(out))
    }
}
