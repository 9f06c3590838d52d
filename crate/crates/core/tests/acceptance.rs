//! Acceptance gate. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scarf_core::analysis::{
    bonferroni_bounds, brute_force_reliability, reliability_identity, tube_bounds,
};
use scarf_core::resolution::{
    deform, deform_and_scarf, deform_and_scarf_with, hilbert_numerator, scarf_brute_oracle,
    scarf_complex, taylor_complex, Perturbation,
};
use scarf_core::system::{ContinuousSpec, Interaction, ProfitSpec};
use scarf_core::{BoundKind, CoherentSystem, Component, ExponentVector, LabeledComplex, MonomialIdeal};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn face_names(c: &LabeledComplex) -> BTreeSet<String> {
    c.faces().iter().map(|f| f.compact()).collect()
}

fn names(list: &[&str]) -> BTreeSet<String> {
    list.iter().map(|s| format!("{{{s}}}")).collect()
}

fn example4_points() -> Vec<ExponentVector> {
    [
        [1, 0, 0, 0, 0, 1, 0, 0],
        [1, 0, 0, 1, 0, 0, 1, 0],
        [0, 1, 0, 1, 0, 1, 0, 0],
        [1, 0, 0, 1, 1, 0, 0, 1],
        [0, 1, 0, 0, 0, 0, 1, 0],
        [0, 0, 1, 1, 1, 1, 0, 0],
        [0, 1, 0, 0, 1, 0, 0, 1],
        [0, 0, 1, 0, 1, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 0, 1],
    ]
    .iter()
    .map(|p| ev(p))
    .collect()
}

fn listed_f28() -> Vec<ExponentVector> {
    [
        [3, 2, 3, 1],
        [2, 3, 3, 1],
        [2, 0, 2, 2],
        [1, 1, 2, 2],
        [0, 2, 2, 2],
        [3, 0, 1, 3],
        [2, 1, 1, 3],
        [1, 2, 1, 3],
        [0, 3, 1, 3],
    ]
    .iter()
    .map(|p| ev(p))
    .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let m = ideal(&[&[3, 0], &[2, 2], &[0, 3]]);
    let s = scarf_complex(&m).map_err(|e| e.to_string())?;
    let hs = hilbert_numerator(&s);
    let t = taylor_complex(&m).map_err(|e| e.to_string())?;
    let ht = hilbert_numerator(&t);
    let elapsed = start.elapsed();

    ensure(face_names(&s) == names(&["1", "2", "3", "12", "23"]), "Scarf face set")?;
    let got: BTreeSet<(i8, ExponentVector)> =
        hs.terms().iter().map(|t| (t.sign, t.exponent.clone())).collect();
    let want: BTreeSet<(i8, ExponentVector)> = [
        (1, ev(&[0, 0])),
        (-1, ev(&[3, 0])),
        (-1, ev(&[2, 2])),
        (-1, ev(&[0, 3])),
        (1, ev(&[3, 2])),
        (1, ev(&[2, 3])),
    ]
    .into_iter()
    .collect();
    ensure(hs.len() == 6 && got == want, format!("Scarf numerator {}", hs.polynomial()))?;
    ensure(ht.len() == 8, format!("Taylor numerator has {} terms", ht.len()))?;
    let x3y3: Vec<i8> = ht
        .terms()
        .iter()
        .filter(|t| t.exponent == ev(&[3, 3]))
        .map(|t| t.sign)
        .collect();
    ensure(x3y3 == vec![1, -1], "Taylor numerator lacks the cancelling +-x^3y^3 pair")?;
    ensure(elapsed < Duration::from_millis(1), format!("took {elapsed:?}"))?;
    Ok(format!("{} in {elapsed:?}", hs.polynomial()))
}

fn criterion_2() -> Outcome {
    let m = ideal(&[&[3, 0], &[2, 2], &[0, 3]]);
    let h = hilbert_numerator(&scarf_complex(&m).map_err(|e| e.to_string())?);
    let standard: BTreeSet<ExponentVector> = [
        [0, 0],
        [1, 0],
        [0, 1],
        [2, 0],
        [1, 1],
        [0, 2],
        [2, 1],
        [1, 2],
    ]
    .iter()
    .map(|p| ev(p))
    .collect();
    let pts = box_points(&[4, 4]);
    for beta in &pts {
        let c = h.pointwise_coefficient(beta).map_err(|e| e.to_string())?;
        ensure(
            c == i64::from(standard.contains(beta)),
            format!("coefficient {c} at {beta}"),
        )?;
    }
    Ok(format!("{} box points checked", pts.len()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let m = MonomialIdeal::new(example4_points()).map_err(|e| e.to_string())?;
    let c = deform_and_scarf(&m, 10).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(c.len() == 103, format!("{} faces", c.len()))?;
    let facets: BTreeSet<String> = c.facets().iter().map(|f| f.compact()).collect();
    ensure(
        facets == names(&["12479", "13689", "12579", "12589", "13579", "13589"]),
        format!("facets {facets:?}"),
    )?;
    let face = c.face(&[1, 2, 7]).ok_or("face {1,2,7} missing")?;
    ensure(face.label() == &ev(&[1, 1, 0, 1, 1, 1, 1, 1]), format!("label {}", face.label()))?;
    let p = [0.91, 0.82, 0.73, 0.64, 0.95, 0.86, 0.77, 0.68];
    let sys = CoherentSystem::new(p.iter().map(|&q| Component::binary("b", q)).collect())
        .map_err(|e| e.to_string())?;
    let got = sys.orthant_prob(face.label()).map_err(|e| e.to_string())?;
    let want = p[0] * p[1] * p[3] * p[4] * p[5] * p[6] * p[7];
    ensure((got - want).abs() <= 1e-15 * want, format!("orthant {got} vs {want}"))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("103 faces, 6 facets in {elapsed:?}"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();

    let profit = ProfitSpec {
        linear: vec![1.0, 1.0, 4.0, 5.0],
        interactions: vec![Interaction { i: 2, j: 3, coeff: 2.0 }],
        cutoff: 28.0,
    };
    let extracted = profit.minimal_points(&[4; 4]).map_err(|e| e.to_string())?;
    if extracted.generators() != listed_f28().as_slice() {
        let extra: Vec<String> = extracted
            .generators()
            .iter()
            .filter(|g| !listed_f28().contains(g))
            .map(|g| format!("{g} (profit {})", profit.profit(g.as_slice())))
            .collect();
        failures.push(format!(
            "profit extraction yields {} minimal points, not the 9 listed; extra: {}",
            extracted.len(),
            extra.join(", ")
        ));
    }

    // Remaining clauses on the listed points as given.
    let m = MonomialIdeal::new(listed_f28()).map_err(|e| e.to_string())?;
    let rec = deform(&m, 10).map_err(|e| e.to_string())?;
    let want: Vec<ExponentVector> = [
        [7, 4, 7, 0],
        [4, 7, 8, 1],
        [5, 0, 4, 2],
        [2, 2, 5, 3],
        [0, 5, 6, 4],
        [8, 1, 0, 5],
        [6, 3, 1, 6],
        [3, 6, 2, 7],
        [1, 8, 3, 8],
    ]
    .iter()
    .map(|p| ev(p))
    .collect();
    if rec.deformed() != want.as_slice() {
        failures.push("deformed points differ from the listed deformation".into());
    }
    let c = deform_and_scarf(&m, 10).map_err(|e| e.to_string())?;
    let delta28 = names(&[
        "123", "489", "459", "234", "378", "348", "367", "49", "59", "23", "24", "38", "89", "78",
        "48", "36", "67", "45", "34", "13", "37", "12", "9", "8", "7", "6", "5", "4", "3", "2",
        "1",
    ]);
    if c.len() != 31 || face_names(&c) != delta28 {
        failures.push(format!("complex has {} faces, expected the listed 31", c.len()));
    }
    match c.face(&[4, 8, 9]) {
        Some(f) if f.label() == &ev(&[1, 3, 2, 3]) => {}
        other => failures.push(format!("face {{4,8,9}}: {other:?}")),
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}"));
    }
    if failures.is_empty() {
        Ok(format!("9 points, deformation verbatim, 31 faces in {elapsed:?}"))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_5() -> Outcome {
    let m = ideal(&[
        &[1, 1, 0, 0, 0],
        &[0, 1, 1, 0, 0],
        &[0, 0, 1, 1, 0],
        &[1, 0, 0, 1, 1],
        &[0, 1, 0, 1, 1],
    ]);
    let c = deform_and_scarf_with(&m, 10, Perturbation::Decreasing).map_err(|e| e.to_string())?;
    let want = names(&[
        "1235", "123", "135", "125", "235", "345", "13", "12", "15", "34", "23", "25", "35", "45",
        "1", "2", "3", "4", "5",
    ]);
    ensure(face_names(&c) == want, format!("faces {:?}", face_names(&c)))?;
    ensure(c.f_vector() == vec![5, 8, 5, 1], format!("f-vector {:?}", c.f_vector()))?;
    Ok("19 faces (1 four-set, 5 triples, 8 pairs, 5 vertices) with the decreasing perturbation".into())
}

struct Corpus {
    instances: Vec<(CoherentSystem, MonomialIdeal)>,
}

fn corpus() -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5CA2F);
    Corpus {
        instances: (0..600).map(|_| random_instance(&mut rng, 5, 4, 8)).collect(),
    }
}

fn criterion_6(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (sys, m) in &corpus.instances {
        let oracle = brute_force_reliability(sys, m).map_err(|e| e.to_string())?;
        let scarf = deform_and_scarf(m, m.len() as u64 + 1).map_err(|e| e.to_string())?;
        let taylor = taylor_complex(m).map_err(|e| e.to_string())?;
        for c in [&scarf, &taylor] {
            let v = reliability_identity(sys, c).map_err(|e| e.to_string())?;
            let err = (v - oracle).abs();
            worst = worst.max(err);
            ensure(err <= 1e-12, format!("{} identity off by {err:e}", c.kind()))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} systems, worst error {worst:e}, {elapsed:?}",
        corpus.instances.len()
    ))
}

fn criterion_7(corpus: &Corpus) -> Outcome {
    let mut checked = 0usize;
    let mut strict = 0usize;
    for (sys, m) in &corpus.instances {
        let oracle = brute_force_reliability(sys, m).map_err(|e| e.to_string())?;
        let scarf = deform_and_scarf(m, m.len() as u64 + 1).map_err(|e| e.to_string())?;
        let taylor = taylor_complex(m).map_err(|e| e.to_string())?;
        let sb = tube_bounds(sys, &scarf).map_err(|e| e.to_string())?;
        let bb = bonferroni_bounds(sys, &taylor).map_err(|e| e.to_string())?;
        for (s, b) in sb.iter().zip(&bb) {
            let (brackets, tighter) = match s.kind {
                BoundKind::Upper => (s.value >= oracle - 1e-12, s.value <= b.value + 1e-12),
                BoundKind::Lower => (s.value <= oracle + 1e-12, s.value >= b.value - 1e-12),
            };
            ensure(brackets, format!("depth {} {} bound {} vs exact {oracle}", s.depth, s.kind, s.value))?;
            ensure(tighter, format!("depth {} Scarf {} looser than Bonferroni {}", s.depth, s.value, b.value))?;
            if (s.value - b.value).abs() > 1e-12 {
                strict += 1;
            }
            checked += 1;
        }
        // Bonferroni depths past the Scarf complex still bracket
        for b in bb.iter().skip(sb.len()) {
            let ok = match b.kind {
                BoundKind::Upper => b.value >= oracle - 1e-12,
                BoundKind::Lower => b.value <= oracle + 1e-12,
            };
            ensure(ok, format!("Bonferroni depth {} fails to bracket", b.depth))?;
        }
    }
    Ok(format!("{checked} (system, depth) pairs, {strict} strictly tighter, 0 violations"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8);
    let n = 250;
    for _ in 0..n {
        let d = rng.gen_range(2..=5);
        let m = random_generic_ideal(&mut rng, d, 1, 10);
        let s = scarf_complex(&m).map_err(|e| e.to_string())?;
        let b = scarf_brute_oracle(&m).map_err(|e| e.to_string())?;
        ensure(s.faces() == b.faces(), format!("mismatch on {:?}", m.generators()))?;
        let labels: BTreeSet<&ExponentVector> = s.faces().iter().map(|f| f.label()).collect();
        ensure(labels.len() == s.len(), "repeated Scarf label")?;
    }
    Ok(format!("{n} generic ideals, 0 violations"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    let n = 300;
    for _ in 0..n {
        let m = random_ideal(&mut rng, 5, 3, 10);
        let r = m.len() as u64;
        let a = deform_and_scarf(&m, r + 1).map_err(|e| e.to_string())?;
        let b = deform_and_scarf(&m, 10 * (r + 1)).map_err(|e| e.to_string())?;
        ensure(a.faces() == b.faces(), format!("v-dependence on {:?}", m.generators()))?;
    }
    Ok(format!("{n} ideals, 0 violations"))
}

fn criterion_10() -> Outcome {
    // Independent exponential-type marginals, joint survival is the product.
    let rates = [0.7, 1.3, 0.4];
    let survival = |z: &[f64]| -> f64 {
        z.iter()
            .zip(rates)
            .map(|(&x, l)| if x <= 0.0 { 1.0 } else { (-l * x).exp() })
            .product()
    };
    let pts = vec![
        vec![0.35, 1.20, 2.10],
        vec![1.05, 0.25, 1.55],
        vec![0.80, 0.90, 0.40],
        vec![1.60, 0.55, 0.95],
    ];
    let q = ContinuousSpec::new(pts.clone()).quantize().map_err(|e| e.to_string())?;
    let c = scarf_complex(q.ideal()).map_err(|e| e.to_string())?;
    let mut quantized = 0.0;
    for f in c.faces() {
        quantized -= f64::from(f.sign()) * q.orthant_prob(f.label(), survival).map_err(|e| e.to_string())?;
    }
    // inclusion-exclusion over the real orthants {Z > z^(i)}
    let m = pts.len();
    let mut direct = 0.0;
    for mask in 1u32..(1 << m) {
        let corner: Vec<f64> = (0..3)
            .map(|k| {
                (0..m)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| pts[i][k])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
        direct += sign * survival(&corner);
    }
    let err = (quantized - direct).abs();
    ensure(err <= 1e-10, format!("quantized {quantized} vs direct {direct}"))?;
    Ok(format!("R = {direct:.12}, {} Scarf terms vs 15, error {err:e}", c.len()))
}

#[test]
fn acceptance() {
    let corpus = corpus();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 staircase Scarf/Taylor numerators", criterion_1()),
        ("2 pointwise Hilbert identity", criterion_2()),
        ("3 binary network complex", criterion_3()),
        ("4 multistate profit pipeline", criterion_4()),
        ("5 binary nonnetwork complex", criterion_5()),
        ("6 identity vs enumeration oracle", criterion_6(&corpus)),
        ("7 bracketing and tightness", criterion_7(&corpus)),
        ("8 Scarf criterion soundness", criterion_8()),
        ("9 deformation v-independence", criterion_9()),
        ("10 continuous quantization", criterion_10()),
    ];
    let mut failed = Vec::new();
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL  criterion {name}: {why}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
