#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use scarf_core::{CoherentSystem, Component, ExponentVector, MonomialIdeal};

pub fn ev(c: &[u32]) -> ExponentVector {
    ExponentVector::new(c.to_vec())
}

pub fn ideal(points: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(points.iter().map(|p| ev(p)).collect()).unwrap()
}

/// Random probability row of the given length, all entries positive.
pub fn random_probs(rng: &mut ChaCha8Rng, levels: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..levels).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// System with `d <= max_d` components, `2..=max_levels` levels each, and an
/// ideal of at most `max_r` minimal points inside the grid.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    max_d: usize,
    max_levels: usize,
    max_r: usize,
) -> (CoherentSystem, MonomialIdeal) {
    let d = rng.gen_range(1..=max_d);
    let levels: Vec<usize> = (0..d).map(|_| rng.gen_range(2..=max_levels)).collect();
    let sys = CoherentSystem::new(
        levels
            .iter()
            .enumerate()
            .map(|(i, &l)| Component::new(format!("c{}", i + 1), random_probs(rng, l)))
            .collect(),
    )
    .unwrap();
    let r = rng.gen_range(1..=max_r);
    let pts: Vec<ExponentVector> = (0..r)
        .map(|_| ExponentVector::new(levels.iter().map(|&l| rng.gen_range(0..l as u32)).collect()))
        .collect();
    (sys, MonomialIdeal::minimalize(pts).unwrap())
}

/// Random ideal in `d <= max_d` variables with exponents up to `max_exp`.
pub fn random_ideal(rng: &mut ChaCha8Rng, max_d: usize, max_exp: u32, max_r: usize) -> MonomialIdeal {
    let d = rng.gen_range(1..=max_d);
    let r = rng.gen_range(1..=max_r);
    let pts = (0..r)
        .map(|_| ExponentVector::new((0..d).map(|_| rng.gen_range(0..=max_exp)).collect()))
        .collect();
    MonomialIdeal::minimalize(pts).unwrap()
}

/// Random generic ideal with between `min_r` and `max_r` generators.
///
/// Each coordinate draws distinct nonzero exponents, with some zeroed out,
/// so genericity holds by construction; non-minimal draws are retried.
pub fn random_generic_ideal(
    rng: &mut ChaCha8Rng,
    d: usize,
    min_r: usize,
    max_r: usize,
) -> MonomialIdeal {
    loop {
        let r = rng.gen_range(min_r..=max_r);
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(d);
        for _ in 0..d {
            let mut vals: Vec<u32> = (1..=(2 * r as u32)).collect();
            for i in (1..vals.len()).rev() {
                let j = rng.gen_range(0..=i);
                vals.swap(i, j);
            }
            vals.truncate(r);
            for v in vals.iter_mut() {
                if rng.gen_bool(0.25) {
                    *v = 0;
                }
            }
            cols.push(vals);
        }
        let gens: Vec<ExponentVector> = (0..r)
            .map(|i| ExponentVector::new(cols.iter().map(|c| c[i]).collect()))
            .collect();
        if let Ok(m) = MonomialIdeal::new(gens) {
            assert!(m.is_generic());
            return m;
        }
    }
}

/// Every point of the box `∏ {0, …, bounds_k}`.
pub fn box_points(bounds: &[u32]) -> Vec<ExponentVector> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(ExponentVector::new).collect()
}

/// Box one step past the largest generator exponent in every coordinate.
pub fn hilbert_box(m: &MonomialIdeal) -> Vec<ExponentVector> {
    let top: Vec<u32> = m.lcm_all().as_slice().iter().map(|&x| x + 1).collect();
    box_points(&top)
}
