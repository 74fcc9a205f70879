//! Seeded random systems sorted into the PR × EP truth table, plus a small
//! named fixture corpus.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::extpos::{check_external_positivity_with, EpOptions};
use crate::posreal::is_positive_real;
use crate::xfer::TransferFunction;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadrantEntry {
    pub index: usize,
    pub num: Vec<f64>,
    pub den: Vec<f64>,
    pub pr: bool,
    /// `positive`, `numeric_positive`, `negative`, or `error`.
    pub ep: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadrantReport {
    pub seed: u64,
    pub count: usize,
    /// Keys are `"<pr|not_pr>/<ep status>"`.
    pub counts: BTreeMap<String, usize>,
    pub systems: Vec<QuadrantEntry>,
}

impl QuadrantReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quadrant report is always serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} systems, seed {}\n", self.count, self.seed);
        for (key, n) in &self.counts {
            out.push_str(&format!("  {key:<28} {n}\n"));
        }
        out
    }
}

fn coeff(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    // two decimals keep the corpus readable and exactly printable
    (rng.gen_range(lo..hi) * 100.0).round() / 100.0
}

fn positive(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    coeff(rng, lo, hi).max(0.01)
}

/// A proper system of order at most two drawn from mixed families.
pub fn random_system(rng: &mut ChaCha8Rng) -> TransferFunction {
    loop {
        let (num, den) = match rng.gen_range(0..4) {
            0 => (
                vec![coeff(rng, -2.0, 2.0)],
                vec![1.0, coeff(rng, -2.0, 2.0)],
            ),
            1 => (
                vec![coeff(rng, -1.0, 3.0), coeff(rng, -2.0, 3.0)],
                vec![1.0, coeff(rng, -2.0, 3.0)],
            ),
            2 => (
                vec![coeff(rng, -3.0, 3.0), coeff(rng, -3.0, 3.0)],
                vec![1.0, coeff(rng, -3.0, 3.0), coeff(rng, -3.0, 3.0)],
            ),
            _ => (
                vec![
                    coeff(rng, -1.0, 3.0),
                    coeff(rng, -3.0, 3.0),
                    coeff(rng, -3.0, 3.0),
                ],
                vec![1.0, coeff(rng, -3.0, 3.0), coeff(rng, -3.0, 3.0)],
            ),
        };
        if let Ok(f) = TransferFunction::from_coeffs(&num, &den) {
            if !f.is_zero() {
                return f;
            }
        }
    }
}

/// A positive real system: either `(d s + b)/(s + a)` with positive
/// parameters, or a sum of one to three positive real atoms.
pub fn random_pr_system(rng: &mut ChaCha8Rng) -> TransferFunction {
    if rng.gen_bool(0.4) {
        let d = positive(rng, 0.1, 3.0);
        let b = positive(rng, 0.1, 3.0);
        let a = positive(rng, 0.1, 3.0);
        return TransferFunction::from_coeffs(&[d, b], &[1.0, a]).expect("valid coefficients");
    }
    let atoms = rng.gen_range(1..=3);
    let mut f = TransferFunction::gain(0.0);
    for _ in 0..atoms {
        let c = positive(rng, 0.1, 3.0);
        let atom = match rng.gen_range(0..5) {
            0 => Ok(TransferFunction::gain(c)),
            1 => TransferFunction::from_coeffs(&[c], &[1.0, positive(rng, 0.1, 3.0)]),
            2 => {
                let w = positive(rng, 0.2, 3.0);
                TransferFunction::from_coeffs(&[c, 0.0], &[1.0, 0.0, w * w])
            }
            3 => TransferFunction::from_coeffs(&[c], &[1.0, 0.0]),
            _ => {
                // (c s + c z)/(s + p) with z < p is PR with a zero left of the pole
                let p = positive(rng, 0.2, 3.0);
                let z = positive(rng, 0.1, p);
                TransferFunction::from_coeffs(&[c, c * z], &[1.0, p])
            }
        }
        .expect("valid coefficients");
        f = f.add(&atom).expect("nonzero denominators");
    }
    f
}

/// Classifies `count` random systems. Generation is sequential, analysis
/// runs in parallel, and entries are ordered by index.
pub fn quadrant(count: usize, seed: u64, opts: &EpOptions) -> QuadrantReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems: Vec<TransferFunction> = (0..count).map(|_| random_system(&mut rng)).collect();
    let mut entries: Vec<QuadrantEntry> = systems
        .par_iter()
        .enumerate()
        .map(|(index, f)| QuadrantEntry {
            index,
            num: f.num().coeffs().to_vec(),
            den: f.den().coeffs().to_vec(),
            pr: is_positive_real(f).verdict,
            ep: match check_external_positivity_with(f, opts) {
                Ok(v) => v.status.as_str().to_string(),
                Err(_) => "error".to_string(),
            },
        })
        .collect();
    entries.sort_by_key(|e| e.index);
    let mut counts = BTreeMap::new();
    for e in &entries {
        let pr = if e.pr { "pr" } else { "not_pr" };
        *counts.entry(format!("{pr}/{}", e.ep)).or_insert(0) += 1;
    }
    QuadrantReport {
        seed,
        count,
        counts,
        systems: entries,
    }
}

/// Hand-picked systems covering every quadrant and certificate path.
pub fn fixture_corpus() -> Vec<(&'static str, TransferFunction)> {
    let table: &[(&str, &[f64], &[f64])] = &[
        ("first-order-stable", &[1.0], &[1.0, 1.0]),
        ("first-order-unstable", &[1.0], &[1.0, -1.0]),
        ("biproper-negative-tail", &[2.0, 1.0], &[1.0, 1.0]),
        ("biproper-positive-tail", &[1.0, 1.0], &[2.0, 1.0]),
        ("unit-gain", &[1.0, 1.0], &[1.0, 1.0]),
        ("constant", &[3.0], &[1.0]),
        ("integrator", &[1.0], &[1.0, 0.0]),
        ("lossless-oscillator", &[1.0, 0.0], &[1.0, 0.0, 1.0]),
        ("undamped-impulse", &[1.0], &[1.0, 0.0, 1.0]),
        ("damped-oscillator", &[1.0, 3.0], &[1.0, 0.4, 4.04]),
        ("two-real-modes", &[1.0], &[1.0, 3.0, 2.0]),
        ("lead-network", &[1.0, 1.0], &[1.0, 3.0]),
        ("lag-network", &[1.0, 3.0], &[1.0, 1.0]),
        ("double-pole", &[1.0], &[1.0, 2.0, 1.0]),
        ("coefficient-sign", &[1.0, 2.0], &[1.0, -1.0, -1.0]),
        (
            "third-order-positive",
            &[1.0, 5.0, 6.5],
            &[1.0, 6.0, 11.0, 6.0],
        ),
        ("third-order-oscillating", &[1.0], &[1.0, 1.0, 1.0, 1.0]),
        ("negative-gain", &[-1.0, 0.0], &[1.0, 1.0]),
        ("biproper-pr-ep", &[1.0, 2.0, 2.0], &[1.0, 1.0, 1.0]),
        ("rhp-zero", &[-1.0, 1.0], &[1.0, 2.0, 1.0]),
    ];
    table
        .iter()
        .map(|(name, num, den)| {
            (
                *name,
                TransferFunction::from_coeffs(num, den).expect("fixture coefficients are valid"),
            )
        })
        .collect()
}
