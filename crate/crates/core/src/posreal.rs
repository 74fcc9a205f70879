//! Positive-realness certification.
//!
//! A continuous-time rational `F` is certified positive real through the
//! boundary characterization: relative degree in `{-1, 0, 1}` (with a
//! positive residue at infinity when improper), no open right-half-plane
//! poles, simple imaginary-axis poles with real positive residues, and
//! `Re F(jω) ≥ 0`, the last decided exactly on the even polynomial `E(ω²)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::poly::Polynomial;
use crate::search::golden_min;
use crate::tol;
use crate::xfer::{PoleClass, PoleData, TransferFunction};

pub const RELATIVE_DEGREE: &str = "relative-degree";
pub const POLE_LOCATION: &str = "pole-location";
pub const AXIS_RESIDUES: &str = "axis-residues";
pub const FREQUENCY_NONNEGATIVITY: &str = "frequency-nonnegativity";
pub const FREQUENCY_POSITIVITY: &str = "frequency-positivity";
pub const CIRCLE_RESIDUES: &str = "circle-residues";
pub const CIRCLE_NONNEGATIVITY: &str = "circle-nonnegativity";

/// Grid size for the unit-circle scan of the discrete test.
pub const CIRCLE_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct PrCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Where a check fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrWitness {
    /// Frequency in rad/s with `Re F(jω) < 0`.
    Frequency(f64),
    /// Offending pole.
    Pole(Complex64),
    /// Angle `θ` on the unit circle with `Re G(e^{jθ}) < 0`.
    Angle(f64),
    /// The point at infinity (relative degree or residue at infinity).
    Infinity,
}

impl fmt::Display for PrWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrWitness::Frequency(w) => write!(f, "omega = {w}"),
            PrWitness::Pole(p) => write!(f, "pole {p}"),
            PrWitness::Angle(t) => write!(f, "theta = {t}"),
            PrWitness::Infinity => write!(f, "s = infinity"),
        }
    }
}

/// Outcome of a positive-realness test.
///
/// For [`is_positive_real`] and [`is_positive_real_discrete`] `verdict` is
/// the conjunction of `checks`. For [`is_strictly_positive_real`] the checks
/// are the strict variants and their conjunction is `strict`; `verdict`
/// still carries the plain positive-real answer.
#[derive(Debug, Clone, PartialEq)]
pub struct PrReport {
    pub verdict: bool,
    pub strict: bool,
    pub checks: Vec<PrCheck>,
    pub witness: Option<PrWitness>,
}

impl PrReport {
    pub fn check(&self, name: &str) -> Option<&PrCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Names of the checks that did not pass.
    pub fn failing(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }
}

struct Outcome {
    check: PrCheck,
    witness: Option<PrWitness>,
}

fn pass(name: &'static str, detail: impl Into<String>) -> Outcome {
    Outcome {
        check: PrCheck {
            name,
            passed: true,
            detail: detail.into(),
        },
        witness: None,
    }
}

fn fail(name: &'static str, detail: impl Into<String>, witness: PrWitness) -> Outcome {
    Outcome {
        check: PrCheck {
            name,
            passed: false,
            detail: detail.into(),
        },
        witness: Some(witness),
    }
}

fn assemble(outcomes: Vec<Outcome>) -> (bool, Vec<PrCheck>, Option<PrWitness>) {
    let all = outcomes.iter().all(|o| o.check.passed);
    let witness = outcomes.iter().find_map(|o| o.witness);
    (
        all,
        outcomes.into_iter().map(|o| o.check).collect(),
        witness,
    )
}

fn relative_degree_check(f: &TransferFunction) -> Outcome {
    let rd = f.relative_degree();
    if rd.abs() > 1 {
        return fail(
            RELATIVE_DEGREE,
            format!("relative degree {rd} exceeds one in absolute value"),
            PrWitness::Infinity,
        );
    }
    if rd == -1 {
        let residue = f.num().leading() / f.den().leading();
        if residue <= tol::RESIDUE_MIN {
            return fail(
                RELATIVE_DEGREE,
                format!("relative degree -1 with non-positive residue {residue} at infinity"),
                PrWitness::Infinity,
            );
        }
        return pass(
            RELATIVE_DEGREE,
            format!("relative degree -1 (improper), residue {residue} at infinity"),
        );
    }
    pass(RELATIVE_DEGREE, format!("relative degree {rd}"))
}

fn pole_location_check(poles: &[PoleData], strict: bool) -> Outcome {
    let bad = poles.iter().find(|p| match p.class {
        PoleClass::Rhp => true,
        PoleClass::Axis => strict,
        PoleClass::Lhp => false,
    });
    match bad {
        Some(p) => fail(
            POLE_LOCATION,
            format!(
                "pole {} lies {}",
                p.pole,
                if p.class == PoleClass::Rhp {
                    "in the open right half-plane"
                } else {
                    "on the imaginary axis"
                }
            ),
            PrWitness::Pole(p.pole),
        ),
        None if strict => pass(POLE_LOCATION, "all poles in the open left half-plane"),
        None => pass(POLE_LOCATION, "no poles in the open right half-plane"),
    }
}

fn axis_residue_check(poles: &[PoleData]) -> Outcome {
    let axis: Vec<&PoleData> = poles
        .iter()
        .filter(|p| p.class == PoleClass::Axis)
        .collect();
    for p in &axis {
        let Some(r) = p.residue else {
            return fail(
                AXIS_RESIDUES,
                format!("axis pole {} has multiplicity {}", p.pole, p.multiplicity),
                PrWitness::Pole(p.pole),
            );
        };
        if r.im.abs() > tol::RESIDUE_IMAG_REL * r.norm() {
            return fail(
                AXIS_RESIDUES,
                format!("axis pole {} has non-real residue {}", p.pole, r),
                PrWitness::Pole(p.pole),
            );
        }
        if r.re <= tol::RESIDUE_MIN {
            return fail(
                AXIS_RESIDUES,
                format!("axis pole {} has non-positive residue {}", p.pole, r.re),
                PrWitness::Pole(p.pole),
            );
        }
    }
    if axis.is_empty() {
        pass(AXIS_RESIDUES, "no imaginary-axis poles")
    } else {
        pass(
            AXIS_RESIDUES,
            format!(
                "{} simple axis pole(s) with positive real residues",
                axis.len()
            ),
        )
    }
}

fn frequency_check(e: &Polynomial) -> Outcome {
    let sign = e.nonneg_on_halfline();
    if sign.holds {
        let detail = if e.is_zero() {
            "E(x) = 0: Re F(jw) vanishes identically".to_string()
        } else {
            format!("E(x) = {} is nonnegative for x >= 0", e.format_with("x"))
        };
        pass(FREQUENCY_NONNEGATIVITY, detail)
    } else {
        let x = sign.witness.unwrap_or(0.0);
        fail(
            FREQUENCY_NONNEGATIVITY,
            format!(
                "E(x) = {} is negative at x = {x} (E = {})",
                e.format_with("x"),
                e.eval_real(x)
            ),
            PrWitness::Frequency(x.sqrt()),
        )
    }
}

fn strict_frequency_check(f: &TransferFunction, e: &Polynomial) -> Outcome {
    let sign = e.positive_on_halfline();
    let tail = if f.is_strictly_proper() {
        "; Re F(jw) -> 0 as w -> infinity (not required at finite s)"
    } else {
        ""
    };
    if sign.holds {
        pass(
            FREQUENCY_POSITIVITY,
            format!("E(x) = {} is positive for x >= 0{tail}", e.format_with("x")),
        )
    } else {
        let x = sign.witness.unwrap_or(0.0);
        fail(
            FREQUENCY_POSITIVITY,
            format!(
                "E(x) = {} is not positive at x = {x}{tail}",
                e.format_with("x")
            ),
            PrWitness::Frequency(x.sqrt()),
        )
    }
}

fn zero_function_report() -> PrReport {
    PrReport {
        verdict: true,
        strict: false,
        checks: [
            RELATIVE_DEGREE,
            POLE_LOCATION,
            AXIS_RESIDUES,
            FREQUENCY_NONNEGATIVITY,
        ]
        .into_iter()
        .map(|name| PrCheck {
            name,
            passed: true,
            detail: "zero function: Re F vanishes identically".into(),
        })
        .collect(),
        witness: None,
    }
}

/// Certifies `Re F(s) ≥ 0` on the open right half-plane.
pub fn is_positive_real(f: &TransferFunction) -> PrReport {
    if f.is_zero() {
        return zero_function_report();
    }
    let poles = f.poles_with_residues();
    let e = f.realpart_even_poly();
    let (verdict, checks, witness) = assemble(vec![
        relative_degree_check(f),
        pole_location_check(&poles, false),
        axis_residue_check(&poles),
        frequency_check(&e),
    ]);
    let strict = verdict
        && poles.iter().all(|p| p.class == PoleClass::Lhp)
        && e.positive_on_halfline().holds;
    PrReport {
        verdict,
        strict,
        checks,
        witness,
    }
}

/// Certifies `Re F(s) > 0` for every finite `s` with `Re s ≥ 0`.
pub fn is_strictly_positive_real(f: &TransferFunction) -> PrReport {
    let plain = is_positive_real(f);
    if f.is_zero() {
        return PrReport {
            verdict: true,
            strict: false,
            checks: vec![PrCheck {
                name: FREQUENCY_POSITIVITY,
                passed: false,
                detail: "zero function".into(),
            }],
            witness: Some(PrWitness::Frequency(0.0)),
        };
    }
    let poles = f.poles_with_residues();
    let e = f.realpart_even_poly();
    let (strict, checks, witness) = assemble(vec![
        relative_degree_check(f),
        pole_location_check(&poles, true),
        strict_frequency_check(f, &e),
    ]);
    PrReport {
        verdict: plain.verdict,
        strict,
        checks,
        witness,
    }
}

/// `Re G(e^{jθ})`, or `None` within `1e-6` of a unit-circle pole.
pub fn circle_realpart(g: &TransferFunction, theta: f64) -> Option<f64> {
    let z = Complex64::from_polar(1.0, theta);
    let den = g.den().eval(z);
    if den.norm() < 1e-12 {
        return None;
    }
    Some((g.num().eval(z) / den).re)
}

/// Minimum of `Re G(e^{jθ})` over `θ ∈ [0, π]`: a scan of
/// [`CIRCLE_SAMPLES`] points, each local minimum refined by golden section.
/// Points within `1e-6` rad of a unit-circle pole are excluded.
pub fn circle_realpart_min(g: &TransferFunction) -> (f64, f64) {
    let circle_poles: Vec<f64> = g
        .poles_with_residues()
        .iter()
        .filter(|p| (p.pole.norm() - 1.0).abs() <= tol::AXIS_TOL)
        .map(|p| p.pole.arg().abs())
        .collect();
    let near_pole = |t: f64| circle_poles.iter().any(|a| (a - t).abs() < 1e-6);
    let value = |t: f64| -> f64 {
        if near_pole(t) {
            f64::INFINITY
        } else {
            circle_realpart(g, t).unwrap_or(f64::INFINITY)
        }
    };

    let n = CIRCLE_SAMPLES;
    let step = PI / (n - 1) as f64;
    let samples: Vec<f64> = (0..n).map(|k| value(k as f64 * step)).collect();
    let mut best = (0.0, f64::INFINITY);
    for k in 0..n {
        let v = samples[k];
        let left = if k > 0 { samples[k - 1] } else { f64::INFINITY };
        let right = if k + 1 < n {
            samples[k + 1]
        } else {
            f64::INFINITY
        };
        if !(v <= left && v <= right && v.is_finite()) {
            continue;
        }
        let mut cand = (k as f64 * step, v);
        if v < left || v < right {
            let lo = (k as f64 - 1.0).max(0.0) * step;
            let hi = ((k + 1) as f64 * step).min(PI);
            let (t, fv) = golden_min(value, lo, hi, 1e-12);
            if fv < v {
                cand = (t, fv);
            }
        }
        if cand.1 < best.1 {
            best = cand;
        }
    }
    best
}

/// Discrete-time positive realness of `G(z)`: relative degree zero, no poles
/// outside the closed unit disk, simple unit-circle poles with `r·conj(p)`
/// real positive, and `Re G(e^{jθ}) ≥ 0` on the circle.
pub fn is_positive_real_discrete(g: &TransferFunction) -> PrReport {
    if g.is_zero() {
        return zero_function_report();
    }
    let poles = g.poles_with_residues();
    let rd = g.relative_degree();
    let rd_check = if rd == 0 {
        pass(RELATIVE_DEGREE, "relative degree 0")
    } else {
        fail(
            RELATIVE_DEGREE,
            format!("relative degree {rd}; discrete positive realness needs 0"),
            PrWitness::Infinity,
        )
    };

    let outside = poles.iter().find(|p| p.pole.norm() > 1.0 + tol::AXIS_TOL);
    let location = match outside {
        Some(p) => fail(
            POLE_LOCATION,
            format!(
                "pole {} lies outside the unit circle (|p| = {})",
                p.pole,
                p.pole.norm()
            ),
            PrWitness::Pole(p.pole),
        ),
        None => pass(POLE_LOCATION, "no poles outside the closed unit disk"),
    };

    let mut residues = pass(CIRCLE_RESIDUES, "no unit-circle poles");
    for p in poles
        .iter()
        .filter(|p| (p.pole.norm() - 1.0).abs() <= tol::AXIS_TOL)
    {
        let scaled = p.residue.map(|r| r * p.pole.conj());
        let ok = match scaled {
            Some(r) => r.im.abs() <= tol::RESIDUE_IMAG_REL * r.norm() && r.re > tol::RESIDUE_MIN,
            None => false,
        };
        if !ok {
            residues = fail(
                CIRCLE_RESIDUES,
                format!(
                    "unit-circle pole {} (multiplicity {}) has scaled residue {:?}",
                    p.pole, p.multiplicity, scaled
                ),
                PrWitness::Pole(p.pole),
            );
            break;
        }
        residues = pass(
            CIRCLE_RESIDUES,
            "unit-circle poles are simple with positive residues",
        );
    }

    let (theta, min) = circle_realpart_min(g);
    let circle = if min >= -tol::POLY_SIGN_TOL {
        pass(
            CIRCLE_NONNEGATIVITY,
            format!("min Re G(e^jt) = {min} at t = {theta}"),
        )
    } else {
        fail(
            CIRCLE_NONNEGATIVITY,
            format!("Re G(e^jt) = {min} < 0 at t = {theta}"),
            PrWitness::Angle(theta),
        )
    };

    let (verdict, checks, witness) = assemble(vec![rd_check, location, residues, circle]);
    let strict = verdict
        && poles.iter().all(|p| p.pole.norm() < 1.0 - tol::AXIS_TOL)
        && min > tol::POLY_SIGN_TOL;
    PrReport {
        verdict,
        strict,
        checks,
        witness,
    }
}
