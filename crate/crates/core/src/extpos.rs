//! External positivity: nonnegative inputs give nonnegative outputs.
//!
//! A proper `F = d + F₀` is externally positive iff `d ≥ 0` and the impulse
//! response `f₀(t)` of the strictly proper part is nonnegative for `t ≥ 0`.
//! Low orders are decided in closed form; higher orders fall back to sampling
//! and report [`EpStatus::NumericallyPositive`] when no negativity is found.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::input::InputSpec;
use crate::realize::{impulse_response, StateSpace};
use crate::search::golden_min;
use crate::tol;
use crate::xfer::{PoleClass, TransferFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpStatus {
    Positive,
    Negative,
    NumericallyPositive,
}

impl EpStatus {
    /// Stable lowercase name used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            EpStatus::Positive => "positive",
            EpStatus::Negative => "negative",
            EpStatus::NumericallyPositive => "numeric_positive",
        }
    }
}

impl fmt::Display for EpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// `f₀ = K e^{-at}` with `K ≥ 0`.
    FirstOrderClosedForm,
    /// Exact infimum of a two-mode `f₀`.
    SecondOrderClosedForm,
    /// Nonnegative numerator, nonpositive lower denominator coefficients.
    CoefficientSign,
    /// `d ≥ 0` and a certified nonnegative `f₀`.
    GainPlusPositiveTail,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::FirstOrderClosedForm => "first_order_closed_form",
            Certificate::SecondOrderClosedForm => "second_order_closed_form",
            Certificate::CoefficientSign => "coefficient_sign",
            Certificate::GainPlusPositiveTail => "gain_plus_positive_tail",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where the negative impulse mass lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessChannel {
    /// Negative direct gain `d`.
    Dirac,
    /// Negative value of `f₀(t)`.
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpulseWitness {
    pub time: f64,
    /// `d` for the Dirac channel, `f₀(time)` otherwise.
    pub value: f64,
    pub channel: WitnessChannel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositivityVerdict {
    pub status: EpStatus,
    pub certificate: Option<Certificate>,
    pub witness: Option<ImpulseWitness>,
    /// Sampling horizon, when sampling decided the verdict.
    pub horizon: Option<f64>,
    /// Bound on `|f₀(t)|` for `t ≥ horizon` (stable, simple poles only).
    pub tail_bound: Option<f64>,
    pub d: f64,
    /// Smallest value of `f₀` found, exact for closed forms.
    pub f0_min: f64,
}

impl PositivityVerdict {
    pub fn is_negative(&self) -> bool {
        self.status == EpStatus::Negative
    }

    /// True for both certified and sampled positivity.
    pub fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpOptions {
    pub ep_tol: f64,
    /// Overrides the adaptive sampling horizon.
    pub horizon: Option<f64>,
}

impl Default for EpOptions {
    fn default() -> Self {
        EpOptions {
            ep_tol: tol::EP_TOL,
            horizon: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpulseMin {
    pub min_value: f64,
    pub argmin: f64,
}

/// Input, probe time and simulated output exhibiting a negative response.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityWitness {
    pub input: InputSpec,
    /// Simulation grid used to reproduce `output_value`.
    pub step: f64,
    pub probe: f64,
    pub output_value: f64,
}

pub fn check_external_positivity(f: &TransferFunction) -> Result<PositivityVerdict> {
    check_external_positivity_with(f, &EpOptions::default())
}

pub fn check_external_positivity_with(
    f: &TransferFunction,
    opts: &EpOptions,
) -> Result<PositivityVerdict> {
    let dec = f.decompose_biproper()?;
    let d = dec.d;
    let f0 = &dec.f0;
    let ep_tol = opts.ep_tol;
    let biproper = f.relative_degree() == 0;
    let positive = |cert: Certificate, f0_min: f64| PositivityVerdict {
        status: EpStatus::Positive,
        certificate: Some(if biproper {
            Certificate::GainPlusPositiveTail
        } else {
            cert
        }),
        witness: None,
        horizon: None,
        tail_bound: None,
        d,
        f0_min,
    };
    let negative =
        |time: f64, value: f64, channel: WitnessChannel, f0_min: f64| PositivityVerdict {
            status: EpStatus::Negative,
            certificate: None,
            witness: Some(ImpulseWitness {
                time,
                value,
                channel,
            }),
            horizon: None,
            tail_bound: None,
            d,
            f0_min,
        };

    if d < -ep_tol {
        let f0_at_0 = f0_initial_value(f0);
        return Ok(negative(0.0, d, WitnessChannel::Dirac, f0_at_0));
    }
    if f0.is_zero() {
        return Ok(positive(Certificate::GainPlusPositiveTail, 0.0));
    }

    if let Some(form) = TwoModeForm::of(f0) {
        let (t_min, v_min) = form.infimum(ep_tol);
        return Ok(if v_min < -ep_tol {
            negative(t_min, v_min, WitnessChannel::Tail, v_min)
        } else {
            let cert = if f0.order() == 1 {
                Certificate::FirstOrderClosedForm
            } else {
                Certificate::SecondOrderClosedForm
            };
            positive(cert, v_min)
        });
    }

    if coefficient_sign_sufficient(f) {
        let f0_at_0 = f0_initial_value(f0);
        return Ok(positive(Certificate::CoefficientSign, f0_at_0.min(0.0)));
    }

    let poles = f0.poles_with_residues();
    let horizon = opts.horizon.unwrap_or_else(|| adaptive_horizon(f0));
    let n = sample_count(f0, horizon);
    let found = impulse_min_on_horizon(f0, horizon, n)?;
    if found.min_value < -ep_tol {
        return Ok(negative(
            found.argmin,
            found.min_value,
            WitnessChannel::Tail,
            found.min_value,
        ));
    }
    let stable_simple = poles
        .iter()
        .all(|p| p.class == PoleClass::Lhp && p.residue.is_some());
    let tail_bound = stable_simple.then(|| {
        poles
            .iter()
            .map(|p| p.residue.unwrap().norm() * (p.pole.re * horizon).exp())
            .sum::<f64>()
    });
    Ok(PositivityVerdict {
        status: EpStatus::NumericallyPositive,
        certificate: None,
        witness: None,
        horizon: Some(horizon),
        tail_bound,
        d,
        f0_min: found.min_value,
    })
}

/// Sufficient test: nonnegative numerator (not all zero) over a monic
/// denominator whose lower coefficients are all nonpositive.
pub fn coefficient_sign_sufficient(f: &TransferFunction) -> bool {
    if !f.is_proper() || f.is_zero() {
        return false;
    }
    let num = f.num().coeffs();
    let den = f.den().coeffs();
    num.iter().all(|&c| c >= 0.0)
        && num.iter().any(|&c| c > 0.0)
        && den[0] > 0.0
        && den[1..].iter().all(|&c| c <= 0.0)
}

/// Minimum of the sampled strictly proper impulse response on `[0, T]`,
/// refined by golden-section search around the best grid point.
pub fn impulse_min_on_horizon(f: &TransferFunction, horizon: f64, n: usize) -> Result<ImpulseMin> {
    let f0 = f.decompose_biproper()?.f0;
    if f0.is_zero() {
        return Ok(ImpulseMin {
            min_value: 0.0,
            argmin: 0.0,
        });
    }
    let sampled = impulse_response(&f0, horizon, n.max(2))?;
    let samples = sampled.samples.values();
    let h = sampled.samples.step();
    let (k, _) = samples
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("at least two samples");
    let ss = StateSpace::from_tf(&f0)?;
    let lo = (k as f64 - 1.0).max(0.0) * h;
    let hi = ((k + 1) as f64 * h).min(horizon);
    let (t, v) = golden_min(|t| ss.impulse_at(t), lo, hi, 1e-6 * horizon);
    let (argmin, min_value) = if v <= samples[k] {
        (t, v)
    } else {
        (k as f64 * h, samples[k])
    };
    Ok(ImpulseMin { min_value, argmin })
}

/// Builds a nonnegative input whose simulated output is negative at a time
/// where the input is zero.
pub fn construct_negativity_witness(f: &TransferFunction) -> Result<NegativityWitness> {
    construct_negativity_witness_with(f, &EpOptions::default())
}

pub fn construct_negativity_witness_with(
    f: &TransferFunction,
    opts: &EpOptions,
) -> Result<NegativityWitness> {
    let verdict = check_external_positivity_with(f, opts)?;
    let witness = match verdict.witness {
        Some(w) if verdict.is_negative() => w,
        _ => return Err(Error::NoWitnessExists),
    };
    let ss = StateSpace::from_tf(f)?;
    let h = ss.default_step();
    let on_grid = |t: f64| (t / h).round() * h;

    let mut candidates = Vec::new();
    match witness.channel {
        WitnessChannel::Dirac => {
            // the output at the start of a pulse is d·u(0) before any state builds up
            let w = on_grid((100.0 * h).max(h));
            candidates.push((InputSpec::pulse(0.0, w, 1.0)?, 0.0));
        }
        WitnessChannel::Tail => {
            let t_char = characteristic_time(&verdict_f0(f)?);
            let t_star = if witness.time > 0.0 {
                witness.time
            } else {
                t_char
            };
            let p = on_grid(t_star).max(h);
            candidates.push((InputSpec::pulse(0.0, p, 1.0)?, p));

            let mut w = 0.01f64.min(t_char / 100.0);
            if witness.time > 0.0 {
                w = w.min(witness.time / 10.0);
            }
            let w = on_grid(w).max(h);
            let probe = on_grid(witness.time) + w;
            candidates.push((InputSpec::pulse(0.0, w, 1.0)?, probe));
            candidates.push((InputSpec::pulse(0.0, w, 1.0 / w)?, probe));
        }
    }

    for (input, probe) in candidates {
        let u = input.to_signal(probe + h, h)?;
        let y = ss.simulate(&u);
        let k = u.index_of(probe);
        if u.values()[k] != 0.0 && probe > 0.0 {
            continue;
        }
        let value = y.values()[k];
        if value < -opts.ep_tol {
            return Ok(NegativityWitness {
                input,
                step: h,
                probe: k as f64 * h,
                output_value: value,
            });
        }
    }
    Err(Error::Numeric(format!(
        "negativity at t = {} could not be reproduced by simulation",
        witness.time
    )))
}

fn verdict_f0(f: &TransferFunction) -> Result<TransferFunction> {
    Ok(f.decompose_biproper()?.f0)
}

fn f0_initial_value(f0: &TransferFunction) -> f64 {
    if f0.is_zero() || f0.relative_degree() > 1 {
        0.0
    } else {
        f0.num().leading() / f0.den().leading()
    }
}

/// `1 / max(min |Re λ|, 0.1)` over the poles of `f0`.
fn characteristic_time(f0: &TransferFunction) -> f64 {
    let slowest = f0
        .poles_with_residues()
        .iter()
        .map(|p| p.pole.re.abs())
        .fold(f64::INFINITY, f64::min);
    if slowest.is_finite() {
        1.0 / slowest.max(0.1)
    } else {
        1.0
    }
}

/// `max(50·T_char, 10)`, capped for growing modes so the samples stay finite.
fn adaptive_horizon(f0: &TransferFunction) -> f64 {
    let mut horizon = (50.0 * characteristic_time(f0)).max(10.0);
    let fastest_growth = f0
        .poles_with_residues()
        .iter()
        .map(|p| p.pole.re)
        .fold(0.0, f64::max);
    if fastest_growth > 0.0 {
        horizon = horizon.min((60.0 / fastest_growth).max(1.0));
    }
    horizon
}

/// Enough points to resolve the fastest mode: at least 20 per `1/|λ|`.
fn sample_count(f0: &TransferFunction, horizon: f64) -> usize {
    let fastest = f0
        .poles_with_residues()
        .iter()
        .map(|p| p.pole.norm())
        .fold(0.1, f64::max);
    let wanted = (horizon * fastest * 20.0).ceil() as usize + 1;
    wanted.clamp(10_001, 200_001)
}

/// Closed form of a strictly proper `f₀` with at most two modes.
enum TwoModeForm {
    /// `k e^{pt}`
    Single { k: f64, p: f64 },
    /// `r1 e^{p1 t} + r2 e^{p2 t}` with `p1 > p2`.
    Distinct { r1: f64, p1: f64, r2: f64, p2: f64 },
    /// `(b1 + c t) e^{pt}`
    Double { b1: f64, c: f64, p: f64 },
    /// `e^{σt} (A cos ωt + B sin ωt)`
    Oscillating {
        a: f64,
        b: f64,
        sigma: f64,
        omega: f64,
    },
}

impl TwoModeForm {
    fn of(f0: &TransferFunction) -> Option<Self> {
        let den = f0.den();
        let num = f0.num();
        match den.degree() {
            1 => Some(TwoModeForm::Single {
                k: num.coeff_of_power(0),
                p: -den.coeff_of_power(0),
            }),
            2 => {
                let b1 = num.coeff_of_power(1);
                let b0 = num.coeff_of_power(0);
                let poles = f0.poles_with_residues();
                match poles.as_slice() {
                    [only] => Some(TwoModeForm::Double {
                        b1,
                        c: b0 + b1 * only.pole.re,
                        p: only.pole.re,
                    }),
                    [x, y] if x.pole.im.abs() > 0.0 => {
                        let sigma = x.pole.re;
                        let omega = x.pole.im.abs().max(y.pole.im.abs());
                        Some(TwoModeForm::Oscillating {
                            a: b1,
                            b: (b0 + b1 * sigma) / omega,
                            sigma,
                            omega,
                        })
                    }
                    [x, y] => {
                        let (hi, lo) = if x.pole.re >= y.pole.re {
                            (x, y)
                        } else {
                            (y, x)
                        };
                        Some(TwoModeForm::Distinct {
                            r1: hi.residue?.re,
                            p1: hi.pole.re,
                            r2: lo.residue?.re,
                            p2: lo.pole.re,
                        })
                    }
                    _ => None,
                }
            }
            _ => None,
        }
    }

    fn eval(&self, t: f64) -> f64 {
        match *self {
            TwoModeForm::Single { k, p } => k * (p * t).exp(),
            TwoModeForm::Distinct { r1, p1, r2, p2 } => r1 * (p1 * t).exp() + r2 * (p2 * t).exp(),
            TwoModeForm::Double { b1, c, p } => (b1 + c * t) * (p * t).exp(),
            TwoModeForm::Oscillating { a, b, sigma, omega } => {
                (sigma * t).exp() * (a * (omega * t).cos() + b * (omega * t).sin())
            }
        }
    }

    /// Smallest value on `[0, ∞)` and where it occurs. When the function
    /// diverges to `-∞` the returned point is one where it is already below
    /// `-10·ep_tol`.
    fn infimum(&self, ep_tol: f64) -> (f64, f64) {
        let mut candidates = vec![0.0];
        let mut diverges = false;
        match *self {
            TwoModeForm::Single { k, p } => diverges = k < 0.0 && p > 0.0,
            TwoModeForm::Distinct { r1, p1, r2, p2 } => {
                if p1 * r1 != 0.0 {
                    let ratio = -(p2 * r2) / (p1 * r1);
                    if ratio > 0.0 {
                        let t = ratio.ln() / (p1 - p2);
                        if t > 0.0 {
                            candidates.push(t);
                        }
                    }
                }
                diverges = r1 < 0.0 && p1 >= 0.0;
            }
            TwoModeForm::Double { b1, c, p } => {
                if p * c != 0.0 {
                    let t = -(c + p * b1) / (p * c);
                    if t > 0.0 {
                        candidates.push(t);
                    }
                }
                diverges = c < 0.0 && p >= 0.0;
            }
            TwoModeForm::Oscillating { a, b, sigma, omega } => {
                // A cos θ + B sin θ = R cos(θ - φ); stationary points solve
                // tan(θ - φ) = σ/ω, the negative lobe sits at θ - φ = π + atan(σ/ω)
                let phi = b.atan2(a);
                let period = 2.0 * PI / omega;
                let mut t = (PI + (sigma / omega).atan() + phi) / omega;
                while t < 0.0 {
                    t += period;
                }
                while t >= period {
                    t -= period;
                }
                candidates.push(t);
                if sigma > 0.0 {
                    // growing oscillation: walk forward to a lobe below tolerance
                    let mut later = t;
                    for _ in 0..10_000 {
                        if self.eval(later) < -10.0 * ep_tol {
                            break;
                        }
                        later += period;
                    }
                    candidates.push(later);
                }
            }
        }
        if diverges {
            let mut t = 1.0;
            while self.eval(t) >= -10.0 * ep_tol && t < 1e6 {
                t *= 2.0;
            }
            candidates.push(t);
        }
        candidates
            .into_iter()
            .map(|t| (t, self.eval(t)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("t = 0 is always a candidate")
    }
}
