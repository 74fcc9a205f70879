//! Mechanical reproduction of the counterexamples separating positive
//! realness from external positivity.
//!
//! Each claim is checked from scratch and reported by a descriptive name; the
//! run is deterministic, so two runs produce identical JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::discretize::{check_ep_preservation_with, check_pr_discretization};
use crate::error::Result;
use crate::extpos::{
    check_external_positivity_with, construct_negativity_witness_with, Certificate, EpOptions,
    EpStatus,
};
use crate::input::InputSpec;
use crate::posreal::{is_positive_real, FREQUENCY_NONNEGATIVITY, RELATIVE_DEGREE};
use crate::realize::StateSpace;
use crate::xfer::TransferFunction;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub passed: bool,
    pub claims: Vec<Claim>,
    pub tol: f64,
}

impl DemoReport {
    pub fn failing(&self) -> Vec<&str> {
        self.claims
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("demo report is always serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {}: {}", c.name, c.detail);
        }
        let total = self.claims.len();
        let ok = self.claims.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{ok}/{total} claims hold");
        out
    }
}

type ClaimCheck = fn(&EpOptions) -> Result<(bool, String)>;

/// Runs every claim with the given tolerances.
pub fn run_demo(opts: &EpOptions) -> DemoReport {
    let steps: [(&str, ClaimCheck); 10] = [
        ("first-order-stable-is-pr-and-ep", first_order_stable),
        ("ep-does-not-imply-pr", ep_not_pr),
        (
            "pr-biproper-with-non-pr-strictly-proper-part",
            biproper_tail_not_pr,
        ),
        ("ep-needs-gain-and-tail", gain_and_tail),
        ("pr-does-not-imply-ep", pr_not_ep),
        ("inverse-restores-ep", inverse_asymmetry),
        ("trivial-gain-case", trivial_gain),
        ("ep-preserved-under-zoh", ep_under_zoh),
        ("pr-lost-under-zoh", pr_under_zoh),
        (
            "energy-nonnegative-on-counterexample",
            energy_on_counterexample,
        ),
    ];
    let claims: Vec<Claim> = steps
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = match check(opts) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            Claim {
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect();
    DemoReport {
        passed: claims.iter().all(|c| c.passed),
        claims,
        tol: opts.ep_tol,
    }
}

fn tf(num: &[f64], den: &[f64]) -> Result<TransferFunction> {
    TransferFunction::from_coeffs(num, den)
}

/// `(d s + b)/(s + a)` with `d = 2, b = 1, a = 1`.
fn counterexample() -> Result<TransferFunction> {
    tf(&[2.0, 1.0], &[1.0, 1.0])
}

fn first_order_stable(opts: &EpOptions) -> Result<(bool, String)> {
    let f = tf(&[1.0], &[1.0, 1.0])?;
    let pr = is_positive_real(&f).verdict;
    let ep = check_external_positivity_with(&f, opts)?;
    let ok = pr
        && ep.status == EpStatus::Positive
        && ep.certificate == Some(Certificate::FirstOrderClosedForm);
    Ok((ok, format!("1/(s+1): pr = {pr}, ep = {}", ep.status)))
}

fn ep_not_pr(opts: &EpOptions) -> Result<(bool, String)> {
    let f = tf(&[1.0], &[1.0, -1.0])?;
    let pr = is_positive_real(&f).verdict;
    let ep = check_external_positivity_with(&f, opts)?;
    let ok = !pr && ep.status == EpStatus::Positive;
    Ok((ok, format!("1/(s-1): pr = {pr}, ep = {}", ep.status)))
}

fn biproper_tail_not_pr(_: &EpOptions) -> Result<(bool, String)> {
    let f = counterexample()?;
    let f0 = f.decompose_biproper()?.f0;
    let pr_f = is_positive_real(&f);
    let pr_f0 = is_positive_real(&f0);
    let names = pr_f0.failing();
    let ok = pr_f.verdict && !pr_f0.verdict && names.contains(&FREQUENCY_NONNEGATIVITY);
    Ok((
        ok,
        format!(
            "F = (2s+1)/(s+1): pr = {}; F0 = {f0}: pr = {}, failing {:?}",
            pr_f.verdict, pr_f0.verdict, names
        ),
    ))
}

fn gain_and_tail(opts: &EpOptions) -> Result<(bool, String)> {
    let f = counterexample()?;
    let dec = f.decompose_biproper()?;
    let rebuilt = dec.recombine();
    let same = (0..4).all(|k| {
        let s = num_complex::Complex64::new(0.3 * k as f64, 1.0 - 0.5 * k as f64);
        (rebuilt.eval(s) - f.eval(s)).norm() < 1e-12
    });
    let ep_f0 = check_external_positivity_with(&dec.f0, opts)?;
    let ep_f = check_external_positivity_with(&f, opts)?;
    // F is EP iff d ≥ 0 and F0 is EP; here d > 0 but F0 is not
    let ok = same
        && dec.d > 0.0
        && ep_f0.status == EpStatus::Negative
        && ep_f.status == EpStatus::Negative;
    Ok((
        ok,
        format!(
            "d = {}, F0 = {}: ep(F0) = {}, ep(F) = {}",
            dec.d, dec.f0, ep_f0.status, ep_f.status
        ),
    ))
}

fn pr_not_ep(opts: &EpOptions) -> Result<(bool, String)> {
    let f = counterexample()?;
    let pr = is_positive_real(&f).verdict;
    let w = construct_negativity_witness_with(&f, opts)?;
    let ok = pr && w.output_value < -opts.ep_tol;
    Ok((
        ok,
        format!(
            "input {} gives y({}) = {:.6} while F is pr = {pr}",
            w.input, w.probe, w.output_value
        ),
    ))
}

fn inverse_asymmetry(opts: &EpOptions) -> Result<(bool, String)> {
    let f = counterexample()?;
    let inv = f.inverse()?;
    let ep_f = check_external_positivity_with(&f, opts)?;
    let ep_inv = check_external_positivity_with(&inv, opts)?;
    let pr_f = is_positive_real(&f).verdict;
    let pr_inv = is_positive_real(&inv).verdict;
    let ok =
        pr_f && pr_inv && ep_f.status == EpStatus::Negative && ep_inv.status == EpStatus::Positive;
    Ok((
        ok,
        format!(
            "F: pr = {pr_f}, ep = {}; 1/F = {inv}: pr = {pr_inv}, ep = {}",
            ep_f.status, ep_inv.status
        ),
    ))
}

fn trivial_gain(opts: &EpOptions) -> Result<(bool, String)> {
    let f = tf(&[1.0, 1.0], &[1.0, 1.0])?;
    let inv = f.inverse()?;
    let is_unit_gain =
        |g: &TransferFunction| g.order() == 0 && (g.num().leading() - 1.0).abs() < 1e-12;
    let ep_f = check_external_positivity_with(&f, opts)?.status;
    let ep_inv = check_external_positivity_with(&inv, opts)?.status;
    let ok = is_unit_gain(&f)
        && is_unit_gain(&inv)
        && ep_f == EpStatus::Positive
        && ep_inv == EpStatus::Positive;
    Ok((
        ok,
        format!("(s+1)/(s+1) reduces to {f}; ep = {ep_f}, inverse ep = {ep_inv}"),
    ))
}

fn ep_under_zoh(opts: &EpOptions) -> Result<(bool, String)> {
    let stable = check_ep_preservation_with(&tf(&[1.0], &[1.0, 1.0])?, 0.1, 200, opts)?;
    let unstable = check_ep_preservation_with(&tf(&[1.0], &[1.0, -1.0])?, 0.1, 50, opts)?;
    let ok = stable.preserved && unstable.preserved;
    Ok((
        ok,
        format!(
            "h = 0.1: min g_k = {:.6e} for 1/(s+1), {:.6e} for 1/(s-1)",
            stable.min_value, unstable.min_value
        ),
    ))
}

fn pr_under_zoh(_: &EpOptions) -> Result<(bool, String)> {
    let r = check_pr_discretization(&tf(&[1.0], &[1.0, 1.0])?, 0.1)?;
    let names = r.discrete.failing();
    let ok = r.continuous.verdict && !r.discrete.verdict && names.contains(&RELATIVE_DEGREE);
    Ok((
        ok,
        format!(
            "1/(s+1) at h = 0.1: discrete G = {}, relative degree {}, pr = {}",
            r.discrete_tf.format_with("z"),
            r.discrete_relative_degree,
            r.discrete.verdict
        ),
    ))
}

fn energy_on_counterexample(opts: &EpOptions) -> Result<(bool, String)> {
    let f = counterexample()?;
    let ss = StateSpace::from_tf(&f)?;
    let h = 1e-3;
    let u = InputSpec::pulse(0.0, 1.0, 1.0)?.to_signal(2.0, h)?;
    let y = ss.simulate(&u);
    let j = ss.energy(&u);
    let k1 = u.index_of(1.0);
    let ok = j.min() >= -1e-6 && y.values()[k1] < -opts.ep_tol;
    Ok((
        ok,
        format!(
            "min J = {:.6e}, J(1) = {:.6}, y(1) = {:.6}",
            j.min(),
            j.values()[k1],
            y.values()[k1]
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_claims_hold() {
        let r = run_demo(&EpOptions::default());
        assert!(r.passed, "{}", r.to_text());
        assert_eq!(r.claims.len(), 10);
    }

    #[test]
    fn deterministic_json() {
        let a = run_demo(&EpOptions::default()).to_json();
        let b = run_demo(&EpOptions::default()).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn tampered_tolerance_fails_loudly() {
        let r = run_demo(&EpOptions {
            ep_tol: 1.0,
            horizon: None,
        });
        assert!(!r.passed);
        assert!(r.failing().contains(&"pr-does-not-imply-ep"));
    }
}
