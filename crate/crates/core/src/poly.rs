//! Real-coefficient polynomials in descending powers.
//!
//! Everything else in the crate is built on [`Polynomial`]: transfer function
//! numerators and denominators, the even polynomial behind `Re F(jω)`, and
//! characteristic polynomials of discretized realizations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Polynomial with real coefficients stored highest power first.
///
/// The zero polynomial is stored as the single coefficient `[0.0]`; every
/// other polynomial has a nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

/// Distinct roots of a polynomial with their multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
    /// Largest `|p(root)|` over the reported roots.
    pub residual: f64,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Iterates over `(root, multiplicity)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (Complex64, usize)> + '_ {
        self.roots
            .iter()
            .copied()
            .zip(self.multiplicities.iter().copied())
    }

    /// Total number of roots counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Real roots (imaginary part exactly zero after post-processing), sorted.
    pub fn real_roots(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = self
            .iter()
            .filter(|(r, _)| r.im == 0.0)
            .map(|(r, m)| (r.re, m))
            .collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }
}

/// Outcome of a sign test on `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineSign {
    pub holds: bool,
    /// A point `x ≥ 0` where the tested condition fails.
    pub witness: Option<f64>,
}

impl Polynomial {
    /// Builds a polynomial from descending coefficients, stripping negligible
    /// leading terms.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Self {
        let mut coeffs = coeffs.into();
        let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        let cutoff = tol::LEADING_ZERO_REL * scale;
        let first = coeffs
            .iter()
            .position(|c| c.abs() > cutoff && *c != 0.0)
            .unwrap_or(coeffs.len());
        coeffs.drain(..first);
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// `s - root`
    pub fn linear_factor(root: f64) -> Self {
        Polynomial::new(vec![1.0, -root])
    }

    /// Monic real polynomial with the given roots. Complex roots must come in
    /// conjugate pairs; only the real part of the expanded product is kept.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut acc = vec![Complex64::new(1.0, 0.0)];
        for r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c * r;
            }
            acc = next;
        }
        Polynomial::new(acc.iter().map(|c| c.re).collect::<Vec<_>>())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[0]
    }

    /// Constant term.
    pub fn trailing(&self) -> f64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// Coefficient of `s^power` (zero when out of range).
    pub fn coeff_of_power(&self, power: usize) -> f64 {
        let deg = self.degree();
        if power > deg {
            0.0
        } else {
            self.coeffs[deg - power]
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        let deg = self.degree();
        if deg == 0 {
            return Polynomial::zero();
        }
        let coeffs: Vec<f64> = self.coeffs[..deg]
            .iter()
            .enumerate()
            .map(|(i, c)| c * (deg - i) as f64)
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, k: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect::<Vec<_>>())
    }

    /// `p(-s)`
    pub fn reflect(&self) -> Polynomial {
        let deg = self.degree();
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if (deg - i) % 2 == 1 { -c } else { *c })
                .collect::<Vec<_>>(),
        )
    }

    /// Long division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.is_zero() {
            return Err(Error::DegenerateInput(
                "division by the zero polynomial".into(),
            ));
        }
        let dd = divisor.degree();
        if self.degree() < dd || self.is_zero() {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let n_q = self.degree() - dd + 1;
        let mut quot = Vec::with_capacity(n_q);
        let lead = divisor.leading();
        for i in 0..n_q {
            let q = rem[i] / lead;
            quot.push(q);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= q * d;
            }
            rem[i] = 0.0;
        }
        let remainder = rem[n_q..].to_vec();
        Ok((Polynomial::new(quot), Polynomial::new(remainder)))
    }

    /// All roots with multiplicities.
    ///
    /// Aberth–Ehrlich simultaneous iteration started on the Cauchy-bound
    /// circle, then conjugate pairing and clustering into multiplicities.
    pub fn roots(&self) -> Result<RootSet> {
        let deg = self.degree();
        if deg == 0 {
            return Err(Error::DegenerateInput(
                "root finding needs degree at least 1".into(),
            ));
        }
        let raw = if deg == 1 {
            vec![Complex64::new(-self.coeffs[1] / self.coeffs[0], 0.0)]
        } else {
            aberth(self)
        };
        let paired = pair_conjugates(raw);
        let (roots, multiplicities) = cluster(&paired);
        let residual = roots
            .iter()
            .map(|r| self.eval(*r).norm())
            .fold(0.0, f64::max);
        Ok(RootSet {
            roots,
            multiplicities,
            residual,
        })
    }

    /// Decides whether `p(x) ≥ -POLY_SIGN_TOL` for every `x ≥ 0`.
    ///
    /// The nonnegative real roots split `[0, ∞)` into intervals of constant
    /// sign; each interval is probed away from its endpoints. A failing
    /// answer carries the most negative probe of the first failing interval.
    pub fn nonneg_on_halfline(&self) -> HalfLineSign {
        self.halfline_test(-tol::POLY_SIGN_TOL, false)
    }

    /// Decides whether `p(x) > POLY_SIGN_TOL` for every `x ≥ 0`, with no real
    /// root anywhere on `[0, ∞)`.
    pub fn positive_on_halfline(&self) -> HalfLineSign {
        self.halfline_test(tol::POLY_SIGN_TOL, true)
    }

    fn halfline_test(&self, floor: f64, strict: bool) -> HalfLineSign {
        let fails = |v: f64| if strict { v <= floor } else { v < floor };
        if self.is_zero() {
            return HalfLineSign {
                holds: !strict,
                witness: if strict { Some(0.0) } else { None },
            };
        }
        let p0 = self.trailing();
        if fails(p0) {
            return HalfLineSign {
                holds: false,
                witness: Some(0.0),
            };
        }
        if self.degree() == 0 {
            return HalfLineSign {
                holds: true,
                witness: None,
            };
        }
        let roots = match self.roots() {
            Ok(r) => r,
            Err(_) => {
                return HalfLineSign {
                    holds: true,
                    witness: None,
                }
            }
        };
        let mut breaks: Vec<f64> = roots
            .real_roots()
            .into_iter()
            .map(|(r, _)| r)
            .filter(|r| *r >= 0.0)
            .collect();
        if strict {
            if let Some(&r) = breaks.first() {
                return HalfLineSign {
                    holds: false,
                    witness: Some(r),
                };
            }
        }
        breaks.retain(|r| *r > 0.0);
        let mut left = 0.0;
        for &right in &breaks {
            if right - left > 0.0 {
                let (x, v) = [0.25, 0.5, 0.75]
                    .iter()
                    .map(|f| {
                        let x = left + f * (right - left);
                        (x, self.eval_real(x))
                    })
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("three probes");
                if fails(v) {
                    return HalfLineSign {
                        holds: false,
                        witness: Some(x),
                    };
                }
            }
            left = right;
        }
        let mut x = left + 1.0;
        if fails(self.eval_real(x)) {
            return HalfLineSign {
                holds: false,
                witness: Some(x),
            };
        }
        if self.leading() < 0.0 {
            for _ in 0..2000 {
                x *= 2.0;
                if fails(self.eval_real(x)) || !x.is_finite() {
                    break;
                }
            }
            return HalfLineSign {
                holds: false,
                witness: Some(x),
            };
        }
        HalfLineSign {
            holds: true,
            witness: None,
        }
    }

    /// Formats with the given variable name, e.g. `2s^2+3s+1`.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let deg = self.degree();
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let power = deg - i;
            if !out.is_empty() {
                out.push(if c < 0.0 { '-' } else { '+' });
            } else if c < 0.0 {
                out.push('-');
            }
            let mag = c.abs();
            match power {
                0 => out.push_str(&format!("{mag}")),
                _ => {
                    if mag != 1.0 {
                        out.push_str(&format!("{mag}"));
                    }
                    out.push_str(var);
                    if power > 1 {
                        out.push_str(&format!("^{power}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("s"))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

fn padded_sum(a: &[f64], b: &[f64], sign: f64) -> Polynomial {
    let n = a.len().max(b.len());
    let mut out = vec![0.0; n];
    for (i, c) in a.iter().enumerate() {
        out[n - a.len() + i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[n - b.len() + i] += sign * c;
    }
    Polynomial::new(out)
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        padded_sum(&self.coeffs, &rhs.coeffs, 1.0)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        padded_sum(&self.coeffs, &rhs.coeffs, -1.0)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

fn aberth(p: &Polynomial) -> Vec<Complex64> {
    let deg = p.degree();
    let lead = p.leading();
    let monic: Vec<f64> = p.coeffs.iter().map(|c| c / lead).collect();
    let dp = p.derivative();
    let cauchy = 1.0 + monic[1..].iter().fold(0.0_f64, |m, c| m.max(c.abs()));

    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(cauchy, theta)
        })
        .collect();

    for _ in 0..tol::ABERTH_MAX_ITER {
        let mut worst = 0.0_f64;
        for k in 0..deg {
            let zk = z[k];
            let pz = p.eval(zk);
            if pz.norm() == 0.0 {
                continue;
            }
            let dpz = dp.eval(zk);
            let ratio = if dpz.norm() == 0.0 {
                pz / Complex64::new(f64::EPSILON, 0.0)
            } else {
                pz / dpz
            };
            let repulsion: Complex64 = z
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, zj)| {
                    let diff = zk - zj;
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] = zk - step;
                worst = worst.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if worst < tol::ABERTH_STEP_TOL {
            break;
        }
    }
    z
}

/// Snaps near-real roots onto the real axis and averages conjugate partners
/// so the output is exactly conjugate-symmetric.
fn pair_conjugates(raw: Vec<Complex64>) -> Vec<Complex64> {
    let mut reals = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for r in raw {
        if r.im.abs() <= tol::ROOT_CLUSTER_TOL * (1.0 + r.norm()) {
            reals.push(Complex64::new(r.re, 0.0));
        } else if r.im > 0.0 {
            upper.push(r);
        } else {
            lower.push(r);
        }
    }
    let mut out = reals;
    let mut used = vec![false; lower.len()];
    for u in upper {
        let partner = lower
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|a, b| (a.1 - u.conj()).norm().total_cmp(&(b.1 - u.conj()).norm()))
            .map(|(i, _)| i);
        match partner {
            Some(i) => {
                used[i] = true;
                let l = lower[i];
                let avg = Complex64::new(0.5 * (u.re + l.re), 0.5 * (u.im - l.im));
                out.push(avg);
                out.push(avg.conj());
            }
            None => out.push(u),
        }
    }
    out.extend(
        lower
            .into_iter()
            .zip(used)
            .filter(|(_, u)| !u)
            .map(|(l, _)| l),
    );
    out
}

fn cluster(roots: &[Complex64]) -> (Vec<Complex64>, Vec<usize>) {
    let mut sorted = roots.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut sums: Vec<Complex64> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for r in sorted {
        let hit = sums.iter().zip(&counts).position(|(s, &n)| {
            let c = s / n as f64;
            (c - r).norm() <= tol::ROOT_CLUSTER_TOL * (1.0 + c.norm())
        });
        match hit {
            Some(i) => {
                sums[i] += r;
                counts[i] += 1;
            }
            None => {
                sums.push(r);
                counts.push(1);
            }
        }
    }
    let centers = sums
        .iter()
        .zip(&counts)
        .map(|(s, &n)| {
            let c = s / n as f64;
            if c.im.abs() <= tol::ROOT_CLUSTER_TOL * (1.0 + c.norm()) && n > 1 {
                Complex64::new(c.re, 0.0)
            } else {
                c
            }
        })
        .collect();
    (centers, counts)
}
