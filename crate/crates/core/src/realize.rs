//! State-space realizations, impulse responses and zero-initial-condition
//! simulation under piecewise-constant inputs.

use nalgebra::{DMatrix, DVector, RowDVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expm::expm;
pub use crate::expm::matrix_exponential;
use crate::xfer::TransferFunction;

/// SISO realization `x' = Ax + Bu`, `y = Cx + Du`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    a: DMatrix<f64>,
    b: DVector<f64>,
    c: RowDVector<f64>,
    d: f64,
}

/// Uniformly sampled signal on `{0, h, 2h, …}`.
///
/// Values are held constant from the left: `values[k]` applies on
/// `[k·h, (k+1)·h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    step: f64,
    values: Vec<f64>,
}

/// `f(t) = d·δ(t) + f₀(t)`, with `f₀` sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpulseResponse {
    pub dirac_weight: f64,
    pub samples: Signal,
}

impl Signal {
    pub fn new(step: f64, values: Vec<f64>) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "grid step must be positive, got {step}"
            )));
        }
        if values.is_empty() {
            return Err(Error::InvalidInput("signal has no samples".into()));
        }
        Ok(Signal { step, values })
    }

    /// Samples `f(k·h)` for `k = 0..=n_steps`.
    pub fn from_fn(step: f64, n_steps: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..=n_steps).map(|k| f(k as f64 * step)).collect();
        Signal::new(step, values)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.step
    }

    /// Last grid time.
    pub fn end_time(&self) -> f64 {
        self.time(self.values.len() - 1)
    }

    /// Grid index closest to `t`.
    pub fn index_of(&self, t: f64) -> usize {
        ((t / self.step).round().max(0.0) as usize).min(self.values.len() - 1)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn same_grid(&self, other: &Signal) -> bool {
        self.values.len() == other.values.len()
            && (self.step - other.step).abs() <= 1e-12 * self.step
    }

    /// `α·self + β·other` on a shared grid.
    pub fn combine(&self, alpha: f64, other: &Signal, beta: f64) -> Result<Signal> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Signal::new(self.step, values)
    }
}

impl StateSpace {
    pub fn new(a: DMatrix<f64>, b: DVector<f64>, c: RowDVector<f64>, d: f64) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n || b.len() != n || c.len() != n {
            return Err(Error::DegenerateInput(format!(
                "inconsistent dimensions: A {}x{}, B {}, C {}",
                a.nrows(),
                a.ncols(),
                b.len(),
                c.len()
            )));
        }
        Ok(StateSpace { a, b, c, d })
    }

    /// Controllable canonical realization of a proper transfer function.
    ///
    /// The order equals the degree of the reduced denominator, `D` is the
    /// biproper gain and `C` carries the strictly proper numerator in
    /// ascending powers.
    pub fn from_tf(f: &TransferFunction) -> Result<Self> {
        let rd = f.relative_degree();
        if rd < 0 {
            return Err(Error::ImproperInput(rd));
        }
        let den = f.den().coeffs();
        let n = den.len() - 1;
        let mut num = vec![0.0; n + 1];
        for (i, c) in f.num().coeffs().iter().rev().enumerate() {
            num[n - i] = *c;
        }
        let d = num[0] / den[0];
        let mut a = DMatrix::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            a[(i, i + 1)] = 1.0;
        }
        let mut c = RowDVector::zeros(n);
        for j in 0..n {
            // column j multiplies s^j
            a[(n - 1, j)] = -den[n - j] / den[0];
            c[j] = num[n - j] - d * den[n - j];
        }
        let mut b = DVector::zeros(n);
        if n > 0 {
            b[n - 1] = 1.0;
        }
        Ok(StateSpace { a, b, c, d })
    }

    pub fn order(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn c(&self) -> &RowDVector<f64> {
        &self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// `C (sI - A)^{-1} B + D`
    pub fn transfer_at(&self, s: Complex64) -> Result<Complex64> {
        let n = self.order();
        if n == 0 {
            return Ok(Complex64::new(self.d, 0.0));
        }
        let m = DMatrix::<Complex64>::from_fn(n, n, |i, j| {
            let diag = if i == j { s } else { Complex64::new(0.0, 0.0) };
            diag - self.a[(i, j)]
        });
        let rhs = DVector::<Complex64>::from_fn(n, |i, _| Complex64::new(self.b[i], 0.0));
        let x = m
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Numeric(format!("sI - A is singular at s = {s}")))?;
        let y: Complex64 = self.c.iter().zip(x.iter()).map(|(c, x)| x * *c).sum();
        Ok(y + self.d)
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        if self.order() == 0 {
            return Vec::new();
        }
        self.a.complex_eigenvalues().iter().copied().collect()
    }

    /// `f₀(t) = C e^{At} B`
    pub fn impulse_at(&self, t: f64) -> f64 {
        if self.order() == 0 {
            return 0.0;
        }
        let x = matrix_exponential(&self.a, t) * &self.b;
        self.c.dot(&x.transpose())
    }

    /// Default simulation step `min(1e-3, T/100)` with
    /// `T = 1 / max(|Re λ|, 0.1)` over the fastest eigenvalue.
    pub fn default_step(&self) -> f64 {
        let fastest = self
            .eigenvalues()
            .iter()
            .map(|l| l.re.abs())
            .fold(0.1, f64::max);
        (1e-3f64).min(1.0 / fastest / 100.0)
    }

    /// Zero-order-hold transition pair `(e^{Ah}, ∫₀ʰ e^{Aτ}dτ·B)` from one
    /// exponential of the augmented matrix `[[A, B], [0, 0]]·h`.
    pub fn zoh_matrices(&self, h: f64) -> (DMatrix<f64>, DVector<f64>) {
        let n = self.order();
        let mut aug = DMatrix::zeros(n + 1, n + 1);
        aug.view_mut((0, 0), (n, n)).copy_from(&(&self.a * h));
        aug.view_mut((0, n), (n, 1)).copy_from(&(&self.b * h));
        let e = expm(&aug);
        let ad = e.view((0, 0), (n, n)).into_owned();
        let bd = e.view((0, n), (n, 1)).column(0).into_owned();
        (ad, bd)
    }

    /// Zero-initial-condition response to a piecewise-constant input.
    ///
    /// `x[k+1] = e^{Ah} x[k] + Γ u[k]`, `y[k] = C x[k] + D u[k]`; exact up to
    /// the matrix exponential.
    pub fn simulate(&self, u: &Signal) -> Signal {
        let (ad, bd) = self.zoh_matrices(u.step());
        let mut x = DVector::<f64>::zeros(self.order());
        let mut y = Vec::with_capacity(u.len());
        for &uk in u.values() {
            y.push(self.c.dot(&x.transpose()) + self.d * uk);
            x = &ad * &x + &bd * uk;
        }
        Signal {
            step: u.step(),
            values: y,
        }
    }

    /// Exact running energy `J(t) = ∫₀ᵗ u(τ) y(τ) dτ` for a piecewise-constant
    /// input, from zero initial state.
    ///
    /// Each step integrates `y` in closed form through the exponential of
    /// `[[A, B, 0], [0, 0, 0], [C, D, 0]]·h`, so jumps in `u` cost nothing.
    pub fn energy(&self, u: &Signal) -> Signal {
        let n = self.order();
        let h = u.step();
        let mut aug = DMatrix::zeros(n + 2, n + 2);
        aug.view_mut((0, 0), (n, n)).copy_from(&(&self.a * h));
        aug.view_mut((0, n), (n, 1)).copy_from(&(&self.b * h));
        aug.view_mut((n + 1, 0), (1, n)).copy_from(&(&self.c * h));
        aug[(n + 1, n)] = self.d * h;
        let e = expm(&aug);
        let ad = e.view((0, 0), (n, n)).into_owned();
        let bd = e.view((0, n), (n, 1)).column(0).into_owned();
        let cq = e.view((n + 1, 0), (1, n)).into_owned();
        let dq = e[(n + 1, n)];
        let mut x = DVector::<f64>::zeros(n);
        let mut acc = 0.0;
        let mut values = Vec::with_capacity(u.len());
        values.push(0.0);
        for &uk in &u.values()[..u.len().saturating_sub(1)] {
            acc += uk * ((&cq * &x)[0] + dq * uk);
            x = &ad * &x + &bd * uk;
            values.push(acc);
        }
        Signal { step: h, values }
    }
}

/// Controllable canonical realization of `f`.
pub fn to_state_space(f: &TransferFunction) -> Result<StateSpace> {
    StateSpace::from_tf(f)
}

/// Samples `f₀` on `n_samples` uniform points of `[0, horizon]`.
pub fn impulse_response(
    f: &TransferFunction,
    horizon: f64,
    n_samples: usize,
) -> Result<ImpulseResponse> {
    if !(horizon > 0.0 && horizon.is_finite()) || n_samples < 2 {
        return Err(Error::DegenerateInput(format!(
            "need horizon > 0 and at least two samples, got {horizon} and {n_samples}"
        )));
    }
    let ss = StateSpace::from_tf(f)?;
    let h = horizon / (n_samples - 1) as f64;
    let values = if ss.order() == 0 {
        vec![0.0; n_samples]
    } else {
        let phi = matrix_exponential(ss.a(), h);
        let mut x = ss.b().clone();
        let mut out = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            out.push(ss.c().dot(&x.transpose()));
            x = &phi * &x;
        }
        out
    };
    Ok(ImpulseResponse {
        dirac_weight: ss.d(),
        samples: Signal::new(h, values)?,
    })
}

/// Zero-initial-condition output of `ss` driven by `u`.
pub fn simulate(ss: &StateSpace, u: &Signal) -> Signal {
    ss.simulate(u)
}

/// Running trapezoidal integral `J(t) = ∫₀ᵗ u(τ) y(τ) dτ` on the shared grid.
pub fn io_energy(u: &Signal, y: &Signal) -> Result<Signal> {
    if !u.same_grid(y) {
        return Err(Error::GridMismatch);
    }
    let h = u.step();
    let mut acc = 0.0;
    let mut values = Vec::with_capacity(u.len());
    values.push(0.0);
    for k in 1..u.len() {
        let left = u.values[k - 1] * y.values[k - 1];
        let right = u.values[k] * y.values[k];
        acc += 0.5 * h * (left + right);
        values.push(acc);
    }
    Signal::new(h, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tf(num: &[f64], den: &[f64]) -> TransferFunction {
        TransferFunction::from_coeffs(num, den).unwrap()
    }

    #[test]
    fn canonical_first_order() {
        let ss = to_state_space(&tf(&[1.0], &[1.0, 1.0])).unwrap();
        assert_eq!(ss.a(), &DMatrix::from_element(1, 1, -1.0));
        assert_eq!(ss.b(), &DVector::from_element(1, 1.0));
        assert_eq!(ss.c(), &RowDVector::from_element(1, 1.0));
        assert_eq!(ss.d(), 0.0);
    }

    #[test]
    fn canonical_biproper() {
        let ss = to_state_space(&tf(&[2.0, 1.0], &[1.0, 1.0])).unwrap();
        assert_eq!(ss.a(), &DMatrix::from_element(1, 1, -1.0));
        assert_eq!(ss.b(), &DVector::from_element(1, 1.0));
        assert_eq!(ss.c(), &RowDVector::from_element(1, -1.0));
        assert_eq!(ss.d(), 2.0);
    }

    #[test]
    fn canonical_gain_has_order_zero() {
        let ss = to_state_space(&TransferFunction::gain(3.0)).unwrap();
        assert_eq!(ss.order(), 0);
        assert_eq!(ss.d(), 3.0);
        assert_eq!(ss.impulse_at(1.0), 0.0);
    }

    #[test]
    fn improper_has_no_realization() {
        assert_eq!(
            to_state_space(&tf(&[1.0, 1.0], &[1.0])),
            Err(Error::ImproperInput(-1))
        );
        assert!(matches!(
            impulse_response(&tf(&[1.0, 0.0, 1.0], &[1.0, 2.0]), 1.0, 10),
            Err(Error::ImproperInput(-1))
        ));
    }

    #[test]
    fn impulse_examples() {
        let ir = impulse_response(&tf(&[1.0], &[1.0, 1.0]), 1.0, 11).unwrap();
        assert_eq!(ir.dirac_weight, 0.0);
        assert!((ir.samples.values()[0] - 1.0).abs() < 1e-14);
        let last = *ir.samples.values().last().unwrap();
        assert!((last - (-1.0f64).exp()).abs() < 1e-12);
        assert!((last - 0.367879).abs() < 1e-6);

        let unstable = impulse_response(&tf(&[1.0], &[1.0, -1.0]), 1.0, 11).unwrap();
        let last = *unstable.samples.values().last().unwrap();
        assert!((last - std::f64::consts::E).abs() < 1e-11);

        let bip = impulse_response(&tf(&[2.0, 1.0], &[1.0, 1.0]), 2.0, 21).unwrap();
        assert_eq!(bip.dirac_weight, 2.0);
        assert_eq!(bip.samples.values()[0], -1.0);
        for (k, v) in bip.samples.values().iter().enumerate() {
            let t = bip.samples.time(k);
            assert!((v + (-t).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn impulse_rejects_bad_grid() {
        let f = tf(&[1.0], &[1.0, 1.0]);
        assert!(impulse_response(&f, 0.0, 10).is_err());
        assert!(impulse_response(&f, 1.0, 1).is_err());
    }

    #[test]
    fn exact_energy_matches_closed_form() {
        // (2s+1)/(s+1), u = 1 on [0,1): J(1) = ∫₀¹ (1 + e^{-t}) dt
        let ss = StateSpace::from_tf(&tf(&[2.0, 1.0], &[1.0, 1.0])).unwrap();
        let u = Signal::from_fn(0.01, 200, |t| if t < 1.0 - 0.005 { 1.0 } else { 0.0 }).unwrap();
        let j = ss.energy(&u);
        let exact = 2.0 - (-1f64).exp();
        assert!((j.values()[100] - exact).abs() < 1e-12);
        assert!((j.values()[200] - exact).abs() < 1e-12);
    }

    #[test]
    fn exact_energy_of_lossless_system_is_stored_energy() {
        // s/(s²+1) stores (x₁² + x₂²)/2 with no dissipation
        let ss = StateSpace::from_tf(&tf(&[1.0, 0.0], &[1.0, 0.0, 1.0])).unwrap();
        let u = Signal::from_fn(0.05, 400, |t| {
            if ((t / 0.7) as usize).is_multiple_of(2) {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        assert!(ss.energy(&u).min() >= -1e-12);
    }

    #[test]
    fn simulate_pure_gain() {
        let ss = to_state_space(&TransferFunction::gain(2.0)).unwrap();
        let u = Signal::from_fn(0.01, 100, |_| 1.0).unwrap();
        assert!(ss.simulate(&u).values().iter().all(|&y| y == 2.0));
    }

    #[test]
    fn simulate_step_first_order() {
        let ss = to_state_space(&tf(&[1.0], &[1.0, 1.0])).unwrap();
        let u = Signal::from_fn(1e-3, 1000, |_| 1.0).unwrap();
        let y = ss.simulate(&u);
        let y1 = y.values()[1000];
        assert!((y1 - (1.0 - (-1.0f64).exp())).abs() < 1e-6);
        assert!((y1 - 0.632121).abs() < 1e-6);
    }

    #[test]
    fn simulate_biproper_pulse_goes_negative() {
        let ss = to_state_space(&tf(&[2.0, 1.0], &[1.0, 1.0])).unwrap();
        let u = Signal::from_fn(1e-3, 1000, |t| if t < 1.0 - 5e-4 { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(u.values()[999], 1.0);
        assert_eq!(u.values()[1000], 0.0);
        let y = ss.simulate(&u);
        let want = -(1.0 - (-1.0f64).exp());
        assert!((y.values()[1000] - want).abs() < 1e-9);
    }

    #[test]
    fn energy_examples() {
        let ones = Signal::from_fn(1e-3, 1000, |_| 1.0).unwrap();
        let j = io_energy(&ones, &ones).unwrap();
        assert!((j.values()[1000] - 1.0).abs() < 1e-6);

        let zeros = Signal::from_fn(1e-3, 1000, |_| 0.0).unwrap();
        assert!(io_energy(&zeros, &ones)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0.0));

        let short = Signal::from_fn(1e-3, 10, |_| 1.0).unwrap();
        assert_eq!(io_energy(&short, &ones), Err(Error::GridMismatch));
    }

    #[test]
    fn energy_along_biproper_pulse() {
        let ss = to_state_space(&tf(&[2.0, 1.0], &[1.0, 1.0])).unwrap();
        let u = Signal::from_fn(1e-3, 3000, |t| if t < 1.0 - 5e-4 { 1.0 } else { 0.0 }).unwrap();
        let y = ss.simulate(&u);
        let j = io_energy(&u, &y).unwrap();
        // ∫₀¹ (1 + e^{-t}) dt
        let want = 2.0 - (-1.0f64).exp();
        assert!((j.values()[1000] - want).abs() < 1e-3);
        assert!(j.min() >= 0.0);
        assert!(y.values()[1000] < 0.0);
    }

    #[test]
    fn default_step_tracks_fastest_mode() {
        let slow = to_state_space(&tf(&[1.0], &[1.0, 1.0])).unwrap();
        assert_eq!(slow.default_step(), 1e-3);
        let fast = to_state_space(&tf(&[1.0], &[1.0, 200.0])).unwrap();
        assert!((fast.default_step() - 1.0 / 200.0 / 100.0).abs() < 1e-12);
    }

    fn proper_tf(max_order: usize) -> impl Strategy<Value = TransferFunction> {
        (1..=max_order)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(-2.0f64..2.0, n),
                    0..=n,
                    proptest::collection::vec(-2.0f64..2.0, n + 1),
                )
            })
            .prop_map(|(den_rest, num_deg, num)| {
                let mut den = vec![1.0];
                den.extend(den_rest);
                let num = num[num.len() - num_deg - 1..].to_vec();
                TransferFunction::from_coeffs(&num, &den).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn realization_reproduces_transfer_function(f in proper_tf(5), w in proptest::collection::vec(0.05f64..20.0, 4)) {
            let ss = to_state_space(&f).unwrap();
            prop_assert_eq!(ss.order(), f.order());
            for w in w {
                let s = Complex64::new(0.0, w);
                let want = f.eval(s);
                prop_assume!(want.is_finite() && f.den().eval(s).norm() > 1e-6);
                let got = ss.transfer_at(s).unwrap();
                prop_assert!((got - want).norm() <= 1e-7 * (1.0 + want.norm()), "{} vs {}", got, want);
            }
        }
    }

    proptest! {
        #[test]
        fn simulation_is_linear(
            f in proper_tf(4),
            a in -2.0f64..2.0,
            b in -2.0f64..2.0,
            u1 in proptest::collection::vec(0.0f64..1.0, 6),
            u2 in proptest::collection::vec(0.0f64..1.0, 6),
        ) {
            let ss = to_state_space(&f).unwrap();
            prop_assume!(ss.eigenvalues().iter().all(|l| l.re < 1.0));
            let pw = |levels: Vec<f64>| move |t: f64| levels[((t / 0.5) as usize).min(5)];
            let s1 = Signal::from_fn(0.01, 300, pw(u1)).unwrap();
            let s2 = Signal::from_fn(0.01, 300, pw(u2)).unwrap();
            let mixed = s1.combine(a, &s2, b).unwrap();
            let lhs = ss.simulate(&mixed);
            let rhs = ss.simulate(&s1).combine(a, &ss.simulate(&s2), b).unwrap();
            for (x, y) in lhs.values().iter().zip(rhs.values()) {
                prop_assert!((x - y).abs() <= 1e-8 * (1.0 + x.abs()));
            }
        }
    }

    #[test]
    fn narrow_pulse_converges_to_impulse() {
        let f = tf(&[1.0, 2.0], &[1.0, 3.0, 2.5]);
        let ss = to_state_space(&f).unwrap();
        let gap = |width: f64| {
            let h = width / 10.0;
            let n = (3.0 / h).round() as usize;
            let u = Signal::from_fn(h, n, |t| {
                if t < width - h / 2.0 {
                    1.0 / width
                } else {
                    0.0
                }
            })
            .unwrap();
            let y = ss.simulate(&u);
            [1.0, 2.0, 3.0]
                .iter()
                .map(|&t| (y.values()[y.index_of(t)] - ss.impulse_at(t)).abs())
                .fold(0.0, f64::max)
        };
        let coarse = gap(1e-3);
        let fine = gap(1e-4);
        assert!(fine <= 0.5 * coarse * 1.05, "coarse {coarse} fine {fine}");
    }
}
