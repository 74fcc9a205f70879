//! Zero-order-hold discretization and the behavior of positivity under it.

use nalgebra::{DMatrix, DVector, RowDVector};

use crate::error::{Error, Result};
use crate::extpos::{check_external_positivity_with, EpOptions, EpStatus};
use crate::poly::Polynomial;
use crate::posreal::{is_positive_real, is_positive_real_discrete, PrReport};
use crate::realize::StateSpace;
use crate::xfer::TransferFunction;

/// `x[k+1] = Ad x[k] + Bd u[k]`, `y[k] = Cd x[k] + Dd u[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteStateSpace {
    pub ad: DMatrix<f64>,
    pub bd: DVector<f64>,
    pub cd: RowDVector<f64>,
    pub dd: f64,
    /// Sampling period in seconds.
    pub h: f64,
}

impl DiscreteStateSpace {
    pub fn order(&self) -> usize {
        self.ad.nrows()
    }

    /// `G(z) = Cd (zI - Ad)⁻¹ Bd + Dd` via the Leverrier–Faddeev recursion,
    /// which yields `det(zI - Ad)` and the adjugate coefficients together.
    pub fn transfer_function(&self) -> Result<TransferFunction> {
        let n = self.order();
        if n == 0 {
            return Ok(TransferFunction::gain(self.dd));
        }
        let ident = DMatrix::<f64>::identity(n, n);
        // adj(zI - A) = Σ_k M_k z^{n-1-k}, det(zI - A) = Σ_k c_k z^{n-k}
        let mut m = ident.clone();
        let mut charpoly = vec![1.0];
        let mut adj_terms = Vec::with_capacity(n);
        for k in 1..=n {
            adj_terms.push(self.cd.dot(&(&m * &self.bd).transpose()));
            let am = &self.ad * &m;
            let c = -am.trace() / k as f64;
            charpoly.push(c);
            m = am + &ident * c;
        }
        let den = Polynomial::new(charpoly);
        let mut num_coeffs = vec![0.0];
        num_coeffs.extend(adj_terms);
        let num = &Polynomial::new(num_coeffs) + &den.scale(self.dd);
        TransferFunction::new(num, den)
    }
}

/// Step-invariant transform of `ss` with period `h`.
pub fn zoh_discretize(ss: &StateSpace, h: f64) -> Result<DiscreteStateSpace> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::DegenerateInput(format!(
            "sampling period must be positive, got {h}"
        )));
    }
    let (ad, bd) = ss.zoh_matrices(h);
    Ok(DiscreteStateSpace {
        ad,
        bd,
        cd: ss.c().clone(),
        dd: ss.d(),
        h,
    })
}

/// `g₀ = Dd`, `g_k = Cd Ad^{k-1} Bd` for `k = 1..=n`.
pub fn markov_parameters(dss: &DiscreteStateSpace, n: usize) -> Vec<f64> {
    let mut g = Vec::with_capacity(n + 1);
    g.push(dss.dd);
    if dss.order() == 0 {
        g.extend(std::iter::repeat_n(0.0, n));
        return g;
    }
    let mut x = dss.bd.clone();
    for _ in 0..n {
        g.push(dss.cd.dot(&x.transpose()));
        x = &dss.ad * &x;
    }
    g
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpPreservationReport {
    pub h: f64,
    pub markov: Vec<f64>,
    pub min_value: f64,
    pub argmin: usize,
    /// `min g_k ≥ -ep_tol`.
    pub preserved: bool,
    pub continuous_status: EpStatus,
    /// Set when the continuous system was already not externally positive.
    pub flagged: bool,
}

pub fn check_ep_preservation(
    f: &TransferFunction,
    h: f64,
    n: usize,
) -> Result<EpPreservationReport> {
    check_ep_preservation_with(f, h, n, &EpOptions::default())
}

pub fn check_ep_preservation_with(
    f: &TransferFunction,
    h: f64,
    n: usize,
    opts: &EpOptions,
) -> Result<EpPreservationReport> {
    let status = check_external_positivity_with(f, opts)?.status;
    let dss = zoh_discretize(&StateSpace::from_tf(f)?, h)?;
    let markov = markov_parameters(&dss, n);
    let (argmin, min_value) = markov
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("g₀ is always present");
    Ok(EpPreservationReport {
        h,
        markov,
        min_value,
        argmin,
        preserved: min_value >= -opts.ep_tol,
        continuous_status: status,
        flagged: status == EpStatus::Negative,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrDiscretizationReport {
    pub h: f64,
    pub continuous: PrReport,
    pub discrete_tf: TransferFunction,
    pub discrete_relative_degree: i32,
    pub discrete: PrReport,
}

impl PrDiscretizationReport {
    pub fn preserved(&self) -> bool {
        self.continuous.verdict && self.discrete.verdict
    }
}

pub fn check_pr_discretization(f: &TransferFunction, h: f64) -> Result<PrDiscretizationReport> {
    let continuous = is_positive_real(f);
    let dss = zoh_discretize(&StateSpace::from_tf(f)?, h)?;
    let discrete_tf = dss.transfer_function()?;
    let discrete = is_positive_real_discrete(&discrete_tf);
    Ok(PrDiscretizationReport {
        h,
        continuous,
        discrete_relative_degree: discrete_tf.relative_degree(),
        discrete_tf,
        discrete,
    })
}

/// Largest gap between the Markov parameters and `h·f₀` samples is `O(h)`;
/// exposed for consistency checks.
pub fn markov_sample_gap(f: &TransferFunction, h: f64, n: usize) -> Result<f64> {
    let ss = StateSpace::from_tf(f)?;
    let dss = zoh_discretize(&ss, h)?;
    let g = markov_parameters(&dss, n);
    Ok((1..=n)
        .map(|k| (g[k] / h - ss.impulse_at(k as f64 * h)).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posreal::RELATIVE_DEGREE;

    fn tf(num: &[f64], den: &[f64]) -> TransferFunction {
        TransferFunction::from_coeffs(num, den).unwrap()
    }

    fn scalar(a: f64, b: f64, c: f64, d: f64) -> StateSpace {
        StateSpace::new(
            DMatrix::from_element(1, 1, a),
            DVector::from_element(1, b),
            RowDVector::from_element(1, c),
            d,
        )
        .unwrap()
    }

    #[test]
    fn scalar_zoh() {
        let dss = zoh_discretize(&scalar(-1.0, 1.0, 1.0, 0.0), 0.1).unwrap();
        assert!((dss.ad[(0, 0)] - (-0.1f64).exp()).abs() < 1e-14);
        assert!((dss.bd[0] - (1.0 - (-0.1f64).exp())).abs() < 1e-14);
        let dss = zoh_discretize(&scalar(0.0, 1.0, 1.0, 0.0), 0.25).unwrap();
        assert_eq!(dss.ad[(0, 0)], 1.0);
        assert!((dss.bd[0] - 0.25).abs() < 1e-15);
        let dss = zoh_discretize(&scalar(-3.0, 1.0, 1.0, 2.0), 0.7).unwrap();
        assert_eq!(dss.dd, 2.0);
        assert!(zoh_discretize(&scalar(-1.0, 1.0, 1.0, 0.0), 0.0).is_err());
        assert!(zoh_discretize(&scalar(-1.0, 1.0, 1.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn markov_examples() {
        let ss = StateSpace::from_tf(&tf(&[1.0], &[1.0, 1.0])).unwrap();
        let g = markov_parameters(&zoh_discretize(&ss, 0.1).unwrap(), 20);
        let g1 = 1.0 - (-0.1f64).exp();
        assert_eq!(g[0], 0.0);
        assert!((g[1] - g1).abs() < 1e-12);
        for (k, gk) in g.iter().enumerate().skip(1) {
            assert!((gk - g1 * (-0.1 * (k as f64 - 1.0)).exp()).abs() < 1e-12);
        }

        let ss = StateSpace::from_tf(&TransferFunction::gain(3.0)).unwrap();
        let g = markov_parameters(&zoh_discretize(&ss, 0.1).unwrap(), 4);
        assert_eq!(g, vec![3.0, 0.0, 0.0, 0.0, 0.0]);

        let ss = StateSpace::from_tf(&tf(&[2.0, 1.0], &[1.0, 1.0])).unwrap();
        let g = markov_parameters(&zoh_discretize(&ss, 0.1).unwrap(), 3);
        assert!((g[0] - 2.0).abs() < 1e-12);
        assert!((g[1] + g1).abs() < 1e-12);
    }

    #[test]
    fn leverrier_matches_closed_form() {
        let ss = StateSpace::from_tf(&tf(&[1.0], &[1.0, 1.0])).unwrap();
        let g = zoh_discretize(&ss, 0.1)
            .unwrap()
            .transfer_function()
            .unwrap();
        let p = (-0.1f64).exp();
        assert_eq!(g.relative_degree(), 1);
        assert!((g.den().coeffs()[1] + p).abs() < 1e-12);
        assert!((g.num().coeffs()[0] - (1.0 - p)).abs() < 1e-12);
    }

    #[test]
    fn leverrier_matches_resolvent() {
        let f = tf(&[1.0, -2.0, 3.0], &[1.0, 2.0, 5.0, 1.0]);
        let dss = zoh_discretize(&StateSpace::from_tf(&f).unwrap(), 0.3).unwrap();
        let g = dss.transfer_function().unwrap();
        let z = num_complex::Complex64::new(0.3, 1.7);
        let n = dss.order();
        let zi = DMatrix::<num_complex::Complex64>::identity(n, n) * z
            - dss.ad.map(num_complex::Complex64::from);
        let x = zi
            .lu()
            .solve(&dss.bd.map(num_complex::Complex64::from))
            .unwrap();
        let direct = dss
            .cd
            .iter()
            .zip(x.iter())
            .map(|(c, v)| v * *c)
            .sum::<num_complex::Complex64>()
            + dss.dd;
        assert!((g.eval(z) - direct).norm() < 1e-10);
    }

    #[test]
    fn ep_preservation_examples() {
        let r = check_ep_preservation(&tf(&[1.0], &[1.0, 1.0]), 0.1, 100).unwrap();
        assert!(r.preserved && !r.flagged);
        let r = check_ep_preservation(&tf(&[1.0], &[1.0, -1.0]), 0.1, 50).unwrap();
        assert!(r.preserved);
        assert!(r.markov[1..].iter().all(|&g| g > 0.0));
        let r = check_ep_preservation(&tf(&[2.0, 1.0], &[1.0, 1.0]), 0.1, 10).unwrap();
        assert!(!r.preserved && r.flagged);
        assert_eq!(r.argmin, 1);
    }

    #[test]
    fn pr_discretization_examples() {
        let r = check_pr_discretization(&tf(&[1.0], &[1.0, 1.0]), 0.1).unwrap();
        assert!(r.continuous.verdict);
        assert_eq!(r.discrete_relative_degree, 1);
        assert!(!r.discrete.verdict);
        assert!(r.discrete.failing().contains(&RELATIVE_DEGREE));

        let r = check_pr_discretization(&tf(&[2.0, 1.0], &[1.0, 1.0]), 0.1).unwrap();
        assert_eq!(r.discrete_relative_degree, 0);
        // G(z) = 2 - (1-p)/(z-p): Re G on the circle is checked against dense sampling
        let p = (-0.1f64).exp();
        let oracle = (0..100_000)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * k as f64 / 100_000.0;
                let z = num_complex::Complex64::from_polar(1.0, th);
                (2.0 - (1.0 - p) / (z - p)).re
            })
            .fold(f64::INFINITY, f64::min);
        assert_eq!(r.discrete.verdict, oracle >= -1e-9);

        let r = check_pr_discretization(&TransferFunction::gain(3.0), 0.5).unwrap();
        assert!(r.discrete.verdict);
    }

    #[test]
    fn markov_gap_shrinks_with_h() {
        let f = tf(&[1.0, 3.0], &[1.0, 3.0, 2.0]);
        let coarse = markov_sample_gap(&f, 0.02, 100).unwrap();
        let fine = markov_sample_gap(&f, 0.01, 200).unwrap();
        assert!(fine < 0.6 * coarse, "coarse {coarse}, fine {fine}");
    }
}
