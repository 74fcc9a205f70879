//! Rational transfer functions `F(s) = N(s)/D(s)`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::tol;

/// A rational function with a monic denominator.
///
/// Construction cancels pole/zero pairs closer than [`tol::CANCEL_TOL`] and
/// keeps the cancelled roots in [`TransferFunction::cancellations`], so every
/// verdict computed from the value refers to the reduced function.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferFunction {
    num: Polynomial,
    den: Polynomial,
    cancellations: Vec<Complex64>,
}

/// `F(s) = d + F₀(s)` with `F₀` strictly proper.
#[derive(Debug, Clone, PartialEq)]
pub struct BiproperDecomposition {
    /// Direct input–output gain: the feedthrough term and the weight of the
    /// Dirac component of the impulse response.
    pub d: f64,
    pub f0: TransferFunction,
}

impl BiproperDecomposition {
    /// Rebuilds `d + F₀`.
    pub fn recombine(&self) -> TransferFunction {
        self.f0.add_constant(self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleClass {
    /// Open left half-plane.
    Lhp,
    /// On the imaginary axis (critically stable when simple).
    Axis,
    /// Open right half-plane.
    Rhp,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleData {
    pub pole: Complex64,
    pub multiplicity: usize,
    /// `N(p)/D'(p)`; only defined for simple poles.
    pub residue: Option<Complex64>,
    pub class: PoleClass,
}

impl PoleClass {
    pub fn of(p: Complex64) -> Self {
        if p.re.abs() < tol::AXIS_TOL {
            PoleClass::Axis
        } else if p.re < 0.0 {
            PoleClass::Lhp
        } else {
            PoleClass::Rhp
        }
    }
}

impl TransferFunction {
    /// Normalizes to a monic denominator and cancels near-common roots.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateInput("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(TransferFunction {
                num,
                den: Polynomial::constant(1.0),
                cancellations: Vec::new(),
            });
        }
        let (mut num, mut den) = monic(&num, &den);
        let mut cancellations = Vec::new();

        if num.degree() >= 1 && den.degree() >= 1 {
            let zeros = num.roots()?;
            let poles = den.roots()?;
            let mut zero_left: Vec<usize> = zeros.multiplicities.clone();
            for (p, pm) in poles.iter() {
                if p.im < 0.0 {
                    continue;
                }
                let hit = zeros.roots.iter().enumerate().position(|(i, z)| {
                    zero_left[i] > 0 && (z - p).norm() < tol::CANCEL_TOL * (1.0 + p.norm())
                });
                let Some(i) = hit else { continue };
                let k = pm.min(zero_left[i]);
                zero_left[i] -= k;
                let factor = if p.im == 0.0 {
                    Polynomial::linear_factor(p.re)
                } else {
                    Polynomial::new(vec![1.0, -2.0 * p.re, p.norm_sqr()])
                };
                for _ in 0..k {
                    num = num.div_rem(&factor)?.0;
                    den = den.div_rem(&factor)?.0;
                    cancellations.push(p);
                    if p.im != 0.0 {
                        cancellations.push(p.conj());
                    }
                }
            }
            if den.leading() != 1.0 {
                (num, den) = monic(&num, &den);
            }
        }
        Ok(TransferFunction {
            num,
            den,
            cancellations,
        })
    }

    /// Convenience constructor from descending coefficient slices.
    pub fn from_coeffs(num: &[f64], den: &[f64]) -> Result<Self> {
        TransferFunction::new(Polynomial::new(num.to_vec()), Polynomial::new(den.to_vec()))
    }

    /// The pure gain `k`.
    pub fn gain(k: f64) -> Self {
        TransferFunction::new(Polynomial::constant(k), Polynomial::constant(1.0))
            .expect("constant denominator")
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn cancellations(&self) -> &[Complex64] {
        &self.cancellations
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Number of poles (degree of the reduced denominator).
    pub fn order(&self) -> usize {
        self.den.degree()
    }

    /// `deg D - deg N`. The zero function has no finite relative degree and
    /// reports `i32::MAX`.
    pub fn relative_degree(&self) -> i32 {
        if self.num.is_zero() {
            i32::MAX
        } else {
            self.den.degree() as i32 - self.num.degree() as i32
        }
    }

    pub fn is_proper(&self) -> bool {
        self.relative_degree() >= 0
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.relative_degree() >= 1
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.num.eval(s) / self.den.eval(s)
    }

    /// Splits a proper function into its direct gain and strictly proper part.
    pub fn decompose_biproper(&self) -> Result<BiproperDecomposition> {
        let rd = self.relative_degree();
        if rd < 0 {
            return Err(Error::ImproperInput(rd));
        }
        if rd > 0 {
            return Ok(BiproperDecomposition {
                d: 0.0,
                f0: self.clone(),
            });
        }
        let d = self.num.leading() / self.den.leading();
        let rest: Vec<f64> = self.num.coeffs()[1..]
            .iter()
            .zip(&self.den.coeffs()[1..])
            .map(|(n, q)| n - d * q)
            .collect();
        let f0 = TransferFunction::new(Polynomial::new(rest), self.den.clone())?;
        Ok(BiproperDecomposition { d, f0 })
    }

    /// `1/F(s)`; improper results are allowed.
    pub fn inverse(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DegenerateInput(
                "inverse of the zero function".into(),
            ));
        }
        TransferFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn add(&self, other: &TransferFunction) -> Result<Self> {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        TransferFunction::new(num, &self.den * &other.den)
    }

    /// `F(s) + k`
    pub fn add_constant(&self, k: f64) -> Self {
        TransferFunction {
            num: &self.num + &self.den.scale(k),
            den: self.den.clone(),
            cancellations: Vec::new(),
        }
    }

    /// Poles with multiplicity, half-plane class and (for simple poles) residue.
    pub fn poles_with_residues(&self) -> Vec<PoleData> {
        if self.den.degree() == 0 {
            return Vec::new();
        }
        let roots = self.den.roots().expect("denominator degree >= 1");
        let dden = self.den.derivative();
        roots
            .iter()
            .map(|(pole, multiplicity)| PoleData {
                pole,
                multiplicity,
                residue: (multiplicity == 1).then(|| self.num.eval(pole) / dden.eval(pole)),
                class: PoleClass::of(pole),
            })
            .collect()
    }

    /// `F(jω)`
    pub fn freq_response(&self, omega: f64) -> Result<Complex64> {
        let s = Complex64::new(0.0, omega);
        if self.den.degree() >= 1 {
            let roots = self.den.roots()?;
            if roots
                .roots
                .iter()
                .any(|p| (p - s).norm() < tol::AXIS_TOL * (1.0 + p.norm()))
            {
                return Err(Error::PoleOnAxis(omega));
            }
        }
        let den = self.den.eval(s);
        if den.norm() == 0.0 {
            return Err(Error::PoleOnAxis(omega));
        }
        Ok(self.num.eval(s) / den)
    }

    /// The polynomial `E` in `x = ω²` with `Re F(jω) = E(ω²) / |D(jω)|²`.
    ///
    /// `N(jω)·conj(D(jω))` equals `P(jω)` for `P(s) = N(s)·D(-s)`; its real
    /// part collects the even powers of `P` with alternating signs.
    pub fn realpart_even_poly(&self) -> Polynomial {
        let p = &self.num * &self.den.reflect();
        let deg = p.degree();
        let half = deg / 2;
        // coefficients below the product's roundoff floor are cancellation
        // residue (lossless parts give E ≡ 0) and would otherwise grow with x
        let floor = tol::E_CHOP_REL * self.num.norm_inf() * self.den.norm_inf();
        let coeffs: Vec<f64> = (0..=half)
            .rev()
            .map(|k| {
                let c = p.coeff_of_power(2 * k);
                let c = if c.abs() <= floor { 0.0 } else { c };
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Polynomial::new(coeffs)
    }
}

/// Divides through by the leading denominator coefficient, which becomes
/// exactly 1.
fn monic(num: &Polynomial, den: &Polynomial) -> (Polynomial, Polynomial) {
    let lead = den.leading();
    let num = Polynomial::new(num.coeffs().iter().map(|c| c / lead).collect::<Vec<_>>());
    let mut den: Vec<f64> = den.coeffs().iter().map(|c| c / lead).collect();
    den[0] = 1.0;
    (num, Polynomial::new(den))
}

impl TransferFunction {
    /// Formats with the given variable name, e.g. `z` for sampled systems.
    pub fn format_with(&self, var: &str) -> String {
        format!(
            "({})/({})",
            self.num.format_with(var),
            self.den.format_with(var)
        )
    }
}

impl fmt::Display for TransferFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("s"))
    }
}
