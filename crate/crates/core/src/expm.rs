//! Matrix exponential by scaling and squaring with a Padé approximant.
//!
//! Degree selection and thresholds follow Higham, "The scaling and squaring
//! method for the matrix exponential revisited" (2005).

use nalgebra::DMatrix;

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539_398_330_063_23e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068;
const THETA_13: f64 = 5.371920351148152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// `e^{A}` for a square matrix.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    assert!(a.is_square(), "expm needs a square matrix");
    let n = a.nrows();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let norm = one_norm(a);
    if norm == 0.0 {
        return DMatrix::identity(n, n);
    }
    let (u, v, squarings) = if norm <= THETA_3 {
        let (u, v) = pade_low(a, &B3);
        (u, v, 0)
    } else if norm <= THETA_5 {
        let (u, v) = pade_low(a, &B5);
        (u, v, 0)
    } else if norm <= THETA_7 {
        let (u, v) = pade_low(a, &B7);
        (u, v, 0)
    } else if norm <= THETA_9 {
        let (u, v) = pade_low(a, &B9);
        (u, v, 0)
    } else {
        let s = ((norm / THETA_13).log2().ceil()).max(0.0) as i32;
        let scaled = a * 2f64.powi(-s);
        let (u, v) = pade13(&scaled);
        (u, v, s as u32)
    };

    let numer = &v + &u;
    let denom = &v - &u;
    let mut result = denom
        .lu()
        .solve(&numer)
        .expect("Padé denominator is nonsingular for the selected degree");
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// `e^{A t}`
pub fn matrix_exponential(a: &DMatrix<f64>, t: f64) -> DMatrix<f64> {
    expm(&(a * t))
}

fn one_norm(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Padé degrees 3 through 9: `U` gathers odd powers, `V` even powers.
fn pade_low(a: &DMatrix<f64>, b: &[f64]) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let ident = DMatrix::<f64>::identity(n, n);
    let a2 = a * a;
    let mut odd = ident.clone() * b[1];
    let mut even = ident * b[0];
    let mut power = a2.clone();
    let mut k = 2;
    while k < b.len() {
        even += &power * b[k];
        if k + 1 < b.len() {
            odd += &power * b[k + 1];
        }
        power = &power * &a2;
        k += 2;
    }
    (a * odd, even)
}

fn pade13(a: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let b = &B13;
    let n = a.nrows();
    let ident = DMatrix::<f64>::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let inner_u = &a6 * b[13] + &a4 * b[11] + &a2 * b[9];
    let u = a * (&a6 * inner_u + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &ident * b[1]);
    let inner_v = &a6 * b[12] + &a4 * b[10] + &a2 * b[8];
    let v = &a6 * inner_v + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &ident * b[0];
    (u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    #[test]
    fn scalar_matches_closed_form() {
        let a = DMatrix::from_element(1, 1, -1.0);
        let e = matrix_exponential(&a, 1.0)[(0, 0)];
        assert!((e - (-1.0f64).exp()).abs() / (-1.0f64).exp() <= 1e-10);
        assert!((e - 0.367879).abs() < 1e-6);

        for x in [
            -30.0, -5.0, -0.7, -1e-3, 1e-4, 0.01, 0.2, 0.9, 2.0, 4.5, 12.0, 40.0,
        ] {
            let got = expm(&DMatrix::from_element(1, 1, x))[(0, 0)];
            let want = f64::exp(x);
            assert!(
                (got - want).abs() / want <= 1e-10,
                "x={x} got={got} want={want}"
            );
        }
    }

    #[test]
    fn zero_matrix_gives_identity() {
        for n in 0..4 {
            let z = DMatrix::<f64>::zeros(n, n);
            assert_eq!(matrix_exponential(&z, 5.0), DMatrix::identity(n, n));
        }
    }

    #[test]
    fn rotation_by_pi() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let e = matrix_exponential(&a, PI);
        let want = DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -1.0]);
        assert!(max_abs_diff(&e, &want) < 1e-12);
    }

    #[test]
    fn nilpotent_is_exact_polynomial() {
        let a = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let e = matrix_exponential(&a, 3.0);
        let want = DMatrix::from_row_slice(3, 3, &[1.0, 3.0, 4.5, 0.0, 1.0, 3.0, 0.0, 0.0, 1.0]);
        assert!(max_abs_diff(&e, &want) < 1e-12);
    }

    #[test]
    fn semigroup_property() {
        let a = DMatrix::from_row_slice(3, 3, &[-1.0, 2.0, 0.5, 0.0, -3.0, 1.0, 0.3, 0.0, -0.2]);
        let whole = matrix_exponential(&a, 2.5);
        let halves = matrix_exponential(&a, 1.25) * matrix_exponential(&a, 1.25);
        assert!(max_abs_diff(&whole, &halves) < 1e-12 * (1.0 + whole.norm()));
    }
}
