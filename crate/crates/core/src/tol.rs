//! Numeric thresholds shared by the analysis modules.

/// Coefficients below this fraction of the largest coefficient magnitude are
/// dropped from the leading end of a polynomial.
pub const LEADING_ZERO_REL: f64 = 1e-12;

/// Absolute slack on polynomial sign decisions.
pub const POLY_SIGN_TOL: f64 = 1e-9;

/// Roots closer than this (scaled by `1 + |root|`) are one cluster.
pub const ROOT_CLUSTER_TOL: f64 = 1e-7;

/// Coefficients of the frequency-nonnegativity polynomial smaller than this
/// times `||N||·||D||` are treated as roundoff.
pub const E_CHOP_REL: f64 = 1e-12;

/// Residual bound for computed roots, relative to `1 + ||coeffs||`.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-9;

/// `|Re p|` below this classifies a pole as lying on the imaginary axis.
pub const AXIS_TOL: f64 = 1e-9;

/// Pole/zero pairs closer than this (scaled by `1 + |root|`) cancel.
pub const CANCEL_TOL: f64 = 1e-9;

/// Relative imaginary part allowed on an axis-pole residue.
pub const RESIDUE_IMAG_REL: f64 = 1e-8;

/// An axis-pole residue must exceed this to count as positive.
pub const RESIDUE_MIN: f64 = 1e-12;

/// Threshold on impulse and output negativity.
pub const EP_TOL: f64 = 1e-7;

/// Aberth iteration cap.
pub const ABERTH_MAX_ITER: usize = 200;

/// Aberth step size, relative to `1 + |root|`, that counts as converged.
pub const ABERTH_STEP_TOL: f64 = 1e-12;
