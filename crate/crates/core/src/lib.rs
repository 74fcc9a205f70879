//! Positive realness and external positivity of SISO LTI transfer functions.
//!
//! The two notions are independent: `1/(s-1)` is externally positive but not
//! positive real, while `(2s+1)/(s+1)` is positive real but a nonnegative
//! input drives its output negative. This crate certifies both properties,
//! constructs witnesses when they fail, and checks how they behave under
//! inversion and zero-order-hold discretization.
//!
//! ```
//! use positivity::{check_external_positivity, is_positive_real, parse_tf_text, EpStatus};
//!
//! let f = parse_tf_text("(2s+1)/(s+1)").unwrap();
//! assert!(is_positive_real(&f).verdict);
//! assert_eq!(check_external_positivity(&f).unwrap().status, EpStatus::Negative);
//! ```

pub mod cli;
pub mod demo;
pub mod discretize;
pub mod error;
pub mod expm;
pub mod extpos;
pub mod input;
pub mod parse;
pub mod poly;
pub mod posreal;
pub mod quadrant;
pub mod realize;
pub mod report;
mod search;
pub mod tol;
pub mod xfer;

pub use demo::{run_demo, DemoReport};
pub use discretize::{
    check_ep_preservation, check_pr_discretization, markov_parameters, zoh_discretize,
    DiscreteStateSpace,
};
pub use error::{Error, Result};
pub use extpos::{
    check_external_positivity, coefficient_sign_sufficient, construct_negativity_witness,
    impulse_min_on_horizon, Certificate, EpOptions, EpStatus, PositivityVerdict,
};
pub use input::InputSpec;
pub use parse::parse_tf_text;
pub use poly::{HalfLineSign, Polynomial, RootSet};
pub use posreal::{
    is_positive_real, is_positive_real_discrete, is_strictly_positive_real, PrReport, PrWitness,
};
pub use quadrant::{fixture_corpus, quadrant, QuadrantReport};
pub use realize::{impulse_response, io_energy, ImpulseResponse, Signal, StateSpace};
pub use report::{analyze, AnalysisReport, AnalyzeOptions, EnergyOptions};
pub use xfer::{BiproperDecomposition, PoleClass, PoleData, TransferFunction};
