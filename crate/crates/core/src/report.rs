//! Aggregated analysis of one transfer function and its JSON form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::extpos::{
    check_external_positivity_with, construct_negativity_witness_with, EpOptions, EpStatus,
    PositivityVerdict,
};
use crate::input::InputSpec;
use crate::posreal::{is_positive_real, is_strictly_positive_real, PrReport};
use crate::realize::StateSpace;
use crate::xfer::TransferFunction;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub system: SystemJson,
    pub pr: PrJson,
    pub ep: Option<EpJson>,
    pub decomposition: Option<DecompositionJson>,
    pub inverse: Option<InverseJson>,
    pub energy: Option<EnergyJson>,
    pub meta: MetaJson,
    /// Component failures collected instead of aborting the analysis.
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
    /// Cancelled pole/zero locations as `[re, im]`.
    pub cancellations: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrJson {
    pub verdict: bool,
    /// Strict positive realness.
    pub strict: bool,
    pub checks: Vec<CheckJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpJson {
    pub status: String,
    pub certificate: Option<String>,
    pub witness: Option<WitnessJson>,
    pub horizon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub time: f64,
    pub value: f64,
    pub input: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub d: f64,
    pub f0: PolyPairJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyPairJson {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseJson {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
    pub proper: bool,
    pub pr: Option<bool>,
    pub ep: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyJson {
    pub min_running_integral: f64,
    pub input: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaJson {
    pub version: String,
    pub tol: f64,
}

/// Input used for the running input–output energy.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyOptions {
    pub input: InputSpec,
    pub until: f64,
    /// Grid step; `None` uses the realization's default step.
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AnalyzeOptions {
    pub ep: EpOptions,
    pub energy: Option<EnergyOptions>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "system: ({}) / ({})",
            fmt_coeffs(&self.system.num),
            fmt_coeffs(&self.system.den)
        );
        if !self.system.cancellations.is_empty() {
            let _ = writeln!(out, "  cancelled: {:?}", self.system.cancellations);
        }
        let _ = writeln!(
            out,
            "positive real: {}  strictly positive real: {}",
            self.pr.verdict, self.pr.strict
        );
        for c in &self.pr.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "  [{mark}] {}: {}", c.name, c.detail);
        }
        match &self.ep {
            Some(ep) => {
                let _ = write!(out, "externally positive: {}", ep.status);
                if let Some(c) = &ep.certificate {
                    let _ = write!(out, " ({c})");
                }
                if let Some(h) = ep.horizon {
                    let _ = write!(out, " on horizon {h}");
                }
                let _ = writeln!(out);
                if let Some(w) = &ep.witness {
                    let _ = writeln!(
                        out,
                        "  witness: input {} gives y({}) = {}",
                        w.input, w.time, w.value
                    );
                }
            }
            None => {
                let _ = writeln!(out, "externally positive: not defined (improper)");
            }
        }
        if let Some(dec) = &self.decomposition {
            let _ = writeln!(
                out,
                "decomposition: d = {}, f0 = ({}) / ({})",
                dec.d,
                fmt_coeffs(&dec.f0.num),
                fmt_coeffs(&dec.f0.den)
            );
        }
        if let Some(inv) = &self.inverse {
            let _ = writeln!(
                out,
                "inverse: ({}) / ({})  proper: {}  pr: {}  ep: {}",
                fmt_coeffs(&inv.num),
                fmt_coeffs(&inv.den),
                inv.proper,
                inv.pr.map_or("n/a".to_string(), |v| v.to_string()),
                inv.ep.as_deref().unwrap_or("n/a (not realizable)")
            );
        }
        if let Some(e) = &self.energy {
            let _ = writeln!(
                out,
                "energy: min running integral {} under {}",
                e.min_running_integral, e.input
            );
        }
        for e in &self.errors {
            let _ = writeln!(out, "error: {e}");
        }
        out
    }
}

fn fmt_coeffs(c: &[f64]) -> String {
    c.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn pr_json(report: &PrReport, strict: bool) -> PrJson {
    PrJson {
        verdict: report.verdict,
        strict,
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name.to_string(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
    }
}

fn ep_json(
    f: &TransferFunction,
    verdict: &PositivityVerdict,
    opts: &EpOptions,
    errors: &mut Vec<String>,
) -> EpJson {
    let witness = if verdict.status == EpStatus::Negative {
        match construct_negativity_witness_with(f, opts) {
            Ok(w) => Some(WitnessJson {
                time: w.probe,
                value: w.output_value,
                input: w.input.to_string(),
            }),
            Err(e) => {
                errors.push(format!("witness: {e}"));
                verdict.witness.map(|w| WitnessJson {
                    time: w.time,
                    value: w.value,
                    input: "impulse".to_string(),
                })
            }
        }
    } else {
        None
    };
    EpJson {
        status: verdict.status.as_str().to_string(),
        certificate: verdict.certificate.map(|c| c.as_str().to_string()),
        witness,
        horizon: verdict.horizon,
    }
}

/// Runs every check on `f`. Component errors are recorded in
/// [`AnalysisReport::errors`] and the affected fields are left empty.
pub fn analyze(f: &TransferFunction, opts: &AnalyzeOptions) -> AnalysisReport {
    let mut errors = Vec::new();
    let pr = is_positive_real(f);
    let spr = is_strictly_positive_real(f);

    let ep = match check_external_positivity_with(f, &opts.ep) {
        Ok(v) => Some(ep_json(f, &v, &opts.ep, &mut errors)),
        Err(e) => {
            errors.push(format!("external positivity: {e}"));
            None
        }
    };

    let decomposition = match f.decompose_biproper() {
        Ok(dec) => Some(DecompositionJson {
            d: dec.d,
            f0: PolyPairJson {
                num: dec.f0.num().coeffs().to_vec(),
                den: dec.f0.den().coeffs().to_vec(),
            },
        }),
        Err(e) => {
            errors.push(format!("decomposition: {e}"));
            None
        }
    };

    let inverse = match f.inverse() {
        Ok(inv) => {
            let proper = inv.is_proper();
            let ep = if proper {
                match check_external_positivity_with(&inv, &opts.ep) {
                    Ok(v) => Some(v.status.as_str().to_string()),
                    Err(e) => {
                        errors.push(format!("inverse external positivity: {e}"));
                        None
                    }
                }
            } else {
                None
            };
            Some(InverseJson {
                num: inv.num().coeffs().to_vec(),
                den: inv.den().coeffs().to_vec(),
                proper,
                pr: Some(is_positive_real(&inv).verdict),
                ep,
            })
        }
        Err(e) => {
            errors.push(format!("inverse: {e}"));
            None
        }
    };

    let energy = opts.energy.as_ref().and_then(|eo| match energy_min(f, eo) {
        Ok(min) => Some(EnergyJson {
            min_running_integral: min,
            input: eo.input.to_string(),
        }),
        Err(e) => {
            errors.push(format!("energy: {e}"));
            None
        }
    });

    AnalysisReport {
        system: SystemJson {
            num: f.num().coeffs().to_vec(),
            den: f.den().coeffs().to_vec(),
            cancellations: f.cancellations().iter().map(|c| [c.re, c.im]).collect(),
        },
        pr: pr_json(&pr, spr.strict),
        ep,
        decomposition,
        inverse,
        energy,
        meta: MetaJson {
            version: env!("CARGO_PKG_VERSION").to_string(),
            tol: opts.ep.ep_tol,
        },
        errors,
    }
}

fn energy_min(f: &TransferFunction, eo: &EnergyOptions) -> crate::Result<f64> {
    let ss = StateSpace::from_tf(f)?;
    let dt = eo.dt.unwrap_or_else(|| ss.default_step());
    let u = eo.input.to_signal(eo.until, dt)?;
    Ok(ss.energy(&u).min())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_tf_text;

    fn report(text: &str) -> AnalysisReport {
        analyze(&parse_tf_text(text).unwrap(), &AnalyzeOptions::default())
    }

    #[test]
    fn example_reports() {
        let r = report("(2s+1)/(s+1)");
        assert!(r.pr.verdict && r.pr.strict);
        let ep = r.ep.as_ref().unwrap();
        assert_eq!(ep.status, "negative");
        let w = ep.witness.as_ref().unwrap();
        assert_eq!(w.input, "pulse:0,1,1");
        assert!((w.time - 1.0).abs() < 1e-12);
        assert!((w.value + 0.632121).abs() < 1e-4);
        let inv = r.inverse.as_ref().unwrap();
        assert_eq!(inv.pr, Some(true));
        assert_eq!(inv.ep.as_deref(), Some("positive"));
        assert!(r.errors.is_empty());

        let r = report("1/(s-1)");
        assert!(!r.pr.verdict);
        assert_eq!(r.ep.unwrap().status, "positive");

        let r = report("1/(s+1)");
        assert!(r.pr.verdict);
        assert_eq!(
            r.ep.as_ref().unwrap().certificate.as_deref(),
            Some("first_order_closed_form")
        );
        let inv = r.inverse.unwrap();
        assert!(!inv.proper);
        assert_eq!(inv.ep, None);
    }

    #[test]
    fn improper_input_collects_errors() {
        let r = report("s^2+1");
        assert!(r.ep.is_none() && r.decomposition.is_none());
        assert_eq!(r.errors.len(), 2);
        assert!(r.inverse.unwrap().proper);
    }

    #[test]
    fn json_round_trips() {
        let opts = AnalyzeOptions {
            ep: EpOptions::default(),
            energy: Some(EnergyOptions {
                input: InputSpec::pulse(0.0, 1.0, 1.0).unwrap(),
                until: 2.0,
                dt: None,
            }),
        };
        for text in ["(2s+1)/(s+1)", "1/(s^2+1)", "s+1", "0", "3"] {
            let r = analyze(&parse_tf_text(text).unwrap(), &opts);
            let back = AnalysisReport::from_json(&r.to_json()).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn energy_on_counterexample() {
        let opts = AnalyzeOptions {
            ep: EpOptions::default(),
            energy: Some(EnergyOptions {
                input: InputSpec::pulse(0.0, 1.0, 1.0).unwrap(),
                until: 1.0,
                dt: Some(1e-3),
            }),
        };
        let r = analyze(&parse_tf_text("(2s+1)/(s+1)").unwrap(), &opts);
        assert!(r.energy.unwrap().min_running_integral >= -1e-6);
    }
}
