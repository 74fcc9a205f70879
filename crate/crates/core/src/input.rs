//! Nonnegative test inputs and their text form.
//!
//! Grammar: `step`, `pulse:<t0>,<t1>,<amp>`, `ramp:<slope>`, `file:<path>`
//! (CSV with header `t,value` on a uniform grid).

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::realize::Signal;

#[derive(Debug, Clone, PartialEq)]
pub enum InputSpec {
    /// Unit step.
    Step,
    /// `amplitude` on `[t0, t1)`, zero elsewhere.
    Pulse { t0: f64, t1: f64, amplitude: f64 },
    /// `slope·t`
    Ramp { slope: f64 },
    /// Explicit samples on a uniform grid.
    Samples { step: f64, values: Vec<f64> },
}

impl InputSpec {
    pub fn pulse(t0: f64, t1: f64, amplitude: f64) -> Result<Self> {
        let spec = InputSpec::Pulse { t0, t1, amplitude };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidInput(what.to_string()));
        match self {
            InputSpec::Step => Ok(()),
            InputSpec::Pulse { t0, t1, amplitude } => {
                if !(amplitude.is_finite() && *amplitude >= 0.0) {
                    return bad("pulse amplitude must be a finite nonnegative number");
                }
                if !(t0.is_finite() && t1.is_finite() && *t0 >= 0.0 && t1 >= t0) {
                    return bad("pulse needs 0 <= t0 <= t1");
                }
                Ok(())
            }
            InputSpec::Ramp { slope } => {
                if !(slope.is_finite() && *slope >= 0.0) {
                    return bad("ramp slope must be a finite nonnegative number");
                }
                Ok(())
            }
            InputSpec::Samples { step, values } => {
                if !(*step > 0.0 && step.is_finite()) {
                    return bad("sample grid step must be positive");
                }
                if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return bad("input samples must be finite and nonnegative");
                }
                Ok(())
            }
        }
    }

    /// Parses the command-line mini-grammar. `file:` paths are read eagerly.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let spec = if text == "step" {
            InputSpec::Step
        } else if let Some(rest) = text.strip_prefix("pulse:") {
            let parts = parse_numbers(rest)?;
            if parts.len() != 3 {
                return Err(Error::InvalidInput("pulse needs t0,t1,amp".into()));
            }
            InputSpec::Pulse {
                t0: parts[0],
                t1: parts[1],
                amplitude: parts[2],
            }
        } else if let Some(rest) = text.strip_prefix("ramp:") {
            let parts = parse_numbers(rest)?;
            if parts.len() != 1 {
                return Err(Error::InvalidInput("ramp needs a single slope".into()));
            }
            InputSpec::Ramp { slope: parts[0] }
        } else if let Some(path) = text.strip_prefix("file:") {
            return InputSpec::from_csv_path(path);
        } else {
            return Err(Error::InvalidInput(format!("unknown input spec `{text}`")));
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        InputSpec::from_csv(&text)
    }

    /// Reads `t,value` rows; times must start at 0 and be uniformly spaced.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty CSV".into()))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols != ["t", "value"] {
            return Err(Error::InvalidInput(format!(
                "CSV header must be `t,value`, got `{header}`"
            )));
        }
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (row, line) in lines.enumerate() {
            let nums = parse_numbers(line)
                .map_err(|_| Error::InvalidInput(format!("CSV row {}: `{line}`", row + 2)))?;
            if nums.len() != 2 {
                return Err(Error::InvalidInput(format!(
                    "CSV row {} needs two columns",
                    row + 2
                )));
            }
            times.push(nums[0]);
            values.push(nums[1]);
        }
        if times.len() < 2 {
            return Err(Error::InvalidInput("CSV needs at least two rows".into()));
        }
        if times[0].abs() > 1e-12 {
            return Err(Error::InvalidInput("CSV grid must start at t = 0".into()));
        }
        let step = times[1] - times[0];
        if step.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::InvalidInput("CSV times must increase".into()));
        }
        for (k, t) in times.iter().enumerate() {
            if (t - k as f64 * step).abs() > 1e-9 * (1.0 + t.abs()) {
                return Err(Error::InvalidInput(format!(
                    "CSV grid is not uniform at row {}",
                    k + 2
                )));
            }
        }
        let spec = InputSpec::Samples { step, values };
        spec.validate()?;
        Ok(spec)
    }

    /// Samples the input on `{0, dt, …}` up to `until`. Explicit samples keep
    /// their own grid.
    pub fn to_signal(&self, until: f64, dt: f64) -> Result<Signal> {
        self.validate()?;
        if let InputSpec::Samples { step, values } = self {
            return Signal::new(*step, values.clone());
        }
        if !(dt > 0.0 && dt.is_finite()) || !(until >= 0.0 && until.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "need dt > 0 and until >= 0, got dt = {dt}, until = {until}"
            )));
        }
        let n = (until / dt).round() as usize;
        // grid times are compared with a half-step margin so boundaries that
        // fall on grid points switch exactly there
        let half = 0.5 * dt;
        Signal::from_fn(dt, n, |t| match self {
            InputSpec::Step => 1.0,
            InputSpec::Pulse { t0, t1, amplitude } => {
                if t >= t0 - half && t < t1 - half {
                    *amplitude
                } else {
                    0.0
                }
            }
            InputSpec::Ramp { slope } => slope * t,
            InputSpec::Samples { .. } => unreachable!(),
        })
    }
}

impl fmt::Display for InputSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputSpec::Step => write!(f, "step"),
            InputSpec::Pulse { t0, t1, amplitude } => write!(f, "pulse:{t0},{t1},{amplitude}"),
            InputSpec::Ramp { slope } => write!(f, "ramp:{slope}"),
            InputSpec::Samples { step, values } => {
                write!(f, "samples:{} points, step {step}", values.len())
            }
        }
    }
}

fn parse_numbers(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("not a number: `{}`", p.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        assert_eq!(InputSpec::parse("step").unwrap(), InputSpec::Step);
        assert_eq!(
            InputSpec::parse("pulse:0,1,2.5").unwrap(),
            InputSpec::Pulse {
                t0: 0.0,
                t1: 1.0,
                amplitude: 2.5
            }
        );
        assert_eq!(
            InputSpec::parse("ramp:0.5").unwrap(),
            InputSpec::Ramp { slope: 0.5 }
        );
        assert!(InputSpec::parse("sine:1").is_err());
        assert!(InputSpec::parse("pulse:0,1").is_err());
    }

    #[test]
    fn rejects_negative_amplitudes() {
        assert!(matches!(
            InputSpec::parse("pulse:0,1,-1"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            InputSpec::parse("ramp:-2"),
            Err(Error::InvalidInput(_))
        ));
        assert!(InputSpec::from_csv("t,value\n0,1\n0.1,-0.5\n").is_err());
    }

    #[test]
    fn csv_requires_header_and_uniform_grid() {
        let ok = InputSpec::from_csv("t,value\n0,1\n0.5,2\n1.0,0\n").unwrap();
        assert_eq!(
            ok,
            InputSpec::Samples {
                step: 0.5,
                values: vec![1.0, 2.0, 0.0]
            }
        );
        assert!(InputSpec::from_csv("time,u\n0,1\n1,1\n").is_err());
        assert!(InputSpec::from_csv("t,value\n0,1\n0.5,1\n1.2,1\n").is_err());
        assert!(InputSpec::from_csv("t,value\n0,1\n0.5\n").is_err());
    }

    #[test]
    fn pulse_switches_on_grid_points() {
        let u = InputSpec::pulse(0.0, 1.0, 1.0)
            .unwrap()
            .to_signal(2.0, 1e-3)
            .unwrap();
        assert_eq!(u.len(), 2001);
        assert_eq!(u.values()[999], 1.0);
        assert_eq!(u.values()[1000], 0.0);
        assert_eq!(u.values().iter().filter(|&&v| v == 1.0).count(), 1000);
    }

    #[test]
    fn display_round_trips() {
        for text in ["step", "pulse:0,1,1", "ramp:0.25"] {
            let spec = InputSpec::parse(text).unwrap();
            assert_eq!(InputSpec::parse(&spec.to_string()).unwrap(), spec);
        }
    }
}
