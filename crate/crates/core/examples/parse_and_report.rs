//! Parses a transfer function from the command line and prints the full report.
//!
//! `cargo run --example parse_and_report -- "(s+1)/(2s+1)"`

use positivity::{analyze, parse_tf_text, AnalyzeOptions, EnergyOptions, InputSpec};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(2s+1)/(s+1)".into());
    let f = match parse_tf_text(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let opts = AnalyzeOptions {
        energy: Some(EnergyOptions {
            input: InputSpec::Step,
            until: 10.0,
            dt: None,
        }),
        ..AnalyzeOptions::default()
    };
    let report = analyze(&f, &opts);
    print!("{}", report.to_text());
    println!("{}", report.to_json());
}
