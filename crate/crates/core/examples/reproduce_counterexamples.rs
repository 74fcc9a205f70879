use positivity::{run_demo, EpOptions};

fn main() {
    let report = run_demo(&EpOptions::default());
    print!("{}", report.to_text());
    std::process::exit(if report.passed { 0 } else { 1 });
}
