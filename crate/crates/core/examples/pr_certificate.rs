//! Positive-realness checks with their per-condition breakdown.

use positivity::{is_positive_real, is_strictly_positive_real, parse_tf_text};

fn main() {
    for text in [
        "1/(s+1)",
        "1/(s-1)",
        "(2s+1)/(s+1)",
        "s/(s^2+1)",
        "(s-1)/(s^2+3s+2)",
        "s+1",
    ] {
        let f = parse_tf_text(text).unwrap();
        let pr = is_positive_real(&f);
        let spr = is_strictly_positive_real(&f);
        println!("{text}: pr = {}, spr = {}", pr.verdict, spr.verdict);
        for c in &pr.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            println!("  [{mark}] {}: {}", c.name, c.detail);
        }
        if let Some(w) = &pr.witness {
            println!("  witness: {w:?}");
        }
    }
}
