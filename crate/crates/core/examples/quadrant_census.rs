//! Sorts seeded random systems by (positive real, externally positive).

use positivity::{quadrant, EpOptions};

fn main() {
    let count = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(500);
    let report = quadrant(count, 42, &EpOptions::default());
    print!("{}", report.to_text());
}
