//! Zero-order hold keeps external positivity and loses positive realness.

use positivity::{check_ep_preservation, check_pr_discretization, parse_tf_text};

fn main() {
    for text in ["1/(s+1)", "1/(s-1)", "(s+3)/(s^2+3s+2)", "(2s+1)/(s+1)"] {
        let f = parse_tf_text(text).unwrap();
        for h in [0.01, 0.1, 1.0] {
            let ep = check_ep_preservation(&f, h, 100).unwrap();
            let pr = check_pr_discretization(&f, h).unwrap();
            println!(
                "{text} h = {h}: g1 = {:.6}, min g = {:.3e}, ep kept {}, G = {}, pr {} -> {}",
                ep.markov[1],
                ep.min_value,
                ep.preserved,
                pr.discrete_tf.format_with("z"),
                pr.continuous.verdict,
                pr.discrete.verdict
            );
        }
    }
}
