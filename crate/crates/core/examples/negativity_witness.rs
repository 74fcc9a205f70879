//! Builds a nonnegative input that drives the output negative, then replays it.

use positivity::{construct_negativity_witness, parse_tf_text, StateSpace};

fn main() {
    for text in ["(2s+1)/(s+1)", "1/(s^2+1)", "(s-1)/(s^2+3s+2)"] {
        let f = parse_tf_text(text).unwrap();
        let w = construct_negativity_witness(&f).unwrap();
        println!(
            "{text}: input {} gives y({:.4}) = {:.6}",
            w.input, w.probe, w.output_value
        );

        let ss = StateSpace::from_tf(&f).unwrap();
        let u = w.input.to_signal(w.probe, w.step).unwrap();
        let y = ss.simulate(&u);
        println!("  replayed: y = {:.6}", y.values()[u.index_of(w.probe)]);
    }
    assert!(construct_negativity_witness(&parse_tf_text("1/(s+1)").unwrap()).is_err());
}
