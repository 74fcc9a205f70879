//! Running input-output energy for a system whose output dips negative.

use positivity::{io_energy, parse_tf_text, InputSpec, StateSpace};

fn main() {
    let f = parse_tf_text("(2s+1)/(s+1)").unwrap();
    let ss = StateSpace::from_tf(&f).unwrap();
    let u = InputSpec::parse("pulse:0,1,1")
        .unwrap()
        .to_signal(4.0, 1e-3)
        .unwrap();
    let y = ss.simulate(&u);
    let exact = ss.energy(&u);
    let trapezoid = io_energy(&u, &y).unwrap();
    for t in [0.5, 1.0, 2.0, 4.0] {
        let k = u.index_of(t);
        println!(
            "t = {t}: y = {:+.6}, J = {:.6} (trapezoid {:.6})",
            y.values()[k],
            exact.values()[k],
            trapezoid.values()[k]
        );
    }
    println!("min y = {:.6}, min J = {:.3e}", y.min(), exact.min());
}
