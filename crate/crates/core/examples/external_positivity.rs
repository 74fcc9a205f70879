//! External positivity verdicts, certificates and horizons.

use positivity::{check_external_positivity, coefficient_sign_sufficient, parse_tf_text};

fn main() {
    let systems = [
        "1/(s+1)",
        "1/(s-1)",
        "(s+3)/(s^2+3s+2)",
        "(s-1)/(s^2+3s+2)",
        "1/(s^2+1)",
        "1/(s^2+0.2s+4)",
        "(s+2)/(s+1)",
        "(2s+1)/(s+1)",
        "1/(s^3+6s^2+11s+6)",
    ];
    for text in systems {
        let f = parse_tf_text(text).unwrap();
        let v = check_external_positivity(&f).unwrap();
        let cert = v.certificate.map_or("-", |c| c.as_str());
        println!(
            "{text:>22}: {:<16} certificate {cert:<26} coefficient-sign {}",
            v.status.as_str(),
            coefficient_sign_sufficient(&f)
        );
        if let Some(w) = v.witness {
            println!(
                "{:>24}f(t) = {:.6} at t = {:.6} ({:?})",
                "", w.value, w.time, w.channel
            );
        }
    }
}
