//! Inversion keeps positive realness but not external positivity.

use positivity::{check_external_positivity, is_positive_real, parse_tf_text};

fn main() {
    for text in ["(2s+1)/(s+1)", "(s+2)/(s+1)", "(s+1)/(s+1)", "1/(s+1)"] {
        let f = parse_tf_text(text).unwrap();
        let inv = f.inverse().unwrap();
        let ep = check_external_positivity(&f).unwrap().status;
        let ep_inv = if inv.is_proper() {
            check_external_positivity(&inv).unwrap().status.as_str()
        } else {
            "not realizable"
        };
        println!(
            "F = {f}: pr {}, ep {} | 1/F = {inv}: pr {}, ep {ep_inv}",
            is_positive_real(&f).verdict,
            ep.as_str(),
            is_positive_real(&inv).verdict,
        );
        if f.relative_degree() == 0 {
            let dec = f.decompose_biproper().unwrap();
            println!("  F = {} + {}", dec.d, dec.f0);
        }
    }
}
