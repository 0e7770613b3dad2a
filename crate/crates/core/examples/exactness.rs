// Slice-by-slice exactness of the complexes built from `γ`, `∂` and `ε`.

use pushcalc::derivation::{check_exactness_f, check_exactness_r_total};

fn main() {
    let r = check_exactness_r_total(8);
    println!("auxiliary ring, d + e <= 8: {} slices, pass = {}", r.slices.len(), r.pass);

    for rank in -2..=2 {
        let f = check_exactness_f(rank, 8);
        let bad: Vec<i64> = f.slices.iter().filter(|s| !s.pass).map(|s| s.e).collect();
        println!("fiber ring, r = {rank:>2}: pass = {:<5} failing weights {bad:?}", f.pass);
    }

    // With r = 0, the constants and z_1 are killed by ∂ but are not hit by γ_0.
    let f = check_exactness_f(0, 2);
    if let Some(w) = f.slices.iter().find_map(|s| s.witness.as_ref()) {
        println!("witness at r = 0: {} ({})", w.element, w.kind);
    }
}
