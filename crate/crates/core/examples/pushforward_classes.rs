// Kernel classes of the connecting map, odd-degree obstructions, and the
// solver for `δ(C) = D`.

use pushcalc::pushforward::{delta, pi_even, pi_odd_obstructions, solve_delta, xi_gen, xi_pe, DeltaSolution};

fn main() {
    let pe = xi_pe(1, 4);
    println!("projective Euler class (r = 1): {:?}", pe.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    assert!(delta(&pe).truncate(4).is_zero());

    let g = xi_gen(2, 3).unwrap();
    println!("generating class (r = 2): {:?}", g.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    assert!(g.is_kernel());

    for (k, r) in [(0, 0), (2, 0), (4, 1), (-2, 2)] {
        let basis = pi_even(k, r, 6).unwrap();
        println!("dim of degree-{k} kernel at r = {r}, order 6: {}", basis.len());
    }

    for (k, r) in [(3, 0), (5, 0), (3, 1), (1, -1)] {
        let odd = pi_odd_obstructions(k, r, 6).unwrap();
        println!("odd degree {k}, r = {r}: {} obstruction(s)", odd.dimension);
    }

    let target = delta(&t_free_class());
    match solve_delta(3, 1, &target).unwrap() {
        DeltaSolution::Solved(c) => println!("solved δ(C) = D with C_0 = {}", c.coeff(0)),
        DeltaSolution::Obstructed(o) => println!("obstructed at C_{}", o.index),
    }
}

/// Some degree-2 class that is not in the kernel.
fn t_free_class() -> pushcalc::pushforward::PushforwardClass {
    use pushcalc::{Basis, GradedPoly};
    let y = |j| GradedPoly::generator(Basis::Y, j);
    pushcalc::pushforward::PushforwardClass::new(2, 1, vec![y(1), &y(1) * &y(1), y(3)]).unwrap()
}
