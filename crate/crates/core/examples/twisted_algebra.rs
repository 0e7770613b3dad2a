// The twisted algebra acting on kernel classes, and writing a class back as
// an algebra element applied to a base class.

use pushcalc::pushforward::{decompose, s_act, s_multiply, xi_gen, zj_action, Base, SElement};
use pushcalc::{Basis, GradedPoly};

fn main() {
    let r = 2;
    let z = |j| GradedPoly::generator(Basis::Z, j);
    let t = SElement::t_pow(r, 1);
    let z2 = SElement::from_poly(r, z(2), 0);
    let tz2 = s_multiply(&t, &z2).unwrap();
    println!("t·z_2 = {:?}", tz2.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());

    let base = xi_gen(r, 8).unwrap();
    let u = SElement::from_poly(r, z(1), 0).try_add(&tz2).unwrap();
    let e = s_act(&u, &base).unwrap();
    println!("u(base) has order {}", e.order());

    let d = decompose(&e, Base::Gen).unwrap();
    // Not the `u` we started from: the decomposition is only unique up to the
    // annihilator of the base class.
    let shown: Vec<String> = d.element.coeffs().iter().map(|c| c.to_string()).collect();
    println!("recovered {shown:?}, valid to order {}", d.valid_order);
    let back = s_act(&d.element, &xi_gen(r, 12).unwrap()).unwrap();
    assert!(back.agrees_up_to(&e, d.valid_order));

    let once = zj_action(1, &base).unwrap();
    let d = decompose(&once, Base::Gen).unwrap();
    println!("z_1(base) decomposes over {} level(s)", d.levels.len());
}
