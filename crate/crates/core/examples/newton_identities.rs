// Chern classes `y_k` versus Chern character components `z_k`.

use pushcalc::polyring::{y_in_z, z_in_y};
use pushcalc::{Basis, GradedPoly};

fn main() {
    for k in 1..=4 {
        println!("z_{k} = {}", z_in_y(k));
    }
    for k in 1..=3 {
        println!("y_{k} = {}", y_in_z(k));
    }

    let y1 = GradedPoly::generator(Basis::Y, 1);
    let y2 = GradedPoly::generator(Basis::Y, 2);
    let p = &(&y1 * &y2) + &y2.pow(2);
    let z = p.to_basis(Basis::Z).unwrap();
    println!("{p}  =  {z}");
    assert_eq!(z.to_basis(Basis::Y).unwrap(), p);
}
