// Sign systems on an Euler lattice and the point-model bracket.

use pushcalc::liealg::{
    construct_sign_q, point_bracket, point_table, verify_lie_axioms, verify_sign_axioms, EulerLattice, SignSystem,
};

fn main() {
    // An A_2-like form.
    let l = EulerLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    let s = construct_sign_q(&l);
    println!("sign system: {}", serde_json::to_string(&s).unwrap());
    let rep = verify_sign_axioms(&s, &l, 2).unwrap();
    println!("sign axioms on window 2: pass = {} ({} triples)", rep.pass, rep.triples_checked);

    let bad = verify_sign_axioms(&SignSystem::trivial(2), &l, 1).unwrap();
    println!("all-plus signs: pass = {}, first failure {:?}", bad.pass, bad.failures.first());

    let (a, b) = ([1, 0], [0, 1]);
    println!("[ζ_a, ζ_b] = {} ζ_(a+b)", point_bracket(&a, &b, &l, &s).unwrap());

    let table = point_table(&l, &s, 2).unwrap();
    let lie = verify_lie_axioms(&table, &l).unwrap();
    println!(
        "point model on window 2: antisymmetry failures {}, Jacobi failures {}, {} triples checked",
        lie.antisymmetry_failures.len(),
        lie.jacobi_failures.len(),
        lie.triples_checked
    );
}
