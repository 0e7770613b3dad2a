//! Newton identities relating Chern classes and Chern characters.
//
// z_k = (-1)^(k-1) y_k / (k-1)! + sum_{i=1}^{k-1} (-1)^(i+k-1) (i!/k!) y_{k-i} z_i

use std::sync::RwLock;

use super::{Basis, GradedPoly};
use crate::numkernel::{factorial, inv_factorial, sign, Rational};

struct Tables {
    z_in_y: Vec<GradedPoly>,
    y_in_z: Vec<GradedPoly>,
}

static TABLES: RwLock<Tables> = RwLock::new(Tables { z_in_y: Vec::new(), y_in_z: Vec::new() });

fn coeff(i: usize, k: usize) -> Rational {
    // (-1)^(i+k-1) i!/k!
    &Rational::from_int(factorial(i as u32)) * &inv_factorial(k as u32)
        * Rational::from(sign((i + k - 1) as i64))
}

fn extend(t: &mut Tables, k: usize) {
    if t.z_in_y.is_empty() {
        t.z_in_y.push(GradedPoly::one(Basis::Y));
        t.y_in_z.push(GradedPoly::one(Basis::Z));
    }
    while t.z_in_y.len() <= k {
        let n = t.z_in_y.len();
        let lead = Rational::from(sign(n as i64 - 1));
        let mut z = GradedPoly::generator(Basis::Y, n as i64)
            .scale(&(&lead * &inv_factorial(n as u32 - 1)));
        let mut rest_z = GradedPoly::zero(Basis::Z);
        for i in 1..n {
            let c = coeff(i, n);
            let yk = GradedPoly::generator(Basis::Y, (n - i) as i64);
            z = &z + &(&yk * &t.z_in_y[i]).scale(&c);
            let zi = GradedPoly::generator(Basis::Z, i as i64);
            rest_z = &rest_z + &(&t.y_in_z[n - i] * &zi).scale(&c);
        }
        // y_n = (-1)^(n-1) (n-1)! (z_n - rest)
        let zn = GradedPoly::generator(Basis::Z, n as i64);
        let y = (&zn - &rest_z).scale(&(&lead * &Rational::from_int(factorial(n as u32 - 1))));
        t.z_in_y.push(z);
        t.y_in_z.push(y);
    }
}

fn lookup(k: usize, pick: fn(&Tables) -> &Vec<GradedPoly>) -> GradedPoly {
    {
        let t = TABLES.read().expect("newton table lock");
        if let Some(p) = pick(&t).get(k) {
            return p.clone();
        }
    }
    let mut t = TABLES.write().expect("newton table lock");
    extend(&mut t, k);
    pick(&t)[k].clone()
}

/// `z_k` written in the y-basis (`z_0` is returned as `1`; callers handle the rank).
pub fn z_in_y(k: usize) -> GradedPoly {
    lookup(k, |t| &t.z_in_y)
}

/// `y_k` written in the z-basis, `y_0 = 1`.
pub fn y_in_z(k: usize) -> GradedPoly {
    lookup(k, |t| &t.y_in_z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(z_in_y(1).to_string(), "y1");
        assert_eq!(z_in_y(2).to_string(), "-1*y2 + 1/2*y1^2");
        assert_eq!(z_in_y(3).to_string(), "1/2*y3 + -1/2*y1*y2 + 1/6*y1^3");
        assert_eq!(y_in_z(2).to_string(), "-1*z2 + 1/2*z1^2");
    }

    #[test]
    fn tables_are_inverse() {
        for k in 1..8 {
            let back = y_in_z(k).to_basis(Basis::Y).unwrap();
            assert_eq!(back, GradedPoly::generator(Basis::Y, k as i64), "k={k}");
        }
    }
}
