//! The connecting map, the distinguished classes and the `t`/`z_j` actions.

use super::class::PushforwardClass;
use crate::derivation::Derivation;
use crate::error::{usage, Error, Result};
use crate::numkernel::{factorial, inv_factorial, sign, Rational};
use crate::polyring::{Basis, GradedPoly, Monomial};

/// `δ(C ⊠ x_i) = ∂C ⊠ x_i + (i+1) C ⊠ x_{i+1}`. The result has order `N+1`;
/// its last coefficient assumes `C_{N+1} = 0`.
pub fn delta(e: &PushforwardClass) -> PushforwardClass {
    let d = Derivation::new(e.rank());
    let n = e.order();
    let coeffs = (0..=n + 1)
        .map(|i| {
            let mut c = if i <= n { d.partial(&e.coeff(i)) } else { GradedPoly::zero(e.basis()) };
            if i > 0 {
                c = &c + &e.coeff(i - 1).scale(&Rational::from(i as i64));
            }
            c
        })
        .collect();
    PushforwardClass::new_unchecked(e.degree() - 2, e.rank(), e.basis(), coeffs)
}

/// The projective Euler class `Σ y_{i+r+1} ⊠ x_i` (with `y_0 = 1`), degree `2r+2`.
pub fn xi_pe(r: i64, order: usize) -> PushforwardClass {
    let coeffs = (0..=order).map(|i| GradedPoly::generator(Basis::Y, i as i64 + r + 1)).collect();
    PushforwardClass::new_unchecked(2 * r + 2, r, Basis::Y, coeffs)
}

/// The generating class `Σ (-1)^i i! z_i ⊠ x_i` with `z_0 = r`, degree 0.
pub fn xi_gen(r: i64, order: usize) -> Result<PushforwardClass> {
    if r == 0 {
        return usage("the generating class needs a nonzero rank");
    }
    let coeffs = (0..=order)
        .map(|i| {
            let c = Rational::from_int(factorial(i as u32) * sign(i as i64));
            GradedPoly::z0_as(Basis::Z, i as i64, r).scale(&c)
        })
        .collect();
    Ok(PushforwardClass::new_unchecked(0, r, Basis::Z, coeffs))
}

/// `C'_0 = 0`, `C'_i = -i C_{i-1}`: degree drops by 2, order rises by 1.
pub fn t_action(e: &PushforwardClass) -> PushforwardClass {
    let n = e.order();
    let coeffs = (0..=n + 1)
        .map(|i| {
            if i == 0 {
                GradedPoly::zero(e.basis())
            } else {
                e.coeff(i - 1).scale(&Rational::from(-(i as i64)))
            }
        })
        .collect();
    PushforwardClass::new_unchecked(e.degree() - 2, e.rank(), e.basis(), coeffs)
}

/// `C''_i = Σ_{m=0}^{j} z_{j-m} C_{i+m} / m!` with `z_0 = r`, valid to order `N-j`.
pub fn zj_action(j: usize, e: &PushforwardClass) -> Result<PushforwardClass> {
    let n = e.order();
    if n < j {
        return Err(Error::InsufficientOrder { required: j as i64, available: n as i64 });
    }
    let basis = e.basis();
    let zs: Vec<GradedPoly> = (0..=j)
        .map(|m| GradedPoly::z0_as(basis, (j - m) as i64, e.rank()).scale(&inv_factorial(m as u32)))
        .collect();
    let coeffs = (0..=n - j)
        .map(|i| {
            let mut acc = GradedPoly::zero(basis);
            for (m, z) in zs.iter().enumerate() {
                let c = e.coeff(i + m);
                if !c.is_zero() && !z.is_zero() {
                    acc = &acc + &(z * &c);
                }
            }
            acc
        })
        .collect();
    Ok(PushforwardClass::new_unchecked(e.degree() + 2 * j as i64, e.rank(), basis, coeffs))
}

/// Action of the monomial `Π z_j^{e_j}` as the composite of `z_j`-actions.
pub fn monomial_action(m: &Monomial, e: &PushforwardClass) -> Result<PushforwardClass> {
    if m.exp(0) != 0 {
        return usage("z_0 does not occur in the z-basis");
    }
    let mut out = e.clone();
    for (j, k) in m.factors() {
        for _ in 0..k {
            out = zj_action(j, &out)?;
        }
    }
    Ok(out)
}

/// Action of a homogeneous z-basis polynomial; order drops by its weight.
pub fn mult_by(f: &GradedPoly, e: &PushforwardClass) -> Result<PushforwardClass> {
    if f.basis() != Basis::Z {
        return Err(Error::BasisMismatch(f.basis(), Basis::Z));
    }
    let Some(w) = f.weight() else {
        if f.is_zero() {
            return Ok(PushforwardClass::zero(e.degree(), e.rank(), e.basis(), e.order()));
        }
        return usage("multiplier must be homogeneous");
    };
    if (e.order() as u32) < w {
        return Err(Error::InsufficientOrder { required: w as i64, available: e.order() as i64 });
    }
    let mut acc = PushforwardClass::zero(e.degree() + 2 * w as i64, e.rank(), e.basis(), e.order() - w as usize);
    for (m, c) in f.terms() {
        acc = acc.try_add(&monomial_action(m, e)?.scale(c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn z(j: i64) -> GradedPoly {
        GradedPoly::generator(Basis::Z, j)
    }

    #[test]
    fn delta_examples() {
        let one = PushforwardClass::new(0, 0, vec![GradedPoly::one(Basis::Y)]).unwrap();
        let d = delta(&one);
        assert!(d.coeff(0).is_zero());
        assert_eq!(d.coeff(1), GradedPoly::one(Basis::Y));
        let pe = xi_pe(1, 5);
        assert!(delta(&pe).truncate(5).is_zero());
    }

    #[test]
    fn distinguished_classes() {
        let pe = xi_pe(-1, 1);
        assert_eq!(pe.coeff(0), GradedPoly::one(Basis::Y));
        assert_eq!(pe.coeff(1), GradedPoly::generator(Basis::Y, 1));
        let g = xi_gen(2, 2).unwrap();
        assert_eq!(g.coeffs(), &[GradedPoly::constant(Basis::Z, q(2)), -&z(1), z(2).scale(&q(2))]);
        assert!(g.is_kernel());
        assert!(xi_gen(0, 2).is_err());
        for r in -3..=3 {
            assert!(xi_pe(r, 6).is_kernel(), "r={r}");
        }
    }

    #[test]
    fn actions() {
        let pe = xi_pe(0, 2);
        let t = t_action(&pe);
        assert_eq!(t.coeff(3), GradedPoly::generator(Basis::Y, 3).scale(&q(-3)));
        let g = xi_gen(1, 2).unwrap();
        let z1g = zj_action(1, &g).unwrap();
        assert_eq!(z1g.order(), 1);
        assert!(z1g.coeff(0).is_zero());
        assert_eq!(z1g.coeff(1), &z(2).scale(&q(2)) - &(&z(1) * &z(1)));
        let z1pe = zj_action(1, &pe).unwrap();
        let y1 = GradedPoly::generator(Basis::Y, 1);
        assert_eq!(z1pe.coeff(0), &y1 * &y1);
        assert!(zj_action(3, &pe).is_err());
    }
}
