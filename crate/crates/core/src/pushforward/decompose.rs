//! Writing a kernel class as `u(base)` for `u ∈ S`.

use serde::Serialize;

use super::algebra::{s_act, s_multiply, SElement};
use super::class::PushforwardClass;
use super::ops::{monomial_action, mult_by, t_action, xi_gen, xi_pe};
use crate::derivation::Derivation;
use crate::error::{usage, Error, Result};
use crate::linalg::Matrix;
use crate::numkernel::{factorial, sign, Rational};
use crate::polyring::{coords, from_coords, slice_matrix, weight_slice, Basis, DegreeSpec, GradedPoly, Operator};

/// Which distinguished class the decomposition is written against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    /// The projective Euler class; generates when `r = 0`.
    Pe,
    /// The generating class; needs `r ≠ 0`.
    Gen,
}

impl Base {
    pub fn class(self, r: i64, order: usize) -> Result<PushforwardClass> {
        match self {
            Base::Pe => Ok(xi_pe(r, order)),
            Base::Gen => xi_gen(r, order),
        }
    }

    pub fn degree(self, r: i64) -> i64 {
        match self {
            Base::Pe => 2 * r + 2,
            Base::Gen => 0,
        }
    }

    /// The default base for rank `r`: the generating class unless `r = 0`.
    pub fn natural(r: i64) -> Self {
        if r == 0 {
            Base::Pe
        } else {
            Base::Gen
        }
    }
}

/// What happened at one power of `t`.
#[derive(Clone, Debug, Serialize)]
pub struct Level {
    pub power: usize,
    pub weight: i64,
    /// `max { j : ∂^j Q ≠ 0 }` for the `γ_r`-preimage `Q` of the leading term,
    /// when exactness applies.
    pub gamma_preimage_depth: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub element: SElement,
    pub valid_order: usize,
    pub levels: Vec<Level>,
}

/// Write the kernel class `e` as `u(base)` up to `e`'s order.
///
/// Works one power of `t` at a time. At step `n` the remainder is `t^n(R)`,
/// and the leading coefficient `R_0` lies in `ker ∂`; by exactness it is
/// `γ_r(Q)` for some `Q`, which is recorded as a certificate. The coefficient
/// `f` of `t^n` is then found by solving `(f · base)_0 = R_0` over the
/// z-monomials of the right weight, and `t^n f (base)` is subtracted.
pub fn decompose(e: &PushforwardClass, base: Base) -> Result<Decomposition> {
    let r = e.rank();
    if let Some(i) = e.kernel_defect() {
        return usage(format!("class is not in ker δ (fails at C_{i})"));
    }
    if base == Base::Gen && r == 0 {
        return usage("the generating class needs a nonzero rank");
    }
    let bdeg = base.degree(r);
    let shift = e.degree() - bdeg;
    if shift.rem_euclid(2) != 0 {
        return usage("degree parity does not match the base class");
    }
    let c = shift / 2;
    let n = e.order();
    let base_order = n + c.max(0) as usize;
    let base_cls = base.class(r, base_order)?.to_basis(Basis::Z)?;
    let mut rem = e.to_basis(Basis::Z)?;
    let mut u = SElement::zero(r);
    let mut levels = Vec::new();
    let der = Derivation::new(r);
    for power in 0..=n {
        // rem = t^power(R) with R_0 = (-1)^power / power! * rem_power.
        let scale = Rational::new(sign(power as i64), factorial(power as u32))?;
        let lead = rem.coeff(power).scale(&scale);
        if lead.is_zero() {
            continue;
        }
        let w = e.degree() / 2 + power as i64;
        let depth = gamma_certificate(&der, &lead, w)?;
        levels.push(Level { power, weight: w, gamma_preimage_depth: depth });
        let fw = power as i64 + c;
        let f = solve_leading(&base_cls, &lead, fw, w).ok_or_else(|| {
            Error::Usage(format!("leading term at t^{power} is not in the span of the base class"))
        })?;
        let term = SElement::from_poly(r, f.clone(), 0);
        let tn = SElement::t_pow(r, power);
        u = u.try_add(&s_multiply(&tn, &term)?)?;
        let mut piece = mult_by(&f, &base_cls)?;
        for _ in 0..power {
            piece = t_action(&piece);
        }
        rem = rem.try_add(&piece.scale(&Rational::from(-1)))?;
        if rem.order() < n {
            return Err(Error::Invariant("lost truncation order while peeling".into()));
        }
        rem = rem.truncate(n);
    }
    let check = s_act(&u, &base_cls)?;
    if check.order() < n || !check.agrees_up_to(e, n) {
        return Err(Error::Invariant("decomposition does not reproduce the class".into()));
    }
    Ok(Decomposition { element: u, valid_order: n, levels })
}

/// Solve `γ_r Q = lead` on the weight-`w` slice where exactness guarantees a
/// solution (`r ≠ 0`, or weight at least 2); elsewhere return `None`.
fn gamma_certificate(der: &Derivation, lead: &GradedPoly, w: i64) -> Result<Option<usize>> {
    if der.rank == 0 && w < 2 {
        return Ok(None);
    }
    let g = slice_matrix(&Operator::Gamma, der.rank, Basis::Z, DegreeSpec::Degree(2 * w))?;
    let b = coords(lead, &g.codomain)?;
    let Some(x) = g.matrix.solve(&b) else {
        return Err(Error::Invariant(format!(
            "leading term {lead} of weight {w} has no γ-preimage despite exactness"
        )));
    };
    let q = from_coords(Basis::Z, &g.domain, &x);
    let mut depth = 0;
    let mut cur = der.partial(&q);
    while !cur.is_zero() {
        depth += 1;
        cur = der.partial(&cur);
    }
    Ok(Some(depth))
}

/// Find `f` of weight `fw` with `(f · base)_0 = lead`.
fn solve_leading(base: &PushforwardClass, lead: &GradedPoly, fw: i64, w: i64) -> Option<GradedPoly> {
    let mons = weight_slice(fw);
    let target = weight_slice(w);
    let cols: Vec<Vec<Rational>> = mons
        .iter()
        .map(|m| {
            let img = monomial_action(m, &base.truncate(fw as usize)).expect("enough order for the leading term");
            coords(&img.coeff(0), &target).expect("leading term in the expected slice")
        })
        .collect();
    let mat = Matrix::from_columns(target.len(), &cols);
    let x = mat.solve(&coords(lead, &target).ok()?)?;
    Some(from_coords(Basis::Z, &mons, &x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pushforward::zj_action;

    #[test]
    fn trivial_cases() {
        let d = decompose(&xi_pe(0, 5), Base::Pe).unwrap();
        assert_eq!(d.element, SElement::one(0));
        let d = decompose(&t_action(&xi_pe(0, 5)), Base::Pe).unwrap();
        assert_eq!(d.element, SElement::t_pow(0, 1));
    }

    #[test]
    fn z1_of_generating_class() {
        let e = zj_action(1, &xi_gen(2, 5).unwrap()).unwrap();
        let d = decompose(&e, Base::Gen).unwrap();
        let back = s_act(&d.element, &xi_gen(2, 8).unwrap()).unwrap();
        assert!(back.agrees_up_to(&e, d.valid_order));
    }

    #[test]
    fn rejects_non_kernel() {
        let bad = PushforwardClass::new(2, 0, vec![GradedPoly::generator(Basis::Y, 1), GradedPoly::zero(Basis::Y)])
            .unwrap();
        assert!(decompose(&bad, Base::Pe).is_err());
    }
}
