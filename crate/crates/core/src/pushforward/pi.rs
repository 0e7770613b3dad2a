//! `Π^k` in even degrees as `ker δ`, and in odd degrees as `coker δ`.

use serde::Serialize;

use super::class::{coeff_weight, PushforwardClass};
use super::ops::delta;
use crate::derivation::Derivation;
use crate::error::{usage, Error, Result};
use crate::linalg::{complement_of_span, Matrix};
use crate::numkernel::Rational;
use crate::polyring::{coords, from_coords, weight_slice, Basis, GradedPoly, Monomial};

fn slice_at(degree: i64, i: usize) -> Vec<Monomial> {
    coeff_weight(degree, i).map(weight_slice).unwrap_or_default()
}

/// Matrix of `∂` from the weight-`w` slice of the y-basis to weight `w - 1`.
fn partial_block(r: i64, src: &[Monomial], dst: &[Monomial]) -> Matrix {
    let d = Derivation::new(r);
    let cols: Vec<Vec<Rational>> = src
        .iter()
        .map(|m| coords(&d.partial_monomial(Basis::Y, m), dst).expect("∂ lands in the lower slice"))
        .collect();
    Matrix::from_columns(dst.len(), &cols)
}

/// A basis of truncated kernel sequences `(C_0..C_N)` of degree `k` in the
/// y-basis, from the null space of the block bidiagonal system
/// `∂C_0 = 0, ∂C_i + i C_{i-1} = 0`.
pub fn pi_even(k: i64, r: i64, order: usize) -> Result<Vec<PushforwardClass>> {
    if k.rem_euclid(2) != 0 {
        return usage(format!("pi_even needs an even degree, got {k}"));
    }
    let src: Vec<Vec<Monomial>> = (0..=order).map(|i| slice_at(k, i)).collect();
    let dst: Vec<Vec<Monomial>> = (0..=order).map(|i| slice_at(k - 2, i)).collect();
    let col_off: Vec<usize> = prefix(&src);
    let row_off: Vec<usize> = prefix(&dst);
    let ncols = *col_off.last().unwrap();
    let nrows = *row_off.last().unwrap();
    let mut m = Matrix::zeros(nrows, ncols);
    for i in 0..=order {
        let p = partial_block(r, &src[i], &dst[i]);
        place(&mut m, &p, row_off[i], col_off[i], &Rational::one());
        if i > 0 {
            // i * C_{i-1} lands in the same slice as ∂C_i.
            let id = identity_block(&src[i - 1], &dst[i]);
            place(&mut m, &id, row_off[i], col_off[i - 1], &Rational::from(i as i64));
        }
    }
    let classes = m
        .kernel()
        .into_iter()
        .map(|v| {
            let coeffs = (0..=order)
                .map(|i| from_coords(Basis::Y, &src[i], &v[col_off[i]..col_off[i + 1]]))
                .collect();
            PushforwardClass::new_unchecked(k, r, Basis::Y, coeffs)
        })
        .collect();
    Ok(classes)
}

fn prefix(slices: &[Vec<Monomial>]) -> Vec<usize> {
    let mut off = vec![0];
    for s in slices {
        off.push(off.last().unwrap() + s.len());
    }
    off
}

fn identity_block(src: &[Monomial], dst: &[Monomial]) -> Matrix {
    let mut m = Matrix::zeros(dst.len(), src.len());
    for (j, mono) in src.iter().enumerate() {
        if let Ok(i) = dst.binary_search(mono) {
            m.set(i, j, Rational::one());
        }
    }
    m
}

fn place(m: &mut Matrix, block: &Matrix, r0: usize, c0: usize, scale: &Rational) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block.get(i, j);
            if !v.is_zero() {
                let cur = m.get(r0 + i, c0 + j) + &(v * scale);
                m.set(r0 + i, c0 + j, cur);
            }
        }
    }
}

/// Result of the odd-degree obstruction scan.
#[derive(Clone, Debug, Serialize)]
pub struct OddPi {
    pub degree: i64,
    pub rank: i64,
    pub order: usize,
    pub dimension: usize,
    /// Unresolvable obstructions found at each step `i`.
    pub per_slice: Vec<usize>,
    /// Representatives of `Γ^{k-3}` not in the image of `δ`.
    pub witnesses: Vec<PushforwardClass>,
}

/// Scan `∂C_i = D_i - i C_{i-1}` for `i = 0..N` over arbitrary targets `D` in
/// `Γ^{k-3}` and count the functionals that no choice of `C` can meet.
///
/// At step `i` the solver may still move `C_{i-1}` inside the space `A_{i-1}`
/// of changes that keep the earlier equations intact; with `r = 0` this is how
/// a constant term of `D_i` is absorbed. The obstruction at step `i` is the
/// cokernel of `[∂ | i·A_{i-1}]` on the target slice.
pub fn pi_odd_obstructions(k: i64, r: i64, order: usize) -> Result<OddPi> {
    if k.rem_euclid(2) != 1 {
        return usage(format!("pi_odd_obstructions needs an odd degree, got {k}"));
    }
    let mut per_slice = Vec::new();
    let mut witnesses = Vec::new();
    // Basis of A_{i-1}, as coordinate vectors in the slice of C_{i-1}.
    let mut adjust: Vec<Vec<Rational>> = Vec::new();
    let mut prev_src: Vec<Monomial> = Vec::new();
    for i in 0..=order {
        let src = slice_at(k - 1, i);
        let dst = slice_at(k - 3, i);
        let p = partial_block(r, &src, &dst);
        let mut cols: Vec<Vec<Rational>> = (0..p.cols()).map(|j| p.column(j)).collect();
        let ncols_p = cols.len();
        if i > 0 {
            let id = identity_block(&prev_src, &dst);
            for a in &adjust {
                let img = id.apply(a);
                cols.push(img.iter().map(|x| x * &Rational::from(i as i64)).collect());
            }
        }
        let combined = Matrix::from_columns(dst.len(), &cols);
        let missing = complement_of_span(&combined);
        per_slice.push(missing.len());
        for idx in missing {
            let mut coeffs = vec![GradedPoly::zero(Basis::Y); order + 1];
            coeffs[i] = GradedPoly::monomial(Basis::Y, dst[idx].clone(), Rational::one());
            witnesses.push(PushforwardClass::new_unchecked(k - 3, r, Basis::Y, coeffs));
        }
        // A_i: projections onto the C_i coordinates of ker [∂ | i·A_{i-1}].
        let ker = combined.kernel();
        let proj: Vec<Vec<Rational>> = ker.iter().map(|v| v[..ncols_p].to_vec()).collect();
        adjust = if proj.is_empty() {
            Vec::new()
        } else {
            let pm = Matrix::from_columns(ncols_p, &proj);
            let rr = pm.rref();
            // Column space basis: the pivot columns of the original.
            rr.pivots.iter().map(|&c| pm.column(c)).collect()
        };
        prev_src = src;
    }
    let dimension = per_slice.iter().sum();
    Ok(OddPi { degree: k, rank: r, order, dimension, per_slice, witnesses })
}

/// Where [`solve_delta`] got stuck.
#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    pub index: usize,
    pub residual: GradedPoly,
    /// The counit of the residual that could not be absorbed.
    pub epsilon: Rational,
}

#[derive(Clone, Debug)]
pub enum DeltaSolution {
    Solved(PushforwardClass),
    Obstructed(Obstruction),
}

/// Solve `δ(C) = D` for `C ∈ Γ^{k-1}` given `D ∈ Γ^{k-3}` of order `N`,
/// recursively in `i`, moving a constant into `C_{i-1}` when a constant term of
/// the residual cannot be hit by `∂`.
pub fn solve_delta(k: i64, r: i64, target: &PushforwardClass) -> Result<DeltaSolution> {
    if target.degree() != k - 3 || target.rank() != r {
        return usage(format!(
            "target must have degree {} and rank {r}, got degree {} and rank {}",
            k - 3,
            target.degree(),
            target.rank()
        ));
    }
    let target = target.to_basis(Basis::Y)?;
    let n = target.order();
    let der = Derivation::new(r);
    let mut sol: Vec<GradedPoly> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let src = slice_at(k - 1, i);
        let dst = slice_at(k - 3, i);
        let p = partial_block(r, &src, &dst);
        let prev = |sol: &Vec<GradedPoly>| {
            if i == 0 {
                GradedPoly::zero(Basis::Y)
            } else {
                sol[i - 1].scale(&Rational::from(i as i64))
            }
        };
        let mut residual = &target.coeff(i) - &prev(&sol);
        let mut x = p.solve(&coords(&residual, &dst)?);
        if x.is_none() && i > 0 && coeff_weight(k - 1, i - 1) == Some(0) {
            let eps = residual.constant_term();
            if !eps.is_zero() {
                let shift = &eps / &Rational::from(i as i64);
                sol[i - 1] = &sol[i - 1] + &GradedPoly::constant(Basis::Y, shift);
                residual = &target.coeff(i) - &prev(&sol);
                x = p.solve(&coords(&residual, &dst)?);
            }
        }
        match x {
            Some(v) => sol.push(from_coords(Basis::Y, &src, &v)),
            None => {
                let epsilon = residual.constant_term();
                return Ok(DeltaSolution::Obstructed(Obstruction { index: i, residual, epsilon }));
            }
        }
        debug_assert_eq!(der.partial(&sol[i]), &target.coeff(i) - &prev(&sol));
    }
    let c = PushforwardClass::new_unchecked(k - 1, r, Basis::Y, sol);
    if !delta(&c).agrees_up_to(&target, n) {
        return Err(Error::Invariant("δ of the recursive solution misses the target".into()));
    }
    Ok(DeltaSolution::Solved(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pushforward::{xi_gen, xi_pe};

    fn in_span(basis: &[PushforwardClass], e: &PushforwardClass) -> bool {
        let flat = |c: &PushforwardClass| -> Vec<Rational> {
            let mut v = Vec::new();
            for i in 0..=c.order() {
                let s = slice_at(c.degree(), i);
                v.extend(coords(&c.coeff(i).to_basis(Basis::Y).unwrap(), &s).unwrap());
            }
            v
        };
        let cols: Vec<Vec<Rational>> = basis.iter().map(flat).collect();
        let m = Matrix::from_columns(flat(e).len(), &cols);
        m.solve(&flat(e)).is_some()
    }

    #[test]
    fn even_examples() {
        let b = pi_even(2, 0, 0).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].coeff(0), GradedPoly::generator(Basis::Y, 1));
        let b = pi_even(2, 0, 2).unwrap();
        assert!(b.iter().all(PushforwardClass::is_kernel));
        assert!(in_span(&b, &xi_pe(0, 2)));
        let b = pi_even(0, 1, 1).unwrap();
        assert!(in_span(&b, &xi_gen(1, 1).unwrap()));
    }

    #[test]
    fn odd_examples() {
        let o = pi_odd_obstructions(3, 0, 4).unwrap();
        assert_eq!(o.dimension, 1);
        assert_eq!(o.witnesses[0].coeff(0), GradedPoly::one(Basis::Y));
        assert_eq!(pi_odd_obstructions(3, 1, 6).unwrap().dimension, 0);
        assert_eq!(pi_odd_obstructions(5, 0, 6).unwrap().dimension, 0);
        assert_eq!(pi_odd_obstructions(1, 0, 6).unwrap().dimension, 0);
        assert_eq!(pi_odd_obstructions(-1, 0, 6).unwrap().dimension, 0);
    }

    #[test]
    fn solve_examples() {
        let eta = |r| {
            let mut c = vec![GradedPoly::zero(Basis::Y); 3];
            c[0] = GradedPoly::one(Basis::Y);
            PushforwardClass::new(0, r, c).unwrap()
        };
        match solve_delta(3, 0, &eta(0)).unwrap() {
            DeltaSolution::Obstructed(o) => {
                assert_eq!(o.index, 0);
                assert!(o.epsilon.is_one());
            }
            DeltaSolution::Solved(_) => panic!("η should be obstructed"),
        }
        match solve_delta(3, 2, &eta(2)).unwrap() {
            DeltaSolution::Solved(c) => {
                let half: Rational = "1/2".parse().unwrap();
                assert_eq!(c.coeff(0), GradedPoly::generator(Basis::Y, 1).scale(&half));
            }
            DeltaSolution::Obstructed(_) => panic!("solvable for r=2"),
        }
        // k = 1, r = 0: the constant in D_1 is absorbed into C_0.
        let mut d = vec![GradedPoly::zero(Basis::Y); 3];
        d[1] = GradedPoly::one(Basis::Y);
        let target = PushforwardClass::new(-2, 0, d).unwrap();
        assert!(matches!(solve_delta(1, 0, &target).unwrap(), DeltaSolution::Solved(_)));
    }
}
