//! The derivation `∂`, the operators `γ` and `γ_r`, and the counit `ε`, with
//! slice-by-slice exactness checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::Matrix;
use crate::numkernel::{sign, Rational};
use crate::polyring::{
    from_coords, slice_matrix, Basis, DegreeSpec, GradedPoly, Monomial, Operator, SliceMatrix,
};

/// The derivation for a fixed rank `r`. The ring is read off the argument's
/// basis tag; for `R` the rank plays no role.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rank: i64,
}

impl Derivation {
    pub fn new(rank: i64) -> Self {
        Derivation { rank }
    }

    /// Image of a single generator `g_j`.
    fn of_generator(&self, basis: Basis, j: usize) -> GradedPoly {
        let r = self.rank;
        match basis {
            Basis::Y => {
                let c = Rational::from(r - j as i64 + 1);
                GradedPoly::generator(Basis::Y, j as i64 - 1).scale(&c)
            }
            Basis::Z if j == 1 => GradedPoly::constant(Basis::Z, Rational::from(r)),
            Basis::Z => GradedPoly::generator(Basis::Z, j as i64 - 1),
            Basis::R if j == 0 => GradedPoly::zero(Basis::R),
            Basis::R => GradedPoly::generator(Basis::R, j as i64 - 1),
        }
    }

    pub fn partial_monomial(&self, basis: Basis, m: &Monomial) -> GradedPoly {
        let mut out = GradedPoly::zero(basis);
        for (j, e) in m.factors() {
            let rest = m.remove_one(j).expect("factor divides");
            let d = self.of_generator(basis, j);
            let term = &GradedPoly::monomial(basis, rest, Rational::from(e as i64)) * &d;
            out = &out + &term;
        }
        out
    }

    pub fn partial(&self, p: &GradedPoly) -> GradedPoly {
        p.map_monomials(p.basis(), |m| self.partial_monomial(p.basis(), m))
    }

    pub fn partial_pow(&self, p: &GradedPoly, k: usize) -> GradedPoly {
        let mut q = p.clone();
        for _ in 0..k {
            if q.is_zero() {
                break;
            }
            q = self.partial(&q);
        }
        q
    }

    /// `γ = Σ_{k≥0} (-1)^k z_k ∂^k` on `R`; on `Y`/`Z` this is `γ_r`, where the
    /// `k = 0` term is `r·id`.
    pub fn gamma(&self, p: &GradedPoly) -> GradedPoly {
        let basis = p.basis();
        let mut out = GradedPoly::zero(basis);
        let mut d = p.clone();
        let mut k = 0i64;
        while !d.is_zero() {
            let zk = GradedPoly::z0_as(basis, k, self.rank);
            out = &out + &(&zk * &d).scale(&Rational::from(sign(k)));
            d = self.partial(&d);
            k += 1;
        }
        out
    }
}

/// The constant term.
pub fn counit(p: &GradedPoly) -> Rational {
    p.constant_term()
}

/// Per-slice record of an exactness check.
#[derive(Clone, Debug, Serialize)]
pub struct SliceReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    pub e: i64,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// A vector showing where a check fails.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub kind: String,
    pub element: GradedPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub check: String,
    pub range: serde_json::Value,
    pub slices: Vec<SliceReport>,
    pub pass: bool,
}

/// A vector in `ker b` outside `im a`, for composable `a` then `b`.
fn homology_witness(a: &Matrix, b: &Matrix, basis: Basis, mons: &[Monomial]) -> Option<GradedPoly> {
    let image_rank = a.rank();
    for v in b.kernel() {
        let mut cols: Vec<Vec<Rational>> = (0..a.cols()).map(|j| a.column(j)).collect();
        cols.push(v.clone());
        if Matrix::from_columns(a.rows(), &cols).rank() > image_rank {
            return Some(from_coords(basis, mons, &v));
        }
    }
    None
}

/// Outcome of checking `A --a--> B --b--> C --c--> D -> 0` exact at `B`, `C`, `D`.
fn three_step(a: &SliceMatrix, b: &SliceMatrix, c: &SliceMatrix) -> (Vec<usize>, Vec<usize>, bool, Option<Witness>) {
    let dims = vec![a.domain.len(), b.domain.len(), c.domain.len(), c.codomain.len()];
    let (ra, rb, rc) = (a.rank(), b.rank(), c.rank());
    let complex = b.matrix.mul(&a.matrix).is_zero() && c.matrix.mul(&b.matrix).is_zero();
    let at_b = ra + rb == dims[1];
    let at_c = rb + rc == dims[2];
    let at_d = rc == dims[3];
    let pass = complex && at_b && at_c && at_d;
    let witness = if pass {
        None
    } else if !at_b {
        homology_witness(&a.matrix, &b.matrix, b.basis, &b.domain)
            .map(|element| Witness { kind: "ker_not_image_at_middle".into(), element })
    } else if !at_c {
        homology_witness(&b.matrix, &c.matrix, c.basis, &c.domain)
            .map(|element| Witness { kind: "ker_not_image_at_target".into(), element })
    } else {
        None
    };
    (dims, vec![ra, rb, rc], pass, witness)
}

/// Exactness of `R^{d-1,e} → R^{d,e} → R^{d,e-1} → Q[0]^{d,e-1} → 0` for all
/// `(d,e) ≠ (0,0)` in the box `[0,dmax] × [0,emax]`.
pub fn check_exactness_r(dmax: i64, emax: i64) -> ExactnessReport {
    let pairs = (0..=dmax).flat_map(|d| (0..=emax).map(move |e| (d, e))).collect();
    exactness_r_on(pairs, serde_json::json!({ "dmax": dmax, "emax": emax }))
}

/// [`check_exactness_r`] on the triangle `d + e ≤ total`.
pub fn check_exactness_r_total(total: i64) -> ExactnessReport {
    let pairs = (0..=total).flat_map(|d| (0..=total - d).map(move |e| (d, e))).collect();
    exactness_r_on(pairs, serde_json::json!({ "total": total }))
}

fn exactness_r_on(pairs: Vec<(i64, i64)>, range: serde_json::Value) -> ExactnessReport {
    let pairs: Vec<(i64, i64)> = pairs.into_iter().filter(|&p| p != (0, 0)).collect();
    let slices: Vec<SliceReport> = pairs
        .par_iter()
        .map(|&(d, e)| {
            let g = slice_matrix(&Operator::Gamma, 0, Basis::R, DegreeSpec::Bidegree(d - 1, e)).expect("gamma slice");
            let p = slice_matrix(&Operator::Partial, 0, Basis::R, DegreeSpec::Bidegree(d, e)).expect("partial slice");
            let c = slice_matrix(&Operator::Counit, 0, Basis::R, DegreeSpec::Bidegree(d, e - 1)).expect("counit slice");
            let (dims, ranks, pass, witness) = three_step(&g, &p, &c);
            SliceReport { r: None, d: Some(d), e, dims, ranks, pass, witness }
        })
        .collect();
    let pass = slices.iter().all(|s| s.pass);
    ExactnessReport { check: "exactness_R".into(), range, slices: first_witness_only(slices), pass }
}

fn first_witness_only(mut slices: Vec<SliceReport>) -> Vec<SliceReport> {
    let mut seen = false;
    for s in &mut slices {
        if s.witness.is_some() {
            if seen {
                s.witness = None;
            }
            seen = true;
        }
    }
    slices
}

/// Exactness of `H^{2e} --γ_r--> H^{2e} --∂--> H^{2e-2} --ε--> Q` on the
/// fiber cohomology in the z-basis, for weights `0 ≤ e ≤ kmax`.
///
/// Each slice checks `im γ_r = ker ∂` and `im ∂ = ker ε`, where `ε` only
/// lands in `Q` when `r = 0` and the target is the constants; for `r ≠ 0` the
/// last map is zero, so the second condition reads "∂ is onto".
pub fn check_exactness_f(r: i64, kmax: i64) -> ExactnessReport {
    let slices: Vec<SliceReport> = (0..=kmax)
        .into_par_iter()
        .map(|e| exactness_f_slice(r, e))
        .collect();
    let pass = slices.iter().all(|s| s.pass);
    ExactnessReport {
        check: "exactness_F".into(),
        range: serde_json::json!({ "r": r, "kmax": kmax }),
        slices: first_witness_only(slices),
        pass,
    }
}

fn exactness_f_slice(r: i64, e: i64) -> SliceReport {
    let deg = DegreeSpec::Degree(2 * e);
    let g = slice_matrix(&Operator::Gamma, r, Basis::Z, deg).expect("gamma slice");
    let p = slice_matrix(&Operator::Partial, r, Basis::Z, deg).expect("partial slice");
    let mut c = slice_matrix(&Operator::Counit, r, Basis::Z, DegreeSpec::Degree(2 * e - 2)).expect("counit slice");
    if r != 0 {
        c.codomain.clear();
        c.matrix = Matrix::zeros(0, c.domain.len());
    }
    let (dims, ranks, pass, witness) = three_step(&g, &p, &c);
    SliceReport { r: Some(r), d: None, e, dims, ranks, pass, witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(j: i64) -> GradedPoly {
        GradedPoly::generator(Basis::Y, j)
    }

    #[test]
    fn partial_examples() {
        let d0 = Derivation::new(0);
        assert_eq!(d0.partial(&y(2)), -&y(1));
        let d3 = Derivation::new(3);
        let lhs = d3.partial(&(&y(1) * &y(2)));
        let rhs = &y(2).scale(&Rational::from(3)) + &(&y(1) * &y(1)).scale(&Rational::from(2));
        assert_eq!(lhs, rhs);
        assert!(d3.partial(&GradedPoly::one(Basis::Y)).is_zero());
    }

    #[test]
    fn gamma_examples() {
        let d = Derivation::new(0);
        let one = GradedPoly::one(Basis::R);
        assert_eq!(d.gamma(&one), GradedPoly::generator(Basis::R, 0));
        assert!(d.gamma(&GradedPoly::generator(Basis::R, 1)).is_zero());
        let z1 = GradedPoly::generator(Basis::Z, 1);
        assert_eq!(d.gamma(&GradedPoly::generator(Basis::Z, 2)), -&(&z1 * &z1));
    }

    #[test]
    fn small_exactness_slices() {
        let rep = check_exactness_r(2, 2);
        assert!(rep.pass);
        let s11 = rep.slices.iter().find(|s| s.d == Some(1) && s.e == 1).unwrap();
        assert_eq!(s11.dims, vec![0, 1, 1, 0]);
        assert_eq!(s11.ranks, vec![0, 1, 0]);
    }
}
