//! Finite-dimensional homogeneous slices and matrices of linear operators on them.

use super::{Basis, GradedPoly, Monomial};
use crate::derivation::Derivation;
use crate::error::{usage, Error, Result};
use crate::linalg::Matrix;
use crate::numkernel::Rational;

/// Which slice to enumerate: a cohomological degree for `Y`/`Z`, a bidegree
/// `(count, weight)` for `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeSpec {
    Degree(i64),
    Bidegree(i64, i64),
}

/// Named degree-homogeneous operators with a known slice matrix.
#[derive(Clone, Debug)]
pub enum Operator {
    Identity,
    Partial,
    Gamma,
    Counit,
    MulBy(GradedPoly),
}

/// Matrix of a linear map between two slices, columns indexed by the domain
/// monomials.
#[derive(Clone, Debug)]
pub struct SliceMatrix {
    pub basis: Basis,
    pub domain: Vec<Monomial>,
    pub codomain: Vec<Monomial>,
    pub matrix: Matrix,
}

fn partitions(n: u32, max_part: u32, max_count: Option<u32>, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    if max_count == Some(cur.len() as u32) {
        return;
    }
    for p in (1..=max_part.min(n)).rev() {
        cur.push(p);
        partitions(n - p, p, max_count, out, cur);
        cur.pop();
    }
}

fn parts_to_exps(parts: &[u32], z0: u32) -> Monomial {
    let len = parts.first().map_or(1, |&p| p as usize + 1);
    let mut exps = vec![0u32; len];
    exps[0] = z0;
    for &p in parts {
        exps[p as usize] += 1;
    }
    Monomial::from_exps(exps)
}

/// Monomials of weight `w` in `Y`/`Z`, empty for `w < 0`, in graded-lex order.
pub fn weight_slice(w: i64) -> Vec<Monomial> {
    if w < 0 {
        return Vec::new();
    }
    let mut parts = Vec::new();
    partitions(w as u32, w as u32, None, &mut parts, &mut Vec::new());
    let mut out: Vec<Monomial> = parts.iter().map(|p| parts_to_exps(p, 0)).collect();
    out.sort();
    out
}

/// Monomials of `R` in bidegree `(d, e)`, in graded-lex order.
pub fn bidegree_slice(d: i64, e: i64) -> Vec<Monomial> {
    if d < 0 || e < 0 {
        return Vec::new();
    }
    let mut parts = Vec::new();
    partitions(e as u32, e as u32, Some(d as u32), &mut parts, &mut Vec::new());
    let mut out: Vec<Monomial> =
        parts.iter().map(|p| parts_to_exps(p, d as u32 - p.len() as u32)).collect();
    out.sort();
    out
}

/// Monomial basis of a homogeneous slice. Odd cohomological degrees are a
/// usage error; negative degrees give the empty slice.
pub fn enumerate_slice(basis: Basis, spec: DegreeSpec) -> Result<Vec<Monomial>> {
    match (basis, spec) {
        (Basis::Y | Basis::Z, DegreeSpec::Degree(k)) => {
            if k.rem_euclid(2) != 0 {
                return usage(format!("odd degree {k} has no polynomial slice"));
            }
            Ok(weight_slice(k.div_euclid(2)))
        }
        (Basis::R, DegreeSpec::Bidegree(d, e)) => Ok(bidegree_slice(d, e)),
        (b, s) => usage(format!("degree spec {s:?} does not apply to basis {b:?}")),
    }
}

fn slice_of(basis: Basis, spec: DegreeSpec) -> Vec<Monomial> {
    match spec {
        DegreeSpec::Degree(k) => weight_slice(k.div_euclid(2)),
        DegreeSpec::Bidegree(d, e) => {
            debug_assert_eq!(basis, Basis::R);
            bidegree_slice(d, e)
        }
    }
}

impl SliceMatrix {
    /// Tabulate `images[j]` (the image of `domain[j]`) against `codomain`.
    pub fn from_images(
        basis: Basis,
        domain: Vec<Monomial>,
        codomain: Vec<Monomial>,
        images: &[GradedPoly],
    ) -> Result<Self> {
        let cols = images
            .iter()
            .map(|p| coords(p, &codomain))
            .collect::<Result<Vec<_>>>()?;
        let matrix = Matrix::from_columns(codomain.len(), &cols);
        Ok(SliceMatrix { basis, domain, codomain, matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Coordinates of `p` in the monomial list `basis`; a term outside it is an
/// invariant violation.
pub fn coords(p: &GradedPoly, basis: &[Monomial]) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in p.terms() {
        let idx = basis
            .binary_search(m)
            .map_err(|_| Error::Invariant(format!("term {m:?} outside the target slice")))?;
        v[idx] = c.clone();
    }
    Ok(v)
}

/// The polynomial with coordinates `v` in the monomial list `basis`.
pub fn from_coords(poly_basis: Basis, basis: &[Monomial], v: &[Rational]) -> GradedPoly {
    GradedPoly::from_terms(poly_basis, basis.iter().cloned().zip(v.iter().cloned()))
}

/// Matrix of `op` on the slice `spec` of `basis`, with `rank` entering the
/// derivation and `gamma`.
pub fn slice_matrix(op: &Operator, rank: i64, basis: Basis, spec: DegreeSpec) -> Result<SliceMatrix> {
    let domain = enumerate_slice(basis, spec)?;
    let der = Derivation::new(rank);
    let is_r = basis == Basis::R;
    let shift = |dd: i64, de: i64| match spec {
        DegreeSpec::Degree(k) => DegreeSpec::Degree(k + 2 * de),
        DegreeSpec::Bidegree(d, e) => DegreeSpec::Bidegree(d + dd, e + de),
    };
    let is_zero_degree = match spec {
        DegreeSpec::Degree(k) => k == 0,
        DegreeSpec::Bidegree(d, e) => d == 0 && e == 0,
    };
    let (target, images): (Vec<Monomial>, Vec<GradedPoly>) = match op {
        Operator::Identity => (
            domain.clone(),
            domain.iter().map(|m| GradedPoly::monomial(basis, m.clone(), Rational::one())).collect(),
        ),
        Operator::Partial => (
            slice_of(basis, shift(0, -1)),
            domain.iter().map(|m| der.partial_monomial(basis, m)).collect(),
        ),
        Operator::Gamma => (
            slice_of(basis, if is_r { shift(1, 0) } else { spec }),
            domain
                .iter()
                .map(|m| der.gamma(&GradedPoly::monomial(basis, m.clone(), Rational::one())))
                .collect(),
        ),
        Operator::Counit => (
            if is_zero_degree { vec![Monomial::one()] } else { Vec::new() },
            domain
                .iter()
                .map(|m| {
                    let c = if m.is_one() { Rational::one() } else { Rational::zero() };
                    GradedPoly::constant(basis, c)
                })
                .collect(),
        ),
        Operator::MulBy(f) => {
            if f.basis() != basis {
                return Err(Error::BasisMismatch(f.basis(), basis));
            }
            let delta = if is_r {
                let (d, e) = f.bidegree().ok_or_else(|| Error::Usage("multiplier not bihomogeneous".into()))?;
                shift(d as i64, e as i64)
            } else {
                let w = f.weight().ok_or_else(|| Error::Usage("multiplier not homogeneous".into()))?;
                shift(0, w as i64)
            };
            (
                slice_of(basis, delta),
                domain
                    .iter()
                    .map(|m| &GradedPoly::monomial(basis, m.clone(), Rational::one()) * f)
                    .collect(),
            )
        }
    };
    SliceMatrix::from_images(basis, domain, target, &images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slices() {
        let s = enumerate_slice(Basis::Y, DegreeSpec::Degree(6)).unwrap();
        let names: Vec<String> =
            s.iter().map(|m| GradedPoly::monomial(Basis::Y, m.clone(), Rational::one()).to_string()).collect();
        assert_eq!(names, ["y3", "y1*y2", "y1^3"]);
        assert!(enumerate_slice(Basis::Y, DegreeSpec::Degree(3)).is_err());
        assert!(enumerate_slice(Basis::Y, DegreeSpec::Degree(-2)).unwrap().is_empty());
        assert_eq!(bidegree_slice(2, 3).len(), 2);
        assert_eq!(bidegree_slice(3, 0).len(), 1);
        assert_eq!(bidegree_slice(0, 0).len(), 1);
        assert_eq!(bidegree_slice(0, 1).len(), 0);
        assert_eq!(weight_slice(10).len(), 42);
    }

    #[test]
    fn partial_matrix_shape() {
        let m = slice_matrix(&Operator::Partial, 0, Basis::Z, DegreeSpec::Degree(4)).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (1, 2));
        assert_eq!(m.rank(), 1);
    }
}
