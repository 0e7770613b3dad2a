//! Truncated elements `Σ C_i ⊠ x_i` of `Γ^k`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::derivation::Derivation;
use crate::error::{usage, Error, Result};
use crate::numkernel::{factorial, sign, Rational};
use crate::polyring::{Basis, GradedPoly};

/// `Σ_{i=0}^{N} C_i ⊠ x_i` of degree `k`, with `deg C_i = 2i + k` and
/// `|x_i| = -2i`. Coefficients are stored in C-coordinates and share one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardClass {
    degree: i64,
    rank: i64,
    basis: Basis,
    coeffs: Vec<GradedPoly>,
}

/// Weight `(2i + k) / 2` of the i-th coefficient, `None` when the degree is
/// odd (so the coefficient must vanish).
pub fn coeff_weight(degree: i64, i: usize) -> Option<i64> {
    let d = 2 * i as i64 + degree;
    (d.rem_euclid(2) == 0).then_some(d / 2)
}

impl PushforwardClass {
    pub fn new(degree: i64, rank: i64, coeffs: Vec<GradedPoly>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return usage("a class needs at least the coefficient C_0");
        };
        let basis = first.basis();
        if basis == Basis::R {
            return usage("class coefficients live in the y- or z-basis, not R");
        }
        for (i, c) in coeffs.iter().enumerate() {
            if c.basis() != basis {
                return Err(Error::BasisMismatch(basis, c.basis()));
            }
            let ok = match coeff_weight(degree, i) {
                Some(w) => c.is_homogeneous_of(w),
                None => c.is_zero(),
            };
            if !ok {
                return usage(format!("C_{i} is not homogeneous of degree {}", 2 * i as i64 + degree));
            }
        }
        Ok(PushforwardClass { degree, rank, basis, coeffs })
    }

    pub(crate) fn new_unchecked(degree: i64, rank: i64, basis: Basis, coeffs: Vec<GradedPoly>) -> Self {
        debug_assert!(PushforwardClass::new(degree, rank, coeffs.clone()).is_ok());
        PushforwardClass { degree, rank, basis, coeffs }
    }

    pub fn zero(degree: i64, rank: i64, basis: Basis, order: usize) -> Self {
        PushforwardClass { degree, rank, basis, coeffs: vec![GradedPoly::zero(basis); order + 1] }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    /// `C_i`, zero beyond the stored order.
    pub fn coeff(&self, i: usize) -> GradedPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| GradedPoly::zero(self.basis))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GradedPoly::is_zero)
    }

    /// The δ-kernel condition `∂C_0 = 0`, `∂C_i = -i C_{i-1}` up to the order.
    pub fn is_kernel(&self) -> bool {
        self.kernel_defect().is_none()
    }

    /// First index where the kernel condition fails.
    pub fn kernel_defect(&self) -> Option<usize> {
        let d = Derivation::new(self.rank);
        (0..self.coeffs.len()).find(|&i| {
            let lhs = d.partial(&self.coeffs[i]);
            let rhs = if i == 0 {
                GradedPoly::zero(self.basis)
            } else {
                self.coeffs[i - 1].scale(&Rational::from(-(i as i64)))
            };
            lhs != rhs
        })
    }

    pub fn to_basis(&self, target: Basis) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.to_basis(target)).collect::<Result<Vec<_>>>()?;
        Ok(PushforwardClass { degree: self.degree, rank: self.rank, basis: target, coeffs })
    }

    /// Keep `C_0..C_n`; `n` must not exceed the current order.
    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.order(), "cannot extend a truncated class");
        PushforwardClass { coeffs: self.coeffs[..=n].to_vec(), ..self.clone() }
    }

    /// Agreement on `C_0..C_n` after converting to a common basis.
    pub fn agrees_up_to(&self, other: &Self, n: usize) -> bool {
        if self.degree != other.degree || self.rank != other.rank {
            return false;
        }
        (0..=n).all(|i| {
            let a = self.coeff(i);
            let b = other.coeff(i).to_basis(self.basis).expect("y/z conversion");
            a == b
        })
    }

    /// Sum, truncated to the smaller order.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree || self.rank != other.rank {
            return usage(format!(
                "cannot add classes of degree/rank ({}, {}) and ({}, {})",
                self.degree, self.rank, other.degree, other.rank
            ));
        }
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|i| Ok(&self.coeffs[i] + &other.coeffs[i].to_basis(self.basis)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(PushforwardClass { coeffs, ..self.clone() })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PushforwardClass { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(), ..self.clone() }
    }

    /// P-coordinates `P_i = (-1)^i C_i / i!`, in which the kernel condition
    /// reads `∂P_i = P_{i-1}`.
    pub fn p_coordinates(&self) -> Vec<GradedPoly> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let f = Rational::new(sign(i as i64), factorial(i as u32)).expect("nonzero");
                c.scale(&f)
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassJson {
    degree: i64,
    rank: i64,
    order: usize,
    coeffs: Vec<GradedPoly>,
}

impl Serialize for PushforwardClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassJson { degree: self.degree, rank: self.rank, order: self.order(), coeffs: self.coeffs.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PushforwardClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ClassJson::deserialize(d)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        PushforwardClass::new(raw.degree, raw.rank, raw.coeffs).map_err(D::Error::custom)
    }
}
