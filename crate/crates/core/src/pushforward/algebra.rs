//! The twisted algebra `S = Q[[t]] ⋊ Q[z_1, z_2, ...]` and its action on classes.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::class::PushforwardClass;
use super::ops::{mult_by, t_action};
use crate::derivation::Derivation;
use crate::error::{usage, Error, Result};
use crate::numkernel::binom_q;
use crate::polyring::{Basis, GradedPoly};

/// `Σ_i f_i t^i` with z-basis coefficients written to the left of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement {
    rank: i64,
    coeffs: Vec<GradedPoly>,
}

impl SElement {
    pub fn new(rank: i64, coeffs: Vec<GradedPoly>) -> Result<Self> {
        for f in &coeffs {
            if f.basis() != Basis::Z {
                return Err(Error::BasisMismatch(f.basis(), Basis::Z));
            }
        }
        Ok(SElement { rank, coeffs })
    }

    pub fn zero(rank: i64) -> Self {
        SElement { rank, coeffs: Vec::new() }
    }

    pub fn one(rank: i64) -> Self {
        Self::from_poly(rank, GradedPoly::one(Basis::Z), 0)
    }

    /// `f t^i`.
    pub fn from_poly(rank: i64, f: GradedPoly, i: usize) -> Self {
        assert_eq!(f.basis(), Basis::Z, "S coefficients are z-basis polynomials");
        let mut coeffs = vec![GradedPoly::zero(Basis::Z); i + 1];
        coeffs[i] = f;
        SElement { rank, coeffs }
    }

    /// `t^i`.
    pub fn t_pow(rank: i64, i: usize) -> Self {
        Self::from_poly(rank, GradedPoly::one(Basis::Z), i)
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GradedPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| GradedPoly::zero(Basis::Z))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GradedPoly::is_zero)
    }

    /// Drop trailing zero coefficients.
    pub fn normalized(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(GradedPoly::is_zero) {
            coeffs.pop();
        }
        SElement { rank: self.rank, coeffs }
    }

    /// The degree `2 wt(f_i) - 2i` shared by all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut deg = None;
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let w = f.weight().ok_or_else(|| Error::Usage(format!("coefficient of t^{i} is not homogeneous")))?;
            let d = 2 * w as i64 - 2 * i as i64;
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return usage("S-element is not homogeneous"),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return usage(format!("rank mismatch {} vs {}", self.rank, other.rank));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Ok(SElement { rank: self.rank, coeffs }.normalized())
    }
}

/// `Σp_i t^i · Σq_j t^j = Σ_k Σ_{i,j} C(i, k-j) p_i ∂^{i+j-k}(q_j) t^k`, from
/// `t q = q t + ∂q`. Both factors are polynomials in `t`, so the product is exact.
pub fn s_multiply(u: &SElement, v: &SElement) -> Result<SElement> {
    if u.rank != v.rank {
        return usage(format!("rank mismatch {} vs {}", u.rank, v.rank));
    }
    let d = Derivation::new(u.rank);
    let len = (u.coeffs.len() + v.coeffs.len()).saturating_sub(1);
    let mut coeffs = vec![GradedPoly::zero(Basis::Z); len];
    for (i, p) in u.coeffs.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in v.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let mut dq = q.clone();
            // m = i + j - k runs over the derivative order, k = i + j - m.
            for m in 0..=i {
                if dq.is_zero() {
                    break;
                }
                let k = i + j - m;
                let c = binom_q(i as i64, (k - j) as i64);
                coeffs[k] = &coeffs[k] + &(p * &dq).scale(&c);
                dq = d.partial(&dq);
            }
        }
    }
    Ok(SElement { rank: u.rank, coeffs }.normalized())
}

/// `(Σ f_i t^i)(e) = Σ_i f_i(t^i(e))`. The output order is
/// `min_i (N + i - wt f_i)` over nonzero terms.
pub fn s_act(u: &SElement, e: &PushforwardClass) -> Result<PushforwardClass> {
    if u.rank != e.rank() {
        return usage(format!("rank mismatch {} vs {}", u.rank, e.rank()));
    }
    let Some(deg) = u.degree()? else {
        return Ok(PushforwardClass::zero(e.degree(), e.rank(), e.basis(), e.order()));
    };
    let n = e.order() as i64;
    let required = u
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .map(|(i, f)| f.weight().unwrap() as i64 - i as i64)
        .max()
        .unwrap_or(0);
    if n - required < 0 {
        return Err(Error::InsufficientOrder { required, available: n });
    }
    let mut acc = PushforwardClass::zero(e.degree() + deg, e.rank(), e.basis(), (n - required) as usize);
    let mut ti = e.clone();
    for (i, f) in u.coeffs.iter().enumerate() {
        if i > 0 {
            ti = t_action(&ti);
        }
        if f.is_zero() {
            continue;
        }
        acc = acc.try_add(&mult_by(f, &ti)?)?;
    }
    Ok(acc)
}

/// [`s_act`] with a demanded output order.
pub fn s_act_to(u: &SElement, e: &PushforwardClass, order: usize) -> Result<PushforwardClass> {
    let out = s_act(u, e)?;
    if out.order() < order {
        let deficit = (order - out.order()) as i64;
        return Err(Error::InsufficientOrder { required: e.order() as i64 + deficit, available: e.order() as i64 });
    }
    Ok(out.truncate(order))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SJson {
    rank: i64,
    coeffs: Vec<GradedPoly>,
}

impl Serialize for SElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SJson { rank: self.rank, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SJson::deserialize(d)?;
        SElement::new(raw.rank, raw.coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pushforward::{xi_gen, xi_pe, zj_action};

    fn z(j: i64) -> GradedPoly {
        GradedPoly::generator(Basis::Z, j)
    }

    #[test]
    fn t_times_z2() {
        let t = SElement::t_pow(0, 1);
        let z2 = SElement::from_poly(0, z(2), 0);
        let p = s_multiply(&t, &z2).unwrap();
        assert_eq!(p.coeffs(), &[z(1), z(2)]);
        let one = SElement::one(0);
        assert_eq!(s_multiply(&one, &z2).unwrap(), z2);
        let a = s_multiply(&s_multiply(&t, &z2).unwrap(), &one).unwrap();
        let b = s_multiply(&t, &s_multiply(&z2, &one).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn action_examples() {
        let pe = xi_pe(0, 4);
        assert_eq!(s_act(&SElement::one(0), &pe).unwrap(), pe);
        let g = xi_gen(1, 2).unwrap();
        let z1 = SElement::from_poly(1, z(1), 0);
        assert_eq!(s_act(&z1, &g).unwrap(), zj_action(1, &g).unwrap());
        let z3 = SElement::from_poly(1, z(3), 0);
        assert!(matches!(s_act(&z3, &g), Err(Error::InsufficientOrder { .. })));
    }
}
