//! Graded polynomial rings `Q[y_1, y_2, ...]`, `Q[z_1, z_2, ...]` and the
//! bigraded ring `R = Q[z_0, z_1, ...]`.
//!
//! Generators `y_j` and `z_j` sit in cohomological degree `2j`. In `R` the
//! generator `z_j` has bidegree `(1, j)`. Monomials are ordered graded-lex:
//! first by weight `sum j * e_j`, then lexicographically on the exponent
//! vector with the smallest generator index most significant.

mod newton;
mod slice;

pub use newton::{y_in_z, z_in_y};
pub use slice::{
    bidegree_slice, coords, enumerate_slice, from_coords, slice_matrix, weight_slice, DegreeSpec, Operator,
    SliceMatrix,
};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numkernel::Rational;

/// Which generating set a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Chern-class generators `y_j = c_j`.
    Y,
    /// Chern-character generators `z_j = ch_j`.
    Z,
    /// The bigraded ring with the extra generator `z_0`.
    R,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::Y => "y",
            Basis::Z => "z",
            Basis::R => "R",
        }
    }

    fn from_tag(s: &str) -> Result<Self> {
        match s {
            "y" => Ok(Basis::Y),
            "z" => Ok(Basis::Z),
            "R" => Ok(Basis::R),
            other => Err(Error::Parse(format!("unknown basis tag {other:?}"))),
        }
    }

    fn var(self) -> &'static str {
        match self {
            Basis::Y => "y",
            Basis::Z | Basis::R => "z",
        }
    }
}

/// A monomial as a dense exponent vector indexed by generator, trailing zeros
/// trimmed. Index 0 is only populated in `R`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    weight: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let weight = exps.iter().enumerate().map(|(j, &e)| j as u32 * e).sum();
        Monomial { weight, exps }
    }

    /// `g_j^e`.
    pub fn power(j: usize, e: u32) -> Self {
        let mut exps = vec![0; j + 1];
        exps[j] = e;
        Monomial::from_exps(exps)
    }

    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let len = pairs.iter().map(|&(j, _)| j + 1).max().unwrap_or(0);
        let mut exps = vec![0; len];
        for &(j, e) in pairs {
            exps[j] += e;
        }
        Monomial::from_exps(exps)
    }

    /// Weighted degree `sum j * e_j`; the cohomological degree is twice this.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of generator factors `sum e_j`, counting `z_0`.
    pub fn count(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exp(&self, j: usize) -> u32 {
        self.exps.get(j).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Nonzero `(index, exponent)` pairs in increasing index order.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, &e)| (j, e))
    }

    pub fn max_index(&self) -> usize {
        self.exps.len().saturating_sub(1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n).map(|j| self.exp(j) + other.exp(j)).collect();
        Monomial { weight: self.weight + other.weight, exps }
    }

    /// Divide by one copy of `g_j`; `None` if `g_j` does not divide.
    pub fn remove_one(&self, j: usize) -> Option<Monomial> {
        if self.exp(j) == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[j] -= 1;
        Some(Monomial::from_exps(exps))
    }

    fn fmt_with(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, e) in self.factors() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{var}{j}")?;
            } else {
                write!(f, "{var}{j}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with("g", f)
    }
}

/// A sparse polynomial tagged with its basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    basis: Basis,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(basis: Basis) -> Self {
        GradedPoly { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::constant(basis, Rational::one())
    }

    pub fn constant(basis: Basis, c: Rational) -> Self {
        Self::monomial(basis, Monomial::one(), c)
    }

    pub fn monomial(basis: Basis, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(basis);
        p.add_term(m, c);
        p
    }

    /// The generator `g_j` of `basis`. In `Y` the conventions `y_0 = 1` and
    /// `y_j = 0` for `j < 0` apply; `Z` has no `z_0` (use [`GradedPoly::z0_as`]).
    pub fn generator(basis: Basis, j: i64) -> Self {
        match basis {
            Basis::Y if j == 0 => Self::one(basis),
            _ if j < 0 => Self::zero(basis),
            Basis::Z if j == 0 => panic!("z_0 is not a generator of the z-basis"),
            _ => Self::monomial(basis, Monomial::power(j as usize, 1), Rational::one()),
        }
    }

    /// `z_j` expressed in `basis` for `j >= 1`, with `z_0` read as the scalar
    /// `rank` outside `R`.
    pub fn z0_as(basis: Basis, j: i64, rank: i64) -> Self {
        match (basis, j) {
            (_, j) if j < 0 => Self::zero(basis),
            (Basis::R, _) => Self::generator(Basis::R, j),
            (_, 0) => Self::constant(basis, Rational::from(rank)),
            (Basis::Z, _) => Self::generator(Basis::Z, j),
            (Basis::Y, _) => z_in_y(j as usize),
        }
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(basis);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        if self.basis == Basis::Z {
            assert!(m.exp(0) == 0, "z_0 does not occur in the z-basis");
        }
        if self.basis == Basis::Y {
            assert!(m.exp(0) == 0, "y_0 does not occur as a variable");
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        GradedPoly {
            basis: self.basis,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        let mut out = Self::zero(self.basis);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.basis);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch(self.basis, other.basis))
        }
    }

    /// The common weight of all terms, or `None` for zero or inhomogeneous input.
    pub fn weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// True if every term has weight `w` (vacuously for zero).
    pub fn is_homogeneous_of(&self, w: i64) -> bool {
        self.terms.keys().all(|m| m.weight() as i64 == w)
    }

    /// The `(count, weight)` bidegree of a bihomogeneous element of `R`.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|m| (m.count(), m.weight()));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Largest generator index appearing.
    pub fn max_index(&self) -> usize {
        self.terms.keys().map(Monomial::max_index).max().unwrap_or(0)
    }

    /// Apply `f` to every monomial and sum the images scaled by the coefficients.
    pub fn map_monomials(&self, target: Basis, mut f: impl FnMut(&Monomial) -> GradedPoly) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let img = f(m);
            assert_eq!(img.basis, target, "monomial image in the wrong basis");
            for (m2, c2) in img.terms {
                out.add_term(m2, &c2 * c);
            }
        }
        out
    }

    /// Rewrite in another basis via the Newton identities. `R` only converts
    /// to itself.
    pub fn to_basis(&self, target: Basis) -> Result<Self> {
        if self.basis == target {
            return Ok(self.clone());
        }
        let table: fn(usize) -> GradedPoly = match (self.basis, target) {
            (Basis::Y, Basis::Z) => y_in_z,
            (Basis::Z, Basis::Y) => z_in_y,
            _ => {
                return Err(Error::Usage(format!(
                    "cannot convert between {:?} and {:?}",
                    self.basis, target
                )))
            }
        };
        Ok(self.map_monomials(target, |m| {
            let mut acc = GradedPoly::one(target);
            for (j, e) in m.factors() {
                acc = &acc * &table(j).pow(e);
            }
            acc
        }))
    }

    /// Specialise `z_0` to the scalar `r`, landing in the z-basis.
    pub fn specialize_z0(&self, r: i64) -> Result<Self> {
        if self.basis != Basis::R {
            return Err(Error::BasisMismatch(self.basis, Basis::R));
        }
        let r = Rational::from(r);
        Ok(self.map_monomials(Basis::Z, |m| {
            let e0 = m.exp(0);
            let mut exps = m.exps().to_vec();
            if !exps.is_empty() {
                exps[0] = 0;
            }
            GradedPoly::monomial(Basis::Z, Monomial::from_exps(exps), r.pow(e0))
        }))
    }

    /// Reinterpret a z-basis polynomial as an element of `R` without `z_0`.
    pub fn lift_to_r(&self) -> Result<Self> {
        if self.basis != Basis::Z {
            return Err(Error::BasisMismatch(self.basis, Basis::Z));
        }
        Ok(GradedPoly { basis: Basis::R, terms: self.terms.clone() })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serialises")
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                m.fmt_with(self.basis.var(), f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.basis.tag(), self)
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    /// Panics on a basis mismatch; use [`GradedPoly::try_add`] to recover.
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&Rational::from(-1))
    }
}

struct Exps<'a>(&'a Monomial);

impl Serialize for Exps<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (j, e) in self.0.factors() {
            map.serialize_entry(&j.to_string(), &e)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TermOut<'a> {
    coeff: &'a Rational,
    exps: Exps<'a>,
}

#[derive(Serialize)]
struct PolyOut<'a> {
    basis: &'static str,
    terms: Vec<TermOut<'a>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermIn {
    coeff: Rational,
    exps: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyIn {
    basis: String,
    terms: Vec<TermIn>,
}

impl Serialize for GradedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyOut {
            basis: self.basis.tag(),
            terms: self.terms.iter().map(|(m, c)| TermOut { coeff: c, exps: Exps(m) }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyIn::deserialize(d)?;
        let basis = Basis::from_tag(&raw.basis).map_err(D::Error::custom)?;
        let mut p = GradedPoly::zero(basis);
        for t in raw.terms {
            let mut pairs = Vec::new();
            for (k, e) in t.exps {
                let j: usize = k
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad generator index {k:?}")))?;
                if j == 0 && basis != Basis::R {
                    return Err(D::Error::custom("index 0 only exists in the R basis"));
                }
                if j > 4096 {
                    return Err(D::Error::custom("generator index too large"));
                }
                pairs.push((j, e));
            }
            p.add_term(Monomial::from_pairs(&pairs), t.coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn ordering_is_graded_lex() {
        let y3 = Monomial::power(3, 1);
        let y1y2 = Monomial::from_pairs(&[(1, 1), (2, 1)]);
        let y1c = Monomial::power(1, 3);
        assert!(y3 < y1y2 && y1y2 < y1c);
        assert!(Monomial::power(1, 1) < y3);
    }

    #[test]
    fn json_roundtrip_is_canonical() {
        let text = r#"{"basis":"y","terms":[{"coeff":"-3/2","exps":{"1":2}}]}"#;
        let p: GradedPoly = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), text);
        let wide = r#"{"basis":"z","terms":[{"coeff":"1","exps":{"2":1,"10":1}}]}"#;
        let p: GradedPoly = serde_json::from_str(wide).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), wide);
    }

    #[test]
    fn malformed_json_is_rejected() {
        for bad in [
            r#"{"basis":"w","terms":[]}"#,
            r#"{"basis":"y","terms":[{"coeff":"1/0","exps":{}}]}"#,
            r#"{"basis":"y","terms":[{"coeff":"1","exps":{"0":1}}]}"#,
            r#"{"basis":"y","terms":[{"coeff":"1","exps":{"a":1}}]}"#,
            r#"{"basis":"y"}"#,
        ] {
            assert!(serde_json::from_str::<GradedPoly>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn arithmetic_and_mismatch() {
        let y1 = GradedPoly::generator(Basis::Y, 1);
        let sq = &y1 * &y1;
        assert_eq!(sq.weight(), Some(2));
        assert_eq!((&sq - &sq).len(), 0);
        let z1 = GradedPoly::generator(Basis::Z, 1);
        assert!(matches!(y1.try_add(&z1), Err(Error::BasisMismatch(..))));
        assert_eq!(sq.scale(&q("1/2")).to_string(), "1/2*y1^2");
    }
}
