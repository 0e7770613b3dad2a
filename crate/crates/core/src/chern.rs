//! Cohomology of a trivial bundle: polynomials in fiber variables `ξ` and free
//! Chern symbols `c_a(ϑ)` of formal K-classes, with twisted Chern classes, the
//! `⋄` action and the projective Euler pushforward.
//!
//! Every `c_a(ϑ)` with `a ≥ 1` is an independent generator, so identities
//! checked here hold as polynomial identities in the symbols.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::numkernel::{binom_q, sign, Rational};
use crate::polyring::{Basis, GradedPoly};

/// A generator of the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Xi(usize),
    Chern { symbol: usize, index: u32 },
}

impl Var {
    /// Half the cohomological degree.
    pub fn weight(self) -> u32 {
        match self {
            Var::Xi(_) => 1,
            Var::Chern { index, .. } => index,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChernMonomial(BTreeMap<Var, u32>);

impl ChernMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(v, e);
        }
        ChernMonomial(m)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.weight() * e).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (v, e) in &other.0 {
            *m.entry(*v).or_insert(0) += e;
        }
        ChernMonomial(m)
    }

    /// Split off the power of `v`.
    pub fn split(&self, v: Var) -> (u32, Self) {
        let mut m = self.0.clone();
        let e = m.remove(&v).unwrap_or(0);
        (e, ChernMonomial(m))
    }
}

/// A polynomial over `Q`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChernPoly {
    terms: BTreeMap<ChernMonomial, Rational>,
}

impl ChernPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(ChernMonomial::one(), c)
    }

    pub fn monomial(m: ChernMonomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(ChernMonomial::var_pow(v, 1), Rational::one())
    }

    /// `c_a` of a symbol, with `c_0 = 1` and `c_a = 0` for `a < 0`.
    pub fn chern_symbol(symbol: usize, a: i64) -> Self {
        match a {
            a if a < 0 => Self::zero(),
            0 => Self::one(),
            a => Self::var(Var::Chern { symbol, index: a as u32 }),
        }
    }

    pub fn add_term(&mut self, m: ChernMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChernMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ChernMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ChernPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Largest weight of a term, `None` for zero.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(ChernMonomial::weight).max()
    }

    /// The part of weight `w`.
    pub fn weight_part(&self, w: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.weight() == w).map(|(m, c)| (m.clone(), c.clone())).collect();
        ChernPoly { terms }
    }

    /// Apply `f` to every monomial and sum the scaled images.
    pub fn map_monomials(&self, mut f: impl FnMut(&ChernMonomial) -> ChernPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (m2, c2) in f(m).terms {
                out.add_term(m2, &c2 * c);
            }
        }
        out
    }

    fn mul_raw(&self, other: &Self, max_weight: u32) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.weight() + b.weight() <= max_weight {
                    out.add_term(a.mul(b), x * y);
                }
            }
        }
        out
    }
}

impl Add for &ChernPoly {
    type Output = ChernPoly;
    fn add(self, rhs: &ChernPoly) -> ChernPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &ChernPoly {
    type Output = ChernPoly;
    fn neg(self) -> ChernPoly {
        self.scale(&Rational::from(-1))
    }
}

impl Sub for &ChernPoly {
    type Output = ChernPoly;
    fn sub(self, rhs: &ChernPoly) -> ChernPoly {
        self + &(-rhs)
    }
}

/// A formal K-class with a declared (possibly negative) rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KSymbol {
    pub name: String,
    pub rank: i64,
}

/// `L_ξ^{⊗weight} ⊗ ϑ` for the fiber variable `fiber` and the symbol `ϑ`.
/// Weight 0 is the untwisted class and ignores `fiber`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationTerm {
    pub weight: i64,
    pub fiber: usize,
    pub symbol: usize,
}

/// A formal sum of twisted K-symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrientationExpr {
    pub terms: Vec<OrientationTerm>,
}

impl OrientationExpr {
    pub fn untwisted(symbol: usize) -> Self {
        OrientationExpr { terms: vec![OrientationTerm { weight: 0, fiber: 0, symbol }] }
    }

    pub fn twisted(symbol: usize, fiber: usize, weight: i64) -> Self {
        OrientationExpr { terms: vec![OrientationTerm { weight, fiber, symbol }] }
    }

    pub fn plus(mut self, other: &OrientationExpr) -> Self {
        self.terms.extend(other.terms.iter().copied());
        self
    }

    pub fn rank(&self, ring: &ChernRing) -> i64 {
        self.terms.iter().map(|t| ring.symbols[t.symbol].rank).sum()
    }

    /// Drop every twist by `fiber`.
    pub fn untwisted_in(&self, fiber: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| if t.fiber == fiber { OrientationTerm { weight: 0, ..*t } } else { *t })
            .collect();
        OrientationExpr { terms }
    }
}

/// Fiber variables, K-symbols and the weight cutoff `D` (degree `2D`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernRing {
    fibers: Vec<String>,
    symbols: Vec<KSymbol>,
    cutoff: u32,
}

impl ChernRing {
    pub fn new(fibers: Vec<String>, symbols: Vec<KSymbol>, cutoff: u32) -> Self {
        ChernRing { fibers, symbols, cutoff }
    }

    /// One fiber variable `ξ` and one symbol `ϑ` of rank `r`.
    pub fn single(rank: i64, cutoff: u32) -> Self {
        Self::new(vec!["ξ".into()], vec![KSymbol { name: "ϑ".into(), rank }], cutoff)
    }

    pub fn fibers(&self) -> &[String] {
        &self.fibers
    }

    pub fn symbols(&self) -> &[KSymbol] {
        &self.symbols
    }

    /// The weight cutoff `D`.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn xi(&self, fiber: usize) -> ChernPoly {
        assert!(fiber < self.fibers.len(), "no fiber variable {fiber}");
        ChernPoly::var(Var::Xi(fiber))
    }

    pub fn chern_symbol(&self, symbol: usize, a: i64) -> ChernPoly {
        assert!(symbol < self.symbols.len(), "no K-symbol {symbol}");
        ChernPoly::chern_symbol(symbol, a)
    }

    /// Drop the terms above the cutoff.
    pub fn truncate(&self, p: &ChernPoly) -> ChernPoly {
        let terms = p.terms.iter().filter(|(m, _)| m.weight() <= self.cutoff).map(|(m, c)| (m.clone(), c.clone())).collect();
        ChernPoly { terms }
    }

    pub fn mul(&self, a: &ChernPoly, b: &ChernPoly) -> ChernPoly {
        a.mul_raw(b, self.cutoff)
    }

    pub fn pow(&self, a: &ChernPoly, e: u32) -> ChernPoly {
        (0..e).fold(self.truncate(&ChernPoly::one()), |acc, _| self.mul(&acc, a))
    }

    fn check_weight(&self, w: i64) -> Result<()> {
        if w > self.cutoff as i64 {
            return Err(Error::CutoffOverflow { degree: 2 * w, cutoff: 2 * self.cutoff as i64 });
        }
        Ok(())
    }

    fn check_expr(&self, o: &OrientationExpr) -> Result<()> {
        for t in &o.terms {
            if t.symbol >= self.symbols.len() || (t.weight != 0 && t.fiber >= self.fibers.len()) {
                return usage(format!("orientation term {t:?} refers outside the ring"));
            }
        }
        Ok(())
    }

    /// Graded pieces `c_0, ..., c_top` of one twisted term:
    /// `c_m(L^w ⊗ V) = Σ_ℓ C(rk V - ℓ, m - ℓ) (wξ)^{m-ℓ} c_ℓ(V)`.
    fn term_pieces(&self, t: &OrientationTerm, top: u32) -> Vec<ChernPoly> {
        let rk = self.symbols[t.symbol].rank;
        (0..=top as i64)
            .map(|m| {
                let mut out = ChernPoly::zero();
                for l in 0..=m {
                    let c = binom_q(rk - l, m - l);
                    if c.is_zero() {
                        continue;
                    }
                    let base = ChernPoly::chern_symbol(t.symbol, l);
                    if t.weight == 0 {
                        if l == m {
                            out = &out + &base.scale(&c);
                        }
                        continue;
                    }
                    let lw = Rational::from(t.weight).pow((m - l) as u32);
                    let xi = ChernMonomial::var_pow(Var::Xi(t.fiber), (m - l) as u32);
                    out = &out + &ChernPoly::monomial(xi, &c * &lw).mul_raw(&base, u32::MAX);
                }
                out
            })
            .collect()
    }

    /// Graded pieces `c_0, ..., c_top` of the whole sum, by the Whitney rule.
    fn pieces(&self, o: &OrientationExpr, top: u32) -> Vec<ChernPoly> {
        let mut acc: Vec<ChernPoly> = (0..=top).map(|m| if m == 0 { ChernPoly::one() } else { ChernPoly::zero() }).collect();
        for t in &o.terms {
            let p = self.term_pieces(t, top);
            acc = (0..=top as usize)
                .map(|m| {
                    let mut s = ChernPoly::zero();
                    for a in 0..=m {
                        if !acc[a].is_zero() && !p[m - a].is_zero() {
                            s = &s + &acc[a].mul_raw(&p[m - a], u32::MAX);
                        }
                    }
                    s
                })
                .collect();
        }
        acc
    }

    /// `c_j(o)`.
    pub fn chern_class(&self, o: &OrientationExpr, j: i64) -> Result<ChernPoly> {
        self.check_expr(o)?;
        if j < 0 {
            return Ok(ChernPoly::zero());
        }
        if j == 0 {
            return Ok(ChernPoly::one());
        }
        self.check_weight(j)?;
        Ok(self.pieces(o, j as u32).swap_remove(j as usize))
    }

    /// The total Chern class up to the cutoff.
    pub fn total_chern(&self, o: &OrientationExpr) -> Result<ChernPoly> {
        self.check_expr(o)?;
        Ok(self.pieces(o, self.cutoff).iter().fold(ChernPoly::zero(), |a, b| &a + b))
    }

    /// The projective Euler pushforward in the fiber variable `fiber`:
    /// `Σ_k β_k ξ^k ↦ Σ_k β_k c_{k+r+1}(o untwisted in ξ)`, `r = rank(o)`.
    pub fn pe_trivial(&self, alpha: &ChernPoly, o: &OrientationExpr, fiber: usize) -> Result<ChernPoly> {
        self.check_expr(o)?;
        if fiber >= self.fibers.len() {
            return usage(format!("no fiber variable {fiber}"));
        }
        let r = o.rank(self);
        let base = o.untwisted_in(fiber);
        let mut cache: BTreeMap<u32, ChernPoly> = BTreeMap::new();
        let mut out = ChernPoly::zero();
        for (m, c) in alpha.terms() {
            let (k, beta) = m.split(Var::Xi(fiber));
            let idx = k as i64 + r + 1;
            if idx < 0 {
                continue;
            }
            self.check_weight(beta.weight() as i64 + idx)?;
            if !cache.contains_key(&k) {
                cache.insert(k, self.chern_class(&base, idx)?);
            }
            out = &out + &ChernPoly::monomial(beta, c.clone()).mul_raw(&cache[&k], u32::MAX);
        }
        Ok(out)
    }

    /// Text form using the ring's names, e.g. `2·ξ^2·c1(ϑ) - c2(ϑ)`.
    pub fn display(&self, p: &ChernPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (m, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (n, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || m.0.is_empty() {
                parts.push(a.to_string());
            }
            for (v, e) in m.factors() {
                let name = match v {
                    Var::Xi(f) => self.fibers[f].clone(),
                    Var::Chern { symbol, index } => format!("c{index}({})", self.symbols[symbol].name),
                };
                if e == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}^{e}"));
                }
            }
            let _ = write!(s, "{}", parts.join("·"));
        }
        s
    }
}

/// `t_j ⋄ ξ^i = C(i, j) ξ^{i-j}` in the variable `fiber`, extended linearly.
pub fn diamond(j: u32, alpha: &ChernPoly, fiber: usize) -> ChernPoly {
    alpha.map_monomials(|m| {
        let (i, rest) = m.split(Var::Xi(fiber));
        if j > i {
            return ChernPoly::zero();
        }
        let c = binom_q(i as i64, j as i64);
        ChernPoly::monomial(rest.mul(&ChernMonomial::var_pow(Var::Xi(fiber), i - j)), c)
    })
}

/// Inversion on the fiber: `ξ ↦ -ξ`.
pub fn invert(alpha: &ChernPoly, fiber: usize) -> ChernPoly {
    alpha.map_monomials(|m| {
        let e = m.exp(Var::Xi(fiber));
        ChernPoly::monomial(m.clone(), Rational::from(sign(e as i64)))
    })
}

/// Replace `c_a(from)` by `c_a(to)`, times `(-1)^a` when `flip` is set.
pub fn rename_symbol(alpha: &ChernPoly, from: usize, to: usize, flip: bool) -> ChernPoly {
    alpha.map_monomials(|m| {
        let mut out = ChernMonomial::one();
        let mut c = 1i64;
        for (v, e) in m.factors() {
            let v = match v {
                Var::Chern { symbol, index } if symbol == from => {
                    if flip {
                        c *= sign(index as i64 * e as i64);
                    }
                    Var::Chern { symbol: to, index }
                }
                v => v,
            };
            out = out.mul(&ChernMonomial::var_pow(v, e));
        }
        ChernPoly::monomial(out, Rational::from(c))
    })
}

/// Dual class: `c_a ↦ (-1)^a c_a` for one symbol.
pub fn dualize(alpha: &ChernPoly, symbol: usize) -> ChernPoly {
    rename_symbol(alpha, symbol, symbol, true)
}

/// Send a y-basis polynomial to the Chern symbols of `symbol` by `y_j ↦ c_j`.
pub fn characteristic(p: &GradedPoly, symbol: usize) -> Result<ChernPoly> {
    let p = p.to_basis(Basis::Y)?;
    let mut out = ChernPoly::zero();
    for (m, c) in p.terms() {
        let mut mono = ChernMonomial::one();
        for (j, e) in m.factors() {
            mono = mono.mul(&ChernMonomial::var_pow(Var::Chern { symbol, index: j as u32 }, e));
        }
        out.add_term(mono, c.clone());
    }
    Ok(out)
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: serde_json::Value,
    pub pass: bool,
    pub residual_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl CheckReport {
    fn new(check: &str, params: serde_json::Value, ring: &ChernRing, residual: &ChernPoly) -> Self {
        CheckReport {
            check: check.into(),
            params,
            pass: residual.is_zero(),
            residual_terms: residual.len(),
            residual: (!residual.is_zero()).then(|| ring.display(residual)),
        }
    }
}

fn single_ring_for(k: i64, r: i64) -> ChernRing {
    ChernRing::single(r, (k.max(0) + r.abs() + 2) as u32)
}

/// Dual route `(-1)^k c_{k+r+1}(ϑ̆)` against `(-1)^{r+1} c_{k+r+1}(ϑ)` on `ξ^k`.
pub fn dual_check(k: u32, r: i64) -> CheckReport {
    let ring = single_ring_for(k as i64, r);
    let o = OrientationExpr::untwisted(0);
    let alpha = ring.pow(&ring.xi(0), k);
    let direct = ring.pe_trivial(&alpha, &o, 0).expect("within cutoff");
    let dual = dualize(&ring.pe_trivial(&invert(&alpha, 0), &o, 0).expect("within cutoff"), 0);
    let residual = &dual - &direct.scale(&Rational::from(sign(r + 1)));
    CheckReport::new("dual", serde_json::json!({ "k": k, "r": r }), &ring, &residual)
}

/// `c_{k+r+1}(ϑ) = Σ_ℓ (t_ℓ ⋄ ξ^k) c_{ℓ+r+1}(L_ξ ⊗ ϑ)`.
pub fn pull_push_check(k: u32, r: i64) -> CheckReport {
    let ring = single_ring_for(k as i64, r);
    let alpha = ring.pow(&ring.xi(0), k);
    let lhs = ring.pe_trivial(&alpha, &OrientationExpr::untwisted(0), 0).expect("within cutoff");
    let twisted = OrientationExpr::twisted(0, 0, 1);
    let mut rhs = ChernPoly::zero();
    for l in 0..=k {
        let c = ring.chern_class(&twisted, l as i64 + r + 1).expect("within cutoff");
        rhs = &rhs + &ring.mul(&diamond(l, &alpha, 0), &c);
    }
    CheckReport::new("pull_push", serde_json::json!({ "k": k, "r": r }), &ring, &(&lhs - &rhs))
}

/// The three composites evaluated on `ξ^i ⊠ ξ^j`, in the symbols
/// `A = c(θ_1)`, `B = c(θ_2)`, `C = c(θ_3)`.
#[derive(Clone, Debug)]
pub struct CompositionRoutes {
    pub ring: ChernRing,
    pub route1: ChernPoly,
    pub route2: ChernPoly,
    pub route3: ChernPoly,
}

const SYM_A: usize = 0;
const SYM_B: usize = 1;
const SYM_C: usize = 2;
const SYM_A_DUAL: usize = 3;
const XI1: usize = 0;
const XI2: usize = 1;
const XI3: usize = 2;
const ETA: usize = 3;

fn composition_ring(i: u32, j: u32, r: [i64; 3]) -> ChernRing {
    let d = i as i64 + j as i64 + r.iter().map(|x| x.abs()).sum::<i64>() + 4;
    let sym = |name: &str, rank| KSymbol { name: name.into(), rank };
    ChernRing::new(
        ["ξ1", "ξ2", "ξ3", "η"].iter().map(|s| s.to_string()).collect(),
        vec![sym("A", r[0]), sym("B", r[1]), sym("C", r[2]), sym("Ă", r[0])],
        d as u32,
    )
}

fn abc(a: i64, b: i64, c: i64) -> ChernPoly {
    let p = ChernPoly::chern_symbol(SYM_A, a).mul_raw(&ChernPoly::chern_symbol(SYM_B, b), u32::MAX);
    p.mul_raw(&ChernPoly::chern_symbol(SYM_C, c), u32::MAX)
}

/// The routes as explicit triple sums over `a + b + c = i + j + r_1 + r_2 + r_3 + 2`.
fn closed_forms(i: u32, j: u32, r: [i64; 3]) -> [ChernPoly; 3] {
    let (i, j) = (i as i64, j as i64);
    let [r1, r2, r3] = r;
    let n = i + j + r1 + r2 + r3 + 2;
    let mut out = [ChernPoly::zero(), ChernPoly::zero(), ChernPoly::zero()];
    for a in 0..=n {
        for b in 0..=n - a {
            let c = n - a - b;
            let m = abc(a, b, c);
            let k1 = binom_q(r3 - c, b - j - r2 - 1);
            let k2 = binom_q(r3 - c, a - i - r1 - 1);
            let k3 = &binom_q(r1 - a + i, c - r3 - 1) * &Rational::from(sign(r1 + b - j - r2 - 1));
            out[0] = &out[0] + &m.scale(&k1);
            out[1] = &out[1] + &m.scale(&k2);
            out[2] = &out[2] + &m.scale(&k3);
        }
    }
    out
}

/// The routes computed with twisted Chern classes and iterated pushforwards.
fn machinery(ring: &ChernRing, i: u32, j: u32) -> Result<[ChernPoly; 3]> {
    let a = OrientationExpr::untwisted(SYM_A);
    let b = OrientationExpr::untwisted(SYM_B);
    let c = OrientationExpr::untwisted(SYM_C);
    let gen12 = ring.mul(&ring.pow(&ring.xi(XI1), i), &ring.pow(&ring.xi(XI2), j));

    // push along κ_1 (ξ_1) with θ_1 + θ_3 twisted by ξ_2, then along π_2.
    let o = a.clone().plus(&OrientationExpr::twisted(SYM_C, XI2, 1));
    let route1 = ring.pe_trivial(&ring.pe_trivial(&gen12, &o, XI1)?, &b, XI2)?;

    let o = b.clone().plus(&OrientationExpr::twisted(SYM_C, XI1, 1));
    let route2 = ring.pe_trivial(&ring.pe_trivial(&gen12, &o, XI2)?, &a, XI1)?;

    // ξ^i ⊠ ξ^j = (ξ_3 - η)^i η^j, push along κ_3 (η) then π_3 (ξ_3). The
    // dual class lives on the bundle with reversed action, so its twist by ξ_3
    // has weight -1.
    let diff = &ring.xi(XI3) - &ring.xi(ETA);
    let gen3 = ring.mul(&ring.pow(&diff, i), &ring.pow(&ring.xi(ETA), j));
    let o = OrientationExpr::twisted(SYM_A_DUAL, XI3, -1).plus(&b);
    let step = ring.pe_trivial(&gen3, &o, ETA)?;
    let route3 = rename_symbol(&ring.pe_trivial(&step, &c, XI3)?, SYM_A_DUAL, SYM_A, true);
    Ok([route1, route2, route3])
}

/// Each route both ways; a disagreement is an internal error.
pub fn composition_routes(i: u32, j: u32, r1: i64, r2: i64, r3: i64) -> Result<CompositionRoutes> {
    let r = [r1, r2, r3];
    let ring = composition_ring(i, j, r);
    let closed = closed_forms(i, j, r);
    let mach = machinery(&ring, i, j)?;
    for (n, (x, y)) in closed.iter().zip(&mach).enumerate() {
        if x != y {
            return Err(Error::Invariant(format!(
                "route {} closed form {} differs from machinery {}",
                n + 1,
                ring.display(x),
                ring.display(y)
            )));
        }
    }
    let [route1, route2, route3] = closed;
    Ok(CompositionRoutes { ring, route1, route2, route3 })
}

/// `route1 - route2 - (-1)^{r_1} route3`, which should vanish.
pub fn composition_check(i: u32, j: u32, r1: i64, r2: i64, r3: i64) -> Result<CheckReport> {
    let routes = composition_routes(i, j, r1, r2, r3)?;
    let residual = &(&routes.route1 - &routes.route2) - &routes.route3.scale(&Rational::from(sign(r1)));
    let params = serde_json::json!({ "i": i, "j": j, "r": [r1, r2, r3] });
    Ok(CheckReport::new("composition", params, &routes.ring, &residual))
}

/// [`composition_check`] over `i, j ≤ max_ij` and all rank triples in
/// `rmin..=rmax`, ordered by tuple.
pub fn composition_sweep(max_ij: u32, rmin: i64, rmax: i64) -> Result<Vec<CheckReport>> {
    let mut tuples = Vec::new();
    for i in 0..=max_ij {
        for j in 0..=max_ij {
            for r1 in rmin..=rmax {
                for r2 in rmin..=rmax {
                    for r3 in rmin..=rmax {
                        tuples.push((i, j, r1, r2, r3));
                    }
                }
            }
        }
    }
    tuples.par_iter().map(|&(i, j, r1, r2, r3)| composition_check(i, j, r1, r2, r3)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn twisted_chern_classes() {
        for r in -3..=4 {
            let ring = ChernRing::single(r, 6);
            let o = OrientationExpr::twisted(0, 0, 1);
            let xi = ring.xi(0);
            let c1 = ring.chern_symbol(0, 1);
            let c2 = ring.chern_symbol(0, 2);
            assert_eq!(ring.chern_class(&o, 1).unwrap(), &xi.scale(&q(r)) + &c1);
            let want = &(&ring.mul(&xi, &xi).scale(&binom_q(r, 2)) + &ring.mul(&xi, &c1).scale(&q(r - 1))) + &c2;
            assert_eq!(ring.chern_class(&o, 2).unwrap(), want);
            assert_eq!(ring.chern_class(&o, 0).unwrap(), ChernPoly::one());
            assert!(ring.chern_class(&o, -1).unwrap().is_zero());
            assert!(matches!(ring.chern_class(&o, 7), Err(Error::CutoffOverflow { .. })));
        }
    }

    #[test]
    fn diamond_examples() {
        let ring = ChernRing::single(0, 5);
        let xi = ring.xi(0);
        assert_eq!(diamond(1, &ring.pow(&xi, 3), 0), ring.pow(&xi, 2).scale(&q(3)));
        assert!(diamond(2, &xi, 0).is_zero());
        let a = &ring.pow(&xi, 2) + &ring.chern_symbol(0, 1);
        assert_eq!(diamond(0, &a, 0), a);
    }

    #[test]
    fn pe_examples() {
        let ring = ChernRing::single(2, 8);
        let o = OrientationExpr::untwisted(0);
        let xi = ring.xi(0);
        assert_eq!(ring.pe_trivial(&ring.pow(&xi, 2), &o, 0).unwrap(), ring.chern_symbol(0, 5));
        let ring = ChernRing::single(-1, 4);
        assert_eq!(ring.pe_trivial(&ChernPoly::one(), &o, 0).unwrap(), ChernPoly::one());
    }

    #[test]
    fn composition_example() {
        let c = composition_routes(0, 0, 0, 0, 0).unwrap();
        let ring = &c.ring;
        let s = |sym| ring.chern_symbol(sym, 1);
        let ab = ring.mul(&s(SYM_A), &s(SYM_B));
        let bc = ring.mul(&s(SYM_B), &s(SYM_C));
        let ac = ring.mul(&s(SYM_A), &s(SYM_C));
        assert_eq!(c.route1, &ab + &bc);
        assert_eq!(c.route2, &ab + &ac);
        assert_eq!(c.route3, &bc - &ac);
        let c = composition_routes(0, 0, -1, -1, -1).unwrap();
        assert!(c.route1.is_zero() && c.route2.is_zero() && c.route3.is_zero());
    }

    #[test]
    fn small_checks() {
        assert!(dual_check(0, -1).pass);
        assert!(pull_push_check(1, 0).pass);
        assert!(composition_check(1, 2, 1, -2, 0).unwrap().pass);
    }
}
