//! Seeded random inputs for the property sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::numkernel::Rational;
use crate::polyring::{weight_slice, Basis, GradedPoly};
use crate::pushforward::{pi_even, PushforwardClass, SElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational with numerator in `[-5, 5]` and denominator in `[1, 3]`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let n = rng.gen_range(-5i64..=5);
        if n != 0 {
            return Rational::new(n, rng.gen_range(1i64..=3)).expect("nonzero denominator");
        }
    }
}

/// A nonzero homogeneous polynomial of weight `w` with at most `terms` terms.
pub fn random_poly(rng: &mut impl Rng, basis: Basis, w: i64, terms: usize) -> GradedPoly {
    let mons = weight_slice(w);
    if mons.is_empty() {
        return GradedPoly::zero(basis);
    }
    let picked: Vec<_> = mons.choose_multiple(rng, terms.max(1)).cloned().collect();
    GradedPoly::from_terms(basis, picked.into_iter().map(|m| (m, small_rational(rng))))
}

/// A polynomial with terms of weight up to `max_w`.
pub fn random_poly_upto(rng: &mut impl Rng, basis: Basis, max_w: i64, terms: usize) -> GradedPoly {
    let mut p = GradedPoly::zero(basis);
    for _ in 0..terms {
        let w = rng.gen_range(0..=max_w);
        p = &p + &random_poly(rng, basis, w, 1);
    }
    p
}

/// A random combination of the truncated kernel basis in degree `k`, or
/// `None` if that space is zero.
pub fn random_kernel_class(rng: &mut impl Rng, k: i64, r: i64, order: usize) -> Result<Option<PushforwardClass>> {
    random_combination(rng, &pi_even(k, r, order)?)
}

/// A random nonzero combination of `basis`, or `None` if it is empty.
pub fn random_combination(rng: &mut impl Rng, basis: &[PushforwardClass]) -> Result<Option<PushforwardClass>> {
    let Some(first) = basis.first() else {
        return Ok(None);
    };
    let mut acc = PushforwardClass::zero(first.degree(), first.rank(), first.basis(), first.order());
    for b in basis {
        if rng.gen_bool(0.7) {
            acc = acc.try_add(&b.scale(&small_rational(rng)))?;
        }
    }
    if acc.is_zero() {
        acc = first.clone();
    }
    Ok(Some(acc))
}

/// A homogeneous `Σ f_i t^i` with at most `support` nonzero terms, powers
/// `i ≤ max_power` and `wt f_i = shift + i`.
pub fn random_s_element(rng: &mut impl Rng, r: i64, support: usize, max_power: usize, shift: i64) -> SElement {
    let mut powers: Vec<usize> = (0..=max_power).filter(|&i| shift + i as i64 >= 0).collect();
    powers.shuffle(rng);
    let count = rng.gen_range(1..=support.max(1)).min(powers.len());
    let mut u = SElement::zero(r);
    for &i in &powers[..count] {
        let f = random_poly(rng, Basis::Z, shift + i as i64, 2);
        u = u.try_add(&SElement::from_poly(r, f, i)).expect("same rank");
    }
    u
}
