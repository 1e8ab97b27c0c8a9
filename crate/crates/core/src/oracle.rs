//! Exhaustive ground truth on small balls of `F_n ⋊_φ ℤ`.
//!
//! Everything here is plain enumeration; nothing is clever, so results can
//! be trusted within the enumerated bounds and nowhere else.

use std::collections::BTreeSet;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::fbc::{FbcElement, GroupPresentation};
use crate::word::{ball as word_ball, ball_size, Word};

pub const DEFAULT_CAP: u128 = 1_000_000;

/// All `t^b y` with `|b| <= max_t`, `|y| <= max_len`.
#[derive(Clone, Debug)]
pub struct Ball {
    pub max_t: u32,
    pub max_len: usize,
    pub elements: Vec<FbcElement>,
}

/// Orders elements by `(|b|, b, |y|, y)`.
pub fn element_key(g: &FbcElement) -> (u64, i64, usize, &Word) {
    (g.a.unsigned_abs(), g.a, g.u.len(), &g.u)
}

pub fn sort_elements(v: &mut [FbcElement]) {
    v.sort_by(|x, y| element_key(x).cmp(&element_key(y)));
}

fn check_cap(requested: u128, cap: u128) -> Result<()> {
    if requested > cap {
        Err(Error::BudgetTooLarge { requested, cap })
    } else {
        Ok(())
    }
}

pub fn ball(pres: &GroupPresentation, max_t: u32, max_len: usize) -> Result<Ball> {
    ball_with_cap(pres, max_t, max_len, DEFAULT_CAP)
}

pub fn ball_with_cap(pres: &GroupPresentation, max_t: u32, max_len: usize, cap: u128) -> Result<Ball> {
    let requested = (2 * max_t as u128 + 1) * ball_size(pres.rank(), max_len);
    check_cap(requested, cap)?;
    let words = word_ball(pres.rank(), max_len);
    let mut elements = Vec::with_capacity(requested as usize);
    for a in 0..=max_t as i64 {
        for b in if a == 0 { vec![0] } else { vec![-a, a] } {
            elements.extend(words.iter().map(|w| FbcElement::new(b, w.clone())));
        }
    }
    sort_elements(&mut elements);
    Ok(Ball {
        max_t,
        max_len,
        elements,
    })
}

/// Ball elements commuting with `g`.
pub fn brute_centralizer(
    pres: &GroupPresentation,
    g: &FbcElement,
    max_t: u32,
    max_len: usize,
) -> Result<Vec<FbcElement>> {
    let b = ball(pres, max_t, max_len)?;
    Ok(b.elements.into_iter().filter(|h| pres.commute(g, h)).collect())
}

/// `{ (z^-1 ψ) x z : |z| <= radius }`, shortlex sorted.
pub fn brute_twisted_class(x: &Word, psi: &Automorphism, radius: usize) -> Result<Vec<Word>> {
    check_cap(ball_size(psi.rank(), radius), DEFAULT_CAP)?;
    let set: BTreeSet<Word> = word_ball(psi.rank(), radius)
        .iter()
        .map(|z| psi.apply(&z.inverse()).mul(x).mul(z))
        .collect();
    let mut v: Vec<Word> = set.into_iter().collect();
    v.sort_by(|a, b| a.shortlex_cmp(b));
    Ok(v)
}

/// `k` with `|k| <= kmax` such that `x = (z^-1 φ^a)(x φ^k) z` for some
/// `|z| <= radius`, ascending.
pub fn brute_ea(x: &Word, phi: &Automorphism, a: i64, kmax: u32, radius: usize) -> Result<Vec<i64>> {
    let n = ball_size(phi.rank(), radius);
    check_cap(n * (2 * kmax as u128 + 1), DEFAULT_CAP)?;
    let zs = word_ball(phi.rank(), radius);
    let twisted: Vec<Word> = zs.iter().map(|z| phi.apply_power(a, &z.inverse())).collect();
    let mut out = Vec::new();
    for k in -(kmax as i64)..=kmax as i64 {
        let y = phi.apply_power(k, x);
        if zs.iter().zip(&twisted).any(|(z, tz)| tz.mul(&y).mul(z) == *x) {
            out.push(k);
        }
    }
    Ok(out)
}
