//! Orbit scans of conjugacy classes under powers of an automorphism:
//! periodicity modulo conjugation and a bounded form of Brinkmann's
//! conjugacy problem.

use crate::automorphism::Automorphism;
use crate::decision::{Decision, Exhausted};
use crate::word::{canonical, conjugacy_witness, CyclicWord, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub k: i64,
    pub canonical: CyclicWord,
    pub length: usize,
}

/// `e0 > 0` minimal with `x φ^e0 ~ x`, and `z` with `x = z^-1 (x φ^e0) z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Period {
    pub e0: u32,
    pub z: Word,
}

/// Canonical conjugacy classes of `x φ^k` for `k = 0..=kmax` (or down to
/// `-kmax` when `backward`).
///
/// Only the cyclic word is pushed forward; `(w c w^-1)φ` is conjugate to `cφ`.
pub fn orbit(x: &Word, phi: &Automorphism, kmax: u32, backward: bool) -> Vec<OrbitRecord> {
    let map = if backward { phi.invert() } else { phi.clone() };
    let step = if backward { -1 } else { 1 };
    let mut cur = canonical(x);
    let mut out = Vec::with_capacity(kmax as usize + 1);
    for i in 0..=kmax as i64 {
        if i > 0 {
            cur = canonical(&map.apply(cur.word()));
        }
        out.push(OrbitRecord {
            k: i * step,
            length: cur.len(),
            canonical: cur.clone(),
        });
    }
    out
}

pub fn find_period(x: &Word, phi: &Automorphism, kmax: u32) -> Decision<Period> {
    if x.is_identity() {
        return Decision::Yes(Period {
            e0: 1,
            z: Word::identity(),
        });
    }
    let records = orbit(x, phi, kmax, false);
    let start = &records[0].canonical;
    match records[1..].iter().find(|r| &r.canonical == start) {
        Some(r) => {
            let image = phi.apply_power(r.k, x);
            let z = conjugacy_witness(x, &image).expect("equal canonical forms are conjugate");
            debug_assert_eq!(image.conjugate_by(&z), *x);
            Decision::Yes(Period { e0: r.k as u32, z })
        }
        None => Decision::Unknown(Exhausted::new(format!(
            "x φ^k is not conjugate to x for 0 < k <= {kmax}"
        ))),
    }
}

/// Smallest `|k| <= kmax` (positive first on ties) with `x φ^k ~ y`.
pub fn brinkmann_cp(x: &Word, y: &Word, phi: &Automorphism, kmax: u32) -> Decision<i64> {
    let target = canonical(y);
    let fwd = orbit(x, phi, kmax, false);
    let back = orbit(x, phi, kmax, true);
    for i in 0..=kmax as usize {
        if fwd[i].canonical == target {
            return Decision::Yes(fwd[i].k);
        }
        if back[i].canonical == target {
            return Decision::Yes(back[i].k);
        }
    }
    Decision::Unknown(Exhausted::new(format!(
        "x φ^k is not conjugate to y for |k| <= {kmax}"
    )))
}
