#![allow(dead_code)]

use fbc_core::{Alphabet, Automorphism, GroupPresentation, Letter, Word};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn word(rank: usize, s: &str) -> Word {
    Alphabet::standard(rank).parse_word(s).unwrap()
}

pub fn auto(rank: usize, images: &[&str]) -> Automorphism {
    Automorphism::new(images.iter().map(|s| word(rank, s)).collect()).unwrap()
}

pub fn swap() -> Automorphism {
    auto(2, &["b", "a"])
}

pub fn nielsen() -> Automorphism {
    auto(2, &["a b", "b"])
}

pub fn pres(phi: Automorphism) -> GroupPresentation {
    GroupPresentation::new(Alphabet::standard(phi.rank()), phi).unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = Letter::all(rank);
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = *letters.choose(rng).unwrap();
        if out.last().is_some_and(|p| p.cancels(l)) {
            continue;
        }
        out.push(l);
    }
    Word::reduce(out)
}

/// An elementary Nielsen move together with its inverse.
pub fn nielsen_move<R: Rng>(rng: &mut R, rank: usize) -> (Automorphism, Automorphism) {
    let gen = |i: usize, inv: bool| Word::letter(Letter::new(i as u32, inv));
    let id: Vec<Word> = (0..rank).map(|i| gen(i, false)).collect();
    let i = rng.gen_range(0..rank);
    let mut j = rng.gen_range(0..rank);
    if rank > 1 {
        while j == i {
            j = rng.gen_range(0..rank);
        }
    }
    let (mut f, mut g) = (id.clone(), id);
    match if rank == 1 { 2 } else { rng.gen_range(0..5) } {
        0 => {
            f[i] = gen(i, false).mul(&gen(j, false));
            g[i] = gen(i, false).mul(&gen(j, true));
        }
        1 => {
            f[i] = gen(j, false).mul(&gen(i, false));
            g[i] = gen(j, true).mul(&gen(i, false));
        }
        2 => {
            f[i] = gen(i, true);
            g[i] = gen(i, true);
        }
        3 => {
            f.swap(i, j);
            g.swap(i, j);
        }
        _ => {
            f[i] = gen(i, true).mul(&gen(j, false));
            // a_i -> a_i^-1 a_j is inverted by a_i -> a_j a_i^-1
            g[i] = gen(j, false).mul(&gen(i, true));
        }
    }
    (Automorphism::new(f).unwrap(), Automorphism::new(g).unwrap())
}

/// A composition of at most `moves` Nielsen moves and its inverse built from
/// the known inverses in reverse order.
pub fn random_nielsen<R: Rng>(rng: &mut R, rank: usize, moves: usize) -> (Automorphism, Automorphism) {
    let mut phi = Automorphism::identity(rank);
    let mut inv = Automorphism::identity(rank);
    for _ in 0..rng.gen_range(1..=moves) {
        let (m, mi) = nielsen_move(rng, rank);
        phi = phi.compose(&m);
        inv = mi.compose(&inv);
    }
    (phi, inv)
}
