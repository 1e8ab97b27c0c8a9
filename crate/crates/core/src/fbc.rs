//! Elements of `F_n ⋊_φ ℤ` in the normal form `t^a u`.
//!
//! Conjugating by `t^b` applies `φ^b`, i.e. `t^-b u t^b = uφ^b`, so
//! `t^a u · t^b v = t^(a+b) (uφ^b) v`.

use std::fmt;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::word::{split_power, Alphabet, Word};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FbcElement {
    pub a: i64,
    pub u: Word,
}

impl FbcElement {
    pub fn new(a: i64, u: Word) -> Self {
        FbcElement { a, u }
    }

    pub fn identity() -> Self {
        FbcElement::default()
    }

    pub fn t_power(a: i64) -> Self {
        FbcElement::new(a, Word::identity())
    }

    pub fn word(u: Word) -> Self {
        FbcElement::new(0, u)
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.u.is_identity()
    }
}

#[derive(Clone, Debug)]
pub struct GroupPresentation {
    alphabet: Alphabet,
    phi: Automorphism,
}

impl GroupPresentation {
    pub fn new(alphabet: Alphabet, phi: Automorphism) -> Result<Self> {
        if alphabet.rank() != phi.rank() {
            return Err(Error::PresentationMismatch);
        }
        Ok(GroupPresentation { alphabet, phi })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn phi(&self) -> &Automorphism {
        &self.phi
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn check(&self, g: &FbcElement) -> Result<()> {
        if g.u.min_rank() > self.rank() {
            Err(Error::PresentationMismatch)
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, g: &FbcElement, h: &FbcElement) -> FbcElement {
        FbcElement::new(g.a + h.a, self.phi.apply_power(h.a, &g.u).mul(&h.u))
    }

    pub fn try_mul(&self, g: &FbcElement, h: &FbcElement) -> Result<FbcElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    pub fn inv(&self, g: &FbcElement) -> FbcElement {
        FbcElement::new(-g.a, self.phi.apply_power(-g.a, &g.u.inverse()))
    }

    pub fn pow(&self, g: &FbcElement, k: i64) -> FbcElement {
        let mut base = if k < 0 { self.inv(g) } else { g.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = FbcElement::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a FbcElement>>(&self, it: I) -> FbcElement {
        it.into_iter()
            .fold(FbcElement::identity(), |acc, g| self.mul(&acc, g))
    }

    pub fn commute(&self, g: &FbcElement, h: &FbcElement) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    /// `h^-1 g h`
    pub fn conjugate(&self, g: &FbcElement, h: &FbcElement) -> FbcElement {
        self.mul(&self.mul(&self.inv(h), g), h)
    }

    /// Parses `t^a <word>`. `t` tokens may appear anywhere; the product is
    /// evaluated left to right.
    pub fn parse_element(&self, s: &str) -> Result<FbcElement> {
        let mut acc = FbcElement::identity();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, k) = split_power(tok)?;
            let factor = if name == "t" {
                FbcElement::t_power(k)
            } else {
                FbcElement::word(Word::reduce(self.alphabet.parse_token(tok)?))
            };
            acc = self.mul(&acc, &factor);
        }
        Ok(acc)
    }

    pub fn format_element(&self, g: &FbcElement) -> String {
        match (g.a, g.u.is_identity()) {
            (0, _) => self.alphabet.format_word(&g.u),
            (a, true) => format!("t^{a}"),
            (a, false) => format!("t^{a} {}", self.alphabet.format_word(&g.u)),
        }
    }

    pub fn display<'a>(&'a self, g: &'a FbcElement) -> DisplayElement<'a> {
        DisplayElement { pres: self, g }
    }
}

pub struct DisplayElement<'a> {
    pres: &'a GroupPresentation,
    g: &'a FbcElement,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pres.format_element(self.g))
    }
}
