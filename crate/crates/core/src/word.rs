//! Free-group words: reduction, products, cyclic normal forms, conjugacy
//! witnesses and primitive roots.
//!
//! Letters are ordered with every positive letter before every inverse
//! letter, and positive (resp. inverse) letters in alphabet order. For a
//! rank-2 alphabet `a, b` this gives `a < b < a^-1 < b^-1`. That order is
//! used for canonical rotations and for the shortlex enumeration of balls.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub const fn new(gen: u32, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub const fn pos(gen: u32) -> Self {
        Letter { gen, inv: false }
    }

    pub const fn neg(gen: u32) -> Self {
        Letter { gen, inv: true }
    }

    pub const fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }

    /// Position in the letter order for an alphabet of the given rank.
    pub fn rank_key(self, rank: usize) -> usize {
        self.gen as usize + if self.inv { rank } else { 0 }
    }

    /// All `2 * rank` letters in letter order.
    pub fn all(rank: usize) -> Vec<Letter> {
        (0..rank as u32)
            .map(Letter::pos)
            .chain((0..rank as u32).map(Letter::neg))
            .collect()
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.inv, self.gen).cmp(&(other.inv, other.gen))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Like [`Word::reduce`], rejecting letters outside a rank-`rank` alphabet.
    pub fn reduce_checked<I: IntoIterator<Item = Letter>>(letters: I, rank: usize) -> Result<Self> {
        let mut checked = Vec::new();
        for l in letters {
            if l.gen as usize >= rank {
                return Err(Error::UnknownGenerator(format!("index {}", l.gen)));
            }
            checked.push(l);
        }
        Ok(Word::reduce(checked))
    }

    /// Wraps letters that are already known to be reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| !w[0].cancels(w[1])));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used plus one.
    pub fn min_rank(&self) -> usize {
        self.0.iter().map(|l| l.gen as usize + 1).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let a = &self.0;
        let b = &other.0;
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k].cancels(b[k]) {
            k += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * k);
        out.extend_from_slice(&a[..a.len() - k]);
        out.extend_from_slice(&b[k..]);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self^-1 * other * self`
    pub fn conjugate_by(&self, z: &Word) -> Word {
        z.inverse().mul(self).mul(z)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Word {
        Word::reduce(words.into_iter().flat_map(|w| w.0.iter().copied()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(f), Some(l)) => self.0.len() == 1 || !f.cancels(*l),
            _ => true,
        }
    }

    /// Splits `self = p * core * p^-1` with `core` cyclically reduced.
    pub fn cyclic_split(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k].cancels(self.0[n - 1 - k]) {
            k += 1;
        }
        (
            Word(self.0[..k].to_vec()),
            Word(self.0[k..n - k].to_vec()),
        )
    }

    /// Shortlex comparison using the letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::reduce(iter)
    }
}

/// A conjugacy class in `F_n`, stored as the least rotation of a cyclically
/// reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Start index of the lexicographically least rotation.
pub fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        match a.cmp(&b) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i <= j {
                    i = j + 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if j <= i {
                    j = i + 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// Canonical conjugacy representative of `x` and a conjugator `w` with
/// `x = w * c * w^-1`.
pub fn cyclic_form(x: &Word) -> (CyclicWord, Word) {
    let (p, core) = x.cyclic_split();
    let r = least_rotation(core.letters());
    let (s, t) = core.letters().split_at(r);
    let mut rotated = t.to_vec();
    rotated.extend_from_slice(s);
    let w = p.mul(&Word(s.to_vec()));
    (CyclicWord(Word::from_reduced(rotated)), w)
}

pub fn canonical(x: &Word) -> CyclicWord {
    cyclic_form(x).0
}

fn prefix_function(s: &[Letter]) -> Vec<usize> {
    let mut pi = vec![0; s.len()];
    for i in 1..s.len() {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// First offset `r` with `hay[r..] ++ hay[..r] == needle`.
fn rotation_offset(hay: &[Letter], needle: &[Letter]) -> Option<usize> {
    let n = hay.len();
    if n != needle.len() {
        return None;
    }
    if n == 0 {
        return Some(0);
    }
    let pi = prefix_function(needle);
    let mut k = 0;
    for i in 0..2 * n - 1 {
        let c = hay[i % n];
        while k > 0 && c != needle[k] {
            k = pi[k - 1];
        }
        if c == needle[k] {
            k += 1;
        }
        if k == n {
            return Some(i + 1 - n);
        }
    }
    None
}

/// Returns `z` with `x = z^-1 * y * z` when `x` and `y` are conjugate in the
/// free group, and `None` otherwise. Exact.
pub fn conjugacy_witness(x: &Word, y: &Word) -> Option<Word> {
    let (p1, cx) = x.cyclic_split();
    let (p2, cy) = y.cyclic_split();
    // cy is the rotation of cx starting at r: cx = s * t, cy = t * s = s^-1 cx s.
    let r = rotation_offset(cx.letters(), cy.letters())?;
    let s = Word(cx.letters()[..r].to_vec());
    Some(p2.mul(&s.inverse()).mul(&p1.inverse()))
}

/// Writes `x = u^m` with `m` maximal. The identity gives `(1, 1)`.
pub fn primitive_root(x: &Word) -> (Word, u32) {
    if x.is_identity() {
        return (Word::identity(), 1);
    }
    let (p, core) = x.cyclic_split();
    let n = core.len();
    let pi = prefix_function(core.letters());
    let period = n - pi[n - 1];
    let period = if n % period == 0 { period } else { n };
    let d = Word(core.letters()[..period].to_vec());
    let u = p.mul(&d).mul(&p.inverse());
    (u, (n / period) as u32)
}

/// Generator `u` of the cyclic centralizer `C(x) = <u>` of a non-trivial `x`.
pub fn centralizer_free(x: &Word) -> Result<Word> {
    if x.is_identity() {
        return Err(Error::IdentityInput);
    }
    Ok(primitive_root(x).0)
}

/// Extends every word of a sphere by one letter, keeping lexicographic order.
pub fn next_sphere(rank: usize, layer: &[Word]) -> Vec<Word> {
    let letters = Letter::all(rank);
    let mut next = Vec::with_capacity(layer.len() * (2 * rank).saturating_sub(1).max(1));
    for w in layer {
        for &l in &letters {
            if w.0.last().is_some_and(|&last| last.cancels(l)) {
                continue;
            }
            let mut v = w.0.clone();
            v.push(l);
            next.push(Word(v));
        }
    }
    next
}

/// Words of length exactly `len`, in lexicographic letter order.
pub fn sphere(rank: usize, len: usize) -> Vec<Word> {
    let mut layer = vec![Word::identity()];
    for _ in 0..len {
        layer = next_sphere(rank, &layer);
    }
    layer
}

/// All reduced words of length at most `radius`, in shortlex order.
pub fn ball(rank: usize, radius: usize) -> Vec<Word> {
    (0..=radius).flat_map(|r| sphere(rank, r)).collect()
}

/// Number of reduced words of length at most `radius` in a free group of
/// the given rank.
pub fn ball_size(rank: usize, radius: usize) -> u128 {
    let mut total: u128 = 1;
    let mut layer: u128 = if rank == 0 { 0 } else { 2 * rank as u128 };
    for _ in 1..=radius {
        total += layer;
        layer *= (2 * rank as u128).saturating_sub(1);
    }
    total
}

/// Named generators with a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Parse("alphabet must have at least one generator".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_generator_name(n) {
                return Err(Error::Parse(format!("invalid generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Parse(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// `a, b, c, ...` for small ranks, `x1, x2, ...` beyond 26.
    pub fn standard(rank: usize) -> Self {
        let names = if rank <= 26 {
            (0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (1..=rank).map(|i| format!("x{i}")).collect()
        };
        Alphabet { names }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let n = &self.names[l.gen as usize];
        if l.inv {
            format!("{n}^-1")
        } else {
            n.clone()
        }
    }

    /// Parses one token `g`, `g^-1` or `g^k` into its letters.
    pub fn parse_token(&self, tok: &str) -> Result<Vec<Letter>> {
        let (name, exp) = split_power(tok)?;
        let gen = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let l = Letter::new(gen, exp < 0);
        Ok(vec![l; exp.unsigned_abs() as usize])
    }

    /// Parses whitespace-separated tokens; `1` is the identity.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            letters.extend(self.parse_token(tok)?);
        }
        Ok(Word::reduce(letters))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|&l| self.letter_name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> DisplayWord<'a> {
        DisplayWord { alphabet: self, word: w }
    }
}

pub struct DisplayWord<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.format_word(self.word))
    }
}

pub(crate) fn is_generator_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "t"
}

/// Splits `g^k` into `("g", k)`; a bare `g` has exponent 1.
pub(crate) fn split_power(tok: &str) -> Result<(&str, i64)> {
    match tok.split_once('^') {
        None => Ok((tok, 1)),
        Some((name, exp)) => {
            let k: i64 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
            if k == 0 {
                return Err(Error::Parse(format!("zero exponent in `{tok}`")));
            }
            Ok((name, k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::standard(2)
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("a b b^-1 a"), w("a a"));
        assert!(w("").is_identity());
        assert!(w("a a^-1").is_identity());
        assert_eq!(w("a^3 b^-2"), w("a a a b^-1 b^-1"));
    }

    #[test]
    fn unknown_generator() {
        assert!(matches!(ab().parse_word("a c"), Err(Error::UnknownGenerator(_))));
        let l = [Letter::pos(0), Letter::pos(3)];
        assert!(Word::reduce_checked(l, 2).is_err());
    }

    #[test]
    fn mul_and_invert() {
        assert_eq!(w("a b").mul(&w("b^-1 a")), w("a a"));
        assert_eq!(w("a b^-1").inverse(), w("b a^-1"));
        assert!(w("a b a^-1").mul(&w("a b a^-1").inverse()).is_identity());
    }

    #[test]
    fn letter_order() {
        let mut ls = Letter::all(2);
        ls.reverse();
        ls.sort();
        assert_eq!(
            ls,
            vec![Letter::pos(0), Letter::pos(1), Letter::neg(0), Letter::neg(1)]
        );
    }

    #[test]
    fn cyclic_form_examples() {
        let (c, cw) = cyclic_form(&w("a b a^-1"));
        assert_eq!((c.word().clone(), cw), (w("b"), w("a")));
        let (c, cw) = cyclic_form(&w("b a"));
        assert_eq!((c.word().clone(), cw), (w("a b"), w("b")));
        let (c, cw) = cyclic_form(&Word::identity());
        assert!(c.is_empty() && cw.is_identity());
    }

    #[test]
    fn least_rotation_brute() {
        for x in ball(2, 6) {
            if !x.is_cyclically_reduced() {
                continue;
            }
            let s = x.letters();
            let best = (0..s.len().max(1))
                .map(|r| [&s[r.min(s.len())..], &s[..r.min(s.len())]].concat())
                .min()
                .unwrap();
            let r = least_rotation(s);
            assert_eq!([&s[r..], &s[..r]].concat(), best);
        }
    }

    #[test]
    fn conjugacy_examples() {
        assert_eq!(conjugacy_witness(&w("a b"), &w("b a")), Some(w("a^-1")));
        assert_eq!(conjugacy_witness(&w("a"), &w("b")), None);
        let u = w("a b^-1 a a");
        assert_eq!(conjugacy_witness(&u, &u), Some(Word::identity()));
    }

    #[test]
    fn root_examples() {
        assert_eq!(primitive_root(&w("a b a b")), (w("a b"), 2));
        assert_eq!(primitive_root(&w("a")), (w("a"), 1));
        assert_eq!(centralizer_free(&w("a b a b")).unwrap(), w("a b"));
        assert_eq!(
            primitive_root(&w("b a a a b^-1")),
            (w("b a b^-1"), 3)
        );
        assert!(matches!(centralizer_free(&Word::identity()), Err(Error::IdentityInput)));
    }

    #[test]
    fn ball_counts() {
        assert_eq!(ball(2, 2).len(), 17);
        assert_eq!(ball_size(2, 2), 17);
        assert_eq!(ball(3, 3).len() as u128, ball_size(3, 3));
        let b = ball(2, 3);
        assert!(b.windows(2).all(|p| p[0].shortlex_cmp(&p[1]) == Ordering::Less));
    }

    #[test]
    fn parse_and_format() {
        let a = ab();
        assert_eq!(a.format_word(&w("a b^-1")), "a b^-1");
        assert_eq!(a.format_word(&Word::identity()), "1");
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["t"]).is_err());
        assert!(a.parse_word("a^0").is_err());
    }
}
