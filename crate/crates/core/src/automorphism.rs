//! Automorphisms of a free group given by generator images.
//!
//! Maps act on the right: `apply(compose(f, g), w) = apply(g, apply(f, w))`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::stallings::{evaluate, SubgroupGraph};
use crate::word::{Alphabet, Letter, Word};

struct Inner {
    images: Vec<Word>,
    inverse: Vec<Word>,
    powers: Mutex<HashMap<i64, Arc<Vec<Word>>>>,
}

/// A verified automorphism together with its inverse and a cache of powers.
#[derive(Clone)]
pub struct Automorphism {
    inner: Arc<Inner>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Automorphism")
            .field("images", &self.inner.images)
            .finish()
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.inner.images == other.inner.images
    }
}

impl Eq for Automorphism {}

/// Inverse images of the generators, or `NotBijective` if the images do not
/// generate the free group. Surjective endomorphisms of finitely generated
/// free groups are injective, so this decides bijectivity.
pub fn inverse_images(images: &[Word]) -> Result<Vec<Word>> {
    let rank = images.len();
    let graph = SubgroupGraph::build(rank, images);
    (0..rank as u32)
        .map(|g| {
            graph
                .express_in_generators(&Word::letter(Letter::pos(g)))
                .map_err(|_| Error::NotBijective)
        })
        .collect()
}

fn substitute(images: &[Word], w: &Word) -> Word {
    evaluate(w, images)
}

impl Automorphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let rank = images.len();
        for w in &images {
            if w.min_rank() > rank {
                return Err(Error::UnknownGenerator(format!(
                    "image uses a generator beyond rank {rank}"
                )));
            }
        }
        let inverse = inverse_images(&images)?;
        Ok(Self::from_parts(images, inverse))
    }

    fn from_parts(images: Vec<Word>, inverse: Vec<Word>) -> Self {
        debug_assert!((0..images.len() as u32).all(|g| {
            substitute(&images, &inverse[g as usize]) == Word::letter(Letter::pos(g))
        }));
        Automorphism {
            inner: Arc::new(Inner {
                images,
                inverse,
                powers: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn identity(rank: usize) -> Self {
        let images: Vec<Word> = (0..rank as u32).map(|g| Word::letter(Letter::pos(g))).collect();
        Self::from_parts(images.clone(), images)
    }

    pub fn rank(&self) -> usize {
        self.inner.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.inner.images
    }

    pub fn image(&self, gen: u32) -> &Word {
        &self.inner.images[gen as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.inner
            .images
            .iter()
            .enumerate()
            .all(|(g, w)| w.letters() == [Letter::pos(g as u32)])
    }

    pub fn apply(&self, w: &Word) -> Word {
        substitute(&self.inner.images, w)
    }

    pub fn apply_letter(&self, l: Letter) -> Word {
        let w = self.image(l.gen);
        if l.inv {
            w.inverse()
        } else {
            w.clone()
        }
    }

    pub fn invert(&self) -> Automorphism {
        Self::from_parts(self.inner.inverse.clone(), self.inner.images.clone())
    }

    /// `w -> apply(other, apply(self, w))`
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in compose");
        let images = self.inner.images.iter().map(|w| other.apply(w)).collect();
        let inverse = other
            .inner
            .inverse
            .iter()
            .map(|w| substitute(&self.inner.inverse, w))
            .collect();
        Self::from_parts(images, inverse)
    }

    fn power_images(&self, k: i64) -> Arc<Vec<Word>> {
        let rank = self.rank();
        let identity = || (0..rank as u32).map(|g| Word::letter(Letter::pos(g))).collect();
        if k == 0 {
            return Arc::new(identity());
        }
        let mut cache = self.inner.powers.lock().expect("power cache");
        if let Some(p) = cache.get(&k) {
            return p.clone();
        }
        let step = k.signum();
        let base = if k > 0 {
            &self.inner.images
        } else {
            &self.inner.inverse
        };
        // Extend from the nearest cached power of the same sign.
        let mut from = 0;
        let mut images: Vec<Word> = identity();
        let mut j = k - step;
        while j != 0 {
            if let Some(p) = cache.get(&j) {
                from = j;
                images = (**p).clone();
                break;
            }
            j -= step;
        }
        while from != k {
            images = images.iter().map(|w| substitute(base, w)).collect();
            from += step;
            cache.insert(from, Arc::new(images.clone()));
        }
        cache[&k].clone()
    }

    /// Applies `self^k` to `w`.
    pub fn apply_power(&self, k: i64, w: &Word) -> Word {
        if k == 0 {
            return w.clone();
        }
        substitute(&self.power_images(k), w)
    }

    pub fn power(&self, k: i64) -> Automorphism {
        if k == 0 {
            return Self::identity(self.rank());
        }
        let fwd = self.power_images(k);
        let back = self.power_images(-k);
        Self::from_parts((*fwd).clone(), (*back).clone())
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        alphabet
            .names()
            .iter()
            .zip(self.images())
            .map(|(n, w)| format!("{n} -> {}", alphabet.format_word(w)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::standard(2).parse_word(s).unwrap()
    }

    fn swap() -> Automorphism {
        Automorphism::new(vec![w("b"), w("a")]).unwrap()
    }

    fn nielsen() -> Automorphism {
        Automorphism::new(vec![w("a b"), w("b")]).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(swap().apply(&w("a b^-1")), w("b a^-1"));
        assert_eq!(nielsen().apply(&w("a")), w("a b"));
        let id = Automorphism::identity(2);
        assert_eq!(id.apply(&w("a b^-1 a")), w("a b^-1 a"));
    }

    #[test]
    fn powers() {
        assert!(swap().power(2).is_identity());
        assert_eq!(nielsen().power(2).images(), &[w("a b b"), w("b")]);
        assert_eq!(nielsen().power(-3).images(), &[w("a b^-3"), w("b")]);
        let phi = nielsen().compose(&swap());
        assert_eq!(phi.compose(&Automorphism::identity(2)), phi);
        let x = w("a b^-1 a");
        assert_eq!(phi.apply_power(5, &x), phi.apply_power(2, &phi.apply_power(3, &x)));
        assert_eq!(phi.apply_power(-2, &phi.apply_power(2, &x)), x);
    }

    #[test]
    fn inversion() {
        assert_eq!(nielsen().invert().images(), &[w("a b^-1"), w("b")]);
        assert_eq!(swap().invert(), swap());
        assert_eq!(
            Automorphism::new(vec![w("a b"), w("b b")]).unwrap_err(),
            Error::NotBijective
        );
    }

    #[test]
    fn compose_order() {
        // a -> a b -> b a under nielsen then swap
        let c = nielsen().compose(&swap());
        assert_eq!(c.apply(&w("a")), w("b a"));
    }
}
