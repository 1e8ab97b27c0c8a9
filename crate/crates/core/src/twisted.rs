//! Twisted conjugacy: certificates, the exponent group `E_a`, the witness
//! algebra on the sets `C_k = { y | x = (y^-1 φ^a)(x φ^k) y }`, and the
//! twisted centralizer `C_0`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::automorphism::Automorphism;
use crate::decision::{Budget, Decision, Exhausted};
use crate::error::{Error, Result};
use crate::stallings::SubgroupGraph;
use crate::word::{centralizer_free, conjugacy_witness, next_sphere, Word};

/// The data `(x, a, φ)` that the sets `C_k` depend on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedContext {
    pub x: Word,
    pub a: i64,
    pub phi: Automorphism,
}

impl TwistedContext {
    pub fn new(x: Word, a: i64, phi: Automorphism) -> Arc<Self> {
        Arc::new(TwistedContext { x, a, phi })
    }

    /// `(z^-1 φ^a)(x φ^k) z`
    pub fn twist(&self, k: i64, z: &Word) -> Word {
        self.phi
            .apply_power(self.a, &z.inverse())
            .mul(&self.phi.apply_power(k, &self.x))
            .mul(z)
    }

    /// The automorphism `y -> x^-1 (y φ^a) x` whose fixed points form `C_0`.
    pub fn fixing_map(&self) -> impl Fn(&Word) -> Word + '_ {
        let xi = self.x.inverse();
        move |y| xi.mul(&self.phi.apply_power(self.a, y)).mul(&self.x)
    }
}

/// A claimed element `z` of `C_k`.
#[derive(Clone, Debug)]
pub struct TwistedWitness {
    pub k: i64,
    pub z: Word,
    pub ctx: Arc<TwistedContext>,
}

impl TwistedWitness {
    pub fn new(ctx: &Arc<TwistedContext>, k: i64, z: Word) -> Self {
        TwistedWitness {
            k,
            z,
            ctx: ctx.clone(),
        }
    }

    /// Witness of `a ∈ E_a`: `x = (x^-1 φ^a)(x φ^a) x`.
    pub fn trivial_top(ctx: &Arc<TwistedContext>) -> Self {
        TwistedWitness::new(ctx, ctx.a, ctx.x.clone())
    }
}

pub fn verify_witness(w: &TwistedWitness) -> bool {
    w.ctx.twist(w.k, &w.z) == w.ctx.x
}

fn same_context(a: &TwistedWitness, b: &TwistedWitness) -> Result<()> {
    if Arc::ptr_eq(&a.ctx, &b.ctx) || a.ctx == b.ctx {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// From `y ∈ C_k1` and `z ∈ C_k2`, the element `(y φ^k2) z ∈ C_(k1+k2)`.
pub fn combine_witnesses(y: &TwistedWitness, z: &TwistedWitness) -> Result<TwistedWitness> {
    same_context(y, z)?;
    let w = y.ctx.phi.apply_power(z.k, &y.z).mul(&z.z);
    let out = TwistedWitness::new(&y.ctx, y.k + z.k, w);
    debug_assert!(!verify_witness(y) || !verify_witness(z) || verify_witness(&out));
    Ok(out)
}

/// From `z ∈ C_k`, the element `(z φ^-k)^-1 ∈ C_-k`.
pub fn negate_witness(w: &TwistedWitness) -> TwistedWitness {
    let z = w.ctx.phi.apply_power(-w.k, &w.z).inverse();
    TwistedWitness::new(&w.ctx, -w.k, z)
}

/// From `y ∈ C_(k e_a)` and `z ∈ C_(e_a)`, the element `(y φ^e_a) z` of
/// `C_((k+1) e_a)`.
pub fn shift_coset_witness(y: &TwistedWitness, z: &TwistedWitness) -> Result<TwistedWitness> {
    same_context(y, z)?;
    if z.k == 0 || y.k % z.k != 0 || !verify_witness(y) || !verify_witness(z) {
        return Err(Error::InvalidWitness);
    }
    let out = combine_witnesses(y, z)?;
    if !verify_witness(&out) {
        return Err(Error::InvalidWitness);
    }
    Ok(out)
}

fn exponent_sums(w: &Word, rank: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    for l in w.letters() {
        v[l.gen as usize] += if l.inv { -1 } else { 1 };
    }
    v
}

/// Is `matrix * v = rhs` solvable modulo the prime `p`?
fn solvable_mod(matrix: &[Vec<i64>], rhs: &[i64], p: i64) -> bool {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i64>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, &r)| {
            row.iter()
                .chain(std::iter::once(&r))
                .map(|&v| v.rem_euclid(p))
                .collect()
        })
        .collect();
    let inv = |a: i64| {
        let (mut base, mut e, mut acc) = (a, p - 2, 1i64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let f = inv(m[r][c]);
        for v in m[r].iter_mut() {
            *v = *v * f % p;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let g = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = (*v - g * pv).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    m[r..].iter().all(|row| row[cols] == 0)
}

/// Exact obstruction from the abelianization: `x ~_ψ y` forces
/// `[x] - [y] ∈ (I - M_ψ) ℤ^n`. Tested modulo several primes.
pub fn abelian_obstruction(x: &Word, y: &Word, psi: &Automorphism) -> bool {
    let n = psi.rank();
    let cols: Vec<Vec<i64>> = psi.images().iter().map(|w| exponent_sums(w, n)).collect();
    let matrix: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i64::from(i == j) - cols[j][i])
                .collect()
        })
        .collect();
    let (ex, ey) = (exponent_sums(x, n), exponent_sums(y, n));
    let rhs: Vec<i64> = ex.iter().zip(&ey).map(|(a, b)| a - b).collect();
    [2, 3, 5, 7, 1_000_000_007]
        .iter()
        .any(|&p| !solvable_mod(&matrix, &rhs, p))
}

/// Shortlex search for `z` with `|z| <= radius` and `(zψ) x z^-1` in
/// `targets`, i.e. `x = (z^-1 ψ) y z` for `y = targets[i]`. Among targets
/// hit by the same `z` the smallest index wins.
pub(crate) fn search_twisted(
    x: &Word,
    targets: &[Word],
    psi: &Automorphism,
    radius: usize,
) -> Option<(usize, Word)> {
    let mut index: HashMap<&Word, usize> = HashMap::new();
    for (i, y) in targets.iter().enumerate() {
        index.entry(y).or_insert(i);
    }
    let rank = psi.rank();
    let mut layer = vec![Word::identity()];
    for r in 0..=radius {
        for z in &layer {
            let lhs = psi.apply(z).mul(x).mul(&z.inverse());
            if let Some(&i) = index.get(&lhs) {
                return Some((i, z.clone()));
            }
        }
        if r < radius {
            layer = next_sphere(rank, &layer);
        }
    }
    None
}

/// Looks for `z` with `x = (z^-1 ψ) y z`.
///
/// Identity twisting is decided exactly by ordinary conjugacy. Otherwise an
/// abelianization obstruction may prove `No`, and the remaining cases are a
/// shortlex search of the ball of radius `budget.radius`.
pub fn twisted_conjugator(x: &Word, y: &Word, psi: &Automorphism, budget: Budget) -> Decision<Word> {
    if psi.is_identity() {
        return match conjugacy_witness(x, y) {
            Some(z) => Decision::Yes(z),
            None => Decision::No,
        };
    }
    if abelian_obstruction(x, y, psi) {
        return Decision::No;
    }
    match search_twisted(x, std::slice::from_ref(y), psi, budget.radius) {
        Some((_, z)) => {
            debug_assert_eq!(psi.apply(&z.inverse()).mul(y).mul(&z), *x);
            Decision::Yes(z)
        }
        None => Decision::Unknown(Exhausted::new(format!(
            "no twisted conjugator of length <= {}",
            budget.radius
        ))),
    }
}

#[derive(Clone, Debug)]
pub struct EaStatus {
    pub e_a: Option<u64>,
    pub witness: Option<TwistedWitness>,
    pub unresolved_divisors: Vec<u64>,
}

impl EaStatus {
    pub fn is_exact(&self) -> bool {
        self.e_a.is_some() && self.unresolved_divisors.is_empty()
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Least positive generator `e_a` of `E_a = { k | x φ^k ~_(φ^a) x }`,
/// scanning the divisors of `|a|` in ascending order.
pub fn compute_ea(x: &Word, phi: &Automorphism, a: i64, budget: Budget) -> EaStatus {
    assert!(a != 0, "compute_ea needs a non-zero exponent");
    let ctx = TwistedContext::new(x.clone(), a, phi.clone());
    let psi = phi.power(a);
    let top = a.unsigned_abs();
    let mut unresolved = Vec::new();
    for d in divisors(top) {
        let target = phi.apply_power(d as i64, x);
        let witness = match twisted_conjugator(x, &target, &psi, budget) {
            Decision::Yes(z) => TwistedWitness::new(&ctx, d as i64, z),
            // The search may miss at d = |a|, but x itself always works there.
            _ if d == top => {
                let w = TwistedWitness::trivial_top(&ctx);
                if a > 0 {
                    w
                } else {
                    negate_witness(&w)
                }
            }
            Decision::No => continue,
            Decision::Unknown(_) => {
                unresolved.push(d);
                continue;
            }
        };
        assert!(verify_witness(&witness), "e_a witness failed verification");
        return EaStatus {
            e_a: Some(d),
            witness: Some(witness),
            unresolved_divisors: unresolved,
        };
    }
    unreachable!("d = |a| always has a witness")
}

/// Folded graph of verified elements of `C_0 = Fix(y -> x^-1 (y φ^a) x)`.
#[derive(Clone, Debug)]
pub struct TwistedCentralizer {
    pub graph: SubgroupGraph,
    /// Proven equal to `C_0` (the twisting is inner).
    pub exact: bool,
    /// The last sphere of the search added nothing new.
    pub stabilized: bool,
}

impl TwistedCentralizer {
    pub fn complete(&self) -> bool {
        self.exact || self.stabilized
    }
}

/// Twisted centralizer `C_0`.
///
/// When `φ^a` is the identity the map is conjugation by `x` and `C_0` is the
/// ordinary centralizer, computed exactly. Otherwise every word of the ball
/// of radius `budget.radius` that is not yet in the graph is tested and the
/// fixed ones are folded in.
pub fn twisted_centralizer(x: &Word, phi: &Automorphism, a: i64, budget: Budget) -> TwistedCentralizer {
    let rank = phi.rank();
    if phi.power(a).is_identity() {
        let graph = if x.is_identity() {
            SubgroupGraph::full(rank)
        } else {
            SubgroupGraph::build(rank, &[centralizer_free(x).expect("non-trivial")])
        };
        return TwistedCentralizer {
            graph,
            exact: true,
            stabilized: true,
        };
    }
    let ctx = TwistedContext::new(x.clone(), a, phi.clone());
    let psi = ctx.fixing_map();
    let mut gens: Vec<Word> = Vec::new();
    let mut graph = SubgroupGraph::trivial(rank);
    let mut layer = vec![Word::identity()];
    let mut last_added = 0;
    for r in 0..=budget.radius {
        for y in &layer {
            if !graph.contains(y) && psi(y) == *y {
                gens.push(y.clone());
                graph = SubgroupGraph::build(rank, &gens);
                last_added = r;
            }
        }
        if r < budget.radius {
            layer = next_sphere(rank, &layer);
        }
    }
    for b in graph.basis() {
        assert_eq!(psi(b), *b, "twisted centralizer basis element not fixed");
    }
    TwistedCentralizer {
        graph,
        exact: false,
        stabilized: budget.radius == 0 || last_added < budget.radius,
    }
}
