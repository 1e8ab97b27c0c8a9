//! Finite generating sets for centralizers `C(t^a x)` in `F_n ⋊_φ ℤ`,
//! structural membership, and conjugator cosets.
//!
//! `t^b y` commutes with `t^a x` iff `y ∈ C_b = { y | x = (y^-1 φ^a)(x φ^b) y }`.
//! The exponents `b` that occur form `e ℤ`, and the elements with `b = 0` are
//! `C_0`. So the centralizer is generated by `C_0` together with one element
//! `t^e z`, `z ∈ C_e`, whenever `e` exists.

use std::collections::BTreeSet;

use crate::brinkmann::find_period;
use crate::decision::{Budget, Decision, Exhausted};
use crate::fbc::{FbcElement, GroupPresentation};
use crate::stallings::SubgroupGraph;
use crate::twisted::{abelian_obstruction, compute_ea, search_twisted, twisted_centralizer};
use crate::word::{centralizer_free, conjugacy_witness, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Exact,
    /// Generators are verified but may not generate the whole centralizer.
    BudgetLimited(Vec<String>),
}

impl Status {
    pub fn is_exact(&self) -> bool {
        matches!(self, Status::Exact)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::BudgetLimited(_) => "budget-limited",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CentralizerResult {
    pub input: FbcElement,
    pub generators: Vec<FbcElement>,
    /// The elements of the centralizer with zero `t`-exponent.
    pub c0: SubgroupGraph,
    /// `t^e z` with `e > 0` minimal, when found.
    pub torus_generator: Option<FbcElement>,
    pub status: Status,
}

/// `h = torus^power * rest` with `rest` in `C_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub power: i64,
    pub rest: Word,
}

fn assemble(
    pres: &GroupPresentation,
    input: &FbcElement,
    c0: SubgroupGraph,
    torus: Option<FbcElement>,
    status: Status,
) -> CentralizerResult {
    let mut generators: Vec<FbcElement> = torus.iter().cloned().collect();
    generators.extend(c0.basis().iter().cloned().map(FbcElement::word));
    for g in &generators {
        assert!(
            pres.commute(g, input),
            "centralizer generator {} does not commute with {}",
            pres.format_element(g),
            pres.format_element(input)
        );
    }
    CentralizerResult {
        input: input.clone(),
        generators,
        c0,
        torus_generator: torus,
        status,
    }
}

pub fn centralize(pres: &GroupPresentation, g: &FbcElement, budget: Budget) -> CentralizerResult {
    let phi = pres.phi();
    let rank = pres.rank();
    let x = &g.u;
    if g.a == 0 {
        if x.is_identity() {
            // Everything commutes with the identity.
            return assemble(
                pres,
                g,
                SubgroupGraph::full(rank),
                Some(FbcElement::t_power(1)),
                Status::Exact,
            );
        }
        let u = centralizer_free(x).expect("non-trivial");
        let c0 = SubgroupGraph::build(rank, &[u]);
        return match find_period(x, phi, budget.kmax) {
            Decision::Yes(p) => assemble(
                pres,
                g,
                c0,
                Some(FbcElement::new(p.e0 as i64, p.z)),
                Status::Exact,
            ),
            Decision::Unknown(e) => assemble(pres, g, c0, None, Status::BudgetLimited(vec![e.reason])),
            Decision::No => unreachable!("period search never answers No"),
        };
    }

    let ea = compute_ea(x, phi, g.a, budget);
    let e = ea.e_a.expect("e_a exists for a != 0");
    let z = ea.witness.as_ref().expect("witness accompanies e_a").z.clone();
    let tc = twisted_centralizer(x, phi, g.a, budget);
    let mut notes = Vec::new();
    if !ea.unresolved_divisors.is_empty() {
        notes.push(format!(
            "twisted tests undecided for divisors {:?} of |a|",
            ea.unresolved_divisors
        ));
    }
    if !tc.complete() {
        notes.push(format!(
            "fixed-subgroup search still growing at radius {}",
            budget.radius
        ));
    }
    let status = if notes.is_empty() {
        Status::Exact
    } else {
        Status::BudgetLimited(notes)
    };
    assemble(
        pres,
        g,
        tc.graph,
        Some(FbcElement::new(e as i64, z)),
        status,
    )
}

/// Decides `h ∈ C` from the structure of `C`. Exact for exact results; for
/// budget-limited ones a negative answer becomes `Unknown`.
pub fn member(pres: &GroupPresentation, c: &CentralizerResult, h: &FbcElement) -> Decision<Membership> {
    let found = match &c.torus_generator {
        Some(torus) => {
            if h.a % torus.a != 0 {
                None
            } else {
                let power = h.a / torus.a;
                let rest = pres.mul(&pres.pow(torus, -power), h);
                debug_assert_eq!(rest.a, 0);
                c0_member(c, &rest.u).then_some(Membership {
                    power,
                    rest: rest.u,
                })
            }
        }
        None => (h.a == 0 && c0_member(c, &h.u)).then(|| Membership {
            power: 0,
            rest: h.u.clone(),
        }),
    };
    match found {
        Some(m) => Decision::Yes(m),
        None if c.status.is_exact() => Decision::No,
        None => Decision::Unknown(Exhausted::new("centralizer is budget-limited")),
    }
}

fn c0_member(c: &CentralizerResult, w: &Word) -> bool {
    c.c0.contains(w)
}

#[derive(Clone, Debug)]
pub struct Conjugators {
    /// One solution `w` of `w^-1 g w = h`.
    pub witness: FbcElement,
    /// `C(g)`; the full solution set is `C(g) · witness`.
    pub centralizer: CentralizerResult,
}

fn exponent_order(kmax: u32) -> Vec<i64> {
    let mut cs = vec![0];
    for k in 1..=kmax as i64 {
        cs.push(k);
        cs.push(-k);
    }
    cs
}

/// Solves `w^-1 g w = h` for `w = t^c z`.
///
/// Conjugation preserves the `t`-exponent. Otherwise the equation reads
/// `v = (z^-1 φ^a)(u φ^c) z`, searched over `|c| <= kmax` and, when the
/// twisting `φ^a` is not the identity, over `|z| <= radius` (shortest `z`
/// first). The exponents `c` that admit a solution form a coset of the
/// centralizer's exponent group, so exact failures on a full residue system
/// prove there is no solution.
pub fn conjugators(
    pres: &GroupPresentation,
    g: &FbcElement,
    h: &FbcElement,
    budget: Budget,
) -> Decision<Conjugators> {
    if g.a != h.a {
        return Decision::No;
    }
    let phi = pres.phi();
    let a = g.a;
    let psi = phi.power(a);
    let (u, v) = (&g.u, &h.u);
    let cs = exponent_order(budget.kmax);
    let targets: Vec<Word> = cs.iter().map(|&c| phi.apply_power(c, u)).collect();

    let mut excluded: Vec<i64> = Vec::new();
    let mut found: Option<(i64, Word)> = None;
    if psi.is_identity() {
        for (i, y) in targets.iter().enumerate() {
            match conjugacy_witness(v, y) {
                Some(z) => {
                    found = Some((cs[i], z));
                    break;
                }
                None => excluded.push(cs[i]),
            }
        }
    } else {
        let mut live = Vec::new();
        let mut live_c = Vec::new();
        for (i, y) in targets.iter().enumerate() {
            if abelian_obstruction(v, y, &psi) {
                excluded.push(cs[i]);
            } else {
                live.push(y.clone());
                live_c.push(cs[i]);
            }
        }
        if !live.is_empty() {
            found = search_twisted(v, &live, &psi, budget.radius).map(|(i, z)| (live_c[i], z));
        }
    }

    match found {
        Some((c, z)) => {
            let witness = FbcElement::new(c, z);
            assert_eq!(&pres.conjugate(g, &witness), h, "conjugator failed verification");
            Decision::Yes(Conjugators {
                witness,
                centralizer: centralize(pres, g, budget),
            })
        }
        None => {
            let period = if a != 0 {
                compute_ea(u, phi, a, budget).e_a
            } else {
                find_period(u, phi, budget.kmax).yes().map(|p| p.e0 as u64)
            };
            if let Some(e) = period {
                let e = e as i64;
                let residues: BTreeSet<i64> = excluded.iter().map(|c| c.rem_euclid(e)).collect();
                if residues.len() as i64 == e {
                    return Decision::No;
                }
            }
            Decision::Unknown(Exhausted::new(format!(
                "no conjugator t^c z with |c| <= {} and |z| <= {}",
                budget.kmax, budget.radius
            )))
        }
    }
}
