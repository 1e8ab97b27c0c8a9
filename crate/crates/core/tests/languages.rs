mod common;

use std::collections::BTreeSet;

use common::*;
use fbc_core::cfl::Cfg;
use fbc_core::ratlang::{evaluate, invert_spelling, GroupNfa, Symbol};
use fbc_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Lang = BTreeSet<Vec<Symbol>>;

const MAXLEN: usize = 8;

/// Small random automaton over `a, a^-1, b, t`.
fn random_nfa<R: Rng>(rng: &mut R) -> GroupNfa {
    let ab = Alphabet::standard(2);
    let letters: Vec<Symbol> = ["a", "a^-1", "b", "t"]
        .iter()
        .map(|s| Symbol::parse(&ab, s).unwrap())
        .collect();
    let states = rng.gen_range(1..=3);
    let edges: Vec<(usize, Symbol, usize)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            (
                rng.gen_range(0..states),
                letters[rng.gen_range(0..letters.len())],
                rng.gen_range(0..states),
            )
        })
        .collect();
    let accept: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    GroupNfa::new(2, states, edges, [0], accept).unwrap()
}

fn lang(a: &GroupNfa) -> Lang {
    a.enumerate(MAXLEN).into_iter().collect()
}

fn cat(x: &Lang, y: &Lang) -> Lang {
    let mut out = Lang::new();
    for u in x {
        for v in y {
            if u.len() + v.len() <= MAXLEN {
                out.insert(u.iter().chain(v).copied().collect());
            }
        }
    }
    out
}

#[test]
fn automaton_operations_match_word_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let (a, b) = (random_nfa(&mut rng), random_nfa(&mut rng));
        let (la, lb) = (lang(&a), lang(&b));

        let union: Lang = la.union(&lb).cloned().collect();
        assert_eq!(lang(&a.union(&b).unwrap()), union);
        assert_eq!(lang(&a.concat(&b).unwrap()), cat(&la, &lb));
        let inv: Lang = la.iter().map(|w| invert_spelling(w)).collect();
        assert_eq!(lang(&a.inversion()), inv);

        let mut plus = la.clone();
        loop {
            let next: Lang = plus.union(&cat(&plus, &la)).cloned().collect();
            if next == plus {
                break;
            }
            plus = next;
        }
        assert_eq!(lang(&a.plus()), plus);
        assert_eq!(lang(&a.trim()), la);
        for w in &la {
            assert!(a.accepts(w));
        }
    }
}

#[test]
fn automorphism_image_evaluates_elementwise() {
    let p = pres(nielsen());
    let ab = p.alphabet().clone();
    let text = "states 2\ninitial 0\naccept 1\nedge 0 1 a\nedge 1 1 b^-1\nedge 1 0 t\n";
    let a = GroupNfa::parse(&ab, text).unwrap();
    for e in [-2i64, 0, 1, 3] {
        let image = a.apply_automorphism(p.phi(), e);
        let want: BTreeSet<FbcElement> = a
            .enumerate(6)
            .iter()
            .map(|w| {
                let g = evaluate(&p, w);
                FbcElement::new(g.a, p.phi().apply_power(e, &g.u))
            })
            .collect();
        // Each generator path of the image is at most as long as the longest
        // image of a letter, so words up to 6 map into this range.
        let max_img = (0..2).map(|g| p.phi().power(e).image(g).len()).max().unwrap();
        let got: BTreeSet<FbcElement> = image.enumerate(6 * max_img).iter().map(|w| evaluate(&p, w)).collect();
        assert!(want.is_subset(&got), "e = {e}");
    }
}

#[test]
fn grammar_enumeration_matches_membership() {
    let ab = Alphabet::standard(2);
    let g = Cfg::parse(&ab, "S -> 1 | a S a^-1 S | b S b^-1 S\n").unwrap();
    let words = g.enumerate(6);
    for w in &words {
        assert!(g.generates(w));
        let e = evaluate(&pres(swap()), w);
        assert!(e.is_identity(), "Dyck words evaluate to 1");
    }
    assert_eq!(words.iter().filter(|w| w.len() == 4).count(), 8);
}

#[test]
fn centralizer_automata() {
    let p = pres(swap());
    let ab = p.alphabet().clone();
    let sym = |s: &str| -> Vec<Symbol> { s.split_whitespace().map(|t| Symbol::parse(&ab, t).unwrap()).collect() };

    // a = 0: loops spelling the generators.
    let g = p.parse_element("a b").unwrap();
    let c = centralize(&p, &g, Budget::default());
    let nfa = fbc_core::build_centralizer_nfa(&p, &c).unwrap();
    assert!(nfa.accepts(&sym("a b a b")));
    assert!(nfa.accepts(&sym("t a^-1 a b")));

    // Trivial C_0 and z = x: only powers of the vertical generator.
    let g = p.parse_element("t").unwrap();
    let c = centralize(&p, &g, Budget::default());
    assert!(c.c0.is_trivial());
    let nfa = fbc_core::build_centralizer_nfa(&p, &c).unwrap();
    for w in nfa.enumerate(8) {
        let h = evaluate(&p, &w);
        assert!(h.u.is_identity() && p.commute(&h, &g));
    }
}

#[test]
fn emptiness_matches_short_derivations() {
    let ab = Alphabet::standard(2);
    let grammars = [
        ("S -> A B\nA -> a A\nB -> b", true),
        ("S -> A B | b\nA -> a A\nB -> b", false),
        ("S -> A\nA -> B a\nB -> 1 | B", false),
        ("S -> S a | S b", true),
    ];
    for (text, empty) in grammars {
        let g = Cfg::parse(&ab, &format!("{text}\n")).unwrap();
        assert_eq!(g.is_empty(), empty, "{text}");
        // A productive grammar derives a word no longer than
        // |nonterminals| * (longest right-hand side).
        let bound = g.nonterminals().len() * g.rules().iter().map(|(_, r)| r.len()).max().unwrap_or(0);
        assert_eq!(g.enumerate(bound).is_empty(), empty, "{text}");
        assert_eq!(g.shortest_word().is_none(), empty);
    }
}
