//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p fbc-core --test acceptance`.

mod common;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use common::*;
use fbc_core::cfl::{bar_hillel, constrained_conjugacy, Cfg};
use fbc_core::oracle::{ball, brute_centralizer, brute_ea};
use fbc_core::ratlang::{build_centralizer_nfa, evaluate, GroupNfa, Symbol};
use fbc_core::twisted::{
    combine_witnesses, compute_ea, negate_witness, shift_coset_witness, verify_witness, TwistedContext,
    TwistedWitness,
};
use fbc_core::word::{ball as word_ball, conjugacy_witness, primitive_root};
use fbc_core::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, start: Instant, o: Outcome) -> Outcome {
    let took = start.elapsed();
    if o.ok && took > limit {
        fail(format!("{} (took {took:.1?}, limit {limit:?})", o.detail))
    } else {
        Outcome {
            ok: o.ok,
            detail: format!("{} [{took:.2?}]", o.detail),
        }
    }
}

/// The fixtures of the completeness criterion.
fn fixtures() -> Vec<(&'static str, GroupPresentation, FbcElement)> {
    let s = pres(swap());
    let id = pres(Automorphism::identity(2));
    let n = pres(nielsen());
    let e = |p: &GroupPresentation, t: &str| p.parse_element(t).unwrap();
    vec![
        ("σ, a b", s.clone(), e(&s, "a b")),
        ("σ, t^2 a", s.clone(), e(&s, "t^2 a")),
        ("σ, t", s.clone(), e(&s, "t")),
        ("id, t a", id.clone(), e(&id, "t a")),
        ("id, a b a b", id.clone(), e(&id, "a b a b")),
        ("ν, a", n.clone(), e(&n, "a")),
    ]
}

fn phi_pool<R: Rng>(rng: &mut R, rank: usize) -> Automorphism {
    match (rank, rng.gen_range(0..3)) {
        (2, 0) => swap(),
        (2, 1) => nielsen(),
        _ => random_nielsen(rng, rank, 6).0,
    }
}

// 1. combine / negate / shift on verified witnesses always verify.
fn witness_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases = 0;
    let mut bad = Vec::new();
    while cases < 1200 {
        let rank = if rng.gen_bool(0.5) { 2 } else { 3 };
        let phi = phi_pool(&mut rng, rank);
        let x = random_word(&mut rng, rank, 4);
        let a = rng.gen_range(-3i64..=3);
        let ctx = TwistedContext::new(x, a, phi.clone());
        let top = TwistedWitness::trivial_top(&ctx);
        let mut pool = vec![TwistedWitness::new(&ctx, 0, Word::identity()), top.clone()];
        // A few members of C_0 from the fixing map, if short ones exist.
        let fix = ctx.fixing_map();
        for y in word_ball(rank, 2) {
            if !y.is_identity() && fix(&y) == y {
                pool.push(TwistedWitness::new(&ctx, 0, y));
                break;
            }
        }
        for _ in 0..6 {
            let i = rng.gen_range(0..pool.len());
            let j = rng.gen_range(0..pool.len());
            let (y, z) = (&pool[i], &pool[j]);
            let out = match rng.gen_range(0..3) {
                0 if (y.k + z.k).abs() <= 6 => combine_witnesses(y, z).unwrap(),
                1 => negate_witness(y),
                _ if a != 0 && y.k % a == 0 && (y.k + a).abs() <= 6 => match shift_coset_witness(y, &top) {
                    Ok(w) => w,
                    Err(e) => {
                        bad.push(format!("shift rejected valid inputs: {e}"));
                        continue;
                    }
                },
                _ => continue,
            };
            cases += 1;
            if !verify_witness(&out) {
                bad.push(format!("k = {} failed to verify", out.k));
            } else if out.z.len() <= 40 {
                pool.push(out);
            }
        }
    }
    if bad.is_empty() {
        pass(format!("{cases} derived witnesses verified"))
    } else {
        fail(format!("{} failures, first: {}", bad.len(), bad[0]))
    }
}

// 2. e_a divides a, the z = x witness verifies at |a|, and brute-force E_a
//    lies in e_a ℤ when no divisor was left unresolved.
fn ea_divisors() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let fib = swap().compose(&nielsen());
    let pool = [swap(), nielsen(), Automorphism::identity(2), nielsen().invert(), fib, auto(2, &["a^-1", "b"])];
    let budget = Budget::new(3, 4);
    let mut exact = 0;
    for i in 0..50 {
        let phi = pool[i % pool.len()].clone();
        let x = random_word(&mut rng, 2, 4);
        let mut a = rng.gen_range(-12i64..=12);
        if a == 0 {
            a = 12;
        }
        let st = compute_ea(&x, &phi, a, budget);
        let Some(e) = st.e_a else {
            return fail(format!("instance {i}: no e_a"));
        };
        if a % e as i64 != 0 || !st.witness.as_ref().is_some_and(verify_witness) {
            return fail(format!("instance {i}: e_a = {e} does not divide {a} or witness invalid"));
        }
        let ctx = TwistedContext::new(x.clone(), a, phi.clone());
        let top = TwistedWitness::trivial_top(&ctx);
        let top = if a > 0 { top } else { negate_witness(&top) };
        if top.k != a.abs() || !verify_witness(&top) {
            return fail(format!("instance {i}: z = x witness fails at |a|"));
        }
        if st.unresolved_divisors.is_empty() {
            exact += 1;
            let brute = match brute_ea(&x, &phi, a, 4, 3) {
                Ok(v) => v,
                Err(err) => return fail(format!("instance {i}: {err}")),
            };
            if let Some(k) = brute.iter().find(|&&k| k % e as i64 != 0) {
                return fail(format!("instance {i}: brute E_a contains {k}, e_a = {e}"));
            }
        }
    }
    pass(format!("50 instances, {exact} cross-checked against brute E_a"))
}

// 3 and 4. Soundness on every instance; completeness on the fixture balls.
fn soundness_and_completeness() -> (Outcome, Outcome) {
    let budget = Budget::default();
    let mut checked = 0;
    let mut unsound = Vec::new();
    let mut check = |p: &GroupPresentation, g: &FbcElement, c: &CentralizerResult| {
        for h in &c.generators {
            checked += 1;
            if !p.commute(h, g) {
                unsound.push(format!("{} vs {}", p.format_element(h), p.format_element(g)));
            }
        }
    };

    let mut incomplete = Vec::new();
    let mut members = 0;
    for (name, p, g) in fixtures() {
        let c = centralize(&p, &g, budget);
        check(&p, &g, &c);
        match brute_centralizer(&p, &g, 4, 4) {
            Ok(elems) => {
                for h in elems {
                    members += 1;
                    if !member(&p, &c, &h).is_yes() {
                        incomplete.push(format!("{name}: {}", p.format_element(&h)));
                    }
                }
            }
            Err(e) => incomplete.push(format!("{name}: {e}")),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let phi = phi_pool(&mut rng, 2);
        let p = pres(phi);
        let g = FbcElement::new(rng.gen_range(-3..=3), random_word(&mut rng, 2, 4));
        let c = centralize(&p, &g, Budget::new(4, 8));
        check(&p, &g, &c);
    }
    let sound = if unsound.is_empty() {
        pass(format!("{checked} generators commute with their inputs"))
    } else {
        fail(format!("{} non-commuting generators, first {}", unsound.len(), unsound[0]))
    };
    let complete = if incomplete.is_empty() {
        pass(format!("{members} commuting ball elements are members"))
    } else {
        fail(format!("{} misses, first {}", incomplete.len(), incomplete[0]))
    };
    (sound, complete)
}

// 5. The centralizer automaton for σ, t^2 a against the oracle ball.
fn rational_cross_check() -> Outcome {
    let p = pres(swap());
    let g = p.parse_element("t^2 a").unwrap();
    let c = centralize(&p, &g, Budget::default());
    let nfa = match build_centralizer_nfa(&p, &c) {
        Ok(n) => n,
        Err(e) => return fail(e.to_string()),
    };
    let short = nfa.enumerate(8);
    for w in &short {
        let h = evaluate(&p, w);
        if !p.commute(&h, &g) {
            return fail(format!("accepted word evaluates to {}", p.format_element(&h)));
        }
    }
    let values: HashSet<FbcElement> = nfa.enumerate(10).iter().map(|w| evaluate(&p, w)).collect();
    let want = brute_centralizer(&p, &g, 3, 3).unwrap();
    match want.iter().find(|h| !values.contains(h)) {
        Some(h) => fail(format!("{} is not reached by words of length <= 10", p.format_element(h))),
        None => pass(format!(
            "{} short words sound, {} ball elements reached",
            short.len(),
            want.len()
        )),
    }
}

// 6. Conjugator cosets on random conjugate pairs.
fn conjugator_sets() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let fx = fixtures();
    let budget = Budget::default();
    let mut checks = 0;
    for i in 0..20 {
        let (name, p, g) = &fx[i % fx.len()];
        let conj_ball = ball(p, 2, 2).unwrap().elements;
        let w0 = conj_ball.choose(&mut rng).unwrap();
        let h = p.conjugate(g, w0);
        let sol = match conjugators(p, g, &h, budget) {
            Decision::Yes(s) => s,
            other => return fail(format!("{name} by {}: {other:?}", p.format_element(w0))),
        };
        if p.conjugate(g, &sol.witness) != h {
            return fail(format!("{name}: witness does not verify"));
        }
        let wi = p.inv(&sol.witness);
        for w in ball(p, 2, 3).unwrap().elements {
            checks += 1;
            let solves = p.conjugate(g, &w) == h;
            let in_coset = member(p, &sol.centralizer, &p.mul(&w, &wi)).is_yes();
            if solves != in_coset {
                return fail(format!(
                    "{name}, h = {}: w = {} solves = {solves}, coset member = {in_coset}",
                    p.format_element(&h),
                    p.format_element(&w)
                ));
            }
        }
    }
    pass(format!("20 pairs, {checks} coset checks"))
}

// 7. Bar-Hillel against brute force, and the two boundary grammars.
fn constrained() -> Outcome {
    let p = pres(swap());
    let ab = p.alphabet().clone();
    let sym = |s: &str| -> Vec<Symbol> { s.split_whitespace().map(|t| Symbol::parse(&ab, t).unwrap()).collect() };
    let grammars = [
        "S -> 1 | a S a^-1 S | b S b^-1 S",
        "S -> 1 | t S t^-1 S | a S",
        "S -> a S b | 1",
        "S -> A B\nA -> a A | t\nB -> b B | 1",
        "S -> S S | a | t",
    ];
    let mut pairs = Vec::new();
    for (i, text) in grammars.iter().enumerate() {
        let g = Cfg::parse(&ab, &format!("{text}\n")).unwrap();
        let loops = GroupNfa::subgroup_loops(2, &[p.parse_element("a").unwrap(), FbcElement::t_power(1), p.parse_element("b").unwrap()]);
        let chain = GroupNfa::word(2, &sym("a a b")).plus();
        let dyck_pair = GroupNfa::word(2, &sym("t a t^-1")).union(&GroupNfa::word(2, &sym("a a^-1"))).unwrap().plus();
        let nfa = match i % 3 {
            0 => loops.concat(&GroupNfa::word(2, &sym("a^-1"))).unwrap().union(&dyck_pair).unwrap(),
            1 => loops,
            _ => chain.union(&dyck_pair).unwrap(),
        };
        pairs.push((g.clone(), nfa.clone()));
        pairs.push((g, nfa.inversion()));
    }
    let mut compared = 0;
    for (i, (g, a)) in pairs.iter().enumerate() {
        let inter = bar_hillel(g, a).unwrap();
        let got: BTreeSet<Vec<Symbol>> = inter.enumerate(8).into_iter().collect();
        let want: BTreeSet<Vec<Symbol>> = a.enumerate(8).into_iter().filter(|w| g.generates(w)).collect();
        if got != want {
            return fail(format!("pair {i}: intersection differs ({} vs {} words)", got.len(), want.len()));
        }
        // Words up to length 8 witness non-emptiness; longer ones may exist.
        if inter.is_empty() && !want.is_empty() {
            return fail(format!("pair {i}: emptiness disagrees"));
        }
        compared += want.len();
    }

    // Boundary grammars.
    let budget = Budget::default();
    let all = Cfg::all_words(2);
    let none = Cfg::empty_language(2);
    let e = |s: &str| p.parse_element(s).unwrap();
    let cases = [("t a", "t b"), ("t b", "t a"), ("t^2 a", "t^2 a a"), ("a b", "b a"), ("t a", "t^2 a"), ("t", "t a b^-1")];
    for (g, h) in cases {
        let (g, h) = (e(g), e(h));
        let plain = conjugators(&p, &h, &g, budget);
        let c = constrained_conjugacy(&p, &g, &h, &all, budget).unwrap();
        if plain.is_yes() != c.is_yes() || plain.is_no() != c.is_no() {
            return fail(format!("all-words grammar: {:?} vs plain {:?}", c, plain.map(|_| ())));
        }
        if let Decision::Yes(w) = &c {
            if p.conjugate(&h, w) != g {
                return fail("certificate does not conjugate");
            }
        }
        if !constrained_conjugacy(&p, &g, &h, &none, budget).unwrap().is_no() {
            return fail("empty grammar did not answer No");
        }
    }

    // K = elements with zero, resp. positive, t-exponent, against a ball scan.
    let zero = "S -> 1 | X S | t S t^-1 S | t^-1 S t S\nX -> a | a^-1 | b | b^-1\n";
    let pos = "P -> Z t N\nN -> Z | P\nZ -> 1 | X Z | t Z t^-1 Z | t^-1 Z t Z\nX -> a | a^-1 | b | b^-1\n";
    type InK = fn(&FbcElement) -> bool;
    let ks: [(&str, InK); 2] = [(zero, |w| w.a == 0), (pos, |w| w.a > 0)];
    let scan = ball(&p, 3, 3).unwrap().elements;
    for (text, in_k) in ks.iter() {
        let gram = Cfg::parse(&ab, text).unwrap();
        for (g, h) in [("t b", "t a"), ("t^2 a", "t^2 b"), ("a b", "b a"), ("t", "t a b^-1")] {
            let (g, h) = (e(g), e(h));
            let d = constrained_conjugacy(&p, &g, &h, &gram, budget).unwrap();
            let oracle = scan.iter().any(|w| in_k(w) && p.conjugate(&h, w) == g);
            let ok = match &d {
                Decision::Yes(w) => in_k(w) && p.conjugate(&h, w) == g,
                Decision::No => !oracle,
                Decision::Unknown(_) => false,
            };
            if !ok || (oracle && !d.is_yes()) {
                return fail(format!("K-constrained {:?} disagrees with ball scan ({oracle})", d));
            }
        }
    }
    pass(format!("{} pairs ({compared} words), boundary grammars and K-scans agree", pairs.len()))
}

// 8. Free-group layer against brute force.
fn free_layer() -> Outcome {
    let words = word_ball(2, 4);
    let mut conj: HashMap<&Word, HashSet<Word>> = HashMap::new();
    for x in &words {
        conj.insert(x, words.iter().map(|z| x.conjugate_by(z)).collect());
    }
    for x in &words {
        for y in &words {
            let brute = conj[y].contains(x);
            match conjugacy_witness(x, y) {
                Some(z) if brute && y.conjugate_by(&z) == *x => {}
                None if !brute => {}
                other => return fail(format!("{x:?} ~ {y:?}: brute {brute}, got {other:?}")),
            }
        }
    }
    let six = word_ball(2, 6);
    let mut best: HashMap<Word, u32> = HashMap::new();
    for r in &six {
        if r.is_identity() {
            continue;
        }
        for k in 1..=6u32 {
            let p = r.pow(k as i64);
            if p.len() <= 6 {
                let e = best.entry(p).or_insert(k);
                *e = (*e).max(k);
            }
        }
    }
    for x in six.iter().filter(|x| !x.is_identity()) {
        let (r, k) = primitive_root(x);
        if r.pow(k as i64) != *x || best[x] != k {
            return fail(format!("root of {x:?}: got ({r:?}, {k}), brute exponent {}", best[x]));
        }
    }
    pass(format!("{} pairs, {} roots", words.len() * words.len(), six.len() - 1))
}

// 9. Inverse of Nielsen compositions; non-surjective maps rejected.
fn inversion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let rank = 2 + i % 3;
        let (phi, known) = random_nielsen(&mut rng, rank, 8);
        if phi.invert().images() != known.images() {
            return fail(format!("composition {i}: inverse differs"));
        }
    }
    for i in 0..10 {
        let rank = 2 + i % 2;
        let (phi, _) = random_nielsen(&mut rng, rank, 4);
        // Square the first generator afterwards: determinant ±2 on the
        // abelianization, so the map cannot be onto.
        let mut squash: Vec<Word> = (0..rank).map(|g| Word::letter(Letter::pos(g as u32))).collect();
        squash[0] = squash[0].pow(2);
        let images: Vec<Word> = phi.images().iter().map(|w| fbc_core::stallings::evaluate(w, &squash)).collect();
        if Automorphism::new(images) != Err(Error::NotBijective) {
            return fail(format!("endomorphism {i} accepted"));
        }
    }
    pass("200 inverses match, 10 endomorphisms rejected")
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let t = Instant::now();
    results.push((1, "witness algebra", timed(Duration::from_secs(10), t, witness_algebra())));
    let t = Instant::now();
    results.push((2, "e_a divisor property", timed(Duration::from_secs(60), t, ea_divisors())));
    let t = Instant::now();
    let (sound, complete) = soundness_and_completeness();
    results.push((3, "centralizer soundness", sound));
    results.push((4, "centralizer completeness", timed(Duration::from_secs(300), t, complete)));
    results.push((5, "rational expression", rational_cross_check()));
    results.push((6, "conjugator sets", conjugator_sets()));
    results.push((7, "constrained conjugacy", constrained()));
    results.push((8, "free-group layer", free_layer()));
    results.push((9, "automorphism inversion", inversion()));

    let mut failed = 0;
    for (n, name, o) in &results {
        println!("criterion {n} ({name}): {} — {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
