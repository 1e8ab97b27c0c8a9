//! Finite automata over the group alphabet `{t, t^-1} ∪ generators^±`,
//! standing for rational subsets of `F_n ⋊_φ ℤ`.
//!
//! Automata are kept free of epsilon moves; every operation builds the
//! epsilon-free result directly. Membership of a group element in the subset
//! an automaton describes is not decided here; the automata are checked by
//! enumerating words and evaluating them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::automorphism::Automorphism;
use crate::centralizer::CentralizerResult;
use crate::error::{Error, Result};
use crate::fbc::{FbcElement, GroupPresentation};
use crate::stallings::SubgroupGraph;
use crate::word::{split_power, Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// `t` (false) or `t^-1` (true).
    T(bool),
    Gen(Letter),
}

impl Symbol {
    pub fn inverse(self) -> Symbol {
        match self {
            Symbol::T(inv) => Symbol::T(!inv),
            Symbol::Gen(l) => Symbol::Gen(l.inverse()),
        }
    }

    /// All symbols for a rank, in enumeration order.
    pub fn all(rank: usize) -> Vec<Symbol> {
        let mut v = vec![Symbol::T(false), Symbol::T(true)];
        v.extend(Letter::all(rank).into_iter().map(Symbol::Gen));
        v
    }

    pub fn parse(alphabet: &Alphabet, tok: &str) -> Result<Symbol> {
        let (name, k) = split_power(tok)?;
        if k != 1 && k != -1 {
            return Err(Error::Parse(format!("`{tok}` is not a single letter")));
        }
        if name == "t" {
            return Ok(Symbol::T(k < 0));
        }
        let gen = alphabet
            .index_of(name)
            .ok_or_else(|| Error::UnknownTerminal(tok.to_string()))?;
        Ok(Symbol::Gen(Letter::new(gen, k < 0)))
    }

    pub fn format(self, alphabet: &Alphabet) -> String {
        match self {
            Symbol::T(false) => "t".into(),
            Symbol::T(true) => "t^-1".into(),
            Symbol::Gen(l) => alphabet.letter_name(l),
        }
    }

    fn rank_ok(self, rank: usize) -> bool {
        match self {
            Symbol::T(_) => true,
            Symbol::Gen(l) => (l.gen as usize) < rank,
        }
    }
}

/// Letters spelling `g = t^a u`: `|a|` copies of `t^±1`, then `u`.
pub fn spell(g: &FbcElement) -> Vec<Symbol> {
    let mut out = vec![Symbol::T(g.a < 0); g.a.unsigned_abs() as usize];
    out.extend(g.u.letters().iter().map(|&l| Symbol::Gen(l)));
    out
}

/// Formal inverse of a spelled word.
pub fn invert_spelling(w: &[Symbol]) -> Vec<Symbol> {
    w.iter().rev().map(|s| s.inverse()).collect()
}

/// The group element a word over the group alphabet represents.
pub fn evaluate(pres: &GroupPresentation, w: &[Symbol]) -> FbcElement {
    let mut acc = FbcElement::identity();
    let mut run: Vec<Letter> = Vec::new();
    for &s in w {
        match s {
            Symbol::Gen(l) => run.push(l),
            Symbol::T(inv) => {
                if !run.is_empty() {
                    acc = pres.mul(&acc, &FbcElement::word(Word::reduce(run.drain(..))));
                }
                acc = pres.mul(&acc, &FbcElement::t_power(if inv { -1 } else { 1 }));
            }
        }
    }
    if !run.is_empty() {
        acc = pres.mul(&acc, &FbcElement::word(Word::reduce(run)));
    }
    acc
}

pub fn format_symbols(alphabet: &Alphabet, w: &[Symbol]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|s| s.format(alphabet))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupNfa {
    rank: usize,
    states: usize,
    edges: BTreeSet<(usize, Symbol, usize)>,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
}

impl GroupNfa {
    pub fn empty(rank: usize) -> Self {
        GroupNfa {
            rank,
            states: 0,
            edges: BTreeSet::new(),
            initial: BTreeSet::new(),
            accepting: BTreeSet::new(),
        }
    }

    pub fn new(
        rank: usize,
        states: usize,
        edges: impl IntoIterator<Item = (usize, Symbol, usize)>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let nfa = GroupNfa {
            rank,
            states,
            edges: edges.into_iter().collect(),
            initial: initial.into_iter().collect(),
            accepting: accepting.into_iter().collect(),
        };
        let in_range = |s: &usize| *s < states;
        if !nfa.initial.iter().all(in_range)
            || !nfa.accepting.iter().all(in_range)
            || !nfa
                .edges
                .iter()
                .all(|(p, s, q)| *p < states && *q < states && s.rank_ok(rank))
        {
            return Err(Error::Syntax("automaton references an undeclared state or letter".into()));
        }
        Ok(nfa)
    }

    /// Accepts exactly one word.
    pub fn word(rank: usize, w: &[Symbol]) -> Self {
        let edges = w.iter().enumerate().map(|(i, &s)| (i, s, i + 1));
        GroupNfa::new(rank, w.len() + 1, edges, [0], [w.len()]).expect("well formed")
    }

    /// Loops at the base of a folded subgroup graph, read in both directions.
    pub fn from_subgroup_graph(g: &SubgroupGraph) -> Self {
        let mut edges = BTreeSet::new();
        for (src, dst, gen) in g.edge_list() {
            edges.insert((src, Symbol::Gen(Letter::pos(gen)), dst));
            edges.insert((dst, Symbol::Gen(Letter::neg(gen)), src));
        }
        GroupNfa {
            rank: g.ambient_rank(),
            states: g.vertex_count(),
            edges,
            initial: [0].into(),
            accepting: [0].into(),
        }
    }

    /// One state with a loop spelling each generator and each inverse, so
    /// the language evaluates onto the generated subgroup.
    pub fn subgroup_loops(rank: usize, gens: &[FbcElement]) -> Self {
        let mut nfa = GroupNfa {
            rank,
            states: 1,
            edges: BTreeSet::new(),
            initial: [0].into(),
            accepting: [0].into(),
        };
        for g in gens {
            let w = spell(g);
            for path in [w.clone(), invert_spelling(&w)] {
                let mut prev = 0;
                for (i, &s) in path.iter().enumerate() {
                    let next = if i + 1 == path.len() {
                        0
                    } else {
                        nfa.states += 1;
                        nfa.states - 1
                    };
                    nfa.edges.insert((prev, s, next));
                    prev = next;
                }
            }
        }
        nfa
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn edges(&self) -> impl Iterator<Item = &(usize, Symbol, usize)> {
        self.edges.iter()
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    fn accepts_empty(&self) -> bool {
        self.initial.iter().any(|s| self.accepting.contains(s))
    }

    fn check(&self, other: &GroupNfa) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    fn shifted(&self, off: usize) -> impl Iterator<Item = (usize, Symbol, usize)> + '_ {
        self.edges.iter().map(move |&(p, s, q)| (p + off, s, q + off))
    }

    pub fn union(&self, other: &GroupNfa) -> Result<GroupNfa> {
        self.check(other)?;
        let off = self.states;
        Ok(GroupNfa {
            rank: self.rank,
            states: self.states + other.states,
            edges: self.edges.iter().copied().chain(other.shifted(off)).collect(),
            initial: self
                .initial
                .iter()
                .copied()
                .chain(other.initial.iter().map(|s| s + off))
                .collect(),
            accepting: self
                .accepting
                .iter()
                .copied()
                .chain(other.accepting.iter().map(|s| s + off))
                .collect(),
        })
    }

    pub fn concat(&self, other: &GroupNfa) -> Result<GroupNfa> {
        self.check(other)?;
        let off = self.states;
        let mut edges: BTreeSet<_> = self.edges.iter().copied().chain(other.shifted(off)).collect();
        for &(p, s, q) in &other.edges {
            if other.initial.contains(&p) {
                for &f in &self.accepting {
                    edges.insert((f, s, q + off));
                }
            }
        }
        let mut initial = self.initial.clone();
        if self.accepts_empty() {
            initial.extend(other.initial.iter().map(|s| s + off));
        }
        let mut accepting: BTreeSet<usize> = other.accepting.iter().map(|s| s + off).collect();
        if other.accepts_empty() {
            accepting.extend(self.accepting.iter().copied());
        }
        Ok(GroupNfa {
            rank: self.rank,
            states: self.states + other.states,
            edges,
            initial,
            accepting,
        })
    }

    /// One or more repetitions.
    pub fn plus(&self) -> GroupNfa {
        let mut out = self.clone();
        for &(p, s, q) in &self.edges {
            if self.initial.contains(&p) {
                for &f in &self.accepting {
                    out.edges.insert((f, s, q));
                }
            }
        }
        out
    }

    /// Accepts the formal inverses of the accepted words.
    pub fn inversion(&self) -> GroupNfa {
        GroupNfa {
            rank: self.rank,
            states: self.states,
            edges: self.edges.iter().map(|&(p, s, q)| (q, s.inverse(), p)).collect(),
            initial: self.accepting.clone(),
            accepting: self.initial.clone(),
        }
    }

    /// Replaces every generator edge by a path spelling its image under
    /// `phi^e`; `t` edges are kept.
    pub fn apply_automorphism(&self, phi: &Automorphism, e: i64) -> GroupNfa {
        let mut out = GroupNfa {
            rank: self.rank,
            states: self.states,
            edges: BTreeSet::new(),
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
        };
        for &(p, s, q) in &self.edges {
            match s {
                Symbol::T(_) => {
                    out.edges.insert((p, s, q));
                }
                Symbol::Gen(l) => {
                    let image = phi.apply_power(e, &Word::letter(l));
                    let letters = image.letters();
                    let mut prev = p;
                    for (i, &m) in letters.iter().enumerate() {
                        let next = if i + 1 == letters.len() {
                            q
                        } else {
                            out.states += 1;
                            out.states - 1
                        };
                        out.edges.insert((prev, Symbol::Gen(m), next));
                        prev = next;
                    }
                }
            }
        }
        out
    }

    fn closure(&self, start: &BTreeSet<usize>, forward: bool) -> BTreeSet<usize> {
        let mut seen = start.clone();
        let mut stack: Vec<usize> = start.iter().copied().collect();
        while let Some(v) = stack.pop() {
            for &(p, _, q) in &self.edges {
                let (from, to) = if forward { (p, q) } else { (q, p) };
                if from == v && seen.insert(to) {
                    stack.push(to);
                }
            }
        }
        seen
    }

    /// Drops states that are unreachable or cannot reach an accepting state,
    /// renumbering the rest in order.
    pub fn trim(&self) -> GroupNfa {
        let reach = self.closure(&self.initial, true);
        let coreach = self.closure(&self.accepting, false);
        let keep: Vec<usize> = (0..self.states)
            .filter(|s| reach.contains(s) && coreach.contains(s))
            .collect();
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        GroupNfa {
            rank: self.rank,
            states: keep.len(),
            edges: self
                .edges
                .iter()
                .filter_map(|&(p, s, q)| Some((*index.get(&p)?, s, *index.get(&q)?)))
                .collect(),
            initial: self.initial.iter().filter_map(|s| index.get(s).copied()).collect(),
            accepting: self.accepting.iter().filter_map(|s| index.get(s).copied()).collect(),
        }
    }

    fn step(&self, from: &BTreeSet<usize>, sym: Symbol) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter(|(p, s, _)| *s == sym && from.contains(p))
            .map(|&(_, _, q)| q)
            .collect()
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut cur = self.initial.clone();
        for &s in w {
            cur = self.step(&cur, s);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|s| self.accepting.contains(s))
    }

    /// All accepted words of length at most `maxlen`, shortest first and
    /// lexicographic within a length.
    pub fn enumerate(&self, maxlen: usize) -> Vec<Vec<Symbol>> {
        let trimmed = self.trim();
        let symbols = Symbol::all(self.rank);
        let mut out = Vec::new();
        let mut frontier: Vec<(Vec<Symbol>, BTreeSet<usize>)> = vec![(Vec::new(), trimmed.initial.clone())];
        for len in 0..=maxlen {
            for (w, states) in &frontier {
                if states.iter().any(|s| trimmed.accepting.contains(s)) {
                    out.push(w.clone());
                }
            }
            if len == maxlen {
                break;
            }
            let mut next = Vec::new();
            for (w, states) in &frontier {
                for &s in &symbols {
                    let to = trimmed.step(states, s);
                    if !to.is_empty() {
                        let mut v = w.clone();
                        v.push(s);
                        next.push((v, to));
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Text form: `states n`, `initial ...`, `accept ...`, `edge p q <letter>`.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut s = format!("states {}\n", self.states);
        let list = |set: &BTreeSet<usize>| {
            set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(s, "initial {}", list(&self.initial));
        let _ = writeln!(s, "accept {}", list(&self.accepting));
        for &(p, sym, q) in &self.edges {
            let _ = writeln!(s, "edge {p} {q} {}", sym.format(alphabet));
        }
        s
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<GroupNfa> {
        let mut states = None;
        let mut initial = Vec::new();
        let mut accepting = Vec::new();
        let mut edges = Vec::new();
        let num = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| Error::Syntax(format!("expected a state number, found `{tok}`")))
        };
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let res: Result<()> = (|| {
                match toks[0] {
                    "states" if toks.len() == 2 => states = Some(num(toks[1])?),
                    "initial" => {
                        for t in &toks[1..] {
                            initial.push(num(t)?);
                        }
                    }
                    "accept" => {
                        for t in &toks[1..] {
                            accepting.push(num(t)?);
                        }
                    }
                    "edge" if toks.len() == 4 => {
                        edges.push((num(toks[1])?, Symbol::parse(alphabet, toks[3])?, num(toks[2])?))
                    }
                    _ => return Err(Error::Syntax(format!("unrecognised line `{line}`"))),
                }
                Ok(())
            })();
            res.map_err(|e| e.at_line(line_no))?;
        }
        let states = states.ok_or_else(|| Error::Syntax("missing `states` line".into()))?;
        GroupNfa::new(alphabet.rank(), states, edges, initial, accepting)
    }
}

/// Automaton whose words evaluate onto the centralizer described by `c`.
///
/// For `a != 0` with vertical generator `t^e z`, the `t^(ke) C_(ke)` part
/// for `k > 0` is `(t^e C_e)^+` with `C_e = (C_0 φ^e) z`; negative exponents
/// are its inverse, and `C_0` is read off its folded graph. Without a
/// vertical generator (or for `a = 0`) the generator loops are used.
pub fn build_centralizer_nfa(pres: &GroupPresentation, c: &CentralizerResult) -> Result<GroupNfa> {
    let rank = pres.rank();
    if c.input.a == 0 {
        return Ok(GroupNfa::subgroup_loops(rank, &c.generators));
    }
    let torus = c.torus_generator.as_ref().ok_or(Error::MissingWitness)?;
    let e = torus.a;
    debug_assert!(e > 0);
    let a0 = GroupNfa::from_subgroup_graph(&c.c0);
    let ce = a0
        .apply_automorphism(pres.phi(), e)
        .concat(&GroupNfa::word(rank, &spell(&FbcElement::word(torus.u.clone()))))?;
    let te = GroupNfa::word(rank, &spell(&FbcElement::t_power(e)));
    let s = te.concat(&ce)?.plus();
    Ok(s.inversion().union(&a0)?.union(&s)?.trim())
}
