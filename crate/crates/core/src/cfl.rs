//! Context-free grammars over the group alphabet, their intersection with
//! automata, and conjugacy constrained to a context-free subset.
//!
//! Grammar files hold lines `N -> rhs | rhs ...`. Right-hand sides mix
//! nonterminals and letters (`t`, `t^-1`, `g`, `g^-1`, `g^k`), `1` is the
//! empty string, and the first left-hand side is the start symbol.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::centralizer::conjugators;
use crate::decision::{Budget, Decision, Exhausted};
use crate::error::{Error, Result};
use crate::fbc::{FbcElement, GroupPresentation};
use crate::ratlang::{build_centralizer_nfa, evaluate, spell, GroupNfa, Symbol};
use crate::word::{split_power, Alphabet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    N(usize),
    T(Symbol),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfg {
    rank: usize,
    names: Vec<String>,
    rules: Vec<(usize, Vec<Item>)>,
}

impl Cfg {
    /// Start symbol is nonterminal 0.
    pub fn new(rank: usize, names: Vec<String>, rules: Vec<(usize, Vec<Item>)>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Syntax("grammar has no nonterminals".into()));
        }
        for (lhs, rhs) in &rules {
            let ok = *lhs < names.len()
                && rhs.iter().all(|it| match it {
                    Item::N(n) => *n < names.len(),
                    Item::T(Symbol::Gen(l)) => (l.gen as usize) < rank,
                    Item::T(Symbol::T(_)) => true,
                });
            if !ok {
                return Err(Error::Syntax("production uses an undeclared symbol".into()));
            }
        }
        Ok(Cfg { rank, names, rules })
    }

    /// `S -> 1 | x S` for every letter `x`.
    pub fn all_words(rank: usize) -> Self {
        let mut rules = vec![(0, vec![])];
        for s in Symbol::all(rank) {
            rules.push((0, vec![Item::T(s), Item::N(0)]));
        }
        Cfg { rank, names: vec!["S".into()], rules }
    }

    /// `S -> S`: no terminal string is derivable.
    pub fn empty_language(rank: usize) -> Self {
        Cfg {
            rank,
            names: vec!["S".into()],
            rules: vec![(0, vec![Item::N(0)])],
        }
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Cfg> {
        let mut lines = Vec::new();
        let mut names: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Syntax(format!("expected `N -> ...`, found `{line}`")).at_line(i + 1))?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(Error::Syntax(format!("bad left-hand side `{lhs}`")).at_line(i + 1));
            }
            if !names.iter().any(|n| n == lhs) {
                names.push(lhs.to_string());
            }
            lines.push((i + 1, lhs.to_string(), rhs.to_string()));
        }
        if names.is_empty() {
            return Err(Error::Syntax("grammar has no productions".into()));
        }
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut rules = Vec::new();
        for (line, lhs, rhs) in &lines {
            let lhs = index[lhs.as_str()];
            for alt in rhs.split('|') {
                let mut items = Vec::new();
                for tok in alt.split_whitespace() {
                    resolve(alphabet, &index, tok, &mut items).map_err(|e| e.at_line(*line))?;
                }
                rules.push((lhs, items));
            }
        }
        Cfg::new(alphabet.rank(), names, rules)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.names
    }

    pub fn rules(&self) -> &[(usize, Vec<Item>)] {
        &self.rules
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut by_lhs: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (lhs, rhs) in &self.rules {
            let alt = if rhs.is_empty() {
                "1".to_string()
            } else {
                rhs.iter()
                    .map(|it| match it {
                        Item::N(n) => self.names[*n].clone(),
                        Item::T(s) => s.format(alphabet),
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            by_lhs.entry(*lhs).or_default().push(alt);
        }
        let mut s = String::new();
        for (lhs, alts) in by_lhs {
            let _ = writeln!(s, "{} -> {}", self.names[lhs], alts.join(" | "));
        }
        s
    }

    /// Same language, every right-hand side of length at most two.
    pub fn binarize(&self) -> Cfg {
        let mut names = self.names.clone();
        let mut rules = Vec::new();
        for (lhs, rhs) in &self.rules {
            let base = &self.names[*lhs];
            let mut lhs = *lhs;
            let mut rest = rhs.as_slice();
            while rest.len() > 2 {
                let fresh = names.len();
                names.push(format!("{base}#{fresh}"));
                rules.push((lhs, vec![rest[0], Item::N(fresh)]));
                lhs = fresh;
                rest = &rest[1..];
            }
            rules.push((lhs, rest.to_vec()));
        }
        Cfg {
            rank: self.rank,
            names,
            rules,
        }
    }

    /// Nonterminals deriving some terminal string.
    fn productive(&self) -> Vec<bool> {
        let mut prod = vec![false; self.names.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for (lhs, rhs) in &self.rules {
                if !prod[*lhs]
                    && rhs.iter().all(|it| match it {
                        Item::N(n) => prod[*n],
                        Item::T(_) => true,
                    })
                {
                    prod[*lhs] = true;
                    changed = true;
                }
            }
        }
        prod
    }

    pub fn is_empty(&self) -> bool {
        !self.productive()[0]
    }

    /// A shortest derivable word (lexicographically least among the
    /// shortest choices per rule), if any.
    pub fn shortest_word(&self) -> Option<Vec<Symbol>> {
        let mut best: Vec<Option<Vec<Symbol>>> = vec![None; self.names.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for (lhs, rhs) in &self.rules {
                let mut w = Vec::new();
                let mut ok = true;
                for it in rhs {
                    match it {
                        Item::T(s) => w.push(*s),
                        Item::N(n) => match &best[*n] {
                            Some(v) => w.extend_from_slice(v),
                            None => {
                                ok = false;
                                break;
                            }
                        },
                    }
                }
                if ok {
                    let better = match &best[*lhs] {
                        None => true,
                        Some(cur) => (w.len(), &w) < (cur.len(), cur),
                    };
                    if better {
                        best[*lhs] = Some(w);
                        changed = true;
                    }
                }
            }
        }
        best.swap_remove(0)
    }

    /// Membership of a word, by dynamic programming over its spans.
    pub fn generates(&self, w: &[Symbol]) -> bool {
        let g = self.binarize();
        let n = w.len();
        let nt = g.names.len();
        // table[i][j][X]: X derives w[i..j]
        let mut table = vec![vec![vec![false; nt]; n + 1]; n + 1];
        for len in 0..=n {
            for i in 0..=n - len {
                let j = i + len;
                let mut changed = true;
                while changed {
                    changed = false;
                    for (lhs, rhs) in &g.rules {
                        if table[i][j][*lhs] {
                            continue;
                        }
                        let derives = |it: &Item, p: usize, q: usize, t: &Vec<Vec<Vec<bool>>>| match it {
                            Item::T(s) => q == p + 1 && w[p] == *s,
                            Item::N(x) => t[p][q][*x],
                        };
                        let hit = match rhs.as_slice() {
                            [] => i == j,
                            [x] => derives(x, i, j, &table),
                            [x, y] => (i..=j).any(|k| derives(x, i, k, &table) && derives(y, k, j, &table)),
                            _ => unreachable!("binarized"),
                        };
                        if hit {
                            table[i][j][*lhs] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        table[0][n][0]
    }

    /// All derivable words of length at most `maxlen`, shortest first then
    /// lexicographic. Meant for small languages.
    pub fn enumerate(&self, maxlen: usize) -> Vec<Vec<Symbol>> {
        let g = self.binarize();
        let mut sets: Vec<BTreeSet<Vec<Symbol>>> = vec![BTreeSet::new(); g.names.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for (lhs, rhs) in &g.rules {
                let mut acc: BTreeSet<Vec<Symbol>> = [Vec::new()].into();
                for it in rhs {
                    let parts: Vec<Vec<Symbol>> = match it {
                        Item::T(s) => vec![vec![*s]],
                        Item::N(x) => sets[*x].iter().cloned().collect(),
                    };
                    let mut next = BTreeSet::new();
                    for a in &acc {
                        for p in &parts {
                            if a.len() + p.len() <= maxlen {
                                let mut v = a.clone();
                                v.extend_from_slice(p);
                                next.insert(v);
                            }
                        }
                    }
                    acc = next;
                }
                for v in acc {
                    if sets[*lhs].insert(v) {
                        changed = true;
                    }
                }
            }
        }
        let mut out: Vec<Vec<Symbol>> = sets.swap_remove(0).into_iter().collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }
}

fn resolve(alphabet: &Alphabet, index: &HashMap<&str, usize>, tok: &str, out: &mut Vec<Item>) -> Result<()> {
    if let Some(&n) = index.get(tok) {
        out.push(Item::N(n));
        return Ok(());
    }
    if tok == "1" {
        return Ok(());
    }
    let (name, k) = split_power(tok)?;
    let sym = if name == "t" {
        Symbol::T(k < 0)
    } else if let Some(g) = alphabet.index_of(name) {
        Symbol::Gen(crate::word::Letter::new(g, k < 0))
    } else if name.starts_with(|c: char| c.is_ascii_uppercase()) {
        return Err(Error::Syntax(format!("undeclared nonterminal `{tok}`")));
    } else {
        return Err(Error::UnknownTerminal(tok.to_string()));
    };
    out.extend(std::iter::repeat_n(Item::T(sym), k.unsigned_abs() as usize));
    Ok(())
}

/// Grammar for `L(g) ∩ L(a)` by the triple construction.
///
/// Only triples `(p, X, q)` that derive a terminal string are materialised,
/// found by a fixpoint over the binarized grammar; the resulting grammar is
/// then cut down to what its start symbol reaches.
pub fn bar_hillel(g: &Cfg, a: &GroupNfa) -> Result<Cfg> {
    if g.rank != a.rank() {
        return Err(Error::AlphabetMismatch);
    }
    let g = g.binarize();
    let nt = g.names.len();
    let mut by_sym: HashMap<Symbol, Vec<(usize, usize)>> = HashMap::new();
    for &(p, s, q) in a.edges() {
        by_sym.entry(s).or_default().push((p, q));
    }
    let states = a.state_count();

    // rel[X] = pairs (p, q) such that (p, X, q) is productive
    let mut rel: Vec<HashSet<(usize, usize)>> = vec![HashSet::new(); nt];
    let pairs = |it: &Item, rel: &Vec<HashSet<(usize, usize)>>| -> Vec<(usize, usize)> {
        match it {
            Item::T(s) => by_sym.get(s).cloned().unwrap_or_default(),
            Item::N(x) => rel[*x].iter().copied().collect(),
        }
    };
    let mut changed = true;
    while changed {
        changed = false;
        for (lhs, rhs) in &g.rules {
            let found: Vec<(usize, usize)> = match rhs.as_slice() {
                [] => (0..states).map(|p| (p, p)).collect(),
                [x] => pairs(x, &rel),
                [x, y] => {
                    let right = pairs(y, &rel);
                    let mut from: HashMap<usize, Vec<usize>> = HashMap::new();
                    for (q, r) in right {
                        from.entry(q).or_default().push(r);
                    }
                    let mut v = Vec::new();
                    for (p, q) in pairs(x, &rel) {
                        if let Some(rs) = from.get(&q) {
                            v.extend(rs.iter().map(|&r| (p, r)));
                        }
                    }
                    v
                }
                _ => unreachable!("binarized"),
            };
            for pq in found {
                if rel[*lhs].insert(pq) {
                    changed = true;
                }
            }
        }
    }

    // Materialise: nonterminal 0 is the new start.
    let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut names = vec![format!("{}'", g.names[0])];
    let mut rules = Vec::new();
    let mut queue = Vec::new();
    let mut id_of = |p: usize, x: usize, q: usize, names: &mut Vec<String>, queue: &mut Vec<(usize, usize, usize)>| {
        *ids.entry((p, x, q)).or_insert_with(|| {
            names.push(format!("[{p},{},{q}]", g.names[x]));
            queue.push((p, x, q));
            names.len() - 1
        })
    };
    for &i in a.initial() {
        for &f in a.accepting() {
            if rel[0].contains(&(i, f)) {
                let id = id_of(i, 0, f, &mut names, &mut queue);
                rules.push((0, vec![Item::N(id)]));
            }
        }
    }
    let has_edge = |p: usize, s: Symbol, q: usize| by_sym.get(&s).is_some_and(|v| v.contains(&(p, q)));
    while let Some((p, x, r)) = queue.pop() {
        let me = id_of(p, x, r, &mut names, &mut queue);
        for (lhs, rhs) in g.rules.iter().filter(|(l, _)| *l == x) {
            debug_assert_eq!(*lhs, x);
            match rhs.as_slice() {
                [] => {
                    if p == r {
                        rules.push((me, vec![]));
                    }
                }
                [Item::T(s)] => {
                    if has_edge(p, *s, r) {
                        rules.push((me, vec![Item::T(*s)]));
                    }
                }
                [Item::N(y)] => {
                    if rel[*y].contains(&(p, r)) {
                        let id = id_of(p, *y, r, &mut names, &mut queue);
                        rules.push((me, vec![Item::N(id)]));
                    }
                }
                [first, second] => {
                    for q in 0..states {
                        let left = match first {
                            Item::T(s) => has_edge(p, *s, q).then_some(Item::T(*s)),
                            Item::N(y) => rel[*y]
                                .contains(&(p, q))
                                .then(|| Item::N(id_of(p, *y, q, &mut names, &mut queue))),
                        };
                        let Some(left) = left else { continue };
                        let right = match second {
                            Item::T(s) => has_edge(q, *s, r).then_some(Item::T(*s)),
                            Item::N(y) => rel[*y]
                                .contains(&(q, r))
                                .then(|| Item::N(id_of(q, *y, r, &mut names, &mut queue))),
                        };
                        if let Some(right) = right {
                            rules.push((me, vec![left, right]));
                        }
                    }
                }
                _ => unreachable!("binarized"),
            }
        }
    }
    rules.sort();
    rules.dedup();
    Ok(Cfg {
        rank: g.rank,
        names,
        rules,
    })
}

/// Is there `w` in the subset `K` described by `grammar` with
/// `w^-1 h w = g`?
///
/// The grammar must generate *every* word spelling an element of `K`; this
/// cannot be checked and is the caller's responsibility. A `Yes` carries a
/// verified conjugator from `K`.
pub fn constrained_conjugacy(
    pres: &GroupPresentation,
    g: &FbcElement,
    h: &FbcElement,
    grammar: &Cfg,
    budget: Budget,
) -> Result<Decision<FbcElement>> {
    let sol = match conjugators(pres, h, g, budget) {
        Decision::Yes(s) => s,
        Decision::No => return Ok(Decision::No),
        Decision::Unknown(e) => return Ok(Decision::Unknown(e)),
    };
    let cent = build_centralizer_nfa(pres, &sol.centralizer)?;
    let a_sol = cent.concat(&GroupNfa::word(pres.rank(), &spell(&sol.witness)))?;
    let inter = bar_hillel(grammar, &a_sol)?;
    match inter.shortest_word() {
        Some(word) => {
            let w = evaluate(pres, &word);
            assert_eq!(&pres.conjugate(h, &w), g, "constrained conjugator failed verification");
            Ok(Decision::Yes(w))
        }
        None if sol.centralizer.status.is_exact() => Ok(Decision::No),
        None => Ok(Decision::Unknown(Exhausted::new(
            "no conjugator in K found and the centralizer is budget-limited",
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::standard(2)
    }

    fn syms(s: &str) -> Vec<Symbol> {
        s.split_whitespace().map(|t| Symbol::parse(&ab(), t).unwrap()).collect()
    }

    #[test]
    fn parse_examples() {
        let g = Cfg::parse(&ab(), "S -> a S a^-1 | 1\n").unwrap();
        assert_eq!(g.nonterminals().len(), 1);
        assert!(g.generates(&syms("a a a^-1 a^-1")));
        assert!(!g.generates(&syms("a a^-1 a")));
        assert!(matches!(
            Cfg::parse(&ab(), "S -> T\n").unwrap_err(),
            Error::AtLine { line: 1, cause } if matches!(*cause, Error::Syntax(_))
        ));
        assert!(matches!(
            Cfg::parse(&ab(), "S -> c\n").unwrap_err(),
            Error::AtLine { cause, .. } if matches!(*cause, Error::UnknownTerminal(_))
        ));
        let all = Cfg::parse(&ab(), "S -> 1 | X S\nX -> t | t^-1 | a | a^-1 | b | b^-1\n").unwrap();
        assert!(all.generates(&syms("t b^-1 a t^-1")));
        let text = all.to_text(&ab());
        assert_eq!(Cfg::parse(&ab(), &text).unwrap(), all);
    }

    #[test]
    fn intersection_examples() {
        let dyck = Cfg::parse(&ab(), "S -> 1 | a S a^-1 S | b S b^-1 S\n").unwrap();
        let w = GroupNfa::word(2, &syms("a a^-1"));
        let i = bar_hillel(&dyck, &w).unwrap();
        assert!(!i.is_empty());
        assert_eq!(i.enumerate(4), vec![syms("a a^-1")]);
        assert!(bar_hillel(&dyck, &GroupNfa::empty(2)).unwrap().is_empty());
        assert!(bar_hillel(&dyck, &GroupNfa::empty(3)).is_err());
        assert!(Cfg::empty_language(2).is_empty());
        assert!(!Cfg::all_words(2).is_empty());
    }

    #[test]
    fn shortest_and_enumerate() {
        let g = Cfg::parse(&ab(), "S -> a S b | a b\n").unwrap();
        assert_eq!(g.shortest_word(), Some(syms("a b")));
        assert_eq!(g.enumerate(4), vec![syms("a b"), syms("a a b b")]);
        let long = Cfg::parse(&ab(), "S -> a b a b t\n").unwrap();
        assert_eq!(long.binarize().enumerate(5), vec![syms("a b a b t")]);
    }
}
