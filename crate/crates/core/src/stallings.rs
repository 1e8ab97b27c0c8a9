//! Folded subgroup graphs (Stallings graphs) of finitely generated
//! subgroups of a free group.
//!
//! Every edge carries a provenance word over the symbols of the input
//! generators. For each vertex `v` there is a fixed element `c(v)` with
//! `c(base) = 1` such that an edge `u -> v` labelled `l` with provenance `p`
//! satisfies `eval(p) = c(u)^-1 l c(v)`, where `eval` substitutes the input
//! generators. Folding keeps this true, so the provenance read along a loop
//! at the base evaluates to the loop's label.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Debug)]
struct Edge {
    src: usize,
    dst: usize,
    gen: u32,
    prov: Word,
}

#[derive(Clone, Copy)]
struct Dart {
    edge: usize,
    to: usize,
    forward: bool,
}

#[derive(Clone, Debug)]
pub struct SubgroupGraph {
    rank: usize,
    generator_count: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
    /// `next[v * 2n + letter_key]` is the edge leaving `v` reading that letter.
    next: Vec<Option<usize>>,
    tree_word: Vec<Word>,
    basis_index: Vec<Option<usize>>,
    basis: Vec<Word>,
}

struct Folder {
    edges: Vec<Option<Edge>>,
    adj: Vec<Vec<usize>>,
}

impl Folder {
    fn new() -> Self {
        Folder {
            edges: Vec::new(),
            adj: vec![Vec::new()],
        }
    }

    fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    fn add_edge(&mut self, src: usize, dst: usize, gen: u32, prov: Word) {
        let id = self.edges.len();
        self.edges.push(Some(Edge { src, dst, gen, prov }));
        self.adj[src].push(id);
        if dst != src {
            self.adj[dst].push(id);
        }
    }

    /// Adds a loop at the base spelling `w`, with provenance `symbol` on
    /// its first step.
    fn add_petal(&mut self, w: &Word, symbol: Letter) {
        let letters = w.letters();
        let mut prev = 0;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                0
            } else {
                self.add_vertex()
            };
            let q = if i == 0 {
                Word::letter(symbol)
            } else {
                Word::identity()
            };
            if l.inv {
                self.add_edge(next, prev, l.gen, q.inverse());
            } else {
                self.add_edge(prev, next, l.gen, q);
            }
            prev = next;
        }
    }

    fn darts(&self, v: usize) -> Vec<(Letter, Dart)> {
        let mut out = Vec::new();
        for &id in &self.adj[v] {
            let e = self.edges[id].as_ref().expect("live edge");
            if e.src == v {
                out.push((
                    Letter::pos(e.gen),
                    Dart {
                        edge: id,
                        to: e.dst,
                        forward: true,
                    },
                ));
            }
            if e.dst == v {
                out.push((
                    Letter::neg(e.gen),
                    Dart {
                        edge: id,
                        to: e.src,
                        forward: false,
                    },
                ));
            }
        }
        out
    }

    fn dart_prov(&self, d: Dart) -> Word {
        let p = &self.edges[d.edge].as_ref().expect("live edge").prov;
        if d.forward {
            p.clone()
        } else {
            p.inverse()
        }
    }

    fn remove_edge(&mut self, id: usize) {
        let e = self.edges[id].take().expect("live edge");
        self.adj[e.src].retain(|&x| x != id);
        self.adj[e.dst].retain(|&x| x != id);
    }

    fn fold(&mut self) {
        let mut work: BTreeSet<usize> = (0..self.adj.len()).collect();
        while let Some(v) = work.pop_first() {
            if self.adj[v].is_empty() {
                continue;
            }
            let mut darts = self.darts(v);
            darts.sort_by_key(|(l, d)| (*l, d.edge));
            let Some(pos) = darts.windows(2).position(|p| p[0].0 == p[1].0) else {
                continue;
            };
            let (mut d1, mut d2) = (darts[pos].1, darts[pos + 1].1);
            if d1.to == d2.to {
                self.remove_edge(d2.edge);
            } else {
                if d2.to < d1.to {
                    std::mem::swap(&mut d1, &mut d2);
                }
                let (keep, gone) = (d1.to, d2.to);
                let delta = self.dart_prov(d1).inverse().mul(&self.dart_prov(d2));
                self.remove_edge(d2.edge);
                let moved = std::mem::take(&mut self.adj[gone]);
                for id in moved {
                    let e = self.edges[id].as_mut().expect("live edge");
                    if e.src == gone {
                        e.prov = delta.mul(&e.prov);
                        e.src = keep;
                    }
                    if e.dst == gone {
                        e.prov = e.prov.mul(&delta.inverse());
                        e.dst = keep;
                    }
                    if !self.adj[keep].contains(&id) {
                        self.adj[keep].push(id);
                    }
                }
                work.insert(keep);
            }
            work.insert(v);
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v]
            .iter()
            .map(|&id| {
                let e = self.edges[id].as_ref().expect("live edge");
                if e.src == e.dst {
                    2
                } else {
                    1
                }
            })
            .sum()
    }

    fn trim(&mut self) {
        let mut stack: Vec<usize> = (1..self.adj.len()).collect();
        while let Some(v) = stack.pop() {
            if v == 0 || self.degree(v) != 1 {
                continue;
            }
            let id = self.adj[v][0];
            let e = self.edges[id].as_ref().expect("live edge");
            let other = if e.src == v { e.dst } else { e.src };
            self.remove_edge(id);
            stack.push(other);
        }
    }
}

impl SubgroupGraph {
    /// Folded graph of the subgroup generated by `gens` in a free group of
    /// rank `rank`.
    pub fn build(rank: usize, gens: &[Word]) -> Self {
        let mut f = Folder::new();
        for (i, g) in gens.iter().enumerate() {
            if !g.is_identity() {
                debug_assert!(g.min_rank() <= rank);
                f.add_petal(g, Letter::pos(i as u32));
            }
        }
        f.fold();
        f.trim();
        Self::finish(rank, gens.len(), f)
    }

    /// The whole free group: a bouquet of `rank` loops.
    pub fn full(rank: usize) -> Self {
        let gens: Vec<Word> = (0..rank as u32).map(|g| Word::letter(Letter::pos(g))).collect();
        Self::build(rank, &gens)
    }

    pub fn trivial(rank: usize) -> Self {
        Self::build(rank, &[])
    }

    fn finish(rank: usize, generator_count: usize, f: Folder) -> Self {
        // Renumber vertices in breadth-first order from the base, visiting
        // letters in letter order, so equal subgroups give equal graphs.
        let width = 2 * rank;
        let mut order = vec![usize::MAX; f.adj.len()];
        let mut queue = VecDeque::from([0usize]);
        order[0] = 0;
        let mut count = 1;
        let mut tree_edge: Vec<Option<usize>> = vec![None];
        let mut parent_info: Vec<(usize, Letter)> = vec![(0, Letter::pos(0))];
        while let Some(v) = queue.pop_front() {
            let mut darts = f.darts(v);
            darts.sort_by_key(|(l, _)| *l);
            for (l, d) in darts {
                if order[d.to] == usize::MAX {
                    order[d.to] = count;
                    count += 1;
                    tree_edge.push(Some(d.edge));
                    parent_info.push((order[v], l));
                    queue.push_back(d.to);
                }
            }
        }
        let mut edges: Vec<(usize, Edge)> = f
            .edges
            .iter()
            .enumerate()
            .filter_map(|(id, e)| e.as_ref().map(|e| (id, e)))
            .filter(|(_, e)| order[e.src] != usize::MAX)
            .map(|(id, e)| {
                (
                    id,
                    Edge {
                        src: order[e.src],
                        dst: order[e.dst],
                        gen: e.gen,
                        prov: e.prov.clone(),
                    },
                )
            })
            .collect();
        edges.sort_by_key(|(_, e)| (e.src, e.gen));
        let tree_ids: BTreeSet<usize> = tree_edge.iter().flatten().copied().collect();

        let mut tree_word = vec![Word::identity(); count];
        for v in 1..count {
            let (p, l) = parent_info[v];
            tree_word[v] = tree_word[p].mul(&Word::letter(l));
        }

        let mut next = vec![None; count * width];
        let mut basis_index = vec![None; edges.len()];
        let mut basis = Vec::new();
        let mut plain = Vec::with_capacity(edges.len());
        for (new_id, (old_id, e)) in edges.into_iter().enumerate() {
            next[e.src * width + Letter::pos(e.gen).rank_key(rank)] = Some(new_id);
            next[e.dst * width + Letter::neg(e.gen).rank_key(rank)] = Some(new_id);
            if !tree_ids.contains(&old_id) {
                basis_index[new_id] = Some(basis.len());
                basis.push(
                    tree_word[e.src]
                        .mul(&Word::letter(Letter::pos(e.gen)))
                        .mul(&tree_word[e.dst].inverse()),
                );
            }
            plain.push(e);
        }
        SubgroupGraph {
            rank,
            generator_count,
            vertex_count: count,
            edges: plain,
            next,
            tree_word,
            basis_index,
            basis,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Rank of the subgroup.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    /// True when the subgroup is the whole free group.
    pub fn is_full(&self) -> bool {
        self.vertex_count == 1 && self.edges.len() == self.rank
    }

    fn step(&self, v: usize, l: Letter) -> Option<(usize, usize)> {
        let id = self.next[v * 2 * self.rank + l.rank_key(self.rank)]?;
        let e = &self.edges[id];
        Some((id, if l.inv { e.src } else { e.dst }))
    }

    fn read(&self, w: &Word) -> Option<Vec<(usize, bool)>> {
        let mut v = 0;
        let mut path = Vec::with_capacity(w.len());
        for &l in w.letters() {
            if l.gen as usize >= self.rank {
                return None;
            }
            let (id, to) = self.step(v, l)?;
            path.push((id, !l.inv));
            v = to;
        }
        (v == 0).then_some(path)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.read(w).is_some()
    }

    /// Free basis read off a breadth-first spanning tree.
    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    /// Rewrites a member as a word over basis symbols (symbol `i` stands for
    /// `basis()[i]`).
    pub fn express(&self, w: &Word) -> Result<Word> {
        let path = self.read(w).ok_or(Error::NotAMember)?;
        Ok(Word::reduce(path.into_iter().filter_map(|(id, fwd)| {
            self.basis_index[id].map(|b| Letter::new(b as u32, !fwd))
        })))
    }

    /// Rewrites a member as a word over the symbols of the generators the
    /// graph was built from.
    pub fn express_in_generators(&self, w: &Word) -> Result<Word> {
        let path = self.read(w).ok_or(Error::NotAMember)?;
        let parts: Vec<Word> = path
            .into_iter()
            .map(|(id, fwd)| {
                let p = &self.edges[id].prov;
                if fwd {
                    p.clone()
                } else {
                    p.inverse()
                }
            })
            .collect();
        Ok(Word::product(&parts))
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Label of the spanning-tree path from the base to `v`.
    pub fn tree_word(&self, v: usize) -> &Word {
        &self.tree_word[v]
    }

    /// `(src, dst, generator)` triples in canonical order.
    pub fn edge_list(&self) -> Vec<(usize, usize, u32)> {
        self.edges.iter().map(|e| (e.src, e.dst, e.gen)).collect()
    }

    /// Equality as labelled based graphs.
    pub fn same_graph(&self, other: &SubgroupGraph) -> bool {
        self.rank == other.rank
            && self.vertex_count == other.vertex_count
            && self.edge_list() == other.edge_list()
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut s = String::from("digraph subgroup {\n  0 [shape=doublecircle];\n");
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  {} -> {} [label=\"{}\"];",
                e.src,
                e.dst,
                alphabet.letter_name(Letter::pos(e.gen))
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Substitutes `words[i]` for symbol `i`.
pub fn evaluate(symbols: &Word, words: &[Word]) -> Word {
    Word::reduce(symbols.letters().iter().flat_map(|l| {
        let w = &words[l.gen as usize];
        let w = if l.inv { w.inverse() } else { w.clone() };
        w.into_letters()
    }))
}
