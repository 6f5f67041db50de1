//! Words of the alternating form and their paths on a complex.
//!
//! A `k`-edge path `v0 h1 v1 ... vk` is written `Y(v0) Z(h1) X(h1) Y(v1) ...`:
//! node letters at positions `0, 3, 6, ...`, each edge contributing its
//! out-letter read at its start and its in-letter read at its end.

use std::collections::{HashMap, HashSet};

use crate::coloring::{Alphabet, Coloring, Family, Letter};
use crate::complex::{Complex, HalfEdge, VertexId};
use crate::error::{Error, Result};

/// Letters are ids into an [`Alphabet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    Zero,
    Letters(Vec<u32>),
}

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Word::Letters(letters)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Word::Zero)
    }

    /// The letters; empty for zero.
    pub fn letters(&self) -> &[u32] {
        match self {
            Word::Zero => &[],
            Word::Letters(l) => l,
        }
    }

    pub fn len(&self) -> usize {
        self.letters().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of path edges of a well-formed word starting at a node letter.
    pub fn edge_count(&self) -> usize {
        self.len().saturating_sub(1) / 3
    }

    pub fn concat(&self, other: &Word) -> Word {
        match (self, other) {
            (Word::Letters(a), Word::Letters(b)) => {
                let mut v = a.clone();
                v.extend_from_slice(b);
                Word::Letters(v)
            }
            _ => Word::Zero,
        }
    }

    pub fn power(&self, n: usize) -> Word {
        match self {
            Word::Zero => Word::Zero,
            Word::Letters(a) => Word::Letters(a.repeat(n)),
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        match self {
            Word::Zero => "0".into(),
            Word::Letters(l) => l
                .iter()
                .map(|&i| alphabet.get(i).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    /// Compact form: `#i` per letter, `0` for zero.
    pub fn to_id_text(&self) -> String {
        match self {
            Word::Zero => "0".into(),
            Word::Letters(l) => l
                .iter()
                .map(|i| format!("#{i}"))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    /// Accepts full letter tokens and `#i` alphabet indices.
    pub fn from_text(alphabet: &Alphabet, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "0" {
            return Ok(Word::Zero);
        }
        text.split_whitespace()
            .map(|t| {
                if let Some(i) = t.strip_prefix('#') {
                    return i
                        .parse::<u32>()
                        .ok()
                        .filter(|&i| (i as usize) < alphabet.len())
                        .ok_or_else(|| Error::UnknownLetter(t.to_string()));
                }
                let l: Letter = t.parse()?;
                alphabet
                    .id(&l)
                    .ok_or_else(|| Error::UnknownLetter(t.to_string()))
            })
            .collect::<Result<Vec<u32>>>()
            .map(Word::Letters)
    }
}

/// Does every adjacent pair follow `Y → Z → X → Y`?
pub fn well_formed(alphabet: &Alphabet, w: &Word) -> bool {
    match w {
        Word::Zero => false,
        Word::Letters(l) => l
            .windows(2)
            .all(|p| follows(alphabet.family(p[0]), alphabet.family(p[1]))),
    }
}

pub fn follows(a: Family, b: Family) -> bool {
    matches!(
        (a, b),
        (Family::Y, Family::Z) | (Family::Z, Family::X) | (Family::X, Family::Y)
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<HalfEdge>,
}

impl Path {
    pub fn single(v: VertexId) -> Self {
        Path {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    /// The path through `vs`, if consecutive vertices are adjacent.
    pub fn through(c: &Complex, vs: &[VertexId]) -> Option<Self> {
        let edges = vs
            .windows(2)
            .map(|w| c.half_edge(w[0], w[1]))
            .collect::<Option<Vec<_>>>()?;
        Some(Path {
            vertices: vs.to_vec(),
            edges,
        })
    }

    pub fn push(&mut self, c: &Complex, h: HalfEdge) {
        debug_assert_eq!(c.half_edge_from(h), *self.vertices.last().unwrap());
        self.edges.push(h);
        self.vertices.push(c.half_edge_to(h));
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn is_valid(&self, c: &Complex) -> bool {
        self.vertices.len() == self.edges.len() + 1
            && self.edges.iter().enumerate().all(|(i, &h)| {
                c.half_edge_from(h) == self.vertices[i] && c.half_edge_to(h) == self.vertices[i + 1]
            })
    }
}

/// Letter ids of every vertex and half-edge of one complex.
#[derive(Clone, Debug)]
pub struct Encoder {
    vertex: Vec<u32>,
    out: Vec<[u32; 2]>,
    inn: Vec<[u32; 2]>,
    by_letter: HashMap<u32, Vec<VertexId>>,
}

impl Encoder {
    /// Fails if a letter of `c` is missing from `alphabet`.
    pub fn new(c: &Complex, col: &Coloring, alphabet: &Alphabet) -> Result<Self> {
        let id = |l: Letter| {
            alphabet
                .id(&l)
                .ok_or_else(|| Error::UnknownLetter(l.to_string()))
        };
        let vertex = c
            .vertex_ids()
            .map(|v| id(Letter::Vertex(col.vertex_letter(v).clone())))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::with_capacity(c.edges().len());
        let mut inn = Vec::with_capacity(c.edges().len());
        for e in 0..c.edges().len() as u32 {
            let h = |forward| HalfEdge {
                edge: crate::complex::EdgeId(e),
                forward,
            };
            out.push([
                id(Letter::Edge(col.out_letter(h(false))))?,
                id(Letter::Edge(col.out_letter(h(true))))?,
            ]);
            inn.push([
                id(Letter::Edge(col.in_letter(h(false))))?,
                id(Letter::Edge(col.in_letter(h(true))))?,
            ]);
        }
        let mut by_letter: HashMap<u32, Vec<VertexId>> = HashMap::new();
        for v in c.vertex_ids() {
            by_letter.entry(vertex[v.idx()]).or_default().push(v);
        }
        Ok(Encoder {
            vertex,
            out,
            inn,
            by_letter,
        })
    }

    /// Encoder over the complex's own alphabet.
    pub fn own(c: &Complex, radius: u32) -> (Alphabet, Self) {
        let col = Coloring::new(c, radius);
        let alphabet = col.alphabet();
        let enc = Encoder::new(c, &col, &alphabet).expect("own alphabet covers every letter");
        (alphabet, enc)
    }

    pub fn vertex(&self, v: VertexId) -> u32 {
        self.vertex[v.idx()]
    }

    pub fn out(&self, h: HalfEdge) -> u32 {
        self.out[h.edge.idx()][h.forward as usize]
    }

    pub fn inn(&self, h: HalfEdge) -> u32 {
        self.inn[h.edge.idx()][h.forward as usize]
    }

    pub fn encode(&self, p: &Path) -> Word {
        let mut w = Vec::with_capacity(3 * p.edges.len() + 1);
        w.push(self.vertex(p.vertices[0]));
        for (i, &h) in p.edges.iter().enumerate() {
            w.push(self.out(h));
            w.push(self.inn(h));
            w.push(self.vertex(p.vertices[i + 1]));
        }
        Word::Letters(w)
    }

    /// Every path whose encoding is `w`.
    pub fn embeddings(&self, c: &Complex, w: &Word) -> Vec<Path> {
        let l = w.letters();
        if l.is_empty() || !(l.len() - 1).is_multiple_of(3) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for &v in self.by_letter.get(&l[0]).map_or(&[][..], |v| v) {
            let mut path = Path::single(v);
            self.extend(c, &l[1..], &mut path, &mut out);
        }
        out
    }

    fn extend(&self, c: &Complex, rest: &[u32], path: &mut Path, out: &mut Vec<Path>) {
        if rest.is_empty() {
            out.push(path.clone());
            return;
        }
        let v = path.end();
        for &h in c.out_edges(v) {
            if self.out(h) == rest[0]
                && self.inn(h) == rest[1]
                && self.vertex(c.half_edge_to(h)) == rest[2]
            {
                path.push(c, h);
                self.extend(c, &rest[3..], path, out);
                path.edges.pop();
                path.vertices.pop();
            }
        }
    }

    pub fn is_realizable(&self, c: &Complex, w: &Word) -> bool {
        !self.embeddings(c, w).is_empty()
    }

    /// Encodings of all directed paths with at most `max_edges` edges.
    pub fn enumerate_words(&self, c: &Complex, max_edges: usize) -> Result<HashSet<Word>> {
        if max_edges > MAX_ENUMERATION_EDGES {
            return Err(Error::Capacity(format!(
                "path enumeration limited to {MAX_ENUMERATION_EDGES} edges, asked for {max_edges}"
            )));
        }
        let mut out = HashSet::new();
        let mut buf = Vec::with_capacity(3 * max_edges + 1);
        for v in c.vertex_ids() {
            buf.clear();
            buf.push(self.vertex(v));
            self.walk(c, v, max_edges, &mut buf, &mut out);
        }
        Ok(out)
    }

    fn walk(
        &self,
        c: &Complex,
        v: VertexId,
        left: usize,
        buf: &mut Vec<u32>,
        out: &mut HashSet<Word>,
    ) {
        out.insert(Word::Letters(buf.clone()));
        if left == 0 {
            return;
        }
        for &h in c.out_edges(v) {
            let u = c.half_edge_to(h);
            buf.extend_from_slice(&[self.out(h), self.inn(h), self.vertex(u)]);
            self.walk(c, u, left - 1, buf, out);
            buf.truncate(buf.len() - 3);
        }
    }
}

pub const MAX_ENUMERATION_EDGES: usize = 6;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::DEFAULT_RADIUS;

    fn all_paths(c: &Complex, max_edges: usize) -> Vec<Path> {
        let mut out: Vec<Path> = c.vertex_ids().map(Path::single).collect();
        let mut frontier = out.clone();
        for _ in 0..max_edges {
            let mut next = Vec::new();
            for p in &frontier {
                for &h in c.out_edges(p.end()) {
                    let mut q = p.clone();
                    q.push(c, h);
                    next.push(q);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn encoding_shape() {
        let c = Complex::build(3).unwrap();
        let (a, enc) = Encoder::own(&c, DEFAULT_RADIUS);
        for p in all_paths(&c, 2) {
            let w = enc.encode(&p);
            assert_eq!(w.len(), 3 * p.edges.len() + 1);
            assert!(well_formed(&a, &w));
            for (i, &l) in w.letters().iter().enumerate() {
                assert_eq!(a.family(l) == Family::Y, i % 3 == 0);
            }
        }
    }

    #[test]
    fn every_path_embeds_back() {
        let c = Complex::build(3).unwrap();
        let (_, enc) = Encoder::own(&c, DEFAULT_RADIUS);
        for p in all_paths(&c, 3) {
            assert!(p.is_valid(&c));
            assert!(enc.embeddings(&c, &enc.encode(&p)).contains(&p));
        }
    }

    #[test]
    fn repeated_positions_give_several_embeddings() {
        let c = Complex::build(4).unwrap();
        let (_, enc) = Encoder::own(&c, DEFAULT_RADIUS);
        let mut count: HashMap<Word, usize> = HashMap::new();
        for p in all_paths(&c, 1) {
            *count.entry(enc.encode(&p)).or_default() += 1;
        }
        let (w, n) = count.into_iter().max_by_key(|(_, n)| *n).unwrap();
        assert!(n >= 2);
        assert_eq!(enc.embeddings(&c, &w).len(), n);
    }

    #[test]
    fn unit_square_words() {
        let c = Complex::build(1).unwrap();
        let (_, enc) = Encoder::own(&c, DEFAULT_RADIUS);
        let words = enc.enumerate_words(&c, 1).unwrap();
        assert_eq!(words.iter().filter(|w| w.edge_count() == 0).count(), 4);
        assert_eq!(words.iter().filter(|w| w.edge_count() == 1).count(), 8);
        assert!(enc.enumerate_words(&c, 7).is_err());
    }

    #[test]
    fn enumeration_matches_path_oracle() {
        let c = Complex::build(3).unwrap();
        let (_, enc) = Encoder::own(&c, DEFAULT_RADIUS);
        let oracle: HashSet<Word> = all_paths(&c, 2).iter().map(|p| enc.encode(p)).collect();
        assert_eq!(enc.enumerate_words(&c, 2).unwrap(), oracle);
        let nodes: HashSet<Word> = c
            .vertex_ids()
            .map(|v| Word::new(vec![enc.vertex(v)]))
            .collect();
        assert_eq!(enc.enumerate_words(&c, 0).unwrap(), nodes);
    }

    #[test]
    fn unrealizable_word_has_no_embedding() {
        let c = Complex::build(3).unwrap();
        let (a, enc) = Encoder::own(&c, DEFAULT_RADIUS);
        let words = enc.enumerate_words(&c, 1).unwrap();
        let ys: Vec<u32> = (0..a.len() as u32)
            .filter(|&i| a.family(i) == Family::Y)
            .collect();
        let zs: Vec<u32> = (0..a.len() as u32)
            .filter(|&i| a.family(i) == Family::Z)
            .collect();
        let xs: Vec<u32> = (0..a.len() as u32)
            .filter(|&i| a.family(i) == Family::X)
            .collect();
        let mut found = 0;
        'outer: for &y in &ys {
            for &z in &zs {
                for &x in &xs {
                    let w = Word::new(vec![y, z, x, y]);
                    if !words.contains(&w) {
                        assert!(enc.embeddings(&c, &w).is_empty());
                        found += 1;
                        if found > 50 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn alternation() {
        let c = Complex::build(2).unwrap();
        let (a, enc) = Encoder::own(&c, DEFAULT_RADIUS);
        let p = Path::through(&c, &[VertexId(0), VertexId(4)]).unwrap();
        let w = enc.encode(&p);
        assert!(well_formed(&a, &w));
        let l = w.letters();
        assert!(!well_formed(&a, &Word::new(vec![l[0], l[0]])));
        assert!(!well_formed(&a, &Word::new(vec![l[2], l[1]])));
        assert!(well_formed(&a, &Word::new(vec![])));
        assert!(!well_formed(&a, &Word::Zero));
    }

    #[test]
    fn text_round_trip() {
        let c = Complex::build(3).unwrap();
        let (a, enc) = Encoder::own(&c, DEFAULT_RADIUS);
        for p in all_paths(&c, 2).iter().step_by(7) {
            let w = enc.encode(p);
            assert_eq!(Word::from_text(&a, &w.to_text(&a)).unwrap(), w);
        }
        assert_eq!(Word::from_text(&a, "0").unwrap(), Word::Zero);
        assert_eq!(Word::Zero.to_text(&a), "0");
        assert!(Word::from_text(&a, "Y:bogus").is_err());
    }
}
