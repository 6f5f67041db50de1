//! The finite presentation: zero relations and tile flips.
//!
//! Categories 1 and 2 are rules rather than lists. A word is zero by
//! category 1 when two adjacent letters break the `Y Z X` alternation, and by
//! category 2 when a factor running from a node letter through at most
//! `cat2_edges` edges to a node letter encodes no path of the reference
//! complex. Category 2 is stored through its complement, the set of
//! realizable factors.

mod generate;
mod io;

use std::collections::{BTreeSet, HashMap};

use crate::codec::{follows, Word};
use crate::coloring::{Alphabet, Family};

pub use generate::{
    cat1_zero, dead_paths, dead_turn, determinism_check, determinism_radius, gen_cat2, gen_cat3,
    gen_cat4, gen_cat5, tile_paths, Conflict, ConflictKind, DeadPattern, DeterminismReport,
    TilePath,
};

pub const DEFAULT_CAT2_EDGES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Adjacency = 1,
    Unrealizable = 2,
    NullForm = 3,
    DeadPattern = 4,
    TileFlip = 5,
}

impl Category {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Some(match n {
            1 => Category::Adjacency,
            2 => Category::Unrealizable,
            3 => Category::NullForm,
            4 => Category::DeadPattern,
            5 => Category::TileFlip,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Zero(Word),
    Eq(Word, Word),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub radius: u32,
    pub cat2_edges: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            radius: crate::coloring::DEFAULT_RADIUS,
            cat2_edges: DEFAULT_CAT2_EDGES,
        }
    }
}

/// A zero rule firing inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroHit {
    /// Letters `pos` and `pos + 1` do not alternate.
    Adjacency { pos: usize },
    /// The factor of `len` letters at `pos` is not realizable.
    Unrealizable { pos: usize, len: usize },
    /// Listed zero relation `rel` occurs at `pos`.
    Relation { rel: usize, pos: usize },
}

/// An occurrence of one side of a flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EqHit {
    pub rel: usize,
    pub pos: usize,
    /// The left side matched.
    pub forward: bool,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    alphabet: Alphabet,
    level: u32,
    config: Config,
    realizable: BTreeSet<Vec<u32>>,
    relations: Vec<(Category, Relation)>,
    zero_index: HashMap<Vec<u32>, usize>,
    eq_index: HashMap<Vec<u32>, Vec<(usize, bool)>>,
    zero_lens: BTreeSet<usize>,
}

impl PartialEq for Presentation {
    fn eq(&self, o: &Self) -> bool {
        self.alphabet == o.alphabet
            && self.level == o.level
            && self.config == o.config
            && self.realizable == o.realizable
            && self.relations == o.relations
    }
}

impl Presentation {
    /// Relations are sorted and deduplicated; zero relations come first.
    pub fn new(
        alphabet: Alphabet,
        level: u32,
        config: Config,
        realizable: BTreeSet<Vec<u32>>,
        relations: impl IntoIterator<Item = (Category, Relation)>,
    ) -> Self {
        let set: BTreeSet<(bool, Category, Relation)> = relations
            .into_iter()
            .map(|(c, r)| (matches!(r, Relation::Eq(..)), c, r))
            .collect();
        let relations: Vec<(Category, Relation)> =
            set.into_iter().map(|(_, c, r)| (c, r)).collect();
        let mut zero_index = HashMap::new();
        let mut eq_index: HashMap<Vec<u32>, Vec<(usize, bool)>> = HashMap::new();
        let mut zero_lens = BTreeSet::new();
        for (i, (_, r)) in relations.iter().enumerate() {
            match r {
                Relation::Zero(w) => {
                    zero_lens.insert(w.len());
                    zero_index.entry(w.letters().to_vec()).or_insert(i);
                }
                Relation::Eq(a, b) => {
                    eq_index
                        .entry(a.letters().to_vec())
                        .or_default()
                        .push((i, true));
                    eq_index
                        .entry(b.letters().to_vec())
                        .or_default()
                        .push((i, false));
                }
            }
        }
        Presentation {
            alphabet,
            level,
            config,
            realizable,
            relations,
            zero_index,
            eq_index,
            zero_lens,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn config(&self) -> Config {
        self.config
    }

    pub fn realizable(&self) -> &BTreeSet<Vec<u32>> {
        &self.realizable
    }

    pub fn relations(&self) -> &[(Category, Relation)] {
        &self.relations
    }

    pub fn relation(&self, id: usize) -> Option<&Relation> {
        self.relations.get(id).map(|(_, r)| r)
    }

    pub fn count(&self, cat: Category) -> usize {
        self.relations.iter().filter(|(c, _)| *c == cat).count()
    }

    /// Is `w` a realizable word of at most `cat2_edges` edges?
    pub fn is_realizable_factor(&self, w: &[u32]) -> bool {
        self.realizable.contains(w)
    }

    /// Well-formed words with at most `cat2_edges` edges that are zero by
    /// category 2, as a decimal logarithm.
    pub fn cat2_log10(&self) -> f64 {
        let count = |f: Family| {
            self.alphabet
                .letters()
                .iter()
                .filter(|l| l.family() == f)
                .count() as f64
        };
        let (y, z, x) = (count(Family::Y), count(Family::Z), count(Family::X));
        let total: f64 = (0..=self.config.cat2_edges)
            .map(|k| y.powi(k as i32 + 1) * (z * x).powi(k as i32))
            .sum();
        (total - self.realizable.len() as f64).max(1.0).log10()
    }

    /// The leftmost zero rule firing in `w`, if any.
    pub fn zero_hit(&self, w: &[u32]) -> Option<ZeroHit> {
        let fam = |i: usize| self.alphabet.family(w[i]);
        for pos in 0..w.len().saturating_sub(1) {
            if !follows(fam(pos), fam(pos + 1)) {
                return Some(ZeroHit::Adjacency { pos });
            }
        }
        let span = 3 * self.config.cat2_edges + 1;
        let first_y = (0..w.len()).find(|&i| fam(i) == Family::Y)?;
        for pos in (first_y..w.len()).step_by(3) {
            for &len in &self.zero_lens {
                if let Some(&rel) = w.get(pos..pos + len).and_then(|f| self.zero_index.get(f)) {
                    return Some(ZeroHit::Relation { rel, pos });
                }
            }
            let end = w.len().min(pos + span);
            let mut len = end - pos;
            len -= (len - 1) % 3;
            if (pos == first_y || pos + span <= w.len())
                && !self.realizable.contains(&w[pos..pos + len])
            {
                return Some(ZeroHit::Unrealizable { pos, len });
            }
        }
        None
    }

    /// Does some zero rule fire in `w`?
    pub fn is_zero(&self, w: &Word) -> bool {
        match w {
            Word::Zero => true,
            Word::Letters(l) => self.zero_hit(l).is_some(),
        }
    }

    /// Every occurrence of a flip side in `w`, leftmost first.
    pub fn eq_hits(&self, w: &[u32]) -> Vec<EqHit> {
        let mut out = Vec::new();
        for pos in 0..w.len().saturating_sub(6) {
            if let Some(rs) = self.eq_index.get(&w[pos..pos + 7]) {
                out.extend(rs.iter().map(|&(rel, forward)| EqHit { rel, pos, forward }));
            }
        }
        out
    }

    /// The other side of flip `rel` when `forward` names the matched side.
    pub fn flip_sides(&self, rel: usize, forward: bool) -> Option<(&Word, &Word)> {
        match self.relation(rel)? {
            Relation::Eq(a, b) if forward => Some((a, b)),
            Relation::Eq(a, b) => Some((b, a)),
            Relation::Zero(_) => None,
        }
    }
}
