//! Rewriting in the semigroup with zero: single steps, bounded search for
//! zero, and the staged reduction of a word.

mod brackets;
mod pipeline;
mod ranks;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::codec::Word;
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relation, ZeroHit};

pub use brackets::{
    bracket_structure, eliminate_innermost_bracket_pair, Bracket, BracketProjection, Elimination,
};
pub use pipeline::{reduce_pipeline, reduces_to_zero, Strategy};
pub use ranks::{
    rank_diagram, realize_edge_word, regular_word, word_representative, RankDiagram, Realization,
    Representative,
};

/// Which relation a step uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Two adjacent letters that do not alternate.
    Adjacency,
    /// A factor of `len` letters that encodes no short path.
    Unrealizable { len: usize },
    /// A listed relation, by id.
    Listed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub rule: Rule,
    pub pos: usize,
    /// For flips: the left side is replaced by the right side.
    pub forward: bool,
}

impl RewriteStep {
    pub fn from_zero_hit(h: ZeroHit) -> Self {
        let (rule, pos) = match h {
            ZeroHit::Adjacency { pos } => (Rule::Adjacency, pos),
            ZeroHit::Unrealizable { pos, len } => (Rule::Unrealizable { len }, pos),
            ZeroHit::Relation { rel, pos } => (Rule::Listed(rel), pos),
        };
        RewriteStep {
            rule,
            pos,
            forward: true,
        }
    }

    /// The step undoing a flip.
    pub fn inverse(self) -> Self {
        RewriteStep {
            forward: !self.forward,
            ..self
        }
    }
}

/// One step per line: `adjacency POS`, `unrealizable LEN POS` or
/// `relation ID POS forward|backward`.
impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule {
            Rule::Adjacency => write!(f, "adjacency {}", self.pos),
            Rule::Unrealizable { len } => write!(f, "unrealizable {len} {}", self.pos),
            Rule::Listed(id) => {
                let dir = if self.forward { "forward" } else { "backward" };
                write!(f, "relation {id} {} {dir}", self.pos)
            }
        }
    }
}

impl FromStr for RewriteStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let f: Vec<&str> = s.split_whitespace().collect();
        let num = |t: &str| -> Result<usize> {
            t.parse()
                .map_err(|_| reject(format!("bad number `{t}` in step `{s}`")))
        };
        let (rule, pos, forward) = match f.as_slice() {
            ["adjacency", pos] => (Rule::Adjacency, num(pos)?, true),
            ["unrealizable", len, pos] => (Rule::Unrealizable { len: num(len)? }, num(pos)?, true),
            ["relation", id, pos, dir @ ("forward" | "backward")] => {
                (Rule::Listed(num(id)?), num(pos)?, *dir == "forward")
            }
            _ => return Err(reject(format!("bad step `{s}`"))),
        };
        Ok(RewriteStep { rule, pos, forward })
    }
}

/// Reads a trace written one step per line; blank lines and `#` comments
/// are skipped.
pub fn parse_trace(text: &str) -> Result<Vec<RewriteStep>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(
            line.parse()
                .map_err(|e: Error| Error::parse(i + 1, e.to_string()))?,
        );
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Zero {
        trace: Vec<RewriteStep>,
    },
    /// The closure of the word under flips is finite and free of zero.
    Irreducible {
        word: Word,
    },
    Unknown {
        frontier: usize,
        budget: usize,
    },
}

impl Verdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, Verdict::Zero { .. })
    }
}

fn reject(msg: impl Into<String>) -> Error {
    Error::Rejected(msg.into())
}

/// Applies one step, checking that its pattern occurs where it claims.
pub fn apply(p: &Presentation, w: &Word, step: RewriteStep) -> Result<Word> {
    let Word::Letters(l) = w else {
        return Err(reject("the word is already zero"));
    };
    let at = step.pos;
    match step.rule {
        Rule::Adjacency => {
            let a = p.alphabet();
            let ok =
                at + 1 < l.len() && !crate::codec::follows(a.family(l[at]), a.family(l[at + 1]));
            ok.then_some(Word::Zero)
                .ok_or_else(|| reject(format!("letters at {at} alternate")))
        }
        Rule::Unrealizable { len } => {
            let f = l
                .get(at..at + len)
                .ok_or_else(|| reject("factor out of range"))?;
            let ok = p.alphabet().family(f[0]) == crate::coloring::Family::Y
                && len % 3 == 1
                && len <= 3 * p.config().cat2_edges + 1
                && crate::codec::well_formed(p.alphabet(), &Word::new(f.to_vec()))
                && !p.is_realizable_factor(f);
            ok.then_some(Word::Zero)
                .ok_or_else(|| reject(format!("factor at {at} is realizable")))
        }
        Rule::Listed(id) => match p.relation(id) {
            Some(Relation::Zero(z)) => {
                let ok = l.get(at..at + z.len()) == Some(z.letters());
                ok.then_some(Word::Zero)
                    .ok_or_else(|| reject(format!("relation {id} does not occur at {at}")))
            }
            Some(Relation::Eq(..)) => {
                let (from, to) = p.flip_sides(id, step.forward).expect("flip");
                if l.get(at..at + from.len()) != Some(from.letters()) {
                    return Err(reject(format!("flip {id} does not occur at {at}")));
                }
                let mut out = l.clone();
                out[at..at + from.len()].copy_from_slice(to.letters());
                Ok(Word::Letters(out))
            }
            None => Err(reject(format!("no relation {id}"))),
        },
    }
}

/// All one-step successors. A firing zero rule collapses them to zero.
pub fn neighbors(p: &Presentation, w: &Word) -> Vec<(RewriteStep, Word)> {
    let Word::Letters(l) = w else {
        return Vec::new();
    };
    if let Some(h) = p.zero_hit(l) {
        return vec![(RewriteStep::from_zero_hit(h), Word::Zero)];
    }
    p.eq_hits(l)
        .into_iter()
        .map(|h| {
            let step = RewriteStep {
                rule: Rule::Listed(h.rel),
                pos: h.pos,
                forward: h.forward,
            };
            let next = apply(p, w, step).expect("hit came from the index");
            (step, next)
        })
        .collect()
}

/// Applies `trace` from `w`, failing on the first step that does not match.
pub fn replay(p: &Presentation, w: &Word, trace: &[RewriteStep]) -> Result<Word> {
    trace.iter().try_fold(w.clone(), |w, &s| apply(p, &w, s))
}

/// Outcome of a breadth-first search over flips.
pub(crate) enum Search {
    Found { word: Word, trace: Vec<RewriteStep> },
    Exhausted,
    Budget { frontier: usize },
}

/// Breadth-first search from `w` over flips whose window lies inside
/// `lo..hi`, stopping at the first word accepted by `goal`. Zero is found
/// through `goal` like any other word. Each expansion spends one unit of
/// `budget`.
pub(crate) fn search(
    p: &Presentation,
    w: &[u32],
    lo: usize,
    hi: usize,
    budget: &mut usize,
    goal: impl Fn(&[u32]) -> Option<Option<RewriteStep>>,
) -> Search {
    let mut words: Vec<Vec<u32>> = vec![w.to_vec()];
    let mut parent: Vec<Option<(usize, RewriteStep)>> = vec![None];
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::from([(w.to_vec(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    let trace_to = |mut i: usize, parent: &[Option<(usize, RewriteStep)>]| {
        let mut t = Vec::new();
        while let Some((j, s)) = parent[i] {
            t.push(s);
            i = j;
        }
        t.reverse();
        t
    };
    while let Some(i) = queue.pop_front() {
        if let Some(last) = goal(&words[i]) {
            let mut trace = trace_to(i, &parent);
            let word = match last {
                Some(s) => {
                    trace.push(s);
                    Word::Zero
                }
                None => Word::Letters(words[i].clone()),
            };
            return Search::Found { word, trace };
        }
        if *budget == 0 {
            return Search::Budget {
                frontier: queue.len() + 1,
            };
        }
        *budget -= 1;
        for h in p.eq_hits(&words[i]) {
            if h.pos < lo || h.pos + 7 > hi {
                continue;
            }
            let (_, to) = p.flip_sides(h.rel, h.forward).expect("flip");
            let mut next = words[i].clone();
            next[h.pos..h.pos + 7].copy_from_slice(to.letters());
            if seen.contains_key(&next) {
                continue;
            }
            let step = RewriteStep {
                rule: Rule::Listed(h.rel),
                pos: h.pos,
                forward: h.forward,
            };
            seen.insert(next.clone(), words.len());
            parent.push(Some((i, step)));
            queue.push_back(words.len());
            words.push(next);
        }
    }
    Search::Exhausted
}

/// Plain breadth-first search for zero.
pub fn bfs_to_zero(p: &Presentation, w: &Word, budget: usize) -> Verdict {
    let Word::Letters(l) = w else {
        return Verdict::Zero { trace: Vec::new() };
    };
    let goal = |x: &[u32]| p.zero_hit(x).map(|h| Some(RewriteStep::from_zero_hit(h)));
    match search(p, l, 0, l.len(), &mut budget.clone(), goal) {
        Search::Found { trace, .. } => Verdict::Zero { trace },
        Search::Exhausted => Verdict::Irreducible { word: w.clone() },
        Search::Budget { frontier } => Verdict::Unknown { frontier, budget },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// Every word reachable by flips, none of them zero.
    Complete(usize),
    ReachesZero,
    /// Stopped after this many words without meeting zero.
    Capped(usize),
}

/// Explores every word reachable from `w` by flips, up to `cap` words.
pub fn closure(p: &Presentation, w: &Word, cap: usize) -> Closure {
    let Word::Letters(l) = w else {
        return Closure::ReachesZero;
    };
    let mut seen = std::collections::HashSet::from([l.clone()]);
    let mut queue = VecDeque::from([l.clone()]);
    while let Some(x) = queue.pop_front() {
        for (_, next) in neighbors(p, &Word::Letters(x)) {
            let Word::Letters(n) = next else {
                return Closure::ReachesZero;
            };
            if seen.insert(n.clone()) {
                if seen.len() > cap {
                    return Closure::Capped(cap);
                }
                queue.push_back(n);
            }
        }
    }
    Closure::Complete(seen.len())
}
