use std::fmt;

use super::{search, RewriteStep, Search};
use crate::codec::Word;
use crate::coloring::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bracket {
    Open,
    Close,
}

/// Brackets of a word, each with the position of its letter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketProjection {
    pub items: Vec<(usize, Bracket)>,
}

impl BracketProjection {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn opens(&self) -> usize {
        self.items
            .iter()
            .filter(|(_, b)| *b == Bracket::Open)
            .count()
    }

    /// Index of the first `[` directly followed by `]`.
    pub fn innermost_pair(&self) -> Option<usize> {
        self.items
            .windows(2)
            .position(|p| p[0].1 == Bracket::Open && p[1].1 == Bracket::Close)
    }

    /// All closes come before all opens.
    pub fn is_split(&self) -> bool {
        self.innermost_pair().is_none()
    }
}

impl fmt::Display for BracketProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (_, b)) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(match b {
                Bracket::Open => "[",
                Bracket::Close => "]",
            })?;
        }
        Ok(())
    }
}

fn bracket_of(l: &Letter) -> Option<Bracket> {
    let e = l.as_edge()?;
    match e.dir {
        crate::coloring::EdgeDir::Out if !e.main || e.flags.into_pasting => Some(Bracket::Open),
        crate::coloring::EdgeDir::In if !e.main || e.flags.out_of_pasting => Some(Bracket::Close),
        _ => None,
    }
}

/// Out-edge letters leaving a main line open a bracket, in-edge letters
/// returning to one close it.
pub fn bracket_structure(alphabet: &Alphabet, w: &Word) -> BracketProjection {
    BracketProjection {
        items: w
            .letters()
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| bracket_of(alphabet.get(l)).map(|b| (i, b)))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elimination {
    /// An equal word with fewer brackets.
    Reduced {
        word: Word,
        trace: Vec<RewriteStep>,
    },
    Zero {
        trace: Vec<RewriteStep>,
    },
    /// Every flip of the enclosed factor keeps its brackets.
    Stuck,
    Unknown {
        frontier: usize,
        budget: usize,
    },
}

/// Rewrites the factor around the first `[ ]` pair, from the node before
/// the `[` to the node after the `]`, until a bracket disappears or a zero
/// rule fires. Expansions are taken from `budget`.
pub fn eliminate_innermost_bracket_pair(
    p: &Presentation,
    w: &Word,
    budget: &mut usize,
) -> Result<Elimination> {
    let Word::Letters(l) = w else {
        return Err(Error::Precondition("the word is zero".into()));
    };
    let proj = bracket_structure(p.alphabet(), w);
    let k = proj
        .innermost_pair()
        .ok_or_else(|| Error::Precondition(format!("no `[ ]` in `{proj}`")))?;
    let lo = proj.items[k].0.saturating_sub(1);
    let hi = (proj.items[k + 1].0 + 2).min(l.len());
    let count = proj.len();
    let goal = |x: &[u32]| {
        if let Some(h) = p.zero_hit(x) {
            return Some(Some(RewriteStep::from_zero_hit(h)));
        }
        let n = bracket_structure(p.alphabet(), &Word::Letters(x.to_vec())).len();
        (n < count).then_some(None)
    };
    let total = *budget;
    Ok(match search(p, l, lo, hi, budget, goal) {
        Search::Found {
            word: Word::Zero,
            trace,
        } => Elimination::Zero { trace },
        Search::Found { word, trace } => Elimination::Reduced { word, trace },
        Search::Exhausted => Elimination::Stuck,
        Search::Budget { frontier } => Elimination::Unknown {
            frontier,
            budget: total,
        },
    })
}
