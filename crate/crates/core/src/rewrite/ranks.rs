use std::fmt;

use super::RewriteStep;
use crate::codec::{Encoder, Path, Word};
use crate::coloring::{Family, Letter};
use crate::complex::{Complex, Corner, VertexKind};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// `1`, `121`, `1213121`, ...
pub fn regular_word(k: u32) -> Vec<u32> {
    let mut w = vec![1];
    for r in 2..=k {
        let mut next = w.clone();
        next.push(r);
        next.extend_from_slice(&w);
        w = next;
    }
    w
}

/// Ranks of the node letters of a side-node word. `None` marks a node whose
/// rank the word does not witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDiagram {
    /// Letter positions of the nodes.
    pub nodes: Vec<usize>,
    pub ranks: Vec<Option<u32>>,
}

impl RankDiagram {
    /// Node index of the highest rank.
    pub fn peak(&self) -> Option<usize> {
        (0..self.ranks.len()).max_by_key(|&i| (self.ranks[i], std::cmp::Reverse(i)))
    }

    /// Ranks along a level sequence that occurs in some `EdgeLevels(k)`.
    ///
    /// Away from the highest node, rank is `1 + ν₂` of the distance to it.
    /// The highest node is taken to be the most central node of level 3
    /// and gets the largest rank whose window fits in the word.
    pub fn from_levels(levels: &[u8]) -> Result<Vec<Option<u32>>> {
        if !crate::dol::is_edge_levels_factor(levels) {
            return Err(Error::Inconsistent(format!(
                "`{}` is not a factor of any edge level sequence",
                crate::dol::LevelSeq(levels.to_vec())
            )));
        }
        let n = levels.len();
        let margin = |i: usize| i.min(n - 1 - i);
        let Some(top) = (0..n)
            .filter(|&i| levels[i] == 3)
            .max_by_key(|&i| (margin(i), std::cmp::Reverse(i)))
        else {
            return Ok(levels.iter().map(|&l| Some(l as u32)).collect());
        };
        let mut ranks: Vec<Option<u32>> = (0..n)
            .map(|i| Some(i.abs_diff(top).trailing_zeros() + 1))
            .collect();
        let floor = ranks
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != top)
            .filter_map(|(_, r)| *r)
            .max()
            .unwrap_or(0)
            .max(2);
        let mut r = None;
        let mut k = floor + 1;
        while 1usize << (k - 2) <= margin(top) {
            r = Some(k);
            k += 1;
        }
        ranks[top] = r;
        Ok(ranks)
    }
}

impl fmt::Display for RankDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.ranks {
            match r {
                Some(r) => write!(f, "{r}")?,
                None => f.write_str("x")?,
            }
        }
        Ok(())
    }
}

fn side_node(l: &Letter) -> Option<&crate::coloring::VertexLetter> {
    l.as_vertex()
        .filter(|v| matches!(v.label.kind, VertexKind::Side(..)))
}

/// Rank diagram of a word whose nodes are side nodes joined by main edges.
pub fn rank_diagram(p: &Presentation, w: &Word) -> Result<RankDiagram> {
    let a = p.alphabet();
    let mut nodes = Vec::new();
    let mut levels = Vec::new();
    for (i, &l) in w.letters().iter().enumerate() {
        match a.get(l) {
            Letter::Edge(e) if !e.main => {
                return Err(Error::Precondition(format!(
                    "letter {i} is not a main edge"
                )))
            }
            Letter::Edge(_) => {}
            l => {
                let v = side_node(l)
                    .ok_or_else(|| Error::Precondition(format!("letter {i} is not a side node")))?;
                nodes.push(i);
                levels.push(v.label.level);
            }
        }
    }
    let ranks = RankDiagram::from_levels(&levels)?;
    Ok(RankDiagram { nodes, ranks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representative {
    /// Letters `start..end` of the word, holding `nodes` node letters.
    Factor {
        start: usize,
        end: usize,
        nodes: usize,
    },
    Zero {
        trace: Vec<RewriteStep>,
    },
    /// The windows ran past the word or the budget.
    Unknown {
        frontier: usize,
        budget: usize,
    },
}

fn node_positions(p: &Presentation, w: &[u32]) -> Vec<usize> {
    (0..w.len())
        .filter(|&i| p.alphabet().family(w[i]) == Family::Y)
        .collect()
}

fn reads_forward(p: &Presentation, w: &[u32]) -> bool {
    w.iter()
        .find_map(|&l| p.alphabet().get(l).as_edge())
        .is_none_or(|e| e.forward)
}

fn pasted(p: &Presentation, l: u32, c: Corner) -> bool {
    p.alphabet()
        .get(l)
        .as_vertex()
        .is_some_and(|v| v.label.pasted.contains(&VertexKind::Corner(c)))
}

/// Windows of `2^k + 1` nodes centred at node `i`, `k = 2, 3, ...`, up to
/// the first whose left end was pasted as `CUR` and right end as `CDL`.
pub fn word_representative(
    p: &Presentation,
    w: &Word,
    i: usize,
    budget: usize,
) -> Result<Representative> {
    let Word::Letters(l) = w else {
        return Err(Error::Precondition("the word is zero".into()));
    };
    let nodes = node_positions(p, l);
    let x = *nodes
        .get(i)
        .ok_or_else(|| Error::Precondition(format!("no node {i}")))?;
    let level = side_node(p.alphabet().get(l[x])).map(|v| v.label.level);
    if level != Some(3) {
        return Err(Error::Precondition(format!(
            "node {i} is not a side node of level 3"
        )));
    }
    let (left, right) = if reads_forward(p, l) {
        (Corner::UR, Corner::DL)
    } else {
        (Corner::DL, Corner::UR)
    };
    let mut h = 2;
    for _ in 0..budget {
        if h > i || i + h >= nodes.len() {
            return Ok(Representative::Unknown {
                frontier: 2 * h + 1,
                budget,
            });
        }
        let (start, end) = (nodes[i - h], nodes[i + h] + 1);
        if let Some(z) = p.zero_hit(&l[start..end]) {
            let mut s = RewriteStep::from_zero_hit(z);
            s.pos += start;
            return Ok(Representative::Zero { trace: vec![s] });
        }
        if pasted(p, l[start], left) && pasted(p, l[end - 1], right) {
            return Ok(Representative::Factor {
                start,
                end,
                nodes: 2 * h + 1,
            });
        }
        h *= 2;
    }
    Ok(Representative::Unknown {
        frontier: 2 * h + 1,
        budget,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    Zero { trace: Vec<RewriteStep> },
    Embedded(Path),
    Unknown { frontier: usize, budget: usize },
}

/// Grows windows outwards from the highest node, each twice as wide as the
/// last, and embeds each in `c`. `enc` must use the alphabet of `p`.
pub fn realize_edge_word(
    p: &Presentation,
    c: &Complex,
    enc: &Encoder,
    w: &Word,
    budget: usize,
) -> Realization {
    let Word::Letters(l) = w else {
        return Realization::Zero { trace: Vec::new() };
    };
    if let Some(z) = p.zero_hit(l) {
        return Realization::Zero {
            trace: vec![RewriteStep::from_zero_hit(z)],
        };
    }
    let nodes = node_positions(p, l);
    if nodes.is_empty() || nodes[0] != 0 || *nodes.last().unwrap() + 1 != l.len() {
        return Realization::Unknown {
            frontier: 0,
            budget,
        };
    }
    let centre = rank_diagram(p, w)
        .ok()
        .and_then(|d| d.peak())
        .unwrap_or(nodes.len() / 2);
    let mut h = 1usize;
    for _ in 0..budget {
        let (a, b) = (centre.saturating_sub(h), (centre + h).min(nodes.len() - 1));
        let factor = Word::new(l[nodes[a]..=nodes[b]].to_vec());
        let mut found = enc.embeddings(c, &factor);
        if found.is_empty() {
            return Realization::Unknown {
                frontier: b - a + 1,
                budget,
            };
        }
        if a == 0 && b == nodes.len() - 1 {
            return Realization::Embedded(found.swap_remove(0));
        }
        h *= 2;
    }
    Realization::Unknown {
        frontier: (2 * h + 1).min(nodes.len()),
        budget,
    }
}
