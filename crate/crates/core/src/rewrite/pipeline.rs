use super::{
    bfs_to_zero, eliminate_innermost_bracket_pair, search, Elimination, RewriteStep, Search,
    Verdict,
};
use crate::codec::Word;
use crate::presentation::Presentation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    #[default]
    Pipeline,
    /// Plain breadth-first search.
    Bfs,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pipeline" => Ok(Strategy::Pipeline),
            "bfs" => Ok(Strategy::Bfs),
            _ => Err(format!("unknown strategy `{s}`")),
        }
    }
}

/// Searches for zero within `budget` expansions.
pub fn reduces_to_zero(p: &Presentation, w: &Word, budget: usize, strategy: Strategy) -> Verdict {
    match strategy {
        Strategy::Pipeline => reduce_pipeline(p, w, budget),
        Strategy::Bfs => bfs_to_zero(p, w, budget),
    }
}

/// Fires a zero rule if one occurs, removes innermost bracket pairs while
/// it can, then searches the rest breadth-first. The budget is shared by
/// all stages.
pub fn reduce_pipeline(p: &Presentation, w: &Word, budget: usize) -> Verdict {
    let Word::Letters(l) = w else {
        return Verdict::Zero { trace: Vec::new() };
    };
    if let Some(h) = p.zero_hit(l) {
        return Verdict::Zero {
            trace: vec![RewriteStep::from_zero_hit(h)],
        };
    }
    let mut left = budget;
    let mut trace = Vec::new();
    let mut cur = w.clone();
    while left > 0 {
        match eliminate_innermost_bracket_pair(p, &cur, &mut left) {
            Ok(Elimination::Reduced { word, trace: t }) => {
                trace.extend(t);
                cur = word;
            }
            Ok(Elimination::Zero { trace: t }) => {
                trace.extend(t);
                return Verdict::Zero { trace };
            }
            _ => break,
        }
    }
    let l = cur.letters().to_vec();
    let goal = |x: &[u32]| p.zero_hit(x).map(|h| Some(RewriteStep::from_zero_hit(h)));
    match search(p, &l, 0, l.len(), &mut left, goal) {
        Search::Found { trace: t, .. } => {
            trace.extend(t);
            Verdict::Zero { trace }
        }
        Search::Exhausted => Verdict::Irreducible { word: cur },
        Search::Budget { frontier } => Verdict::Unknown { frontier, budget },
    }
}
