//! Level sequences along a carrier edge and the four-letter substitution
//! system whose images model the node letters read along one edge.

use std::fmt;

use crate::complex::{Side, VertexKind};
use crate::error::{Error, Result};

/// Longest level sequence we agree to materialize (2^24 - 1 nodes).
pub const MAX_LEVEL_SEQ_ORDER: u32 = 24;

/// Word over `{1, 2, 3}`: the levels of the side nodes along one carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelSeq(pub Vec<u8>);

impl LevelSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for LevelSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `EdgeLevels(k)`: `1`, `121`, `1213121`, then `E(k-1) 3 E(k-1)`.
pub fn edge_levels(k: u32) -> Result<LevelSeq> {
    if k == 0 {
        return Err(Error::Precondition("edge_levels needs k >= 1".into()));
    }
    if k > MAX_LEVEL_SEQ_ORDER {
        return Err(Error::Capacity(format!(
            "edge_levels({k}) exceeds the order bound {MAX_LEVEL_SEQ_ORDER}"
        )));
    }
    let mut seq = match k {
        1 => vec![1],
        _ => vec![1, 2, 1],
    };
    if k >= 3 {
        seq = vec![1, 2, 1, 3, 1, 2, 1];
    }
    for _ in 3..k {
        let mut next = Vec::with_capacity(2 * seq.len() + 1);
        next.extend_from_slice(&seq);
        next.push(3);
        next.extend_from_slice(&seq);
        seq = next;
    }
    Ok(LevelSeq(seq))
}

/// Age every node by one level (1→2, 2→3, 3 stays) and interleave fresh
/// level-1 nodes at both ends and between all neighbours.
pub fn renumber_step(s: &LevelSeq) -> LevelSeq {
    let mut out = Vec::with_capacity(2 * s.len() + 1);
    out.push(1);
    for &l in &s.0 {
        out.push((l + 1).min(3));
        out.push(1);
    }
    LevelSeq(out)
}

/// True iff `levels` occurs inside some `EdgeLevels(k)`.
///
/// Every `EdgeLevels(k)` is a prefix of `(1213)^∞` truncated before a
/// trailing `3`, so the factor sets coincide with the factors of that
/// periodic word.
pub fn is_edge_levels_factor(levels: &[u8]) -> bool {
    const PERIOD: [u8; 4] = [1, 2, 1, 3];
    if levels.is_empty() {
        return true;
    }
    (0..4).any(|phase| {
        levels
            .iter()
            .enumerate()
            .all(|(i, &l)| PERIOD[(phase + i) % 4] == l)
    })
}

/// Letters of the substitution system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DolLetter {
    U1,
    L1,
    U,
    L,
}

impl DolLetter {
    pub fn token(self) -> &'static str {
        match self {
            DolLetter::U1 => "U1",
            DolLetter::L1 => "L1",
            DolLetter::U => "U",
            DolLetter::L => "L",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "U1" => DolLetter::U1,
            "L1" => DolLetter::L1,
            "U" => DolLetter::U,
            "L" => DolLetter::L,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DolWord(pub Vec<DolLetter>);

impl DolWord {
    pub fn single(l: DolLetter) -> Self {
        DolWord(vec![l])
    }

    pub fn parse(s: &str) -> Option<Self> {
        s.split_whitespace()
            .map(DolLetter::parse)
            .collect::<Option<Vec<_>>>()
            .map(DolWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(l.token())?;
        }
        Ok(())
    }
}

/// One application of `U1 → U1 U L1`, `L1 → U1 L L1`, `U → U`, `L → L`.
pub fn dol_step(w: &DolWord) -> DolWord {
    use DolLetter::*;
    let mut out = Vec::with_capacity(w.len() * 3);
    for &l in &w.0 {
        match l {
            U1 => out.extend_from_slice(&[U1, U, L1]),
            L1 => out.extend_from_slice(&[U1, L, L1]),
            other => out.push(other),
        }
    }
    DolWord(out)
}

/// `f^n(start)`.
pub fn dol_iterate(start: DolLetter, n: u32) -> DolWord {
    let mut w = DolWord::single(start);
    for _ in 0..n {
        w = dol_step(&w);
    }
    w
}

/// Finds some `Q` with `QQ` a factor of `w`; returns `(start, period)`.
///
/// Quadratic scan: for each period `p`, slide a run counter of positions
/// with `w[i] == w[i + p]`; a run of length `p` is a square.
pub fn find_square<T: PartialEq>(w: &[T]) -> Option<(usize, usize)> {
    let n = w.len();
    for p in 1..=n / 2 {
        let mut run = 0;
        for i in 0..n - p {
            if w[i] == w[i + p] {
                run += 1;
                if run == p {
                    return Some((i + 1 - p, p));
                }
            } else {
                run = 0;
            }
        }
    }
    None
}

/// The repeated factor `Q` of some square `QQ` in `w`, if any.
pub fn has_adjacent_repeat(w: &DolWord) -> Option<DolWord> {
    find_square(&w.0).map(|(start, p)| DolWord(w.0[start..start + p].to_vec()))
}

/// Projects the node kinds read along one carrier onto the substitution
/// alphabet. Only `UL` / `LU` side nodes are accepted.
pub fn project_nodes(nodes: &[(VertexKind, u8)]) -> Result<DolWord> {
    let mut out = Vec::with_capacity(nodes.len());
    for (i, &(kind, level)) in nodes.iter().enumerate() {
        let letter = match (kind, level) {
            (VertexKind::Side(Side::U, Side::L), 1) => DolLetter::U1,
            (VertexKind::Side(Side::U, Side::L), _) => DolLetter::U,
            (VertexKind::Side(Side::L, Side::U), 1) => DolLetter::L1,
            (VertexKind::Side(Side::L, Side::U), _) => DolLetter::L,
            (other, _) => {
                return Err(Error::Precondition(format!(
                    "node {i} has kind {other}, only UL and LU side nodes project"
                )))
            }
        };
        out.push(letter);
    }
    Ok(DolWord(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use DolLetter::*;

    fn seq(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn edge_levels_small_orders() {
        assert_eq!(edge_levels(1).unwrap().0, seq("1"));
        assert_eq!(edge_levels(2).unwrap().0, seq("121"));
        assert_eq!(edge_levels(3).unwrap().to_string(), "1213121");
        assert_eq!(edge_levels(4).unwrap().to_string(), "121312131213121");
        assert!(edge_levels(0).is_err());
        assert!(matches!(edge_levels(40), Err(Error::Capacity(_))));
    }

    #[test]
    fn renumber_matches_recursion() {
        assert_eq!(renumber_step(&LevelSeq(seq("1"))).0, seq("121"));
        assert_eq!(renumber_step(&LevelSeq(seq("121"))).0, seq("1213121"));
        for k in 1..12 {
            let s = edge_levels(k).unwrap();
            let next = renumber_step(&s);
            assert_eq!(next.len(), 2 * s.len() + 1);
            assert_eq!(next, edge_levels(k + 1).unwrap());
        }
    }

    #[test]
    fn periodic_structure() {
        for k in 3..=16 {
            let s = edge_levels(k).unwrap().0;
            assert_eq!(s.len(), (1usize << k) - 1);
            assert_eq!(&s[..3], &[1, 2, 1]);
            for (i, &l) in s[3..].iter().enumerate() {
                assert_eq!(l, [3, 1, 2, 1][i % 4], "k={k} i={i}");
            }
        }
    }

    #[test]
    fn factor_recognition() {
        assert!(is_edge_levels_factor(&seq("21312")));
        assert!(is_edge_levels_factor(&seq("3121312")));
        assert!(!is_edge_levels_factor(&seq("11")));
        assert!(!is_edge_levels_factor(&seq("2132")));
        assert!(!is_edge_levels_factor(&seq("1313")));
    }

    #[test]
    fn dol_rules() {
        assert_eq!(dol_step(&DolWord::single(U1)).0, vec![U1, U, L1]);
        assert_eq!(dol_step(&DolWord::single(U)).0, vec![U]);
        assert_eq!(dol_iterate(U1, 2).to_string(), "U1 U L1 U U1 L L1");
        assert_eq!(
            dol_iterate(U1, 3).to_string(),
            "U1 U L1 U U1 L L1 U U1 U L1 L U1 L L1"
        );
    }

    #[test]
    fn squares() {
        let w = DolWord::parse("U L U L").unwrap();
        assert_eq!(has_adjacent_repeat(&w).unwrap().to_string(), "U L");
        assert!(has_adjacent_repeat(&DolWord::default()).is_none());
        assert!(has_adjacent_repeat(&DolWord::parse("U1 U L1").unwrap()).is_none());
    }

    #[test]
    fn projection() {
        let ul = VertexKind::Side(Side::U, Side::L);
        let lu = VertexKind::Side(Side::L, Side::U);
        assert_eq!(project_nodes(&[(ul, 1)]).unwrap().0, vec![U1]);
        assert_eq!(
            project_nodes(&[(ul, 1), (ul, 3), (lu, 1), (lu, 2)])
                .unwrap()
                .0,
            vec![U1, U, L1, L]
        );
        assert!(project_nodes(&[(VertexKind::Side(Side::D, Side::L), 1)]).is_err());
        assert!(project_nodes(&[(VertexKind::Boundary(Side::R), 1)]).is_err());
    }
}
