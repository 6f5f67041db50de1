//! Letters of vertices and half-edges.
//!
//! A vertex letter carries the vertex's own type and level, a code of its
//! neighborhood, and the same data for up to three bosses. An edge letter
//! records the carrier an edge lies on and how the edge meets the vertex it
//! is read at.

mod compute;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::complex::{CarrierKind, Complex, VertexId, VertexKind};
use crate::error::{Error, Result};

pub use compute::{boss_set, environments, main_flag, vertex_label, Coloring};

pub const DEFAULT_RADIUS: u32 = 2;

/// Type data of a vertex: base-plane kind, pasted kinds, level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    pub kind: VertexKind,
    /// Sorted, without repetitions.
    pub pasted: Vec<VertexKind>,
    pub level: u8,
}

/// Code of the neighborhood of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Environment(pub u64);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BossSet {
    pub first: Option<VertexId>,
    pub second: Option<VertexId>,
    pub third: Option<VertexId>,
}

impl BossSet {
    pub fn to_array(self) -> [Option<VertexId>; 3] {
        [self.first, self.second, self.third]
    }

    pub fn len(self) -> usize {
        self.to_array().iter().flatten().count()
    }

    pub fn is_empty(self) -> bool {
        self.first.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BossInfo {
    pub label: VertexLabel,
    pub env: Environment,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLetter {
    pub label: VertexLabel,
    pub env: Environment,
    pub info: [Option<BossInfo>; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeDir {
    Out,
    In,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeFlags {
    pub into_pasting: bool,
    pub out_of_pasting: bool,
    pub into_subtile: bool,
    pub out_of_subtile: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLetter {
    pub carrier: CarrierKind,
    /// Traversed in the positive carrier direction (side A).
    pub forward: bool,
    pub dir: EdgeDir,
    pub main: bool,
    pub flags: EdgeFlags,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Vertex(VertexLetter),
    Edge(EdgeLetter),
}

/// Letter families of the alternating form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Node letters.
    Y,
    /// Out-edge letters.
    Z,
    /// In-edge letters.
    X,
}

impl Letter {
    pub fn family(&self) -> Family {
        match self {
            Letter::Vertex(_) => Family::Y,
            Letter::Edge(e) if e.dir == EdgeDir::Out => Family::Z,
            Letter::Edge(_) => Family::X,
        }
    }

    pub fn as_vertex(&self) -> Option<&VertexLetter> {
        match self {
            Letter::Vertex(v) => Some(v),
            Letter::Edge(_) => None,
        }
    }

    pub fn as_edge(&self) -> Option<&EdgeLetter> {
        match self {
            Letter::Edge(e) => Some(e),
            Letter::Vertex(_) => None,
        }
    }
}

/// Every letter of a complex, sorted, with dense ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<Letter>,
    index: HashMap<Letter, u32>,
}

impl Alphabet {
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let set: BTreeSet<Letter> = letters.into_iter().collect();
        let letters: Vec<Letter> = set.into_iter().collect();
        let index = letters
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        Alphabet { letters, index }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn get(&self, id: u32) -> &Letter {
        &self.letters[id as usize]
    }

    pub fn id(&self, l: &Letter) -> Option<u32> {
        self.index.get(l).copied()
    }

    pub fn contains(&self, l: &Letter) -> bool {
        self.index.contains_key(l)
    }

    pub fn family(&self, id: u32) -> Family {
        self.letters[id as usize].family()
    }

    /// One canonical token per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.letters {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            letters.push(line.parse().map_err(|e: Error| match e {
                Error::UnknownLetter(t) => Error::parse(i + 1, format!("bad letter `{t}`")),
                other => other,
            })?);
        }
        Ok(Alphabet::from_letters(letters))
    }
}

/// The alphabet of all letters occurring on `c` at environment radius `r`.
pub fn alphabet(c: &Complex, radius: u32) -> Alphabet {
    Coloring::new(c, radius).alphabet()
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/", self.kind)?;
        if self.pasted.is_empty() {
            f.write_str("-")?;
        } else {
            for (i, k) in self.pasted.iter().enumerate() {
                if i > 0 {
                    f.write_str("+")?;
                }
                write!(f, "{k}")?;
            }
        }
        write!(f, "/{}", self.level)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Vertex(v) => {
                write!(f, "Y:{}:{}", v.label, v.env)?;
                for b in &v.info {
                    match b {
                        Some(b) => write!(f, ":{}/{}", b.label, b.env)?,
                        None => f.write_str(":-")?,
                    }
                }
                Ok(())
            }
            Letter::Edge(e) => {
                let fam = if e.dir == EdgeDir::Out { 'Z' } else { 'X' };
                let side = if e.forward { 'A' } else { 'B' };
                let main = if e.main { 'm' } else { 'n' };
                let mut flags = String::new();
                for (on, c) in [
                    (e.flags.into_pasting, 'p'),
                    (e.flags.out_of_pasting, 'q'),
                    (e.flags.into_subtile, 's'),
                    (e.flags.out_of_subtile, 't'),
                ] {
                    if on {
                        flags.push(c);
                    }
                }
                if flags.is_empty() {
                    flags.push('-');
                }
                write!(f, "{fam}:{}:{side}:{main}:{flags}", e.carrier)
            }
        }
    }
}

fn parse_label(parts: &[&str]) -> Option<VertexLabel> {
    let [kind, pasted, level] = parts else {
        return None;
    };
    let kind = kind.parse().ok()?;
    let pasted = if *pasted == "-" {
        Vec::new()
    } else {
        let set: BTreeSet<VertexKind> = pasted
            .split('+')
            .map(|k| k.parse().ok())
            .collect::<Option<_>>()?;
        set.into_iter().collect()
    };
    let level: u8 = level.parse().ok()?;
    (1..=3).contains(&level).then_some(VertexLabel {
        kind,
        pasted,
        level,
    })
}

fn parse_env(s: &str) -> Option<Environment> {
    (s.len() == 16)
        .then(|| u64::from_str_radix(s, 16).ok().map(Environment))
        .flatten()
}

fn parse_carrier(s: &str) -> Option<CarrierKind> {
    let mut chars = s.chars();
    match (chars.next()?, chars.next()?, chars.next()) {
        ('i', d, None) => {
            let k = d.to_digit(10)? as u8;
            (1..=8).contains(&k).then_some(CarrierKind::Internal(k))
        }
        ('b', c, None) => {
            let side = format!("{c}").parse::<VertexKind>().ok()?;
            match side {
                VertexKind::Boundary(s) => Some(CarrierKind::Border(s)),
                _ => None,
            }
        }
        _ => None,
    }
}

fn parse_letter(s: &str) -> Option<Letter> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts[0] {
        "Y" if parts.len() == 6 => {
            let own: Vec<&str> = parts[1].split('/').collect();
            let label = parse_label(&own)?;
            let env = parse_env(parts[2])?;
            let mut info: [Option<BossInfo>; 3] = [None, None, None];
            for (slot, p) in info.iter_mut().zip(&parts[3..]) {
                if *p == "-" {
                    continue;
                }
                let q: Vec<&str> = p.split('/').collect();
                if q.len() != 4 {
                    return None;
                }
                *slot = Some(BossInfo {
                    label: parse_label(&q[..3])?,
                    env: parse_env(q[3])?,
                });
            }
            Some(Letter::Vertex(VertexLetter { label, env, info }))
        }
        "Z" | "X" if parts.len() == 5 => {
            let dir = if parts[0] == "Z" {
                EdgeDir::Out
            } else {
                EdgeDir::In
            };
            let forward = match parts[2] {
                "A" => true,
                "B" => false,
                _ => return None,
            };
            let main = match parts[3] {
                "m" => true,
                "n" => false,
                _ => return None,
            };
            let mut flags = EdgeFlags::default();
            if parts[4] != "-" {
                for c in parts[4].chars() {
                    let slot = match c {
                        'p' => &mut flags.into_pasting,
                        'q' => &mut flags.out_of_pasting,
                        's' => &mut flags.into_subtile,
                        't' => &mut flags.out_of_subtile,
                        _ => return None,
                    };
                    *slot = true;
                }
            }
            Some(Letter::Edge(EdgeLetter {
                carrier: parse_carrier(parts[1])?,
                forward,
                dir,
                main,
                flags,
            }))
        }
        _ => None,
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_letter(s).ok_or_else(|| Error::UnknownLetter(s.to_string()))
    }
}

#[cfg(test)]
mod tests;
