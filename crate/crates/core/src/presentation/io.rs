use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::*;
use crate::error::{Error, Result};

const HEADER: &str = "nilforge-presentation 1";

impl Presentation {
    /// Text form. Letters are listed once; words refer to them as `#i`.
    pub fn export(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{HEADER}");
        let _ = writeln!(s, "level {}", self.level);
        let _ = writeln!(s, "radius {}", self.config.radius);
        let _ = writeln!(s, "cat2-edges {}", self.config.cat2_edges);
        for l in self.alphabet.letters() {
            let _ = writeln!(s, "A {l}");
        }
        let _ = writeln!(s, "category 2");
        for w in &self.realizable {
            let _ = writeln!(s, "R {}", Word::new(w.clone()).to_id_text());
        }
        let mut current = None;
        for (cat, r) in &self.relations {
            if current != Some(*cat) {
                let _ = writeln!(s, "category {}", cat.number());
                current = Some(*cat);
            }
            match r {
                Relation::Zero(w) => {
                    let _ = writeln!(s, "Z {}", w.to_id_text());
                }
                Relation::Eq(a, b) => {
                    let _ = writeln!(s, "E {} | {}", a.to_id_text(), b.to_id_text());
                }
            }
        }
        s
    }

    pub fn import(text: &str) -> Result<Presentation> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, HEADER)) => {}
            Some((n, _)) => return Err(Error::parse(n, "missing presentation header")),
            None => return Err(Error::parse(0, "empty input")),
        }
        let mut level = None;
        let mut config = Config::default();
        let mut letters = Vec::new();
        let mut alphabet: Option<Alphabet> = None;
        let mut realizable = BTreeSet::new();
        let mut rels = Vec::new();
        let mut cat: Option<Category> = None;
        for (n, line) in lines {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            let num = |what: &str| {
                rest.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(n, format!("bad {what} `{rest}`")))
            };
            if key == "A" {
                if alphabet.is_some() {
                    return Err(Error::parse(n, "letter after the alphabet was closed"));
                }
                let l: crate::coloring::Letter = rest
                    .parse()
                    .map_err(|_| Error::parse(n, format!("bad letter `{rest}`")))?;
                if letters.last().is_some_and(|p| *p >= l) {
                    return Err(Error::parse(n, "letters out of order"));
                }
                letters.push(l);
                continue;
            }
            if matches!(key, "R" | "Z" | "E" | "category") && alphabet.is_none() {
                alphabet = Some(Alphabet::from_letters(letters.drain(..)));
            }
            let word = |t: &str| -> Result<Word> {
                let a = alphabet.as_ref().expect("alphabet closed above");
                Word::from_text(a, t).map_err(|e| Error::parse(n, e.to_string()))
            };
            match key {
                "level" => level = Some(num("level")? as u32),
                "radius" => config.radius = num("radius")? as u32,
                "cat2-edges" => config.cat2_edges = num("edge bound")? as usize,
                "category" => {
                    let c = u8::try_from(num("category")?)
                        .ok()
                        .and_then(Category::from_number)
                        .filter(|c| *c != Category::Adjacency)
                        .ok_or_else(|| Error::parse(n, format!("bad category `{rest}`")))?;
                    cat = Some(c);
                }
                "R" if cat == Some(Category::Unrealizable) => {
                    realizable.insert(word(rest)?.letters().to_vec());
                }
                "Z" if matches!(cat, Some(Category::NullForm | Category::DeadPattern)) => {
                    rels.push((cat.unwrap(), Relation::Zero(word(rest)?)));
                }
                "E" if cat == Some(Category::TileFlip) => {
                    let (a, b) = rest
                        .split_once('|')
                        .ok_or_else(|| Error::parse(n, "flip without `|`"))?;
                    rels.push((Category::TileFlip, Relation::Eq(word(a)?, word(b)?)));
                }
                "R" | "Z" | "E" => {
                    return Err(Error::parse(
                        n,
                        format!("`{key}` line outside its category"),
                    ))
                }
                _ => return Err(Error::parse(n, format!("unknown line kind `{key}`"))),
            }
        }
        let level = level.ok_or_else(|| Error::parse(0, "missing level"))?;
        let alphabet = alphabet.unwrap_or_else(|| Alphabet::from_letters(letters));
        Ok(Presentation::new(alphabet, level, config, realizable, rels))
    }
}
