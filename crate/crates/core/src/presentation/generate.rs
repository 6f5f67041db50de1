use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::codec::{well_formed, Encoder, Path};
use crate::complex::{Complex, Corner, MacroId, Side, VertexId};
use crate::error::{Error, Result};

/// Category 1: some adjacent pair breaks the alternation.
pub fn cat1_zero(alphabet: &Alphabet, w: &Word) -> bool {
    !well_formed(alphabet, w)
}

/// A directed 2-edge path between opposite corners of a tile, with the
/// other path around the tile between the same corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilePath {
    pub tile: MacroId,
    pub path: Path,
    pub complement: Path,
}

/// The eight directed corner-to-corner paths of every tile.
pub fn tile_paths(c: &Complex) -> Vec<TilePath> {
    let mut out = Vec::with_capacity(8 * c.tiles().len());
    for &t in c.tiles() {
        let k = c.macrotile(t).corners;
        for i in 0..4 {
            let (a, b, d, e) = (k[i], k[(i + 1) % 4], k[(i + 2) % 4], k[(i + 3) % 4]);
            for (via, other) in [(b, e), (e, b)] {
                let path = Path::through(c, &[a, via, d]).expect("tile sides are edges");
                let complement = Path::through(c, &[a, other, d]).expect("tile sides are edges");
                out.push(TilePath {
                    tile: t,
                    path,
                    complement,
                });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeadPattern {
    /// `A → U → B` along internal edges 1 and 2.
    Aub,
    /// `A → C → B` along internal edges 4 and 5.
    Acb,
    /// `C → DL → D` along internal edge 7 and the lower side.
    Cdld,
    /// `C → DR → D` along internal edge 8 and the lower side.
    Cdrd,
}

impl DeadPattern {
    pub const ALL: [DeadPattern; 4] = [
        DeadPattern::Aub,
        DeadPattern::Acb,
        DeadPattern::Cdld,
        DeadPattern::Cdrd,
    ];
}

/// The neighbor of `at` on carrier `car`, which must be one of its ends.
fn next_on(c: &Complex, car: crate::complex::CarrierId, at: VertexId) -> VertexId {
    let vs = &c.carrier(car).vertices;
    if vs[0] == at {
        vs[1]
    } else {
        debug_assert_eq!(*vs.last().unwrap(), at);
        vs[vs.len() - 2]
    }
}

/// The turn of `p` in macrotile `m`: last edge before the turning vertex
/// and first edge after it, as a 3-vertex path.
pub fn dead_turn(c: &Complex, m: MacroId, p: DeadPattern) -> Option<[VertexId; 3]> {
    let t = c.macrotile(m);
    let internal = t.internal?;
    let e = |k: usize| internal[k - 1];
    let along_bottom = |from: VertexId| {
        let path = c.side_path(m, Side::D);
        if path[0] == from {
            path[1]
        } else {
            path[path.len() - 2]
        }
    };
    Some(match p {
        DeadPattern::Aub => {
            let u = t.mid(Side::U)?;
            [next_on(c, e(1), u), u, next_on(c, e(2), u)]
        }
        DeadPattern::Acb => {
            let x = t.inner?[2];
            [next_on(c, e(4), x), x, next_on(c, e(5), x)]
        }
        DeadPattern::Cdld => {
            let x = t.corner(Corner::DL);
            [next_on(c, e(7), x), x, along_bottom(x)]
        }
        DeadPattern::Cdrd => {
            let x = t.corner(Corner::DR);
            [next_on(c, e(8), x), x, along_bottom(x)]
        }
    })
}

/// Dead turns of every macrotile of level at least 2, in both directions.
pub fn dead_paths(c: &Complex) -> Vec<(MacroId, DeadPattern, Path)> {
    let mut out = Vec::new();
    for m in c.macro_ids() {
        for p in DeadPattern::ALL {
            let Some(vs) = dead_turn(c, m, p) else {
                continue;
            };
            let rev = [vs[2], vs[1], vs[0]];
            for vs in [vs, rev] {
                out.push((m, p, Path::through(c, &vs).expect("turns follow edges")));
            }
        }
    }
    out
}

/// Category 2 through its complement: encodings of every path with at most
/// `max_edges` edges.
pub fn gen_cat2(c: &Complex, enc: &Encoder, max_edges: usize) -> Result<BTreeSet<Vec<u32>>> {
    Ok(enc
        .enumerate_words(c, max_edges)?
        .into_iter()
        .map(|w| w.letters().to_vec())
        .collect())
}

/// Category 3: every edge there and back.
pub fn gen_cat3(c: &Complex, enc: &Encoder) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for v in c.vertex_ids() {
        for &h in c.out_edges(v) {
            let mut p = Path::single(v);
            p.push(c, h);
            p.push(c, h.reverse());
            out.insert(enc.encode(&p));
        }
    }
    out
}

/// Category 4: the dead turns.
pub fn gen_cat4(c: &Complex, enc: &Encoder) -> BTreeSet<Word> {
    dead_paths(c)
        .iter()
        .map(|(_, _, p)| enc.encode(p))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConflictKind {
    /// One path bounds two tiles.
    SharedPath,
    /// Two paths with one encoding have different sets of completions.
    Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub kind: ConflictKind,
    pub word: Word,
    pub first: (MacroId, Word),
    pub second: (MacroId, Word),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeterminismReport {
    pub radius: u32,
    pub paths: usize,
    pub groups: usize,
    pub conflicts: Vec<Conflict>,
}

impl DeterminismReport {
    /// Every encoding determines the set of its completions.
    pub fn passed(&self) -> bool {
        self.coloring_conflicts() == 0
    }

    /// Every encoding determines a single completion.
    pub fn strictly_passed(&self) -> bool {
        self.conflicts.is_empty()
    }

    pub fn coloring_conflicts(&self) -> usize {
        self.conflicts
            .iter()
            .filter(|k| k.kind == ConflictKind::Coloring)
            .count()
    }
}

struct PathClass {
    word: Word,
    tiles: Vec<(MacroId, Word)>,
    completions: BTreeSet<Word>,
}

/// Groups tile paths by encoding and checks that the encoding determines
/// the completions. Paths whose encoding `skip` accepts are left out.
pub fn determinism_check(
    c: &Complex,
    enc: &Encoder,
    skip: impl Fn(&Word) -> bool,
) -> DeterminismReport {
    let mut classes: BTreeMap<Vec<VertexId>, PathClass> = BTreeMap::new();
    for tp in tile_paths(c) {
        let w = enc.encode(&tp.path);
        if skip(&w) {
            continue;
        }
        let comp = enc.encode(&tp.complement);
        let k = classes
            .entry(tp.path.vertices.clone())
            .or_insert_with(|| PathClass {
                word: w,
                tiles: Vec::new(),
                completions: BTreeSet::new(),
            });
        k.tiles.push((tp.tile, comp.clone()));
        k.completions.insert(comp);
    }
    let mut report = DeterminismReport {
        paths: classes.len(),
        ..DeterminismReport::default()
    };
    let mut groups: BTreeMap<&Word, &PathClass> = BTreeMap::new();
    let mut shared = BTreeSet::new();
    for k in classes.values() {
        if let Some(pair) = k.tiles.windows(2).find(|p| p[0].1 != p[1].1) {
            if shared.insert(&k.word) {
                report.conflicts.push(Conflict {
                    kind: ConflictKind::SharedPath,
                    word: k.word.clone(),
                    first: pair[0].clone(),
                    second: pair[1].clone(),
                });
            }
        }
        let g = *groups.entry(&k.word).or_insert(k);
        if g.completions != k.completions {
            let pick = |a: &PathClass, b: &PathClass| {
                a.tiles
                    .iter()
                    .find(|t| !b.completions.contains(&t.1))
                    .unwrap_or(&a.tiles[0])
                    .clone()
            };
            report.conflicts.push(Conflict {
                kind: ConflictKind::Coloring,
                word: k.word.clone(),
                first: pick(g, k),
                second: pick(k, g),
            });
        }
    }
    report.groups = groups.len();
    report
}

/// The least radius in `from..=to` at which the coloring of `c` passes.
pub fn determinism_radius(c: &Complex, from: u32, to: u32) -> (u32, DeterminismReport) {
    let mut last = None;
    for r in from..=to {
        let (_, enc) = Encoder::own(c, r);
        let cat4 = gen_cat4(c, &enc);
        let mut rep = determinism_check(c, &enc, |w| cat4.contains(w));
        rep.radius = r;
        if rep.passed() {
            return (r, rep);
        }
        last = Some((r, rep));
    }
    last.expect("nonempty radius range")
}

/// Category 5: one flip per tile path class, unless either side is zero.
pub fn gen_cat5(
    c: &Complex,
    enc: &Encoder,
    zeroed: impl Fn(&Word) -> bool,
) -> Result<BTreeSet<(Word, Word)>> {
    let report = determinism_check(c, enc, &zeroed);
    if let Some(k) = report
        .conflicts
        .iter()
        .find(|k| k.kind == ConflictKind::Coloring)
    {
        return Err(Error::Determinism(format!(
            "tiles {} and {} complete one path in two ways",
            k.first.0 .0, k.second.0 .0
        )));
    }
    let mut out = BTreeSet::new();
    for tp in tile_paths(c) {
        let a = enc.encode(&tp.path);
        let b = enc.encode(&tp.complement);
        if zeroed(&a) || zeroed(&b) {
            continue;
        }
        out.insert(if a <= b { (a, b) } else { (b, a) });
    }
    Ok(out)
}

impl Presentation {
    /// The presentation read off `c` with the letters of `c` itself.
    pub fn generate(c: &Complex, config: Config) -> Result<Presentation> {
        let (alphabet, enc) = Encoder::own(c, config.radius);
        let realizable = gen_cat2(c, &enc, config.cat2_edges)?;
        let cat3 = gen_cat3(c, &enc);
        let cat4: BTreeSet<Word> = gen_cat4(c, &enc)
            .into_iter()
            .filter(|w| !cat3.contains(w))
            .collect();
        let zeroed = |w: &Word| cat3.contains(w) || cat4.contains(w);
        let cat5 = gen_cat5(c, &enc, zeroed)?;
        let rels = cat3
            .iter()
            .map(|w| (Category::NullForm, Relation::Zero(w.clone())))
            .chain(
                cat4.iter()
                    .map(|w| (Category::DeadPattern, Relation::Zero(w.clone()))),
            )
            .chain(
                cat5.into_iter()
                    .map(|(a, b)| (Category::TileFlip, Relation::Eq(a, b))),
            );
        Ok(Presentation::new(
            alphabet,
            c.level(),
            config,
            realizable,
            rels,
        ))
    }
}
