use std::collections::{BTreeMap, BTreeSet};

use super::{Report, Status};
use crate::codec::{follows, Encoder, Path, Word};
use crate::complex::{
    CarrierKind, Complex, Corner, MacroId, Side, VertexId, VertexKind, BASE_REGION,
};
use crate::dol::{edge_levels, LevelSeq};
use crate::presentation::{determinism_check, determinism_radius, Presentation};
use crate::rewrite::{reduces_to_zero, replay, Strategy, Verdict};

fn structure_report(c: &Complex, check: &str, f: impl FnOnce(&mut Report)) -> Report {
    Report::timed(check, f).scope("level", c.level())
}

/// Tile counts, the internal-edge law, pasting corners, edge levels and
/// the distance laws.
pub fn verify_structure(c: &Complex) -> Vec<Report> {
    vec![
        structure_report(c, "tile-count", |r| {
            let want = 6usize.pow(c.level() - 1);
            let got = c.base_tile_count();
            r.note("tiles", got);
            if got != want {
                r.fail(format!("{got} base tiles, expected {want}"));
            }
        }),
        structure_report(c, "internal-edges", |r| check_internal_edges(c, r)),
        structure_report(c, "pasting-corners", |r| check_pasting_corners(c, r)),
        structure_report(c, "edge-levels", |r| check_edge_levels(c, r)),
        structure_report(c, "corner-distance", |r| check_corner_distance(c, r)),
        structure_report(c, "pasting-distance", |r| check_pasting_distance(c, r)),
    ]
}

fn check_internal_edges(c: &Complex, r: &mut Report) {
    let mut seen = 0;
    for m in c.macro_ids() {
        let t = c.macrotile(m);
        match (t.level, t.internal) {
            (1, None) => {}
            (1, Some(_)) => r.fail(format!("tile {m} has internal edges")),
            (_, None) => r.fail(format!(
                "macrotile {m} of level {} has no internal edges",
                t.level
            )),
            (_, Some(edges)) => {
                seen += 1;
                let distinct: BTreeSet<_> = edges.iter().collect();
                let internal = edges
                    .iter()
                    .all(|&e| matches!(c.carrier(e).kind, CarrierKind::Internal(_)));
                if distinct.len() != 8 || !internal || t.children.len() != 6 {
                    r.fail(format!(
                        "macrotile {m}: {} distinct internal edges",
                        distinct.len()
                    ));
                }
            }
        }
    }
    r.note("macrotiles", seen);
}

fn check_pasting_corners(c: &Complex, r: &mut Report) {
    r.note("pastings", c.pastings().len());
    for (i, p) in c.pastings().iter().enumerate() {
        let root = c.macrotile(p.root);
        let vs = &c.carrier(p.carrier).vertices;
        let at: Option<Vec<usize>> = p
            .host
            .iter()
            .map(|h| vs.iter().position(|v| v == h))
            .collect();
        let consecutive = at.is_some_and(|at| {
            let d = at[1].wrapping_sub(at[0]);
            d > 0 && d < vs.len() && at.windows(2).all(|w| w[1].wrapping_sub(w[0]) == d)
        });
        let corners = root.corner(Corner::UR) == p.host[0]
            && root.corner(Corner::UL) == p.host[2]
            && root.corner(Corner::DL) == p.host[4]
            && p.kernel == p.host[2];
        let typed = [(0, Corner::UR), (2, Corner::UL), (4, Corner::DL)]
            .iter()
            .all(|&(k, corner)| {
                c.vertex(p.host[k])
                    .pasted
                    .contains(&VertexKind::Corner(corner))
            });
        if !(consecutive && corners && typed) {
            r.fail(format!(
                "pasting {i} at kernel {}: evenly spaced {consecutive}, corners {corners}, types {typed}",
                p.kernel
            ));
        }
    }
}

fn check_edge_levels(c: &Complex, r: &mut Report) {
    let mut carriers = 0;
    for (i, car) in c.carriers().iter().enumerate() {
        if !matches!(car.kind, CarrierKind::Internal(_)) {
            continue;
        }
        carriers += 1;
        let got = c.carrier_levels(crate::complex::CarrierId(i as u32));
        let n = car.vertices.len() - 1;
        let want = n
            .is_power_of_two()
            .then(|| match n.trailing_zeros() {
                0 => Some(LevelSeq(Vec::new())),
                k => edge_levels(k).ok(),
            })
            .flatten();
        if want.as_ref() != Some(&got) {
            r.fail(format!("carrier {i}: levels {got}"));
        }
    }
    r.note("carriers", carriers);
}

fn check_corner_distance(c: &Complex, r: &mut Report) {
    let mut by_level: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
    for m in c.macro_ids() {
        let t = c.macrotile(m);
        if t.region != BASE_REGION {
            continue;
        }
        let d = |a, b| c.distance(t.corner(a), t.corner(b)).unwrap_or(u32::MAX);
        let side = d(Corner::UL, Corner::UR)
            .max(d(Corner::UR, Corner::DR))
            .max(d(Corner::DR, Corner::DL))
            .max(d(Corner::DL, Corner::UL));
        let opposite = d(Corner::UL, Corner::DR).max(d(Corner::UR, Corner::DL));
        by_level.insert(t.level, (side, opposite));
        if side != 1 << (t.level - 1) || opposite != 1 << t.level {
            r.fail(format!(
                "macrotile {m} of level {}: side {side}, opposite {opposite}",
                t.level
            ));
        }
    }
    for (level, (side, opposite)) in by_level {
        r.note(
            &format!("level {level}"),
            format!("side {side} opposite {opposite}"),
        );
    }
}

/// Macrotiles of the base plane that contain `v`, smallest first.
fn containing(c: &Complex, v: VertexId) -> Vec<MacroId> {
    let mut out = BTreeSet::new();
    for &t in c.tiles() {
        if c.macrotile(t).region == BASE_REGION && c.macrotile(t).corners.contains(&v) {
            let mut m = Some(t);
            while let Some(x) = m {
                out.insert(x);
                m = c.macrotile(x).parent;
            }
        }
    }
    let mut out: Vec<MacroId> = out.into_iter().collect();
    out.sort_by_key(|&m| c.macrotile(m).level);
    out
}

fn check_pasting_distance(c: &Complex, r: &mut Report) {
    let mut pairs = 0usize;
    for p in c.pastings() {
        let n = c.macrotile(p.root).level;
        if n < 2 {
            continue;
        }
        let bound = 1u32 << (n - 1);
        for &y in &p.host {
            for t in containing(c, y) {
                let boundary = c.boundary_vertices(t);
                if p.host.iter().any(|h| boundary.contains(h)) {
                    continue;
                }
                let dist = c.bfs(y, bound);
                for &x in &boundary {
                    pairs += 1;
                    if dist[x.idx()] < bound {
                        r.fail(format!(
                            "exit {y} into a level-{n} pasting is {} from {x} on macrotile {t}",
                            dist[x.idx()]
                        ));
                    }
                }
            }
        }
    }
    r.note("pairs", pairs);
}

/// Searches radii `from..=to` for the least at which every encoding of a
/// tile path determines its completions, dead turns aside, then checks
/// at that radius that every encoding has a single completion.
pub fn verify_determinism(c: &Complex, from: u32, to: u32) -> Report {
    let mut radius = from;
    let mut r = Report::timed("determinism", |r| {
        let (found, set_valued) = determinism_radius(c, from, to);
        radius = found;
        r.note(
            "set-valued",
            if set_valued.passed() { "pass" } else { "fail" },
        );
        let (_, enc) = Encoder::own(c, found);
        let rep = determinism_check(c, &enc, |_| false);
        r.note("paths", rep.paths);
        r.note("groups", rep.groups);
        r.note("coloring-conflicts", rep.coloring_conflicts());
        r.note(
            "shared-path-conflicts",
            rep.conflicts.len() - rep.coloring_conflicts(),
        );
        for k in &rep.conflicts {
            r.fail(format!(
                "{:?}: tiles {} and {} complete `{}` as `{}` and `{}`",
                k.kind,
                k.first.0,
                k.second.0,
                k.word.to_id_text(),
                k.first.1.to_id_text(),
                k.second.1.to_id_text()
            ));
        }
    });
    r.scope.insert("level".into(), c.level().to_string());
    r.scope.insert("radius".into(), radius.to_string());
    r
}

/// Path words of at most `max_edges` edges, split by whether some path
/// with that encoding is closed. A word can be in both sets.
#[derive(Clone, Debug, Default)]
pub struct ClosedWords {
    pub closed: BTreeSet<Word>,
    pub open: BTreeSet<Word>,
}

pub fn closed_path_words(c: &Complex, enc: &Encoder, max_edges: usize) -> ClosedWords {
    let mut out = ClosedWords::default();
    let mut stack: Vec<Path> = c.vertex_ids().map(Path::single).collect();
    while let Some(p) = stack.pop() {
        let w = enc.encode(&p);
        if !p.edges.is_empty() && p.start() == p.end() {
            out.closed.insert(w);
        } else {
            out.open.insert(w);
        }
        if p.edges.len() < max_edges {
            for &h in c.out_edges(p.end()) {
                let mut q = p.clone();
                q.push(c, h);
                stack.push(q);
            }
        }
    }
    out
}

/// The loop word of a closed path: its encoding without the final node.
fn cyclic(w: &Word) -> Word {
    let l = w.letters();
    Word::new(l[..l.len() - 1].to_vec())
}

/// `W^9` is zero for every closed path word `W` (read as a loop), and
/// `W W` has a zero seam for every open one.
pub fn nil_check(
    c: &Complex,
    p: &Presentation,
    enc: &Encoder,
    max_edges: usize,
    budget: usize,
    strategy: Strategy,
) -> Report {
    let mut r = Report::timed("nil", |r| {
        let words = closed_path_words(c, enc, max_edges);
        r.note("closed", words.closed.len());
        r.note("open", words.open.len());
        let mut powers: BTreeMap<usize, usize> = BTreeMap::new();
        let (mut traces, mut replayed) = (0, 0);
        for w in &words.closed {
            let x = cyclic(w);
            let least = (1..=9).find(|&k| {
                matches!(
                    reduces_to_zero(p, &x.power(k), budget, strategy),
                    Verdict::Zero { .. }
                )
            });
            *powers.entry(least.unwrap_or(0)).or_default() += 1;
            let ninth = x.power(9);
            match reduces_to_zero(p, &ninth, budget, strategy) {
                Verdict::Zero { trace } => {
                    traces += 1;
                    if replay(p, &ninth, &trace).is_ok_and(|z| z.is_zero()) {
                        replayed += 1;
                    } else {
                        r.fail(format!("trace of ({})^9 does not replay", x.to_id_text()));
                    }
                }
                Verdict::Irreducible { .. } => {
                    r.fail(format!("({})^9 is irreducible", x.to_id_text()))
                }
                Verdict::Unknown { frontier, .. } => r.unknown(format!(
                    "({})^9 undecided, frontier {frontier}",
                    x.to_id_text()
                )),
            }
        }
        let a = p.alphabet();
        let mut seams = 0;
        for w in &words.open {
            let l = w.letters();
            let seam = !follows(a.family(l[l.len() - 1]), a.family(l[0]));
            if seam {
                seams += 1;
            } else {
                r.fail(format!("({})^2 has no zero seam", w.to_id_text()));
            }
        }
        r.note("open-seams", seams);
        r.note("zero-traces", traces);
        r.note("replayed", replayed);
        for (k, n) in powers {
            r.note(&format!("least-power {k}"), n);
        }
    });
    r.scope.insert("level".into(), c.level().to_string());
    r.scope.insert("max-edges".into(), max_edges.to_string());
    r.scope.insert("budget".into(), budget.to_string());
    r
}

/// Paths along two adjacent sides of base-plane macrotiles of `level`,
/// from every corner in both directions.
pub fn half_perimeters(c: &Complex, level: u32) -> Vec<(MacroId, Path)> {
    let sides = [Side::U, Side::R, Side::D, Side::L];
    let mut out = Vec::new();
    for m in c.macro_ids() {
        let t = c.macrotile(m);
        if t.level != level || t.region != BASE_REGION {
            continue;
        }
        for i in 0..4 {
            let mut vs = c.side_path(m, sides[i]);
            vs.extend_from_slice(&c.side_path(m, sides[(i + 1) % 4])[1..]);
            let fwd = Path::through(c, &vs).expect("sides are paths");
            vs.reverse();
            let back = Path::through(c, &vs).expect("sides are paths");
            out.push((m, fwd));
            out.push((m, back));
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusRow {
    pub edges: usize,
    pub words: usize,
    pub irreducible: usize,
    pub unknown: usize,
    pub zero: usize,
}

/// Reduction outcomes of the half-perimeter words, per macrotile level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub rows: BTreeMap<u32, CensusRow>,
}

impl Census {
    /// Levels whose words survive reduction, with their edge counts.
    pub fn surviving_lengths(&self) -> Vec<(u32, usize)> {
        self.rows
            .iter()
            .filter(|(_, r)| r.irreducible + r.unknown > 0)
            .map(|(&l, r)| (l, r.edges))
            .collect()
    }
}

pub fn growth_census(
    c: &Complex,
    p: &Presentation,
    enc: &Encoder,
    levels: std::ops::RangeInclusive<u32>,
    budget: usize,
) -> (Census, Report) {
    let mut census = Census::default();
    let (from, to) = (*levels.start(), *levels.end());
    let mut r = Report::timed("growth-census", |r| {
        for level in levels {
            let words: BTreeSet<Word> = half_perimeters(c, level)
                .iter()
                .map(|(_, path)| enc.encode(path))
                .collect();
            let mut row = CensusRow {
                edges: words.first().map_or(0, |w| w.edge_count()),
                words: words.len(),
                ..CensusRow::default()
            };
            for w in &words {
                match reduces_to_zero(p, w, budget, Strategy::Pipeline) {
                    Verdict::Zero { .. } => row.zero += 1,
                    Verdict::Irreducible { .. } => row.irreducible += 1,
                    Verdict::Unknown { .. } => row.unknown += 1,
                }
            }
            r.note(
                &format!("level {level}"),
                format!(
                    "{} edges: {} words, {} irreducible, {} unknown, {} zero",
                    row.edges, row.words, row.irreducible, row.unknown, row.zero
                ),
            );
            census.rows.insert(level, row);
        }
        let alive = census.surviving_lengths();
        let increasing = alive.windows(2).all(|w| w[0].1 < w[1].1);
        if alive.len() as u32 != to + 1 - from || !increasing {
            r.fail(format!("surviving lengths {alive:?}"));
        } else if census
            .rows
            .values()
            .any(|row| row.irreducible == 0 && row.unknown > 0)
        {
            r.status = r.status.max(Status::Unknown);
        }
    });
    r.scope.insert("level".into(), c.level().to_string());
    r.scope.insert("levels".into(), format!("{from}..{to}"));
    r.scope.insert("budget".into(), budget.to_string());
    (census, r)
}
