//! Leveled square complexes built by iterated six-way subdivision and
//! pasting of level-2 macrotiles along length-4 host paths.
//!
//! The complex is stored by carriers: every carrier is a maximal line
//! segment created at once (a side of the initial square, one of the eight
//! internal edges of a subdivided macrotile, or a free side of a pasting).
//! Carriers keep their ordered vertex lists, and edges are the consecutive
//! pairs of those lists, so subdivision only has to interleave midpoints.

mod build;
mod dump;
mod geometry;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

pub use build::{default_level_max, Site, LEVEL_MAX_ENV};
pub use geometry::{
    child_corner_roles, template_edges, SideRef, CHILD_SIDES, FACE_CORNERS, INTERNAL_EDGES,
    POINT_NAMES,
};

use crate::dol::LevelSeq;

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn idx(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(VertexId);
id_type!(EdgeId);
id_type!(CarrierId);
id_type!(MacroId);
id_type!(
    /// Region 0 is the base plane; region `i + 1` is the area of pasting `i`.
    RegionId
);

pub const BASE_REGION: RegionId = RegionId(0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    U,
    R,
    D,
    L,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::U, Side::R, Side::D, Side::L];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Side::U => 'U',
            Side::R => 'R',
            Side::D => 'D',
            Side::L => 'L',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'U' => Side::U,
            'R' => Side::R,
            'D' => Side::D,
            'L' => Side::L,
            _ => return None,
        })
    }
}

/// Corners in clockwise order starting top-left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    UL,
    UR,
    DR,
    DL,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::UL, Corner::UR, Corner::DR, Corner::DL];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inner {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Corner(Corner),
    Boundary(Side),
    /// Side node; the first label is the side it is the midpoint of in the
    /// macrotile on the A-side of its carrier.
    Side(Side, Side),
    Inner(Inner),
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexKind::Corner(c) => f.write_str(match c {
                Corner::UL => "CUL",
                Corner::UR => "CUR",
                Corner::DR => "CDR",
                Corner::DL => "CDL",
            }),
            VertexKind::Boundary(s) => write!(f, "{}", s.letter()),
            VertexKind::Side(a, b) => write!(f, "{}{}", a.letter(), b.letter()),
            VertexKind::Inner(i) => f.write_str(match i {
                Inner::A => "A",
                Inner::B => "B",
                Inner::C => "C",
            }),
        }
    }
}

impl FromStr for VertexKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let chars: Vec<char> = s.chars().collect();
        let kind = match s {
            "CUL" => VertexKind::Corner(Corner::UL),
            "CUR" => VertexKind::Corner(Corner::UR),
            "CDR" => VertexKind::Corner(Corner::DR),
            "CDL" => VertexKind::Corner(Corner::DL),
            "A" => VertexKind::Inner(Inner::A),
            "B" => VertexKind::Inner(Inner::B),
            "C" => VertexKind::Inner(Inner::C),
            _ if chars.len() == 1 => {
                VertexKind::Boundary(Side::from_char(chars[0]).ok_or(format!("bad kind {s}"))?)
            }
            _ if chars.len() == 2 => {
                let a = Side::from_char(chars[0]).ok_or(format!("bad kind {s}"))?;
                let b = Side::from_char(chars[1]).ok_or(format!("bad kind {s}"))?;
                VertexKind::Side(a, b)
            }
            _ => return Err(format!("bad kind {s}")),
        };
        Ok(kind)
    }
}

/// How a vertex came to exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Corner of a region root (the initial square, or the fresh lower-right
    /// corner of a pasting).
    Root,
    /// Midpoint inserted into this carrier.
    Midpoint(CarrierId),
    /// Inner vertex created by subdividing this macrotile.
    Inner(MacroId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Kind in the region the vertex was created in.
    pub kind: VertexKind,
    /// Kinds the vertex has as a boundary point of pasted macrotiles.
    pub pasted: BTreeSet<VertexKind>,
    pub birth_step: u32,
    pub region: RegionId,
    pub origin: Origin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CarrierKind {
    /// Internal edge `1..=8` of the owning macrotile.
    Internal(u8),
    /// Side of a region root that no other macrotile of the region shares.
    Border(Side),
}

impl fmt::Display for CarrierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarrierKind::Internal(i) => write!(f, "i{i}"),
            CarrierKind::Border(s) => write!(f, "b{}", s.letter()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    pub kind: CarrierKind,
    pub region: RegionId,
    pub owner: MacroId,
    /// Vertices in positive reading order, endpoints included.
    pub vertices: Vec<VertexId>,
}

impl Carrier {
    pub fn interior(&self) -> &[VertexId] {
        let n = self.vertices.len();
        &self.vertices[1..n - 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Endpoints in positive carrier order.
    pub ends: [VertexId; 2],
    pub carrier: CarrierId,
    pub birth_step: u32,
}

/// A directed edge. `forward` follows the positive direction of the carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub forward: bool,
}

impl HalfEdge {
    pub fn reverse(self) -> Self {
        HalfEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Macrotile {
    pub level: u32,
    pub region: RegionId,
    /// `UL, UR, DR, DL`.
    pub corners: [VertexId; 4],
    /// `U, R, D, L` midpoints, present from level 2 on.
    pub mids: Option<[VertexId; 4]>,
    /// `A, B, C`.
    pub inner: Option<[VertexId; 3]>,
    /// Internal edges `1..=8`.
    pub internal: Option<[CarrierId; 8]>,
    /// Carriers holding the `U, R, D, L` sides.
    pub sides: [CarrierId; 4],
    pub children: Vec<MacroId>,
    pub parent: Option<MacroId>,
}

impl Macrotile {
    pub fn corner(&self, c: Corner) -> VertexId {
        self.corners[c.index()]
    }

    pub fn mid(&self, s: Side) -> Option<VertexId> {
        self.mids.map(|m| m[s.index()])
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pasting {
    pub kernel: VertexId,
    /// Host path in positive carrier order: pasted `UR, U, UL, L, DL`.
    pub host: [VertexId; 5],
    pub carrier: CarrierId,
    pub root: MacroId,
    pub region: RegionId,
    pub step: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepRecord {
    pub step: u32,
    pub tiles_subdivided: usize,
    pub vertices_created: usize,
    pub pastings: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Complex {
    pub(crate) step: u32,
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) carriers: Vec<Carrier>,
    pub(crate) macrotiles: Vec<Macrotile>,
    /// Root macrotile per region.
    pub(crate) roots: Vec<MacroId>,
    pub(crate) pastings: Vec<Pasting>,
    pub(crate) log: Vec<StepRecord>,
    // derived by `reindex`
    pub(crate) edges: Vec<Edge>,
    pub(crate) edge_of: HashMap<(VertexId, VertexId), EdgeId>,
    pub(crate) adj: Vec<Vec<HalfEdge>>,
    pub(crate) carrier_pos: Vec<u32>,
    pub(crate) leaves: Vec<MacroId>,
    pub(crate) kernels: std::collections::HashSet<VertexId>,
}

impl Complex {
    /// The level: one plus the number of subdivision rounds applied.
    pub fn level(&self) -> u32 {
        self.step + 1
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.idx()]
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn carriers(&self) -> &[Carrier] {
        &self.carriers
    }

    pub fn carrier(&self, c: CarrierId) -> &Carrier {
        &self.carriers[c.idx()]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.idx()]
    }

    pub fn macrotiles(&self) -> &[Macrotile] {
        &self.macrotiles
    }

    pub fn macrotile(&self, m: MacroId) -> &Macrotile {
        &self.macrotiles[m.idx()]
    }

    pub fn macro_ids(&self) -> impl Iterator<Item = MacroId> + '_ {
        (0..self.macrotiles.len() as u32).map(MacroId)
    }

    pub fn pastings(&self) -> &[Pasting] {
        &self.pastings
    }

    pub fn region_root(&self, r: RegionId) -> MacroId {
        self.roots[r.idx()]
    }

    pub fn region_count(&self) -> usize {
        self.roots.len()
    }

    pub fn step_log(&self) -> &[StepRecord] {
        &self.log
    }

    /// Current minimal tiles (level-1 macrotiles) of every region.
    pub fn tiles(&self) -> &[MacroId] {
        &self.leaves
    }

    pub fn base_tile_count(&self) -> usize {
        self.leaves
            .iter()
            .filter(|m| self.macrotile(**m).region == BASE_REGION)
            .count()
    }

    pub fn vertex_level(&self, v: VertexId) -> u8 {
        let age = self.step - self.vertex(v).birth_step;
        (age + 1).min(3) as u8
    }

    pub fn half_edge_from(&self, h: HalfEdge) -> VertexId {
        let e = self.edge(h.edge);
        if h.forward {
            e.ends[0]
        } else {
            e.ends[1]
        }
    }

    pub fn half_edge_to(&self, h: HalfEdge) -> VertexId {
        let e = self.edge(h.edge);
        if h.forward {
            e.ends[1]
        } else {
            e.ends[0]
        }
    }

    /// Outgoing half-edges of `v`.
    pub fn out_edges(&self, v: VertexId) -> &[HalfEdge] {
        &self.adj[v.idx()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.idx()].len()
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.edge_of.get(&undirected(a, b)).copied()
    }

    /// The half-edge from `a` to `b`, if they are adjacent.
    pub fn half_edge(&self, a: VertexId, b: VertexId) -> Option<HalfEdge> {
        let e = self.edge_between(a, b)?;
        Some(HalfEdge {
            edge: e,
            forward: self.edge(e).ends[0] == a,
        })
    }

    /// Position of `v` in the vertex list of carrier `c`.
    pub fn position_in(&self, c: CarrierId, v: VertexId) -> Option<usize> {
        let car = self.carrier(c);
        if self.vertex(v).origin == Origin::Midpoint(c) {
            return Some(self.carrier_pos[v.idx()] as usize);
        }
        if car.vertices[0] == v {
            Some(0)
        } else if *car.vertices.last().unwrap() == v {
            Some(car.vertices.len() - 1)
        } else {
            None
        }
    }

    /// The carrier `v` was inserted into, for side and boundary nodes.
    pub fn home_carrier(&self, v: VertexId) -> Option<CarrierId> {
        match self.vertex(v).origin {
            Origin::Midpoint(c) => Some(c),
            _ => None,
        }
    }

    /// Is `v` an interior node of an internal carrier?
    pub fn is_side_node(&self, v: VertexId) -> bool {
        matches!(self.vertex(v).kind, VertexKind::Side(..))
    }

    /// Levels of the interior nodes of `c`, in positive order.
    pub fn carrier_levels(&self, c: CarrierId) -> LevelSeq {
        LevelSeq(
            self.carrier(c)
                .interior()
                .iter()
                .map(|&v| self.vertex_level(v))
                .collect(),
        )
    }

    /// Vertices along side `s` of macrotile `m`, from the first corner of the
    /// side to the second in clockwise order (`U`: UL→UR, `R`: UR→DR, ...).
    pub fn side_path(&self, m: MacroId, s: Side) -> Vec<VertexId> {
        let mt = self.macrotile(m);
        let (a, b) = side_corners(mt, s);
        let c = mt.sides[s.index()];
        let pa = self.position_in(c, a).expect("corner on side carrier");
        let pb = self.position_in(c, b).expect("corner on side carrier");
        let vs = &self.carrier(c).vertices;
        if pa <= pb {
            vs[pa..=pb].to_vec()
        } else {
            let mut out = vs[pb..=pa].to_vec();
            out.reverse();
            out
        }
    }

    /// All vertices on the boundary of macrotile `m`.
    pub fn boundary_vertices(&self, m: MacroId) -> BTreeSet<VertexId> {
        Side::ALL
            .iter()
            .flat_map(|&s| self.side_path(m, s))
            .collect()
    }

    /// Leaf tiles contained in macrotile `m`.
    pub fn tiles_under(&self, m: MacroId) -> Vec<MacroId> {
        let mut out = Vec::new();
        let mut stack = vec![m];
        while let Some(x) = stack.pop() {
            let mt = self.macrotile(x);
            if mt.is_leaf() {
                out.push(x);
            } else {
                stack.extend(mt.children.iter().copied());
            }
        }
        out
    }

    /// All vertices of macrotile `m` (boundary and interior).
    pub fn vertices_under(&self, m: MacroId) -> BTreeSet<VertexId> {
        self.tiles_under(m)
            .into_iter()
            .flat_map(|t| self.macrotile(t).corners)
            .collect()
    }

    /// Breadth-first distances from `src`, exploring at most `max_depth`
    /// layers. Unreached vertices get `u32::MAX`.
    pub fn bfs(&self, src: VertexId, max_depth: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertices.len()];
        dist[src.idx()] = 0;
        let mut q = VecDeque::from([src]);
        while let Some(v) = q.pop_front() {
            let d = dist[v.idx()];
            if d >= max_depth {
                continue;
            }
            for h in self.out_edges(v) {
                let u = self.half_edge_to(*h);
                if dist[u.idx()] == u32::MAX {
                    dist[u.idx()] = d + 1;
                    q.push_back(u);
                }
            }
        }
        dist
    }

    /// Graph distance over all edges, pastings included.
    pub fn distance(&self, a: VertexId, b: VertexId) -> Option<u32> {
        if a == b {
            return Some(0);
        }
        let mut dist: HashMap<VertexId, u32> = HashMap::from([(a, 0)]);
        let mut q = VecDeque::from([a]);
        while let Some(v) = q.pop_front() {
            let d = dist[&v];
            for h in self.out_edges(v) {
                let u = self.half_edge_to(*h);
                if u == b {
                    return Some(d + 1);
                }
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(u) {
                    e.insert(d + 1);
                    q.push_back(u);
                }
            }
        }
        None
    }

    /// The macrotile (of any level) whose subdivision created inner vertex `v`.
    pub fn inner_owner(&self, v: VertexId) -> Option<MacroId> {
        match self.vertex(v).origin {
            Origin::Inner(m) => Some(m),
            _ => None,
        }
    }

    /// Pastings whose kernel is `v`.
    pub fn pastings_at(&self, v: VertexId) -> impl Iterator<Item = &Pasting> {
        self.pastings.iter().filter(move |p| p.kernel == v)
    }
}

pub(crate) fn undirected(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Corners bounding side `s`, in clockwise order.
pub fn side_corners(m: &Macrotile, s: Side) -> (VertexId, VertexId) {
    let [ul, ur, dr, dl] = m.corners;
    match s {
        Side::U => (ul, ur),
        Side::R => (ur, dr),
        Side::D => (dr, dl),
        Side::L => (dl, ul),
    }
}

#[cfg(test)]
impl Complex {
    /// The same complex with vertex ids renamed by `perm` and carriers
    /// listed in reverse order.
    pub(crate) fn relabeled(&self, perm: &[u32]) -> Complex {
        let p = |v: VertexId| VertexId(perm[v.idx()]);
        let nc = self.carriers.len() as u32;
        let pc = |c: CarrierId| CarrierId(nc - 1 - c.0);
        let mut c = self.clone();
        for (old, v) in self.vertices.iter().enumerate() {
            let mut v = v.clone();
            if let Origin::Midpoint(car) = v.origin {
                v.origin = Origin::Midpoint(pc(car));
            }
            c.vertices[perm[old] as usize] = v;
        }
        c.carriers = self
            .carriers
            .iter()
            .rev()
            .map(|car| Carrier {
                vertices: car.vertices.iter().map(|&v| p(v)).collect(),
                ..car.clone()
            })
            .collect();
        for m in &mut c.macrotiles {
            m.corners = m.corners.map(p);
            m.mids = m.mids.map(|x| x.map(p));
            m.inner = m.inner.map(|x| x.map(p));
            m.internal = m.internal.map(|x| x.map(pc));
            m.sides = m.sides.map(pc);
        }
        for q in &mut c.pastings {
            q.kernel = p(q.kernel);
            q.host = q.host.map(p);
            q.carrier = pc(q.carrier);
        }
        c.reindex();
        c
    }
}

#[cfg(test)]
mod tests;
