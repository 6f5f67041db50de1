use std::collections::{BTreeSet, HashMap};

use super::geometry::{SideRef, CHILD_SIDES, FACE_CORNERS, INTERNAL_EDGES};
use super::*;
use crate::error::{Error, Result};

/// Environment variable overriding the level bound of [`Complex::build`].
pub const LEVEL_MAX_ENV: &str = "NILFORGE_LEVEL_MAX";
const DEFAULT_LEVEL_MAX: u32 = 7;

pub fn default_level_max() -> u32 {
    std::env::var(LEVEL_MAX_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_LEVEL_MAX)
}

/// A host path for a new pasting: five consecutive nodes of an internal
/// carrier centred at a node that has just reached level 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Site {
    pub carrier: CarrierId,
    /// Position of the kernel in the carrier's vertex list.
    pub center: usize,
    pub window: [VertexId; 5],
}

impl Site {
    pub fn kernel(&self) -> VertexId {
        self.window[2]
    }
}

impl Complex {
    /// The level-1 complex: one square.
    pub fn unit_square() -> Complex {
        let mut c = Complex::default();
        for corner in Corner::ALL {
            c.vertices.push(Vertex {
                kind: VertexKind::Corner(corner),
                pasted: BTreeSet::new(),
                birth_step: 0,
                region: BASE_REGION,
                origin: Origin::Root,
            });
        }
        let [ul, ur, dr, dl] = [0, 1, 2, 3].map(VertexId);
        let root = MacroId(0);
        for (side, pair) in Side::ALL
            .into_iter()
            .zip([[ul, ur], [ur, dr], [dr, dl], [dl, ul]])
        {
            c.carriers.push(Carrier {
                kind: CarrierKind::Border(side),
                region: BASE_REGION,
                owner: root,
                vertices: pair.to_vec(),
            });
        }
        c.macrotiles.push(Macrotile {
            level: 1,
            region: BASE_REGION,
            corners: [ul, ur, dr, dl],
            mids: None,
            inner: None,
            internal: None,
            sides: [0, 1, 2, 3].map(CarrierId),
            children: Vec::new(),
            parent: None,
        });
        c.roots.push(root);
        c.leaves.push(root);
        c.reindex();
        c
    }

    /// Level-`n` complex under the configured level bound.
    pub fn build(n: u32) -> Result<Complex> {
        Self::build_bounded(n, default_level_max())
    }

    pub fn build_bounded(n: u32, level_max: u32) -> Result<Complex> {
        if n == 0 {
            return Err(Error::Precondition("complex level starts at 1".into()));
        }
        if n > level_max {
            return Err(Error::Capacity(format!(
                "level {n} exceeds the bound {level_max} (set {LEVEL_MAX_ENV} to raise it)"
            )));
        }
        let mut c = Complex::unit_square();
        for _ in 1..n {
            c.grow();
        }
        Ok(c)
    }

    /// One construction round: subdivide everything, then paste at every site.
    pub fn grow(&mut self) {
        self.subdivide();
        let sites = self.pasting_sites();
        for site in &sites {
            self.paste_unindexed(site)
                .expect("sites reported by pasting_sites are valid");
        }
        if let Some(rec) = self.log.last_mut() {
            rec.pastings = sites.len();
        }
        self.reindex();
    }

    /// Replaces every minimal tile by six tiles and every edge by two.
    pub fn subdivide(&mut self) {
        self.step += 1;
        let step = self.step;
        let first_new = self.vertices.len();

        let mut mid_of: HashMap<(VertexId, VertexId), VertexId> =
            HashMap::with_capacity(self.edges.len());
        for ci in 0..self.carriers.len() {
            let region = self.carriers[ci].region;
            let old = std::mem::take(&mut self.carriers[ci].vertices);
            let mut new = Vec::with_capacity(2 * old.len() - 1);
            for w in old.windows(2) {
                new.push(w[0]);
                let m = VertexId(self.vertices.len() as u32);
                self.vertices.push(Vertex {
                    kind: VertexKind::Boundary(Side::U),
                    pasted: BTreeSet::new(),
                    birth_step: step,
                    region,
                    origin: Origin::Midpoint(CarrierId(ci as u32)),
                });
                new.push(m);
                mid_of.insert(undirected(w[0], w[1]), m);
            }
            new.push(*old.last().unwrap());
            self.carriers[ci].vertices = new;
        }
        self.refresh_positions();

        // Kinds of the new midpoints, read off the tiles they bisect.
        let fresh = self.vertices.len() - first_new;
        let mut a_side: Vec<Option<Side>> = vec![None; fresh];
        let mut b_side: Vec<Option<Side>> = vec![None; fresh];
        for &t in &self.leaves {
            let mt = &self.macrotiles[t.idx()];
            for s in Side::ALL {
                let (x, y) = side_corners(mt, s);
                let m = mid_of[&undirected(x, y)];
                let c = mt.sides[s.index()];
                if mt.region == self.carriers[c.idx()].region {
                    let forward = self.position_in(c, x) < self.position_in(c, y);
                    let slot = if forward { &mut a_side } else { &mut b_side };
                    slot[m.idx() - first_new] = Some(s);
                } else {
                    self.vertices[m.idx()]
                        .pasted
                        .insert(VertexKind::Boundary(s));
                }
            }
        }
        for i in 0..fresh {
            let v = first_new + i;
            let Origin::Midpoint(c) = self.vertices[v].origin else {
                unreachable!()
            };
            self.vertices[v].kind = match self.carriers[c.idx()].kind {
                CarrierKind::Internal(_) => match (a_side[i], b_side[i]) {
                    (Some(a), Some(b)) => VertexKind::Side(a, b),
                    other => panic!("internal carrier {c} midpoint with one-sided tiles {other:?}"),
                },
                CarrierKind::Border(_) => VertexKind::Boundary(
                    a_side[i]
                        .or(b_side[i])
                        .expect("border midpoint adjacent to a tile of its region"),
                ),
            };
        }

        for m in &mut self.macrotiles {
            m.level += 1;
        }
        let old_leaves = std::mem::take(&mut self.leaves);
        for &t in &old_leaves {
            let mt = &self.macrotiles[t.idx()];
            let [ul, ur, dr, dl] = mt.corners;
            let mids = [
                mid_of[&undirected(ul, ur)],
                mid_of[&undirected(ur, dr)],
                mid_of[&undirected(dr, dl)],
                mid_of[&undirected(dl, ul)],
            ];
            let children = self.split_macro(t, mids);
            self.leaves.extend_from_slice(&children);
        }
        self.log.push(StepRecord {
            step,
            tiles_subdivided: old_leaves.len(),
            vertices_created: self.vertices.len() - first_new,
            pastings: 0,
        });
        self.reindex();
    }

    /// Subdivides leaf `t` given the midpoints of its sides: creates `A, B, C`,
    /// the eight internal carriers and the six children.
    fn split_macro(&mut self, t: MacroId, mids: [VertexId; 4]) -> [MacroId; 6] {
        let step = self.step;
        let (region, corners, sides) = {
            let mt = &self.macrotiles[t.idx()];
            debug_assert!(mt.is_leaf());
            (mt.region, mt.corners, mt.sides)
        };
        let mut inner = [VertexId(0); 3];
        for (k, slot) in inner.iter_mut().enumerate() {
            *slot = VertexId(self.vertices.len() as u32);
            self.vertices.push(Vertex {
                kind: VertexKind::Inner([Inner::A, Inner::B, Inner::C][k]),
                pasted: BTreeSet::new(),
                birth_step: step,
                region,
                origin: Origin::Inner(t),
            });
        }
        let points: [VertexId; 11] = [
            corners[0], corners[1], corners[2], corners[3], mids[0], mids[1], mids[2], mids[3],
            inner[0], inner[1], inner[2],
        ];
        let mut internal = [CarrierId(0); 8];
        for (k, [a, b]) in INTERNAL_EDGES.iter().enumerate() {
            internal[k] = CarrierId(self.carriers.len() as u32);
            self.carriers.push(Carrier {
                kind: CarrierKind::Internal(k as u8 + 1),
                region,
                owner: t,
                vertices: vec![points[*a], points[*b]],
            });
        }
        let mut children = [MacroId(0); 6];
        for f in 0..6 {
            children[f] = MacroId(self.macrotiles.len() as u32);
            let child_sides = CHILD_SIDES[f].map(|r| match r {
                SideRef::Parent(s) => sides[s.index()],
                SideRef::Internal(k) => internal[k as usize - 1],
            });
            self.macrotiles.push(Macrotile {
                level: 1,
                region,
                corners: FACE_CORNERS[f].map(|p| points[p]),
                mids: None,
                inner: None,
                internal: None,
                sides: child_sides,
                children: Vec::new(),
                parent: Some(t),
            });
        }
        let mt = &mut self.macrotiles[t.idx()];
        mt.mids = Some(mids);
        mt.inner = Some(inner);
        mt.internal = Some(internal);
        mt.children = children.to_vec();
        children
    }

    /// Host paths on internal carriers whose centre has just reached level 3
    /// and carries no pasting yet, in carrier order.
    pub fn pasting_sites(&self) -> Vec<Site> {
        let mut out = Vec::new();
        if self.step < 2 {
            return out;
        }
        for (ci, c) in self.carriers.iter().enumerate() {
            if !matches!(c.kind, CarrierKind::Internal(_)) {
                continue;
            }
            let n = c.vertices.len();
            if n < 7 {
                continue;
            }
            for pos in 3..=n - 4 {
                let v = c.vertices[pos];
                if self.vertices[v.idx()].birth_step + 2 == self.step && !self.kernels.contains(&v)
                {
                    let w = &c.vertices[pos - 2..=pos + 2];
                    out.push(Site {
                        carrier: CarrierId(ci as u32),
                        center: pos,
                        window: [w[0], w[1], w[2], w[3], w[4]],
                    });
                }
            }
        }
        out
    }

    /// Attaches a level-2 macrotile along `site`, identifying its
    /// `UR, U, UL, L, DL` boundary with the host path.
    pub fn paste(&mut self, site: &Site) -> Result<usize> {
        let id = self.paste_unindexed(site)?;
        self.reindex();
        Ok(id)
    }

    fn paste_unindexed(&mut self, site: &Site) -> Result<usize> {
        let kernel = site.kernel();
        if self.kernels.contains(&kernel) {
            return Err(Error::Rejected(format!(
                "vertex {kernel} already carries a pasting"
            )));
        }
        let host = self
            .carriers
            .get(site.carrier.idx())
            .ok_or_else(|| Error::Precondition(format!("no carrier {}", site.carrier)))?;
        if !matches!(host.kind, CarrierKind::Internal(_))
            || site.center < 3
            || site.center + 3 >= host.vertices.len()
            || host.vertices[site.center - 2..=site.center + 2] != site.window
        {
            return Err(Error::Precondition(format!(
                "site at carrier {} position {} is not a host window",
                site.carrier, site.center
            )));
        }
        let step = self.step;
        let region = RegionId(self.roots.len() as u32);
        let root = MacroId(self.macrotiles.len() as u32);
        let [h0, h1, h2, h3, h4] = site.window;

        let new_vertex = |this: &mut Complex, kind, origin| {
            let v = VertexId(this.vertices.len() as u32);
            this.vertices.push(Vertex {
                kind,
                pasted: BTreeSet::new(),
                birth_step: step,
                region,
                origin,
            });
            v
        };
        let right = CarrierId(self.carriers.len() as u32);
        let down = CarrierId(right.0 + 1);
        let dr = new_vertex(self, VertexKind::Corner(Corner::DR), Origin::Root);
        let rm = new_vertex(self, VertexKind::Boundary(Side::R), Origin::Midpoint(right));
        let dm = new_vertex(self, VertexKind::Boundary(Side::D), Origin::Midpoint(down));
        self.carriers.push(Carrier {
            kind: CarrierKind::Border(Side::R),
            region,
            owner: root,
            vertices: vec![h0, rm, dr],
        });
        self.carriers.push(Carrier {
            kind: CarrierKind::Border(Side::D),
            region,
            owner: root,
            vertices: vec![dr, dm, h4],
        });
        self.carrier_pos.resize(self.vertices.len(), 0);
        self.carrier_pos[rm.idx()] = 1;
        self.carrier_pos[dm.idx()] = 1;

        self.macrotiles.push(Macrotile {
            level: 1,
            region,
            corners: [h2, h0, dr, h4],
            mids: None,
            inner: None,
            internal: None,
            sides: [site.carrier, right, down, site.carrier],
            children: Vec::new(),
            parent: None,
        });
        self.roots.push(root);
        let children = self.split_macro(root, [h1, rm, dm, h3]);
        self.macrotiles[root.idx()].level = 2;
        self.leaves.extend_from_slice(&children);

        for (v, kind) in [
            (h0, VertexKind::Corner(Corner::UR)),
            (h1, VertexKind::Boundary(Side::U)),
            (h2, VertexKind::Corner(Corner::UL)),
            (h3, VertexKind::Boundary(Side::L)),
            (h4, VertexKind::Corner(Corner::DL)),
        ] {
            self.vertices[v.idx()].pasted.insert(kind);
        }
        self.kernels.insert(kernel);
        self.pastings.push(Pasting {
            kernel,
            host: site.window,
            carrier: site.carrier,
            root,
            region,
            step,
        });
        Ok(self.pastings.len() - 1)
    }

    fn refresh_positions(&mut self) {
        self.carrier_pos.clear();
        self.carrier_pos.resize(self.vertices.len(), 0);
        for (ci, c) in self.carriers.iter().enumerate() {
            for (i, v) in c.vertices.iter().enumerate() {
                if self.vertices[v.idx()].origin == Origin::Midpoint(CarrierId(ci as u32)) {
                    self.carrier_pos[v.idx()] = i as u32;
                }
            }
        }
    }

    /// Rebuilds edges, adjacency and position tables from the carriers.
    pub(crate) fn reindex(&mut self) {
        self.refresh_positions();
        self.edges.clear();
        self.edge_of.clear();
        self.adj.clear();
        self.adj.resize(self.vertices.len(), Vec::new());
        for (ci, c) in self.carriers.iter().enumerate() {
            for w in c.vertices.windows(2) {
                let id = EdgeId(self.edges.len() as u32);
                let birth = self.vertices[w[0].idx()]
                    .birth_step
                    .max(self.vertices[w[1].idx()].birth_step);
                self.edges.push(Edge {
                    ends: [w[0], w[1]],
                    carrier: CarrierId(ci as u32),
                    birth_step: birth,
                });
                self.edge_of.entry(undirected(w[0], w[1])).or_insert(id);
                self.adj[w[0].idx()].push(HalfEdge {
                    edge: id,
                    forward: true,
                });
                self.adj[w[1].idx()].push(HalfEdge {
                    edge: id,
                    forward: false,
                });
            }
        }
        self.kernels = self.pastings.iter().map(|p| p.kernel).collect();
    }
}
