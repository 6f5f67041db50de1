use sha2::{Digest, Sha256};

use super::*;
use crate::complex::{Corner, EdgeId, HalfEdge, Inner, Origin, Side};

/// The bosses of `v`, from the macrotile whose subdivision created it.
pub fn boss_set(c: &Complex, v: VertexId) -> BossSet {
    let vx = c.vertex(v);
    let mut b = BossSet::default();
    let (t, tail) = match (vx.kind, vx.origin) {
        (VertexKind::Side(..), Origin::Midpoint(car)) => {
            let carrier = c.carrier(car);
            let tail = match carrier.kind {
                CarrierKind::Internal(2 | 5 | 6) => 1,
                CarrierKind::Internal(7 | 8) => 2,
                _ => 0,
            };
            (carrier.owner, tail)
        }
        (VertexKind::Inner(i), Origin::Inner(m)) => (m, if i == Inner::C { 2 } else { 0 }),
        (VertexKind::Corner(Corner::DR), _) => {
            let root = c.macrotile(c.region_root(vx.region));
            b.first = Some(root.corner(Corner::DL));
            return b;
        }
        _ => return b,
    };
    let t = c.macrotile(t);
    b.first = t.mid(Side::U);
    match tail {
        1 => b.second = Some(t.corner(Corner::DR)),
        2 => {
            b.second = Some(t.corner(Corner::DL));
            b.third = Some(t.corner(Corner::DR));
        }
        _ => {}
    }
    b
}

/// Is `h` a main edge at its endpoint `at`?
pub fn main_flag(c: &Complex, h: HalfEdge, at: VertexId) -> bool {
    let car = c.edge(h.edge).carrier;
    let vx = c.vertex(at);
    match vx.origin {
        Origin::Midpoint(home) => home == car,
        Origin::Inner(m) => c.macrotile(m).internal.is_some_and(|i| i.contains(&car)),
        Origin::Root => c.macrotile(c.region_root(vx.region)).sides.contains(&car),
    }
}

pub fn vertex_label(c: &Complex, v: VertexId) -> VertexLabel {
    let vx = c.vertex(v);
    VertexLabel {
        kind: vx.kind,
        pasted: vx.pasted.iter().copied().collect(),
        level: c.vertex_level(v),
    }
}

fn digest(bytes: &[u8]) -> u64 {
    let d = Sha256::digest(bytes);
    u64::from_be_bytes(d[..8].try_into().unwrap())
}

/// Neighborhood codes of radius `r` for every vertex.
///
/// The code at radius `d + 1` hashes the vertex label with the sorted codes
/// at radius `d` of its neighbors, so it encodes the rooted unfolding of the
/// ball of radius `d + 1`.
pub fn environments(c: &Complex, radius: u32) -> Vec<Environment> {
    let labels: Vec<String> = c
        .vertex_ids()
        .map(|v| vertex_label(c, v).to_string())
        .collect();
    let mut code: Vec<u64> = labels.iter().map(|l| digest(l.as_bytes())).collect();
    for _ in 0..radius {
        let next = c
            .vertex_ids()
            .map(|v| {
                let mut nb: Vec<u64> = c
                    .out_edges(v)
                    .iter()
                    .map(|h| code[c.half_edge_to(*h).idx()])
                    .collect();
                nb.sort_unstable();
                let mut buf = labels[v.idx()].clone().into_bytes();
                for x in nb {
                    buf.push(b'|');
                    buf.extend_from_slice(&x.to_be_bytes());
                }
                digest(&buf)
            })
            .collect();
        code = next;
    }
    code.into_iter().map(Environment).collect()
}

/// All letters of a complex at a fixed environment radius.
#[derive(Clone, Debug)]
pub struct Coloring {
    radius: u32,
    bosses: Vec<BossSet>,
    vertex: Vec<VertexLetter>,
    /// Per edge, indexed by `forward as usize`.
    out: Vec<[EdgeLetter; 2]>,
    inn: Vec<[EdgeLetter; 2]>,
}

impl Coloring {
    pub fn new(c: &Complex, radius: u32) -> Self {
        let envs = environments(c, radius);
        let labels: Vec<VertexLabel> = c.vertex_ids().map(|v| vertex_label(c, v)).collect();
        let bosses: Vec<BossSet> = c.vertex_ids().map(|v| boss_set(c, v)).collect();
        let vertex = c
            .vertex_ids()
            .map(|v| {
                let info = bosses[v.idx()].to_array().map(|b| {
                    b.map(|b| BossInfo {
                        label: labels[b.idx()].clone(),
                        env: envs[b.idx()],
                    })
                });
                VertexLetter {
                    label: labels[v.idx()].clone(),
                    env: envs[v.idx()],
                    info,
                }
            })
            .collect();
        let mut out = Vec::with_capacity(c.edges().len());
        let mut inn = Vec::with_capacity(c.edges().len());
        for e in 0..c.edges().len() as u32 {
            let e = EdgeId(e);
            let h = |forward| HalfEdge { edge: e, forward };
            out.push([edge_out(c, h(false)), edge_out(c, h(true))]);
            inn.push([edge_in(c, h(false)), edge_in(c, h(true))]);
        }
        Coloring {
            radius,
            bosses,
            vertex,
            out,
            inn,
        }
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn bosses(&self, v: VertexId) -> BossSet {
        self.bosses[v.idx()]
    }

    pub fn vertex_letter(&self, v: VertexId) -> &VertexLetter {
        &self.vertex[v.idx()]
    }

    /// Letter of `h` read at its start.
    pub fn out_letter(&self, h: HalfEdge) -> EdgeLetter {
        self.out[h.edge.idx()][h.forward as usize]
    }

    /// Letter of `h` read at its end.
    pub fn in_letter(&self, h: HalfEdge) -> EdgeLetter {
        self.inn[h.edge.idx()][h.forward as usize]
    }

    pub fn alphabet(&self) -> Alphabet {
        let vs = self.vertex.iter().cloned().map(Letter::Vertex);
        let es = self
            .out
            .iter()
            .chain(&self.inn)
            .flatten()
            .map(|e| Letter::Edge(*e));
        Alphabet::from_letters(vs.chain(es))
    }
}

fn edge_out(c: &Complex, h: HalfEdge) -> EdgeLetter {
    let from = c.half_edge_from(h);
    let car = c.carrier(c.edge(h.edge).carrier);
    let main = main_flag(c, h, from);
    let into_pasting = car.region != c.vertex(from).region;
    EdgeLetter {
        carrier: car.kind,
        forward: h.forward,
        dir: EdgeDir::Out,
        main,
        flags: EdgeFlags {
            into_pasting,
            into_subtile: !main && !into_pasting,
            ..EdgeFlags::default()
        },
    }
}

fn edge_in(c: &Complex, h: HalfEdge) -> EdgeLetter {
    let to = c.half_edge_to(h);
    let car = c.carrier(c.edge(h.edge).carrier);
    let main = main_flag(c, h, to);
    let out_of_pasting = car.region != c.vertex(to).region;
    EdgeLetter {
        carrier: car.kind,
        forward: h.forward,
        dir: EdgeDir::In,
        main,
        flags: EdgeFlags {
            out_of_pasting,
            out_of_subtile: !main && !out_of_pasting,
            ..EdgeFlags::default()
        },
    }
}
