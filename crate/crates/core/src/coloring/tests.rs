use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::complex::{Corner, Inner, Origin, Side, BASE_REGION};

fn root(c: &Complex) -> &crate::complex::Macrotile {
    c.macrotile(c.region_root(BASE_REGION))
}

#[test]
fn bosses_of_inner_vertices() {
    let c = Complex::build(3).unwrap();
    for v in c.vertex_ids() {
        let VertexKind::Inner(i) = c.vertex(v).kind else {
            continue;
        };
        let t = c.macrotile(c.inner_owner(v).unwrap());
        let want = match i {
            Inner::A | Inner::B => BossSet {
                first: t.mid(Side::U),
                ..BossSet::default()
            },
            Inner::C => BossSet {
                first: t.mid(Side::U),
                second: Some(t.corner(Corner::DL)),
                third: Some(t.corner(Corner::DR)),
            },
        };
        assert_eq!(boss_set(&c, v), want, "{v}");
    }
}

#[test]
fn bosses_of_side_and_boundary_vertices() {
    let c = Complex::build(4).unwrap();
    for v in c.vertex_ids() {
        let b = boss_set(&c, v);
        match (c.vertex(v).kind, c.vertex(v).origin) {
            (VertexKind::Boundary(_), _) => assert!(b.is_empty()),
            (VertexKind::Side(..), Origin::Midpoint(car)) => {
                let t = c.macrotile(c.carrier(car).owner);
                assert_eq!(b.first, t.mid(Side::U));
                let n = match c.carrier(car).kind {
                    CarrierKind::Internal(2 | 5 | 6) => 2,
                    CarrierKind::Internal(7 | 8) => 3,
                    _ => 1,
                };
                assert_eq!(b.len(), n);
                if n == 2 {
                    assert_eq!(b.second, Some(t.corner(Corner::DR)));
                }
            }
            (VertexKind::Corner(Corner::DR), _) => {
                assert_eq!(b.first, Some(root(&c).corner(Corner::DL)));
                assert_eq!(b.len(), 1);
            }
            (VertexKind::Corner(_), _) => assert!(b.is_empty()),
            _ => {}
        }
    }
}

#[test]
fn information_matches_bosses() {
    let c = Complex::build(4).unwrap();
    let col = Coloring::new(&c, DEFAULT_RADIUS);
    let env = environments(&c, DEFAULT_RADIUS);
    for v in c.vertex_ids() {
        let letter = col.vertex_letter(v);
        for (slot, b) in letter.info.iter().zip(col.bosses(v).to_array()) {
            let want = b.map(|b| BossInfo {
                label: vertex_label(&c, b),
                env: env[b.idx()],
            });
            assert_eq!(slot, &want);
        }
    }
}

#[test]
fn tokens_round_trip() {
    let c = Complex::build(5).unwrap();
    let a = alphabet(&c, DEFAULT_RADIUS);
    for l in a.letters() {
        let t = l.to_string();
        assert!(!t.contains(char::is_whitespace));
        assert_eq!(&t.parse::<Letter>().unwrap(), l);
    }
    assert_eq!(Alphabet::from_text(&a.to_text()).unwrap(), a);
    assert!("Q:1".parse::<Letter>().is_err());
    assert!("0".parse::<Letter>().is_err());
}

#[test]
fn unit_square_alphabet() {
    let c = Complex::build(1).unwrap();
    let a = alphabet(&c, DEFAULT_RADIUS);
    let vs: Vec<&VertexLetter> = a.letters().iter().filter_map(Letter::as_vertex).collect();
    assert_eq!(vs.len(), 4);
    assert!(vs
        .iter()
        .all(|v| matches!(v.label.kind, VertexKind::Corner(_))));
    assert!(a
        .letters()
        .iter()
        .filter_map(Letter::as_edge)
        .all(|e| matches!(e.carrier, CarrierKind::Border(_)) && e.main));
}

#[test]
fn main_edges_at_a_side_node_stay_on_its_carrier() {
    let c = Complex::build(5).unwrap();
    for v in c.vertex_ids() {
        let Origin::Midpoint(home) = c.vertex(v).origin else {
            continue;
        };
        let mut mains = 0;
        for &h in c.out_edges(v) {
            let on_home = c.edge(h.edge).carrier == home;
            assert_eq!(main_flag(&c, h, v), on_home);
            mains += on_home as usize;
        }
        assert_eq!(mains, 2);
    }
}

#[test]
fn entering_a_subtile_is_not_main() {
    let c = Complex::build(2).unwrap();
    let t = root(&c);
    let u = t.mid(Side::U).unwrap();
    let a = t.inner.unwrap()[0];
    let h = c.half_edge(u, a).unwrap();
    let col = Coloring::new(&c, DEFAULT_RADIUS);
    let z = col.out_letter(h);
    assert!(!z.main);
    assert!(z.flags.into_subtile && !z.flags.into_pasting);
    assert_eq!(z.carrier, CarrierKind::Internal(1));
    assert!(col.in_letter(h).main, "A continues along edge 1");
}

#[test]
fn leaving_a_pasting_is_flagged() {
    let c = Complex::build(5).unwrap();
    let col = Coloring::new(&c, DEFAULT_RADIUS);
    let p = &c.pastings()[0];
    let rt = c.macrotile(p.root);
    let rm = rt.mid(Side::R).unwrap();
    let h = c.half_edge(rm, rt.corner(Corner::UR)).unwrap();
    let x = col.in_letter(h);
    assert!(!x.main && x.flags.out_of_pasting && !x.flags.out_of_subtile);
    let z = col.out_letter(h.reverse());
    assert!(!z.main && z.flags.into_pasting);
    assert_eq!(z.carrier, x.carrier);
}

#[test]
fn out_and_in_letters_share_the_carrier() {
    let c = Complex::build(5).unwrap();
    let col = Coloring::new(&c, DEFAULT_RADIUS);
    for e in 0..c.edges().len() as u32 {
        for forward in [false, true] {
            let h = crate::complex::HalfEdge {
                edge: crate::complex::EdgeId(e),
                forward,
            };
            let z = col.out_letter(h);
            let x = col.in_letter(h.reverse());
            assert_eq!(z.carrier, x.carrier);
            assert_eq!((z.dir, x.dir), (EdgeDir::Out, EdgeDir::In));
            assert_eq!(z.forward, !x.forward);
            assert_eq!(z.main, x.main, "both read at the start of h");
        }
    }
}

fn letter_census(c: &Complex) -> BTreeMap<String, usize> {
    let col = Coloring::new(c, DEFAULT_RADIUS);
    let mut out = BTreeMap::new();
    for v in c.vertex_ids() {
        *out.entry(Letter::Vertex(col.vertex_letter(v).clone()).to_string())
            .or_insert(0) += 1;
    }
    out
}

#[test]
fn letters_do_not_depend_on_vertex_ids() {
    let c = Complex::build(5).unwrap();
    let mut perm: Vec<u32> = (0..c.vertices().len() as u32).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(7));
    let d = c.relabeled(&perm);
    assert_eq!(letter_census(&c), letter_census(&d));
    assert_eq!(alphabet(&c, DEFAULT_RADIUS), alphabet(&d, DEFAULT_RADIUS));
}

#[test]
fn radius_refines_letters() {
    let c = Complex::build(4).unwrap();
    let sizes: Vec<usize> = (0..4).map(|r| alphabet(&c, r).len()).collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
}

#[test]
fn no_vertex_is_both_upper_right_and_lower_left() {
    let c = Complex::build(6).unwrap();
    let cur = VertexKind::Corner(Corner::UR);
    let cdl = VertexKind::Corner(Corner::DL);
    for v in c.vertex_ids() {
        let p = &c.vertex(v).pasted;
        assert!(!(p.contains(&cur) && p.contains(&cdl)), "{v}");
    }
}
