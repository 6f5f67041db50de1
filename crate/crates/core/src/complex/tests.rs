use super::*;
use crate::dol;

fn kind(s: &str) -> VertexKind {
    s.parse().unwrap()
}

#[test]
fn unit_square_is_one_tile() {
    let c = Complex::build(1).unwrap();
    assert_eq!(c.vertices().len(), 4);
    assert_eq!(c.edges().len(), 4);
    assert_eq!(c.tiles().len(), 1);
    assert_eq!(c.level(), 1);
}

#[test]
fn one_subdivision_counts() {
    let c = Complex::build(2).unwrap();
    assert_eq!(c.vertices().len(), 11);
    assert_eq!(c.edges().len(), 16);
    assert_eq!(c.tiles().len(), 6);
    let root = c.macrotile(c.region_root(BASE_REGION));
    let [a, b, cc] = root.inner.unwrap();
    assert_eq!(c.degree(a), 3);
    assert_eq!(c.degree(b), 3);
    assert_eq!(c.degree(cc), 4);
    let degrees: Vec<usize> = root.mids.unwrap().iter().map(|&m| c.degree(m)).collect();
    assert_eq!(degrees, vec![4, 3, 2, 3]);
    assert_eq!(c.degree(root.corner(Corner::UL)), 2);
    assert_eq!(c.degree(root.corner(Corner::UR)), 2);
    assert_eq!(c.degree(root.corner(Corner::DR)), 3);
    assert_eq!(c.degree(root.corner(Corner::DL)), 3);
}

#[test]
fn template_matches_first_subdivision() {
    let c = Complex::build(2).unwrap();
    let root = c.macrotile(c.region_root(BASE_REGION));
    let mut point = [VertexId(0); 11];
    point[..4].copy_from_slice(&root.corners);
    point[4..8].copy_from_slice(&root.mids.unwrap());
    point[8..].copy_from_slice(&root.inner.unwrap());
    for [a, b] in template_edges() {
        assert!(c.edge_between(point[a], point[b]).is_some(), "{a}-{b}");
    }
    for (i, &ch) in root.children.iter().enumerate() {
        let corners: Vec<VertexId> = FACE_CORNERS[i].iter().map(|&p| point[p]).collect();
        assert_eq!(c.macrotile(ch).corners.to_vec(), corners);
    }
}

#[test]
fn base_tiles_grow_by_six() {
    for n in 1..=5u32 {
        let c = Complex::build(n).unwrap();
        assert_eq!(c.base_tile_count(), 6usize.pow(n - 1));
    }
}

#[test]
fn every_tile_has_unit_sides() {
    let c = Complex::build(5).unwrap();
    for &t in c.tiles() {
        for s in Side::ALL {
            assert_eq!(c.side_path(t, s).len(), 2, "tile {t} side {s:?}");
        }
    }
}

#[test]
fn carrier_levels_follow_ruler_sequence() {
    let c = Complex::build(6).unwrap();
    for (i, car) in c.carriers().iter().enumerate() {
        let levels = c.carrier_levels(CarrierId(i as u32));
        let k = (car.vertices.len() - 1).trailing_zeros();
        assert_eq!(car.vertices.len(), (1 << k) + 1);
        if k == 0 {
            continue;
        }
        assert_eq!(levels, dol::edge_levels(k).unwrap(), "carrier {i}");
    }
}

#[test]
fn no_sites_before_level_five() {
    for n in 1..=4 {
        let c = Complex::build(n).unwrap();
        assert!(c.pastings().is_empty());
        assert!(c.pasting_sites().is_empty());
    }
}

#[test]
fn first_sites_sit_on_the_oldest_internal_carriers() {
    let mut c = Complex::build(4).unwrap();
    c.subdivide();
    let sites = c.pasting_sites();
    assert_eq!(sites.len(), 8);
    for s in &sites {
        assert_eq!(c.carrier_levels(s.carrier).0, vec![1, 2, 1, 3, 1, 2, 1]);
        assert_eq!(s.center, 4);
        let levels: Vec<u8> = s.window.iter().map(|&v| c.vertex_level(v)).collect();
        assert_eq!(levels, vec![2, 1, 3, 1, 2]);
    }
}

#[test]
fn pasting_labels_host_path() {
    let mut c = Complex::build(4).unwrap();
    c.subdivide();
    let site = c.pasting_sites()[0];
    let n = c.paste(&site).unwrap();
    let p = c.pastings()[n].clone();
    let labels = ["CUR", "U", "CUL", "L", "CDL"];
    for (v, want) in p.host.iter().zip(labels) {
        assert!(c.vertex(*v).pasted.contains(&kind(want)), "{want}");
    }
    let root = c.macrotile(p.root);
    assert_eq!(root.level, 2);
    assert_eq!(root.corner(Corner::UL), site.kernel());
    assert_eq!(c.vertex(root.corner(Corner::DR)).kind, kind("CDR"));
    assert_eq!(c.tiles_under(p.root).len(), 6);
    let err = c.paste(&site).unwrap_err();
    assert!(matches!(err, crate::Error::Rejected(_)));
}

#[test]
fn internal_midpoints_are_two_sided() {
    let c = Complex::build(5).unwrap();
    for v in c.vertex_ids() {
        let vx = c.vertex(v);
        if let Origin::Midpoint(car) = vx.origin {
            let border = matches!(c.carrier(car).kind, CarrierKind::Border(_));
            assert_eq!(border, matches!(vx.kind, VertexKind::Boundary(_)), "{v}");
        }
    }
}

#[test]
fn opposite_corner_distance_doubles() {
    let c = Complex::build(5).unwrap();
    for m in c.macro_ids() {
        let mt = c.macrotile(m);
        if mt.region != BASE_REGION {
            continue;
        }
        let d = c
            .distance(mt.corner(Corner::UL), mt.corner(Corner::DR))
            .unwrap();
        assert_eq!(d, 1 << mt.level, "macrotile {m} level {}", mt.level);
    }
}

#[test]
fn capacity_and_precondition() {
    assert!(matches!(
        Complex::build(0),
        Err(crate::Error::Precondition(_))
    ));
    assert!(matches!(
        Complex::build_bounded(4, 3),
        Err(crate::Error::Capacity(_))
    ));
}

#[test]
fn dump_round_trip() {
    let c = Complex::build(5).unwrap();
    let text = c.to_dump();
    let d = Complex::from_dump(&text).unwrap();
    assert_eq!(d.to_dump(), text);
    assert_eq!(d.edges().len(), c.edges().len());
}

#[test]
fn dump_errors_carry_line_numbers() {
    let text = Complex::build(2).unwrap().to_dump();
    let mut lines: Vec<&str> = text.lines().collect();
    lines[3] = "V 1 XX - 0 0 root";
    let err = Complex::from_dump(&lines.join("\n")).unwrap_err();
    assert!(matches!(err, crate::Error::Parse { line: 4, .. }), "{err}");
    assert!(Complex::from_dump("garbage").is_err());
}
