use super::*;
use crate::codec::Encoder;
use crate::complex::Complex;
use crate::presentation::{Config, Presentation};
use crate::rewrite::Strategy;

fn statuses(rs: &[Report]) -> Vec<(String, Status)> {
    rs.iter().map(|r| (r.check.clone(), r.status)).collect()
}

#[test]
fn built_complexes_pass_structure() {
    for n in 1..=5 {
        let c = Complex::build(n).unwrap();
        let rs = verify_structure(&c);
        assert!(
            rs.iter().all(Report::passed),
            "level {n}: {:?} {:?}",
            statuses(&rs),
            rs
        );
    }
}

#[test]
fn reordered_host_fails_pasting_corners() {
    let c = Complex::build(5).unwrap();
    let text: Vec<String> = c
        .to_dump()
        .lines()
        .map(|l| {
            if !l.starts_with("P 0 ") {
                return l.to_string();
            }
            let mut f: Vec<String> = l.split(' ').map(String::from).collect();
            let mut host: Vec<&str> = f[3].split(',').collect();
            host.swap(0, 4);
            f[3] = host.join(",");
            f.join(" ")
        })
        .collect();
    let bad = Complex::from_dump(&text.join("\n")).unwrap();
    let rs = verify_structure(&bad);
    let corners = rs.iter().find(|r| r.check == "pasting-corners").unwrap();
    assert_eq!(corners.status, Status::Fail);
    assert!(!corners.witnesses.is_empty());
}

#[test]
fn exit_codes() {
    let pass = Report::new("a");
    let mut unknown = Report::new("b");
    unknown.unknown("budget");
    let mut fail = Report::new("c");
    fail.fail("x");
    assert_eq!(exit_code(&[]), 0);
    assert_eq!(exit_code(std::slice::from_ref(&pass)), 0);
    assert_eq!(exit_code(&[pass.clone(), unknown.clone()]), 2);
    assert_eq!(exit_code(&[unknown.clone(), fail.clone(), pass]), 1);
    fail.unknown("later");
    assert_eq!(fail.status, Status::Fail);
}

#[test]
fn witnesses_are_capped() {
    let mut r = Report::new("a");
    for i in 0..100 {
        r.fail(i.to_string());
    }
    assert_eq!(r.witnesses.len(), MAX_WITNESSES);
    assert!(r.to_json().contains("\"status\":\"FAIL\""));
}

#[test]
fn determinism_small_levels() {
    let c = Complex::build(3).unwrap();
    let r = verify_determinism(&c, 2, 2);
    assert!(r.passed(), "{r:?}");
    let r = verify_determinism(&c, 0, 0);
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn closed_words_of_a_tile() {
    let c = Complex::build(1).unwrap();
    let (_, enc) = Encoder::own(&c, 2);
    let w = closed_path_words(&c, &enc, 4);
    // Four corners, each loop read from any start in either direction.
    assert!(w.closed.len() >= 8);
    assert!(w.open.len() > w.closed.len());
}

#[test]
fn nil_check_on_small_complexes() {
    for n in 2..=3 {
        let c = Complex::build(n).unwrap();
        let cfg = Config {
            radius: 2,
            cat2_edges: 4,
        };
        let p = Presentation::generate(&c, cfg).unwrap();
        let (_, enc) = Encoder::own(&c, 2);
        let r = nil_check(&c, &p, &enc, 4, 100_000, Strategy::Pipeline);
        assert!(r.passed(), "level {n}: {r:?}");
        assert_eq!(r.notes["zero-traces"], r.notes["replayed"]);
    }
}

#[test]
fn half_perimeters_have_two_sides() {
    let c = Complex::build(3).unwrap();
    for level in 1..=3 {
        let hs = half_perimeters(&c, level);
        let tiles = 6usize.pow(3 - level);
        assert_eq!(hs.len(), 8 * tiles);
        for (_, p) in &hs {
            assert_eq!(p.edges.len(), 1 << level);
        }
    }
}

#[test]
fn census_counts_every_word() {
    let c = Complex::build(3).unwrap();
    let p = Presentation::generate(
        &c,
        Config {
            radius: 2,
            cat2_edges: 4,
        },
    )
    .unwrap();
    let (_, enc) = Encoder::own(&c, 2);
    let (census, _) = growth_census(&c, &p, &enc, 2..=3, 10_000);
    for row in census.rows.values() {
        assert_eq!(row.words, row.zero + row.irreducible + row.unknown);
    }
    assert_eq!(census.rows[&2].edges, 4);
    assert_eq!(census.rows[&3].edges, 8);
}

#[test]
fn reports_repeat_apart_from_timing() {
    let c = Complex::build(4).unwrap();
    let strip = |rs: Vec<Report>| -> Vec<Report> {
        rs.into_iter().map(|r| Report { millis: 0, ..r }).collect()
    };
    assert_eq!(strip(verify_structure(&c)), strip(verify_structure(&c)));
}
