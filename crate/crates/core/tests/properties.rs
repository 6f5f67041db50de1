use std::sync::OnceLock;

use proptest::prelude::*;

use nilforge::codec::{Encoder, Path, Word};
use nilforge::coloring::Family;
use nilforge::complex::{Complex, VertexId};
use nilforge::dol::edge_levels;
use nilforge::presentation::{Config, Presentation};
use nilforge::rewrite::{
    apply, reduces_to_zero, replay, RankDiagram, RewriteStep, Rule, Strategy as Search, Verdict,
};

struct Fixture {
    c: Complex,
    p: Presentation,
    enc: Encoder,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let c = Complex::build(4).unwrap();
        let p = Presentation::generate(
            &c,
            Config {
                radius: 2,
                cat2_edges: 4,
            },
        )
        .unwrap();
        let (_, enc) = Encoder::own(&c, 2);
        Fixture { c, p, enc }
    })
}

/// A walk from vertex `start` taking out-edge `choice % degree` at each step.
fn walk(c: &Complex, start: usize, choices: &[usize]) -> Path {
    let n = c.vertex_ids().count();
    let mut p = Path::single(VertexId((start % n) as u32));
    for &k in choices {
        let out = c.out_edges(p.end());
        p.push(c, out[k % out.len()]);
    }
    p
}

fn path() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (any::<usize>(), prop::collection::vec(any::<usize>(), 0..10))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn paths_are_among_their_embeddings((start, choices) in path()) {
        let f = fixture();
        let p = walk(&f.c, start, &choices);
        let w = f.enc.encode(&p);
        prop_assert_eq!(w.len(), 3 * p.edges.len() + 1);
        let a = f.p.alphabet();
        for (i, &l) in w.letters().iter().enumerate() {
            let want = [Family::Y, Family::Z, Family::X][i % 3];
            prop_assert_eq!(a.family(l), want);
        }
        prop_assert!(f.enc.embeddings(&f.c, &w).contains(&p));
    }

    #[test]
    fn flips_keep_length_and_ends((start, choices) in path(), picks in prop::collection::vec(any::<usize>(), 1..20)) {
        let f = fixture();
        let w0 = f.enc.encode(&walk(&f.c, start, &choices));
        let mut w = w0.clone();
        let mut steps = Vec::new();
        for k in picks {
            let hits = f.p.eq_hits(w.letters());
            if hits.is_empty() {
                break;
            }
            let h = hits[k % hits.len()];
            let step = RewriteStep { rule: Rule::Listed(h.rel), pos: h.pos, forward: h.forward };
            let next = apply(&f.p, &w, step).unwrap();
            prop_assert_eq!(next.len(), w.len());
            prop_assert_eq!(next.letters()[0], w0.letters()[0]);
            prop_assert_eq!(next.letters().last(), w0.letters().last());
            steps.push(step);
            w = next;
        }
        for &s in steps.iter().rev() {
            w = apply(&f.p, &w, s.inverse()).unwrap();
        }
        prop_assert_eq!(w, w0);
    }

    #[test]
    fn zero_traces_replay((start, choices) in path(), times in 1usize..4, bfs in any::<bool>()) {
        let f = fixture();
        let w = f.enc.encode(&walk(&f.c, start, &choices)).power(times);
        let strategy = if bfs { Search::Bfs } else { Search::Pipeline };
        if let Verdict::Zero { trace } = reduces_to_zero(&f.p, &w, 20_000, strategy) {
            prop_assert!(replay(&f.p, &w, &trace).unwrap().is_zero());
            prop_assert!(trace.iter().any(|s| !matches!(s.rule, Rule::Listed(id) if f.p.flip_sides(id, true).is_some())));
        }
    }

    #[test]
    fn edge_level_windows_have_one_highest_rank(k in 3u32..10, a in any::<usize>(), len in 1usize..40) {
        let l = edge_levels(k).unwrap();
        let a = a % l.len();
        let b = (a + len).min(l.len());
        let ranks = RankDiagram::from_levels(&l.as_slice()[a..b]).unwrap();
        prop_assert!(ranks.iter().filter(|r| r.is_none()).count() <= 1);
        if ranks.iter().all(Option::is_some) {
            let top = ranks.iter().max().unwrap();
            prop_assert_eq!(ranks.iter().filter(|r| *r == top).count(), 1);
        }
    }

    #[test]
    fn edge_levels_length_and_period(k in 1u32..=16) {
        let l = edge_levels(k).unwrap();
        prop_assert_eq!(l.len(), (1 << k) - 1);
        let s = l.as_slice();
        if k >= 3 {
            prop_assert_eq!(&s[..3], &[1, 2, 1]);
            prop_assert!(s[3..].chunks(4).all(|c| c == [3, 1, 2, 1]));
        }
    }
}

#[test]
fn dumps_round_trip() {
    for n in 1..=5 {
        let c = Complex::build(n).unwrap();
        let text = c.to_dump();
        assert_eq!(Complex::from_dump(&text).unwrap().to_dump(), text);
    }
}

#[test]
fn presentations_round_trip() {
    let f = fixture();
    let text = f.p.export();
    let q = Presentation::import(&text).unwrap();
    assert_eq!(q, f.p);
    assert_eq!(q.export(), text);
}

#[test]
fn no_flip_side_is_zero() {
    let f = fixture();
    for (id, _) in f.p.relations().iter().enumerate() {
        if let Some((l, r)) = f.p.flip_sides(id, true) {
            assert!(!f.p.is_zero(l) && !f.p.is_zero(r), "relation {id}");
        }
    }
}

#[test]
fn encodings_of_closed_paths_repeat_their_node() {
    let f = fixture();
    let t = f.c.tiles()[0];
    let corners = f.c.macrotile(t).corners;
    let p = Path::through(
        &f.c,
        &[corners[0], corners[1], corners[2], corners[3], corners[0]],
    )
    .unwrap();
    let w: Word = f.enc.encode(&p);
    assert_eq!(w.letters()[0], *w.letters().last().unwrap());
}
