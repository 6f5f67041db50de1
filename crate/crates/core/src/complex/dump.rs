//! Line-oriented text dump of a complex.
//!
//! ```text
//! nilforge-complex 1
//! level <L> step <S>
//! V <id> <kind> <pasted kinds|-> <birth> <region> <root|mid:C|inner:M>
//! C <id> <i1..i8|bU..bL> <region> <owner> <v,v,...>
//! M <id> <level> <region> <parent|-> <corners> <mids|-> <inner|-> <internal|-> <sides> <children|->
//! P <id> <kernel> <host x5> <carrier> <root> <region> <step>
//! S <step> <tiles subdivided> <vertices created> <pastings>
//! T <macro> <ul,ur,dr,dl>
//! H <from> <to> <edge> <carrier> <A|B>
//! ```
//!
//! `T` and `H` records are derived and ignored on import.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::*;
use crate::error::{Error, Result};

const MAGIC: &str = "nilforge-complex 1";

fn join<T: fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(",")
    }
}

fn opt_join<T: fmt::Display, const N: usize>(xs: Option<[T; N]>) -> String {
    match xs {
        Some(a) => join(a),
        None => "-".into(),
    }
}

impl Complex {
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(out, "level {} step {}", self.level(), self.step);
        for (i, v) in self.vertices.iter().enumerate() {
            let origin = match v.origin {
                Origin::Root => "root".to_string(),
                Origin::Midpoint(c) => format!("mid:{c}"),
                Origin::Inner(m) => format!("inner:{m}"),
            };
            let _ = writeln!(
                out,
                "V {i} {} {} {} {} {origin}",
                v.kind,
                join(&v.pasted),
                v.birth_step,
                v.region
            );
        }
        for (i, c) in self.carriers.iter().enumerate() {
            let _ = writeln!(
                out,
                "C {i} {} {} {} {}",
                c.kind,
                c.region,
                c.owner,
                join(&c.vertices)
            );
        }
        for (i, m) in self.macrotiles.iter().enumerate() {
            let parent = m.parent.map_or("-".to_string(), |p| p.to_string());
            let _ = writeln!(
                out,
                "M {i} {} {} {parent} {} {} {} {} {} {}",
                m.level,
                m.region,
                join(m.corners),
                opt_join(m.mids),
                opt_join(m.inner),
                opt_join(m.internal),
                join(m.sides),
                join(&m.children)
            );
        }
        for (i, p) in self.pastings.iter().enumerate() {
            let _ = writeln!(
                out,
                "P {i} {} {} {} {} {} {}",
                p.kernel,
                join(p.host),
                p.carrier,
                p.root,
                p.region,
                p.step
            );
        }
        for r in &self.log {
            let _ = writeln!(
                out,
                "S {} {} {} {}",
                r.step, r.tiles_subdivided, r.vertices_created, r.pastings
            );
        }
        for &t in &self.leaves {
            let _ = writeln!(out, "T {t} {}", join(self.macrotile(t).corners));
        }
        for (i, e) in self.edges.iter().enumerate() {
            let [a, b] = e.ends;
            let _ = writeln!(out, "H {a} {b} {i} {} A", e.carrier);
            let _ = writeln!(out, "H {b} {a} {i} {} B", e.carrier);
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Complex> {
        let mut c = Complex::default();
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, l)) if l.trim() == MAGIC => {}
            _ => return Err(Error::parse(1, format!("expected `{MAGIC}` header"))),
        }
        let mut saw_level = false;
        for (ln, raw) in lines {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let want = |n: usize| -> Result<()> {
                if f.len() == n {
                    Ok(())
                } else {
                    Err(Error::parse(
                        ln,
                        format!("expected {n} fields, found {}", f.len()),
                    ))
                }
            };
            match f[0] {
                "level" => {
                    want(4)?;
                    c.step = num(ln, f[3])?;
                    let level: u32 = num(ln, f[1])?;
                    if level != c.step + 1 {
                        return Err(Error::parse(ln, "level must equal step + 1"));
                    }
                    saw_level = true;
                }
                "V" => {
                    want(7)?;
                    expect_index(ln, f[1], c.vertices.len())?;
                    let kind = f[2].parse().map_err(|e| Error::parse(ln, e))?;
                    let pasted = if f[3] == "-" {
                        BTreeSet::new()
                    } else {
                        f[3].split(',')
                            .map(|k| k.parse().map_err(|e| Error::parse(ln, e)))
                            .collect::<Result<_>>()?
                    };
                    let origin = match f[6].split_once(':') {
                        None if f[6] == "root" => Origin::Root,
                        Some(("mid", x)) => Origin::Midpoint(CarrierId(num(ln, x)?)),
                        Some(("inner", x)) => Origin::Inner(MacroId(num(ln, x)?)),
                        _ => return Err(Error::parse(ln, format!("bad origin `{}`", f[6]))),
                    };
                    c.vertices.push(Vertex {
                        kind,
                        pasted,
                        birth_step: num(ln, f[4])?,
                        region: RegionId(num(ln, f[5])?),
                        origin,
                    });
                }
                "C" => {
                    want(6)?;
                    expect_index(ln, f[1], c.carriers.len())?;
                    let kind = parse_carrier_kind(f[2])
                        .ok_or_else(|| Error::parse(ln, "bad carrier kind"))?;
                    let vertices: Vec<VertexId> = ids(ln, f[5])?;
                    if vertices.len() < 2 {
                        return Err(Error::parse(ln, "carrier needs two endpoints"));
                    }
                    c.carriers.push(Carrier {
                        kind,
                        region: RegionId(num(ln, f[3])?),
                        owner: MacroId(num(ln, f[4])?),
                        vertices,
                    });
                }
                "M" => {
                    want(11)?;
                    expect_index(ln, f[1], c.macrotiles.len())?;
                    let parent = if f[4] == "-" {
                        None
                    } else {
                        Some(MacroId(num(ln, f[4])?))
                    };
                    let m = Macrotile {
                        level: num(ln, f[2])?,
                        region: RegionId(num(ln, f[3])?),
                        corners: arr(ln, f[5])?,
                        mids: opt_arr(ln, f[6])?,
                        inner: opt_arr(ln, f[7])?,
                        internal: opt_arr(ln, f[8])?,
                        sides: arr(ln, f[9])?,
                        children: ids(ln, f[10])?,
                        parent,
                    };
                    if parent.is_none() {
                        c.roots.push(MacroId(c.macrotiles.len() as u32));
                    }
                    c.macrotiles.push(m);
                }
                "P" => {
                    want(8)?;
                    expect_index(ln, f[1], c.pastings.len())?;
                    c.pastings.push(Pasting {
                        kernel: VertexId(num(ln, f[2])?),
                        host: arr(ln, f[3])?,
                        carrier: CarrierId(num(ln, f[4])?),
                        root: MacroId(num(ln, f[5])?),
                        region: RegionId(num(ln, f[6])?),
                        step: num(ln, f[7])?,
                    });
                }
                "S" => {
                    want(5)?;
                    c.log.push(StepRecord {
                        step: num(ln, f[1])?,
                        tiles_subdivided: num(ln, f[2])?,
                        vertices_created: num(ln, f[3])?,
                        pastings: num(ln, f[4])?,
                    });
                }
                "T" | "H" => {}
                other => return Err(Error::parse(ln, format!("unknown record `{other}`"))),
            }
        }
        if !saw_level {
            return Err(Error::parse(2, "missing level record"));
        }
        c.validate_references()?;
        c.leaves = c
            .macro_ids()
            .filter(|m| c.macrotile(*m).is_leaf())
            .collect();
        c.reindex();
        Ok(c)
    }

    /// Index bounds only; structural laws are the verifier's business.
    fn validate_references(&self) -> Result<()> {
        let nv = self.vertices.len();
        let nc = self.carriers.len();
        let nm = self.macrotiles.len();
        let bad = |what: &str| Err(Error::parse(0, format!("dangling reference in {what}")));
        for v in &self.vertices {
            match v.origin {
                Origin::Midpoint(c) if c.idx() >= nc => return bad("vertex origin"),
                Origin::Inner(m) if m.idx() >= nm => return bad("vertex origin"),
                _ => {}
            }
        }
        for c in &self.carriers {
            if c.owner.idx() >= nm || c.vertices.iter().any(|v| v.idx() >= nv) {
                return bad("carrier");
            }
        }
        for m in &self.macrotiles {
            let vs = m
                .corners
                .iter()
                .chain(m.mids.iter().flatten())
                .chain(m.inner.iter().flatten());
            if vs.into_iter().any(|v| v.idx() >= nv)
                || m.sides
                    .iter()
                    .chain(m.internal.iter().flatten())
                    .any(|c| c.idx() >= nc)
                || m.children
                    .iter()
                    .chain(m.parent.iter())
                    .any(|x| x.idx() >= nm)
            {
                return bad("macrotile");
            }
        }
        for p in &self.pastings {
            if p.host.iter().any(|v| v.idx() >= nv) || p.carrier.idx() >= nc || p.root.idx() >= nm {
                return bad("pasting");
            }
        }
        Ok(())
    }
}

fn parse_carrier_kind(s: &str) -> Option<CarrierKind> {
    if let Some(rest) = s.strip_prefix('i') {
        let k: u8 = rest.parse().ok()?;
        (1..=8).contains(&k).then_some(CarrierKind::Internal(k))
    } else {
        let rest = s.strip_prefix('b')?;
        let mut chars = rest.chars();
        let side = Side::from_char(chars.next()?)?;
        chars.next().is_none().then_some(CarrierKind::Border(side))
    }
}

fn num<T: std::str::FromStr>(ln: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(ln, format!("expected a number, found `{s}`")))
}

fn expect_index(ln: usize, s: &str, want: usize) -> Result<()> {
    let got: usize = num(ln, s)?;
    if got != want {
        return Err(Error::parse(
            ln,
            format!("record id {got} out of sequence, expected {want}"),
        ));
    }
    Ok(())
}

trait FromU32 {
    fn from_u32(x: u32) -> Self;
}

macro_rules! from_u32 {
    ($($t:ident),*) => {$(
        impl FromU32 for $t {
            fn from_u32(x: u32) -> Self {
                $t(x)
            }
        }
    )*};
}
from_u32!(VertexId, CarrierId, MacroId);

fn ids<T: FromU32>(ln: usize, s: &str) -> Result<Vec<T>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| num(ln, x).map(T::from_u32)).collect()
}

fn arr<T: FromU32, const N: usize>(ln: usize, s: &str) -> Result<[T; N]> {
    let v: Vec<T> = ids(ln, s)?;
    let n = v.len();
    v.try_into()
        .map_err(|_| Error::parse(ln, format!("expected {N} ids, found {n}")))
}

fn opt_arr<T: FromU32, const N: usize>(ln: usize, s: &str) -> Result<Option<[T; N]>> {
    if s == "-" {
        Ok(None)
    } else {
        arr(ln, s).map(Some)
    }
}
