//! Text and JSON formats for embedded graphs.
//!
//! ```text
//! pg <n> <m> <infinite-dart|->
//! arc <id> <tail> <head> <weight> [<reverse-weight>]
//! rot <v> <dart>...
//! coord <v> <x> <y>
//! ```
//! Weights are `len`, `len/tie` or `inf`. A missing reverse weight makes the
//! reverse direction unusable. Either every vertex has a `rot` line or every
//! vertex has a `coord` line (rotations are then derived from the drawing).
//! Self-loops are dropped and parallel edges merged, keeping the lighter
//! weight per direction.

use super::{DartId, PlanarGraph, VertexId, NONE};
use crate::error::{Error, Result};
use crate::weight::Weight;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcRecord {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: String,
    #[serde(default = "inf_string")]
    pub reverse: String,
}

fn inf_string() -> String {
    "inf".into()
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    #[serde(default)]
    pub infinite_dart: Option<DartId>,
    pub arcs: Vec<ArcRecord>,
    #[serde(default)]
    pub rotation: Option<Vec<Vec<DartId>>>,
    #[serde(default)]
    pub coords: Option<Vec<[f64; 2]>>,
}

impl GraphFile {
    pub fn from_graph(g: &PlanarGraph) -> Self {
        let arcs = (0..g.m() as u32)
            .map(|e| {
                let [tail, head] = g.ends(e);
                ArcRecord {
                    tail,
                    head,
                    weight: g.weight(2 * e).to_string(),
                    reverse: g.weight(2 * e + 1).to_string(),
                }
            })
            .collect();
        GraphFile {
            n: g.n(),
            infinite_dart: g.face_darts(g.infinite_face()).first().copied(),
            arcs,
            rotation: Some(g.rotation()),
            coords: g.coords().map(|c| c.to_vec()),
        }
    }

    pub fn into_graph(self) -> Result<PlanarGraph> {
        let bad = |msg: String| Error::Parse { line: 0, msg };
        let mut ends = Vec::with_capacity(self.arcs.len());
        let mut weights = Vec::with_capacity(2 * self.arcs.len());
        for a in &self.arcs {
            ends.push([a.tail, a.head]);
            weights.push(a.weight.parse::<Weight>().map_err(bad)?);
            weights.push(a.reverse.parse::<Weight>().map_err(bad)?);
        }
        assemble(self.n, ends, weights, self.rotation, self.coords, self.infinite_dart)
    }
}

fn assemble(
    n: usize,
    ends: Vec<[VertexId; 2]>,
    weights: Vec<Weight>,
    rotation: Option<Vec<Vec<DartId>>>,
    coords: Option<Vec<[f64; 2]>>,
    hint: Option<DartId>,
) -> Result<PlanarGraph> {
    for &[a, b] in &ends {
        if a as usize >= n || b as usize >= n {
            return Err(Error::Invalid(format!("arc endpoint out of range ({a}, {b})")));
        }
    }
    let (ends, weights, remap) = simplify(&ends, &weights);
    let map_dart = |d: DartId| {
        let ne = remap[(d >> 1) as usize];
        (ne != NONE).then(|| 2 * ne + (d & 1))
    };
    let hint = hint.and_then(map_dart);
    match (rotation, coords) {
        (Some(rot), coords) => {
            let mut kept = vec![false; 2 * ends.len()];
            let rot: Vec<Vec<DartId>> = rot
                .into_iter()
                .map(|l| {
                    l.into_iter()
                        .filter_map(|d| {
                            let nd = map_dart(d)?;
                            // only the surviving representative of a parallel class keeps its slot
                            if kept[nd as usize] {
                                return None;
                            }
                            kept[nd as usize] = true;
                            Some(nd)
                        })
                        .collect()
                })
                .collect();
            PlanarGraph::from_rotation(n, ends, weights, rot, coords, hint)
        }
        (None, Some(coords)) => PlanarGraph::from_coords(coords, ends, weights, hint),
        (None, None) => Err(Error::Invalid("graph needs rotations or coordinates".into())),
    }
}

/// Drops self-loops and merges parallel edges. Returns new ends, weights and
/// a map from old edge id to surviving edge id (`NONE` for loops).
fn simplify(ends: &[[VertexId; 2]], weights: &[Weight]) -> (Vec<[VertexId; 2]>, Vec<Weight>, Vec<u32>) {
    use std::collections::HashMap;
    let mut first: HashMap<(VertexId, VertexId), u32> = HashMap::new();
    let mut new_ends: Vec<[VertexId; 2]> = Vec::new();
    let mut new_w: Vec<Weight> = Vec::new();
    let mut remap = vec![NONE; ends.len()];
    for (e, &[a, b]) in ends.iter().enumerate() {
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let (wf, wr) = (weights[2 * e], weights[2 * e + 1]);
        match first.get(&key) {
            Some(&ne) => {
                remap[e] = ne;
                let ne = ne as usize;
                let (f, r) = if new_ends[ne][0] == a { (wf, wr) } else { (wr, wf) };
                new_w[2 * ne] = new_w[2 * ne].min(f);
                new_w[2 * ne + 1] = new_w[2 * ne + 1].min(r);
            }
            None => {
                let ne = new_ends.len() as u32;
                first.insert(key, ne);
                remap[e] = ne;
                new_ends.push([a, b]);
                new_w.push(wf);
                new_w.push(wr);
            }
        }
    }
    (new_ends, new_w, remap)
}

/// Parses the text format, or JSON when the input starts with `{`.
pub fn read_graph(text: &str) -> Result<PlanarGraph> {
    if text.trim_start().starts_with('{') {
        let gf: GraphFile = serde_json::from_str(text)?;
        return gf.into_graph();
    }
    let mut header: Option<(usize, usize, Option<DartId>)> = None;
    let mut arcs: Vec<Option<([VertexId; 2], Weight, Weight)>> = Vec::new();
    let mut rot: Vec<Option<Vec<DartId>>> = Vec::new();
    let mut coords: Vec<Option<[f64; 2]>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tok: Vec<&str> = body.split_whitespace().collect();
        let num = |s: &str| s.parse::<u64>().map_err(|_| err(format!("expected integer, found `{s}`")));
        if tok[0] == "pg" {
            if tok.len() != 4 || header.is_some() {
                return Err(err("malformed or repeated header".into()));
            }
            let n = num(tok[1])? as usize;
            let m = num(tok[2])? as usize;
            let hint = if tok[3] == "-" { None } else { Some(num(tok[3])? as DartId) };
            header = Some((n, m, hint));
            arcs = vec![None; m];
            rot = vec![None; n];
            coords = vec![None; n];
            continue;
        }
        let Some((n, m, _)) = header else {
            return Err(err("record before `pg` header".into()));
        };
        match tok[0] {
            "arc" => {
                if tok.len() != 5 && tok.len() != 6 {
                    return Err(err("arc needs id, tail, head, weight and optional reverse weight".into()));
                }
                let id = num(tok[1])? as usize;
                let (t, h) = (num(tok[2])? as u32, num(tok[3])? as u32);
                if id >= m || t as usize >= n || h as usize >= n {
                    return Err(err(format!("arc {id} out of range")));
                }
                if arcs[id].is_some() {
                    return Err(err(format!("arc {id} repeated")));
                }
                let w: Weight = tok[4].parse().map_err(err)?;
                let r: Weight = match tok.get(5) {
                    Some(s) => s.parse().map_err(err)?,
                    None => Weight::INF,
                };
                arcs[id] = Some(([t, h], w, r));
            }
            "rot" => {
                let v = num(*tok.get(1).ok_or_else(|| err("rot needs a vertex".into()))?)? as usize;
                if v >= n || rot[v].is_some() {
                    return Err(err(format!("bad or repeated rotation for {v}")));
                }
                rot[v] = Some(tok[2..].iter().map(|s| num(s).map(|x| x as DartId)).collect::<Result<_>>()?);
            }
            "coord" => {
                if tok.len() != 4 {
                    return Err(err("coord needs vertex, x, y".into()));
                }
                let v = num(tok[1])? as usize;
                let x: f64 = tok[2].parse().map_err(|_| err("bad x".into()))?;
                let y: f64 = tok[3].parse().map_err(|_| err("bad y".into()))?;
                if v >= n || coords[v].is_some() || !x.is_finite() || !y.is_finite() {
                    return Err(err(format!("bad coordinate for {v}")));
                }
                coords[v] = Some([x, y]);
            }
            other => return Err(err(format!("unknown record `{other}`"))),
        }
    }
    let (n, _, hint) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
    let mut ends = Vec::with_capacity(arcs.len());
    let mut weights = Vec::with_capacity(2 * arcs.len());
    for (id, a) in arcs.into_iter().enumerate() {
        let (e, w, r) = a.ok_or(Error::Parse { line: 0, msg: format!("arc {id} missing") })?;
        ends.push(e);
        weights.push(w);
        weights.push(r);
    }
    let all_or_none = |k: usize, what: &str| -> Result<bool> {
        if k == 0 || k == n {
            Ok(k == n)
        } else {
            Err(Error::Parse { line: 0, msg: format!("{what} given for {k} of {n} vertices") })
        }
    };
    let has_rot = all_or_none(rot.iter().filter(|r| r.is_some()).count(), "rotations")?;
    let has_xy = all_or_none(coords.iter().filter(|c| c.is_some()).count(), "coordinates")?;
    let rot = has_rot.then(|| rot.into_iter().map(Option::unwrap).collect());
    let coords = has_xy.then(|| coords.into_iter().map(Option::unwrap).collect());
    assemble(n, ends, weights, rot, coords, hint)
}

pub fn write_graph(g: &PlanarGraph) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let hint = g.face_darts(g.infinite_face()).first().copied();
    match hint {
        Some(d) => writeln!(s, "pg {} {} {}", g.n(), g.m(), d).unwrap(),
        None => writeln!(s, "pg {} {} -", g.n(), g.m()).unwrap(),
    }
    for e in 0..g.m() as u32 {
        let [t, h] = g.ends(e);
        writeln!(s, "arc {e} {t} {h} {} {}", g.weight(2 * e), g.weight(2 * e + 1)).unwrap();
    }
    for v in 0..g.n() as u32 {
        write!(s, "rot {v}").unwrap();
        for d in g.out_darts(v) {
            write!(s, " {d}").unwrap();
        }
        s.push('\n');
    }
    if let Some(c) = g.coords() {
        for (v, [x, y]) in c.iter().enumerate() {
            writeln!(s, "coord {v} {x} {y}").unwrap();
        }
    }
    s
}
