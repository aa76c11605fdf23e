//! Single-level r-division by axis-aligned blocks.
//!
//! Faces joined by edges that are unusable in both directions (triangulation
//! chords) form one unit, so every unit is an original face. Units are binned
//! into square blocks by centroid; each block is then carved into regions
//! that stay closed disks as they grow, which keeps every region boundary a
//! simple cycle.

use crate::error::{Error, Result};
use crate::planar::{twin, DartId, FaceId, PlanarGraph, VertexId, NONE};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub id: u32,
    /// Sorted face ids.
    pub faces: Vec<FaceId>,
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
    /// Outline darts with the region on their left, in walking order.
    pub outline: Vec<DartId>,
    /// Vertices shared with another region, in outline order.
    pub boundary: Vec<VertexId>,
}

impl Region {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
    pub fn local(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

#[derive(Clone, Debug)]
pub struct Division {
    pub regions: Vec<Region>,
    /// Region of each face; `NONE` for the infinite face.
    pub face_region: Vec<u32>,
    /// Lowest-numbered region containing each vertex.
    pub home: Vec<u32>,
}

impl Division {
    /// Rebuilds the lookup arrays from a region list.
    pub fn from_regions(g: &PlanarGraph, regions: Vec<Region>) -> Result<Division> {
        let mut face_region = vec![NONE; g.num_faces()];
        let mut home = vec![NONE; g.n()];
        for (i, r) in regions.iter().enumerate() {
            if r.id != i as u32 {
                return Err(Error::Format(format!("region {i} carries id {}", r.id)));
            }
            for &f in &r.faces {
                let slot = face_region.get_mut(f as usize).ok_or_else(|| Error::Format(format!("face {f} out of range")))?;
                *slot = r.id;
            }
            for &v in &r.vertices {
                let slot = home.get_mut(v as usize).ok_or_else(|| Error::Format(format!("vertex {v} out of range")))?;
                if *slot == NONE {
                    *slot = r.id;
                }
            }
        }
        Ok(Division { regions, face_region, home })
    }
}

struct Units {
    of_face: Vec<u32>,
    faces: Vec<Vec<FaceId>>,
}

fn find(p: &mut [u32], mut x: u32) -> u32 {
    while p[x as usize] != x {
        p[x as usize] = p[p[x as usize] as usize];
        x = p[x as usize];
    }
    x
}

fn units(g: &PlanarGraph) -> Units {
    let inf = g.infinite_face();
    let nf = g.num_faces();
    let mut p: Vec<u32> = (0..nf as u32).collect();
    for e in 0..g.m() as u32 {
        if g.edge_usable(e) {
            continue;
        }
        let (a, b) = (g.face_left(2 * e), g.face_right(2 * e));
        if a == inf || b == inf {
            continue;
        }
        let (ra, rb) = (find(&mut p, a), find(&mut p, b));
        if ra != rb {
            p[ra.max(rb) as usize] = ra.min(rb);
        }
    }
    let mut of_face = vec![NONE; nf];
    let mut faces: Vec<Vec<FaceId>> = Vec::new();
    let mut id_of_root = vec![NONE; nf];
    for f in 0..nf as u32 {
        if f == inf {
            continue;
        }
        let r = find(&mut p, f) as usize;
        if id_of_root[r] == NONE {
            id_of_root[r] = faces.len() as u32;
            faces.push(Vec::new());
        }
        of_face[f as usize] = id_of_root[r];
        faces[id_of_root[r] as usize].push(f);
    }
    Units { of_face, faces }
}

/// Walks the outline of a face set given a membership test, starting at the
/// smallest outline dart. Returns `None` unless the outline is one cycle
/// through distinct vertices.
fn outline(g: &PlanarGraph, faces: &[FaceId], inside: impl Fn(FaceId) -> bool) -> Option<Vec<DartId>> {
    let mut darts: Vec<DartId> = faces
        .iter()
        .flat_map(|&f| g.face_darts(f).iter().copied())
        .filter(|&d| !inside(g.face_right(d)))
        .collect();
    darts.sort_unstable();
    let start = *darts.first()?;
    let mut walk = vec![start];
    let mut d = start;
    loop {
        let mut nd = g.next_in_face(d);
        while inside(g.face_right(nd)) {
            nd = g.next_in_face(twin(nd));
        }
        if nd == start {
            break;
        }
        walk.push(nd);
        if walk.len() > darts.len() {
            return None;
        }
        d = nd;
    }
    if walk.len() != darts.len() {
        return None;
    }
    let mut vs: Vec<VertexId> = walk.iter().map(|&d| g.tail(d)).collect();
    vs.sort_unstable();
    vs.dedup();
    (vs.len() == walk.len()).then_some(walk)
}

/// Splits `g` into regions of about `r` original faces each.
pub fn build_r_division(g: &PlanarGraph, r: usize) -> Result<Division> {
    let err = |msg: String| Error::Region { region: NONE, msg };
    let coords = g.coords().ok_or_else(|| err("r-division needs vertex coordinates".into()))?;
    if r == 0 {
        return Err(err("r must be positive".into()));
    }
    let u = units(g);
    let nu = u.faces.len();
    let centroid = |faces: &[FaceId]| {
        let (mut x, mut y) = (0.0, 0.0);
        for &f in faces {
            let k = g.face_len(f) as f64;
            for v in g.face_vertices(f) {
                x += coords[v as usize][0] / k;
                y += coords[v as usize][1] / k;
            }
        }
        [x / faces.len() as f64, y / faces.len() as f64]
    };
    let cs: Vec<[f64; 2]> = u.faces.iter().map(|f| centroid(f)).collect();
    let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
    for c in coords {
        for i in 0..2 {
            lo[i] = lo[i].min(c[i]);
            hi[i] = hi[i].max(c[i]);
        }
    }
    let area = (hi[0] - lo[0]) * (hi[1] - lo[1]);
    let block_of: Vec<(usize, usize)> = if r >= nu || area <= 0.0 {
        vec![(0, 0); nu]
    } else {
        let side = (r as f64 * area / nu as f64).sqrt();
        cs.iter().map(|c| (((c[1] - lo[1]) / side) as usize, ((c[0] - lo[0]) / side) as usize)).collect()
    };
    let mut order: Vec<u32> = (0..nu as u32).collect();
    order.sort_by_key(|&i| (block_of[i as usize], i));

    let mut face_region = vec![NONE; g.num_faces()];
    let mut unit_region = vec![NONE; nu];
    let mut vmark = vec![NONE; g.n()];
    let mut unit_outline: Vec<Option<Vec<DartId>>> = vec![None; nu];
    let mut regions_faces: Vec<Vec<FaceId>> = Vec::new();
    for &seed in &order {
        if unit_region[seed as usize] != NONE {
            continue;
        }
        let rid = regions_faces.len() as u32;
        let block = block_of[seed as usize];
        let mut members: Vec<FaceId> = Vec::new();
        let add = |x: u32, members: &mut Vec<FaceId>, unit_region: &mut [u32], face_region: &mut [u32], vmark: &mut [u32]| {
            unit_region[x as usize] = rid;
            for &f in &u.faces[x as usize] {
                face_region[f as usize] = rid;
                members.push(f);
                for v in g.face_vertices(f) {
                    vmark[v as usize] = rid;
                }
            }
        };
        add(seed, &mut members, &mut unit_region, &mut face_region, &mut vmark);
        let mut queue: VecDeque<u32> = VecDeque::new();
        let push_neighbors = |x: u32, queue: &mut VecDeque<u32>, face_region: &[u32]| {
            for &f in &u.faces[x as usize] {
                for &d in g.face_darts(f) {
                    let h = g.face_right(d);
                    let y = u.of_face[h as usize];
                    if y != NONE && y != x && face_region[h as usize] == NONE && block_of[y as usize] == block {
                        queue.push_back(y);
                    }
                }
            }
        };
        push_neighbors(seed, &mut queue, &face_region);
        while let Some(x) = queue.pop_front() {
            if unit_region[x as usize] != NONE {
                continue;
            }
            let ol = unit_outline[x as usize].get_or_insert_with(|| {
                let fs = &u.faces[x as usize];
                outline(g, fs, |f| f != NONE && u.of_face[f as usize] == x).unwrap_or_default()
            });
            if ol.is_empty() || !keeps_disk(g, ol, &face_region, &vmark, rid) {
                continue;
            }
            add(x, &mut members, &mut unit_region, &mut face_region, &mut vmark);
            push_neighbors(x, &mut queue, &face_region);
        }
        members.sort_unstable();
        regions_faces.push(members);
    }

    let mut regions = Vec::with_capacity(regions_faces.len());
    let mut home = vec![NONE; g.n()];
    for (rid, faces) in regions_faces.into_iter().enumerate() {
        let rid = rid as u32;
        let ol = outline(g, &faces, |f| f != NONE && face_region[f as usize] == rid).ok_or(Error::Region {
            region: rid,
            msg: "outline is not a simple cycle".into(),
        })?;
        let mut vertices: Vec<VertexId> = faces.iter().flat_map(|&f| g.face_vertices(f)).collect();
        vertices.sort_unstable();
        vertices.dedup();
        for &v in &vertices {
            if home[v as usize] == NONE {
                home[v as usize] = rid;
            }
        }
        let inf = g.infinite_face();
        let boundary = ol
            .iter()
            .map(|&d| g.tail(d))
            .filter(|&v| g.faces_around(v).any(|f| f != inf && face_region[f as usize] != rid))
            .collect();
        regions.push(Region { id: rid, faces, vertices, outline: ol, boundary });
    }
    Ok(Division { regions, face_region, home })
}

/// True if adding a unit with outline `ol` to region `rid` leaves a disk:
/// the outline meets the region in one proper run of edges and touches no
/// other region vertex.
fn keeps_disk(g: &PlanarGraph, ol: &[DartId], face_region: &[u32], vmark: &[u32], rid: u32) -> bool {
    let k = ol.len();
    let shared: Vec<bool> = ol
        .iter()
        .map(|&d| {
            let f = g.face_right(d);
            f != NONE && face_region[f as usize] == rid
        })
        .collect();
    let n_shared = shared.iter().filter(|&&s| s).count();
    if n_shared == 0 || n_shared == k {
        return false;
    }
    let starts: Vec<usize> = (0..k).filter(|&i| shared[i] && !shared[(i + k - 1) % k]).collect();
    if starts.len() != 1 {
        return false;
    }
    let i = starts[0];
    // vertices strictly outside the run: heads of ol[i + n_shared .. i + k - 1]
    (n_shared..k - 1).all(|j| {
        let v = g.head(ol[(i + j) % k]);
        vmark[v as usize] != rid
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{generate, Kind};

    fn check(d: &Division, g: &PlanarGraph) {
        let inf = g.infinite_face();
        for f in 0..g.num_faces() as u32 {
            assert_eq!(f == inf, d.face_region[f as usize] == NONE);
        }
        for e in 0..g.m() as u32 {
            let (a, b) = (g.face_left(2 * e), g.face_right(2 * e));
            if a != inf && b != inf && d.face_region[a as usize] != d.face_region[b as usize] {
                for v in g.ends(e) {
                    for rid in [d.face_region[a as usize], d.face_region[b as usize]] {
                        assert!(d.regions[rid as usize].boundary.contains(&v));
                    }
                }
            }
        }
    }

    #[test]
    fn grid_blocks() {
        let inst = generate(Kind::Grid { rows: 16, cols: 16 }, 3).unwrap();
        let d = build_r_division(&inst.graph, 16).unwrap();
        assert_eq!(d.regions.len(), 16);
        check(&d, &inst.graph);
        // the outline of an inner 4x4 block passes 16 lattice points
        let inner: Vec<&Region> = d.regions.iter().filter(|r| r.boundary.len() == r.outline.len()).collect();
        assert!(!inner.is_empty());
        for r in inner {
            let mut orig: Vec<VertexId> = r.outline.iter().map(|&x| inst.origin[inst.graph.tail(x) as usize]).collect();
            orig.sort_unstable();
            orig.dedup();
            assert_eq!(orig.len(), 16);
        }
    }

    #[test]
    fn whole_graph_when_r_is_large() {
        let inst = generate(Kind::Grid { rows: 5, cols: 5 }, 1).unwrap();
        let d = build_r_division(&inst.graph, inst.n()).unwrap();
        assert_eq!(d.regions.len(), 1);
        assert!(d.regions[0].boundary.is_empty());
    }

    #[test]
    fn triangulation_regions_are_disks() {
        for seed in 0..5 {
            let inst = generate(Kind::RandomTriangulation { points: 600, hull: 20 }, seed).unwrap();
            let d = build_r_division(&inst.graph, 64).unwrap();
            assert!(d.regions.len() > 5);
            check(&d, &inst.graph);
        }
    }
}
