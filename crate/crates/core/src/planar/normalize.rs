//! Degree reduction, face triangulation and tiebreak perturbation.

use super::{DartId, FaceId, PlanarGraph, VertexId};
use crate::error::{Error, Result};
use crate::weight::Weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Result of [`normalize`]. Original vertex `v` keeps id `v`; the extra
/// vertices of its expansion follow after the original ones.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub graph: PlanarGraph,
    pub hole: FaceId,
    /// Original vertex of each normalized vertex.
    pub origin: Vec<VertexId>,
}

/// Replaces every vertex of degree `k > 3` by a path of `k - 2` vertices
/// joined by zero-length edges, then triangulates every face except `hole`
/// with unusable chords. Usable degrees end up at most 3.
pub fn normalize(g: &PlanarGraph, hole: FaceId) -> Result<Normalized> {
    let (expanded, origin) = expand_degrees(g, hole)?;
    let hole_dart = g.face_darts(hole)[0];
    let hole = expanded.face_left(hole_dart);
    let graph = triangulate_faces(&expanded, hole)?;
    let hole = graph.face_left(hole_dart);
    Ok(Normalized { graph, hole, origin })
}

fn expand_degrees(g: &PlanarGraph, hole: FaceId) -> Result<(PlanarGraph, Vec<VertexId>)> {
    let n = g.n();
    let mut ends: Vec<[VertexId; 2]> = g.edge_ends().to_vec();
    let mut weights = g.weights().to_vec();
    let mut rotation: Vec<Vec<DartId>> = vec![Vec::new(); n];
    let mut origin: Vec<VertexId> = (0..n as u32).collect();
    let mut coords = g.coords().map(|c| c.to_vec());
    for v in 0..n as u32 {
        let rot = g.out_darts(v);
        let k = rot.len();
        if k <= 3 {
            rotation[v as usize] = rot.to_vec();
            continue;
        }
        // start at the hole wedge so the hole passes through a single path vertex
        let s = rot.iter().position(|&d| g.face_left(d) == hole).unwrap_or(0);
        let d: Vec<DartId> = (0..k).map(|i| rot[(s + i) % k]).collect();
        let mut path = vec![v];
        for _ in 1..k - 2 {
            path.push(origin.len() as VertexId);
            origin.push(v);
            rotation.push(Vec::new());
        }
        let mut links = Vec::new();
        for i in 0..k - 3 {
            let e = ends.len() as u32;
            ends.push([path[i], path[i + 1]]);
            weights.push(Weight::ZERO);
            weights.push(Weight::ZERO);
            links.push(e);
        }
        let set_tail = |ends: &mut Vec<[VertexId; 2]>, dart: DartId, t: VertexId| {
            ends[(dart >> 1) as usize][(dart & 1) as usize] = t;
        };
        for i in 0..k - 2 {
            let gi = path[i];
            let mut r = Vec::with_capacity(4);
            if i > 0 {
                r.push(2 * links[i - 1] + 1);
            }
            if i == 0 {
                r.push(d[0]);
                set_tail(&mut ends, d[0], gi);
            }
            let mine = if i == k - 3 { vec![d[k - 2], d[k - 1]] } else { vec![d[i + 1]] };
            for &x in &mine {
                r.push(x);
                set_tail(&mut ends, x, gi);
            }
            if i + 1 < k - 2 {
                r.push(2 * links[i]);
            }
            rotation[gi as usize] = r;
        }
        if let Some(c) = coords.as_mut() {
            let base = c[v as usize];
            for (i, &gi) in path.iter().enumerate().skip(1) {
                let owned: Vec<DartId> = if i == k - 3 { vec![d[k - 2], d[k - 1]] } else { vec![d[i + 1]] };
                let (mut dx, mut dy) = (0.0, 0.0);
                for x in owned {
                    let h = g.head(x) as usize;
                    let (ax, ay) = (c[h][0] - base[0], c[h][1] - base[1]);
                    let len = (ax * ax + ay * ay).sqrt().max(1e-12);
                    dx += ax / len;
                    dy += ay / len;
                }
                let len = (dx * dx + dy * dy).sqrt().max(1e-12);
                c.push([base[0] + 1e-3 * dx / len, base[1] + 1e-3 * dy / len]);
                debug_assert_eq!(c.len() - 1, gi as usize);
            }
        }
    }
    let hint = g.face_darts(hole)[0];
    let out = PlanarGraph::from_rotation(origin.len(), ends, weights, rotation, coords, Some(hint))?;
    Ok((out, origin))
}

/// Splits every face other than `keep` into triangles with chords whose both
/// directions are unusable. Chords follow the zig-zag order
/// `v2 vk, vk v3, v3 v(k-1), ...` around the face boundary.
pub fn triangulate_faces(g: &PlanarGraph, keep: FaceId) -> Result<PlanarGraph> {
    let mut ends = g.edge_ends().to_vec();
    let mut weights = g.weights().to_vec();
    // chords to insert after a face dart, keyed by that dart, with their order key
    let mut inserts: Vec<Vec<(usize, DartId)>> = vec![Vec::new(); g.num_darts()];
    for f in 0..g.num_faces() as FaceId {
        let k = g.face_len(f);
        if f == keep || k <= 3 {
            continue;
        }
        if !g.face_is_simple(f) {
            return Err(Error::Embedding(format!("face {f} repeats a vertex and cannot be triangulated")));
        }
        let fd = g.face_darts(f);
        let (mut l, mut r, mut step_left) = (1usize, k - 1, true);
        while r - l >= 2 {
            let e = ends.len() as u32;
            ends.push([g.tail(fd[l]), g.tail(fd[r])]);
            weights.push(Weight::INF);
            weights.push(Weight::INF);
            inserts[fd[l] as usize].push(((r + k - l) % k, 2 * e));
            inserts[fd[r] as usize].push(((l + k - r) % k, 2 * e + 1));
            if step_left {
                l += 1;
            } else {
                r -= 1;
            }
            step_left = !step_left;
        }
    }
    let rotation: Vec<Vec<DartId>> = (0..g.n() as u32)
        .map(|v| {
            let mut out = Vec::new();
            for &d in g.out_darts(v) {
                out.push(d);
                let ins = &mut inserts[d as usize];
                ins.sort_unstable();
                out.extend(ins.iter().map(|&(_, c)| c));
            }
            out
        })
        .collect();
    let hint = g.face_darts(keep)[0];
    PlanarGraph::from_rotation(g.n(), ends, weights, rotation, g.coords().map(|c| c.to_vec()), Some(hint))
}

/// Gives every usable dart a tiebreak drawn from `[1, 2^32)` by a seeded
/// stream indexed by dart id. Unusable darts stay `INF`.
pub fn perturb(g: &PlanarGraph, seed: u64) -> PlanarGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w: Vec<Weight> = g
        .weights()
        .iter()
        .map(|&w| {
            let tie = rng.random_range(1..(1u64 << 32));
            if w.is_inf() {
                w
            } else {
                Weight::new(w.len, tie)
            }
        })
        .collect();
    g.with_weights(w).expect("same length")
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::tests::square_grid;

    #[test]
    fn grid_normalizes_to_triangles_and_degree_three() {
        let g = square_grid(5);
        let nz = normalize(&g, g.infinite_face()).unwrap();
        let h = &nz.graph;
        assert_eq!(h.n(), 25 + 9);
        for v in 0..h.n() as u32 {
            assert!(h.usable_degree(v) <= 3, "vertex {v}");
        }
        for f in 0..h.num_faces() as u32 {
            if f != nz.hole {
                assert_eq!(h.face_len(f), 3);
            }
        }
        assert_eq!(h.face_len(nz.hole), 16);
        assert!(h.face_is_simple(nz.hole));
    }

    #[test]
    fn expansion_of_degree_five_uses_three_vertices() {
        // wheel with 5 spokes: hub degree 5
        let mut coords = vec![[0.0, 0.0]];
        let mut ends = Vec::new();
        for i in 0..5 {
            let a = i as f64 * std::f64::consts::TAU / 5.0;
            coords.push([a.cos(), a.sin()]);
            ends.push([0, i + 1]);
            ends.push([i + 1, (i + 1) % 5 + 1]);
        }
        let g = PlanarGraph::from_coords(coords, ends, vec![Weight::new(1, 0); 20], None).unwrap();
        let nz = normalize(&g, g.infinite_face()).unwrap();
        assert_eq!(nz.graph.n(), 6 + 2);
        assert_eq!(nz.origin[6..], [0, 0]);
    }

    #[test]
    fn perturb_is_seeded_and_positive() {
        let g = square_grid(3);
        let a = perturb(&g, 7);
        let b = perturb(&g, 7);
        let c = perturb(&g, 8);
        assert_eq!(a.weights(), b.weights());
        assert_ne!(a.weights(), c.weights());
        assert!(a.weights().iter().all(|w| w.tie >= 1 && w.len == 1));
    }
}
