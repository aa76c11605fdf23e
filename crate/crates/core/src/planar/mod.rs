//! Combinatorial embeddings of planar graphs.
//!
//! Edge `e` owns darts `2e` (tail to head) and `2e + 1` (head to tail). Each
//! dart carries its own weight; `Weight::INF` means the direction is unusable.
//! Rotations list the darts leaving a vertex in counterclockwise order.

mod io;
mod normalize;

pub use io::{read_graph, write_graph, GraphFile};
pub use normalize::{normalize, perturb, triangulate_faces, Normalized};

use crate::error::{Error, Result};
use crate::weight::Weight;

pub type VertexId = u32;
pub type EdgeId = u32;
pub type DartId = u32;
pub type FaceId = u32;

pub const NONE: u32 = u32::MAX;

#[inline]
pub fn twin(d: DartId) -> DartId {
    d ^ 1
}

#[inline]
pub fn edge_of(d: DartId) -> EdgeId {
    d >> 1
}

#[derive(Clone, Debug)]
pub struct PlanarGraph {
    ends: Vec<[VertexId; 2]>,
    weights: Vec<Weight>,
    rot_start: Vec<u32>,
    rot: Vec<DartId>,
    rot_pos: Vec<u32>,
    face_of: Vec<FaceId>,
    face_start: Vec<u32>,
    face_list: Vec<DartId>,
    coords: Option<Vec<[f64; 2]>>,
    infinite: FaceId,
}

impl PlanarGraph {
    /// Builds an embedding from explicit rotations.
    ///
    /// `infinite_hint` names a dart whose left face is the infinite face; when
    /// absent the face with the most darts is used (smallest id on ties).
    pub fn from_rotation(
        n: usize,
        ends: Vec<[VertexId; 2]>,
        weights: Vec<Weight>,
        rotation: Vec<Vec<DartId>>,
        coords: Option<Vec<[f64; 2]>>,
        infinite_hint: Option<DartId>,
    ) -> Result<Self> {
        let m = ends.len();
        if weights.len() != 2 * m {
            return Err(Error::Embedding(format!("{} weights for {} darts", weights.len(), 2 * m)));
        }
        if rotation.len() != n {
            return Err(Error::Embedding(format!("{} rotations for {} vertices", rotation.len(), n)));
        }
        if let Some(c) = &coords {
            if c.len() != n {
                return Err(Error::Embedding("coordinate count mismatch".into()));
            }
        }
        for (e, &[a, b]) in ends.iter().enumerate() {
            if a as usize >= n || b as usize >= n {
                return Err(Error::Embedding(format!("edge {e} has endpoint out of range")));
            }
        }
        let mut rot_start = Vec::with_capacity(n + 1);
        let mut rot = Vec::with_capacity(2 * m);
        let mut rot_pos = vec![NONE; 2 * m];
        rot_start.push(0);
        for (v, list) in rotation.iter().enumerate() {
            for &d in list {
                let di = d as usize;
                if di >= 2 * m {
                    return Err(Error::Embedding(format!("rotation of {v} names unknown dart {d}")));
                }
                if rot_pos[di] != NONE {
                    return Err(Error::Embedding(format!("dart {d} listed twice")));
                }
                let tail = ends[di >> 1][di & 1];
                if tail as usize != v {
                    return Err(Error::Embedding(format!("dart {d} does not leave vertex {v}")));
                }
                rot_pos[di] = rot.len() as u32;
                rot.push(d);
            }
            rot_start.push(rot.len() as u32);
        }
        if let Some(d) = rot_pos.iter().position(|&p| p == NONE) {
            return Err(Error::Embedding(format!("dart {d} missing from rotations")));
        }
        let mut g = PlanarGraph {
            ends,
            weights,
            rot_start,
            rot,
            rot_pos,
            face_of: Vec::new(),
            face_start: Vec::new(),
            face_list: Vec::new(),
            coords,
            infinite: 0,
        };
        g.trace_faces();
        g.check_euler()?;
        g.infinite = match infinite_hint {
            Some(d) if (d as usize) < 2 * m => g.face_of[d as usize],
            Some(d) => return Err(Error::Embedding(format!("infinite-face hint {d} out of range"))),
            None => g.largest_face(),
        };
        Ok(g)
    }

    /// Builds an embedding whose rotations are the counterclockwise angular
    /// order of the straight-line drawing given by `coords`.
    pub fn from_coords(
        coords: Vec<[f64; 2]>,
        ends: Vec<[VertexId; 2]>,
        weights: Vec<Weight>,
        infinite_hint: Option<DartId>,
    ) -> Result<Self> {
        let n = coords.len();
        let mut rotation: Vec<Vec<DartId>> = vec![Vec::new(); n];
        for (e, &[a, b]) in ends.iter().enumerate() {
            if a as usize >= n || b as usize >= n {
                return Err(Error::Embedding(format!("edge {e} has endpoint out of range")));
            }
            rotation[a as usize].push(2 * e as u32);
            rotation[b as usize].push(2 * e as u32 + 1);
        }
        for (v, list) in rotation.iter_mut().enumerate() {
            let [x0, y0] = coords[v];
            list.sort_by(|&p, &q| {
                let ang = |d: DartId| {
                    let h = ends[(d >> 1) as usize][1 - (d & 1) as usize] as usize;
                    (coords[h][1] - y0).atan2(coords[h][0] - x0)
                };
                ang(p).total_cmp(&ang(q)).then(p.cmp(&q))
            });
        }
        Self::from_rotation(n, ends, weights, rotation, Some(coords), infinite_hint)
    }

    fn trace_faces(&mut self) {
        let nd = self.rot.len();
        self.face_of = vec![NONE; nd];
        self.face_start = vec![0];
        self.face_list = Vec::with_capacity(nd);
        let mut f = 0u32;
        for start in 0..nd as u32 {
            if self.face_of[start as usize] != NONE {
                continue;
            }
            let mut d = start;
            loop {
                self.face_of[d as usize] = f;
                self.face_list.push(d);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            self.face_start.push(self.face_list.len() as u32);
            f += 1;
        }
    }

    fn check_euler(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::Embedding("empty graph".into()));
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in self.out_darts(v) {
                let h = self.head(d);
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        if count != n {
            return Err(Error::Embedding(format!("graph is disconnected ({count} of {n} vertices reachable)")));
        }
        let (m, f) = (self.m() as i64, self.num_faces() as i64);
        if m > 0 && n as i64 - m + f != 2 {
            return Err(Error::Embedding(format!("rotation system is not planar: V - E + F = {}", n as i64 - m + f)));
        }
        Ok(())
    }

    fn largest_face(&self) -> FaceId {
        (0..self.num_faces() as u32)
            .max_by(|&a, &b| self.face_len(a).cmp(&self.face_len(b)).then(b.cmp(&a)))
            .unwrap_or(0)
    }

    pub fn n(&self) -> usize {
        self.rot_start.len() - 1
    }
    pub fn m(&self) -> usize {
        self.ends.len()
    }
    pub fn num_darts(&self) -> usize {
        self.rot.len()
    }
    pub fn num_faces(&self) -> usize {
        self.face_start.len() - 1
    }
    pub fn infinite_face(&self) -> FaceId {
        self.infinite
    }
    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }
    pub fn ends(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[e as usize]
    }
    #[inline]
    pub fn tail(&self, d: DartId) -> VertexId {
        self.ends[(d >> 1) as usize][(d & 1) as usize]
    }
    #[inline]
    pub fn head(&self, d: DartId) -> VertexId {
        self.ends[(d >> 1) as usize][1 - (d & 1) as usize]
    }
    #[inline]
    pub fn weight(&self, d: DartId) -> Weight {
        self.weights[d as usize]
    }
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }
    #[inline]
    pub fn usable(&self, d: DartId) -> bool {
        !self.weights[d as usize].is_inf()
    }
    /// True if at least one direction of edge `e` is usable.
    pub fn edge_usable(&self, e: EdgeId) -> bool {
        self.usable(2 * e) || self.usable(2 * e + 1)
    }
    #[inline]
    pub fn out_darts(&self, v: VertexId) -> &[DartId] {
        let v = v as usize;
        &self.rot[self.rot_start[v] as usize..self.rot_start[v + 1] as usize]
    }
    pub fn degree(&self, v: VertexId) -> usize {
        self.out_darts(v).len()
    }
    /// Number of edges at `v` with at least one usable direction.
    pub fn usable_degree(&self, v: VertexId) -> usize {
        self.out_darts(v).iter().filter(|&&d| self.edge_usable(edge_of(d))).count()
    }
    /// Position of `d` within the rotation of its tail.
    pub fn rot_index(&self, d: DartId) -> usize {
        let t = self.tail(d) as usize;
        (self.rot_pos[d as usize] - self.rot_start[t]) as usize
    }
    #[inline]
    pub fn ccw_next(&self, d: DartId) -> DartId {
        let t = self.tail(d) as usize;
        let (s, e) = (self.rot_start[t], self.rot_start[t + 1]);
        let p = self.rot_pos[d as usize] + 1;
        self.rot[if p == e { s } else { p } as usize]
    }
    #[inline]
    pub fn ccw_prev(&self, d: DartId) -> DartId {
        let t = self.tail(d) as usize;
        let (s, e) = (self.rot_start[t], self.rot_start[t + 1]);
        let p = self.rot_pos[d as usize];
        self.rot[if p == s { e - 1 } else { p - 1 } as usize]
    }
    /// Successor of `d` on the boundary of the face to its left.
    #[inline]
    pub fn next_in_face(&self, d: DartId) -> DartId {
        self.ccw_prev(twin(d))
    }
    #[inline]
    pub fn face_left(&self, d: DartId) -> FaceId {
        self.face_of[d as usize]
    }
    #[inline]
    pub fn face_right(&self, d: DartId) -> FaceId {
        self.face_of[twin(d) as usize]
    }
    pub fn face_darts(&self, f: FaceId) -> &[DartId] {
        let f = f as usize;
        &self.face_list[self.face_start[f] as usize..self.face_start[f + 1] as usize]
    }
    pub fn face_len(&self, f: FaceId) -> usize {
        self.face_darts(f).len()
    }
    pub fn face_vertices(&self, f: FaceId) -> impl Iterator<Item = VertexId> + '_ {
        self.face_darts(f).iter().map(move |&d| self.tail(d))
    }
    /// Dual edge of `e` as (face left of dart `2e`, face right of dart `2e`).
    pub fn dual_ends(&self, e: EdgeId) -> [FaceId; 2] {
        [self.face_left(2 * e), self.face_right(2 * e)]
    }
    /// First dart from `u` to `v`, if any.
    pub fn dart_between(&self, u: VertexId, v: VertexId) -> Option<DartId> {
        self.out_darts(u).iter().copied().find(|&d| self.head(d) == v)
    }
    /// Dart leaving `v` whose left face is `f`.
    pub fn corner_dart(&self, v: VertexId, f: FaceId) -> Option<DartId> {
        self.out_darts(v).iter().copied().find(|&d| self.face_left(d) == f)
    }
    /// Faces incident to `v`, one per wedge.
    pub fn faces_around(&self, v: VertexId) -> impl Iterator<Item = FaceId> + '_ {
        self.out_darts(v).iter().map(move |&d| self.face_left(d))
    }
    /// True if the boundary walk of `f` visits each vertex at most once.
    pub fn face_is_simple(&self, f: FaceId) -> bool {
        let mut vs: Vec<VertexId> = self.face_vertices(f).collect();
        let k = vs.len();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == k
    }
    pub fn rotation(&self) -> Vec<Vec<DartId>> {
        (0..self.n() as u32).map(|v| self.out_darts(v).to_vec()).collect()
    }
    pub fn edge_ends(&self) -> &[[VertexId; 2]] {
        &self.ends
    }
    /// Same embedding with replaced dart weights.
    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != self.weights.len() {
            return Err(Error::Invalid("weight vector length mismatch".into()));
        }
        let mut g = self.clone();
        g.weights = weights;
        Ok(g)
    }
    /// Same embedding with another infinite face.
    pub fn with_infinite_face(&self, f: FaceId) -> Self {
        let mut g = self.clone();
        g.infinite = f;
        g
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn square_grid(k: usize) -> PlanarGraph {
        let mut coords = Vec::new();
        for y in 0..k {
            for x in 0..k {
                coords.push([x as f64, y as f64]);
            }
        }
        let mut ends = Vec::new();
        for y in 0..k {
            for x in 0..k {
                let v = (y * k + x) as u32;
                if x + 1 < k {
                    ends.push([v, v + 1]);
                }
                if y + 1 < k {
                    ends.push([v, v + k as u32]);
                }
            }
        }
        let w = vec![Weight::new(1, 0); 2 * ends.len()];
        PlanarGraph::from_coords(coords, ends, w, None).unwrap()
    }

    #[test]
    fn grid_faces_and_euler() {
        let g = square_grid(4);
        assert_eq!(g.n(), 16);
        assert_eq!(g.m(), 24);
        assert_eq!(g.num_faces(), 10);
        assert_eq!(g.face_len(g.infinite_face()), 12);
        for f in 0..g.num_faces() as u32 {
            if f != g.infinite_face() {
                assert_eq!(g.face_len(f), 4);
            }
        }
    }

    #[test]
    fn ccw_next_and_prev_invert() {
        let g = square_grid(3);
        for d in 0..g.num_darts() as u32 {
            assert_eq!(g.ccw_prev(g.ccw_next(d)), d);
            assert_eq!(g.tail(g.next_in_face(d)), g.head(d));
        }
    }

    #[test]
    fn faces_are_on_the_left() {
        // unit square 0(0,0) 1(1,0) 2(1,1) 3(0,1); dart 0->1 has the bounded face on its left
        let coords = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let ends = vec![[0, 1], [1, 2], [2, 3], [3, 0]];
        let g = PlanarGraph::from_coords(coords, ends, vec![Weight::new(1, 0); 8], None).unwrap();
        assert_eq!(g.num_faces(), 2);
        let inner = g.face_left(0);
        let tails: Vec<_> = g.face_vertices(inner).collect();
        assert_eq!(tails.len(), 4);
        assert_eq!(g.face_darts(inner).iter().map(|&d| d & 1).sum::<u32>(), 0);
    }

    #[test]
    fn rejects_non_planar_rotation() {
        // K4 with a scrambled rotation at one vertex gives the wrong face count
        let ends = vec![[0, 1], [0, 2], [0, 3], [1, 2], [2, 3], [3, 1]];
        let rot = vec![vec![0, 4, 2], vec![1, 6, 11], vec![3, 7, 8], vec![5, 9, 10]];
        let r = PlanarGraph::from_rotation(4, ends, vec![Weight::new(1, 0); 12], rot, None, None);
        assert!(r.is_err());
    }

    #[test]
    fn rejects_disconnected() {
        let ends = vec![[0, 1], [2, 3]];
        let rot = vec![vec![0], vec![1], vec![2], vec![3]];
        let r = PlanarGraph::from_rotation(4, ends, vec![Weight::new(1, 0); 4], rot, None, None);
        assert!(matches!(r, Err(Error::Embedding(_))));
    }
}
