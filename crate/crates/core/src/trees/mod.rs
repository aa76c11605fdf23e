//! Shortest-path trees, cotrees, fundamental cycles and edge-centroid
//! decompositions.

mod centroid;
mod index;

pub use centroid::{CentroidNode, CentroidTree};
pub use index::{csr, RootedIndex};

use crate::error::{Error, Result};
use crate::planar::{edge_of, twin, DartId, EdgeId, FaceId, PlanarGraph, VertexId, NONE};
use crate::weight::Weight;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Dijkstra over usable darts. Returns distances (`INF` if unreachable) and
/// the dart entering each vertex on its shortest path (`NONE` for the root
/// and unreachable vertices).
pub fn dijkstra(g: &PlanarGraph, root: VertexId) -> (Vec<Weight>, Vec<DartId>) {
    let n = g.n();
    let mut dist = vec![Weight::INF; n];
    let mut par = vec![NONE; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[root as usize] = Weight::ZERO;
    heap.push(Reverse((Weight::ZERO, root)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v as usize] {
            continue;
        }
        done[v as usize] = true;
        for &a in g.out_darts(v) {
            let w = g.weight(a);
            if w.is_inf() {
                continue;
            }
            let h = g.head(a);
            let nd = d + w;
            if nd < dist[h as usize] {
                dist[h as usize] = nd;
                par[h as usize] = a;
                heap.push(Reverse((nd, h)));
            }
        }
    }
    (dist, par)
}

/// A rooted spanning tree of the primal graph with its children ordered
/// counterclockwise, starting right after a reference dart at every vertex.
/// The reference is the dart back to the parent, and at the root the given
/// `root_ref` (typically the dart whose left face is the hole).
#[derive(Clone, Debug)]
pub struct RootedTree {
    root: VertexId,
    root_ref: DartId,
    dist: Vec<Weight>,
    parent_dart: Vec<DartId>,
    index: RootedIndex,
}

impl RootedTree {
    pub fn shortest_path_tree(g: &PlanarGraph, root: VertexId, root_ref: Option<DartId>) -> Self {
        let (dist, par) = dijkstra(g, root);
        Self::from_parent_darts(g, root, root_ref, dist, par)
    }

    pub fn from_parent_darts(
        g: &PlanarGraph,
        root: VertexId,
        root_ref: Option<DartId>,
        dist: Vec<Weight>,
        parent_dart: Vec<DartId>,
    ) -> Self {
        let n = g.n();
        let root_ref = root_ref.unwrap_or_else(|| g.out_darts(root).first().copied().unwrap_or(NONE));
        let reference = |v: VertexId| if v == root { root_ref } else { twin(parent_dart[v as usize]) };
        let (start, list) = csr(n, |v| {
            let mut out = Vec::new();
            if v == root || parent_dart[v as usize] != NONE {
                let r = reference(v);
                if r != NONE {
                    let mut d = r;
                    for _ in 0..g.degree(v) {
                        d = g.ccw_next(d);
                        let h = g.head(d);
                        if h != root && parent_dart[h as usize] == d {
                            out.push(h);
                        }
                    }
                }
            }
            out
        });
        let parent: Vec<u32> =
            (0..n).map(|v| if parent_dart[v] == NONE { NONE } else { g.tail(parent_dart[v]) }).collect();
        let index = RootedIndex::build(root, parent, &start, &list);
        RootedTree { root, root_ref, dist, parent_dart, index }
    }

    pub fn root(&self) -> VertexId {
        self.root
    }
    pub fn root_ref(&self) -> DartId {
        self.root_ref
    }
    #[inline]
    pub fn dist(&self, v: VertexId) -> Weight {
        self.dist[v as usize]
    }
    pub fn dists(&self) -> &[Weight] {
        &self.dist
    }
    #[inline]
    pub fn parent_dart(&self, v: VertexId) -> DartId {
        self.parent_dart[v as usize]
    }
    pub fn parent(&self, v: VertexId) -> VertexId {
        self.index.parent(v)
    }
    pub fn index(&self) -> &RootedIndex {
        &self.index
    }
    pub fn spans(&self) -> bool {
        (0..self.index.len() as u32).all(|v| self.index.contains(v))
    }
    pub fn is_tree_edge(&self, g: &PlanarGraph, e: EdgeId) -> bool {
        let [a, b] = g.ends(e);
        self.parent_dart[b as usize] == 2 * e || self.parent_dart[a as usize] == 2 * e + 1
    }
    /// Reference dart at `v`: children are ordered counterclockwise after it.
    pub fn reference(&self, v: VertexId) -> DartId {
        if v == self.root {
            self.root_ref
        } else {
            twin(self.parent_dart[v as usize])
        }
    }
    /// Vertices from `v` up to the root.
    pub fn path_to_root(&self, mut v: VertexId) -> Vec<VertexId> {
        let mut out = vec![v];
        while v != self.root {
            v = self.parent(v);
            out.push(v);
        }
        out
    }
    /// Preorder number separating the subtrees of `y` that come before the
    /// corner `(a, ccw_next(a))` at `y` from those after it: a proper
    /// descendant `w` of `y` lies before the corner iff `pre(w) < split`.
    pub fn corner_split(&self, g: &PlanarGraph, y: VertexId, a: DartId) -> u32 {
        let deg = g.degree(y);
        let r = self.reference(y);
        let pos = |d: DartId| (g.rot_index(d) + 2 * deg - g.rot_index(r) - 1) % deg;
        let pa = pos(a);
        let mut best: Option<(usize, VertexId)> = None;
        for &d in g.out_darts(y) {
            let h = g.head(d);
            if h != self.root && self.parent_dart[h as usize] == d {
                let p = pos(d);
                if p > pa && best.is_none_or(|(bp, _)| p < bp) {
                    best = Some((p, h));
                }
            }
        }
        match best {
            Some((_, h)) => self.index.pre(h),
            None => self.index.pre_end(y),
        }
    }
    /// Cycle formed by non-tree edge `e` and the tree path between its ends,
    /// as darts starting with `2e`.
    pub fn fundamental_cycle(&self, g: &PlanarGraph, e: EdgeId) -> Vec<DartId> {
        let [a, b] = g.ends(e);
        let l = self.index.lca(a, b);
        let mut out = vec![2 * e];
        // b up to l, walked against parent darts
        let mut v = b;
        while v != l {
            out.push(twin(self.parent_dart[v as usize]));
            v = self.parent(v);
        }
        let mut down = Vec::new();
        let mut v = a;
        while v != l {
            down.push(self.parent_dart[v as usize]);
            v = self.parent(v);
        }
        out.extend(down.into_iter().rev());
        out
    }
}

/// Spanning tree of the dual formed by the edges not in a primal spanning
/// tree, rooted at a chosen face.
#[derive(Clone, Debug)]
pub struct Cotree {
    root: FaceId,
    parent_edge: Vec<EdgeId>,
    index: RootedIndex,
}

impl Cotree {
    pub fn build(g: &PlanarGraph, tree: &RootedTree, root: FaceId) -> Result<Self> {
        if !tree.spans() {
            return Err(Error::Invalid("cotree needs a spanning primal tree".into()));
        }
        let nf = g.num_faces();
        let in_tree: Vec<bool> = (0..g.m() as u32).map(|e| tree.is_tree_edge(g, e)).collect();
        let mut parent_edge = vec![NONE; nf];
        let mut seen = vec![false; nf];
        seen[root as usize] = true;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(f) = stack.pop() {
            for &d in g.face_darts(f) {
                let e = edge_of(d);
                if in_tree[e as usize] {
                    continue;
                }
                let o = g.face_right(d);
                if !seen[o as usize] {
                    seen[o as usize] = true;
                    parent_edge[o as usize] = e;
                    reached += 1;
                    stack.push(o);
                }
            }
        }
        if reached != nf {
            return Err(Error::Invalid("dual of the non-tree edges is disconnected".into()));
        }
        let (start, list) = csr(nf, |f| {
            let fd = g.face_darts(f);
            let k = fd.len();
            let s = if f == root { 0 } else { fd.iter().position(|&d| edge_of(d) == parent_edge[f as usize]).unwrap() + 1 };
            (0..k)
                .map(move |i| fd[(s + i) % k])
                .filter(|&d| {
                    let o = g.face_right(d);
                    o != f && o != root && parent_edge[o as usize] == edge_of(d)
                })
                .map(|d| g.face_right(d))
                .collect::<Vec<_>>()
        });
        let parent: Vec<u32> = (0..nf)
            .map(|f| {
                let e = parent_edge[f];
                if e == NONE {
                    NONE
                } else {
                    let [l, r] = g.dual_ends(e);
                    if l as usize == f {
                        r
                    } else {
                        l
                    }
                }
            })
            .collect();
        let index = RootedIndex::build(root, parent, &start, &list);
        Ok(Cotree { root, parent_edge, index })
    }

    pub fn root(&self) -> FaceId {
        self.root
    }
    #[inline]
    pub fn parent_edge(&self, f: FaceId) -> EdgeId {
        self.parent_edge[f as usize]
    }
    pub fn index(&self) -> &RootedIndex {
        &self.index
    }
    /// The `i`-th dual edge on the path from `start` toward the root.
    pub fn path_edge(&self, start: FaceId, i: u32) -> EdgeId {
        let f = self.index.level_ancestor(start, self.index.depth(start) - i);
        self.parent_edge[f as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::tests::square_grid;
    use crate::planar::{normalize, perturb};

    #[test]
    fn dijkstra_on_grid_is_manhattan() {
        let g = square_grid(6);
        let (d, _) = dijkstra(&g, 0);
        for y in 0..6u64 {
            for x in 0..6u64 {
                assert_eq!(d[(y * 6 + x) as usize].len, x + y);
            }
        }
    }

    #[test]
    fn cotree_spans_all_faces() {
        let g = square_grid(7);
        let nz = normalize(&g, g.infinite_face()).unwrap();
        let h = perturb(&nz.graph, 3);
        let t = RootedTree::shortest_path_tree(&h, 0, None);
        assert!(t.spans());
        let c = Cotree::build(&h, &t, nz.hole).unwrap();
        let tree_edges = (0..h.m() as u32).filter(|&e| t.is_tree_edge(&h, e)).count();
        assert_eq!(tree_edges, h.n() - 1);
        assert_eq!(h.m() - tree_edges, h.num_faces() - 1);
        for f in 0..h.num_faces() as u32 {
            assert!(c.index().contains(f));
        }
    }

    #[test]
    fn fundamental_cycle_closes() {
        let g = perturb(&square_grid(5), 1);
        let t = RootedTree::shortest_path_tree(&g, 12, None);
        for e in 0..g.m() as u32 {
            if t.is_tree_edge(&g, e) {
                continue;
            }
            let c = t.fundamental_cycle(&g, e);
            for w in c.windows(2) {
                assert_eq!(g.head(w[0]), g.tail(w[1]));
            }
            assert_eq!(g.head(*c.last().unwrap()), g.tail(c[0]));
        }
    }
}
