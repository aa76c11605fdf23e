//! Shortest-path trees rooted at every vertex of one face (the hole).
//!
//! Trees are stored explicitly, one per hole vertex, and built on first use.
//! The dual parts (cotree, centroid decomposition) are built on demand as
//! well and can be dropped with [`Mssp::release_dual`] once no longer needed.

use crate::error::{Error, Result};
use crate::planar::{edge_of, DartId, EdgeId, FaceId, PlanarGraph, VertexId, NONE};
use crate::trees::{CentroidTree, Cotree, RootedTree};
use crate::weight::Weight;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

/// Index of a site: its position along the hole boundary walk.
pub type SiteIdx = u32;

#[derive(Debug)]
pub struct SiteDual {
    pub cotree: Cotree,
    pub centroid: CentroidTree,
}

#[derive(Debug)]
pub struct Mssp {
    graph: Arc<PlanarGraph>,
    hole: FaceId,
    hole_darts: Vec<DartId>,
    sites: Vec<VertexId>,
    site_of: Vec<u32>,
    trees: Vec<OnceLock<RootedTree>>,
    duals: Vec<OnceLock<SiteDual>>,
    dist_probes: AtomicU64,
    tree_probes: AtomicU64,
}

/// Builds the structure and every shortest-path tree up front.
pub fn build_mssp(graph: Arc<PlanarGraph>, hole: FaceId) -> Result<Mssp> {
    let m = Mssp::new(graph, hole)?;
    for s in 0..m.num_sites() as SiteIdx {
        m.tree(s);
    }
    Ok(m)
}

impl Mssp {
    /// Checks that the hole is a simple cycle and that every vertex is
    /// reachable from every hole vertex; trees are built lazily.
    pub fn new(graph: Arc<PlanarGraph>, hole: FaceId) -> Result<Self> {
        let g = &*graph;
        if hole as usize >= g.num_faces() {
            return Err(Error::Invalid(format!("face {hole} does not exist")));
        }
        if !g.face_is_simple(hole) {
            return Err(Error::HoleNotSimple(hole));
        }
        let hole_darts = g.face_darts(hole).to_vec();
        let sites: Vec<VertexId> = hole_darts.iter().map(|&d| g.tail(d)).collect();
        let mut site_of = vec![NONE; g.n()];
        for (i, &s) in sites.iter().enumerate() {
            site_of[s as usize] = i as u32;
        }
        let mut seen = vec![u32::MAX; g.n()];
        let mut stack = Vec::new();
        for (i, &s) in sites.iter().enumerate() {
            let stamp = i as u32;
            seen[s as usize] = stamp;
            stack.push(s);
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &d in g.out_darts(v) {
                    let h = g.head(d);
                    if g.usable(d) && seen[h as usize] != stamp {
                        seen[h as usize] = stamp;
                        count += 1;
                        stack.push(h);
                    }
                }
            }
            if count != g.n() {
                let v = seen.iter().position(|&x| x != stamp).unwrap();
                return Err(Error::Unreachable(v as u32, s));
            }
        }
        let k = sites.len();
        Ok(Mssp {
            graph,
            hole,
            hole_darts,
            sites,
            site_of,
            trees: (0..k).map(|_| OnceLock::new()).collect(),
            duals: (0..k).map(|_| OnceLock::new()).collect(),
            dist_probes: AtomicU64::new(0),
            tree_probes: AtomicU64::new(0),
        })
    }

    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }
    pub fn graph_arc(&self) -> &Arc<PlanarGraph> {
        &self.graph
    }
    pub fn hole(&self) -> FaceId {
        self.hole
    }
    pub fn num_sites(&self) -> usize {
        self.sites.len()
    }
    pub fn sites(&self) -> &[VertexId] {
        &self.sites
    }
    #[inline]
    pub fn site_vertex(&self, s: SiteIdx) -> VertexId {
        self.sites[s as usize]
    }
    pub fn site_index(&self, v: VertexId) -> Option<SiteIdx> {
        let i = self.site_of[v as usize];
        (i != NONE).then_some(i)
    }
    /// Dart from site `i` to site `i + 1` along the hole.
    pub fn hole_dart(&self, i: SiteIdx) -> DartId {
        self.hole_darts[i as usize]
    }
    /// Position `i` such that `e` joins sites `i` and `i + 1`.
    pub fn hole_index_of_edge(&self, e: EdgeId) -> Option<u32> {
        let g = &*self.graph;
        [2 * e, 2 * e + 1]
            .into_iter()
            .find(|&d| g.face_left(d) == self.hole)
            .map(|d| self.site_of[g.tail(d) as usize])
    }

    pub fn tree(&self, s: SiteIdx) -> &RootedTree {
        self.trees[s as usize].get_or_init(|| {
            RootedTree::shortest_path_tree(&self.graph, self.sites[s as usize], Some(self.hole_darts[s as usize]))
        })
    }

    pub fn dual(&self, s: SiteIdx) -> &SiteDual {
        self.duals[s as usize].get_or_init(|| {
            let t = self.tree(s);
            let g = &*self.graph;
            let cotree = Cotree::build(g, t, self.hole).expect("spanning tree checked at construction");
            let edges: Vec<(u32, u32)> = (0..g.n() as u32)
                .filter(|&v| t.parent_dart(v) != NONE)
                .map(|v| (t.parent(v), v))
                .collect();
            let centroid = CentroidTree::build(g.n(), &edges);
            SiteDual { cotree, centroid }
        })
    }

    /// Drops every built cotree and centroid decomposition.
    pub fn release_dual(&mut self) {
        for d in &mut self.duals {
            d.take();
        }
    }

    /// Drops every built shortest-path tree and dual; they are rebuilt on use.
    pub fn release_trees(&mut self) {
        self.release_dual();
        for t in &mut self.trees {
            t.take();
        }
    }

    /// `dist_H(site s, v)`, counted as one probe.
    #[inline]
    pub fn dist(&self, s: SiteIdx, v: VertexId) -> Weight {
        self.dist_probes.fetch_add(1, Ordering::Relaxed);
        self.tree(s).dist(v)
    }

    /// `i`-th dual edge on the cotree path of site `s` from face `start`
    /// toward the hole, counted as one probe.
    pub fn cotree_path_edge(&self, s: SiteIdx, start: FaceId, i: u32) -> EdgeId {
        self.tree_probes.fetch_add(1, Ordering::Relaxed);
        self.dual(s).cotree.path_edge(start, i)
    }

    /// Lowest common ancestor of two faces in the cotree of `s`.
    pub fn cotree_lca(&self, s: SiteIdx, a: FaceId, b: FaceId) -> FaceId {
        let c = &self.dual(s).cotree;
        let depth_bits = 32 - c.index().depth(a).min(c.index().depth(b)).leading_zeros();
        self.tree_probes.fetch_add(1 + depth_bits as u64, Ordering::Relaxed);
        c.index().lca(a, b)
    }

    /// Charges one tree probe (used by callers that read tree order data).
    pub fn count_tree_probe(&self) {
        self.tree_probes.fetch_add(1, Ordering::Relaxed);
    }

    pub fn probes(&self) -> u64 {
        self.dist_probes.load(Ordering::Relaxed) + self.tree_probes.load(Ordering::Relaxed)
    }
    pub fn probe_split(&self) -> (u64, u64) {
        (self.dist_probes.load(Ordering::Relaxed), self.tree_probes.load(Ordering::Relaxed))
    }
    pub fn reset_probes(&self) {
        self.dist_probes.store(0, Ordering::Relaxed);
        self.tree_probes.store(0, Ordering::Relaxed);
    }

    /// Edges of the hole in boundary order.
    pub fn hole_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.hole_darts.iter().map(|&d| edge_of(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::tests::square_grid;
    use crate::planar::{normalize, perturb};
    use crate::trees::dijkstra;

    #[test]
    fn trees_match_dijkstra_from_each_site() {
        let g = square_grid(5);
        let nz = normalize(&g, g.infinite_face()).unwrap();
        let h = Arc::new(perturb(&nz.graph, 5));
        let m = build_mssp(h.clone(), nz.hole).unwrap();
        assert_eq!(m.num_sites(), 16);
        for s in 0..16 {
            let (d, _) = dijkstra(&h, m.site_vertex(s));
            for v in 0..h.n() as u32 {
                assert_eq!(m.dist(s, v), d[v as usize]);
            }
        }
        assert!(m.probes() > 0);
        m.reset_probes();
        assert_eq!(m.probes(), 0);
    }

    #[test]
    fn hole_indices_follow_the_boundary() {
        let g = square_grid(4);
        let nz = normalize(&g, g.infinite_face()).unwrap();
        let m = Mssp::new(Arc::new(nz.graph.clone()), nz.hole).unwrap();
        for i in 0..m.num_sites() as u32 {
            let d = m.hole_dart(i);
            assert_eq!(m.hole_index_of_edge(edge_of(d)), Some(i));
            assert_eq!(m.site_index(nz.graph.head(d)), Some((i + 1) % m.num_sites() as u32));
        }
    }

    #[test]
    fn unreachable_vertex_is_reported() {
        // triangle whose arcs into vertex 2 are unusable
        let t = "pg 3 3 -\narc 0 0 1 1 1\narc 1 1 2 inf 1\narc 2 2 0 1\ncoord 0 0 0\ncoord 1 1 0\ncoord 2 0 1\n";
        let g = crate::planar::read_graph(t).unwrap();
        let hole = g.infinite_face();
        assert!(matches!(Mssp::new(Arc::new(g), hole), Err(Error::Unreachable(2, _))));
    }
}
