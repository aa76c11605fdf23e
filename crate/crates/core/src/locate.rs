//! Point location in a Voronoi diagram by centroid search over its dual tree.
//!
//! At a trichromatic face `f` with corners `y_j` owned by sites `s_j`, the
//! shortest paths from each `s_j` to `y_j` cut the disk into three regions,
//! one behind each side of `f`. The vertex lies in one of the two regions
//! next to the path of the closest of the three sites; which one follows
//! from its position left or right of that path.

use crate::error::{Error, Result};
use crate::mssp::{Mssp, SiteIdx};
use crate::planar::{VertexId, NONE};
use crate::trees::CentroidTree;
use crate::voronoi::{site_key, Diagram, NodeLabel};
use crate::weight::Weight;

#[derive(Clone, Debug)]
struct Probe {
    /// Side of the face crossed by the centroid edge.
    side: u8,
    /// Centroid child on the far side of the edge (away from the face).
    far: u32,
    near: u32,
    sites: [SiteIdx; 3],
    corners: [VertexId; 3],
    /// Preorder of the corner in its site's tree and the split separating
    /// its subtrees right of the face corner from those left of it.
    pre: [u32; 3],
    split: [u32; 3],
    /// `omega(s_j) + dist(s_j, y_j)`.
    corner_dist: [Weight; 3],
}

#[derive(Clone, Debug)]
enum Step {
    Face(Probe),
    /// Diagram of two cells: a single edge between two hole copies.
    Pair([SiteIdx; 2]),
}

#[derive(Clone, Debug)]
pub struct PlIndex {
    omega: Vec<Weight>,
    steps: Vec<Step>,
    root: u32,
    single: SiteIdx,
    height: usize,
}

impl PlIndex {
    /// Index over a tree-shaped diagram of `m` under `omega`.
    pub fn build(d: &Diagram, m: &Mssp, omega: &[Weight]) -> Result<PlIndex> {
        if !d.is_tree() {
            return Err(Error::NotATree(format!("{} nodes, {} edges, {} loops", d.nodes.len(), d.edges.len(), d.closed_loops)));
        }
        let omega = omega.to_vec();
        if d.edges.is_empty() {
            // one non-empty cell; every hole vertex is colored by it
            let all: Vec<SiteIdx> = (0..m.num_sites() as u32).collect();
            let single = crate::voronoi::Coloring::new(m, &omega, &all).color_of(m.site_vertex(0));
            return Ok(PlIndex { omega, steps: Vec::new(), root: NONE, single, height: 0 });
        }
        let pairs: Vec<(u32, u32)> = d.edges.iter().map(|e| (e.ends[0], e.ends[1])).collect();
        let ct = CentroidTree::build(d.nodes.len(), &pairs);
        let g = m.graph();
        let mut steps = Vec::with_capacity(ct.nodes().len());
        for c in ct.nodes() {
            let e = &d.edges[c.edge as usize];
            let face_end = (0..2).find(|&i| matches!(d.nodes[e.ends[i] as usize].label, NodeLabel::Face(_)));
            let Some(i) = face_end else {
                steps.push(Step::Pair(e.sites));
                continue;
            };
            let node = &d.nodes[e.ends[i] as usize];
            let NodeLabel::Face(f) = node.label else { unreachable!() };
            let fd = g.face_darts(f);
            if fd.len() != 3 {
                return Err(Error::Invalid(format!("diagram node face {f} is not a triangle")));
            }
            let side = node.edges.iter().position(|&x| x == c.edge).expect("edge is incident to its end") as u8;
            let (near, far) = if i == 0 { (c.child_u, c.child_v) } else { (c.child_v, c.child_u) };
            let mut p = Probe {
                side,
                far,
                near,
                sites: [0; 3],
                corners: [0; 3],
                pre: [0; 3],
                split: [0; 3],
                corner_dist: [Weight::ZERO; 3],
            };
            for j in 0..3 {
                let s = node.sites[j];
                let y = g.tail(fd[j]);
                let t = m.tree(s);
                p.sites[j] = s;
                p.corners[j] = y;
                p.pre[j] = t.index().pre(y);
                p.split[j] = t.corner_split(g, y, fd[j]);
                p.corner_dist[j] = omega[s as usize] + t.dist(y);
            }
            steps.push(Step::Face(p));
        }
        let height = ct.depth();
        Ok(PlIndex { omega, steps, root: ct.root_id(), single: NONE, height })
    }

    pub fn height(&self) -> usize {
        self.height
    }
    pub fn omega(&self) -> &[Weight] {
        &self.omega
    }
    /// Cached `omega(s_j) + dist(s_j, y_j)` for every face probe.
    pub fn corner_distances(&self) -> impl Iterator<Item = ([SiteIdx; 3], [VertexId; 3], [Weight; 3])> + '_ {
        self.steps.iter().filter_map(|s| match s {
            Step::Face(p) => Some((p.sites, p.corners, p.corner_dist)),
            Step::Pair(_) => None,
        })
    }

    /// Owner of `v` and `omega(owner) + dist(owner, v)`.
    pub fn locate(&self, m: &Mssp, v: VertexId) -> (SiteIdx, Weight) {
        let key = |s: SiteIdx| {
            let d = m.dist(s, v);
            (site_key(self.omega[s as usize], d, m.site_vertex(s)), s)
        };
        if self.root == NONE {
            let (k, s) = key(self.single);
            return (s, k.0);
        }
        let mut best: Option<(_, SiteIdx)> = None;
        let consider = |c: (_, SiteIdx), best: &mut Option<(_, SiteIdx)>| {
            if best.as_ref().is_none_or(|b| c.0 < b.0) {
                *best = Some(c);
            }
        };
        let mut cur = self.root;
        while cur != NONE {
            match &self.steps[cur as usize] {
                Step::Pair(ss) => {
                    for &s in ss {
                        consider(key(s), &mut best);
                    }
                    break;
                }
                Step::Face(p) => {
                    let ks = [key(p.sites[0]), key(p.sites[1]), key(p.sites[2])];
                    let j = (0..3).min_by(|&a, &b| ks[a].0.cmp(&ks[b].0)).unwrap();
                    for k in ks {
                        consider(k, &mut best);
                    }
                    let s = p.sites[j];
                    let t = m.tree(s).index();
                    m.count_tree_probe();
                    let (pv, py) = (t.pre(v), p.pre[j]);
                    let right = if t.is_ancestor(v, p.corners[j]) {
                        let (k, s) = ks[j];
                        return (s, k.0);
                    } else if t.is_ancestor(p.corners[j], v) {
                        pv < p.split[j]
                    } else {
                        pv < py
                    };
                    // right of the path lies behind side j, left behind side j - 1
                    let region = if right { j } else { (j + 2) % 3 };
                    cur = if region == p.side as usize { p.far } else { p.near };
                }
            }
        }
        let (k, s) = best.unwrap();
        (s, k.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mssp::build_mssp;
    use crate::planar::tests::square_grid;
    use crate::planar::{normalize, perturb};
    use crate::vdbuild::build_vdstar_fast;
    use crate::voronoi::Coloring;
    use std::sync::Arc;

    #[test]
    fn agrees_with_brute_force_on_a_grid() {
        let g = square_grid(7);
        let nz = normalize(&g, g.infinite_face()).unwrap();
        let m = build_mssp(Arc::new(perturb(&nz.graph, 9)), nz.hole).unwrap();
        let k = m.num_sites();
        let all: Vec<SiteIdx> = (0..k as u32).collect();
        for omega in [vec![Weight::ZERO; k], (0..k as u64).map(|i| Weight::new(i * 3 % 7, 0)).collect()] {
            let omega = crate::voronoi::site_respecting(&m, &omega);
            let (d, _) = build_vdstar_fast(&m, &omega).unwrap();
            let pl = PlIndex::build(&d, &m, &omega).unwrap();
            let col = Coloring::new(&m, &omega, &all);
            for v in 0..m.graph().n() as u32 {
                let want = col.color_of(v);
                assert_eq!(pl.locate(&m, v), (want, col.weighted_dist(want, v)), "vertex {v}");
            }
        }
    }
}
