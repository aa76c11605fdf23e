//! Construction of the full dual diagram from distance queries and
//! three-site trichromatic-face queries.
//!
//! Hole vertices are colored first. Runs of equal color along the hole give
//! the cyclic cell sequence; a cell reappearing in it splits the sequence
//! into independent blocks. A block of two cells is a single bisector. A
//! block of three or more cells is triangulated by `build_arc`, which finds
//! the apex of the diagonal `(i, j)` and recurses on both sides.

use crate::error::{Error, Result};
use crate::mssp::{Mssp, SiteIdx};
use crate::planar::{edge_of, EdgeId, FaceId, NONE};
use crate::trifind::trichromatic_face;
use crate::voronoi::{Coloring, Diagram, NodeLabel, VdEdge, VdNode};
use crate::weight::Weight;
use serde::{Deserialize, Serialize};

/// Primitive calls made by one construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStats {
    pub sites: u64,
    pub distance_calls: u64,
    pub trichromatic_calls: u64,
    /// All MSSP probes, including those made inside trichromatic queries.
    pub mssp_probes: u64,
}

impl BuildStats {
    pub fn primitive_calls(&self) -> u64 {
        self.distance_calls + self.trichromatic_calls
    }
}

struct Builder<'a> {
    m: &'a Mssp,
    omega: &'a [Weight],
    stats: BuildStats,
    nodes: Vec<VdNode>,
    edges: Vec<VdEdge>,
}

/// One end of a diagram edge under construction.
#[derive(Clone, Copy)]
struct End {
    node: u32,
    fine: EdgeId,
}

pub fn build_vdstar_fast(m: &Mssp, omega: &[Weight]) -> Result<(Diagram, BuildStats)> {
    let k = m.num_sites();
    if omega.len() != k {
        return Err(Error::Invalid(format!("{} weights for {k} sites", omega.len())));
    }
    let probes0 = m.probes();
    let mut b = Builder { m, omega, stats: BuildStats { sites: k as u64, ..Default::default() }, nodes: Vec::new(), edges: Vec::new() };
    let all: Vec<SiteIdx> = (0..k as u32).collect();
    let col = Coloring::new(m, omega, &all);
    let colors: Vec<SiteIdx> = (0..k as u32).map(|i| col.color_of(m.site_vertex(i))).collect();
    b.stats.distance_calls += (k * k) as u64;

    // runs of equal color; run r ends at position last[r]
    let mut runs: Vec<(SiteIdx, usize)> = Vec::new();
    for i in 0..k {
        if colors[(i + 1) % k] != colors[i] {
            runs.push((colors[i], i));
        }
    }
    if runs.is_empty() {
        b.stats.mssp_probes = m.probes() - probes0;
        return Ok((Diagram::default(), b.stats));
    }
    let trans: Vec<EdgeId> = runs.iter().map(|&(_, last)| edge_of(m.hole_dart(last as u32))).collect();
    let nruns = runs.len();
    let run_color = |r: usize| runs[r % nruns].0;

    // blocks: cells in cyclic order and the hole edge leaving each cell
    let mut blocks: Vec<(Vec<SiteIdx>, Vec<EdgeId>)> = Vec::new();
    let mut stack: Vec<(SiteIdx, EdgeId)> = vec![(run_color(0), NONE)];
    for (r, &t) in trans.iter().enumerate() {
        let next = run_color(r + 1);
        match stack.iter().rposition(|&(c, _)| c == next) {
            Some(p) => {
                let cells: Vec<SiteIdx> = stack[p..].iter().map(|&(c, _)| c).collect();
                let mut sides: Vec<EdgeId> = stack[p + 1..].iter().map(|&(_, e)| e).collect();
                sides.push(t);
                blocks.push((cells, sides));
                stack.truncate(p + 1);
            }
            None => stack.push((next, t)),
        }
    }
    debug_assert_eq!(stack.len(), 1);

    for (cells, sides) in blocks {
        let leaves: Vec<u32> = sides.iter().zip(0..).map(|(&e, i)| b.leaf(e, cells[i], cells[(i + 1) % cells.len()])).collect();
        if cells.len() == 2 {
            let (a, z) = (End { node: leaves[0], fine: sides[0] }, End { node: leaves[1], fine: sides[1] });
            b.link(a, z, cells[0], cells[1]);
            continue;
        }
        let last = cells.len() - 1;
        let top = b.build_arc(&cells, &sides, &leaves, 0, last)?;
        let closing = End { node: leaves[last], fine: sides[last] };
        let t = b.face_end(top, cells[0], cells[last]);
        b.link(t, closing, cells[0], cells[last]);
    }
    b.stats.mssp_probes = m.probes() - probes0;
    let d = Diagram { nodes: b.nodes, edges: b.edges, closed_loops: 0, chains: Vec::new() };
    Ok((d, b.stats))
}

impl Builder<'_> {
    fn leaf(&mut self, e: EdgeId, a: SiteIdx, z: SiteIdx) -> u32 {
        let g = self.m.graph();
        let d = [2 * e, 2 * e + 1].into_iter().find(|&d| g.face_left(d) == self.m.hole()).unwrap();
        let id = self.nodes.len() as u32;
        self.nodes.push(VdNode { label: NodeLabel::Leaf(e), corners: vec![g.tail(d), g.head(d)], sites: vec![a, z], edges: vec![NONE] });
        id
    }

    fn link(&mut self, a: End, z: End, s: SiteIdx, t: SiteIdx) {
        let id = self.edges.len() as u32;
        for end in [a, z] {
            let node = &mut self.nodes[end.node as usize];
            let slot = match node.label {
                NodeLabel::Leaf(_) => 0,
                NodeLabel::Face(f) => {
                    let g = self.m.graph();
                    g.face_darts(f).iter().position(|&d| edge_of(d) == end.fine).unwrap()
                }
            };
            node.edges[slot] = id;
        }
        self.edges.push(VdEdge { ends: [a.node, z.node], fine: [a.fine, z.fine], sites: [s.min(t), s.max(t)] });
    }

    /// The side of triangle node `node` separating cells `s` and `t`.
    fn face_end(&self, node: u32, s: SiteIdx, t: SiteIdx) -> End {
        let n = &self.nodes[node as usize];
        let NodeLabel::Face(f) = n.label else { unreachable!() };
        let g = self.m.graph();
        let k = n.corners.len();
        let i = (0..k)
            .find(|&i| {
                let (a, z) = (n.sites[i], n.sites[(i + 1) % k]);
                (a == s && z == t) || (a == t && z == s)
            })
            .expect("apex face separates each pair of its sites");
        End { node, fine: edge_of(g.face_darts(f)[i]) }
    }

    fn build_arc(&mut self, cells: &[SiteIdx], sides: &[EdgeId], leaves: &[u32], i: usize, j: usize) -> Result<u32> {
        let (b, f, owners) = self.find_apex(cells, i, j)?;
        let g = self.m.graph();
        let node = self.nodes.len() as u32;
        let corners: Vec<_> = g.face_vertices(f).collect();
        self.nodes.push(VdNode { label: NodeLabel::Face(f), corners, sites: owners.to_vec(), edges: vec![NONE; 3] });
        for (lo, hi) in [(i, b), (b, j)] {
            let here = self.face_end(node, cells[lo], cells[hi]);
            let there = if hi - lo == 1 {
                End { node: leaves[lo], fine: sides[lo] }
            } else {
                let child = self.build_arc(cells, sides, leaves, lo, hi)?;
                self.face_end(child, cells[lo], cells[hi])
            };
            self.link(here, there, cells[lo], cells[hi]);
        }
        Ok(node)
    }

    /// Finds `b` in `(i, j)` whose three-site face with `i` and `j` has its
    /// corners owned by exactly `i`, `b`, `j` among the arc's sites.
    fn find_apex(&mut self, cells: &[SiteIdx], i: usize, j: usize) -> Result<(usize, FaceId, [SiteIdx; 3])> {
        let arc = &cells[i..=j];
        let col = Coloring::new(self.m, self.omega, arc);
        let mut tried = vec![false; j - i + 1];
        let mut cand = (i + j) / 2;
        let mut scan = i + 1;
        loop {
            tried[cand - i] = true;
            let (si, sb, sj) = (cells[i], cells[cand], cells[j]);
            self.stats.trichromatic_calls += 1;
            let mut steer = None;
            if let Some(f) = trichromatic_face(self.m, self.omega, sb, si, sj) {
                self.stats.distance_calls += (3 * arc.len()) as u64;
                let owners = corner_owners(&col, f);
                if verify_apex(&owners, [si, sb, sj]) {
                    return Ok((cand, f, owners));
                }
                steer = owners
                    .iter()
                    .filter(|&&o| o != si && o != sj)
                    .filter_map(|&o| arc.iter().position(|&c| c == o))
                    .find(|&p| !tried[p]);
            }
            cand = match steer {
                Some(p) => i + p,
                None => {
                    while scan < j && tried[scan - i] {
                        scan += 1;
                    }
                    if scan >= j {
                        return Err(Error::Certification(format!("no apex verifies for sites {} and {}", cells[i], cells[j])));
                    }
                    scan
                }
            };
        }
    }
}

/// Owner of each corner of face `f` among the coloring's candidates.
pub fn corner_owners(col: &Coloring, f: FaceId) -> [SiteIdx; 3] {
    let g = col.mssp.graph();
    let c = g.face_darts(f);
    [col.color_of(g.tail(c[0])), col.color_of(g.tail(c[1])), col.color_of(g.tail(c[2]))]
}

/// True if the corner owners are exactly the three sites of the triple.
pub fn verify_apex(owners: &[SiteIdx; 3], triple: [SiteIdx; 3]) -> bool {
    let mut a = *owners;
    let mut b = triple;
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mssp::build_mssp;
    use crate::planar::tests::square_grid;
    use crate::planar::{normalize, perturb};
    use std::sync::Arc;

    fn grid(k: usize) -> Mssp {
        let g = square_grid(k);
        let nz = normalize(&g, g.infinite_face()).unwrap();
        build_mssp(Arc::new(perturb(&nz.graph, 2)), nz.hole).unwrap()
    }

    #[test]
    fn matches_brute_force_with_all_cells() {
        let m = grid(6);
        let omega = vec![Weight::ZERO; m.num_sites()];
        let (d, st) = build_vdstar_fast(&m, &omega).unwrap();
        let all: Vec<u32> = (0..m.num_sites() as u32).collect();
        let bf = Diagram::brute_force(&m, &omega, &all);
        assert!(d.equivalent(&bf));
        assert!(d.is_tree());
        assert!(st.trichromatic_calls >= (m.num_sites() - 2) as u64);
    }

    #[test]
    fn two_cells_need_no_trichromatic_query() {
        let m = grid(5);
        let mut omega = vec![Weight::new(10_000, 0); m.num_sites()];
        omega[0] = Weight::ZERO;
        omega[8] = Weight::ZERO;
        let (d, st) = build_vdstar_fast(&m, &omega).unwrap();
        assert_eq!(st.trichromatic_calls, 0);
        assert_eq!(d.edges.len(), 1);
        assert_eq!(d.num_leaves(), 2);
        let all: Vec<u32> = (0..m.num_sites() as u32).collect();
        assert!(d.equivalent(&Diagram::brute_force(&m, &omega, &all)));
    }
}
