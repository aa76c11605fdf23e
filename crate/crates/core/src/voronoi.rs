//! Additively weighted Voronoi diagrams with sites on the hole and their
//! dual representation (`VD*`).

use crate::mssp::{Mssp, SiteIdx};
use crate::planar::{edge_of, EdgeId, FaceId, PlanarGraph, VertexId, NONE};
use crate::weight::Weight;
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::cmp::Reverse;
use std::collections::HashMap;

/// Ranking key of site `s` at a vertex at distance `d`: smaller wins, ties
/// go to the larger `(omega(s), s)`.
#[inline]
pub fn site_key(omega: Weight, d: Weight, s: VertexId) -> (Weight, Reverse<Weight>, Reverse<VertexId>) {
    (omega + d, Reverse(omega), Reverse(s))
}

/// Colors already computed by one [`Coloring`].
pub type ColorMemo = RefCell<HashMap<VertexId, SiteIdx>>;

/// Nearest-site assignment over a set of candidate sites, answered with
/// distance probes into an [`Mssp`].
#[derive(Clone, Copy)]
pub struct Coloring<'a> {
    pub mssp: &'a Mssp,
    pub omega: &'a [Weight],
    pub candidates: &'a [SiteIdx],
    memo: Option<&'a ColorMemo>,
}

impl<'a> Coloring<'a> {
    pub fn new(mssp: &'a Mssp, omega: &'a [Weight], candidates: &'a [SiteIdx]) -> Self {
        debug_assert_eq!(omega.len(), mssp.num_sites());
        Coloring { mssp, omega, candidates, memo: None }
    }

    /// Same coloring, remembering every answer in `memo` so that repeated
    /// questions cost no probes.
    pub fn with_memo(self, memo: &'a ColorMemo) -> Self {
        Coloring { memo: Some(memo), ..self }
    }

    pub fn color_of(&self, v: VertexId) -> SiteIdx {
        if let Some(c) = self.memo.and_then(|m| m.borrow().get(&v).copied()) {
            return c;
        }
        let c = self.probe_color(v);
        if let Some(m) = self.memo {
            m.borrow_mut().insert(v, c);
        }
        c
    }

    fn probe_color(&self, v: VertexId) -> SiteIdx {
        let mut best = NONE;
        let mut best_key = None;
        for &s in self.candidates {
            let k = site_key(self.omega[s as usize], self.mssp.dist(s, v), self.mssp.site_vertex(s));
            if best_key.is_none_or(|b| k < b) {
                best_key = Some(k);
                best = s;
            }
        }
        best
    }

    /// `omega(s) + dist(s, v)`.
    pub fn weighted_dist(&self, s: SiteIdx, v: VertexId) -> Weight {
        self.omega[s as usize] + self.mssp.dist(s, v)
    }

    pub fn cells(&self) -> Vec<SiteIdx> {
        (0..self.mssp.graph().n() as u32).map(|v| self.color_of(v)).collect()
    }
}

/// Replaces `omega` by `omega'(s) = min_t omega(t) + dist(t, s)`, after
/// which every site lies in its own cell.
pub fn site_respecting(mssp: &Mssp, omega: &[Weight]) -> Vec<Weight> {
    (0..mssp.num_sites() as u32)
        .map(|s| {
            let v = mssp.site_vertex(s);
            (0..mssp.num_sites() as u32).map(|t| omega[t as usize] + mssp.dist(t, v)).min().unwrap()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeLabel {
    /// A face of the graph whose corners belong to three different cells.
    Face(FaceId),
    /// A copy of the hole attached through the given hole edge.
    Leaf(EdgeId),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VdNode {
    pub label: NodeLabel,
    /// Face corners in boundary order, or the two ends of the leaf's edge.
    pub corners: Vec<VertexId>,
    /// Cell of each corner.
    pub sites: Vec<SiteIdx>,
    /// Diagram edge leaving through each side (corner `i` to `i + 1`), or
    /// `NONE` for monochromatic sides. Leaves have a single entry.
    pub edges: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VdEdge {
    pub ends: [u32; 2],
    /// Graph edge crossed next to each end.
    pub fine: [EdgeId; 2],
    /// The two cells separated by this edge, smaller index first.
    pub sites: [SiteIdx; 2],
}

/// Dual representation of a Voronoi diagram: trichromatic faces and hole
/// copies joined by bisector segments with degree-2 faces contracted.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Diagram {
    pub nodes: Vec<VdNode>,
    pub edges: Vec<VdEdge>,
    /// Bisector cycles that touch neither the hole nor a trichromatic face.
    pub closed_loops: usize,
    /// Graph edges crossed by each diagram edge, in order (brute force only).
    #[serde(skip)]
    pub chains: Vec<Vec<EdgeId>>,
}

pub type CanonicalEdge = ((NodeLabel, EdgeId), (NodeLabel, EdgeId), [SiteIdx; 2]);

impl Diagram {
    /// Extracts the diagram of a vertex coloring by tracing bichromatic
    /// dual edges.
    pub fn from_cells(g: &PlanarGraph, hole: FaceId, cells: &[SiteIdx]) -> Diagram {
        let m = g.m();
        let bichro: Vec<bool> = (0..m as u32)
            .map(|e| {
                let [a, b] = g.ends(e);
                cells[a as usize] != cells[b as usize]
            })
            .collect();
        let mut nodes: Vec<VdNode> = Vec::new();
        let mut node_of_face = vec![NONE; g.num_faces()];
        for f in 0..g.num_faces() as FaceId {
            if f == hole {
                continue;
            }
            let k = g.face_darts(f).iter().filter(|&&d| bichro[edge_of(d) as usize]).count();
            if k >= 3 {
                node_of_face[f as usize] = nodes.len() as u32;
                let corners: Vec<VertexId> = g.face_vertices(f).collect();
                let sites = corners.iter().map(|&v| cells[v as usize]).collect();
                nodes.push(VdNode { label: NodeLabel::Face(f), edges: vec![NONE; corners.len()], corners, sites });
            }
        }
        let mut leaf_of_edge = vec![NONE; m];
        for &d in g.face_darts(hole) {
            let e = edge_of(d);
            if bichro[e as usize] {
                leaf_of_edge[e as usize] = nodes.len() as u32;
                let corners = vec![g.tail(d), g.head(d)];
                let sites = corners.iter().map(|&v| cells[v as usize]).collect();
                nodes.push(VdNode { label: NodeLabel::Leaf(e), corners, sites, edges: vec![NONE] });
            }
        }
        let mut visited = vec![false; m];
        let mut edges = Vec::new();
        let mut chains = Vec::new();
        // face on the far side of edge e as seen from face f
        let across = |f: FaceId, e: EdgeId| {
            let [l, r] = g.dual_ends(e);
            if l == f {
                r
            } else {
                l
            }
        };
        for start in 0..nodes.len() {
            let (start_face, sides): (FaceId, Vec<(usize, EdgeId)>) = match nodes[start].label {
                NodeLabel::Face(f) => {
                    (f, g.face_darts(f).iter().enumerate().map(|(i, &d)| (i, edge_of(d))).collect())
                }
                NodeLabel::Leaf(e) => (hole, vec![(0, e)]),
            };
            for (side, e0) in sides {
                if !bichro[e0 as usize] || visited[e0 as usize] {
                    continue;
                }
                let mut chain = vec![e0];
                visited[e0 as usize] = true;
                let mut prev = e0;
                let mut cur = across(start_face, e0);
                let end = loop {
                    if cur == hole {
                        break leaf_of_edge[prev as usize];
                    }
                    if node_of_face[cur as usize] != NONE {
                        break node_of_face[cur as usize];
                    }
                    let next = g
                        .face_darts(cur)
                        .iter()
                        .map(|&d| edge_of(d))
                        .find(|&x| x != prev && bichro[x as usize])
                        .expect("pass-through face has two bichromatic sides");
                    visited[next as usize] = true;
                    chain.push(next);
                    cur = across(cur, next);
                    prev = next;
                };
                let id = edges.len() as u32;
                nodes[start].edges[side] = id;
                let end_side = match nodes[end as usize].label {
                    NodeLabel::Face(f) => g.face_darts(f).iter().position(|&d| edge_of(d) == prev).unwrap(),
                    NodeLabel::Leaf(_) => 0,
                };
                nodes[end as usize].edges[end_side] = id;
                let [a, b] = g.ends(e0);
                let (sa, sb) = (cells[a as usize], cells[b as usize]);
                edges.push(VdEdge { ends: [start as u32, end], fine: [e0, prev], sites: [sa.min(sb), sa.max(sb)] });
                chains.push(chain);
            }
        }
        let mut closed_loops = 0;
        for e in 0..m {
            if bichro[e] && !visited[e] {
                // walk the loop once to mark it
                closed_loops += 1;
                let mut prev = e as EdgeId;
                visited[e] = true;
                let mut cur = g.dual_ends(prev)[0];
                loop {
                    let next = g.face_darts(cur).iter().map(|&d| edge_of(d)).find(|&x| x != prev && bichro[x as usize]);
                    match next {
                        Some(x) if !visited[x as usize] => {
                            visited[x as usize] = true;
                            cur = across(cur, x);
                            prev = x;
                        }
                        _ => break,
                    }
                }
            }
        }
        Diagram { nodes, edges, closed_loops, chains }
    }

    /// Brute-force diagram: colors every vertex by probing all candidates.
    pub fn brute_force(mssp: &Mssp, omega: &[Weight], candidates: &[SiteIdx]) -> Diagram {
        let cells = Coloring::new(mssp, omega, candidates).cells();
        Diagram::from_cells(mssp.graph(), mssp.hole(), &cells)
    }

    pub fn num_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n.label, NodeLabel::Leaf(_))).count()
    }
    pub fn num_internal(&self) -> usize {
        self.nodes.len() - self.num_leaves()
    }

    /// True for an empty diagram and for connected acyclic ones.
    pub fn is_tree(&self) -> bool {
        if self.closed_loops > 0 {
            return false;
        }
        if self.nodes.is_empty() {
            return self.edges.is_empty();
        }
        if self.edges.len() + 1 != self.nodes.len() {
            return false;
        }
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.ends[0] as usize].push(e.ends[1]);
            adj[e.ends[1] as usize].push(e.ends[0]);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.nodes.len()
    }

    /// Order-independent description used to compare diagrams.
    pub fn canonical(&self) -> (Vec<NodeLabel>, Vec<CanonicalEdge>) {
        let mut labels: Vec<NodeLabel> = self.nodes.iter().map(|n| n.label).collect();
        labels.sort_unstable();
        let mut es: Vec<CanonicalEdge> = self
            .edges
            .iter()
            .map(|e| {
                let a = (self.nodes[e.ends[0] as usize].label, e.fine[0]);
                let b = (self.nodes[e.ends[1] as usize].label, e.fine[1]);
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                (a, b, e.sites)
            })
            .collect();
        es.sort_unstable();
        (labels, es)
    }

    pub fn equivalent(&self, other: &Diagram) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Result of [`bisector`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bisector {
    /// Graph edges crossed by the dual cycle, starting and ending with hole
    /// edges; the cycle closes through the hole.
    Cycle(Vec<EdgeId>),
    /// One of the two cells is empty.
    Degenerate,
}

/// Bisector of sites `s` and `t` under additive weights `omega`.
pub fn bisector(mssp: &Mssp, omega: &[Weight], s: SiteIdx, t: SiteIdx) -> Bisector {
    let d = Diagram::brute_force(mssp, omega, &[s, t]);
    match d.chains.as_slice() {
        [] => Bisector::Degenerate,
        [c] => Bisector::Cycle(c.clone()),
        _ => unreachable!("two connected cells meet along a single bisector"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mssp::build_mssp;
    use crate::planar::tests::square_grid;
    use crate::planar::{normalize, perturb};
    use std::sync::Arc;

    fn grid_mssp(k: usize) -> Mssp {
        let g = square_grid(k);
        let nz = normalize(&g, g.infinite_face()).unwrap();
        build_mssp(Arc::new(perturb(&nz.graph, 11)), nz.hole).unwrap()
    }

    #[test]
    fn tie_prefers_larger_weight_then_larger_site() {
        let a = site_key(Weight::new(3, 0), Weight::new(2, 0), 1);
        let b = site_key(Weight::new(1, 0), Weight::new(4, 0), 9);
        assert!(a < b);
        let c = site_key(Weight::new(3, 0), Weight::new(2, 0), 7);
        assert!(c < a);
    }

    #[test]
    fn zero_weights_give_a_tree_with_all_sites() {
        let m = grid_mssp(6);
        let k = m.num_sites();
        let omega = vec![Weight::ZERO; k];
        let all: Vec<SiteIdx> = (0..k as u32).collect();
        let d = Diagram::brute_force(&m, &omega, &all);
        assert!(d.is_tree());
        assert_eq!(d.num_leaves(), k);
        assert_eq!(d.num_internal(), k - 2);
    }

    #[test]
    fn bisector_of_opposite_corners_crosses_the_grid() {
        let m = grid_mssp(5);
        let omega = vec![Weight::ZERO; m.num_sites()];
        match bisector(&m, &omega, 0, 8) {
            Bisector::Cycle(c) => {
                assert!(m.hole_index_of_edge(c[0]).is_some());
                assert!(m.hole_index_of_edge(*c.last().unwrap()).is_some());
            }
            Bisector::Degenerate => panic!("both cells are non-empty"),
        }
        let mut heavy = omega.clone();
        heavy[8] = Weight::new(1000, 0);
        assert_eq!(bisector(&m, &heavy, 0, 8), Bisector::Degenerate);
    }
}
