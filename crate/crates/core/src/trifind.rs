//! Locating the face where three Voronoi cells meet by eliminating parts of
//! one site's shortest-path tree along its edge-centroid decomposition.

use crate::mssp::{Mssp, SiteIdx};
use crate::planar::{edge_of, EdgeId, FaceId, VertexId, NONE};
use crate::trees::CentroidNode;
use crate::voronoi::{ColorMemo, Coloring};
use crate::weight::Weight;

/// Critical edges of a tree edge `e`: the first edge on each of the two
/// cotree paths from the faces beside `e` to their common ancestor `q` that
/// is not colored by the tree's own site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub critical: [Option<EdgeId>; 2],
    /// Last edge of each path (the tree edge itself when the path is empty).
    pub last: [EdgeId; 2],
    pub q: FaceId,
}

/// Rule deciding, from the critical edges of a tree edge `e = (u, v)` with
/// `u` and `v` colored `x`, whether to continue in the subtree below `e`.
pub trait DecisionPredicate {
    fn decide(&self, col: &Coloring, x: SiteIdx, crit: &CriticalPair) -> bool;
}

/// Continue below `e` iff the vertices gathered from the critical edges show
/// all three candidate colors.
pub struct Trichromatic;

impl DecisionPredicate for Trichromatic {
    fn decide(&self, col: &Coloring, _x: SiteIdx, crit: &CriticalPair) -> bool {
        let m = col.mssp;
        let g = m.graph();
        let mut seen: Vec<SiteIdx> = Vec::with_capacity(8);
        let mut add = |s: SiteIdx| {
            if !seen.contains(&s) {
                seen.push(s);
            }
        };
        for j in 0..2 {
            match crit.critical[j] {
                Some(e) => {
                    let [a, b] = g.ends(e);
                    add(col.color_of(a));
                    add(col.color_of(b));
                }
                None if crit.q == m.hole() => {
                    let (p, n) = nearest_sites_along_hole(m, col.candidates, crit.last[j]);
                    add(p);
                    add(n);
                }
                None => {
                    for v in g.face_vertices(crit.q) {
                        add(col.color_of(v));
                    }
                }
            }
        }
        col.candidates.iter().all(|c| seen.contains(c))
    }
}

/// Nearest candidate sites before and after hole edge `e` along the hole.
pub fn nearest_sites_along_hole(m: &Mssp, candidates: &[SiteIdx], e: EdgeId) -> (SiteIdx, SiteIdx) {
    let k = m.num_sites() as u32;
    let i = m.hole_index_of_edge(e).expect("last cotree edge lies on the hole");
    let back = *candidates.iter().min_by_key(|&&s| (i + k - s) % k).unwrap();
    let fwd = *candidates.iter().min_by_key(|&&s| (s + k - (i + 1) % k) % k).unwrap();
    (back, fwd)
}

/// Critical edges of the tree edge entering `child` in the tree of `x`.
pub fn find_critical(col: &Coloring, x: SiteIdx, child: VertexId) -> CriticalPair {
    let m = col.mssp;
    let g = m.graph();
    let p = m.tree(x).parent_dart(child);
    let e = edge_of(p);
    let starts = [g.face_right(p), g.face_left(p)];
    let q = m.cotree_lca(x, starts[0], starts[1]);
    let cot = &m.dual(x).cotree;
    let green = |e: EdgeId| {
        let [a, b] = g.ends(e);
        col.color_of(a) == x && col.color_of(b) == x
    };
    let mut critical = [None; 2];
    let mut last = [e; 2];
    for j in 0..2 {
        let len = cot.index().depth(starts[j]) - cot.index().depth(q);
        if len > 0 {
            last[j] = m.cotree_path_edge(x, starts[j], len - 1);
        }
        let (mut lo, mut hi) = (0u32, len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if green(m.cotree_path_edge(x, starts[j], mid)) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if lo < len {
            critical[j] = Some(m.cotree_path_edge(x, starts[j], lo));
        }
    }
    CriticalPair { critical, last, q }
}

/// Walks the centroid decomposition of the tree of `x`, keeping the part
/// that may contain the `x`-colored vertex sought by `pred`. Returns the
/// final tree edge as (rootward, leafward) endpoints.
pub fn tree_elimination<P: DecisionPredicate>(col: &Coloring, x: SiteIdx, pred: &P) -> Option<(VertexId, VertexId)> {
    let m = col.mssp;
    let ct = &m.dual(x).centroid;
    let mut cur: &CentroidNode = ct.root()?;
    loop {
        let (u, v) = (cur.u, cur.v);
        let below = if col.color_of(u) != x || col.color_of(v) != x {
            false
        } else {
            pred.decide(col, x, &find_critical(col, x, v))
        };
        let next = if below { cur.child_v } else { cur.child_u };
        match ct.node(next) {
            Some(n) => cur = n,
            None => return Some((u, v)),
        }
    }
}

/// Face whose three corners lie in the cells of `x`, `y1` and `y2` in the
/// diagram of those three sites under `omega`, if one exists.
pub fn trichromatic_face(m: &Mssp, omega: &[Weight], x: SiteIdx, y1: SiteIdx, y2: SiteIdx) -> Option<FaceId> {
    let cands = [x, y1, y2];
    if y1 == x || y2 == x || y1 == y2 {
        return None;
    }
    let memo = ColorMemo::default();
    let col = Coloring::new(m, omega, &cands).with_memo(&memo);
    if col.color_of(m.site_vertex(x)) != x {
        return None;
    }
    let (u, v) = tree_elimination(&col, x, &Trichromatic)?;
    let t = m.tree(x);
    let mut probe = vec![u, v];
    if t.parent_dart(u) != NONE {
        probe.push(t.parent(u));
    }
    let g = m.graph();
    for w in probe {
        for f in g.faces_around(w) {
            if f == m.hole() || g.face_len(f) != 3 {
                continue;
            }
            let mut cs: Vec<SiteIdx> = g.face_vertices(f).map(|c| col.color_of(c)).collect();
            cs.sort_unstable();
            cs.dedup();
            if cs.len() == 3 {
                return Some(f);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mssp::build_mssp;
    use crate::planar::tests::square_grid;
    use crate::planar::{normalize, perturb};
    use crate::voronoi::Diagram;
    use std::sync::Arc;

    #[test]
    fn matches_brute_force_on_a_grid() {
        let g = square_grid(6);
        let nz = normalize(&g, g.infinite_face()).unwrap();
        let m = build_mssp(Arc::new(perturb(&nz.graph, 4)), nz.hole).unwrap();
        let k = m.num_sites() as u32;
        let omega = vec![Weight::ZERO; k as usize];
        for (x, y1, y2) in [(0, 5, 11), (3, 9, 15), (1, 2, 3), (19, 0, 10)] {
            let d = Diagram::brute_force(&m, &omega, &[x, y1, y2]);
            let expect: Vec<FaceId> = d
                .nodes
                .iter()
                .filter_map(|n| match n.label {
                    crate::voronoi::NodeLabel::Face(f) => Some(f),
                    _ => None,
                })
                .collect();
            let got = trichromatic_face(&m, &omega, x, y1, y2);
            assert_eq!(got.into_iter().collect::<Vec<_>>(), expect, "sites {x} {y1} {y2}");
        }
    }
}
