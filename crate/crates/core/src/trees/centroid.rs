//! Recursive edge-centroid decomposition of a tree.

use crate::planar::NONE;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentroidNode {
    /// Index into the edge list the decomposition was built from.
    pub edge: u32,
    /// Endpoints in the orientation of that edge list.
    pub u: u32,
    pub v: u32,
    /// Sub-decomposition of the component containing `u` (resp. `v`) after
    /// removing `edge`; `NONE` if that component has no edges.
    pub child_u: u32,
    pub child_v: u32,
    /// Number of edges of the component this node was chosen in.
    pub size: u32,
}

#[derive(Clone, Debug, Default)]
pub struct CentroidTree {
    nodes: Vec<CentroidNode>,
    root: u32,
}

impl CentroidTree {
    /// Decomposes the forest with `n` vertices and the given edges. At each
    /// step the edge whose removal minimizes the larger remaining component
    /// (in edges) is chosen, smallest edge index on ties. Only the component
    /// containing the first edge is decomposed when the input is a forest.
    pub fn build(n: usize, edges: &[(u32, u32)]) -> Self {
        if edges.is_empty() {
            return CentroidTree { nodes: Vec::new(), root: NONE };
        }
        let mut deg_start = vec![0u32; n + 1];
        for &(a, b) in edges {
            deg_start[a as usize + 1] += 1;
            deg_start[b as usize + 1] += 1;
        }
        for i in 1..=n {
            deg_start[i] += deg_start[i - 1];
        }
        let mut fill = deg_start.clone();
        let mut adj = vec![(0u32, 0u32); 2 * edges.len()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            adj[fill[a as usize] as usize] = (b, i as u32);
            fill[a as usize] += 1;
            adj[fill[b as usize] as usize] = (a, i as u32);
            fill[b as usize] += 1;
        }
        let mut removed = vec![false; edges.len()];
        let mut size = vec![0u32; n];
        let mut order: Vec<(u32, u32, u32)> = Vec::new(); // (vertex, parent, edge to parent)
        let mut nodes: Vec<CentroidNode> = Vec::new();
        // (start vertex, node to attach to, attach to u side?)
        let mut work: Vec<(u32, u32, bool)> = vec![(edges[0].0, NONE, false)];
        let mut root = NONE;
        while let Some((start, owner, side_u)) = work.pop() {
            order.clear();
            order.push((start, NONE, NONE));
            let mut i = 0;
            while i < order.len() {
                let (v, p, _) = order[i];
                for &(w, e) in &adj[deg_start[v as usize] as usize..deg_start[v as usize + 1] as usize] {
                    if !removed[e as usize] && w != p {
                        order.push((w, v, e));
                    }
                }
                i += 1;
            }
            let total = order.len() as u32;
            if total == 1 {
                continue;
            }
            for &(v, _, _) in order.iter() {
                size[v as usize] = 1;
            }
            for &(v, p, _) in order.iter().rev() {
                if p != NONE {
                    size[p as usize] += size[v as usize];
                }
            }
            let mut best = (u32::MAX, u32::MAX);
            for &(v, _, e) in order.iter().skip(1) {
                let below = size[v as usize] - 1;
                let above = total - size[v as usize] - 1;
                let key = (below.max(above), e);
                if key < best {
                    best = key;
                }
            }
            let e = best.1;
            removed[e as usize] = true;
            let (u, v) = edges[e as usize];
            let id = nodes.len() as u32;
            nodes.push(CentroidNode { edge: e, u, v, child_u: NONE, child_v: NONE, size: total - 1 });
            if owner == NONE {
                root = id;
            } else if side_u {
                nodes[owner as usize].child_u = id;
            } else {
                nodes[owner as usize].child_v = id;
            }
            work.push((v, id, false));
            work.push((u, id, true));
        }
        CentroidTree { nodes, root }
    }

    pub fn root(&self) -> Option<&CentroidNode> {
        self.nodes.get(self.root as usize)
    }
    pub fn node(&self, i: u32) -> Option<&CentroidNode> {
        if i == NONE {
            None
        } else {
            self.nodes.get(i as usize)
        }
    }
    pub fn nodes(&self) -> &[CentroidNode] {
        &self.nodes
    }
    pub fn root_id(&self) -> u32 {
        self.root
    }
    /// Longest root-to-leaf chain of centroid nodes.
    pub fn depth(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(self.root, 1usize)];
        while let Some((i, d)) = stack.pop() {
            let Some(nd) = self.node(i) else { continue };
            best = best.max(d);
            stack.push((nd.child_u, d + 1));
            stack.push((nd.child_v, d + 1));
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Random tree with maximum degree 3.
    fn degree3_tree(choices: &[u32]) -> Vec<(u32, u32)> {
        let mut deg = vec![0u32];
        let mut edges = Vec::new();
        for (i, &c) in choices.iter().enumerate() {
            let v = i as u32 + 1;
            let open: Vec<u32> = (0..v).filter(|&x| deg[x as usize] < 3).collect();
            let p = open[c as usize % open.len()];
            deg[p as usize] += 1;
            deg.push(1);
            edges.push((p, v));
        }
        edges
    }

    proptest! {
        #[test]
        fn components_shrink_by_two_thirds(choices in prop::collection::vec(0u32..10_000, 1..300)) {
            let edges = degree3_tree(&choices);
            let ct = CentroidTree::build(edges.len() + 1, &edges);
            prop_assert_eq!(ct.nodes().len(), edges.len());
            for nd in ct.nodes() {
                for c in [nd.child_u, nd.child_v] {
                    if let Some(ch) = ct.node(c) {
                        prop_assert!(ch.size <= 2 * nd.size / 3, "{} > 2/3 of {}", ch.size, nd.size);
                    }
                }
            }
            let bound = ((edges.len() as f64).ln() / 1.5f64.ln()).floor() as usize + 2;
            prop_assert!(ct.depth() <= bound);
        }
    }

    #[test]
    fn path_splits_in_the_middle() {
        let edges: Vec<(u32, u32)> = (0..6).map(|i| (i, i + 1)).collect();
        let ct = CentroidTree::build(7, &edges);
        let r = ct.root().unwrap();
        assert_eq!(r.edge, 2);
        assert_eq!(ct.node(r.child_u).unwrap().size, 2);
        assert_eq!(ct.node(r.child_v).unwrap().size, 3);
    }
}
