//! Preorder intervals, depth buckets and level-ancestor search for rooted
//! trees given as ordered child lists.

use crate::planar::NONE;
use std::sync::OnceLock;

#[derive(Clone, Debug)]
struct Buckets {
    /// Nodes grouped by depth, each group sorted by preorder.
    start: Vec<u32>,
    nodes: Vec<u32>,
}

#[derive(Debug)]
pub struct RootedIndex {
    root: u32,
    parent: Vec<u32>,
    depth: Vec<u32>,
    pre: Vec<u32>,
    size: Vec<u32>,
    buckets: OnceLock<Buckets>,
}

impl Clone for RootedIndex {
    fn clone(&self) -> Self {
        let buckets = OnceLock::new();
        if let Some(b) = self.buckets.get() {
            let _ = buckets.set(b.clone());
        }
        RootedIndex {
            root: self.root,
            parent: self.parent.clone(),
            depth: self.depth.clone(),
            pre: self.pre.clone(),
            size: self.size.clone(),
            buckets,
        }
    }
}

impl RootedIndex {
    /// `child_start`/`children` is a CSR list of ordered children per node.
    /// Nodes never reached from `root` get preorder `NONE`.
    pub fn build(root: u32, parent: Vec<u32>, child_start: &[u32], children: &[u32]) -> Self {
        let n = parent.len();
        let mut depth = vec![NONE; n];
        let mut pre = vec![NONE; n];
        let mut size = vec![0u32; n];
        let mut stack: Vec<(u32, u32)> = vec![(root, child_start[root as usize])];
        depth[root as usize] = 0;
        pre[root as usize] = 0;
        let mut counter = 1u32;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let end = child_start[v as usize + 1];
            if *next < end {
                let c = children[*next as usize];
                *next += 1;
                depth[c as usize] = depth[v as usize] + 1;
                pre[c as usize] = counter;
                counter += 1;
                stack.push((c, child_start[c as usize]));
            } else {
                size[v as usize] = counter - pre[v as usize];
                stack.pop();
            }
        }
        RootedIndex { root, parent, depth, pre, size, buckets: OnceLock::new() }
    }

    pub fn root(&self) -> u32 {
        self.root
    }
    pub fn len(&self) -> usize {
        self.parent.len()
    }
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }
    #[inline]
    pub fn parent(&self, v: u32) -> u32 {
        self.parent[v as usize]
    }
    #[inline]
    pub fn depth(&self, v: u32) -> u32 {
        self.depth[v as usize]
    }
    #[inline]
    pub fn pre(&self, v: u32) -> u32 {
        self.pre[v as usize]
    }
    /// One past the largest preorder number inside the subtree of `v`.
    #[inline]
    pub fn pre_end(&self, v: u32) -> u32 {
        self.pre[v as usize] + self.size[v as usize]
    }
    pub fn subtree_size(&self, v: u32) -> u32 {
        self.size[v as usize]
    }
    pub fn contains(&self, v: u32) -> bool {
        self.pre[v as usize] != NONE
    }
    /// True if `a` is an ancestor of `b` (or equal).
    #[inline]
    pub fn is_ancestor(&self, a: u32, b: u32) -> bool {
        let (pa, pb) = (self.pre[a as usize], self.pre[b as usize]);
        pa <= pb && pb < pa + self.size[a as usize]
    }

    fn buckets(&self) -> &Buckets {
        self.buckets.get_or_init(|| {
            let reached: Vec<u32> = (0..self.len() as u32).filter(|&v| self.contains(v)).collect();
            let max_d = reached.iter().map(|&v| self.depth(v)).max().unwrap_or(0) as usize;
            let mut start = vec![0u32; max_d + 2];
            for &v in &reached {
                start[self.depth(v) as usize + 1] += 1;
            }
            for i in 1..start.len() {
                start[i] += start[i - 1];
            }
            let mut by_pre = reached;
            by_pre.sort_unstable_by_key(|&v| self.pre(v));
            let mut fill = start.clone();
            let mut nodes = vec![0u32; by_pre.len()];
            for v in by_pre {
                let d = self.depth(v) as usize;
                nodes[fill[d] as usize] = v;
                fill[d] += 1;
            }
            Buckets { start, nodes }
        })
    }

    /// Ancestor of `v` at depth `d` (`d <= depth(v)`), found by binary search
    /// over the nodes of depth `d` ordered by preorder.
    pub fn level_ancestor(&self, v: u32, d: u32) -> u32 {
        debug_assert!(d <= self.depth(v));
        if d == self.depth(v) {
            return v;
        }
        let b = self.buckets();
        let row = &b.nodes[b.start[d as usize] as usize..b.start[d as usize + 1] as usize];
        let pv = self.pre(v);
        let k = row.partition_point(|&x| self.pre[x as usize] <= pv);
        row[k - 1]
    }

    /// Lowest common ancestor by binary search on depth.
    pub fn lca(&self, a: u32, b: u32) -> u32 {
        if self.is_ancestor(a, b) {
            return a;
        }
        if self.is_ancestor(b, a) {
            return b;
        }
        let (mut lo, mut hi) = (0u32, self.depth(a).min(self.depth(b)));
        // invariant: ancestor of a at depth lo is an ancestor of b; at depth hi it is not
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.is_ancestor(self.level_ancestor(a, mid), b) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.level_ancestor(a, lo)
    }

    /// Left-to-right order of two nodes neither of which is an ancestor of
    /// the other; ancestors compare as `Equal`.
    pub fn left_right_order(&self, a: u32, b: u32) -> std::cmp::Ordering {
        if self.is_ancestor(a, b) || self.is_ancestor(b, a) {
            std::cmp::Ordering::Equal
        } else {
            self.pre(a).cmp(&self.pre(b))
        }
    }
}

impl RootedIndex {
    /// Deepest marked ancestor (inclusive) of every node, or `u32::MAX`.
    pub fn nearest_marked_ancestors(&self, marked: &[bool]) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.len() as u32).filter(|&v| self.contains(v)).collect();
        order.sort_unstable_by_key(|&v| self.pre(v));
        let mut out = vec![u32::MAX; self.len()];
        for v in order {
            out[v as usize] = if marked[v as usize] {
                v
            } else if v == self.root() {
                u32::MAX
            } else {
                out[self.parent(v) as usize]
            };
        }
        out
    }
}

/// Builds a CSR child list from a parent array and per-node ordered lists.
pub fn csr<I: IntoIterator<Item = u32>>(n: usize, mut ordered: impl FnMut(u32) -> I) -> (Vec<u32>, Vec<u32>) {
    let mut start = Vec::with_capacity(n + 1);
    let mut list = Vec::new();
    start.push(0);
    for v in 0..n as u32 {
        list.extend(ordered(v));
        start.push(list.len() as u32);
    }
    (start, list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_tree(parents: &[u32]) -> RootedIndex {
        let n = parents.len() + 1;
        let mut parent = vec![NONE; n];
        for (i, &p) in parents.iter().enumerate() {
            parent[i + 1] = p % (i as u32 + 1);
        }
        let (s, l) = csr(n, |v| (0..n as u32).filter(move |&c| c != 0 && parent_of(parents, c) == v));
        RootedIndex::build(0, parent, &s, &l)
    }

    fn parent_of(parents: &[u32], c: u32) -> u32 {
        parents[c as usize - 1] % c
    }

    fn naive_ancestor(t: &RootedIndex, mut v: u32, d: u32) -> u32 {
        while t.depth(v) > d {
            v = t.parent(v);
        }
        v
    }

    proptest! {
        #[test]
        fn level_ancestor_and_lca_match_parent_walks(parents in prop::collection::vec(0u32..1000, 1..120), a in 0usize..1000, b in 0usize..1000) {
            let t = random_tree(&parents);
            let n = t.len();
            let (a, b) = ((a % n) as u32, (b % n) as u32);
            for d in 0..=t.depth(a) {
                prop_assert_eq!(t.level_ancestor(a, d), naive_ancestor(&t, a, d));
            }
            let mut x = a;
            let l = loop {
                if t.is_ancestor(x, b) { break x; }
                x = t.parent(x);
            };
            prop_assert_eq!(t.lca(a, b), l);
        }
    }
}
