//! Single-level exact distance oracle.
//!
//! Each region keeps an all-pairs table over itself augmented with a clique
//! of outside distances between its boundary vertices. For every boundary
//! vertex `q` it also keeps the Voronoi diagram of the region's complement
//! with sites on the region outline weighted by `dist_G(q, s)`, plus a point
//! location index over it.

mod division;
mod store;

pub use division::{build_r_division, Division, Region};
pub use store::{load_oracle, save_oracle, WEIGHTS_MAGIC, WEIGHTS_VERSION};

use crate::error::{Error, Result};
use crate::locate::PlIndex;
use crate::mssp::{Mssp, SiteIdx};
use crate::planar::{triangulate_faces, DartId, FaceId, PlanarGraph, VertexId, NONE};
use crate::trees::dijkstra;
use crate::vdbuild::build_vdstar_fast;
use crate::voronoi::Diagram;
use crate::weight::Weight;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

/// The complement of a region: every edge not enclosed by it, with the
/// infinite face triangulated by unusable chords. The region becomes a
/// single face, the hole.
pub struct Complement {
    pub graph: PlanarGraph,
    pub hole: FaceId,
    /// Complement vertex of each graph vertex, or `NONE`.
    pub to_h: Vec<u32>,
    pub to_g: Vec<VertexId>,
    /// Graph edge of each complement edge; `NONE` for added chords.
    pub edge_to_g: Vec<u32>,
}

pub fn complement(g: &PlanarGraph, face_region: &[u32], region: &Region) -> Result<Complement> {
    let rid = region.id;
    let outside = |f: FaceId| face_region[f as usize] != rid;
    let keep: Vec<bool> = (0..g.m() as u32).map(|e| outside(g.face_left(2 * e)) || outside(g.face_right(2 * e))).collect();
    let mut to_h = vec![NONE; g.n()];
    let mut to_g = Vec::new();
    for v in 0..g.n() as u32 {
        if g.out_darts(v).iter().any(|&d| keep[(d >> 1) as usize]) {
            to_h[v as usize] = to_g.len() as u32;
            to_g.push(v);
        }
    }
    let mut new_edge = vec![NONE; g.m()];
    let mut edge_to_g = Vec::new();
    let mut ends = Vec::new();
    let mut weights = Vec::new();
    for e in 0..g.m() as u32 {
        if keep[e as usize] {
            new_edge[e as usize] = ends.len() as u32;
            edge_to_g.push(e);
            let [a, b] = g.ends(e);
            ends.push([to_h[a as usize], to_h[b as usize]]);
            weights.push(g.weight(2 * e));
            weights.push(g.weight(2 * e + 1));
        }
    }
    let map = |d: DartId| 2 * new_edge[(d >> 1) as usize] + (d & 1);
    let rotation: Vec<Vec<DartId>> = to_g
        .iter()
        .map(|&v| g.out_darts(v).iter().filter(|&&d| keep[(d >> 1) as usize]).map(|&d| map(d)).collect())
        .collect();
    let coords = g.coords().map(|c| to_g.iter().map(|&v| c[v as usize]).collect());
    let hole_dart = map(region.outline[0]);
    let h = PlanarGraph::from_rotation(to_g.len(), ends, weights, rotation, coords, Some(hole_dart))
        .map_err(|e| Error::Region { region: rid, msg: format!("complement: {e}") })?;
    let hole = h.face_left(hole_dart);
    let graph = triangulate_faces(&h, hole)?;
    let hole = graph.face_left(hole_dart);
    edge_to_g.resize(graph.m(), NONE);
    Ok(Complement { graph, hole, to_h, to_g, edge_to_g })
}

pub struct Outer {
    pub to_h: Vec<u32>,
    pub to_g: Vec<VertexId>,
    pub mssp: Mssp,
    /// Per boundary vertex, in `Region::boundary` order.
    pub diagrams: Vec<Diagram>,
    pub index: Vec<PlIndex>,
}

pub struct RegionData {
    /// Row-major `dist` outside the region between boundary vertices.
    pub ext: Vec<Weight>,
    /// Row-major distances between region vertices (local ids).
    table: Vec<Weight>,
    pub outer: Option<Outer>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct OracleOptions {
    /// Compare every diagram with its brute-force construction.
    pub verify_diagrams: bool,
}

pub struct Oracle {
    graph: Arc<PlanarGraph>,
    r: usize,
    division: Division,
    data: Vec<RegionData>,
}

pub fn build_oracle(g: Arc<PlanarGraph>, r: usize) -> Result<Oracle> {
    build_oracle_with(g, r, OracleOptions::default())
}

pub fn build_oracle_with(g: Arc<PlanarGraph>, r: usize, opts: OracleOptions) -> Result<Oracle> {
    let division = build_r_division(&g, r)?;
    let mut data = Vec::with_capacity(division.regions.len());
    for region in &division.regions {
        if region.boundary.is_empty() {
            let table = aug_all_pairs(&g, region, &[]);
            data.push(RegionData { ext: Vec::new(), table, outer: None });
            continue;
        }
        let mut outer = outer_of(&g, &division, region)?;
        let ext = boundary_table(&outer, region);
        let all: Vec<SiteIdx> = (0..outer.mssp.num_sites() as u32).collect();
        for &q in &region.boundary {
            let dg = dijkstra(&g, q).0;
            let omega: Vec<Weight> = outer.mssp.sites().iter().map(|&s| dg[outer.to_g[s as usize] as usize]).collect();
            let (d, _) = build_vdstar_fast(&outer.mssp, &omega)?;
            if opts.verify_diagrams && !d.equivalent(&Diagram::brute_force(&outer.mssp, &omega, &all)) {
                return Err(Error::Certification(format!("diagram of region {} at vertex {q}", region.id)));
            }
            outer.index.push(PlIndex::build(&d, &outer.mssp, &omega)?);
            outer.diagrams.push(d);
        }
        outer.mssp.release_trees();
        let table = aug_all_pairs(&g, region, &ext);
        data.push(RegionData { ext, table, outer: Some(outer) });
    }
    Ok(Oracle { graph: g, r, division, data })
}

/// Complement of `region` with a lazy MSSP over it.
fn outer_of(g: &PlanarGraph, division: &Division, region: &Region) -> Result<Outer> {
    let c = complement(g, &division.face_region, region)?;
    let mssp = Mssp::new(Arc::new(c.graph), c.hole).map_err(|e| Error::Region { region: region.id, msg: e.to_string() })?;
    Ok(Outer { to_h: c.to_h, to_g: c.to_g, mssp, diagrams: Vec::new(), index: Vec::new() })
}

/// Outside distances between boundary vertices, row-major.
fn boundary_table(outer: &Outer, region: &Region) -> Vec<Weight> {
    let b = &region.boundary;
    let mut ext = vec![Weight::INF; b.len() * b.len()];
    for (i, &a) in b.iter().enumerate() {
        let s = outer.mssp.site_index(outer.to_h[a as usize]).expect("boundary vertex lies on the hole");
        let t = outer.mssp.tree(s);
        for (j, &x) in b.iter().enumerate() {
            ext[i * b.len() + j] = t.dist(outer.to_h[x as usize]);
        }
    }
    ext
}

/// All-pairs distances inside `region` plus the boundary clique `ext`.
fn aug_all_pairs(g: &PlanarGraph, region: &Region, ext: &[Weight]) -> Vec<Weight> {
    let k = region.vertices.len();
    let mut adj: Vec<Vec<(u32, Weight)>> = vec![Vec::new(); k];
    let mut edges: Vec<u32> = region.faces.iter().flat_map(|&f| g.face_darts(f).iter().map(|&d| d >> 1)).collect();
    edges.sort_unstable();
    edges.dedup();
    let local = |v: VertexId| region.local(v).unwrap() as u32;
    for e in edges {
        let [a, b] = g.ends(e);
        for (d, x, y) in [(2 * e, a, b), (2 * e + 1, b, a)] {
            if g.usable(d) {
                adj[local(x) as usize].push((local(y), g.weight(d)));
            }
        }
    }
    let nb = region.boundary.len();
    for i in 0..nb {
        for j in 0..nb {
            let w = ext[i * nb + j];
            if i != j && !w.is_inf() {
                adj[local(region.boundary[i]) as usize].push((local(region.boundary[j]), w));
            }
        }
    }
    let mut table = vec![Weight::INF; k * k];
    let mut heap = BinaryHeap::new();
    for s in 0..k {
        let row = &mut table[s * k..(s + 1) * k];
        row[s] = Weight::ZERO;
        heap.push(Reverse((Weight::ZERO, s as u32)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > row[v as usize] {
                continue;
            }
            for &(h, w) in &adj[v as usize] {
                let nd = d + w;
                if nd < row[h as usize] {
                    row[h as usize] = nd;
                    heap.push(Reverse((nd, h)));
                }
            }
        }
    }
    table
}

impl Oracle {
    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn division(&self) -> &Division {
        &self.division
    }
    pub fn regions(&self) -> &[Region] {
        &self.division.regions
    }
    pub fn region_data(&self, rid: u32) -> &RegionData {
        &self.data[rid as usize]
    }

    /// Exact `dist_G(u, v)`; `Weight::INF` if `v` is unreachable.
    pub fn query(&self, u: VertexId, v: VertexId) -> Weight {
        if u == v {
            return Weight::ZERO;
        }
        let rid = self.division.home[u as usize];
        let region = &self.division.regions[rid as usize];
        let data = &self.data[rid as usize];
        let k = region.vertices.len();
        let lu = region.local(u).unwrap();
        if let Some(lv) = region.local(v) {
            return data.table[lu * k + lv];
        }
        let Some(outer) = &data.outer else { return Weight::INF };
        let hv = outer.to_h[v as usize];
        let mut order: Vec<(Weight, usize)> = region
            .boundary
            .iter()
            .enumerate()
            .map(|(qi, &q)| (data.table[lu * k + region.local(q).unwrap()], qi))
            .filter(|(w, _)| !w.is_inf())
            .collect();
        order.sort_unstable();
        let mut best = Weight::INF;
        for (w, qi) in order {
            // located distances are nonnegative
            if w >= best {
                break;
            }
            let (_, d) = outer.index[qi].locate(&outer.mssp, hv);
            best = best.min(w + d);
        }
        best
    }

    /// Total MSSP probes charged so far across all regions.
    pub fn probes(&self) -> u64 {
        self.data.iter().filter_map(|d| d.outer.as_ref()).map(|o| o.mssp.probes()).sum()
    }

    /// Frees the shortest-path trees of one region; they are rebuilt on the
    /// next query that needs them.
    pub fn trim_region(&mut self, rid: u32) {
        if let Some(o) = self.data[rid as usize].outer.as_mut() {
            o.mssp.release_trees();
        }
    }

    pub fn home_region(&self, v: VertexId) -> u32 {
        self.division.home[v as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{brute_force_distance, generate, Kind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_pairs(o: &Oracle, seed: u64, k: usize) {
        let g = o.graph();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..k {
            let u = rng.random_range(0..g.n() as u32);
            let v = rng.random_range(0..g.n() as u32);
            assert_eq!(o.query(u, v), brute_force_distance(g, u, v), "{u} -> {v}");
        }
    }

    #[test]
    fn grid_queries_are_exact() {
        let inst = generate(Kind::Grid { rows: 10, cols: 10 }, 4).unwrap();
        let o = build_oracle_with(Arc::new(inst.graph), 16, OracleOptions { verify_diagrams: true }).unwrap();
        assert!(o.regions().len() > 1);
        check_pairs(&o, 1, 400);
    }

    #[test]
    fn triangulation_queries_are_exact() {
        let inst = generate(Kind::RandomTriangulation { points: 300, hull: 12 }, 8).unwrap();
        let o = build_oracle_with(Arc::new(inst.graph), 48, OracleOptions { verify_diagrams: true }).unwrap();
        assert!(o.regions().len() > 1);
        check_pairs(&o, 2, 400);
    }

    #[test]
    fn single_region_when_r_is_n() {
        let inst = generate(Kind::Grid { rows: 4, cols: 5 }, 2).unwrap();
        let n = inst.n();
        let o = build_oracle(Arc::new(inst.graph), n).unwrap();
        assert_eq!(o.regions().len(), 1);
        check_pairs(&o, 3, 100);
    }
}
