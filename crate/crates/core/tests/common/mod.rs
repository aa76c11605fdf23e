#![allow(dead_code)]

use planar_oracle::harness::{generate, Instance, Kind};
use planar_oracle::mssp::{build_mssp, Mssp, SiteIdx};
use planar_oracle::planar::{FaceId, VertexId};
use planar_oracle::trees::dijkstra;
use planar_oracle::voronoi::site_key;
use planar_oracle::Weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random triangulation with `hull` sites and about `n` normalized vertices.
pub fn tri(n: usize, hull: usize, seed: u64) -> Instance {
    generate(Kind::RandomTriangulation { points: (n / 4).max(hull + 1), hull }, seed).unwrap()
}

pub fn mssp_of(inst: &Instance) -> Mssp {
    build_mssp(Arc::new(inst.graph.clone()), inst.hole).unwrap()
}

/// Distances from every hole vertex, computed by running Dijkstra directly.
pub struct SiteDistances {
    pub sites: Vec<VertexId>,
    pub dist: Vec<Vec<Weight>>,
}

impl SiteDistances {
    pub fn new(inst: &Instance) -> Self {
        let sites: Vec<VertexId> = inst.graph.face_vertices(inst.hole).collect();
        let dist = sites.iter().map(|&s| dijkstra(&inst.graph, s).0).collect();
        SiteDistances { sites, dist }
    }

    pub fn owner(&self, omega: &[Weight], cands: &[SiteIdx], v: VertexId) -> SiteIdx {
        *cands
            .iter()
            .min_by_key(|&&s| site_key(omega[s as usize], self.dist[s as usize][v as usize], self.sites[s as usize]))
            .unwrap()
    }

    pub fn cells(&self, omega: &[Weight], cands: &[SiteIdx], n: usize) -> Vec<SiteIdx> {
        (0..n as u32).map(|v| self.owner(omega, cands, v)).collect()
    }

    /// Every non-hole face whose corners fall into three different cells.
    pub fn trichromatic_faces(&self, inst: &Instance, omega: &[Weight], cands: &[SiteIdx]) -> Vec<FaceId> {
        let cells = self.cells(omega, cands, inst.graph.n());
        (0..inst.graph.num_faces() as FaceId)
            .filter(|&f| f != inst.hole)
            .filter(|&f| {
                let mut c: Vec<SiteIdx> = inst.graph.face_vertices(f).map(|v| cells[v as usize]).collect();
                c.sort_unstable();
                c.dedup();
                c.len() == 3
            })
            .collect()
    }
}

/// Three weight vectors: all zero, small random, large random.
pub fn weight_vectors(k: usize, seed: u64) -> Vec<Vec<Weight>> {
    let mut r = rng(seed);
    let mut small = Vec::new();
    let mut large = Vec::new();
    for _ in 0..k {
        small.push(Weight::new(r.random_range(0..200), 0));
        large.push(Weight::new(r.random_range(0..3000), 0));
    }
    vec![vec![Weight::ZERO; k], small, large]
}
