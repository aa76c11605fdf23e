//! Instance generators, brute-force references and the verification suite.

mod audits;
mod bench;
mod report;
mod verify;

pub use audits::{builder_call_ratio, nearest_sites, BUILDER_CALL_CONSTANT};
pub use bench::{finder_probe_scaling, Scaling, ScalingPoint, SCALING_HULL};
pub use report::{Check, Report};
pub use verify::{verify_suite, Fault, Scope, GROUPS};

use crate::error::{Error, Result};
use crate::planar::{normalize, perturb, FaceId, PlanarGraph, VertexId};
use crate::trees::dijkstra;
use crate::weight::Weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use spade::{DelaunayTriangulation, Point2, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Kind {
    /// `rows x cols` lattice with unit spacing.
    Grid { rows: usize, cols: usize },
    /// Delaunay triangulation of `points` points, `hull` of them evenly
    /// spaced on the unit circle and the rest uniform inside it.
    RandomTriangulation { points: usize, hull: usize },
}

/// Largest primary length drawn for generated arcs.
pub const MAX_ARC_LEN: u64 = 100;

#[derive(Clone, Debug)]
pub struct Instance {
    pub kind: Kind,
    pub seed: u64,
    /// Generated graph before normalization (random lengths, no tiebreaks).
    pub raw: PlanarGraph,
    /// Normalized and perturbed graph.
    pub graph: PlanarGraph,
    pub hole: FaceId,
    pub origin: Vec<VertexId>,
}

impl Instance {
    pub fn name(&self) -> &'static str {
        match self.kind {
            Kind::Grid { .. } => "grid",
            Kind::RandomTriangulation { .. } => "random-triangulation",
        }
    }
    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// Generates a normalized, perturbed instance. The hole is the outer face.
pub fn generate(kind: Kind, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (coords, ends, hint) = match kind {
        Kind::Grid { rows, cols } => {
            if rows < 2 || cols < 2 || rows * cols > 1 << 22 {
                return Err(Error::Invalid(format!("grid {rows}x{cols} outside 2..=2^22 vertices")));
            }
            grid_layout(rows, cols)
        }
        Kind::RandomTriangulation { points, hull } => {
            if hull < 3 || points < hull || points > 1 << 20 {
                return Err(Error::Invalid(format!("need 3 <= hull ({hull}) <= points ({points}) <= 2^20")));
            }
            triangulation_layout(points, hull, &mut rng)?
        }
    };
    let mut weights = Vec::with_capacity(2 * ends.len());
    for _ in 0..2 * ends.len() {
        weights.push(Weight::new(rng.random_range(1..=MAX_ARC_LEN), 0));
    }
    let raw = PlanarGraph::from_coords(coords, ends, weights, None)?;
    let raw = match hint {
        Some((a, b)) => {
            let d = raw.dart_between(a, b).ok_or_else(|| Error::Invalid("hull edge missing".into()))?;
            raw.with_infinite_face(raw.face_left(d))
        }
        None => raw,
    };
    let nz = normalize(&raw, raw.infinite_face())?;
    let graph = perturb(&nz.graph, seed);
    Ok(Instance { kind, seed, raw, graph, hole: nz.hole, origin: nz.origin })
}

type Layout = (Vec<[f64; 2]>, Vec<[VertexId; 2]>, Option<(VertexId, VertexId)>);

fn grid_layout(rows: usize, cols: usize) -> Layout {
    let mut coords = Vec::with_capacity(rows * cols);
    let mut ends = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            coords.push([c as f64, r as f64]);
            let v = (r * cols + c) as VertexId;
            if c + 1 < cols {
                ends.push([v, v + 1]);
            }
            if r + 1 < rows {
                ends.push([v, v + cols as VertexId]);
            }
        }
    }
    (coords, ends, None)
}

fn triangulation_layout(points: usize, hull: usize, rng: &mut ChaCha8Rng) -> Result<Layout> {
    let mut coords = Vec::with_capacity(points);
    for i in 0..hull {
        let a = std::f64::consts::TAU * i as f64 / hull as f64;
        coords.push([a.cos(), a.sin()]);
    }
    let inner = 0.95 * (std::f64::consts::PI / hull as f64).cos();
    while coords.len() < points {
        let (x, y): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if x * x + y * y < inner * inner {
            coords.push([x, y]);
        }
    }
    let mut t: DelaunayTriangulation<Point2<f64>> = DelaunayTriangulation::new();
    for (i, &[x, y]) in coords.iter().enumerate() {
        let h = t.insert(Point2::new(x, y)).map_err(|e| Error::Invalid(format!("triangulation failed: {e:?}")))?;
        if h.index() != i {
            return Err(Error::Invalid("duplicate point in triangulation input".into()));
        }
    }
    let ends = t
        .undirected_edges()
        .map(|e| {
            let [a, b] = e.vertices();
            [a.fix().index() as VertexId, b.fix().index() as VertexId]
        })
        .collect();
    // the hull runs counterclockwise, so the dart from point 1 to point 0 sees the outside
    Ok((coords, ends, Some((1, 0))))
}

/// Reference distance by Dijkstra over the instance graph.
pub fn brute_force_distance(g: &PlanarGraph, u: VertexId, v: VertexId) -> Weight {
    dijkstra(g, u).0[v as usize]
}

/// Bellman-Ford distances, used to cross-check Dijkstra.
pub fn bellman_ford(g: &PlanarGraph, root: VertexId) -> Vec<Weight> {
    let mut d = vec![Weight::INF; g.n()];
    d[root as usize] = Weight::ZERO;
    for _ in 0..g.n() {
        let mut changed = false;
        for a in 0..g.num_darts() as u32 {
            let w = g.weight(a);
            let t = d[g.tail(a) as usize];
            if w.is_inf() || t.is_inf() {
                continue;
            }
            let c = t + w;
            if c < d[g.head(a) as usize] {
                d[g.head(a) as usize] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    d
}
