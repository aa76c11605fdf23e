//! The verification suite: executable audits of every module's invariants
//! on generated instances, collected into a [`Report`].

use super::audits;
use super::{bellman_ford, generate, Check, Instance, Kind, Report};
use crate::mssp::Mssp;
use crate::planar::{normalize, perturb, twin, DartId, PlanarGraph, VertexId, NONE};
use crate::trees::{dijkstra, CentroidTree, Cotree, RootedTree};
use crate::weight::Weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

/// Which groups of checks to run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub planar: bool,
    pub trees: bool,
    pub mssp: bool,
    pub voronoi: bool,
    pub finder: bool,
    pub builder: bool,
    pub locate: bool,
    pub oracle: bool,
    pub seed: u64,
    pub fault: Option<Fault>,
}

/// Deliberate corruption used to confirm that audits can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Sets one arc's tiebreak so that a second predecessor attains the
    /// shortest distance before the uniqueness audit runs.
    FlipTiebreak,
}

pub const GROUPS: [&str; 8] = ["planar", "trees", "mssp", "voronoi", "finder", "builder", "locate", "oracle"];

impl Scope {
    pub fn all(seed: u64) -> Scope {
        Scope { planar: true, trees: true, mssp: true, voronoi: true, finder: true, builder: true, locate: true, oracle: true, seed, fault: None }
    }
    pub fn empty() -> Scope {
        Scope::default()
    }
    /// Enables one group by name.
    pub fn enable(&mut self, group: &str) -> bool {
        let slot = match group {
            "planar" => &mut self.planar,
            "trees" => &mut self.trees,
            "mssp" => &mut self.mssp,
            "voronoi" => &mut self.voronoi,
            "finder" => &mut self.finder,
            "builder" => &mut self.builder,
            "locate" => &mut self.locate,
            "oracle" => &mut self.oracle,
            _ => return false,
        };
        *slot = true;
        true
    }
}

/// Result of one audit.
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
    pub probes: u64,
}

pub fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into(), probes: 0 }
}

pub(super) struct Suite {
    pub seed: u64,
    pub fault: Option<Fault>,
    pub report: Report,
}

impl Suite {
    /// Runs one audit; a panic inside it counts as a failure.
    pub fn run(&mut self, name: &str, instance: &str, n: usize, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f));
        let millis = t.elapsed().as_millis() as u64;
        let o = res.unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        self.report.checks.push(Check {
            name: name.into(),
            instance: instance.into(),
            seed: self.seed,
            n,
            passed: o.passed,
            detail: o.detail,
            probes: o.probes,
            millis,
        });
    }
}

pub(super) fn seeded(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub(super) fn label(inst: &Instance) -> String {
    match inst.kind {
        Kind::Grid { rows, cols } => format!("grid-{rows}x{cols}"),
        Kind::RandomTriangulation { points, hull } => format!("tri-{points}-h{hull}"),
    }
}

pub(super) fn mssp_of(inst: &Instance) -> Mssp {
    Mssp::new(Arc::new(inst.graph.clone()), inst.hole).expect("generated instances admit an MSSP")
}

/// Runs every enabled group. Instances are derived from `scope.seed`.
pub fn verify_suite(scope: &Scope) -> Report {
    let mut s = Suite { seed: scope.seed, fault: scope.fault, report: Report::new() };
    if scope.planar {
        planar_checks(&mut s);
    }
    if scope.trees {
        tree_checks(&mut s);
    }
    if scope.mssp {
        mssp_checks(&mut s);
    }
    if scope.voronoi {
        audits::voronoi_checks(&mut s);
    }
    if scope.finder {
        audits::finder_checks(&mut s);
    }
    if scope.builder {
        audits::builder_checks(&mut s);
    }
    if scope.locate {
        audits::locate_checks(&mut s);
    }
    if scope.oracle {
        audits::oracle_checks(&mut s);
    }
    s.report
}

/// Face count by walking darts straight from the rotation lists.
fn traced_faces(g: &PlanarGraph) -> usize {
    let rot = g.rotation();
    let pos: Vec<usize> = {
        let mut p = vec![0; g.num_darts()];
        for r in &rot {
            for (i, &d) in r.iter().enumerate() {
                p[d as usize] = i;
            }
        }
        p
    };
    let mut seen = vec![false; g.num_darts()];
    let mut faces = 0;
    for d0 in 0..g.num_darts() as DartId {
        if seen[d0 as usize] {
            continue;
        }
        faces += 1;
        let mut d = d0;
        while !seen[d as usize] {
            seen[d as usize] = true;
            let t = twin(d);
            let r = &rot[g.tail(t) as usize];
            d = r[(pos[t as usize] + r.len() - 1) % r.len()];
        }
    }
    faces
}

fn euler(g: &PlanarGraph) -> bool {
    g.n() as i64 - g.m() as i64 + g.num_faces() as i64 == 2
}

/// Every reachable non-root vertex has exactly one arc attaining its
/// shortest distance.
fn unique_predecessors(g: &PlanarGraph, root: VertexId) -> Result<(), String> {
    let dist = dijkstra(g, root).0;
    let mut count = vec![0u32; g.n()];
    for d in 0..g.num_darts() as DartId {
        let (t, h) = (g.tail(d), g.head(d));
        if g.usable(d) && h != root && !dist[t as usize].is_inf() && dist[t as usize] + g.weight(d) == dist[h as usize] {
            count[h as usize] += 1;
        }
    }
    match (0..g.n()).find(|&v| v != root as usize && !dist[v].is_inf() && count[v] != 1) {
        Some(v) => Err(format!("vertex {v} from root {root}: {} minimizing arcs", count[v])),
        None => Ok(()),
    }
}

/// `a - b` for `a >= b`, borrowing across the two components.
fn weight_sub(a: Weight, b: Weight) -> Weight {
    let x = ((a.len as u128) << 64 | a.tie as u128) - ((b.len as u128) << 64 | b.tie as u128);
    Weight { len: (x >> 64) as u64, tie: x as u64 }
}

/// Gives some non-tree arc into a vertex exactly the weight that ties it
/// with the tree arc.
fn inject_tie(g: &PlanarGraph, root: VertexId) -> PlanarGraph {
    let (dist, par) = dijkstra(g, root);
    let mut w = g.weights().to_vec();
    for d in 0..g.num_darts() as DartId {
        let (t, h) = (g.tail(d), g.head(d));
        if g.usable(d) && h != root && par[h as usize] != d && dist[t as usize] < dist[h as usize] {
            w[d as usize] = weight_sub(dist[h as usize], dist[t as usize]);
            return g.with_weights(w).expect("same structure");
        }
    }
    g.clone()
}

fn planar_checks(s: &mut Suite) {
    let (seed, fault) = (s.seed, s.fault);
    let grid = generate(Kind::Grid { rows: 8, cols: 8 }, s.seed).unwrap();
    s.run("planar.faces-traced", "grid-8x8-raw", grid.raw.n(), || {
        let (t, f) = (traced_faces(&grid.raw), grid.raw.num_faces());
        outcome(t == 50 && f == 50, format!("traced {t}, built {f}, expected 50"))
    });
    let tri = generate(Kind::RandomTriangulation { points: 300, hull: 16 }, s.seed).unwrap();
    for inst in [&grid, &tri] {
        let name = label(inst);
        s.run("planar.euler", &name, inst.n(), || {
            let ok = [&inst.raw, &inst.graph].iter().all(|g| euler(g) && traced_faces(g) == g.num_faces());
            outcome(ok, "n - m + f = 2 before and after normalization")
        });
        s.run("planar.dual", &name, inst.n(), || {
            let g = &inst.graph;
            let mut deg = vec![0usize; g.num_faces()];
            let mut inv = true;
            for e in 0..g.m() as u32 {
                let [a, b] = g.dual_ends(e);
                inv &= a == g.face_left(2 * e) && b == g.face_left(2 * e + 1) && b == g.face_right(2 * e);
                deg[a as usize] += 1;
                deg[b as usize] += 1;
            }
            let bad = (0..g.num_faces()).filter(|&f| deg[f] != g.face_len(f as u32)).count();
            outcome(inv && bad == 0, format!("involution {inv}, {bad} faces whose dual degree differs from size"))
        });
        s.run("planar.normalized", &name, inst.n(), || {
            let g = &inst.graph;
            let deg = (0..g.n() as u32).filter(|&v| g.usable_degree(v) > 3).count();
            let tri = (0..g.num_faces() as u32).filter(|&f| f != inst.hole && g.face_len(f) != 3).count();
            let mut rng = ChaCha8Rng::seed_from_u64(inst.seed);
            let mut diff = 0;
            for _ in 0..5 {
                let u = rng.random_range(0..inst.raw.n() as u32);
                let (a, b) = (dijkstra(&inst.raw, u).0, dijkstra(g, u).0);
                diff += (0..inst.raw.n()).filter(|&v| a[v].len != b[v].len).count();
            }
            outcome(deg == 0 && tri == 0 && diff == 0, format!("{deg} vertices of usable degree > 3, {tri} non-triangles, {diff} distance changes"))
        });
        s.run("planar.uniqueness", &name, inst.n(), || {
            let mut g = inst.graph.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(inst.seed ^ 7);
            let roots: Vec<VertexId> = (0..4).map(|_| rng.random_range(0..g.n() as u32)).collect();
            if fault == Some(Fault::FlipTiebreak) {
                g = inject_tie(&g, roots[0]);
            }
            match roots.iter().try_for_each(|&r| unique_predecessors(&g, r)) {
                Ok(()) => outcome(true, "every shortest path is unique"),
                Err(e) => outcome(false, e),
            }
        });
    }
    s.run("planar.degree5", "wheel-5", 6, || {
        let mut coords = vec![[0.0, 0.0]];
        let mut ends = Vec::new();
        for i in 0..5 {
            let a = i as f64 * std::f64::consts::TAU / 5.0;
            coords.push([a.cos(), a.sin()]);
            ends.push([0, i + 1]);
            ends.push([i + 1, (i + 1) % 5 + 1]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let w = (0..2 * ends.len()).map(|_| Weight::new(rng.random_range(1..20), 0)).collect();
        let g = PlanarGraph::from_coords(coords, ends, w, None).unwrap();
        let nz = normalize(&g, g.infinite_face()).unwrap();
        let gadget = nz.origin.iter().filter(|&&o| o == 0).count();
        let deg_ok = (0..nz.graph.n() as u32).all(|v| nz.graph.usable_degree(v) <= 3);
        let same = (0..6).all(|u| {
            let (a, b) = (dijkstra(&g, u).0, dijkstra(&nz.graph, u).0);
            (0..6).all(|v| a[v] == b[v])
        });
        outcome(deg_ok && same && gadget == 3, format!("center split into {gadget} vertices, degrees ok {deg_ok}, distances equal {same}"))
    });
    s.run("planar.perturb-two-paths", "hexagon-6", 6, || {
        let coords: Vec<[f64; 2]> = (0..6).map(|i| {
            let a = i as f64 * std::f64::consts::TAU / 6.0;
            [a.cos(), a.sin()]
        }).collect();
        // two length-3 paths 0-1-2-3 and 0-5-4-3
        let ends = vec![[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0]];
        let g = PlanarGraph::from_coords(coords, ends, vec![Weight::new(1, 0); 12], None).unwrap();
        let p = perturb(&g, seed);
        let mut totals = Vec::new();
        let mut stack = vec![(0u32, Weight::ZERO, 1u64)];
        while let Some((v, w, seen)) = stack.pop() {
            if v == 3 {
                totals.push(w);
                continue;
            }
            for &d in p.out_darts(v) {
                let h = p.head(d);
                if seen & (1 << h) == 0 {
                    stack.push((h, w + p.weight(d), seen | 1 << h));
                }
            }
        }
        let best = *totals.iter().min().unwrap();
        let ties = totals.iter().filter(|&&t| t == best).count();
        let unique = unique_predecessors(&p, 0).is_ok();
        outcome(totals.len() == 2 && ties == 1 && unique, format!("{} simple paths, {ties} minimal", totals.len()))
    });
    s.run("harness.determinism", "tri-300-h16", tri.n(), || {
        let again = generate(tri.kind, tri.seed).unwrap();
        let same = crate::planar::write_graph(&again.graph) == crate::planar::write_graph(&tri.graph);
        outcome(same, "regenerated file identical")
    });
}

fn tree_checks(s: &mut Suite) {
    let seed = s.seed;
    let rg = generate(Kind::Grid { rows: 10, cols: 20 }, s.seed).unwrap();
    s.run("trees.bellman-ford", "grid-10x20-raw", rg.raw.n(), || {
        let mut rng = seeded(seed, 1);
        let bad: usize = (0..3)
            .map(|_| {
                let r = rng.random_range(0..rg.raw.n() as u32);
                let (a, b) = (dijkstra(&rg.raw, r).0, bellman_ford(&rg.raw, r));
                (0..rg.raw.n()).filter(|&v| a[v] != b[v]).count()
            })
            .sum();
        outcome(bad == 0, format!("{bad} mismatches over 3 roots"))
    });
    let grid = generate(Kind::Grid { rows: 8, cols: 8 }, s.seed).unwrap();
    s.run("trees.fundamental-cycle-enclosure", "grid-8x8-raw", grid.raw.n(), || {
        let g = &grid.raw;
        let inf = g.infinite_face();
        let root_ref = g.face_darts(inf)[0];
        let t = RootedTree::shortest_path_tree(g, g.tail(root_ref), Some(root_ref));
        let cot = Cotree::build(g, &t, inf).unwrap();
        let c = g.coords().unwrap();
        let centroid = |f: u32| {
            let k = g.face_len(f) as f64;
            g.face_vertices(f).fold([0.0, 0.0], |a, v| [a[0] + c[v as usize][0] / k, a[1] + c[v as usize][1] / k])
        };
        let mut bad = 0;
        let mut checked = 0;
        for e in 0..g.m() as u32 {
            if t.is_tree_edge(g, e) {
                continue;
            }
            checked += 1;
            let poly: Vec<[f64; 2]> = t.fundamental_cycle(g, e).iter().map(|&d| c[g.tail(d) as usize]).collect();
            let [a, b] = g.dual_ends(e);
            let child = if cot.parent_edge(a) == e { a } else { b };
            for f in 0..g.num_faces() as u32 {
                if f == inf {
                    continue;
                }
                if point_in_polygon(centroid(f), &poly) != cot.index().is_ancestor(child, f) {
                    bad += 1;
                }
            }
        }
        outcome(bad == 0, format!("{checked} cycles, {bad} faces misplaced"))
    });
    let tri = generate(Kind::RandomTriangulation { points: 300, hull: 16 }, s.seed).unwrap();
    for inst in [&grid, &tri] {
        let name = label(inst);
        let m = mssp_of(inst);
        let g = m.graph();
        s.run("trees.cotree-partition", &name, inst.n(), || {
            let t = m.tree(0);
            let cot = &m.dual(0).cotree;
            let mut in_cot = vec![false; g.m()];
            for f in 0..g.num_faces() as u32 {
                if f != cot.root() {
                    in_cot[cot.parent_edge(f) as usize] = true;
                }
            }
            let both = (0..g.m() as u32).filter(|&e| t.is_tree_edge(g, e) == in_cot[e as usize]).count();
            let ncot = in_cot.iter().filter(|&&x| x).count();
            outcome(both == 0 && ncot == g.m() - (g.n() - 1), format!("{ncot} cotree edges, {both} edges in both or neither"))
        });
        s.run("trees.fundamental-paths", &name, inst.n(), || {
            let t = m.tree(0);
            let cot = &m.dual(0).cotree;
            let ix = cot.index();
            let mut rng = seeded(seed, 2);
            let tree_edges: Vec<u32> = (0..g.m() as u32).filter(|&e| t.is_tree_edge(g, e)).collect();
            let mut bad = 0;
            for _ in 0..100 {
                let e = tree_edges[rng.random_range(0..tree_edges.len())];
                let [a, b] = g.dual_ends(e);
                let walk = |mut f: u32| {
                    let mut out = vec![f];
                    while f != cot.root() {
                        let pe = cot.parent_edge(f);
                        let [x, y] = g.dual_ends(pe);
                        f = if x == f { y } else { x };
                        out.push(f);
                    }
                    out
                };
                let (pa, pb) = (walk(a), walk(b));
                let q = *pa.iter().find(|f| pb.contains(f)).unwrap();
                let la = pa.iter().position(|&f| f == q).unwrap() as u32;
                let lb = pb.iter().position(|&f| f == q).unwrap() as u32;
                let l = ix.lca(a, b);
                let ok = l == q
                    && la == ix.depth(a) - ix.depth(l)
                    && lb == ix.depth(b) - ix.depth(l)
                    && (0..la).all(|i| cot.path_edge(a, i) == cot.parent_edge(pa[i as usize]));
                bad += usize::from(!ok);
            }
            outcome(bad == 0, format!("{bad} of 100 edges disagree with explicit walks"))
        });
        s.run("trees.queries", &name, inst.n(), || {
            let t = m.tree(0);
            let ix = t.index();
            let mut rng = seeded(seed, 3);
            let n = g.n() as u32;
            let marked: Vec<bool> = (0..n).map(|_| rng.random_range(0..5) == 0).collect();
            let near = ix.nearest_marked_ancestors(&marked);
            let mut bad = 0;
            for _ in 0..200 {
                let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
                let pa = t.path_to_root(a);
                let pb = t.path_to_root(b);
                let l = *pa.iter().find(|v| pb.contains(v)).unwrap();
                let d = rng.random_range(0..=ix.depth(a));
                let la = pa[(ix.depth(a) - d) as usize];
                let mk = pa.iter().copied().find(|&v| marked[v as usize]).unwrap_or(NONE);
                bad += usize::from(ix.lca(a, b) != l || ix.level_ancestor(a, d) != la || near[a as usize] != mk || ix.lca(a, a) != a);
            }
            outcome(bad == 0, format!("{bad} of 200 lca/level-ancestor/marked-ancestor queries wrong"))
        });
        s.run("trees.centroid-bounds", &name, inst.n(), || {
            let ct = &m.dual(0).centroid;
            audit_centroid(ct)
        });
    }
    s.run("trees.centroid-bounds", "random-tree-500", 501, || {
        let mut rng = seeded(seed, 4);
        let mut deg = vec![0u8; 501];
        let mut edges = Vec::new();
        for v in 1..501u32 {
            let p = loop {
                let p = rng.random_range(0..v);
                if deg[p as usize] < 3 {
                    break p;
                }
            };
            deg[p as usize] += 1;
            deg[v as usize] += 1;
            edges.push((p, v));
        }
        audit_centroid(&CentroidTree::build(501, &edges))
    });
    s.run("trees.left-right-geometry", "grid-8x8-raw", grid.raw.n(), || {
        let g = &grid.raw;
        let c = g.coords().unwrap();
        let inf = g.infinite_face();
        let root_ref = g.face_darts(inf)[0];
        let t = RootedTree::shortest_path_tree(g, g.tail(root_ref), Some(root_ref));
        let ix = t.index();
        let angle = |d: DartId| {
            let (a, b) = (c[g.tail(d) as usize], c[g.head(d) as usize]);
            (b[1] - a[1]).atan2(b[0] - a[0])
        };
        let mut rng = seeded(seed, 5);
        let (mut bad, mut tested) = (0, 0);
        while tested < 1000 {
            let (a, b) = (rng.random_range(0..g.n() as u32), rng.random_range(0..g.n() as u32));
            if ix.is_ancestor(a, b) || ix.is_ancestor(b, a) {
                continue;
            }
            tested += 1;
            let z = ix.lca(a, b);
            let ca = ix.level_ancestor(a, ix.depth(z) + 1);
            let cb = ix.level_ancestor(b, ix.depth(z) + 1);
            let r = angle(t.reference(z));
            // counterclockwise turn from the reference, in (0, 2pi]
            let off = |x: VertexId| {
                let o = (angle(t.parent_dart(x)) - r).rem_euclid(std::f64::consts::TAU);
                if o < 1e-9 { std::f64::consts::TAU } else { o }
            };
            let geo = off(ca).partial_cmp(&off(cb)).unwrap();
            bad += usize::from(geo != ix.left_right_order(a, b));
        }
        outcome(bad == 0, format!("{bad} of {tested} triples disagree with coordinates"))
    });
}

fn audit_centroid(ct: &CentroidTree) -> Outcome {
    let mut bad = 0;
    for node in ct.nodes() {
        // at most floor(n / k) edges per component, n vertices, k = 3/2
        let limit = 2 * (node.size + 1) / 3;
        for ch in [node.child_u, node.child_v] {
            if let Some(c) = ct.node(ch) {
                bad += usize::from(c.size > limit);
            }
        }
    }
    let edges = ct.root().map_or(0, |r| r.size) as f64;
    let bound = (edges.max(1.0).ln() / 1.5f64.ln()).ceil() as usize + 2;
    outcome(bad == 0 && ct.depth() <= bound, format!("{bad} oversized components, height {} (bound {bound})", ct.depth()))
}

fn point_in_polygon(p: [f64; 2], poly: &[[f64; 2]]) -> bool {
    let mut inside = false;
    let k = poly.len();
    for i in 0..k {
        let (a, b) = (poly[i], poly[(i + 1) % k]);
        if (a[1] > p[1]) != (b[1] > p[1]) && p[0] < a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]) {
            inside = !inside;
        }
    }
    inside
}

fn mssp_checks(s: &mut Suite) {
    let seed = s.seed;
    for (kind, salt) in [
        (Kind::Grid { rows: 9, cols: 7 }, 0),
        (Kind::RandomTriangulation { points: 200, hull: 12 }, 1),
        (Kind::RandomTriangulation { points: 300, hull: 20 }, 2),
    ] {
        let inst = generate(kind, s.seed + salt).unwrap();
        let name = label(&inst);
        let m = mssp_of(&inst);
        let g = m.graph();
        let k = m.num_sites() as u32;
        s.run("mssp.site-distances", &name, inst.n(), || {
            let bad: usize = (0..k)
                .map(|i| {
                    let d = dijkstra(g, m.site_vertex(i)).0;
                    (0..g.n() as u32).filter(|&v| m.dist(i, v) != d[v as usize]).count()
                })
                .sum();
            outcome(bad == 0 && m.dist(0, m.site_vertex(0)) == Weight::ZERO, format!("{bad} mismatches over {k} sites"))
        });
        s.run("mssp.sampled-pairs", &name, inst.n(), || {
            let mut rng = seeded(seed, 6 + salt);
            let rows: Vec<Vec<Weight>> = (0..k).map(|i| bellman_ford(g, m.site_vertex(i))).collect();
            let bad = (0..10_000)
                .filter(|_| {
                    let (i, v) = (rng.random_range(0..k), rng.random_range(0..g.n() as u32));
                    m.dist(i, v) != rows[i as usize][v as usize]
                })
                .count();
            outcome(bad == 0, format!("{bad} of 10000 pairs differ from Bellman-Ford"))
        });
        s.run("mssp.hole-order", &name, inst.n(), || {
            let mut bad = 0;
            let mut tested = 0;
            for i in 0..k {
                let ix = m.tree(i).index();
                for a in 0..k {
                    for b in 0..k {
                        let (va, vb) = (m.site_vertex(a), m.site_vertex(b));
                        if a == b || ix.is_ancestor(va, vb) || ix.is_ancestor(vb, va) {
                            continue;
                        }
                        tested += 1;
                        // subtrees are met in order of decreasing cyclic index from the root
                        let want = ((i + k - a) % k).cmp(&((i + k - b) % k));
                        bad += usize::from(ix.left_right_order(va, vb) != want);
                    }
                }
            }
            outcome(bad == 0, format!("{bad} of {tested} hole pairs out of cyclic order"))
        });
    }
}
