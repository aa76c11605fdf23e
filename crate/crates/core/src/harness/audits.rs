//! Audits of Voronoi diagrams, the finder, the builder, point location and
//! the oracle. Reference answers come from multi-source Dijkstra runs that
//! share no code with the structures under test.

use super::verify::{label, mssp_of, outcome, seeded, Outcome, Suite};
use super::{generate, Instance, Kind};
use crate::mssp::{Mssp, SiteIdx};
use crate::planar::{edge_of, normalize, EdgeId, FaceId, PlanarGraph, VertexId, NONE};
use crate::locate::PlIndex;
use crate::oracle::{build_oracle, build_r_division, complement};
use crate::trees::dijkstra;
use crate::vdbuild::{build_vdstar_fast, corner_owners, verify_apex};
use crate::trifind::{find_critical, trichromatic_face, DecisionPredicate, Trichromatic};
use crate::voronoi::{bisector, site_respecting, Bisector, Coloring, Diagram, NodeLabel};
use crate::weight::Weight;
use rand::Rng;
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::sync::Arc;

type Key = (Weight, Reverse<Weight>, Reverse<VertexId>);

/// Owner (index into `sites`) and additive distance of every vertex, by one
/// Dijkstra run over labels `(omega + d, larger omega, larger vertex)`.
pub fn nearest_sites(g: &PlanarGraph, sites: &[(VertexId, Weight)]) -> Vec<(u32, Weight)> {
    let mut best: Vec<Option<(Key, u32)>> = vec![None; g.n()];
    let mut heap = BinaryHeap::new();
    for (i, &(v, w)) in sites.iter().enumerate() {
        let k = (w, Reverse(w), Reverse(v));
        if best[v as usize].is_none_or(|(b, _)| k < b) {
            best[v as usize] = Some((k, i as u32));
            heap.push(Reverse((k, i as u32, v)));
        }
    }
    while let Some(Reverse((k, i, v))) = heap.pop() {
        if best[v as usize] != Some((k, i)) {
            continue;
        }
        for &d in g.out_darts(v) {
            if !g.usable(d) {
                continue;
            }
            let h = g.head(d);
            let nk = (k.0 + g.weight(d), k.1, k.2);
            if best[h as usize].is_none_or(|(b, _)| nk < b) {
                best[h as usize] = Some((nk, i));
                heap.push(Reverse((nk, i, h)));
            }
        }
    }
    best.into_iter().map(|b| b.map_or((NONE, Weight::INF), |(k, i)| (i, k.0))).collect()
}

/// Cells of the candidate sites of `m` under `omega`, as site indices.
fn reference_cells(m: &Mssp, omega: &[Weight], cands: &[SiteIdx]) -> Vec<SiteIdx> {
    let srcs: Vec<(VertexId, Weight)> = cands.iter().map(|&s| (m.site_vertex(s), omega[s as usize])).collect();
    nearest_sites(m.graph(), &srcs).into_iter().map(|(i, _)| cands[i as usize]).collect()
}

fn trichromatic_faces(g: &PlanarGraph, hole: FaceId, cells: &[SiteIdx]) -> Vec<FaceId> {
    (0..g.num_faces() as FaceId)
        .filter(|&f| f != hole)
        .filter(|&f| {
            let mut c: Vec<SiteIdx> = g.face_vertices(f).map(|v| cells[v as usize]).collect();
            c.sort_unstable();
            c.dedup();
            c.len() == 3
        })
        .collect()
}

fn bichromatic(g: &PlanarGraph, cells: &[SiteIdx]) -> BTreeSet<EdgeId> {
    (0..g.m() as EdgeId)
        .filter(|&e| {
            let [a, b] = g.ends(e);
            cells[a as usize] != cells[b as usize]
        })
        .collect()
}

pub(super) fn random_omega(k: usize, spread: u64, rng: &mut impl Rng) -> Vec<Weight> {
    (0..k).map(|_| Weight::new(rng.random_range(0..=spread), 0)).collect()
}

fn tri(points: usize, hull: usize, seed: u64) -> Instance {
    generate(Kind::RandomTriangulation { points, hull }, seed).unwrap()
}

pub(super) fn voronoi_checks(s: &mut Suite) {
    let seed = s.seed;
    for (inst, salt) in [(tri(150, 12, seed), 0u64), (tri(250, 16, seed + 1), 1)] {
        let name = label(&inst);
        let m = mssp_of(&inst);
        let g = m.graph();
        let k = m.num_sites();
        let all: Vec<SiteIdx> = (0..k as u32).collect();
        let omega = random_omega(k, 400, &mut seeded(seed, 20 + salt));
        s.run("voronoi.cells", &name, inst.n(), || {
            let lib = Coloring::new(&m, &omega, &all).cells();
            let refc = reference_cells(&m, &omega, &all);
            let bad = (0..g.n()).filter(|&v| lib[v] != refc[v]).count();
            outcome(bad == 0, format!("{bad} vertices colored differently from multi-source Dijkstra"))
        });
        s.run("voronoi.cells-connected", &name, inst.n(), || {
            let cells = reference_cells(&m, &omega, &all);
            let mut comp = vec![NONE; g.n()];
            let mut per_site = vec![0u32; k];
            for v0 in 0..g.n() as u32 {
                if comp[v0 as usize] != NONE {
                    continue;
                }
                per_site[cells[v0 as usize] as usize] += 1;
                comp[v0 as usize] = v0;
                let mut stack = vec![v0];
                while let Some(v) = stack.pop() {
                    for &d in g.out_darts(v) {
                        let h = g.head(d);
                        if g.usable(d) && comp[h as usize] == NONE && cells[h as usize] == cells[v as usize] {
                            comp[h as usize] = v0;
                            stack.push(h);
                        }
                    }
                }
            }
            let split = per_site.iter().filter(|&&c| c > 1).count();
            outcome(split == 0, format!("{split} cells in more than one piece"))
        });
        s.run("voronoi.tree-shape", &name, inst.n(), || {
            let w = site_respecting(&m, &omega);
            let cells = reference_cells(&m, &w, &all);
            let d = Diagram::from_cells(g, m.hole(), &cells);
            let tri = trichromatic_faces(g, m.hole(), &cells).len();
            let ok = d.is_tree() && d.num_leaves() == d.num_internal() + 2 && d.num_internal() == tri;
            outcome(ok, format!("{} leaves, {} internal, {tri} trichromatic faces", d.num_leaves(), d.num_internal()))
        });
        s.run("voronoi.bisector-bichromatic", &name, inst.n(), || {
            let mut rng = seeded(seed, 30 + salt);
            let mut bad = 0;
            for _ in 0..20 {
                let (a, b) = (rng.random_range(0..k as u32), rng.random_range(0..k as u32));
                if a == b {
                    continue;
                }
                let want = bichromatic(g, &reference_cells(&m, &omega, &[a, b]));
                let ok = match bisector(&m, &omega, a, b) {
                    Bisector::Cycle(c) => {
                        let ends_on_hole = [c[0], c[c.len() - 1]].iter().all(|&e| m.hole_index_of_edge(e).is_some());
                        ends_on_hole && c.iter().copied().collect::<BTreeSet<_>>() == want && c.len() == want.len()
                    }
                    Bisector::Degenerate => want.is_empty(),
                };
                bad += usize::from(!ok);
            }
            outcome(bad == 0, format!("{bad} of 20 bisectors differ from the bichromatic edge set"))
        });
    }
    let inst = tri(120, 7, seed + 2);
    s.run("voronoi.hull-7", &label(&inst), inst.n(), || {
        let m = mssp_of(&inst);
        let all: Vec<SiteIdx> = (0..7).collect();
        let d = Diagram::brute_force(&m, &[Weight::ZERO; 7], &all);
        outcome(d.is_tree() && d.num_leaves() == 7 && d.num_internal() == 5, format!("{} leaves, {} internal", d.num_leaves(), d.num_internal()))
    });
    s.run("voronoi.symmetric-bisector", "unit-grid-5x7", 35, || {
        let (rows, cols) = (5u32, 7u32);
        let coords = (0..rows * cols).map(|v| [(v % cols) as f64, (v / cols) as f64]).collect();
        let mut ends = Vec::new();
        for v in 0..rows * cols {
            if v % cols + 1 < cols {
                ends.push([v, v + 1]);
            }
            if v / cols + 1 < rows {
                ends.push([v, v + cols]);
            }
        }
        let g = PlanarGraph::from_coords(coords, ends, vec![Weight::new(1, 0); 4 * ((rows * (cols - 1) + cols * (rows - 1)) as usize) / 2], None).unwrap();
        let nz = normalize(&g, g.infinite_face()).unwrap();
        let m = Mssp::new(Arc::new(nz.graph.clone()), nz.hole).unwrap();
        let (left, right) = (2 * cols, 2 * cols + cols - 1);
        let (a, b) = (m.site_index(left).unwrap(), m.site_index(right).unwrap());
        // Manhattan distances; the middle column ties and goes to the larger vertex
        let owner = |v: VertexId| {
            let o = nz.origin[v as usize];
            let (x, y) = ((o % cols) as i64, (o / cols) as i64);
            let dl = x + (y - 2).abs();
            let dr = (cols as i64 - 1 - x) + (y - 2).abs();
            if dl < dr { a } else { b }
        };
        let cells: Vec<SiteIdx> = (0..nz.graph.n() as u32).map(owner).collect();
        let want = bichromatic(&nz.graph, &cells);
        let cut: Vec<[VertexId; 2]> = want
            .iter()
            .filter(|&&e| nz.graph.usable(2 * e))
            .map(|&e| nz.graph.ends(e).map(|v| nz.origin[v as usize]))
            .collect();
        let vertical = cut.len() == rows as usize && cut.iter().all(|&[x, y]| x.min(y) % cols == 2 && x.max(y) == x.min(y) + 1);
        let same = match bisector(&m, &[Weight::ZERO; 1].repeat(m.num_sites()), a, b) {
            Bisector::Cycle(c) => c.into_iter().collect::<BTreeSet<_>>() == want,
            Bisector::Degenerate => false,
        };
        outcome(vertical && same, format!("cut edges {cut:?}, matches bisector {same}"))
    });
    let inst = tri(400, 10, seed + 3);
    s.run("voronoi.hole-tree-edges", &label(&inst), inst.n(), || hole_tree_audit(&inst));
}

/// For a region's complement with sites weighted by distances from a
/// boundary vertex `q`: a shortest-path-tree edge from `q` separates two
/// cells exactly when its child is a site, and no bisector crosses more
/// than one tree edge.
fn hole_tree_audit(inst: &Instance) -> Outcome {
    let g = &inst.graph;
    let div = build_r_division(g, 150).unwrap();
    let (mut bad_edges, mut bad_chains, mut chains, mut cases) = (0, 0, 0, 0);
    for region in div.regions.iter().filter(|r| !r.boundary.is_empty()).take(3) {
        let c = complement(g, &div.face_region, region).unwrap();
        let m = Mssp::new(Arc::new(c.graph), c.hole).unwrap();
        let h = m.graph();
        for &q in region.boundary.iter().step_by((region.boundary.len() / 4).max(1)) {
            cases += 1;
            let (dg, par) = dijkstra(g, q);
            let in_tree = |e: EdgeId| {
                let [a, b] = g.ends(e);
                par[b as usize] == 2 * e || par[a as usize] == 2 * e + 1
            };
            let omega: Vec<Weight> = m.sites().iter().map(|&sv| dg[c.to_g[sv as usize] as usize]).collect();
            let all: Vec<SiteIdx> = (0..m.num_sites() as u32).collect();
            let cells = reference_cells(&m, &omega, &all);
            for he in 0..h.m() as EdgeId {
                let e = c.edge_to_g[he as usize];
                if e == NONE || !in_tree(e) {
                    continue;
                }
                let [a, b] = g.ends(e);
                let child = if par[b as usize] == 2 * e { b } else { a };
                let [x, y] = h.ends(he);
                let bichro = cells[x as usize] != cells[y as usize];
                let child_site = m.site_index(c.to_h[child as usize]).is_some();
                bad_edges += usize::from(bichro != child_site);
            }
            for chain in Diagram::from_cells(h, m.hole(), &cells).chains {
                chains += 1;
                let crossed = chain.iter().filter(|&&he| c.edge_to_g[he as usize] != NONE && in_tree(c.edge_to_g[he as usize])).count();
                bad_chains += usize::from(crossed > 1);
            }
        }
    }
    outcome(
        cases > 0 && bad_edges == 0 && bad_chains == 0,
        format!("{cases} sources: {bad_edges} tree edges misclassified, {bad_chains} of {chains} chains cross several tree edges"),
    )
}

pub(super) fn finder_checks(s: &mut Suite) {
    let seed = s.seed;
    let inst = tri(120, 9, seed + 4);
    let name = label(&inst);
    let m = mssp_of(&inst);
    let g = m.graph();
    let k = m.num_sites() as u32;
    let omegas = [vec![Weight::ZERO; k as usize], random_omega(k as usize, 300, &mut seeded(seed, 40))];
    let triples: Vec<[SiteIdx; 3]> = (0..k)
        .flat_map(|x| (0..k).flat_map(move |a| (a + 1..k).map(move |b| [x, a, b])))
        .filter(|&[x, a, b]| x != a && x != b)
        .collect();
    s.run("finder.exhaustive", &name, inst.n(), || {
        let (mut bad, mut found) = (0, 0);
        for omega in &omegas {
            for &[x, a, b] in &triples {
                let want = trichromatic_faces(g, m.hole(), &reference_cells(&m, omega, &[x, a, b]));
                let got = trichromatic_face(&m, omega, x, a, b);
                found += usize::from(got.is_some());
                bad += usize::from(want.len() > 1 || got != want.first().copied());
            }
        }
        outcome(bad == 0, format!("{bad} of {} triples wrong, {found} faces found", 2 * triples.len()))
    });
    s.run("finder.prefix", &name, inst.n(), || {
        let mut rng = seeded(seed, 41);
        let (mut bad, mut pairs) = (0, 0);
        for _ in 0..20 {
            let [x, a, b] = triples[rng.random_range(0..triples.len())];
            let cells = reference_cells(&m, &omegas[1], &[x, a, b]);
            let t = m.tree(x);
            for _ in 0..50 {
                pairs += 1;
                let path = t.path_to_root(rng.random_range(0..g.n() as u32));
                // colors read from the root down: x then never x again
                let mut left_x = false;
                let mut ok = true;
                for &v in path.iter().rev() {
                    if cells[v as usize] == x {
                        ok &= !left_x;
                    } else {
                        left_x = true;
                    }
                }
                bad += usize::from(!ok);
            }
        }
        outcome(bad == 0, format!("{bad} of {pairs} root paths leave the cell of their root and re-enter it"))
    });
    s.run("finder.critical-edges", &name, inst.n(), || {
        let mut rng = seeded(seed, 42);
        let (mut bad, mut tested) = (0, 0);
        for _ in 0..20 {
            let cands = triples[rng.random_range(0..triples.len())];
            let x = cands[0];
            let col = Coloring::new(&m, &omegas[1], &cands);
            let cells = reference_cells(&m, &omegas[1], &cands);
            let t = m.tree(x);
            let cot = &m.dual(x).cotree;
            let green = |e: EdgeId| g.ends(e).iter().all(|&v| cells[v as usize] == x);
            for v in (0..g.n() as u32).filter(|&v| t.parent_dart(v) != NONE && green(edge_of(t.parent_dart(v)))).take(30) {
                tested += 1;
                let p = t.parent_dart(v);
                let starts = [g.face_right(p), g.face_left(p)];
                let crit = find_critical(&col, x, v);
                let want: Vec<Option<EdgeId>> = starts
                    .iter()
                    .map(|&f0| {
                        let mut f = f0;
                        let mut first = None;
                        while f != crit.q && !cot.index().is_ancestor(f, crit.q) {
                            let e = cot.parent_edge(f);
                            if first.is_none() && !green(e) {
                                first = Some(e);
                            }
                            let [l, r] = g.dual_ends(e);
                            f = if l == f { r } else { l };
                        }
                        first
                    })
                    .collect();
                let lca_ok = cot.index().is_ancestor(crit.q, starts[0]) && cot.index().is_ancestor(crit.q, starts[1]);
                bad += usize::from(!lca_ok || want != crit.critical);
            }
        }
        outcome(bad == 0, format!("{bad} of {tested} edges disagree with a linear scan"))
    });
    s.run("finder.decision-sound", &name, inst.n(), || {
        let (mut bad, mut tested) = (0, 0);
        for &cands in triples.iter().step_by(7) {
            let x = cands[0];
            let cells = reference_cells(&m, &omegas[1], &cands);
            let Some(&f) = trichromatic_faces(g, m.hole(), &cells).first() else { continue };
            let col = Coloring::new(&m, &omegas[1], &cands);
            let t = m.tree(x);
            let ix = t.index();
            let targets: Vec<VertexId> = g.face_vertices(f).filter(|&w| cells[w as usize] == x).collect();
            for v in (0..g.n() as u32).filter(|&v| t.parent_dart(v) != NONE) {
                let u = t.parent(v);
                if cells[u as usize] != x || cells[v as usize] != x {
                    continue;
                }
                tested += 1;
                let below = Trichromatic.decide(&col, x, &find_critical(&col, x, v));
                let truth = targets.iter().any(|&w| ix.is_ancestor(v, w));
                let either = targets.iter().any(|&w| w == u);
                bad += usize::from(below != truth && !either);
            }
        }
        outcome(bad == 0, format!("{bad} of {tested} decisions point away from the trichromatic face"))
    });
}

/// `c` in the audited bound: primitive calls <= c * |S|^2 * log2 |S|.
pub const BUILDER_CALL_CONSTANT: f64 = 2.0;

/// Primitive calls of one construction over `|S|^2 log2 |S|`.
pub fn builder_call_ratio(st: &crate::vdbuild::BuildStats) -> f64 {
    let k = st.sites.max(2) as f64;
    st.primitive_calls() as f64 / (k * k * k.log2())
}

pub(super) fn builder_checks(s: &mut Suite) {
    let seed = s.seed;
    for (inst, salt) in [(tri(150, 10, seed + 5), 0u64), (tri(300, 24, seed + 6), 1)] {
        let name = label(&inst);
        let m = mssp_of(&inst);
        let g = m.graph();
        let k = m.num_sites();
        let all: Vec<SiteIdx> = (0..k as u32).collect();
        let mut rng = seeded(seed, 50 + salt);
        let raw = random_omega(k, 2000, &mut rng);
        let omegas = [vec![Weight::ZERO; k], random_omega(k, 150, &mut rng), site_respecting(&m, &raw), raw];
        let built: Vec<_> = omegas.iter().map(|w| build_vdstar_fast(&m, w)).collect();
        s.run("builder.equivalence", &name, inst.n(), || {
            let mut bad = 0;
            for (w, b) in omegas.iter().zip(&built) {
                let want = Diagram::from_cells(g, m.hole(), &reference_cells(&m, w, &all));
                bad += usize::from(!b.as_ref().is_ok_and(|(d, _)| d.equivalent(&want)));
            }
            outcome(bad == 0, format!("{bad} of {} weightings differ from brute force", omegas.len()))
        });
        s.run("builder.apex-triples", &name, inst.n(), || {
            let mut bad = 0;
            let mut rejected = 0;
            let mut faces = 0;
            for (w, b) in omegas.iter().zip(&built) {
                let Ok((d, _)) = b else { continue };
                let col = Coloring::new(&m, w, &all);
                let nodes: BTreeSet<FaceId> = d.nodes.iter().filter_map(|n| match n.label { NodeLabel::Face(f) => Some(f), _ => None }).collect();
                for n in &d.nodes {
                    let NodeLabel::Face(f) = n.label else { continue };
                    faces += 1;
                    let triple = [n.sites[0], n.sites[1], n.sites[2]];
                    let distinct = triple[0] != triple[1] && triple[1] != triple[2] && triple[0] != triple[2];
                    bad += usize::from(!distinct || !verify_apex(&corner_owners(&col, f), triple));
                    // any other inner face must fail verification for this triple
                    let other = (0..g.num_faces() as FaceId).find(|&o| o != m.hole() && !nodes.contains(&o)).unwrap();
                    rejected += usize::from(!verify_apex(&corner_owners(&col, other), triple));
                }
            }
            outcome(bad == 0 && rejected == faces, format!("{faces} apex faces, {bad} fail verification, {rejected} non-apex faces rejected"))
        });
        s.run("builder.leaf-order", &name, inst.n(), || {
            let mut bad = 0;
            for b in &built {
                let Ok((d, _)) = b else { bad += 1; continue };
                let mut leaves: Vec<(u32, [SiteIdx; 2])> = d
                    .nodes
                    .iter()
                    .filter_map(|n| match n.label {
                        NodeLabel::Leaf(e) => Some((m.hole_index_of_edge(e).unwrap(), [n.sites[0], n.sites[1]])),
                        _ => None,
                    })
                    .collect();
                leaves.sort_unstable();
                let l = leaves.len();
                bad += (0..l).filter(|&i| leaves[i].1[1] != leaves[(i + 1) % l].1[0]).count();
            }
            outcome(bad == 0, format!("{bad} consecutive leaves disagree on the cell between them"))
        });
        s.run("builder.pair-bijection", &name, inst.n(), || {
            let mut bad = 0;
            for (w, b) in omegas.iter().zip(&built).skip(2).take(1) {
                let Ok((d, _)) = b else { bad += 1; continue };
                let cells = reference_cells(&m, w, &all);
                let adjacent: BTreeSet<[SiteIdx; 2]> = bichromatic(g, &cells)
                    .into_iter()
                    .map(|e| {
                        let [a, z] = g.ends(e).map(|v| cells[v as usize]);
                        [a.min(z), a.max(z)]
                    })
                    .collect();
                let pairs: Vec<[SiteIdx; 2]> = d.edges.iter().map(|e| e.sites).collect();
                let set: BTreeSet<[SiteIdx; 2]> = pairs.iter().copied().collect();
                bad += usize::from(set.len() != pairs.len() || set != adjacent);
            }
            outcome(bad == 0, "diagram edges and adjacent cell pairs correspond one to one")
        });
        s.run("builder.call-counts", &name, inst.n(), || {
            let mut worst = 0.0f64;
            let mut probes = 0;
            for b in built.iter().flatten() {
                worst = worst.max(builder_call_ratio(&b.1));
                probes += b.1.mssp_probes;
            }
            let ok = worst <= BUILDER_CALL_CONSTANT && built.iter().all(|b| b.is_ok());
            let mut o = outcome(ok, format!("primitive calls at most {worst:.3} |S|^2 log|S| (c = {BUILDER_CALL_CONSTANT})"));
            o.probes = probes;
            o
        });
    }
}

pub(super) fn locate_checks(s: &mut Suite) {
    let seed = s.seed;
    for (inst, salt) in [(tri(200, 12, seed + 7), 0u64), (tri(400, 30, seed + 8), 1)] {
        let name = label(&inst);
        let m = mssp_of(&inst);
        let g = m.graph();
        let k = m.num_sites();
        let all: Vec<SiteIdx> = (0..k as u32).collect();
        let omega = site_respecting(&m, &random_omega(k, 1500, &mut seeded(seed, 60 + salt)));
        let index = build_vdstar_fast(&m, &omega).and_then(|(d, _)| Ok((PlIndex::build(&d, &m, &omega)?, d.edges.len())));
        s.run("locate.height", &name, inst.n(), || match &index {
            Ok((ix, edges)) => {
                let bound = ((*edges).max(1) as f64).log(1.5).ceil() as usize + 2;
                outcome(ix.height() <= bound, format!("height {} for {edges} edges (bound {bound})", ix.height()))
            }
            Err(e) => outcome(false, e.to_string()),
        });
        s.run("locate.corner-cache", &name, inst.n(), || {
            let Ok((ix, _)) = &index else { return outcome(false, "no index") };
            let rows: Vec<Vec<Weight>> = m.sites().iter().map(|&v| dijkstra(g, v).0).collect();
            let (mut bad, mut seen) = (0, 0);
            for (sites, corners, dist) in ix.corner_distances() {
                for j in 0..3 {
                    seen += 1;
                    bad += usize::from(dist[j] != omega[sites[j] as usize] + rows[sites[j] as usize][corners[j] as usize]);
                }
            }
            outcome(bad == 0, format!("{bad} of {seen} cached corner distances wrong"))
        });
        s.run("locate.exact", &name, inst.n(), || {
            let Ok((ix, _)) = &index else { return outcome(false, "no index") };
            let srcs: Vec<(VertexId, Weight)> = all.iter().map(|&s| (m.site_vertex(s), omega[s as usize])).collect();
            let want = nearest_sites(g, &srcs);
            m.reset_probes();
            let bad = (0..g.n() as u32).filter(|&v| ix.locate(&m, v) != want[v as usize]).count();
            let mut o = outcome(bad == 0, format!("{bad} of {} vertices located wrongly", g.n()));
            o.probes = m.probes();
            o
        });
    }
}

pub(super) fn oracle_checks(s: &mut Suite) {
    let seed = s.seed;
    let grid = generate(Kind::Grid { rows: 16, cols: 16 }, seed).unwrap();
    s.run("oracle.grid-blocks", &label(&grid), grid.n(), || {
        let d = build_r_division(&grid.graph, 16).unwrap();
        outcome(d.regions.len() == 16, format!("{} regions", d.regions.len()))
    });
    for (inst, r) in [(grid, 40usize), (tri(250, 12, seed + 9), 120)] {
        let name = label(&inst);
        let g = Arc::new(inst.graph.clone());
        let o = build_oracle(g.clone(), r);
        s.run("oracle.boundary-marking", &name, inst.n(), || {
            let Ok(o) = &o else { return outcome(false, "build failed") };
            let mut count = vec![0u32; g.n()];
            for r in o.regions() {
                for &v in &r.vertices {
                    count[v as usize] += 1;
                }
            }
            let marked: BTreeSet<VertexId> = o.regions().iter().flat_map(|r| r.boundary.iter().copied()).collect();
            let shared: BTreeSet<VertexId> = (0..g.n() as u32).filter(|&v| count[v as usize] > 1).collect();
            outcome(marked == shared && count.iter().all(|&c| c > 0), format!("{} boundary vertices over {} regions", marked.len(), o.regions().len()))
        });
        s.run("oracle.region-tables", &name, inst.n(), || {
            let Ok(o) = &o else { return outcome(false, "build failed") };
            let mut bad = 0;
            for r in o.regions().iter().filter(|r| !r.boundary.is_empty()) {
                let data = o.region_data(r.id);
                let outer = data.outer.as_ref().unwrap();
                let c = complement(&g, &o.division().face_region, r).unwrap();
                let b = r.boundary.len();
                for (i, &q) in r.boundary.iter().enumerate() {
                    let dh = dijkstra(&c.graph, c.to_h[q as usize]).0;
                    let dg = dijkstra(&g, q).0;
                    bad += (0..b).filter(|&j| data.ext[i * b + j] != dh[c.to_h[r.boundary[j] as usize] as usize]).count();
                    let omega = outer.index[i].omega();
                    bad += outer.mssp.sites().iter().zip(omega).filter(|&(&sv, &w)| w != dg[outer.to_g[sv as usize] as usize]).count();
                }
            }
            outcome(bad == 0, format!("{bad} boundary-table or site-weight entries wrong"))
        });
        s.run("oracle.diagrams", &name, inst.n(), || {
            let Ok(o) = &o else { return outcome(false, "build failed") };
            let (mut bad, mut total) = (0, 0);
            for r in o.regions().iter().filter(|r| !r.boundary.is_empty()) {
                let outer = o.region_data(r.id).outer.as_ref().unwrap();
                let all: Vec<SiteIdx> = (0..outer.mssp.num_sites() as u32).collect();
                for (d, ix) in outer.diagrams.iter().zip(&outer.index) {
                    total += 1;
                    let cells = reference_cells(&outer.mssp, ix.omega(), &all);
                    bad += usize::from(!d.equivalent(&Diagram::from_cells(outer.mssp.graph(), outer.mssp.hole(), &cells)));
                }
            }
            outcome(bad == 0, format!("{bad} of {total} stored diagrams differ from brute force"))
        });
        s.run("oracle.exact-pairs", &name, inst.n(), || {
            let Ok(o) = &o else { return outcome(false, "build failed") };
            let mut rng = seeded(seed, 70 + r as u64);
            let mut bad = 0;
            for _ in 0..20 {
                let u = rng.random_range(0..g.n() as u32);
                let row = dijkstra(&g, u).0;
                for _ in 0..50 {
                    let v = rng.random_range(0..g.n() as u32);
                    bad += usize::from(o.query(u, v) != row[v as usize]);
                }
            }
            let mut out = outcome(bad == 0, format!("{bad} of 1000 pairs wrong"));
            out.probes = o.probes();
            out
        });
    }
    let inst = tri(80, 8, seed + 10);
    s.run("oracle.single-region", &label(&inst), inst.n(), || {
        let g = Arc::new(inst.graph.clone());
        let o = build_oracle(g.clone(), g.n()).unwrap();
        let row = dijkstra(&g, 0).0;
        let bad = (0..g.n() as u32).filter(|&v| o.query(0, v) != row[v as usize]).count();
        outcome(o.regions().len() == 1 && bad == 0, format!("{} regions, {bad} wrong distances", o.regions().len()))
    });
    s.run("harness.triangle-1-1-3", "triangle", 3, || {
        let coords = vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let w = [1, 1, 1, 1, 3, 3].map(|l| Weight::new(l, 0)).to_vec();
        let g = PlanarGraph::from_coords(coords, vec![[0, 1], [1, 2], [2, 0]], w, None).unwrap();
        let o = build_oracle(Arc::new(g), 3).unwrap();
        let d = o.query(0, 2);
        outcome(d.len == 2, format!("dist(0, 2) = {}", d.len))
    });
}
