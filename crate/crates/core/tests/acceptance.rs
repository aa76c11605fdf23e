//! Acceptance run: one line per criterion, then a nonzero exit if any failed.
//!
//! Runs without the libtest harness so the verdict lines always reach the
//! console.

mod common;

use common::*;
use planar_oracle::harness::{
    builder_call_ratio, finder_probe_scaling, generate, nearest_sites, verify_suite, Kind, Scope, BUILDER_CALL_CONSTANT,
};
use planar_oracle::locate::PlIndex;
use planar_oracle::mssp::SiteIdx;
use planar_oracle::oracle::{build_oracle, save_oracle};
use planar_oracle::planar::VertexId;
use planar_oracle::trees::dijkstra;
use planar_oracle::trifind::trichromatic_face;
use planar_oracle::vdbuild::build_vdstar_fast;
use planar_oracle::voronoi::{site_respecting, Diagram};
use planar_oracle::Weight;
use rand::Rng;
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

const PAIRS_PER_INSTANCE: usize = 100_000;
const SOURCES_PER_INSTANCE: usize = 1_000;
const MAX_TRI_N: usize = 3_000;
const FINDER_INSTANCES: usize = 25;
const FINDER_MAX_HOLE: usize = 24;
const FINDER_MAX_N: usize = 400;
const SLOPE_RANGE: (f64, f64) = (1.5, 2.3);
const SCALING_SIZES: [usize; 4] = [1 << 8, 1 << 10, 1 << 12, 1 << 14];
const SCALING_CALLS: usize = 200;
const PREFIX_PAIRS: usize = 1_000;
const BUILDER_INSTANCES: usize = 50;
const BUILDER_MAX_HOLE: usize = 32;
const LOCATE_QUERIES: usize = 100_000;
const LOCATE_DIAGRAMS: usize = 20;
const SEED: u64 = 42;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

fn main() {
    let criteria: [(&str, &str, fn() -> Verdict); 8] = [
        ("oracle-exactness", "0 mismatches", oracle_exactness),
        ("finder-exhaustive", "0 mismatches", finder_exhaustive),
        ("probe-scaling", "slope in [1.5, 2.3]", probe_scaling),
        ("prefix-property", "0 violations", prefix_property),
        ("builder-equivalence", "0 mismatches, calls <= 2.0 |S|^2 log2|S|", builder_equivalence),
        ("point-location", "0 mismatches", point_location),
        ("structural", "0 failed checks", structural),
        ("determinism", "byte-identical", determinism),
    ];
    let mut failed = 0;
    for (name, tolerance, run) in criteria {
        let t = Instant::now();
        let v = run();
        let tag = if v.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {} (tolerance: {tolerance}; {:.1}s)", v.detail, t.elapsed().as_secs_f64());
        failed += usize::from(!v.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

/// Oracle answers against Dijkstra rows for grids and random triangulations.
/// Pairs are 1000 random sources with 100 random targets each, visited in
/// home-region order so that trees of one region at a time stay in memory.
fn oracle_exactness() -> Verdict {
    let mut cases: Vec<(Kind, usize)> = vec![
        (Kind::Grid { rows: 16, cols: 16 }, 64),
        (Kind::Grid { rows: 32, cols: 32 }, 128),
        (Kind::Grid { rows: 64, cols: 64 }, 256),
    ];
    for i in 0..20 {
        let points = 100 + 33 * i;
        cases.push((Kind::RandomTriangulation { points, hull: 12 + i }, (points / 4).max(24)));
    }
    let (mut bad, mut pairs, mut oversized) = (0usize, 0usize, 0usize);
    let mut largest = 0;
    for (i, &(kind, r)) in cases.iter().enumerate() {
        let inst = generate(kind, SEED + i as u64).unwrap();
        let n = inst.n();
        if matches!(kind, Kind::RandomTriangulation { .. }) {
            largest = largest.max(n);
            oversized += usize::from(n > MAX_TRI_N);
        }
        let g = Arc::new(inst.graph);
        let mut o = match build_oracle(g.clone(), r) {
            Ok(o) => o,
            Err(e) => return verdict(false, format!("build failed on instance {i}: {e}")),
        };
        let mut r = rng(SEED ^ (1000 + i as u64));
        let mut by_region: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
        for _ in 0..SOURCES_PER_INSTANCE {
            let u = r.random_range(0..n as u32);
            by_region.entry(o.home_region(u)).or_default().push(u);
        }
        let per_source = PAIRS_PER_INSTANCE / SOURCES_PER_INSTANCE;
        for (rid, sources) in by_region {
            for u in sources {
                let row = dijkstra(&g, u).0;
                for _ in 0..per_source {
                    let v = r.random_range(0..n as u32);
                    pairs += 1;
                    bad += usize::from(o.query(u, v) != row[v as usize]);
                }
            }
            o.trim_region(rid);
        }
    }
    verdict(
        bad == 0 && oversized == 0,
        format!(
            "{bad} of {pairs} pairs wrong over {} instances; largest triangulation n = {largest}, {oversized} above {MAX_TRI_N}",
            cases.len()
        ),
    )
}

fn finder_instance(i: usize) -> planar_oracle::harness::Instance {
    let hull = 6 + i * (FINDER_MAX_HOLE - 6) / (FINDER_INSTANCES - 1);
    generate(Kind::RandomTriangulation { points: 90, hull }, SEED + 100 + i as u64).unwrap()
}

/// Every unordered triple of hole sites, with each member in turn as the
/// tree site, under three weight vectors.
fn finder_exhaustive() -> Verdict {
    let (mut bad, mut calls, mut found, mut oversized) = (0usize, 0usize, 0usize, 0usize);
    for i in 0..FINDER_INSTANCES {
        let inst = finder_instance(i);
        oversized += usize::from(inst.n() > FINDER_MAX_N);
        let m = mssp_of(&inst);
        let sd = SiteDistances::new(&inst);
        let k = m.num_sites() as u32;
        for omega in weight_vectors(k as usize, SEED + i as u64) {
            for a in 0..k {
                for b in a + 1..k {
                    for c in b + 1..k {
                        let want = sd.trichromatic_faces(&inst, &omega, &[a, b, c]);
                        for (x, y1, y2) in [(a, b, c), (b, c, a), (c, a, b)] {
                            calls += 1;
                            let got = trichromatic_face(&m, &omega, x, y1, y2);
                            found += usize::from(got.is_some());
                            bad += usize::from(want.len() > 1 || got != want.first().copied());
                        }
                    }
                }
            }
        }
    }
    verdict(
        bad == 0 && oversized == 0,
        format!("{bad} of {calls} calls wrong, {found} faces found; {oversized} instances above n = {FINDER_MAX_N}"),
    )
}

fn probe_scaling() -> Verdict {
    match finder_probe_scaling(&SCALING_SIZES, SCALING_CALLS, SEED) {
        Ok(s) => {
            let means: Vec<String> = s.points.iter().map(|p| format!("n={} {:.0}", p.n, p.mean_probes)).collect();
            let ok = s.slope >= SLOPE_RANGE.0 && s.slope <= SLOPE_RANGE.1;
            verdict(ok, format!("slope {:.3} of ln(probes) on ln(log2 n); mean probes {}", s.slope, means.join(", ")))
        }
        Err(e) => verdict(false, e.to_string()),
    }
}

/// Along any rootward path of the tree of `x`, the vertices in the cell of
/// `x` are the ones nearest the root.
fn prefix_property() -> Verdict {
    let mut r = rng(SEED ^ 0x5052);
    let instances: Vec<_> = (0..5).map(|i| finder_instance(5 * i + 4)).collect();
    let prepared: Vec<_> = instances.iter().map(|inst| (mssp_of(inst), SiteDistances::new(inst))).collect();
    let mut bad = 0;
    for _ in 0..PREFIX_PAIRS {
        let j = r.random_range(0..instances.len());
        let (m, sd) = &prepared[j];
        let k = m.num_sites() as u32;
        let omegas = weight_vectors(k as usize, r.random());
        let omega = &omegas[r.random_range(0..omegas.len())];
        let x = r.random_range(0..k);
        let y1 = (x + r.random_range(1..k)) % k;
        let y2 = loop {
            let y = r.random_range(0..k);
            if y != x && y != y1 {
                break y;
            }
        };
        let cands = [x, y1, y2];
        let v = r.random_range(0..m.graph().n() as u32);
        let mut left = false;
        let mut ok = true;
        for &w in m.tree(x).path_to_root(v).iter().rev() {
            if sd.owner(omega, &cands, w) == x {
                ok &= !left;
            } else {
                left = true;
            }
        }
        bad += usize::from(!ok);
    }
    verdict(bad == 0, format!("{bad} of {PREFIX_PAIRS} (instance, tree, path) samples violate the prefix"))
}

fn builder_equivalence() -> Verdict {
    let (mut bad, mut calls) = (0usize, 0u64);
    let mut worst = 0.0f64;
    for i in 0..BUILDER_INSTANCES {
        let hull = 4 + i * (BUILDER_MAX_HOLE - 4) / (BUILDER_INSTANCES - 1);
        let inst = generate(Kind::RandomTriangulation { points: 60 + 3 * i, hull }, SEED + 200 + i as u64).unwrap();
        let m = mssp_of(&inst);
        let sd = SiteDistances::new(&inst);
        let k = m.num_sites();
        let all: Vec<SiteIdx> = (0..k as u32).collect();
        let vectors = weight_vectors(k, SEED + 200 + i as u64);
        let omega = match i % 4 {
            3 => site_respecting(&m, &vectors[2]),
            j => vectors[j].clone(),
        };
        let want = Diagram::from_cells(m.graph(), m.hole(), &sd.cells(&omega, &all, inst.n()));
        match build_vdstar_fast(&m, &omega) {
            Ok((d, st)) => {
                bad += usize::from(!d.equivalent(&want));
                calls += st.primitive_calls();
                worst = worst.max(builder_call_ratio(&st));
            }
            Err(_) => bad += 1,
        }
    }
    verdict(
        bad == 0 && worst <= BUILDER_CALL_CONSTANT,
        format!("{bad} of {BUILDER_INSTANCES} diagrams differ; {calls} primitive calls, worst {worst:.3} |S|^2 log2|S|"),
    )
}

fn point_location() -> Verdict {
    let (mut bad, mut queries) = (0usize, 0usize);
    let per = LOCATE_QUERIES / LOCATE_DIAGRAMS;
    for i in 0..LOCATE_DIAGRAMS {
        let inst = generate(Kind::RandomTriangulation { points: 150 + 12 * i, hull: 10 + i }, SEED + 300 + i as u64).unwrap();
        let m = mssp_of(&inst);
        let k = m.num_sites();
        let omega = site_respecting(&m, &weight_vectors(k, SEED + 300 + i as u64)[2]);
        let index = build_vdstar_fast(&m, &omega).and_then(|(d, _)| PlIndex::build(&d, &m, &omega));
        let Ok(index) = index else {
            bad += per;
            queries += per;
            continue;
        };
        let srcs: Vec<(VertexId, Weight)> = (0..k).map(|s| (m.site_vertex(s as u32), omega[s])).collect();
        let want = nearest_sites(m.graph(), &srcs);
        let mut r = rng(SEED ^ (400 + i as u64));
        for _ in 0..per {
            let v = r.random_range(0..inst.n() as u32);
            queries += 1;
            bad += usize::from(index.locate(&m, v) != want[v as usize]);
        }
    }
    verdict(bad == 0, format!("{bad} of {queries} queries disagree with multi-source Dijkstra on owner or distance"))
}

/// Planar, tree and Voronoi audits of the verification suite on three seeds.
fn structural() -> Verdict {
    let (mut checks, mut failed) = (0, Vec::new());
    for seed in [SEED, SEED + 1, SEED + 2] {
        let mut scope = Scope::empty();
        scope.seed = seed;
        for g in ["planar", "trees", "voronoi"] {
            scope.enable(g);
        }
        let report = verify_suite(&scope);
        checks += report.checks.len();
        failed.extend(report.failures().map(|c| format!("{}@{}", c.name, seed)));
    }
    verdict(failed.is_empty(), format!("{} of {checks} checks failed {:?}", failed.len(), failed))
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.insert(rel, std::fs::read(&p).unwrap());
            }
        }
    }
    out
}

/// Generation, build and save run twice from scratch give identical bytes.
fn determinism() -> Verdict {
    let cases = [(Kind::Grid { rows: 20, cols: 20 }, 64), (Kind::RandomTriangulation { points: 400, hull: 20 }, 100)];
    let mut differing = Vec::new();
    let mut files = 0;
    for (i, &(kind, r)) in cases.iter().enumerate() {
        let dirs: Vec<_> = (0..2)
            .map(|_| {
                let inst = generate(kind, SEED + 500 + i as u64).unwrap();
                let o = build_oracle(Arc::new(inst.graph), r).unwrap();
                let dir = tempfile::tempdir().unwrap();
                save_oracle(&o, dir.path()).unwrap();
                snapshot(dir.path())
            })
            .collect();
        files += dirs[0].len();
        if dirs[0].keys().ne(dirs[1].keys()) {
            differing.push(format!("file sets of case {i}"));
        }
        for (name, bytes) in &dirs[0] {
            if dirs[1].get(name) != Some(bytes) {
                differing.push(format!("case {i} {name}"));
            }
        }
    }
    verdict(differing.is_empty(), format!("{files} persisted files compared, differing: {differing:?}"))
}
