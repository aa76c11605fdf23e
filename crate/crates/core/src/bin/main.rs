use clap::{Args, Parser, Subcommand, ValueEnum};
use planar_oracle::harness::{finder_probe_scaling, generate, verify_suite, Fault, Kind, Scope, GROUPS};
use planar_oracle::locate::PlIndex;
use planar_oracle::mssp::Mssp;
use planar_oracle::oracle::{build_oracle_with, load_oracle, save_oracle, OracleOptions};
use planar_oracle::planar::{read_graph, write_graph, FaceId, PlanarGraph, VertexId};
use planar_oracle::trees::dijkstra;
use planar_oracle::trifind::trichromatic_face;
use planar_oracle::vdbuild::build_vdstar_fast;
use planar_oracle::voronoi::Diagram;
use planar_oracle::{Error, Result, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "planar-oracle", version, about = "Exact distance oracle for planar graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a normalized, perturbed instance and write it as a graph file.
    Generate(GenerateArgs),
    /// Build an oracle from a graph file and persist it to a directory.
    Build(BuildArgs),
    /// Answer distance queries with a persisted oracle.
    Query(QueryArgs),
    /// Find the trichromatic face of three hole sites.
    Trifind(TrifindArgs),
    /// Build the dual Voronoi diagram of all hole sites.
    Buildvd(BuildvdArgs),
    /// Find the cell containing a vertex in a diagram written by `buildvd`.
    Locate(LocateArgs),
    /// Run the verification suite; exits with status 1 if any check fails.
    Verify(VerifyArgs),
    /// Measure finder probe counts across instance sizes.
    Bench(BenchArgs),
    /// Summarize a graph file, a diagram or an oracle directory.
    Inspect(InspectArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Grid,
    Triangulation,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 16)]
    rows: usize,
    #[arg(long, default_value_t = 16)]
    cols: usize,
    #[arg(long, default_value_t = 300)]
    points: usize,
    #[arg(long, default_value_t = 16)]
    hull: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Graph file to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    r: usize,
    #[arg(long = "in")]
    input: PathBuf,
    /// Oracle directory to create.
    #[arg(long)]
    out: PathBuf,
    /// Compare every diagram with brute force while building.
    #[arg(long)]
    verify_diagrams: bool,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    oracle: PathBuf,
    /// File of `u v` lines.
    #[arg(long, conflicts_with = "random")]
    pairs: Option<PathBuf>,
    /// Number of random pairs.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Check every answer against Dijkstra.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Hole face; defaults to the infinite face.
    #[arg(long)]
    hole: Option<FaceId>,
}

#[derive(Args)]
struct TrifindArgs {
    #[command(flatten)]
    g: GraphArgs,
    /// Site indices x, y1, y2 along the hole.
    #[arg(long, num_args = 3, required = true)]
    sites: Vec<u32>,
    /// Additive weights of the three sites (`len`, `len/tie` or `inf`).
    #[arg(long, num_args = 3)]
    weights: Option<Vec<Weight>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildvdArgs {
    #[command(flatten)]
    g: GraphArgs,
    /// Whitespace-separated weights, one per hole site; zero if omitted.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LocateArgs {
    #[command(flatten)]
    g: GraphArgs,
    /// Report written by `buildvd`.
    #[arg(long)]
    diagram: PathBuf,
    #[arg(long, required = true, num_args = 1..)]
    vertex: Vec<VertexId>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Groups to run (all if omitted).
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    only: Vec<String>,
    #[arg(long, value_enum)]
    fault: Option<FaultArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    FlipTiebreak,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [256usize, 1024, 4096, 16384])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    calls: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InspectArgs {
    #[arg(long, group = "what")]
    graph: Option<PathBuf>,
    #[arg(long, group = "what")]
    diagram: Option<PathBuf>,
    #[arg(long, group = "what")]
    oracle: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    match out {
        Some(p) => fs::write(p, text + "\n")?,
        None => {
            use std::io::Write;
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    Ok(())
}

fn load_graph(p: &Path) -> Result<PlanarGraph> {
    read_graph(&fs::read_to_string(p)?)
}

fn mssp_for(a: &GraphArgs) -> Result<Mssp> {
    let g = load_graph(&a.graph)?;
    let hole = a.hole.unwrap_or(g.infinite_face());
    Mssp::new(Arc::new(g), hole)
}

fn parse_weights(text: &str, k: usize) -> Result<Vec<Weight>> {
    let w: Vec<Weight> = text
        .split_whitespace()
        .map(|t| t.parse().map_err(|e: String| Error::Invalid(format!("weight {t:?}: {e}"))))
        .collect::<Result<_>>()?;
    if w.len() != k {
        return Err(Error::Invalid(format!("{} weights for {k} sites", w.len())));
    }
    Ok(w)
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Generate(a) => {
            let kind = match a.kind {
                GenKind::Grid => Kind::Grid { rows: a.rows, cols: a.cols },
                GenKind::Triangulation => Kind::RandomTriangulation { points: a.points, hull: a.hull },
            };
            let inst = generate(kind, a.seed)?;
            fs::write(&a.out, write_graph(&inst.graph))?;
            let g = &inst.graph;
            emit(
                &json!({ "kind": kind, "seed": a.seed, "n": g.n(), "m": g.m(), "faces": g.num_faces(),
                         "hole": inst.hole, "hole_size": g.face_len(inst.hole), "file": a.out }),
                None,
            )?;
        }
        Cmd::Build(a) => {
            let t = Instant::now();
            let g = Arc::new(load_graph(&a.input)?);
            let o = build_oracle_with(g, a.r, OracleOptions { verify_diagrams: a.verify_diagrams })?;
            let built = millis(t);
            save_oracle(&o, &a.out)?;
            let boundary: usize = o.regions().iter().map(|r| r.boundary.len()).sum();
            emit(
                &json!({ "n": o.graph().n(), "r": a.r, "regions": o.regions().len(), "boundary_vertices": boundary,
                         "diagrams_verified": a.verify_diagrams, "build_millis": built, "total_millis": millis(t), "dir": a.out }),
                None,
            )?;
        }
        Cmd::Query(a) => return query(a),
        Cmd::Trifind(a) => {
            let m = mssp_for(&a.g)?;
            let k = m.num_sites();
            let [x, y1, y2] = [a.sites[0], a.sites[1], a.sites[2]];
            if let Some(&s) = a.sites.iter().find(|&&s| s as usize >= k) {
                return Err(Error::Invalid(format!("site {s} out of range (hole has {k} sites)")));
            }
            let mut omega = vec![Weight::ZERO; k];
            if let Some(w) = &a.weights {
                for (i, &s) in a.sites.iter().enumerate() {
                    omega[s as usize] = w[i];
                }
            }
            m.tree(x);
            m.dual(x);
            m.reset_probes();
            let t = Instant::now();
            let f = trichromatic_face(&m, &omega, x, y1, y2);
            let (dist, tree) = m.probe_split();
            let corners: Option<Vec<VertexId>> = f.map(|f| m.graph().face_vertices(f).collect());
            emit(
                &json!({ "sites": [x, y1, y2], "face": f, "corners": corners,
                         "probes": { "distance": dist, "tree": tree, "total": dist + tree }, "micros": t.elapsed().as_micros() as u64 }),
                a.out.as_deref(),
            )?;
        }
        Cmd::Buildvd(a) => {
            let m = mssp_for(&a.g)?;
            let k = m.num_sites();
            let omega = match &a.weights {
                Some(p) => parse_weights(&fs::read_to_string(p)?, k)?,
                None => vec![Weight::ZERO; k],
            };
            let t = Instant::now();
            let (d, stats) = build_vdstar_fast(&m, &omega)?;
            let w: Vec<String> = omega.iter().map(|w| w.to_string()).collect();
            emit(
                &json!({ "sites": k, "hole": m.hole(), "weights": w, "stats": stats, "primitive_calls": stats.primitive_calls(),
                         "is_tree": d.is_tree(), "millis": millis(t), "diagram": d }),
                a.out.as_deref(),
            )?;
        }
        Cmd::Locate(a) => {
            let m = mssp_for(&a.g)?;
            let v: Value = serde_json::from_str(&fs::read_to_string(&a.diagram)?)?;
            let d: Diagram = serde_json::from_value(v.get("diagram").cloned().unwrap_or(Value::Null))?;
            let w = v.get("weights").and_then(Value::as_array).ok_or_else(|| Error::Format("report has no weights".into()))?;
            let text: Vec<&str> = w.iter().filter_map(Value::as_str).collect();
            let omega = parse_weights(&text.join(" "), m.num_sites())?;
            let ix = PlIndex::build(&d, &m, &omega)?;
            let mut out = Vec::new();
            for &x in &a.vertex {
                if x as usize >= m.graph().n() {
                    return Err(Error::Invalid(format!("vertex {x} out of range")));
                }
                m.reset_probes();
                let (s, dist) = ix.locate(&m, x);
                out.push(json!({ "vertex": x, "site": s, "site_vertex": m.site_vertex(s), "distance": dist.to_string(), "probes": m.probes() }));
            }
            emit(&json!({ "height": ix.height(), "results": out }), a.out.as_deref())?;
        }
        Cmd::Verify(a) => {
            let mut scope = if a.only.is_empty() { Scope::all(a.seed) } else { Scope::empty() };
            scope.seed = a.seed;
            for g in &a.only {
                if !scope.enable(g) {
                    return Err(Error::Invalid(format!("unknown group {g:?}; expected one of {}", GROUPS.join(", "))));
                }
            }
            scope.fault = a.fault.map(|FaultArg::FlipTiebreak| Fault::FlipTiebreak);
            let r = verify_suite(&scope);
            emit(&serde_json::to_value(&r)?, a.out.as_deref())?;
            return Ok(r.passed());
        }
        Cmd::Bench(a) => {
            let s = finder_probe_scaling(&a.sizes, a.calls, a.seed)?;
            emit(&serde_json::to_value(&s)?, a.out.as_deref())?;
        }
        Cmd::Inspect(a) => return inspect(a),
    }
    Ok(true)
}

fn query(a: QueryArgs) -> Result<bool> {
    let t = Instant::now();
    let o = load_oracle(&a.oracle)?;
    let loaded = millis(t);
    let n = o.graph().n() as u32;
    let pairs: Vec<(VertexId, VertexId)> = match (&a.pairs, a.random) {
        (Some(p), _) => fs::read_to_string(p)?
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let v: Vec<u32> = l.split_whitespace().map(|x| x.parse().map_err(|_| Error::Invalid(format!("bad pair line {l:?}")))).collect::<Result<_>>()?;
                match v[..] {
                    [u, w] if u < n && w < n => Ok((u, w)),
                    _ => Err(Error::Invalid(format!("bad pair line {l:?}"))),
                }
            })
            .collect::<Result<_>>()?,
        (None, Some(k)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let sources: Vec<u32> = (0..k.clamp(1, 64)).map(|_| rng.random_range(0..n)).collect();
            (0..k).map(|_| (sources[rng.random_range(0..sources.len())], rng.random_range(0..n))).collect()
        }
        (None, None) => return Err(Error::Invalid("give --pairs or --random".into())),
    };
    let t = Instant::now();
    let answers: Vec<Weight> = pairs.iter().map(|&(u, v)| o.query(u, v)).collect();
    let query_millis = millis(t);
    let mut mismatches = Vec::new();
    if a.verify {
        let mut rows: HashMap<u32, Vec<Weight>> = HashMap::new();
        for (&(u, v), &d) in pairs.iter().zip(&answers) {
            let row = rows.entry(u).or_insert_with(|| dijkstra(o.graph(), u).0);
            if row[v as usize] != d {
                mismatches.push(json!({ "u": u, "v": v, "oracle": d.to_string(), "dijkstra": row[v as usize].to_string() }));
            }
        }
    }
    let results: Vec<Value> = pairs.iter().zip(&answers).map(|(&(u, v), d)| json!([u, v, d.to_string()])).collect();
    let ok = mismatches.is_empty();
    emit(
        &json!({ "queries": pairs.len(), "load_millis": loaded, "query_millis": query_millis, "probes": o.probes(),
                 "verified": a.verify, "mismatches": mismatches, "results": results }),
        a.out.as_deref(),
    )?;
    Ok(ok)
}

fn inspect(a: InspectArgs) -> Result<bool> {
    let v = if let Some(p) = &a.graph {
        let g = load_graph(p)?;
        let mut sizes: Vec<usize> = (0..g.num_faces() as u32).map(|f| g.face_len(f)).collect();
        sizes.sort_unstable();
        json!({ "n": g.n(), "m": g.m(), "faces": g.num_faces(), "infinite_face": g.infinite_face(),
                "infinite_face_size": g.face_len(g.infinite_face()), "largest_face": sizes.last(),
                "max_degree": (0..g.n() as u32).map(|v| g.degree(v)).max(), "has_coords": g.coords().is_some() })
    } else if let Some(p) = &a.diagram {
        let v: Value = serde_json::from_str(&fs::read_to_string(p)?)?;
        let d: Diagram = serde_json::from_value(v.get("diagram").cloned().unwrap_or(v))?;
        let pairs: Vec<[u32; 2]> = d.edges.iter().map(|e| e.sites).collect();
        json!({ "nodes": d.nodes.len(), "leaves": d.num_leaves(), "internal": d.num_internal(), "edges": d.edges.len(),
                "is_tree": d.is_tree(), "site_pairs": pairs })
    } else if let Some(p) = &a.oracle {
        let o = load_oracle(p)?;
        let regions: Vec<Value> = o
            .regions()
            .iter()
            .map(|r| json!({ "id": r.id, "faces": r.faces.len(), "vertices": r.vertices.len(), "boundary": r.boundary.len(), "outline": r.outline.len() }))
            .collect();
        json!({ "n": o.graph().n(), "r": o.r(), "regions": regions })
    } else {
        return Err(Error::Invalid("give --graph, --diagram or --oracle".into()));
    };
    emit(&v, a.out.as_deref())?;
    Ok(true)
}
