mod common;

use common::*;
use planar_oracle::locate::PlIndex;
use planar_oracle::vdbuild::build_vdstar_fast;
use planar_oracle::voronoi::site_respecting;

#[test]
fn point_location_matches_dijkstra_owner() {
    let mut queries = 0;
    for seed in 0..10u64 {
        let inst = tri(400, 6 + 3 * seed as usize, seed + 50);
        let m = mssp_of(&inst);
        let sd = SiteDistances::new(&inst);
        let k = m.num_sites();
        let all: Vec<u32> = (0..k as u32).collect();
        for base in weight_vectors(k, seed) {
            let omega = site_respecting(&m, &base);
            let (d, _) = build_vdstar_fast(&m, &omega).unwrap();
            let pl = PlIndex::build(&d, &m, &omega).unwrap();
            for v in 0..inst.graph.n() as u32 {
                let want = sd.owner(&omega, &all, v);
                let (got, w) = pl.locate(&m, v);
                assert_eq!(got, want, "seed {seed} vertex {v}");
                assert_eq!(w, omega[want as usize] + m.dist(want, v));
                queries += 1;
            }
        }
    }
    eprintln!("queries {queries}");
}
