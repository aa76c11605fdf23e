mod common;

use common::*;
use planar_oracle::vdbuild::build_vdstar_fast;
use planar_oracle::voronoi::{site_respecting, Diagram};

#[test]
fn builder_matches_brute_force_on_triangulations() {
    let (mut trees, mut forests) = (0, 0);
    for seed in 0..12u64 {
        let inst = tri(300, 8 + 2 * seed as usize, seed);
        let m = mssp_of(&inst);
        let sd = SiteDistances::new(&inst);
        let k = m.num_sites();
        let all: Vec<u32> = (0..k as u32).collect();
        let mut vectors = weight_vectors(k, seed + 100);
        vectors.push(site_respecting(&m, &vectors[2]));
        for omega in vectors {
            let cells = sd.cells(&omega, &all, inst.graph.n());
            let bf = Diagram::from_cells(&inst.graph, inst.hole, &cells);
            let (fast, _) = build_vdstar_fast(&m, &omega).unwrap();
            assert!(fast.equivalent(&bf), "seed {seed}\nfast {:?}\nbrute {:?}", fast.canonical(), bf.canonical());
            if bf.is_tree() { trees += 1 } else { forests += 1 }
        }
    }
    eprintln!("trees {trees} forests {forests}");
}
