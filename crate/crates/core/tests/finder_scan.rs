mod common;

use common::*;
use planar_oracle::trifind::trichromatic_face;

#[test]
fn finder_matches_face_scan_on_small_triangulations() {
    let (mut found, mut none) = (0, 0);
    for seed in 0..4u64 {
        let inst = tri(200, 10 + seed as usize, seed);
        let m = mssp_of(&inst);
        let sd = SiteDistances::new(&inst);
        let k = m.num_sites() as u32;
        for omega in weight_vectors(k as usize, seed) {
            for x in 0..k {
                for y1 in 0..k {
                    for y2 in y1 + 1..k {
                        if x == y1 || x == y2 {
                            continue;
                        }
                        let want = sd.trichromatic_faces(&inst, &omega, &[x, y1, y2]);
                        assert!(want.len() <= 1);
                        let got = trichromatic_face(&m, &omega, x, y1, y2);
                        assert_eq!(got, want.first().copied(), "seed {seed} sites {x} {y1} {y2}");
                        if got.is_some() { found += 1 } else { none += 1 }
                    }
                }
            }
        }
    }
    eprintln!("found {found} none {none}");
    assert!(found > 0 && none > 0);
}
