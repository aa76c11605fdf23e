//! Probe-count scaling of the trichromatic-face finder.

use super::audits::random_omega;
use super::{generate, Kind};
use crate::error::Result;
use crate::mssp::Mssp;
use crate::trifind::trichromatic_face;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub n: usize,
    pub sites: usize,
    pub calls: usize,
    pub faces_found: usize,
    pub mean_probes: f64,
    pub mean_distance_probes: f64,
    pub mean_tree_probes: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scaling {
    pub points: Vec<ScalingPoint>,
    /// Least-squares slope of `ln(mean probes)` against `ln(log2 n)`.
    pub slope: f64,
    pub intercept: f64,
}

/// Sites on the hole of every scaling instance.
pub const SCALING_HULL: usize = 16;

/// Mean MSSP probes per trichromatic query on random triangulations with
/// about `n` normalized vertices for each `n` in `sizes`.
pub fn finder_probe_scaling(sizes: &[usize], calls: usize, seed: u64) -> Result<Scaling> {
    let mut points = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        let inst = generate(Kind::RandomTriangulation { points: (n / 4).max(SCALING_HULL + 1), hull: SCALING_HULL }, seed + i as u64)?;
        let m = Mssp::new(Arc::new(inst.graph), inst.hole)?;
        let k = m.num_sites() as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let (mut dist, mut tree, mut found) = (0u64, 0u64, 0);
        for c in 0..calls {
            let omega = if c % 2 == 0 { vec![crate::Weight::ZERO; k as usize] } else { random_omega(k as usize, 200, &mut rng) };
            let x = rng.random_range(0..k);
            let y1 = (x + rng.random_range(1..k)) % k;
            let y2 = loop {
                let y = rng.random_range(0..k);
                if y != x && y != y1 {
                    break y;
                }
            };
            // build the trees and duals outside the measurement
            m.tree(x);
            m.dual(x);
            m.reset_probes();
            found += usize::from(trichromatic_face(&m, &omega, x, y1, y2).is_some());
            let (d, t) = m.probe_split();
            dist += d;
            tree += t;
        }
        let c = calls.max(1) as f64;
        points.push(ScalingPoint {
            n: m.graph().n(),
            sites: k as usize,
            calls,
            faces_found: found,
            mean_probes: (dist + tree) as f64 / c,
            mean_distance_probes: dist as f64 / c,
            mean_tree_probes: tree as f64 / c,
        });
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|p| ((p.n as f64).log2().ln(), p.mean_probes.ln())).collect();
    let (slope, intercept) = least_squares(&xy);
    Ok(Scaling { points, slope, intercept })
}

fn least_squares(xy: &[(f64, f64)]) -> (f64, f64) {
    let k = xy.len() as f64;
    let (sx, sy) = xy.iter().fold((0.0, 0.0), |a, &(x, y)| (a.0 + x, a.1 + y));
    let (mx, my) = (sx / k, sy / k);
    let sxx: f64 = xy.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xy.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { f64::NAN };
    (slope, my - slope * mx)
}
