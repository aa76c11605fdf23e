//! Oracle directory layout:
//!
//! ```text
//! graph.pg                 the graph in text form
//! regions.json             r and the region list
//! diagrams/rRRRR-qQQQQ.json  one diagram per boundary vertex
//! weights.bin              outside tables and additive weights
//! ```
//!
//! `weights.bin` is little-endian: the magic, a u32 version, a u32 region
//! count, then per region a u32 boundary size `b`, a u32 site count `s`,
//! `b * b` outside distances and `b * s` additive weights. A weight is two
//! u64 words, length then tiebreak.

use super::{aug_all_pairs, outer_of, Division, Oracle, Region, RegionData};
use crate::error::{Error, Result};
use crate::locate::PlIndex;
use crate::planar::{read_graph, write_graph};
use crate::voronoi::Diagram;
use crate::weight::Weight;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;
use std::sync::Arc;

pub const WEIGHTS_MAGIC: &[u8; 8] = b"PLORACLE";
pub const WEIGHTS_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct RegionsFile {
    version: u32,
    r: usize,
    regions: Vec<Region>,
}

fn diagram_path(dir: &Path, rid: u32, qi: usize) -> std::path::PathBuf {
    dir.join("diagrams").join(format!("r{rid:04}-q{qi:04}.json"))
}

pub fn save_oracle(o: &Oracle, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir.join("diagrams"))?;
    fs::write(dir.join("graph.pg"), write_graph(&o.graph))?;
    let rf = RegionsFile { version: WEIGHTS_VERSION, r: o.r, regions: o.division.regions.clone() };
    fs::write(dir.join("regions.json"), serde_json::to_vec(&rf)?)?;
    let mut bin = Vec::new();
    bin.extend_from_slice(WEIGHTS_MAGIC);
    bin.extend_from_slice(&WEIGHTS_VERSION.to_le_bytes());
    bin.extend_from_slice(&(o.data.len() as u32).to_le_bytes());
    let put = |bin: &mut Vec<u8>, w: Weight| {
        bin.extend_from_slice(&w.len.to_le_bytes());
        bin.extend_from_slice(&w.tie.to_le_bytes());
    };
    for (region, data) in o.division.regions.iter().zip(&o.data) {
        let b = region.boundary.len();
        let s = data.outer.as_ref().map_or(0, |x| x.mssp.num_sites());
        bin.extend_from_slice(&(b as u32).to_le_bytes());
        bin.extend_from_slice(&(s as u32).to_le_bytes());
        for &w in &data.ext {
            put(&mut bin, w);
        }
        if let Some(outer) = &data.outer {
            for (qi, (d, idx)) in outer.diagrams.iter().zip(&outer.index).enumerate() {
                for &w in idx.omega() {
                    put(&mut bin, w);
                }
                fs::write(diagram_path(dir, region.id, qi), serde_json::to_vec(d)?)?;
            }
        }
    }
    fs::write(dir.join("weights.bin"), bin)?;
    Ok(())
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl Reader<'_> {
    fn take(&mut self, k: usize) -> Result<&[u8]> {
        let s = self.buf.get(self.at..self.at + k).ok_or_else(|| Error::Format("weights.bin is truncated".into()))?;
        self.at += k;
        Ok(s)
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn weights(&mut self, k: usize) -> Result<Vec<Weight>> {
        (0..k).map(|_| Ok(Weight { len: self.u64()?, tie: self.u64()? })).collect()
    }
}

pub fn load_oracle(dir: &Path) -> Result<Oracle> {
    let g = Arc::new(read_graph(&fs::read_to_string(dir.join("graph.pg"))?)?);
    let rf: RegionsFile = serde_json::from_slice(&fs::read(dir.join("regions.json"))?)?;
    if rf.version != WEIGHTS_VERSION {
        return Err(Error::Format(format!("regions.json version {} (expected {WEIGHTS_VERSION})", rf.version)));
    }
    let division = Division::from_regions(&g, rf.regions)?;
    let bin = fs::read(dir.join("weights.bin"))?;
    let mut rd = Reader { buf: &bin, at: 0 };
    if rd.take(8)? != WEIGHTS_MAGIC {
        return Err(Error::Format("weights.bin has a bad magic".into()));
    }
    let version = rd.u32()?;
    if version != WEIGHTS_VERSION {
        return Err(Error::Format(format!("weights.bin version {version} (expected {WEIGHTS_VERSION})")));
    }
    if rd.u32()? as usize != division.regions.len() {
        return Err(Error::Format("weights.bin region count differs from regions.json".into()));
    }
    let mut data = Vec::with_capacity(division.regions.len());
    for region in &division.regions {
        let b = rd.u32()? as usize;
        let s = rd.u32()? as usize;
        if b != region.boundary.len() {
            return Err(Error::Format(format!("region {}: boundary size {b} in weights.bin", region.id)));
        }
        let ext = rd.weights(b * b)?;
        if b == 0 {
            let table = aug_all_pairs(&g, region, &ext);
            data.push(RegionData { ext, table, outer: None });
            continue;
        }
        let mut outer = outer_of(&g, &division, region)?;
        if s != outer.mssp.num_sites() {
            return Err(Error::Format(format!("region {}: {s} sites in weights.bin", region.id)));
        }
        for qi in 0..b {
            let omega = rd.weights(s)?;
            let d: Diagram = serde_json::from_slice(&fs::read(diagram_path(dir, region.id, qi))?)?;
            outer.index.push(PlIndex::build(&d, &outer.mssp, &omega)?);
            outer.diagrams.push(d);
        }
        let table = aug_all_pairs(&g, region, &ext);
        data.push(RegionData { ext, table, outer: Some(outer) });
    }
    if rd.at != bin.len() {
        return Err(Error::Format("trailing bytes in weights.bin".into()));
    }
    Ok(Oracle { graph: g, r: rf.r, division, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{generate, Kind};
    use crate::oracle::build_oracle;

    fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
        let mut out = Vec::new();
        let mut stack = vec![dir.to_path_buf()];
        while let Some(d) = stack.pop() {
            for e in fs::read_dir(&d).unwrap() {
                let p = e.unwrap().path();
                if p.is_dir() {
                    stack.push(p);
                } else {
                    out.push((p.strip_prefix(dir).unwrap().display().to_string(), fs::read(&p).unwrap()));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn round_trip_and_determinism() {
        let base = std::env::temp_dir().join(format!("planar-oracle-store-{}", std::process::id()));
        let mut dirs = Vec::new();
        for run in 0..2 {
            let inst = generate(Kind::Grid { rows: 8, cols: 9 }, 11).unwrap();
            let o = build_oracle(Arc::new(inst.graph), 12).unwrap();
            let dir = base.join(format!("run{run}"));
            save_oracle(&o, &dir).unwrap();
            let back = load_oracle(&dir).unwrap();
            let n = o.graph().n() as u32;
            for u in (0..n).step_by(7) {
                for v in (0..n).step_by(5) {
                    assert_eq!(o.query(u, v), back.query(u, v));
                }
            }
            dirs.push(dir);
        }
        assert_eq!(files(&dirs[0]), files(&dirs[1]));
        let bin = dirs[0].join("weights.bin");
        let mut bytes = fs::read(&bin).unwrap();
        bytes[8] = 9;
        fs::write(&bin, bytes).unwrap();
        assert!(matches!(load_oracle(&dirs[0]), Err(Error::Format(_))));
        fs::remove_dir_all(&base).unwrap();
    }
}
