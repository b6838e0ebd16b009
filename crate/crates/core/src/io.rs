//! File formats for scenes, sinograms and images.
//!
//! Binary layout (all little-endian):
//!
//! | offset | size | field                                             |
//! |--------|------|---------------------------------------------------|
//! | 0      | 8    | magic, `BSARSCN\0` (scene) or `BSARSIN\0` (data)  |
//! | 8      | 4    | format version (`u32`, currently 1)               |
//! | 12     | 4    | reserved, zero                                    |
//! | 16     | 8    | `n_a` (`u64`): `n1` or number of `s` samples      |
//! | 24     | 8    | `n_b` (`u64`): `n2` or number of `t` samples      |
//! | 32     | 8    | `a0` (`f64`): `origin.x1` or first `s`            |
//! | 40     | 8    | `da` (`f64`): `dx1` or `s` step                   |
//! | 48     | 8    | `b0` (`f64`): `origin.x2` or first `t`            |
//! | 56     | 8    | `db` (`f64`): `dx2` or `t` step                   |
//! | 64     | 8·n  | values (`f64`), row-major with `b` fastest        |

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::operators::{Axis, Scene, SceneGrid, Sinogram, SinogramGrid};

pub const SCENE_MAGIC: [u8; 8] = *b"BSARSCN\0";
pub const SINOGRAM_MAGIC: [u8; 8] = *b"BSARSIN\0";
pub const FORMAT_VERSION: u32 = 1;
pub const HEADER_LEN: usize = 64;

struct Layout {
    na: usize,
    nb: usize,
    a0: f64,
    da: f64,
    b0: f64,
    db: f64,
}

fn encode(magic: [u8; 8], l: &Layout, values: &[f64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * values.len());
    out.extend_from_slice(&magic);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&(l.na as u64).to_le_bytes());
    out.extend_from_slice(&(l.nb as u64).to_le_bytes());
    for v in [l.a0, l.da, l.b0, l.db] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

fn decode(magic: [u8; 8], bytes: &[u8], path: &Path) -> Result<(Layout, Vec<f64>)> {
    let bad = |reason: String| Error::Format {
        path: path.to_path_buf(),
        reason,
    };
    if bytes.len() < HEADER_LEN {
        return Err(bad(format!(
            "file is {} bytes, shorter than the header",
            bytes.len()
        )));
    }
    if bytes[..8] != magic {
        return Err(bad("wrong magic".into()));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(8);
    if version != FORMAT_VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let (na, nb) = (u64_at(16), u64_at(24));
    let count = na
        .checked_mul(nb)
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| bad("dimensions overflow".into()))?;
    let payload = &bytes[HEADER_LEN..];
    if Some(payload.len()) != count.checked_mul(8) {
        return Err(bad(format!(
            "expected {count} values, payload has {} bytes",
            payload.len()
        )));
    }
    let values = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok((
        Layout {
            na: na as usize,
            nb: nb as usize,
            a0: f64_at(32),
            da: f64_at(40),
            b0: f64_at(48),
            db: f64_at(56),
        },
        values,
    ))
}

pub fn scene_to_bytes(scene: &Scene) -> Vec<u8> {
    let g = scene.grid();
    let (n1, n2) = g.dims();
    let layout = Layout {
        na: n1,
        nb: n2,
        a0: g.origin().0,
        da: g.spacing().0,
        b0: g.origin().1,
        db: g.spacing().1,
    };
    encode(SCENE_MAGIC, &layout, scene.values())
}

pub fn scene_from_bytes(bytes: &[u8], path: &Path) -> Result<Scene> {
    let (l, values) = decode(SCENE_MAGIC, bytes, path)?;
    let grid = SceneGrid::new((l.a0, l.b0), (l.da, l.db), l.na, l.nb)?;
    Scene::new(grid, values)
}

pub fn sinogram_to_bytes(sino: &Sinogram) -> Vec<u8> {
    let g = sino.grid();
    let layout = Layout {
        na: g.s.len(),
        nb: g.t.len(),
        a0: g.s.start(),
        da: g.s.step(),
        b0: g.t.start(),
        db: g.t.step(),
    };
    encode(SINOGRAM_MAGIC, &layout, sino.values())
}

pub fn sinogram_from_bytes(bytes: &[u8], path: &Path) -> Result<Sinogram> {
    let (l, values) = decode(SINOGRAM_MAGIC, bytes, path)?;
    let grid = SinogramGrid::new(Axis::new(l.a0, l.da, l.na)?, Axis::new(l.b0, l.db, l.nb)?);
    Sinogram::new(grid, values)
}

pub fn write_scene(path: &Path, scene: &Scene) -> Result<()> {
    Ok(fs::write(path, scene_to_bytes(scene))?)
}

pub fn read_scene(path: &Path) -> Result<Scene> {
    scene_from_bytes(&fs::read(path)?, path)
}

pub fn write_sinogram(path: &Path, sino: &Sinogram) -> Result<()> {
    Ok(fs::write(path, sinogram_to_bytes(sino))?)
}

pub fn read_sinogram(path: &Path) -> Result<Sinogram> {
    sinogram_from_bytes(&fs::read(path)?, path)
}

/// CSV with header `x1,x2,value`, one row per cell centre.
pub fn scene_csv(scene: &Scene) -> String {
    let g = scene.grid();
    let mut out = String::from("x1,x2,value\n");
    for (k, v) in scene.values().iter().enumerate() {
        let c = g.center_of(k);
        out.push_str(&format!("{},{},{}\n", c.x1, c.x2, v));
    }
    out
}

/// CSV with header `s,t,value`.
pub fn sinogram_csv(sino: &Sinogram) -> String {
    let g = sino.grid();
    let mut out = String::from("s,t,value\n");
    for is in 0..g.s.len() {
        for it in 0..g.t.len() {
            out.push_str(&format!(
                "{},{},{}\n",
                g.s.value(is),
                g.t.value(it),
                sino.get(is, it)
            ));
        }
    }
    out
}

/// 16-bit binary graymap (`P5`, maxval 65535) of a scene. Columns run along
/// `x1`, rows along `x2` with the largest `x2` at the top. Values are scaled
/// linearly so the image maximum maps to 65535; negatives clip to 0.
pub fn scene_pgm(scene: &Scene) -> Vec<u8> {
    let (n1, n2) = scene.grid().dims();
    let max = scene.values().iter().cloned().fold(0.0f64, f64::max);
    let mut out = format!("P5\n{n1} {n2}\n65535\n").into_bytes();
    out.reserve(2 * n1 * n2);
    for row in (0..n2).rev() {
        for col in 0..n1 {
            let v = scene.get(col, row);
            let level = if max > 0.0 {
                ((v / max).clamp(0.0, 1.0) * 65535.0).round() as u16
            } else {
                0
            };
            out.extend_from_slice(&level.to_be_bytes());
        }
    }
    out
}

pub fn write_scene_pgm(path: &Path, scene: &Scene) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(&scene_pgm(scene))?;
    Ok(())
}
