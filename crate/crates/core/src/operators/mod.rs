//! Discrete forward model, its exact transpose, and the normal operator.
//!
//! The forward map is a cell sum
//! `d(s,t) = f g sum_k dx1 dx2 A0(s,x_k) P(t - R(s,x_k)/c0) V_k`
//! with `A0 = 1 / ((4 pi)^2 X1 X2)`. The adjoint is taken with respect to the
//! quadrature-weighted inner products `dx1 dx2 sum V W` on scenes and
//! `ds dt sum d e` on data.

mod artifact;
mod grid;
mod pulse;
mod taper;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{focal_distances, AcquisitionGeometry, GroundPoint};

pub use artifact::{artifact_demo, ArtifactReport, Peak};
pub use grid::{Axis, ImagingGrids, Scene, SceneGrid, Sinogram, SinogramGrid};
pub use pulse::{Pulse, PulseKind, RICKER_CUTOFF};
pub use taper::{data_weight, edge_taper, edge_window, mute};

/// Order of `F` as a Fourier integral operator. Not checked numerically.
pub const FORWARD_ORDER: f64 = 1.5;
/// `F*F` lies in `I^{p,l}` with these indices. Not checked numerically.
pub const NORMAL_CLASS: (f64, f64) = (3.0, 0.0);

/// Geometric spreading `((4 pi)^2 X1 X2)^-1` and delay `R / c0`.
#[inline]
fn spreading_and_delay(geom: &AcquisitionGeometry, s: f64, x: GroundPoint) -> (f64, f64) {
    let fd = focal_distances(geom, s, x);
    let amp = 1.0 / ((4.0 * PI) * (4.0 * PI) * fd.product());
    (amp, fd.total() / geom.c0())
}

fn check_pulse(pulse: &Pulse, data: &SinogramGrid) -> Result<()> {
    pulse.check_sampling(data.t.step())
}

/// Per-sample data weights `f(s,t) g(t)`, row-major in `s`.
fn weights(geom: &AcquisitionGeometry, data: &SinogramGrid) -> Vec<f64> {
    let (ns, nt) = data.dims();
    let mut w = Vec::with_capacity(ns * nt);
    for is in 0..ns {
        let s = data.s.value(is);
        for it in 0..nt {
            w.push(data_weight(geom, s, data.t.value(it)));
        }
    }
    w
}

/// Simulated data `F V` on `data`.
pub fn forward(
    geom: &AcquisitionGeometry,
    scene: &Scene,
    pulse: &Pulse,
    data: &SinogramGrid,
) -> Result<Sinogram> {
    check_pulse(pulse, data)?;
    let grid = *scene.grid();
    let area = grid.cell_area();
    let support = pulse.support_halfwidth();
    let nt = data.t.len();
    let w = weights(geom, data);
    let mut out = vec![0.0; data.len()];

    out.par_chunks_mut(nt).enumerate().for_each(|(is, row)| {
        let s = data.s.value(is);
        for (k, &v) in scene.values().iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let (amp, delay) = spreading_and_delay(geom, s, grid.center_of(k));
            let a = area * amp * v;
            for it in data.t.index_range(delay - support, delay + support) {
                row[it] += a * pulse.eval(data.t.value(it) - delay);
            }
        }
        for (it, d) in row.iter_mut().enumerate() {
            *d *= w[is * nt + it];
        }
    });
    Sinogram::new(*data, out)
}

/// Exact transpose of [`forward`] under the weighted inner products.
pub fn adjoint(
    geom: &AcquisitionGeometry,
    sinogram: &Sinogram,
    pulse: &Pulse,
    scene_grid: &SceneGrid,
) -> Result<Scene> {
    let data = *sinogram.grid();
    check_pulse(pulse, &data)?;
    let support = pulse.support_halfwidth();
    let nt = data.t.len();
    let w = weights(geom, &data);
    // fold the taper into the data once
    let weighted: Vec<f64> = sinogram
        .values()
        .iter()
        .zip(&w)
        .map(|(d, w)| d * w)
        .collect();
    let dsdt = data.cell_area();
    let mut out = vec![0.0; scene_grid.len()];

    out.par_iter_mut().enumerate().for_each(|(k, value)| {
        let x = scene_grid.center_of(k);
        let mut acc = 0.0;
        for is in 0..data.s.len() {
            let s = data.s.value(is);
            let (amp, delay) = spreading_and_delay(geom, s, x);
            let row = &weighted[is * nt..(is + 1) * nt];
            let mut inner = 0.0;
            for it in data.t.index_range(delay - support, delay + support) {
                inner += row[it] * pulse.eval(data.t.value(it) - delay);
            }
            acc += amp * inner;
        }
        *value = dsdt * acc;
    });
    Scene::new(*scene_grid, out)
}

/// `F* F V`.
pub fn normal_image(
    geom: &AcquisitionGeometry,
    scene: &Scene,
    pulse: &Pulse,
    grids: &ImagingGrids,
) -> Result<Scene> {
    if scene.grid() != &grids.scene {
        return Err(Error::DimensionMismatch {
            expected: format!("scene grid {:?}", grids.scene),
            found: format!("{:?}", scene.grid()),
        });
    }
    let d = forward(geom, scene, pulse, &grids.data)?;
    adjoint(geom, &d, pulse, &grids.scene)
}

/// Both sides of the dot-product test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DotProductTest {
    /// `<F V, d>` with data weights `ds dt`.
    pub data_side: f64,
    /// `<V, F* d>` with scene weights `dx1 dx2`.
    pub scene_side: f64,
    pub relative_discrepancy: f64,
}

fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Compares the two inner products for given `V` and `d`.
pub fn dot_product_pair(
    geom: &AcquisitionGeometry,
    scene: &Scene,
    data: &Sinogram,
    pulse: &Pulse,
) -> Result<DotProductTest> {
    let fv = forward(geom, scene, pulse, data.grid())?;
    let fd = adjoint(geom, data, pulse, scene.grid())?;
    let lhs = data.grid().cell_area() * dot(fv.values(), data.values());
    let rhs = scene.grid().cell_area() * dot(scene.values(), fd.values());
    let relative_discrepancy = (lhs - rhs).abs() / (lhs.abs() + f64::MIN_POSITIVE);
    Ok(DotProductTest {
        data_side: lhs,
        scene_side: rhs,
        relative_discrepancy,
    })
}

/// Random-vector dot-product test `|<FV,d> - <V,F*d>| / (|<FV,d>| + eps)`.
pub fn dot_product_test(
    geom: &AcquisitionGeometry,
    grids: &ImagingGrids,
    pulse: &Pulse,
    seed: u64,
) -> Result<DotProductTest> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = random_values(&mut rng, grids.scene.len());
    let d = random_values(&mut rng, grids.data.len());
    dot_product_pair(
        geom,
        &Scene::new(grids.scene, v)?,
        &Sinogram::new(grids.data, d)?,
        pulse,
    )
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{bistatic_range, Interval};

    fn small_grids(geom: &AcquisitionGeometry) -> ImagingGrids {
        ImagingGrids {
            scene: SceneGrid::covering(Interval::new(-1.0, 1.0), Interval::new(-1.0, 1.0), 16, 16)
                .unwrap(),
            data: SinogramGrid::spanning(geom, 24, 96).unwrap(),
        }
    }

    #[test]
    fn zero_in_zero_out() {
        let g = AcquisitionGeometry::default();
        let grids = small_grids(&g);
        let p = Pulse::ricker(8.0).unwrap();
        let d = forward(&g, &Scene::zeros(grids.scene), &p, &grids.data).unwrap();
        assert!(d.values().iter().all(|&v| v == 0.0));
        let im = adjoint(&g, &Sinogram::zeros(grids.data), &p, &grids.scene).unwrap();
        assert!(im.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn dot_test_small() {
        let g = AcquisitionGeometry::default();
        let grids = small_grids(&g);
        let p = Pulse::ricker(8.0).unwrap();
        let r = dot_product_test(&g, &grids, &p, 3).unwrap();
        assert!(r.relative_discrepancy <= 1e-12, "{r:?}");
        assert_eq!(r, dot_product_test(&g, &grids, &p, 3).unwrap());
    }

    #[test]
    fn point_target_band() {
        let g = AcquisitionGeometry::default();
        let grids = small_grids(&g);
        let p = Pulse::ricker(8.0).unwrap();
        let x = GroundPoint::new(0.3, 0.6);
        let scene = Scene::point_scatterer(grids.scene, x).unwrap();
        let (i1, i2) = grids.scene.nearest_cell(x).unwrap();
        let c = grids.scene.cell_center(i1, i2);
        let d = forward(&g, &scene, &p, &grids.data).unwrap();
        let mut energy = 0.0;
        for is in 0..grids.data.s.len() {
            let delay = bistatic_range(&g, grids.data.s.value(is), c) / g.c0();
            for it in 0..grids.data.t.len() {
                let v = d.get(is, it);
                if (grids.data.t.value(it) - delay).abs() > p.support_halfwidth() {
                    assert_eq!(v, 0.0);
                }
                energy += v * v;
            }
        }
        assert!(energy > 0.0);
    }

    #[test]
    fn nyquist_enforced() {
        let g = AcquisitionGeometry::default();
        let grids = small_grids(&g);
        let p = Pulse::ricker(40.0).unwrap();
        let err = forward(&g, &Scene::zeros(grids.scene), &p, &grids.data).unwrap_err();
        assert!(matches!(err, Error::Nyquist { .. }));
    }

    #[test]
    fn mismatched_grid_rejected() {
        let g = AcquisitionGeometry::default();
        let grids = small_grids(&g);
        let other =
            SceneGrid::covering(Interval::new(-1.0, 1.0), Interval::new(-1.0, 1.0), 8, 8).unwrap();
        let p = Pulse::ricker(8.0).unwrap();
        assert!(matches!(
            normal_image(&g, &Scene::zeros(other), &p, &grids),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
