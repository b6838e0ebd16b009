use crate::error::{Error, Result};
use crate::geometry::{bistatic_range, AcquisitionGeometry, GroundPoint};

use super::{normal_image, ImagingGrids, Pulse, Scene};

/// Relative amplitude below which a secondary maximum counts as noise.
pub const PEAK_NOISE_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub location: GroundPoint,
    pub cell: (usize, usize),
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArtifactReport {
    pub image: Scene,
    pub target: GroundPoint,
    pub true_peak: Peak,
    pub mirror_peak: Peak,
    /// `mirror_peak.value / true_peak.value`.
    pub peak_ratio: f64,
    /// Spatial pulse footprint `c0 * support_halfwidth` used for margins and peak separation.
    pub footprint: f64,
}

impl ArtifactReport {
    fn cell_offset(&self, peak: &Peak, expected: GroundPoint) -> (f64, f64) {
        let (d1, d2) = self.image.grid().spacing();
        (
            (peak.location.x1 - expected.x1).abs() / d1,
            (peak.location.x2 - expected.x2).abs() / d2,
        )
    }

    /// Offset of the true peak from the target, in cells along each axis.
    pub fn true_peak_offset(&self) -> (f64, f64) {
        self.cell_offset(&self.true_peak, self.target)
    }

    /// Offset of the mirror peak from the reflected target, in cells.
    pub fn mirror_peak_offset(&self) -> (f64, f64) {
        self.cell_offset(&self.mirror_peak, self.target.mirrored())
    }

    pub fn peaks_within_one_cell(&self) -> bool {
        let ok = |(a, b): (f64, f64)| a <= 1.0 && b <= 1.0;
        ok(self.true_peak_offset()) && ok(self.mirror_peak_offset())
    }
}

fn check_preconditions(
    geom: &AcquisitionGeometry,
    target: GroundPoint,
    pulse: &Pulse,
    grids: &ImagingGrids,
    footprint: f64,
) -> Result<()> {
    if !(target.x1.is_finite() && target.x2.is_finite()) || target.x2 == 0.0 {
        return Err(Error::InvalidArgument(
            "artifact target needs finite x1 and x2 != 0".into(),
        ));
    }
    let e1 = grids.scene.extent_x1();
    let e2 = grids.scene.extent_x2();
    let inside = |v: f64, lo: f64, hi: f64| v - footprint >= lo && v + footprint <= hi;
    if !inside(target.x1, e1.start, e1.end)
        || !inside(target.x2, e2.start, e2.end)
        || !inside(-target.x2, e2.start, e2.end)
    {
        return Err(Error::InvalidArgument(format!(
            "target ({}, {}) and its mirror need a margin of {footprint} inside the scene",
            target.x1, target.x2
        )));
    }
    let clear = geom.mute_halfwidth() + pulse.support_halfwidth();
    for is in 0..grids.data.s.len() {
        let t = bistatic_range(geom, grids.data.s.value(is), target) / geom.c0();
        if (t - geom.mute_center()).abs() <= clear {
            return Err(Error::InvalidArgument(format!(
                "target echo at t = {t} overlaps the muted zone around {}",
                geom.mute_center()
            )));
        }
    }
    Ok(())
}

/// Local maxima of a positive image, strongest first.
fn local_maxima(image: &Scene) -> Vec<Peak> {
    let grid = image.grid();
    let (n1, n2) = grid.dims();
    let mut peaks = Vec::new();
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let v = image.get(i1, i2);
            if v <= 0.0 {
                continue;
            }
            let k = grid.index(i1, i2);
            let mut is_max = true;
            'nb: for j1 in i1.saturating_sub(1)..=(i1 + 1).min(n1 - 1) {
                for j2 in i2.saturating_sub(1)..=(i2 + 1).min(n2 - 1) {
                    let kn = grid.index(j1, j2);
                    let w = image.get(j1, j2);
                    if kn != k && (w > v || (w == v && kn < k)) {
                        is_max = false;
                        break 'nb;
                    }
                }
            }
            if is_max {
                peaks.push(Peak {
                    location: grid.cell_center(i1, i2),
                    cell: (i1, i2),
                    value: v,
                });
            }
        }
    }
    peaks.sort_by(|a, b| b.value.total_cmp(&a.value).then(a.cell.cmp(&b.cell)));
    peaks
}

/// Images a unit point scatterer through `F*F` and locates the true and
/// mirror peaks.
pub fn artifact_demo(
    geom: &AcquisitionGeometry,
    target: GroundPoint,
    pulse: &Pulse,
    grids: &ImagingGrids,
) -> Result<ArtifactReport> {
    let footprint = geom.c0() * pulse.support_halfwidth();
    check_preconditions(geom, target, pulse, grids, footprint)?;
    let scene = Scene::point_scatterer(grids.scene, target)?;
    let image = normal_image(geom, &scene, pulse, grids)?;

    let peaks = local_maxima(&image);
    let first = *peaks
        .first()
        .ok_or_else(|| Error::PeakDetection("normal image has no positive maximum".into()))?;
    let exclusion = footprint.min(target.x2.abs());
    let second = *peaks
        .iter()
        .find(|p| p.location.distance(first.location) >= exclusion)
        .ok_or_else(|| Error::PeakDetection("no second well-separated maximum".into()))?;
    if second.value < PEAK_NOISE_FLOOR * first.value {
        return Err(Error::PeakDetection(format!(
            "secondary peak {} is below the noise floor ({} of {})",
            second.value, PEAK_NOISE_FLOOR, first.value
        )));
    }
    let (true_peak, mirror_peak) =
        if first.location.distance(target) <= second.location.distance(target) {
            (first, second)
        } else {
            (second, first)
        };
    let report = ArtifactReport {
        peak_ratio: mirror_peak.value / true_peak.value,
        image,
        target,
        true_peak,
        mirror_peak,
        footprint,
    };
    if !report.peaks_within_one_cell() {
        return Err(Error::PeakDetection(format!(
            "peaks at ({}, {}) and ({}, {}) are not within one cell of ({}, +-{})",
            true_peak.location.x1,
            true_peak.location.x2,
            mirror_peak.location.x1,
            mirror_peak.location.x2,
            target.x1,
            target.x2.abs()
        )));
    }
    Ok(report)
}
