//! Batch verification suites producing [`VerificationReport`]s.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{AcquisitionGeometry, GroundPoint};
use crate::identities::check_identities_batch;
use crate::microlocal::{
    classify_singularity, det_dpi_left, dpi_finite_diff, dpi_left, dpi_right, positivity_term,
    ChartPoint, Projection, Verdict,
};
use crate::operators::{dot_product_test, ImagingGrids, Pulse};
use crate::phase::check_phase_gradients;
use crate::report::{Tolerances, VerificationReport};
use crate::sampling::PointSampler;

/// Smallest `|x2|` for chart points treated as off the critical set.
pub const OFF_SIGMA_MIN_X2: f64 = 1e-2;

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn require_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "at least one sample is required".into(),
        ));
    }
    Ok(())
}

/// Random chart points with `|x2| >= OFF_SIGMA_MIN_X2`.
pub fn off_sigma_points(geom: &AcquisitionGeometry, samples: usize, seed: u64) -> Vec<ChartPoint> {
    let mut sampler = PointSampler::new(seed);
    (0..samples)
        .map(|_| {
            let s = sampler.slow_time(geom);
            let x = loop {
                let x = sampler.ground_point(geom, s);
                if x.x2.abs() >= OFF_SIGMA_MIN_X2 {
                    break x;
                }
            };
            let omega = sampler.omega();
            ChartPoint::new(x.x1, x.x2, s, omega).expect("nonzero omega")
        })
        .collect()
}

/// Random chart points on the critical set `x2 = 0`.
pub fn sigma_points(geom: &AcquisitionGeometry, samples: usize, seed: u64) -> Vec<ChartPoint> {
    let mut sampler = PointSampler::new(seed);
    let half = sampler.reach * geom.alpha().max(geom.h());
    (0..samples)
        .map(|_| {
            let s = sampler.slow_time(geom);
            let x1 = s + sampler.uniform(-half, half);
            let omega = sampler.omega();
            ChartPoint::new(x1, 0.0, s, omega).expect("nonzero omega")
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default)]
struct DeterminantStats {
    closed_vs_fd: f64,
    left_vs_right: f64,
    closed_vs_analytic: f64,
}

fn determinant_stats(geom: &AcquisitionGeometry, points: &[ChartPoint]) -> DeterminantStats {
    points
        .par_iter()
        .map(|c| {
            let closed = det_dpi_left(geom, c);
            let left = dpi_left(geom, c).determinant();
            let right = dpi_right(geom, c).determinant();
            let fd = dpi_finite_diff(geom, c, Projection::Left).determinant();
            DeterminantStats {
                closed_vs_fd: rel(closed, fd),
                left_vs_right: rel(left, right),
                closed_vs_analytic: rel(closed, left),
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(DeterminantStats::default(), |a, b| DeterminantStats {
            closed_vs_fd: a.closed_vs_fd.max(b.closed_vs_fd),
            left_vs_right: a.left_vs_right.max(b.left_vs_right),
            closed_vs_analytic: a.closed_vs_analytic.max(b.closed_vs_analytic),
        })
}

#[derive(Debug, Clone, Copy)]
struct SigmaStats {
    fold_failures: usize,
    blowdown_failures: usize,
    min_left_alignment: f64,
    max_right_x2_component: f64,
    min_abs_det_slope: f64,
}

fn sigma_stats(geom: &AcquisitionGeometry, points: &[ChartPoint]) -> SigmaStats {
    let per_point: Vec<SigmaStats> = points
        .par_iter()
        .map(|c| {
            let mut st = SigmaStats {
                fold_failures: 0,
                blowdown_failures: 0,
                min_left_alignment: f64::INFINITY,
                max_right_x2_component: 0.0,
                min_abs_det_slope: f64::INFINITY,
            };
            match classify_singularity(geom, c, Projection::Left) {
                Ok(r) if r.verdict == Verdict::Fold => {
                    st.min_left_alignment = r.x2_alignment();
                    st.min_abs_det_slope = r.d_det_along_x2.abs();
                }
                _ => {
                    st.fold_failures = 1;
                    st.min_left_alignment = 0.0;
                    st.min_abs_det_slope = 0.0;
                }
            }
            match classify_singularity(geom, c, Projection::Right) {
                Ok(r) if r.verdict == Verdict::Blowdown => {
                    st.max_right_x2_component = r.x2_alignment()
                }
                _ => {
                    st.blowdown_failures = 1;
                    st.max_right_x2_component = 1.0;
                }
            }
            st
        })
        .collect();
    per_point.into_iter().fold(
        SigmaStats {
            fold_failures: 0,
            blowdown_failures: 0,
            min_left_alignment: 1.0,
            max_right_x2_component: 0.0,
            min_abs_det_slope: f64::INFINITY,
        },
        |a, b| SigmaStats {
            fold_failures: a.fold_failures + b.fold_failures,
            blowdown_failures: a.blowdown_failures + b.blowdown_failures,
            min_left_alignment: a.min_left_alignment.min(b.min_left_alignment),
            max_right_x2_component: a.max_right_x2_component.max(b.max_right_x2_component),
            min_abs_det_slope: a.min_abs_det_slope.min(b.min_abs_det_slope),
        },
    )
}

fn regular_failures(geom: &AcquisitionGeometry, points: &[ChartPoint]) -> usize {
    points
        .par_iter()
        .map(|c| {
            [Projection::Left, Projection::Right]
                .into_iter()
                .filter(|&p| !matches!(classify_singularity(geom, c, p), Ok(r) if r.verdict == Verdict::Regular))
                .count()
        })
        .sum()
}

/// Positivity-term statistics over random geometries with
/// `alpha, h in (0, 10]`, `|x1 - s| <= 1e3`, `|x2| <= 1e3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityStats {
    pub min_value: f64,
    /// Worst relative error of the value at `(s, 0)` against `2 h^2 / (h^2 + alpha^2)`.
    pub max_track_error: f64,
}

pub fn positivity_stats(samples: usize, seed: u64) -> Result<PositivityStats> {
    require_samples(samples)?;
    let mut sampler = PointSampler::new(seed);
    let mut min_value = f64::INFINITY;
    let mut max_track_error = 0.0f64;
    for _ in 0..samples {
        // (0, 10]
        let alpha = 10.0 * (1.0 - sampler.uniform(0.0, 1.0));
        let h = 10.0 * (1.0 - sampler.uniform(0.0, 1.0));
        let geom = AcquisitionGeometry::with_offsets(alpha, h)?;
        let s = sampler.uniform(-1e3, 1e3);
        let x = GroundPoint::new(s + sampler.uniform(-1e3, 1e3), sampler.uniform(-1e3, 1e3));
        min_value = min_value.min(positivity_term(&geom, s, x));
        let at_track = positivity_term(&geom, s, GroundPoint::new(s, 0.0));
        let expected = 2.0 * h * h / (h * h + alpha * alpha);
        max_track_error = max_track_error.max((at_track - expected).abs() / expected);
    }
    Ok(PositivityStats {
        min_value,
        max_track_error,
    })
}

/// Determinant agreement, fold/blowdown verdicts and positivity of the determinant factor.
/// `samples` points are drawn for each of the determinant, critical-set and
/// regular checks; the positivity check uses `100 * samples` draws.
pub fn microlocal_suite(
    geom: &AcquisitionGeometry,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    require_samples(samples)?;
    let off = off_sigma_points(geom, samples, seed);
    let on = sigma_points(geom, samples, seed.wrapping_add(1));

    let det = determinant_stats(geom, &off);
    let sigma = sigma_stats(geom, &on);
    let regular = regular_failures(geom, &off);
    let pos = positivity_stats(100 * samples, seed.wrapping_add(2))?;

    let mut r = VerificationReport::new("microlocal");
    r.meta("samples", samples)
        .meta("seed", seed)
        .meta("positivity_samples", 100 * samples);
    r.at_most(
        "determinant.closed_vs_finite_diff",
        det.closed_vs_fd,
        tol.det_finite_diff,
    )
    .at_most(
        "determinant.left_vs_right",
        det.left_vs_right,
        tol.det_left_right,
    )
    .at_most(
        "determinant.closed_vs_analytic",
        det.closed_vs_analytic,
        tol.det_left_right,
    )
    .at_most("fold.failures", sigma.fold_failures as f64, 0.0)
    .at_most(
        "fold.misalignment",
        1.0 - sigma.min_left_alignment,
        tol.kernel_alignment,
    )
    .above("fold.min_abs_det_slope", sigma.min_abs_det_slope, 0.0)
    .at_most("blowdown.failures", sigma.blowdown_failures as f64, 0.0)
    .at_most(
        "blowdown.max_x2_component",
        sigma.max_right_x2_component,
        tol.kernel_alignment,
    )
    .at_most("regular.failures", regular as f64, 0.0)
    .above("positivity.min_value", pos.min_value, 0.0)
    .at_most(
        "positivity.track_value_error",
        pos.max_track_error,
        tol.positivity_at_track,
    );
    Ok(r)
}

/// Generator identities over each geometry, `samples` points per geometry.
pub fn identities_suite(
    geoms: &[AcquisitionGeometry],
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    require_samples(samples)?;
    if geoms.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one geometry is required".into(),
        ));
    }
    let mut worst = [0.0f64; 6];
    let mut max_coef = [0.0f64; 6];
    let (mut routes, mut cos_theta, mut handy) = (0.0f64, 0.0f64, 0.0f64);
    for (k, g) in geoms.iter().enumerate() {
        let b = check_identities_batch(g, samples, seed.wrapping_add(k as u64))?;
        for i in 0..6 {
            worst[i] = worst[i].max(b.per_identity[i].max_rel_residual);
            max_coef[i] = max_coef[i].max(b.per_identity[i].max_abs_coefficient);
        }
        routes = routes.max(b.max_identity1_route_mismatch);
        cos_theta = cos_theta.max(b.max_cos_theta_error);
        handy = handy.max(b.max_handy_residual);
    }

    let mut r = VerificationReport::new("identities");
    r.meta("samples_per_geometry", samples)
        .meta("geometries", geoms.len())
        .meta("seed", seed);
    for (k, g) in geoms.iter().enumerate() {
        r.meta(format!("geometry.{k}.alpha"), format!("{:e}", g.alpha()))
            .meta(format!("geometry.{k}.h"), format!("{:e}", g.h()));
    }
    for i in 0..6 {
        let t = if i == 2 {
            tol.identity3_rel
        } else {
            tol.identity_rel
        };
        r.at_most(format!("identity{}.max_rel_residual", i + 1), worst[i], t);
        r.meta(
            format!("identity{}.max_abs_coefficient", i + 1),
            format!("{:e}", max_coef[i]),
        );
    }
    r.at_most("identity1.route_mismatch", routes, tol.identity1_routes)
        .at_most("cos_theta_difference.max_error", cos_theta, tol.cos_theta)
        .at_most("handy_identity.max_rel_residual", handy, tol.handy);
    Ok(r)
}

/// Dot-product test over `seeds` consecutive seeds plus the phase-gradient oracle.
pub fn selftest_suite(
    geom: &AcquisitionGeometry,
    grids: &ImagingGrids,
    pulse: &Pulse,
    seed: u64,
    seeds: usize,
    gradient_samples: usize,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    require_samples(seeds)?;
    let mut worst_dot = 0.0f64;
    for k in 0..seeds as u64 {
        worst_dot = worst_dot
            .max(dot_product_test(geom, grids, pulse, seed.wrapping_add(k))?.relative_discrepancy);
    }
    let grad = check_phase_gradients(geom, gradient_samples, seed)?;
    let mut r = VerificationReport::new("selftest");
    r.meta("seed", seed)
        .meta("dot_product_seeds", seeds)
        .meta("gradient_samples", gradient_samples);
    r.at_most(
        "dot_product.max_rel_discrepancy",
        worst_dot,
        tol.dot_product,
    )
    .at_most("phase_gradient.max_rel_error", grad, tol.phase_gradient);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn microlocal_suite_small() {
        let r = microlocal_suite(
            &AcquisitionGeometry::default(),
            50,
            1,
            &Tolerances::default(),
        )
        .unwrap();
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn identities_suite_small() {
        let g = [
            AcquisitionGeometry::default(),
            AcquisitionGeometry::with_offsets(0.4, 3.0).unwrap(),
        ];
        let r = identities_suite(&g, 200, 5, &Tolerances::default()).unwrap();
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn suites_are_deterministic() {
        let g = AcquisitionGeometry::default();
        let a = microlocal_suite(&g, 20, 9, &Tolerances::default())
            .unwrap()
            .render();
        let b = microlocal_suite(&g, 20, 9, &Tolerances::default())
            .unwrap()
            .render();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(microlocal_suite(
            &AcquisitionGeometry::default(),
            0,
            1,
            &Tolerances::default()
        )
        .is_err());
        assert!(identities_suite(&[], 10, 1, &Tolerances::default()).is_err());
    }
}
