//! Data cutoffs: the edge taper `f(s, t)` and the under-track mute `g(t)`.

use std::f64::consts::PI;

use crate::geometry::{AcquisitionGeometry, Interval};

/// Raised-cosine ramp from 0 at `u = 0` to 1 at `u = 1`.
fn ramp(u: f64) -> f64 {
    0.5 * (1.0 - (PI * u).cos())
}

/// Window over `interval` that rolls off over `fraction` of its length at
/// each end and is zero at (and beyond) both endpoints.
pub fn edge_window(v: f64, interval: Interval, fraction: f64) -> f64 {
    let u = (v - interval.start) / interval.len();
    if u <= 0.0 || u >= 1.0 {
        return 0.0;
    }
    if fraction == 0.0 {
        return 1.0;
    }
    let edge = u.min(1.0 - u);
    if edge < fraction {
        ramp(edge / fraction)
    } else {
        1.0
    }
}

/// Separable edge taper `f(s, t)`.
pub fn edge_taper(geom: &AcquisitionGeometry, s: f64, t: f64) -> f64 {
    let frac = geom.taper_fraction();
    edge_window(s, geom.s_window(), frac) * edge_window(t, geom.t_window(), frac)
}

/// Notch `g(t)` around the under-track return: zero for
/// `|t - t_c| <= m`, rising over a further `m`, one beyond `2 m`.
pub fn mute(geom: &AcquisitionGeometry, t: f64) -> f64 {
    let m = geom.mute_halfwidth();
    let dist = (t - geom.mute_center()).abs();
    if dist <= m {
        0.0
    } else if dist >= 2.0 * m {
        1.0
    } else {
        ramp((dist - m) / m)
    }
}

/// Product `f(s, t) g(t)` applied to the data.
pub fn data_weight(geom: &AcquisitionGeometry, s: f64, t: f64) -> f64 {
    edge_taper(geom, s, t) * mute(geom, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_vanishes_at_edges_and_is_bounded() {
        let w = Interval::new(-2.0, 2.0);
        assert_eq!(edge_window(-2.0, w, 0.1), 0.0);
        assert_eq!(edge_window(2.0, w, 0.1), 0.0);
        assert_eq!(edge_window(2.0, w, 0.0), 0.0);
        assert_eq!(edge_window(0.0, w, 0.1), 1.0);
        assert_eq!(edge_window(0.0, w, 0.0), 1.0);
        for k in 0..=400 {
            let v = edge_window(-2.0 + 0.01 * k as f64, w, 0.25);
            assert!((0.0..=1.0).contains(&v));
        }
        assert!((edge_window(-1.8, w, 0.1) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mute_notch() {
        let g = AcquisitionGeometry::default();
        let tc = g.mute_center();
        assert_eq!(mute(&g, tc), 0.0);
        assert_eq!(mute(&g, tc + 0.1), 0.0);
        assert_eq!(mute(&g, tc - 0.1), 0.0);
        assert!((mute(&g, tc + 0.15) - 0.5).abs() < 1e-12);
        assert_eq!(mute(&g, tc + 0.2), 1.0);
        assert_eq!(mute(&g, tc + 3.0), 1.0);
    }
}
