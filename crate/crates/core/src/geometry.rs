//! Flight geometry for two antennas moving on a common straight line.
//!
//! The transmitter sits at `(s + alpha, 0, h)` and the receiver at
//! `(s - alpha, 0, h)`; scatterers live on the ground plane `x3 = 0`.
//! Everything here is a pure function of its inputs.

use std::f64::consts::PI;

use crate::error::{Degeneracy, Error, Result};

/// Relative threshold (in units of `alpha`) below which the prolate inversion
/// is considered degenerate.
pub const PROLATE_DEGENERACY_EPS: f64 = 1e-12;

/// Open interval `(start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
}

impl Interval {
    pub fn new(start: f64, end: f64) -> Self {
        Self { start, end }
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn contains(&self, v: f64) -> bool {
        v > self.start && v < self.end
    }
}

/// Scene and flight parameters shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcquisitionGeometry {
    alpha: f64,
    h: f64,
    c0: f64,
    s_window: Interval,
    t_window: Interval,
    mute_halfwidth: f64,
    taper_fraction: f64,
}

impl Default for AcquisitionGeometry {
    /// `alpha = h = c0 = 1`, slow time in `(-2, 2)`, fast time in `(2.5, 8.5)`.
    fn default() -> Self {
        Self {
            alpha: 1.0,
            h: 1.0,
            c0: 1.0,
            s_window: Interval::new(-2.0, 2.0),
            t_window: Interval::new(2.5, 8.5),
            mute_halfwidth: 0.1,
            taper_fraction: 0.1,
        }
    }
}

impl AcquisitionGeometry {
    pub fn new(
        alpha: f64,
        h: f64,
        c0: f64,
        s_window: Interval,
        t_window: Interval,
        mute_halfwidth: f64,
        taper_fraction: f64,
    ) -> Result<Self> {
        let geom = Self {
            alpha,
            h,
            c0,
            s_window,
            t_window,
            mute_halfwidth,
            taper_fraction,
        };
        geom.validate()?;
        Ok(geom)
    }

    /// Default windows and tapers with the given offsets and `c0 = 1`.
    pub fn with_offsets(alpha: f64, h: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(
            alpha,
            h,
            1.0,
            d.s_window,
            d.t_window,
            d.mute_halfwidth,
            d.taper_fraction,
        )
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidGeometry(msg.to_string()));
        let finite = [
            self.alpha,
            self.h,
            self.c0,
            self.s_window.start,
            self.s_window.end,
            self.t_window.start,
            self.t_window.end,
            self.mute_halfwidth,
            self.taper_fraction,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return bad("all parameters must be finite");
        }
        if self.alpha <= 0.0 {
            return bad("alpha must be > 0");
        }
        if self.h <= 0.0 {
            return bad("h must be > 0");
        }
        if self.c0 <= 0.0 {
            return bad("c0 must be > 0");
        }
        if self.s_window.start >= self.s_window.end {
            return bad("slow-time window must satisfy s0 < s1");
        }
        if self.t_window.start >= self.t_window.end {
            return bad("fast-time window must satisfy t0 < t1");
        }
        if self.mute_halfwidth < 0.0 {
            return bad("mute_halfwidth must be >= 0");
        }
        if !(0.0..0.5).contains(&self.taper_fraction) {
            return bad("taper_fraction must lie in [0, 0.5)");
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn h(&self) -> f64 {
        self.h
    }
    pub fn c0(&self) -> f64 {
        self.c0
    }
    pub fn s_window(&self) -> Interval {
        self.s_window
    }
    pub fn t_window(&self) -> Interval {
        self.t_window
    }
    pub fn mute_halfwidth(&self) -> f64 {
        self.mute_halfwidth
    }
    pub fn taper_fraction(&self) -> f64 {
        self.taper_fraction
    }

    /// `2 sqrt(alpha^2 + h^2)`, the smallest bistatic range on the ground.
    pub fn min_range(&self) -> f64 {
        2.0 * self.alpha.hypot(self.h)
    }

    /// Fast time of the under-track return, the centre of the mute.
    pub fn mute_center(&self) -> f64 {
        self.min_range() / self.c0
    }
}

/// A point `(x1, x2)` on the ground plane `x3 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPoint {
    pub x1: f64,
    pub x2: f64,
}

impl GroundPoint {
    pub fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    /// Reflection about the flight-track plane `x2 = 0`.
    pub fn mirrored(self) -> Self {
        Self::new(self.x1, -self.x2)
    }

    pub fn distance(self, other: GroundPoint) -> f64 {
        (self.x1 - other.x1).hypot(self.x2 - other.x2)
    }
}

pub fn transmitter_pos(geom: &AcquisitionGeometry, s: f64) -> [f64; 3] {
    [s + geom.alpha, 0.0, geom.h]
}

pub fn receiver_pos(geom: &AcquisitionGeometry, s: f64) -> [f64; 3] {
    [s - geom.alpha, 0.0, geom.h]
}

/// The two legs of the bistatic path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalDistances {
    /// `X1 = |x - gamma_T(s)|`
    pub to_transmitter: f64,
    /// `X2 = |x - gamma_R(s)|`
    pub to_receiver: f64,
}

impl FocalDistances {
    pub fn total(&self) -> f64 {
        self.to_transmitter + self.to_receiver
    }

    pub fn product(&self) -> f64 {
        self.to_transmitter * self.to_receiver
    }
}

pub fn focal_distances(geom: &AcquisitionGeometry, s: f64, x: GroundPoint) -> FocalDistances {
    let rel = x.x1 - s;
    let lateral = x.x2.hypot(geom.h);
    FocalDistances {
        to_transmitter: (rel - geom.alpha).hypot(lateral),
        to_receiver: (rel + geom.alpha).hypot(lateral),
    }
}

/// `R(s, x) = X1 + X2`.
pub fn bistatic_range(geom: &AcquisitionGeometry, s: f64, x: GroundPoint) -> f64 {
    focal_distances(geom, s, x).total()
}

/// First partials of `R` with respect to slow time and the ground coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeGradient {
    pub ds: f64,
    pub dx1: f64,
    pub dx2: f64,
}

pub fn range_gradient(geom: &AcquisitionGeometry, s: f64, x: GroundPoint) -> RangeGradient {
    let FocalDistances {
        to_transmitter: x1d,
        to_receiver: x2d,
    } = focal_distances(geom, s, x);
    let rel = x.x1 - s;
    let dx1 = (rel - geom.alpha) / x1d + (rel + geom.alpha) / x2d;
    let dx2 = x.x2 / x1d + x.x2 / x2d;
    RangeGradient { ds: -dx1, dx1, dx2 }
}

/// Second partials of `R` in the ground coordinates. Slow-time partials follow
/// from `d/ds = -d/dx1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeHessian {
    pub d11: f64,
    pub d12: f64,
    pub d22: f64,
}

pub fn range_hessian(geom: &AcquisitionGeometry, s: f64, x: GroundPoint) -> RangeHessian {
    let fd = focal_distances(geom, s, x);
    let rel = x.x1 - s;
    let h2 = geom.h * geom.h;
    let mut out = RangeHessian {
        d11: 0.0,
        d12: 0.0,
        d22: 0.0,
    };
    for (offset, dist) in [
        (rel - geom.alpha, fd.to_transmitter),
        (rel + geom.alpha, fd.to_receiver),
    ] {
        let cube = dist * dist * dist;
        out.d11 += (x.x2 * x.x2 + h2) / cube;
        out.d12 -= offset * x.x2 / cube;
        out.d22 += (offset * offset + h2) / cube;
    }
    out
}

/// Prolate spheroidal coordinates about the two antenna positions.
///
/// `cosh(rho)` and `cos(theta)` are cached because the identity algebra is
/// written in them; when converted from a ground point they are computed
/// from Cartesian quantities directly rather than through `acosh`/`acos`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProlateCoords {
    pub rho: f64,
    pub theta: f64,
    pub phi_angle: f64,
    cosh_rho: f64,
    cos_theta: f64,
}

impl ProlateCoords {
    pub fn new(rho: f64, theta: f64, phi_angle: f64) -> Self {
        Self {
            rho,
            theta,
            phi_angle,
            cosh_rho: rho.cosh(),
            cos_theta: theta.cos(),
        }
    }

    pub fn cosh_rho(&self) -> f64 {
        self.cosh_rho
    }

    pub fn cos_theta(&self) -> f64 {
        self.cos_theta
    }

    /// `cosh^2(rho) - cos^2(theta)`, equal to `X1 X2 / alpha^2`.
    pub fn focal_product_scaled(&self) -> f64 {
        self.cosh_rho * self.cosh_rho - self.cos_theta * self.cos_theta
    }

    /// `alpha (cosh rho - cos theta)`
    pub fn to_transmitter(&self, alpha: f64) -> f64 {
        alpha * (self.cosh_rho - self.cos_theta)
    }

    /// `alpha (cosh rho + cos theta)`
    pub fn to_receiver(&self, alpha: f64) -> f64 {
        alpha * (self.cosh_rho + self.cos_theta)
    }
}

/// Converts a ground point to prolate coordinates centred on `(s, 0, h)`.
///
/// `theta` is taken in `[0, pi]` and the coordinate angle is chosen with
/// `cos(phi)` carrying the sign of `x2`. The under-track point `(s, 0)` is
/// reported as an error carrying its `phi = 3 pi / 2` coordinates.
pub fn ground_to_prolate(
    geom: &AcquisitionGeometry,
    s: f64,
    x: GroundPoint,
) -> Result<ProlateCoords> {
    let alpha = geom.alpha;
    let fd = focal_distances(geom, s, x);
    let total = fd.total();
    let cosh_rho = total / (2.0 * alpha);
    // X2 - X1 = 4 alpha (x1 - s) / (X1 + X2), which avoids the cancellation.
    let cos_theta = (2.0 * (x.x1 - s) / total).clamp(-1.0, 1.0);
    let rho = cosh_rho.max(1.0).acosh();
    let theta = cos_theta.acos();

    // alpha sinh(rho) sin(theta) = sqrt(x2^2 + h^2) on the ground plane.
    let sinh_sin =
        (cosh_rho * cosh_rho - 1.0).max(0.0).sqrt() * (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
    if alpha * sinh_sin < geom.h - PROLATE_DEGENERACY_EPS * alpha {
        return Err(Error::DegenerateCoordinates {
            reason: Degeneracy::NoRealAngle,
            coords: None,
        });
    }
    let mut phi_angle = (-geom.h).atan2(x.x2);
    if phi_angle < 0.0 {
        phi_angle += 2.0 * PI;
    }
    let coords = ProlateCoords {
        rho,
        theta,
        phi_angle,
        cosh_rho,
        cos_theta,
    };
    if x.x1 == s && x.x2 == 0.0 {
        return Err(Error::DegenerateCoordinates {
            reason: Degeneracy::UnderTrack,
            coords: Some(coords),
        });
    }
    Ok(coords)
}

/// Inverse of the prolate change of coordinates; a general point in 3-space.
pub fn prolate_to_ground(geom: &AcquisitionGeometry, s: f64, p: &ProlateCoords) -> [f64; 3] {
    let alpha = geom.alpha;
    let radial = alpha * p.rho.sinh() * p.theta.sin();
    [
        s + alpha * p.cosh_rho * p.cos_theta,
        radial * p.phi_angle.cos(),
        geom.h + radial * p.phi_angle.sin(),
    ]
}

/// Ground ellipse `(x1 - s)^2 / A^2 + x2^2 / B^2 = 1` of constant bistatic range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoRangeEllipse {
    pub center: GroundPoint,
    pub semi_axis_x1: f64,
    pub semi_axis_x2: f64,
}

impl IsoRangeEllipse {
    pub fn point(&self, angle: f64) -> GroundPoint {
        GroundPoint::new(
            self.center.x1 + self.semi_axis_x1 * angle.cos(),
            self.center.x2 + self.semi_axis_x2 * angle.sin(),
        )
    }
}

/// The ground trace of the spheroid `R(s, x) = c0 t`, if it reaches the ground.
pub fn iso_range_ellipse(geom: &AcquisitionGeometry, s: f64, t: f64) -> Option<IsoRangeEllipse> {
    let a = geom.c0 * t / 2.0;
    let half_min = geom.alpha.hypot(geom.h);
    if a <= half_min {
        return None;
    }
    let b = (a * a - geom.alpha * geom.alpha).sqrt();
    let semi_x2 = ((a - half_min) * (a + half_min)).sqrt();
    Some(IsoRangeEllipse {
        center: GroundPoint::new(s, 0.0),
        semi_axis_x1: a * semi_x2 / b,
        semi_axis_x2: semi_x2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn geom(alpha: f64, h: f64) -> AcquisitionGeometry {
        AcquisitionGeometry::with_offsets(alpha, h).unwrap()
    }

    #[test]
    fn antenna_positions() {
        assert_eq!(transmitter_pos(&geom(1.0, 1.0), 0.0), [1.0, 0.0, 1.0]);
        assert_eq!(receiver_pos(&geom(0.5, 3.0), 2.0), [1.5, 0.0, 3.0]);
        assert_eq!(transmitter_pos(&geom(0.7, 2.0), -0.7), [0.0, 0.0, 2.0]);
    }

    #[test]
    fn rejects_bad_geometry() {
        let d = AcquisitionGeometry::default();
        let mk = |alpha, h, c0, mute, taper| {
            AcquisitionGeometry::new(alpha, h, c0, d.s_window(), d.t_window(), mute, taper)
        };
        assert!(mk(0.0, 1.0, 1.0, 0.1, 0.1).is_err());
        assert!(mk(1.0, -1.0, 1.0, 0.1, 0.1).is_err());
        assert!(mk(1.0, 1.0, 0.0, 0.1, 0.1).is_err());
        assert!(mk(1.0, 1.0, 1.0, -0.1, 0.1).is_err());
        assert!(mk(1.0, 1.0, 1.0, 0.1, 0.5).is_err());
        assert!(mk(1.0, 1.0, 1.0, 0.0, 0.0).is_ok());
        let flipped = AcquisitionGeometry::new(
            1.0,
            1.0,
            1.0,
            Interval::new(1.0, -1.0),
            d.t_window(),
            0.1,
            0.1,
        );
        assert!(flipped.is_err());
    }

    #[test]
    fn range_examples() {
        let g = geom(1.0, 1.0);
        let r0 = bistatic_range(&g, 0.0, GroundPoint::new(0.0, 0.0));
        assert!((r0 - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        let r = bistatic_range(&g, 0.0, GroundPoint::new(3.0, 4.0));
        assert!((r - (21f64.sqrt() + 33f64.sqrt())).abs() < 1e-14);
        assert!((r - 10.327138).abs() < 1e-6);
        let fd = focal_distances(&g, 0.0, GroundPoint::new(3.0, 4.0));
        assert!((fd.to_transmitter - 21f64.sqrt()).abs() < 1e-14);
        assert!((fd.to_receiver - 33f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn range_minimum_is_under_track() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let g = geom(rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0));
            let s = rng.gen_range(-5.0..5.0);
            let on = bistatic_range(&g, s, GroundPoint::new(s, 0.0));
            assert!((on - g.min_range()).abs() <= 1e-14 * g.min_range());
            let x = GroundPoint::new(s + rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            assert!(bistatic_range(&g, s, x) > g.min_range());
        }
    }

    #[test]
    fn gradient_examples() {
        let g = geom(1.0, 1.0);
        let on_track = range_gradient(&g, 0.4, GroundPoint::new(0.4, 0.0));
        assert_eq!(on_track.dx2, 0.0);
        let grad = range_gradient(&g, 0.0, GroundPoint::new(3.0, 4.0));
        let expected = 2.0 / 21f64.sqrt() + 4.0 / 33f64.sqrt();
        assert!((grad.dx1 - expected).abs() < 1e-15);
        assert!((grad.dx1 - 1.132747).abs() < 1e-6);
        assert_eq!(grad.ds + grad.dx1, 0.0);
    }

    fn fd_step(v: f64) -> f64 {
        1e-6 * v.abs().max(1.0)
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let g = geom(rng.gen_range(0.2..5.0), rng.gen_range(0.2..5.0));
            let s = rng.gen_range(-3.0..3.0);
            let x = GroundPoint::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
            let grad = range_gradient(&g, s, x);
            let (hs, h1, h2) = (fd_step(s), fd_step(x.x1), fd_step(x.x2));
            let ds = (bistatic_range(&g, s + hs, x) - bistatic_range(&g, s - hs, x)) / (2.0 * hs);
            let d1 = (bistatic_range(&g, s, GroundPoint::new(x.x1 + h1, x.x2))
                - bistatic_range(&g, s, GroundPoint::new(x.x1 - h1, x.x2)))
                / (2.0 * h1);
            let d2 = (bistatic_range(&g, s, GroundPoint::new(x.x1, x.x2 + h2))
                - bistatic_range(&g, s, GroundPoint::new(x.x1, x.x2 - h2)))
                / (2.0 * h2);
            let scale = grad.dx1.abs().max(grad.dx2.abs());
            for (a, b) in [(grad.ds, ds), (grad.dx1, d1), (grad.dx2, d2)] {
                assert!((a - b).abs() <= 1e-6 * scale, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn hessian_matches_gradient_differences() {
        let g = geom(1.3, 0.8);
        let s = 0.2;
        let x = GroundPoint::new(1.1, -0.7);
        let hess = range_hessian(&g, s, x);
        let h = 1e-6;
        let gp = range_gradient(&g, s, GroundPoint::new(x.x1 + h, x.x2));
        let gm = range_gradient(&g, s, GroundPoint::new(x.x1 - h, x.x2));
        assert!(((gp.dx1 - gm.dx1) / (2.0 * h) - hess.d11).abs() < 1e-8);
        assert!(((gp.dx2 - gm.dx2) / (2.0 * h) - hess.d12).abs() < 1e-8);
        let gp = range_gradient(&g, s, GroundPoint::new(x.x1, x.x2 + h));
        let gm = range_gradient(&g, s, GroundPoint::new(x.x1, x.x2 - h));
        assert!(((gp.dx2 - gm.dx2) / (2.0 * h) - hess.d22).abs() < 1e-8);
    }

    #[test]
    fn prolate_at_symmetry_point() {
        let g = geom(1.0, 1.0);
        let Err(Error::DegenerateCoordinates {
            coords: Some(p), ..
        }) = ground_to_prolate(&g, 0.0, GroundPoint::new(0.0, 0.0))
        else {
            panic!("under-track point must be flagged");
        };
        assert!((p.cosh_rho() - 2f64.sqrt()).abs() < 1e-15);
        assert!(p.cos_theta().abs() < 1e-15);
        assert!((p.theta - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn prolate_under_track_is_flagged() {
        let g = geom(1.0, 1.0);
        match ground_to_prolate(&g, 0.3, GroundPoint::new(0.3, 0.0)) {
            Err(Error::DegenerateCoordinates {
                reason: Degeneracy::UnderTrack,
                coords: Some(c),
            }) => {
                assert!((c.phi_angle - 1.5 * PI).abs() < 1e-15);
                assert!((c.cosh_rho() - 2f64.sqrt()).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn prolate_roundtrip_and_focal_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let g = geom(rng.gen_range(0.2..5.0), rng.gen_range(0.2..5.0));
            let s = rng.gen_range(-3.0..3.0);
            let x = GroundPoint::new(s + rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            let p = ground_to_prolate(&g, s, x).unwrap();
            assert!((0.0..=PI).contains(&p.theta));
            assert!((0.0..2.0 * PI).contains(&p.phi_angle));
            let back = prolate_to_ground(&g, s, &p);
            assert!((back[0] - x.x1).abs() < 1e-10, "{back:?} {x:?}");
            assert!((back[1] - x.x2).abs() < 1e-10, "{back:?} {x:?}");
            assert!(back[2].abs() < 1e-10, "{back:?}");
            let fd = focal_distances(&g, s, x);
            assert!((p.to_transmitter(g.alpha()) - fd.to_transmitter).abs() < 1e-12 * fd.total());
            assert!((p.to_receiver(g.alpha()) - fd.to_receiver).abs() < 1e-12 * fd.total());
            assert!(p.to_transmitter(g.alpha()) > 0.0 && p.to_receiver(g.alpha()) > 0.0);
        }
    }

    #[test]
    fn prolate_branch_follows_sign_of_x2() {
        let g = geom(1.0, 1.0);
        let up = ground_to_prolate(&g, 0.0, GroundPoint::new(0.5, 2.0)).unwrap();
        let down = ground_to_prolate(&g, 0.0, GroundPoint::new(0.5, -2.0)).unwrap();
        assert!(up.phi_angle.cos() > 0.0 && up.phi_angle.sin() < 0.0);
        assert!(down.phi_angle.cos() < 0.0 && down.phi_angle.sin() < 0.0);
        assert_eq!(up.cosh_rho(), down.cosh_rho());
    }

    #[test]
    fn ellipse_examples() {
        let g = geom(1.0, 1.0);
        assert!(iso_range_ellipse(&g, 0.0, g.min_range()).is_none());
        assert!(iso_range_ellipse(&g, 0.0, 2.0).is_none());
        assert!(iso_range_ellipse(&g, 0.0, g.min_range() * (1.0 + 1e-12)).is_some());
        let e = iso_range_ellipse(&g, 0.0, 4.0).unwrap();
        assert!((e.semi_axis_x2 - 2f64.sqrt()).abs() < 1e-15);
        assert!((e.semi_axis_x1 - 2.0 * 2f64.sqrt() / 3f64.sqrt()).abs() < 1e-15);
        assert!((e.semi_axis_x1 - 1.632993).abs() < 1e-6);
        for k in 0..64 {
            let x = e.point(2.0 * PI * k as f64 / 64.0);
            assert!((bistatic_range(&g, 0.0, x) - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ellipse_points_have_constant_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let g = AcquisitionGeometry::new(
                rng.gen_range(0.2..5.0),
                rng.gen_range(0.2..5.0),
                rng.gen_range(0.5..3.0),
                Interval::new(-1.0, 1.0),
                Interval::new(0.0, 100.0),
                0.0,
                0.0,
            )
            .unwrap();
            let s = rng.gen_range(-2.0..2.0);
            let t = g.mute_center() * rng.gen_range(1.01..4.0);
            let e = iso_range_ellipse(&g, s, t).unwrap();
            for k in 0..16 {
                let x = e.point(rng.gen_range(0.0..2.0 * PI) + k as f64);
                let r = bistatic_range(&g, s, x);
                assert!((r - g.c0() * t).abs() < 1e-12 * r);
            }
        }
    }
}
