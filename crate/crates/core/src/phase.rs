//! Phase functions of the forward operator (`psi`) and of the normal-operator
//! kernel (`phi`), with closed-form derivatives.

use crate::error::{Error, Result};
use crate::geometry::{bistatic_range, range_gradient, AcquisitionGeometry, GroundPoint};
use crate::sampling::PointSampler;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForwardPhasePoint {
    pub s: f64,
    pub t: f64,
    pub x: GroundPoint,
    pub omega: f64,
}

impl ForwardPhasePoint {
    pub fn new(s: f64, t: f64, x: GroundPoint, omega: f64) -> Result<Self> {
        if omega == 0.0 {
            return Err(Error::InvalidArgument("omega must be nonzero".into()));
        }
        Ok(Self { s, t, x, omega })
    }
}

/// `psi = -omega (t - R(s, x) / c0)`.
pub fn psi(geom: &AcquisitionGeometry, p: &ForwardPhasePoint) -> f64 {
    -p.omega * (p.t - bistatic_range(geom, p.s, p.x) / geom.c0())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForwardPhaseDerivs {
    pub ds: f64,
    pub dt: f64,
    pub dx1: f64,
    pub dx2: f64,
    pub domega: f64,
}

impl ForwardPhaseDerivs {
    fn as_array(&self) -> [f64; 5] {
        [self.ds, self.dt, self.dx1, self.dx2, self.domega]
    }
}

pub fn psi_derivs(geom: &AcquisitionGeometry, p: &ForwardPhasePoint) -> ForwardPhaseDerivs {
    let k = p.omega / geom.c0();
    let grad = range_gradient(geom, p.s, p.x);
    ForwardPhaseDerivs {
        ds: k * grad.ds,
        dt: -p.omega,
        dx1: k * grad.dx1,
        dx2: k * grad.dx2,
        domega: -(p.t - bistatic_range(geom, p.s, p.x) / geom.c0()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPhasePoint {
    pub x: GroundPoint,
    pub y: GroundPoint,
    pub s: f64,
    pub omega: f64,
}

impl KernelPhasePoint {
    pub fn new(x: GroundPoint, y: GroundPoint, s: f64, omega: f64) -> Result<Self> {
        if omega == 0.0 {
            return Err(Error::InvalidArgument("omega must be nonzero".into()));
        }
        Ok(Self { x, y, s, omega })
    }

    pub fn swapped(&self) -> Self {
        Self {
            x: self.y,
            y: self.x,
            ..*self
        }
    }
}

/// `phi = (omega / c0) (R(s, y) - R(s, x))`.
pub fn phi(geom: &AcquisitionGeometry, p: &KernelPhasePoint) -> f64 {
    p.omega / geom.c0() * (bistatic_range(geom, p.s, p.y) - bistatic_range(geom, p.s, p.x))
}

/// All six first partials of `phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPhaseDerivs {
    pub dx1: f64,
    pub dx2: f64,
    pub dy1: f64,
    pub dy2: f64,
    pub ds: f64,
    pub domega: f64,
}

impl KernelPhaseDerivs {
    /// Covector paired with `x`: `xi = d_x phi`.
    pub fn xi(&self) -> [f64; 2] {
        [self.dx1, self.dx2]
    }

    /// Covector paired with `y`: `eta = -d_y phi`.
    pub fn eta(&self) -> [f64; 2] {
        [-self.dy1, -self.dy2]
    }

    fn as_array(&self) -> [f64; 6] {
        [self.dx1, self.dx2, self.dy1, self.dy2, self.ds, self.domega]
    }
}

pub fn phi_derivs(geom: &AcquisitionGeometry, p: &KernelPhasePoint) -> KernelPhaseDerivs {
    let k = p.omega / geom.c0();
    let gx = range_gradient(geom, p.s, p.x);
    let gy = range_gradient(geom, p.s, p.y);
    let dx1 = -k * gx.dx1;
    let dy1 = k * gy.dx1;
    KernelPhaseDerivs {
        dx1,
        dx2: -k * gx.dx2,
        dy1,
        dy2: k * gy.dx2,
        // translation invariance along the track: d/ds = -(d/dx1 + d/dy1)
        ds: -(dx1 + dy1),
        domega: (bistatic_range(geom, p.s, p.y) - bistatic_range(geom, p.s, p.x)) / geom.c0(),
    }
}

fn fd_step(v: f64) -> f64 {
    1e-6 * v.abs().max(1.0)
}

fn central<F: Fn(f64) -> f64>(f: F, at: f64) -> f64 {
    let h = fd_step(at);
    (f(at + h) - f(at - h)) / (2.0 * h)
}

fn normwise_error(analytic: &[f64], numeric: &[f64]) -> f64 {
    let scale = analytic.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = analytic
        .iter()
        .zip(numeric)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Central-difference gradient of `psi`, in the order `(s, t, x1, x2, omega)`.
pub fn psi_gradient_fd(geom: &AcquisitionGeometry, p: &ForwardPhasePoint) -> [f64; 5] {
    let f = |q: ForwardPhasePoint| psi(geom, &q);
    [
        central(|v| f(ForwardPhasePoint { s: v, ..*p }), p.s),
        central(|v| f(ForwardPhasePoint { t: v, ..*p }), p.t),
        central(
            |v| {
                f(ForwardPhasePoint {
                    x: GroundPoint::new(v, p.x.x2),
                    ..*p
                })
            },
            p.x.x1,
        ),
        central(
            |v| {
                f(ForwardPhasePoint {
                    x: GroundPoint::new(p.x.x1, v),
                    ..*p
                })
            },
            p.x.x2,
        ),
        central(|v| f(ForwardPhasePoint { omega: v, ..*p }), p.omega),
    ]
}

/// Central-difference gradient of `phi`, in the order of [`KernelPhaseDerivs`].
pub fn phi_gradient_fd(geom: &AcquisitionGeometry, p: &KernelPhasePoint) -> [f64; 6] {
    let f = |q: KernelPhasePoint| phi(geom, &q);
    [
        central(
            |v| {
                f(KernelPhasePoint {
                    x: GroundPoint::new(v, p.x.x2),
                    ..*p
                })
            },
            p.x.x1,
        ),
        central(
            |v| {
                f(KernelPhasePoint {
                    x: GroundPoint::new(p.x.x1, v),
                    ..*p
                })
            },
            p.x.x2,
        ),
        central(
            |v| {
                f(KernelPhasePoint {
                    y: GroundPoint::new(v, p.y.x2),
                    ..*p
                })
            },
            p.y.x1,
        ),
        central(
            |v| {
                f(KernelPhasePoint {
                    y: GroundPoint::new(p.y.x1, v),
                    ..*p
                })
            },
            p.y.x2,
        ),
        central(|v| f(KernelPhasePoint { s: v, ..*p }), p.s),
        central(|v| f(KernelPhasePoint { omega: v, ..*p }), p.omega),
    ]
}

/// Worst normwise relative error between the closed-form gradients of `psi`
/// and `phi` and central differences, over `samples` random points.
pub fn check_phase_gradients(geom: &AcquisitionGeometry, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "at least one sample is required".into(),
        ));
    }
    let mut sampler = PointSampler::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let s = sampler.slow_time(geom);
        let x = sampler.ground_point(geom, s);
        let y = sampler.ground_point(geom, s);
        let omega = sampler.omega();
        let t = bistatic_range(geom, s, x) / geom.c0() + sampler.uniform(-1.0, 1.0);

        let fp = ForwardPhasePoint { s, t, x, omega };
        worst = worst.max(normwise_error(
            &psi_derivs(geom, &fp).as_array(),
            &psi_gradient_fd(geom, &fp),
        ));

        let kp = KernelPhasePoint { x, y, s, omega };
        worst = worst.max(normwise_error(
            &phi_derivs(geom, &kp).as_array(),
            &phi_gradient_fd(geom, &kp),
        ));
    }
    Ok(worst)
}
