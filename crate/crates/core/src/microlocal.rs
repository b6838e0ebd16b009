//! The canonical relation of the forward operator in its global chart
//! `(x1, x2, s, omega)`, the Jacobians of its two projections, and the
//! fold / blowdown tests on the critical set `x2 = 0`.

use nalgebra::{Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::geometry::{
    focal_distances, range_gradient, range_hessian, AcquisitionGeometry, GroundPoint,
};

/// `|x2| <= ON_SIGMA_REL * max(1, |x1| + |s|)` counts as lying on the critical set.
pub const ON_SIGMA_REL: f64 = 1e-9;
/// Rank drop when `sigma_min <= RANK_DROP_REL * sigma_max`.
pub const RANK_DROP_REL: f64 = 1e-8;
/// Kernel alignment slack for the fold and blowdown verdicts.
pub const KERNEL_ALIGNMENT_TOL: f64 = 1e-8;

/// Global chart of the canonical relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub x1: f64,
    pub x2: f64,
    pub s: f64,
    pub omega: f64,
}

impl ChartPoint {
    pub fn new(x1: f64, x2: f64, s: f64, omega: f64) -> Result<Self> {
        if omega == 0.0 {
            return Err(Error::InvalidArgument("omega must be nonzero".into()));
        }
        Ok(Self { x1, x2, s, omega })
    }

    pub fn ground(&self) -> GroundPoint {
        GroundPoint::new(self.x1, self.x2)
    }

    fn as_vector(&self) -> Vector4<f64> {
        Vector4::new(self.x1, self.x2, self.s, self.omega)
    }

    fn from_vector(v: &Vector4<f64>) -> Self {
        Self {
            x1: v[0],
            x2: v[1],
            s: v[2],
            omega: v[3],
        }
    }

    /// Points with `|x2|` this small are treated as lying on the critical set.
    pub fn on_sigma(&self) -> bool {
        self.x2.abs() <= ON_SIGMA_REL * (self.x1.abs() + self.s.abs()).max(1.0)
    }
}

/// Base point and covector in the data cotangent space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataCovector {
    pub s: f64,
    pub t: f64,
    pub sigma: f64,
    pub tau: f64,
}

/// Base point and covector in the scene cotangent space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneCovector {
    pub x1: f64,
    pub x2: f64,
    pub xi1: f64,
    pub xi2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalPoint {
    pub left: DataCovector,
    pub right: SceneCovector,
}

pub fn lambda_point(geom: &AcquisitionGeometry, c: &ChartPoint) -> CanonicalPoint {
    let x = c.ground();
    let k = c.omega / geom.c0();
    let grad = range_gradient(geom, c.s, x);
    let range = focal_distances(geom, c.s, x).total();
    CanonicalPoint {
        left: DataCovector {
            s: c.s,
            t: range / geom.c0(),
            sigma: -k * grad.dx1,
            tau: -c.omega,
        },
        right: SceneCovector {
            x1: c.x1,
            x2: c.x2,
            xi1: -k * grad.dx1,
            xi2: -k * grad.dx2,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    Left,
    Right,
}

fn project(geom: &AcquisitionGeometry, c: &ChartPoint, which: Projection) -> Vector4<f64> {
    let p = lambda_point(geom, c);
    match which {
        Projection::Left => Vector4::new(p.left.s, p.left.t, p.left.sigma, p.left.tau),
        Projection::Right => Vector4::new(p.right.x1, p.right.x2, p.right.xi1, p.right.xi2),
    }
}

/// Jacobian of the left projection, rows `(s, t, sigma, tau)` and columns
/// `(x1, x2, s, omega)`.
#[rustfmt::skip]
pub fn dpi_left(geom: &AcquisitionGeometry, c: &ChartPoint) -> Matrix4<f64> {
    let x = c.ground();
    let c0 = geom.c0();
    let k = c.omega / c0;
    let g = range_gradient(geom, c.s, x);
    let hs = range_hessian(geom, c.s, x);
    Matrix4::new(
        0.0, 0.0, 1.0, 0.0,
        g.dx1 / c0, g.dx2 / c0, g.ds / c0, 0.0,
        -k * hs.d11, -k * hs.d12, k * hs.d11, -g.dx1 / c0,
        0.0, 0.0, 0.0, -1.0,
    )
}

/// Jacobian of the right projection, rows `(x1, x2, xi1, xi2)` and columns
/// `(x1, x2, s, omega)`.
#[rustfmt::skip]
pub fn dpi_right(geom: &AcquisitionGeometry, c: &ChartPoint) -> Matrix4<f64> {
    let x = c.ground();
    let c0 = geom.c0();
    let k = c.omega / c0;
    let g = range_gradient(geom, c.s, x);
    let hs = range_hessian(geom, c.s, x);
    Matrix4::new(
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        -k * hs.d11, -k * hs.d12, k * hs.d11, -g.dx1 / c0,
        -k * hs.d12, -k * hs.d22, k * hs.d12, -g.dx2 / c0,
    )
}

/// Central-difference Jacobian of either projection, step
/// `1e-6 * max(1, |coordinate|)`.
pub fn dpi_finite_diff(
    geom: &AcquisitionGeometry,
    c: &ChartPoint,
    which: Projection,
) -> Matrix4<f64> {
    let base = c.as_vector();
    let mut jac = Matrix4::zeros();
    for col in 0..4 {
        let step = 1e-6 * base[col].abs().max(1.0);
        let mut plus = base;
        let mut minus = base;
        plus[col] += step;
        minus[col] -= step;
        let fp = project(geom, &ChartPoint::from_vector(&plus), which);
        let fm = project(geom, &ChartPoint::from_vector(&minus), which);
        jac.set_column(col, &((fp - fm) / (plus[col] - minus[col])));
    }
    jac
}

/// `1 + ((x1 - s)^2 + x2^2 + h^2 - alpha^2) / (X1 X2)`, strictly positive.
pub fn positivity_term(geom: &AcquisitionGeometry, s: f64, x: GroundPoint) -> f64 {
    let fd = focal_distances(geom, s, x);
    let prod = fd.product();
    let rel = x.x1 - s;
    let lateral2 = x.x2 * x.x2 + geom.h() * geom.h();
    let p = rel * rel + lateral2 - geom.alpha() * geom.alpha();
    // X1 X2 = sqrt(p^2 + 4 alpha^2 T^2), so for p < 0 the numerator X1 X2 + p
    // is rewritten without cancellation.
    let numerator = if p >= 0.0 {
        prod + p
    } else {
        4.0 * geom.alpha() * geom.alpha() * lateral2 / (prod - p)
    };
    numerator / prod
}

/// Closed-form determinant shared by both projection Jacobians:
/// `-(omega / c0^2) x2 (1/X1^2 + 1/X2^2) * positivity_term`.
pub fn det_dpi_left(geom: &AcquisitionGeometry, c: &ChartPoint) -> f64 {
    let x = c.ground();
    let fd = focal_distances(geom, c.s, x);
    let inv_sq =
        1.0 / (fd.to_transmitter * fd.to_transmitter) + 1.0 / (fd.to_receiver * fd.to_receiver);
    -(c.omega / (geom.c0() * geom.c0())) * c.x2 * inv_sq * positivity_term(geom, c.s, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Fold,
    Blowdown,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityReport {
    pub projection: Projection,
    pub det_closed_form: f64,
    pub det_finite_diff: f64,
    /// Unit right-singular vector of the smallest singular value, in chart
    /// coordinates `(x1, x2, s, omega)`.
    pub kernel_direction: [f64; 4],
    /// Whether the kernel direction has no `x2` component (tangent to `x2 = 0`).
    pub kernel_in_tsigma: bool,
    pub d_det_along_x2: f64,
    pub singular_value_ratio: f64,
    pub verdict: Verdict,
}

impl SingularityReport {
    /// `|<kernel, e_x2>|`
    pub fn x2_alignment(&self) -> f64 {
        self.kernel_direction[1].abs()
    }
}

fn smallest_singular_direction(jac: &Matrix4<f64>) -> ([f64; 4], f64) {
    let svd = jac.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (imin, smin) =
        svd.singular_values
            .iter()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc },
            );
    let smax = svd.singular_values.max();
    let row = v_t.row(imin);
    let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
    ([row[0], row[1], row[2], row[3]], ratio)
}

/// Classifies one projection at a chart point as regular, fold or blowdown.
pub fn classify_singularity(
    geom: &AcquisitionGeometry,
    c: &ChartPoint,
    which: Projection,
) -> Result<SingularityReport> {
    let jac = match which {
        Projection::Left => dpi_left(geom, c),
        Projection::Right => dpi_right(geom, c),
    };
    let det_closed_form = det_dpi_left(geom, c);
    let det_finite_diff = dpi_finite_diff(geom, c, which).determinant();
    let (kernel_direction, singular_value_ratio) = smallest_singular_direction(&jac);
    let kernel_in_tsigma = kernel_direction[1].abs() <= KERNEL_ALIGNMENT_TOL;

    let step = 1e-6 * c.x2.abs().max(1.0);
    let d_det_along_x2 = (det_dpi_left(
        geom,
        &ChartPoint {
            x2: c.x2 + step,
            ..*c
        },
    ) - det_dpi_left(
        geom,
        &ChartPoint {
            x2: c.x2 - step,
            ..*c
        },
    )) / (2.0 * step);

    let rank_dropped = singular_value_ratio <= RANK_DROP_REL;
    let mut report = SingularityReport {
        projection: which,
        det_closed_form,
        det_finite_diff,
        kernel_direction,
        kernel_in_tsigma,
        d_det_along_x2,
        singular_value_ratio,
        verdict: Verdict::Regular,
    };

    match (rank_dropped, c.on_sigma()) {
        (false, false) => Ok(report),
        (true, false) => Err(Error::AmbiguousSingularity {
            det: det_closed_form,
            x2: c.x2,
        }),
        (false, true) => Err(Error::InconsistentSingularity(format!(
            "no rank drop at x2 = {:e} (sigma ratio {singular_value_ratio:e})",
            c.x2
        ))),
        (true, true) => match which {
            Projection::Left => {
                let aligned = report.x2_alignment() >= 1.0 - KERNEL_ALIGNMENT_TOL;
                if aligned && d_det_along_x2 != 0.0 {
                    report.verdict = Verdict::Fold;
                    Ok(report)
                } else {
                    Err(Error::InconsistentSingularity(format!(
                        "left kernel alignment {:e}, d det / d x2 = {d_det_along_x2:e}",
                        report.x2_alignment()
                    )))
                }
            }
            Projection::Right => {
                if kernel_in_tsigma {
                    report.verdict = Verdict::Blowdown;
                    Ok(report)
                } else {
                    Err(Error::InconsistentSingularity(format!(
                        "right kernel x2-component {:e}",
                        report.x2_alignment()
                    )))
                }
            }
        },
    }
}
