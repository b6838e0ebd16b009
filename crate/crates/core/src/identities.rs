//! Decompositions of the six generators of the ideal vanishing on the
//! diagonal and its mirror image as combinations of `d_s phi` and
//! `d_omega phi`.
//!
//! Every generator `p_i` is written as
//!
//! ```text
//! p_i = omega^(-e_i) f_i1 d_s phi + omega^(d_i) f_i2 d_omega phi
//! ```
//!
//! with `(e_i, d_i)` from [`Generator::omega_weights`]. The coefficients are
//! assembled in prolate spheroidal coordinates: each generator is first
//! reduced to a combination `a * delta + b * B` of
//! `delta = cosh(rho') - cosh(rho)` and `B = cos(theta) - cos(theta')`, and
//! `B` is then traded for `d_s phi` and `d_omega phi` via [`cos_theta_difference`].
//! The general `c0` case enters through `c0 d_s phi` and `c0 d_omega phi`,
//! so the returned coefficients carry a factor of `c0`.

use rayon::prelude::*;

use crate::error::{Degeneracy, Error, Result};
use crate::geometry::{
    focal_distances, ground_to_prolate, AcquisitionGeometry, GroundPoint, ProlateCoords,
};
use crate::phase::{phi_derivs, KernelPhaseDerivs, KernelPhasePoint};
use crate::sampling::{PointSampler, MIN_ABS_OMEGA};

/// Floor added to relative-residual denominators.
pub const RESIDUAL_FLOOR: f64 = 1e-30;
/// Smallest admissible value of any coefficient denominator.
pub const DENOMINATOR_TOL: f64 = 1e-14;

/// The six generators, numbered as in the identity list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `x1 - y1`
    P1,
    /// `x2^2 - y2^2`
    P2,
    /// `xi1 - eta1`
    P3,
    /// `(x2 + y2)(xi2 - eta2)`
    P4,
    /// `(x2 - y2)(xi2 + eta2)`
    P5,
    /// `xi2^2 - eta2^2`
    P6,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::P1,
        Generator::P2,
        Generator::P3,
        Generator::P4,
        Generator::P5,
        Generator::P6,
    ];

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL
            .get(i.wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("identity index {i} outside 1..=6")))
    }

    pub fn index(self) -> usize {
        self as usize + 1
    }

    /// `(e, d)` in `p = omega^(-e) f1 d_s phi + omega^d f2 d_omega phi`.
    ///
    /// Identity 3 uses `(0, 1)` with `(f1, f2) = (-1, 0)`.
    pub fn omega_weights(self) -> (i32, i32) {
        match self {
            Generator::P1 | Generator::P2 => (1, 0),
            Generator::P3 | Generator::P4 | Generator::P5 => (0, 1),
            Generator::P6 => (-1, 2),
        }
    }
}

/// A pair of ground points with the shared slow time and frequency, plus
/// their prolate coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairPoint {
    pub x: GroundPoint,
    pub y: GroundPoint,
    pub s: f64,
    pub omega: f64,
    pub prolate_x: ProlateCoords,
    pub prolate_y: ProlateCoords,
}

impl PairPoint {
    pub fn new(
        geom: &AcquisitionGeometry,
        x: GroundPoint,
        y: GroundPoint,
        s: f64,
        omega: f64,
    ) -> Result<Self> {
        if omega == 0.0 {
            return Err(Error::InvalidArgument("omega must be nonzero".into()));
        }
        Ok(Self {
            x,
            y,
            s,
            omega,
            prolate_x: ground_to_prolate(geom, s, x)?,
            prolate_y: ground_to_prolate(geom, s, y)?,
        })
    }

    pub fn kernel_point(&self) -> KernelPhasePoint {
        KernelPhasePoint {
            x: self.x,
            y: self.y,
            s: self.s,
            omega: self.omega,
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            x: self.y,
            y: self.x,
            prolate_x: self.prolate_y,
            prolate_y: self.prolate_x,
            ..*self
        }
    }

    pub fn with_omega(&self, omega: f64) -> Self {
        Self { omega, ..*self }
    }
}

/// `(f_i1, f_i2)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientPair {
    pub f1: f64,
    pub f2: f64,
}

impl CoefficientPair {
    fn max_abs(&self) -> f64 {
        self.f1.abs().max(self.f2.abs())
    }
}

/// Evaluates the generator directly from the Cartesian phase derivatives.
pub fn ptilde(geom: &AcquisitionGeometry, which: Generator, p: &PairPoint) -> f64 {
    let d = phi_derivs(geom, &p.kernel_point());
    ptilde_from(which, p, &d)
}

fn ptilde_from(which: Generator, p: &PairPoint, d: &KernelPhaseDerivs) -> f64 {
    let (xi, eta) = (d.xi(), d.eta());
    let (x2, y2) = (p.x.x2, p.y.x2);
    match which {
        Generator::P1 => p.x.x1 - p.y.x1,
        Generator::P2 => x2 * x2 - y2 * y2,
        Generator::P3 => xi[0] - eta[0],
        Generator::P4 => (x2 + y2) * (xi[1] - eta[1]),
        Generator::P5 => (x2 - y2) * (xi[1] + eta[1]),
        Generator::P6 => xi[1] * xi[1] - eta[1] * eta[1],
    }
}

/// Right side `omega^(-e) f1 d_s phi + omega^d f2 d_omega phi`.
fn assemble(which: Generator, omega: f64, c: &CoefficientPair, d: &KernelPhaseDerivs) -> f64 {
    let (e, dw) = which.omega_weights();
    omega.powi(-e) * c.f1 * d.ds + omega.powi(dw) * c.f2 * d.domega
}

/// Prolate building blocks shared by all coefficient formulas.
#[derive(Debug, Clone, Copy)]
struct ProlateTerms {
    alpha: f64,
    c0: f64,
    ch: f64,
    ct: f64,
    chp: f64,
    ctp: f64,
    /// `(cos theta - cos theta') = m * (c0 d_s phi / (2 omega)) + m * k * delta`
    m: f64,
    k: f64,
    /// `cosh rho / (cosh^2 rho - cos^2 theta)` and its primed twin
    l: f64,
    lp: f64,
    /// the two pieces of the rational identity for `l - lp`
    u: f64,
    v: f64,
}

/// `a * delta + b * B` with `delta = cosh rho' - cosh rho`, `B = cos theta - cos theta'`.
#[derive(Debug, Clone, Copy)]
struct Combination {
    a: f64,
    b: f64,
}

impl Combination {
    fn scale(self, k: f64) -> Self {
        Self {
            a: k * self.a,
            b: k * self.b,
        }
    }

    fn add(self, other: Self) -> Self {
        Self {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }
}

fn check_denominator(v: f64) -> Result<f64> {
    if v.abs() < DENOMINATOR_TOL {
        Err(Error::DegenerateCoordinates {
            reason: Degeneracy::SmallDenominator,
            coords: None,
        })
    } else {
        Ok(v)
    }
}

impl ProlateTerms {
    fn new(geom: &AcquisitionGeometry, p: &PairPoint) -> Result<Self> {
        let (ch, ct) = (p.prolate_x.cosh_rho(), p.prolate_x.cos_theta());
        let (chp, ctp) = (p.prolate_y.cosh_rho(), p.prolate_y.cos_theta());
        let d = check_denominator((ch - ct) * (ch + ct))?;
        let dp = check_denominator((chp - ctp) * (chp + ctp))?;
        let dx = check_denominator((ch - ctp) * (ch + ctp))?;
        let sinh2 = (ch - 1.0) * (ch + 1.0);
        let mixed = check_denominator(sinh2 * (ch * ch + ct * ctp))?;
        let m = d * dx / mixed;
        let k = ctp * (1.0 - ctp * ctp) * (ch + chp) / (dp * dx);
        Ok(Self {
            alpha: geom.alpha(),
            c0: geom.c0(),
            ch,
            ct,
            chp,
            ctp,
            m,
            k,
            l: ch / d,
            lp: chp / dp,
            u: (ch * chp + ct * ct) / (d * dp),
            v: ch * (ct + ctp) / (d * dp),
        })
    }

    /// Trades `B` for the phase derivatives: returns the coefficients of
    /// `d_s phi / omega` and `d_omega phi`.
    fn coefficients_of(&self, c: Combination) -> CoefficientPair {
        CoefficientPair {
            f1: c.b * self.m * self.c0 / 2.0,
            f2: (c.a + c.b * self.m * self.k) * self.c0 / (2.0 * self.alpha),
        }
    }

    /// `x1 - y1 = -alpha cos(theta) delta + alpha cosh(rho') B`
    fn x1_difference(&self) -> Combination {
        Combination {
            a: -self.alpha * self.ct,
            b: self.alpha * self.chp,
        }
    }

    /// `x2^2 - y2^2`, reduced through the `x1 - y1` combination.
    fn x2_square_difference(&self) -> Combination {
        let alpha2 = self.alpha * self.alpha;
        let mixed = self.ch * self.ct + self.chp * self.ctp;
        let direct = Combination {
            a: -alpha2 * (self.ch + self.chp),
            b: alpha2 * (self.ct + self.ctp),
        };
        direct.add(self.x1_difference().scale(-self.alpha * mixed))
    }

    /// `l - lp = u delta + v B`
    fn l_difference(&self) -> Combination {
        Combination {
            a: self.u,
            b: self.v,
        }
    }
}

/// Coefficients `(f_i1, f_i2)` of the prolate-coordinate decomposition.
pub fn coefficient_pair(
    geom: &AcquisitionGeometry,
    which: Generator,
    p: &PairPoint,
) -> Result<CoefficientPair> {
    let terms = ProlateTerms::new(geom, p)?;
    let (x2, y2) = (p.x.x2, p.y.x2);
    let c0a = geom.c0() * geom.alpha();
    let combo = match which {
        Generator::P1 => terms.x1_difference(),
        Generator::P2 => terms.x2_square_difference(),
        Generator::P3 => return Ok(CoefficientPair { f1: -1.0, f2: 0.0 }),
        Generator::P4 | Generator::P5 => {
            // xi2 -/+ eta2 = -(2 omega / (c0 alpha)) (x2 l -/+ y2 lp); the
            // product then splits as (x2^2 +/- x2 y2)(l - lp) + (x2^2 - y2^2) lp.
            let cross = if which == Generator::P4 {
                x2 * y2
            } else {
                -x2 * y2
            };
            terms
                .l_difference()
                .scale(x2 * x2 + cross)
                .add(terms.x2_square_difference().scale(terms.lp))
                .scale(-2.0 / c0a)
        }
        Generator::P6 => {
            // xi2^2 - eta2^2 = (4 omega^2 / (c0 alpha)^2)
            //   (x2^2 (l + lp)(l - lp) + (x2^2 - y2^2) lp^2)
            terms
                .l_difference()
                .scale(x2 * x2 * (terms.l + terms.lp))
                .add(terms.x2_square_difference().scale(terms.lp * terms.lp))
                .scale(4.0 / (c0a * c0a))
        }
    };
    Ok(terms.coefficients_of(combo))
}

/// Identity 1 coefficients written directly in the focal distances
/// `X1, X2, Y1, Y2`.
pub fn identity1_cartesian(geom: &AcquisitionGeometry, p: &PairPoint) -> Result<CoefficientPair> {
    let alpha = geom.alpha();
    let fx = focal_distances(geom, p.s, p.x);
    let fy = focal_distances(geom, p.s, p.y);
    let (sx, sy) = (fx.total(), fy.total());
    let ch = sx / (2.0 * alpha);
    let chp = sy / (2.0 * alpha);
    let ct = 2.0 * (p.x.x1 - p.s) / sx;
    let ctp = 2.0 * (p.y.x1 - p.s) / sy;
    let denom = check_denominator((ch * ch - 1.0) * (ch * ch + ct * ctp))?;
    let f1 = alpha * chp * (fx.product() / (alpha * alpha)) * (ch * ch - ctp * ctp) / (2.0 * denom);
    let f2 = -0.5
        * (ct
            - fx.product() * ctp * (1.0 - ctp * ctp) * (sx + sy) / (2.0 * alpha) * chp
                / (fy.product() * denom));
    Ok(CoefficientPair {
        f1: f1 * geom.c0(),
        f2: f2 * geom.c0(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResidual {
    pub identity_index: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    /// Coefficients used; identity 1 also carries the Cartesian evaluation.
    pub coefficients: Vec<CoefficientPair>,
}

pub fn relative_residual(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / (lhs.abs() + rhs.abs() + RESIDUAL_FLOOR)
}

pub fn check_identity(
    geom: &AcquisitionGeometry,
    which: Generator,
    p: &PairPoint,
) -> Result<IdentityResidual> {
    let d = phi_derivs(geom, &p.kernel_point());
    let coeffs = coefficient_pair(geom, which, p)?;
    let lhs = ptilde_from(which, p, &d);
    let rhs = assemble(which, p.omega, &coeffs, &d);
    let mut coefficients = vec![coeffs];
    if which == Generator::P1 {
        coefficients.push(identity1_cartesian(geom, p)?);
    }
    Ok(IdentityResidual {
        identity_index: which.index(),
        lhs,
        rhs,
        abs_residual: (lhs - rhs).abs(),
        rel_residual: relative_residual(lhs, rhs),
        coefficients,
    })
}

/// `cos(theta) - cos(theta')` read off the prolate coordinates, and the same
/// quantity rebuilt from `d_s phi` and `d_omega phi`.
pub fn cos_theta_difference(geom: &AcquisitionGeometry, p: &PairPoint) -> Result<(f64, f64)> {
    let terms = ProlateTerms::new(geom, p)?;
    let d = phi_derivs(geom, &p.kernel_point());
    let direct = terms.ct - terms.ctp;
    let c0 = geom.c0();
    let formula =
        terms.m * (c0 * d.ds / (2.0 * p.omega) + terms.k * c0 * d.domega / (2.0 * geom.alpha()));
    Ok((direct, formula))
}

/// Relative residual of the rational identity
/// `l - l' = u (cosh rho' - cosh rho) + v (cos theta - cos theta')`.
pub fn handy_identity_check(geom: &AcquisitionGeometry, p: &PairPoint) -> Result<f64> {
    let (lhs, rhs) = handy_identity_sides(geom, p)?;
    Ok(relative_residual(lhs, rhs))
}

/// Both sides of the rational identity, left side first.
pub fn handy_identity_sides(geom: &AcquisitionGeometry, p: &PairPoint) -> Result<(f64, f64)> {
    let t = ProlateTerms::new(geom, p)?;
    let lhs = t.l - t.lp;
    let rhs = t.u * (t.chp - t.ch) + t.v * (t.ct - t.ctp);
    Ok((lhs, rhs))
}

/// Worst-case statistics of one identity over a batch.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IdentityStats {
    pub max_rel_residual: f64,
    pub max_abs_residual: f64,
    pub max_abs_coefficient: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityBatch {
    pub samples: usize,
    pub per_identity: [IdentityStats; 6],
    /// Cartesian vs prolate identity-1 coefficients.
    pub max_identity1_route_mismatch: f64,
    /// `|direct - formula| / (1 + |direct|)` for the cosine difference.
    pub max_cos_theta_error: f64,
    pub max_handy_residual: f64,
}

/// Random non-degenerate pair points for `geom`.
pub fn sample_pair_points(geom: &AcquisitionGeometry, samples: usize, seed: u64) -> Vec<PairPoint> {
    let mut sampler = PointSampler::new(seed);
    sampler.omega_range = (MIN_ABS_OMEGA, 10.0);
    (0..samples)
        .map(|_| {
            let s = sampler.slow_time(geom);
            let x = sampler.ground_point(geom, s);
            let y = sampler.ground_point(geom, s);
            let omega = sampler.omega();
            PairPoint::new(geom, x, y, s, omega).expect("sampler excludes the under-track point")
        })
        .collect()
}

fn route_mismatch(a: &CoefficientPair, b: &CoefficientPair) -> f64 {
    let rel = |u: f64, v: f64| (u - v).abs() / u.abs().max(v.abs()).max(RESIDUAL_FLOOR);
    rel(a.f1, b.f1).max(rel(a.f2, b.f2))
}

fn point_stats(geom: &AcquisitionGeometry, p: &PairPoint) -> Result<IdentityBatch> {
    let mut out = IdentityBatch {
        samples: 1,
        per_identity: [IdentityStats::default(); 6],
        max_identity1_route_mismatch: 0.0,
        max_cos_theta_error: 0.0,
        max_handy_residual: 0.0,
    };
    for which in Generator::ALL {
        let r = check_identity(geom, which, p)?;
        out.per_identity[which.index() - 1] = IdentityStats {
            max_rel_residual: r.rel_residual,
            max_abs_residual: r.abs_residual,
            max_abs_coefficient: r.coefficients[0].max_abs(),
        };
        if which == Generator::P1 {
            out.max_identity1_route_mismatch =
                route_mismatch(&r.coefficients[0], &r.coefficients[1]);
        }
    }
    let (direct, formula) = cos_theta_difference(geom, p)?;
    out.max_cos_theta_error = (direct - formula).abs() / (1.0 + direct.abs());
    out.max_handy_residual = handy_identity_check(geom, p)?;
    Ok(out)
}

fn merge(a: IdentityBatch, b: IdentityBatch) -> IdentityBatch {
    let mut per_identity = a.per_identity;
    for (acc, other) in per_identity.iter_mut().zip(b.per_identity.iter()) {
        acc.max_rel_residual = acc.max_rel_residual.max(other.max_rel_residual);
        acc.max_abs_residual = acc.max_abs_residual.max(other.max_abs_residual);
        acc.max_abs_coefficient = acc.max_abs_coefficient.max(other.max_abs_coefficient);
    }
    IdentityBatch {
        samples: a.samples + b.samples,
        per_identity,
        max_identity1_route_mismatch: a
            .max_identity1_route_mismatch
            .max(b.max_identity1_route_mismatch),
        max_cos_theta_error: a.max_cos_theta_error.max(b.max_cos_theta_error),
        max_handy_residual: a.max_handy_residual.max(b.max_handy_residual),
    }
}

/// Runs every identity and the intermediate checks over a seeded batch.
/// The result does not depend on the thread count.
pub fn check_identities_batch(
    geom: &AcquisitionGeometry,
    samples: usize,
    seed: u64,
) -> Result<IdentityBatch> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "at least one sample is required".into(),
        ));
    }
    let points = sample_pair_points(geom, samples, seed);
    let stats: Vec<IdentityBatch> = points
        .par_iter()
        .map(|p| point_stats(geom, p))
        .collect::<Result<_>>()?;
    Ok(stats.into_iter().reduce(merge).expect("non-empty batch"))
}
