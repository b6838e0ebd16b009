//! Seeded generators for the random point clouds used by the verification
//! suites. Every draw goes through one `ChaCha8Rng`, so a seed fixes the
//! whole sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{AcquisitionGeometry, GroundPoint, Interval};

/// Points closer than this (in units of `alpha`) to the under-track point
/// `(s, 0)` are rejected.
pub const TRACK_EXCLUSION: f64 = 1e-3;

/// Frequencies with `|omega|` below this are rejected.
pub const MIN_ABS_OMEGA: f64 = 1e-3;

pub struct PointSampler {
    rng: ChaCha8Rng,
    /// Half-width of the ground box around `(s, 0)`, in units of `max(alpha, h)`.
    pub reach: f64,
    pub omega_range: (f64, f64),
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            reach: 3.0,
            omega_range: (0.1, 10.0),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn slow_time(&mut self, geom: &AcquisitionGeometry) -> f64 {
        let w: Interval = geom.s_window();
        self.uniform(w.start, w.end)
    }

    /// Nonzero frequency of random sign with magnitude in `omega_range`.
    pub fn omega(&mut self) -> f64 {
        let (lo, hi) = self.omega_range;
        let mag = self.uniform(lo.max(MIN_ABS_OMEGA), hi);
        if self.rng.gen_bool(0.5) {
            mag
        } else {
            -mag
        }
    }

    /// Ground point in the box around `(s, 0)`, away from the under-track point.
    pub fn ground_point(&mut self, geom: &AcquisitionGeometry, s: f64) -> GroundPoint {
        let half = self.reach * geom.alpha().max(geom.h());
        loop {
            let x = GroundPoint::new(s + self.uniform(-half, half), self.uniform(-half, half));
            if x.distance(GroundPoint::new(s, 0.0)) >= TRACK_EXCLUSION * geom.alpha() {
                return x;
            }
        }
    }

    /// Random geometry with `alpha, h` drawn from `[lo, hi]` and the default windows.
    pub fn geometry(&mut self, lo: f64, hi: f64) -> AcquisitionGeometry {
        let alpha = self.uniform(lo, hi);
        let h = self.uniform(lo, hi);
        AcquisitionGeometry::with_offsets(alpha, h).expect("positive offsets")
    }
}
