use std::f64::consts::PI;

use crate::error::{Error, Result};

/// The Ricker pulse is cut off at `|tau| = RICKER_CUTOFF / a` with `a = omega_c / 2`,
/// where its magnitude is below `1e-9`.
pub const RICKER_CUTOFF: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseKind {
    /// Second derivative of a Gaussian (up to sign and scale).
    Ricker,
    /// Carrier at the centre frequency under a Hann envelope.
    RaisedCosineBand,
}

/// Time-domain transmitted pulse. Frequencies are angular.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    kind: PulseKind,
    center_freq: f64,
    bandwidth: f64,
}

impl Pulse {
    /// Ricker pulse peaking at angular frequency `center_freq`.
    pub fn ricker(center_freq: f64) -> Result<Self> {
        if !(center_freq.is_finite() && center_freq > 0.0) {
            return Err(Error::InvalidArgument(
                "pulse centre frequency must be > 0".into(),
            ));
        }
        Ok(Self {
            kind: PulseKind::Ricker,
            center_freq,
            bandwidth: center_freq,
        })
    }

    /// Carrier `cos(omega_c tau)` under a Hann envelope whose main spectral
    /// lobe has half-width `bandwidth`.
    pub fn raised_cosine_band(center_freq: f64, bandwidth: f64) -> Result<Self> {
        if !(center_freq.is_finite() && center_freq > 0.0) {
            return Err(Error::InvalidArgument(
                "pulse centre frequency must be > 0".into(),
            ));
        }
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::InvalidArgument("pulse bandwidth must be > 0".into()));
        }
        Ok(Self {
            kind: PulseKind::RaisedCosineBand,
            center_freq,
            bandwidth,
        })
    }

    pub fn kind(&self) -> PulseKind {
        self.kind
    }

    pub fn center_freq(&self) -> f64 {
        self.center_freq
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Half-width of the (compact) time support.
    pub fn support_halfwidth(&self) -> f64 {
        match self.kind {
            PulseKind::Ricker => RICKER_CUTOFF / (self.center_freq / 2.0),
            PulseKind::RaisedCosineBand => 2.0 * PI / self.bandwidth,
        }
    }

    /// Highest angular frequency with non-negligible content.
    pub fn max_frequency(&self) -> f64 {
        match self.kind {
            PulseKind::Ricker => 3.0 * self.center_freq,
            PulseKind::RaisedCosineBand => self.center_freq + self.bandwidth,
        }
    }

    pub fn eval(&self, tau: f64) -> f64 {
        let support = self.support_halfwidth();
        if tau.abs() > support {
            return 0.0;
        }
        match self.kind {
            PulseKind::Ricker => {
                let a = self.center_freq / 2.0;
                let arg = (a * tau) * (a * tau);
                (1.0 - 2.0 * arg) * (-arg).exp()
            }
            PulseKind::RaisedCosineBand => {
                0.5 * (1.0 + (PI * tau / support).cos()) * (self.center_freq * tau).cos()
            }
        }
    }

    /// Fails unless the fast-time step samples the pulse at twice the
    /// Nyquist rate.
    pub fn check_sampling(&self, dt: f64) -> Result<()> {
        let limit = PI / dt / 2.0;
        if self.max_frequency() > limit {
            return Err(Error::Nyquist {
                max_freq: self.max_frequency(),
                limit,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ricker_shape() {
        let p = Pulse::ricker(10.0).unwrap();
        assert_eq!(p.eval(0.0), 1.0);
        // zero crossings at a tau = 1 / sqrt(2)
        let zero = 1.0 / (2f64.sqrt() * 5.0);
        assert!(p.eval(zero).abs() < 1e-15);
        assert_eq!(p.eval(0.3), p.eval(-0.3));
        let edge = p.support_halfwidth();
        assert!(p.eval(edge * (1.0 - 1e-12)).abs() < 1e-9);
        assert_eq!(p.eval(edge * 1.000001), 0.0);
    }

    #[test]
    fn raised_cosine_is_compact() {
        let p = Pulse::raised_cosine_band(20.0, 5.0).unwrap();
        assert_eq!(p.eval(0.0), 1.0);
        assert!(p.eval(p.support_halfwidth()).abs() < 1e-15);
        assert_eq!(p.eval(p.support_halfwidth() + 1e-9), 0.0);
    }

    #[test]
    fn sampling_check() {
        let p = Pulse::ricker(10.0).unwrap();
        // max frequency 30 rad/s needs pi / dt / 2 >= 30
        assert!(p.check_sampling(0.05).is_ok());
        assert!(matches!(p.check_sampling(0.06), Err(Error::Nyquist { .. })));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Pulse::ricker(0.0).is_err());
        assert!(Pulse::ricker(f64::NAN).is_err());
        assert!(Pulse::raised_cosine_band(1.0, 0.0).is_err());
    }
}
