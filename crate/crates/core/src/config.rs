//! `key = value` run configuration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{AcquisitionGeometry, Interval};
use crate::operators::{ImagingGrids, Pulse, SceneGrid, SinogramGrid};
use crate::report::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseSpecKind {
    Ricker,
    RaisedCosineBand,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub kind: PulseSpecKind,
    pub center_freq: f64,
    pub bandwidth: f64,
}

impl PulseSpec {
    pub fn build(&self) -> Result<Pulse> {
        match self.kind {
            PulseSpecKind::Ricker => Pulse::ricker(self.center_freq),
            PulseSpecKind::RaisedCosineBand => {
                Pulse::raised_cosine_band(self.center_freq, self.bandwidth)
            }
        }
    }
}

/// Every setting a run can depend on. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub h: f64,
    pub c0: f64,
    pub s_window: (f64, f64),
    pub t_window: (f64, f64),
    pub mute_halfwidth: f64,
    pub taper_fraction: f64,
    pub scene_dims: (usize, usize),
    pub scene_x1: (f64, f64),
    pub scene_x2: (f64, f64),
    pub data_dims: (usize, usize),
    pub pulse: PulseSpec,
    pub seed: u64,
    pub samples: usize,
    pub output_dir: PathBuf,
    pub identity_random_geometries: usize,
    pub identity_geometry_range: (f64, f64),
    pub selftest_seeds: usize,
    pub selftest_gradient_samples: usize,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        let g = AcquisitionGeometry::default();
        Self {
            alpha: g.alpha(),
            h: g.h(),
            c0: g.c0(),
            s_window: (g.s_window().start, g.s_window().end),
            t_window: (g.t_window().start, g.t_window().end),
            mute_halfwidth: g.mute_halfwidth(),
            taper_fraction: g.taper_fraction(),
            scene_dims: (128, 128),
            scene_x1: (-1.5, 1.5),
            scene_x2: (-1.5, 1.5),
            data_dims: (128, 256),
            pulse: PulseSpec {
                kind: PulseSpecKind::Ricker,
                center_freq: 22.0,
                bandwidth: 0.0,
            },
            seed: 0,
            samples: 1000,
            output_dir: PathBuf::from("."),
            identity_random_geometries: 0,
            identity_geometry_range: (0.2, 5.0),
            selftest_seeds: 5,
            selftest_gradient_samples: 1000,
            tolerances: Tolerances::default(),
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    let x: f64 = v
        .parse()
        .map_err(|_| Error::Config(format!("{key}: expected a number, got {v:?}")))?;
    if !x.is_finite() {
        return Err(Error::Config(format!("{key}: value must be finite")));
    }
    Ok(x)
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| Error::Config(format!("{key}: expected a non-negative integer, got {v:?}")))
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let f = |v: &str| parse_f64(key, v);
        let u = |v: &str| parse_usize(key, v);
        match key {
            "alpha" => self.alpha = f(value)?,
            "h" => self.h = f(value)?,
            "c0" => self.c0 = f(value)?,
            "s_min" => self.s_window.0 = f(value)?,
            "s_max" => self.s_window.1 = f(value)?,
            "t_min" => self.t_window.0 = f(value)?,
            "t_max" => self.t_window.1 = f(value)?,
            "mute_halfwidth" => self.mute_halfwidth = f(value)?,
            "taper_fraction" => self.taper_fraction = f(value)?,
            "scene.n1" => self.scene_dims.0 = u(value)?,
            "scene.n2" => self.scene_dims.1 = u(value)?,
            "scene.x1_min" => self.scene_x1.0 = f(value)?,
            "scene.x1_max" => self.scene_x1.1 = f(value)?,
            "scene.x2_min" => self.scene_x2.0 = f(value)?,
            "scene.x2_max" => self.scene_x2.1 = f(value)?,
            "data.ns" => self.data_dims.0 = u(value)?,
            "data.nt" => self.data_dims.1 = u(value)?,
            "pulse.kind" => {
                self.pulse.kind = match value {
                    "ricker" => PulseSpecKind::Ricker,
                    "raised_cosine_band" => PulseSpecKind::RaisedCosineBand,
                    other => {
                        return Err(Error::Config(format!(
                            "pulse.kind: unknown pulse {other:?}"
                        )))
                    }
                }
            }
            "pulse.center_freq" => self.pulse.center_freq = f(value)?,
            "pulse.bandwidth" => self.pulse.bandwidth = f(value)?,
            "seed" => {
                self.seed = value.parse().map_err(|_| {
                    Error::Config(format!("seed: expected an unsigned integer, got {value:?}"))
                })?
            }
            "samples" => self.samples = u(value)?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            "identities.random_geometries" => self.identity_random_geometries = u(value)?,
            "identities.geometry_min" => self.identity_geometry_range.0 = f(value)?,
            "identities.geometry_max" => self.identity_geometry_range.1 = f(value)?,
            "selftest.seeds" => self.selftest_seeds = u(value)?,
            "selftest.gradient_samples" => self.selftest_gradient_samples = u(value)?,
            _ => {
                let slot = key
                    .strip_prefix("tol.")
                    .and_then(|k| self.tolerances.get_mut(k))
                    .ok_or_else(|| Error::Config(format!("unknown key {key:?}")))?;
                let t = parse_f64(key, value)?;
                if t < 0.0 {
                    return Err(Error::Config(format!("{key}: tolerance must be >= 0")));
                }
                *slot = t;
            }
        }
        Ok(())
    }

    /// Applies a `key=value` override as given on the command line.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override {assignment:?} is not key=value")))?;
        self.set(k.trim(), v.trim())
    }

    /// Parses config text on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            cfg.set(k.trim(), v.trim())
                .map_err(|e| Error::Config(format!("line {}: {}", n + 1, strip_prefix(&e))))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical `key = value` rendering; parsing it reproduces `self`.
    pub fn render(&self) -> String {
        let mut m: BTreeMap<String, String> = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        put("alpha", format!("{:e}", self.alpha));
        put("h", format!("{:e}", self.h));
        put("c0", format!("{:e}", self.c0));
        put("s_min", format!("{:e}", self.s_window.0));
        put("s_max", format!("{:e}", self.s_window.1));
        put("t_min", format!("{:e}", self.t_window.0));
        put("t_max", format!("{:e}", self.t_window.1));
        put("mute_halfwidth", format!("{:e}", self.mute_halfwidth));
        put("taper_fraction", format!("{:e}", self.taper_fraction));
        put("scene.n1", self.scene_dims.0.to_string());
        put("scene.n2", self.scene_dims.1.to_string());
        put("scene.x1_min", format!("{:e}", self.scene_x1.0));
        put("scene.x1_max", format!("{:e}", self.scene_x1.1));
        put("scene.x2_min", format!("{:e}", self.scene_x2.0));
        put("scene.x2_max", format!("{:e}", self.scene_x2.1));
        put("data.ns", self.data_dims.0.to_string());
        put("data.nt", self.data_dims.1.to_string());
        put(
            "pulse.kind",
            match self.pulse.kind {
                PulseSpecKind::Ricker => "ricker",
                PulseSpecKind::RaisedCosineBand => "raised_cosine_band",
            }
            .to_string(),
        );
        put("pulse.center_freq", format!("{:e}", self.pulse.center_freq));
        put("pulse.bandwidth", format!("{:e}", self.pulse.bandwidth));
        put("seed", self.seed.to_string());
        put("samples", self.samples.to_string());
        put("output_dir", self.output_dir.display().to_string());
        put(
            "identities.random_geometries",
            self.identity_random_geometries.to_string(),
        );
        put(
            "identities.geometry_min",
            format!("{:e}", self.identity_geometry_range.0),
        );
        put(
            "identities.geometry_max",
            format!("{:e}", self.identity_geometry_range.1),
        );
        put("selftest.seeds", self.selftest_seeds.to_string());
        put(
            "selftest.gradient_samples",
            self.selftest_gradient_samples.to_string(),
        );
        for (k, v) in self.tolerances.entries() {
            put(&format!("tol.{k}"), format!("{v:e}"));
        }
        m.into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// SHA-256 of [`render`](Self::render), hex encoded.
    pub fn hash(&self) -> String {
        Sha256::digest(self.render().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn geometry(&self) -> Result<AcquisitionGeometry> {
        AcquisitionGeometry::new(
            self.alpha,
            self.h,
            self.c0,
            Interval::new(self.s_window.0, self.s_window.1),
            Interval::new(self.t_window.0, self.t_window.1),
            self.mute_halfwidth,
            self.taper_fraction,
        )
    }

    pub fn scene_grid(&self) -> Result<SceneGrid> {
        if self.scene_x1.0 >= self.scene_x1.1 || self.scene_x2.0 >= self.scene_x2.1 {
            return Err(Error::Config("scene extent must be increasing".into()));
        }
        SceneGrid::covering(
            Interval::new(self.scene_x1.0, self.scene_x1.1),
            Interval::new(self.scene_x2.0, self.scene_x2.1),
            self.scene_dims.0,
            self.scene_dims.1,
        )
    }

    pub fn data_grid(&self) -> Result<SinogramGrid> {
        SinogramGrid::spanning(&self.geometry()?, self.data_dims.0, self.data_dims.1)
    }

    pub fn grids(&self) -> Result<ImagingGrids> {
        Ok(ImagingGrids {
            scene: self.scene_grid()?,
            data: self.data_grid()?,
        })
    }

    /// Checks every derived object so that a bad value fails before any work.
    pub fn validate(&self) -> Result<()> {
        let grids = self.grids()?;
        self.pulse.build()?.check_sampling(grids.data.t.step())?;
        let (lo, hi) = self.identity_geometry_range;
        if !(lo > 0.0 && lo <= hi) {
            return Err(Error::Config(
                "identities geometry range must satisfy 0 < min <= max".into(),
            ));
        }
        Ok(())
    }
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Config(m) => m.clone(),
        other => other.to_string(),
    }
}
