use crate::error::{Error, Result};
use crate::geometry::{GroundPoint, Interval};

/// Uniform, strictly increasing sample axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    start: f64,
    step: f64,
    len: usize,
}

impl Axis {
    pub fn new(start: f64, step: f64, len: usize) -> Result<Self> {
        if !start.is_finite() || !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "axis needs finite start and positive step, got start={start}, step={step}"
            )));
        }
        if len == 0 {
            return Err(Error::InvalidArgument("axis length must be >= 1".into()));
        }
        Ok(Self { start, step, len })
    }

    /// `len` samples from `interval.start` to `interval.end` inclusive.
    pub fn spanning(interval: Interval, len: usize) -> Result<Self> {
        if len < 2 {
            return Err(Error::InvalidArgument(
                "spanning axis needs >= 2 samples".into(),
            ));
        }
        Self::new(interval.start, interval.len() / (len - 1) as f64, len)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn last(&self) -> f64 {
        self.value(self.len - 1)
    }

    /// Indices whose sample lies in `[lo, hi]`, clipped to the axis.
    pub fn index_range(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let first = ((lo - self.start) / self.step).ceil().max(0.0);
        let last = ((hi - self.start) / self.step).floor();
        if last < 0.0 || first >= self.len as f64 || first > last {
            return 0..0;
        }
        first as usize..(last as usize + 1).min(self.len)
    }
}

/// Cell-centred scene grid. Cell `(i1, i2)` has centre
/// `origin + ((i1 + 1/2) dx1, (i2 + 1/2) dx2)`; storage is row-major in `i1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneGrid {
    origin: (f64, f64),
    spacing: (f64, f64),
    n1: usize,
    n2: usize,
}

impl SceneGrid {
    pub fn new(origin: (f64, f64), spacing: (f64, f64), n1: usize, n2: usize) -> Result<Self> {
        if !(origin.0.is_finite() && origin.1.is_finite()) {
            return Err(Error::InvalidArgument("scene origin must be finite".into()));
        }
        if !(spacing.0.is_finite() && spacing.0 > 0.0 && spacing.1.is_finite() && spacing.1 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scene spacing must be positive, got {spacing:?}"
            )));
        }
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidArgument(
                "scene dimensions must be >= 1".into(),
            ));
        }
        Ok(Self {
            origin,
            spacing,
            n1,
            n2,
        })
    }

    /// Tiles the rectangle `x1 x x2` with `n1 x n2` cells.
    pub fn covering(x1: Interval, x2: Interval, n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidArgument(
                "scene dimensions must be >= 1".into(),
            ));
        }
        Self::new(
            (x1.start, x2.start),
            (x1.len() / n1 as f64, x2.len() / n2 as f64),
            n1,
            n2,
        )
    }

    pub fn origin(&self) -> (f64, f64) {
        self.origin
    }

    pub fn spacing(&self) -> (f64, f64) {
        self.spacing
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_area(&self) -> f64 {
        self.spacing.0 * self.spacing.1
    }

    pub fn index(&self, i1: usize, i2: usize) -> usize {
        i1 * self.n2 + i2
    }

    pub fn cell_center(&self, i1: usize, i2: usize) -> GroundPoint {
        GroundPoint::new(
            self.origin.0 + (i1 as f64 + 0.5) * self.spacing.0,
            self.origin.1 + (i2 as f64 + 0.5) * self.spacing.1,
        )
    }

    pub fn center_of(&self, k: usize) -> GroundPoint {
        self.cell_center(k / self.n2, k % self.n2)
    }

    pub fn extent_x1(&self) -> Interval {
        Interval::new(
            self.origin.0,
            self.origin.0 + self.n1 as f64 * self.spacing.0,
        )
    }

    pub fn extent_x2(&self) -> Interval {
        Interval::new(
            self.origin.1,
            self.origin.1 + self.n2 as f64 * self.spacing.1,
        )
    }

    /// Cell containing `x`, if any.
    pub fn nearest_cell(&self, x: GroundPoint) -> Option<(usize, usize)> {
        let u1 = ((x.x1 - self.origin.0) / self.spacing.0).floor();
        let u2 = ((x.x2 - self.origin.1) / self.spacing.1).floor();
        if u1 < 0.0 || u2 < 0.0 || u1 >= self.n1 as f64 || u2 >= self.n2 as f64 {
            return None;
        }
        Some((u1 as usize, u2 as usize))
    }

    /// Index of the cell mirrored about `x2 = 0`, when the grid is symmetric.
    pub fn mirror_index(&self, k: usize) -> Option<usize> {
        let (i1, i2) = (k / self.n2, k % self.n2);
        let target = self.cell_center(i1, i2).mirrored();
        let (j1, j2) = self.nearest_cell(target)?;
        let c = self.cell_center(j1, j2);
        ((c.x2 - target.x2).abs() <= 1e-9 * self.spacing.1 && j1 == i1).then(|| self.index(j1, j2))
    }
}

/// Regular `(s, t)` sampling grid for data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinogramGrid {
    pub s: Axis,
    pub t: Axis,
}

impl SinogramGrid {
    pub fn new(s: Axis, t: Axis) -> Self {
        Self { s, t }
    }

    /// Grid spanning both acquisition windows, endpoints included.
    pub fn spanning(
        geom: &crate::geometry::AcquisitionGeometry,
        ns: usize,
        nt: usize,
    ) -> Result<Self> {
        Ok(Self {
            s: Axis::spanning(geom.s_window(), ns)?,
            t: Axis::spanning(geom.t_window(), nt)?,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.s.len(), self.t.len())
    }

    pub fn len(&self) -> usize {
        self.s.len() * self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_area(&self) -> f64 {
        self.s.step() * self.t.step()
    }

    pub fn index(&self, is: usize, it: usize) -> usize {
        is * self.t.len() + it
    }
}

/// Scene grid together with the data grid it is imaged through.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImagingGrids {
    pub scene: SceneGrid,
    pub data: SinogramGrid,
}

fn check_finite(values: &[f64], what: &str) -> Result<()> {
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "{what} value {i} is not finite"
        )));
    }
    Ok(())
}

/// Reflectivity samples `V` on a [`SceneGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    grid: SceneGrid,
    values: Vec<f64>,
}

impl Scene {
    pub fn new(grid: SceneGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} scene values", grid.len()),
                found: values.len().to_string(),
            });
        }
        check_finite(&values, "scene")?;
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: SceneGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    /// Unit point scatterer: `1 / (dx1 dx2)` in the cell containing `x`.
    pub fn point_scatterer(grid: SceneGrid, x: GroundPoint) -> Result<Self> {
        let (i1, i2) = grid.nearest_cell(x).ok_or_else(|| {
            Error::InvalidArgument(format!("point ({}, {}) is outside the scene", x.x1, x.x2))
        })?;
        let mut scene = Self::zeros(grid);
        scene.values[grid.index(i1, i2)] = 1.0 / grid.cell_area();
        Ok(scene)
    }

    pub fn grid(&self) -> &SceneGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i1: usize, i2: usize) -> f64 {
        self.values[self.grid.index(i1, i2)]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Reflection `V(x1, x2) -> V(x1, -x2)`; the grid must be symmetric in `x2`.
    pub fn mirrored(&self) -> Result<Self> {
        let ext = self.grid.extent_x2();
        if (ext.start + ext.end).abs() > 1e-12 * ext.len() {
            return Err(Error::InvalidArgument(
                "scene grid is not symmetric about x2 = 0".into(),
            ));
        }
        let (n1, n2) = self.grid.dims();
        let mut out = vec![0.0; self.values.len()];
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                out[self.grid.index(i1, n2 - 1 - i2)] = self.get(i1, i2);
            }
        }
        Ok(Self {
            grid: self.grid,
            values: out,
        })
    }
}

/// Data samples `d(s, t)` on a [`SinogramGrid`], row-major in `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sinogram {
    grid: SinogramGrid,
    values: Vec<f64>,
}

impl Sinogram {
    pub fn new(grid: SinogramGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} sinogram values", grid.len()),
                found: values.len().to_string(),
            });
        }
        check_finite(&values, "sinogram")?;
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: SinogramGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn grid(&self) -> &SinogramGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, is: usize, it: usize) -> f64 {
        self.values[self.grid.index(is, it)]
    }

    pub fn row(&self, is: usize) -> &[f64] {
        let nt = self.grid.t.len();
        &self.values[is * nt..(is + 1) * nt]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}
