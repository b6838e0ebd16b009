//! Simulate a few scatterers, backproject and render a graymap.
//!
//! cargo run --release --example backprojection -- [out.pgm]

use bsar::geometry::{AcquisitionGeometry, Interval};
use bsar::io;
use bsar::operators::{adjoint, forward, Pulse, Scene, SceneGrid, SinogramGrid};

fn main() -> bsar::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "backprojection.pgm".into());
    let geom = AcquisitionGeometry::default();
    let grid = SceneGrid::covering(Interval::new(-1.5, 1.5), Interval::new(-1.5, 1.5), 96, 96)?;
    let data = SinogramGrid::spanning(&geom, 128, 256)?;
    let pulse = Pulse::ricker(20.0)?;

    let mut v = vec![0.0; grid.len()];
    for (x1, x2, a) in [(0.5, 1.0, 1.0), (-0.6, 0.6, 0.7), (0.0, -1.1, 0.5)] {
        let (i1, i2) = grid
            .nearest_cell(bsar::geometry::GroundPoint::new(x1, x2))
            .expect("inside grid");
        v[grid.index(i1, i2)] = a / grid.cell_area();
    }
    let scene = Scene::new(grid, v)?;
    let d = forward(&geom, &scene, &pulse, &data)?;
    let image = adjoint(&geom, &d, &pulse, &grid)?;
    io::write_scene_pgm(std::path::Path::new(&out), &image)?;
    println!("wrote {out}; every scatterer also shows up mirrored across x2 = 0");
    Ok(())
}
