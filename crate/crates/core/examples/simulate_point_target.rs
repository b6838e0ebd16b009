//! Forward-model a point scatterer and save the sinogram.
//!
//! cargo run --release --example simulate_point_target -- [out_dir]

use std::path::PathBuf;

use bsar::geometry::{AcquisitionGeometry, GroundPoint, Interval};
use bsar::io;
use bsar::operators::{forward, Pulse, Scene, SceneGrid, SinogramGrid};

fn main() -> bsar::Result<()> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "target/example-out".into()),
    );
    std::fs::create_dir_all(&out)?;

    let geom = AcquisitionGeometry::default();
    let grid = SceneGrid::covering(Interval::new(-1.5, 1.5), Interval::new(-1.5, 1.5), 64, 64)?;
    let data = SinogramGrid::spanning(&geom, 64, 256)?;
    let pulse = Pulse::ricker(20.0)?;

    let scene = Scene::point_scatterer(grid, GroundPoint::new(0.5, 1.0))?;
    let d = forward(&geom, &scene, &pulse, &data)?;

    let peak = d
        .values()
        .iter()
        .cloned()
        .fold(0.0f64, |a, v| a.max(v.abs()));
    let nonzero = d.values().iter().filter(|v| **v != 0.0).count();
    println!(
        "{} of {} samples nonzero, peak |d| = {peak:.6e}",
        nonzero,
        d.values().len()
    );

    io::write_scene(&out.join("point_scene.bin"), &scene)?;
    io::write_sinogram(&out.join("point_data.bin"), &d)?;
    std::fs::write(out.join("point_data.csv"), io::sinogram_csv(&d))?;
    println!("wrote scene, sinogram and CSV under {}", out.display());
    Ok(())
}
