//! Point scatterer through the normal operator: a true peak and its mirror.
//!
//! cargo run --release --example mirror_artifact -- [x1 x2]

use bsar::geometry::{AcquisitionGeometry, GroundPoint, Interval};
use bsar::operators::{artifact_demo, ImagingGrids, Pulse, SceneGrid, SinogramGrid};

fn main() -> bsar::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let target = match args.as_slice() {
        [x1, x2] => GroundPoint::new(*x1, *x2),
        _ => GroundPoint::new(0.5, 1.0),
    };
    let geom = AcquisitionGeometry::default();
    let grids = ImagingGrids {
        scene: SceneGrid::covering(Interval::new(-1.5, 1.5), Interval::new(-1.5, 1.5), 128, 128)?,
        data: SinogramGrid::spanning(&geom, 128, 256)?,
    };
    let pulse = Pulse::ricker(22.0)?;
    let r = artifact_demo(&geom, target, &pulse, &grids)?;
    println!("target      ({:.4}, {:.4})", target.x1, target.x2);
    println!(
        "true peak   ({:.6}, {:.6})  value {:.6e}",
        r.true_peak.location.x1, r.true_peak.location.x2, r.true_peak.value
    );
    println!(
        "mirror peak ({:.6}, {:.6})  value {:.6e}",
        r.mirror_peak.location.x1, r.mirror_peak.location.x2, r.mirror_peak.value
    );
    println!("peak ratio  {:.15}", r.peak_ratio);
    Ok(())
}
