//! Dot-product test of the discrete forward/adjoint pair.

use bsar::geometry::{AcquisitionGeometry, Interval};
use bsar::operators::{dot_product_test, ImagingGrids, Pulse, SceneGrid, SinogramGrid};

fn main() -> bsar::Result<()> {
    let geom = AcquisitionGeometry::default();
    let grids = ImagingGrids {
        scene: SceneGrid::covering(Interval::new(-1.5, 1.5), Interval::new(-1.5, 1.5), 64, 64)?,
        data: SinogramGrid::spanning(&geom, 64, 128)?,
    };
    let pulse = Pulse::ricker(10.0)?;
    for seed in 0..5 {
        let r = dot_product_test(&geom, &grids, &pulse, seed)?;
        println!(
            "seed {seed}: <FV,d> = {:+.15e}  <V,F*d> = {:+.15e}  rel {:.2e}",
            r.data_side, r.scene_side, r.relative_discrepancy
        );
    }
    Ok(())
}
