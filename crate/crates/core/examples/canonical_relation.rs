//! Canonical relation, projection Jacobians and their singularities.

use bsar::geometry::AcquisitionGeometry;
use bsar::microlocal::{
    classify_singularity, det_dpi_left, dpi_finite_diff, dpi_left, dpi_right, lambda_point,
    positivity_term, ChartPoint, Projection,
};

fn main() -> bsar::Result<()> {
    let geom = AcquisitionGeometry::default();

    let c = ChartPoint::new(0.8, 1.3, 0.2, 5.0)?;
    let lp = lambda_point(&geom, &c);
    println!("data side  {:?}", lp.left);
    println!("scene side {:?}", lp.right);
    println!("det closed form  {:+.12e}", det_dpi_left(&geom, &c));
    println!(
        "det dpi_L        {:+.12e}",
        dpi_left(&geom, &c).determinant()
    );
    println!(
        "det dpi_R        {:+.12e}",
        dpi_right(&geom, &c).determinant()
    );
    println!(
        "det finite diff  {:+.12e}",
        dpi_finite_diff(&geom, &c, Projection::Left).determinant()
    );
    println!(
        "positivity term  {:.12}",
        positivity_term(&geom, c.s, c.ground())
    );

    let on_sigma = ChartPoint::new(0.3, 0.0, 0.0, 5.0)?;
    for which in [Projection::Left, Projection::Right] {
        let r = classify_singularity(&geom, &on_sigma, which)?;
        println!(
            "{which:?} on x2 = 0: {:?}, kernel {:?}, d det/d x2 = {:.6e}",
            r.verdict, r.kernel_direction, r.d_det_along_x2
        );
    }
    Ok(())
}
