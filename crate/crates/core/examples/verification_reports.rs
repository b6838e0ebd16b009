//! Run the verification suites and print their key=value reports.

use bsar::geometry::AcquisitionGeometry;
use bsar::phase::check_phase_gradients;
use bsar::report::Tolerances;
use bsar::sampling::PointSampler;
use bsar::verify::{identities_suite, microlocal_suite};

fn main() -> bsar::Result<()> {
    let tol = Tolerances::default();
    let geom = AcquisitionGeometry::default();

    print!("{}", microlocal_suite(&geom, 1000, 1, &tol)?.render());

    let mut sampler = PointSampler::new(99);
    let mut geoms = vec![geom];
    geoms.extend((0..3).map(|_| sampler.geometry(0.2, 5.0)));
    print!("{}", identities_suite(&geoms, 2000, 1, &tol)?.render());

    println!(
        "phase gradient worst relative error {:.3e}",
        check_phase_gradients(&geom, 1000, 1)?
    );
    Ok(())
}
