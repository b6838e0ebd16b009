//! The six generator identities at one pair of points and over a batch.

use bsar::geometry::{AcquisitionGeometry, GroundPoint};
use bsar::identities::{check_identities_batch, check_identity, Generator, PairPoint};

fn main() -> bsar::Result<()> {
    let geom = AcquisitionGeometry::default();
    let p = PairPoint::new(
        &geom,
        GroundPoint::new(0.9, 1.4),
        GroundPoint::new(-0.3, 0.7),
        0.1,
        3.0,
    )?;
    for which in Generator::ALL {
        let r = check_identity(&geom, which, &p)?;
        println!(
            "identity {}: lhs {:+.12e} rhs {:+.12e} rel {:.2e}",
            r.identity_index, r.lhs, r.rhs, r.rel_residual
        );
    }

    let batch = check_identities_batch(&geom, 10_000, 42)?;
    for (i, st) in batch.per_identity.iter().enumerate() {
        println!(
            "batch identity {}: worst rel residual {:.3e}",
            i + 1,
            st.max_rel_residual
        );
    }
    println!("handy identity worst {:.3e}", batch.max_handy_residual);
    Ok(())
}
