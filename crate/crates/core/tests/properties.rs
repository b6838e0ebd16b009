use bsar::geometry::{
    bistatic_range, ground_to_prolate, prolate_to_ground, AcquisitionGeometry, GroundPoint,
    Interval,
};
use bsar::microlocal::positivity_term;
use bsar::operators::{dot_product_test, ImagingGrids, Pulse, SceneGrid, SinogramGrid};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn adjoint_is_exact(
        seed in any::<u64>(),
        n1 in 3usize..12,
        n2 in 3usize..12,
        ns in 4usize..16,
        nt in 80usize..160,
        x0 in -2.0f64..0.0,
        width in 0.5f64..3.0,
    ) {
        let geom = AcquisitionGeometry::default();
        let grids = ImagingGrids {
            scene: SceneGrid::covering(Interval::new(x0, x0 + width), Interval::new(-width / 2.0, width), n1, n2).unwrap(),
            data: SinogramGrid::spanning(&geom, ns, nt).unwrap(),
        };
        let r = dot_product_test(&geom, &grids, &Pulse::ricker(6.0).unwrap(), seed).unwrap();
        prop_assert!(r.relative_discrepancy <= 1e-12, "{:?}", r);
    }
}

proptest! {
    #[test]
    fn prolate_roundtrip(
        alpha in 0.05f64..10.0,
        h in 0.05f64..10.0,
        s in -5.0f64..5.0,
        dx in -20.0f64..20.0,
        x2 in -20.0f64..20.0,
    ) {
        prop_assume!(dx.abs() + x2.abs() > 1e-3);
        let geom = AcquisitionGeometry::with_offsets(alpha, h).unwrap();
        let x = GroundPoint::new(s + dx, x2);
        let p = ground_to_prolate(&geom, s, x).unwrap();
        let back = prolate_to_ground(&geom, s, &p);
        let scale = 1.0 + dx.abs().max(x2.abs());
        prop_assert!((back[0] - x.x1).abs() <= 1e-9 * scale);
        prop_assert!((back[1] - x.x2).abs() <= 1e-9 * scale);
        prop_assert!(back[2].abs() <= 1e-9 * scale);
        let r = bistatic_range(&geom, s, x);
        prop_assert!((2.0 * alpha * p.cosh_rho() - r).abs() <= 1e-12 * r);
    }

    #[test]
    fn positivity_holds(
        alpha in 1e-6f64..10.0,
        h in 1e-6f64..10.0,
        dx in -1e3f64..1e3,
        x2 in -1e3f64..1e3,
    ) {
        let geom = AcquisitionGeometry::with_offsets(alpha, h).unwrap();
        prop_assert!(positivity_term(&geom, 0.0, GroundPoint::new(dx, x2)) > 0.0);
    }

    #[test]
    fn range_exceeds_minimum(alpha in 0.1f64..5.0, h in 0.1f64..5.0, dx in -10.0f64..10.0, x2 in -10.0f64..10.0) {
        let geom = AcquisitionGeometry::with_offsets(alpha, h).unwrap();
        prop_assert!(bistatic_range(&geom, 0.0, GroundPoint::new(dx, x2)) >= geom.min_range() * (1.0 - 1e-15));
    }
}
