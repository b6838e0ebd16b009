//! Ranges, prolate spheroidal coordinates and iso-range ellipses.

use bsar::geometry::{
    bistatic_range, ground_to_prolate, iso_range_ellipse, prolate_to_ground, range_gradient,
    receiver_pos, transmitter_pos, AcquisitionGeometry, GroundPoint,
};

fn main() -> bsar::Result<()> {
    let geom = AcquisitionGeometry::with_offsets(1.0, 1.0)?;
    let s = 0.0;
    println!(
        "transmitter {:?}, receiver {:?}",
        transmitter_pos(&geom, s),
        receiver_pos(&geom, s)
    );

    let x = GroundPoint::new(3.0, 4.0);
    let g = range_gradient(&geom, s, x);
    println!("R(s, x) = {:.9}", bistatic_range(&geom, s, x));
    println!(
        "grad R = (ds {:.9}, dx1 {:.9}, dx2 {:.9})",
        g.ds, g.dx1, g.dx2
    );

    let p = ground_to_prolate(&geom, s, x)?;
    println!(
        "prolate: cosh(rho) = {:.9}, cos(theta) = {:.9}, phi = {:.9}",
        p.cosh_rho(),
        p.cos_theta(),
        p.phi_angle
    );
    let back = prolate_to_ground(&geom, s, &p);
    println!(
        "back to ground: ({:.3e}, {:.3e}, {:.3e}) off",
        back[0] - x.x1,
        back[1] - x.x2,
        back[2]
    );

    let t = 4.0;
    match iso_range_ellipse(&geom, s, t) {
        Some(e) => {
            println!(
                "iso-range ellipse at t = {t}: semi-axes {:.6} x {:.6}",
                e.semi_axis_x1, e.semi_axis_x2
            );
            for k in 0..4 {
                let q = e.point(k as f64 * std::f64::consts::FRAC_PI_4);
                println!(
                    "  ({:+.6}, {:+.6}) R = {:.12}",
                    q.x1,
                    q.x2,
                    bistatic_range(&geom, s, q)
                );
            }
        }
        None => println!("no ground echo at t = {t}"),
    }
    println!("earliest echo t = {:.9}", geom.mute_center());
    Ok(())
}
