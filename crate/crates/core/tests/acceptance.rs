//! Acceptance run: one PASS/FAIL line per check, non-zero exit on failure.

use std::time::{Duration, Instant};

use bsar::cli;
use bsar::geometry::{AcquisitionGeometry, GroundPoint, Interval};
use bsar::operators::{
    artifact_demo, dot_product_test, forward, ImagingGrids, Pulse, Scene, SceneGrid, SinogramGrid,
};
use bsar::phase::check_phase_gradients;
use bsar::report::{Tolerances, VerificationReport};
use bsar::sampling::PointSampler;
use bsar::verify::{identities_suite, microlocal_suite};
use rand::{Rng, SeedableRng};

/// Mirror-to-true peak amplitude ratio of the reference artifact run.
const PEAK_RATIO_BASELINE: f64 = 1.0;

struct Outcome {
    passed: bool,
    detail: String,
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

fn value(r: &VerificationReport, name: &str) -> f64 {
    r.check(name)
        .unwrap_or_else(|| panic!("missing check {name}"))
        .value
}

fn all_pass(r: &VerificationReport, names: &[&str]) -> bool {
    names
        .iter()
        .all(|n| r.check(n).map(|c| c.passed).unwrap_or(false))
}

fn identities() -> Outcome {
    let tol = Tolerances::default();
    let mut sampler = PointSampler::new(2024);
    let mut geoms = vec![AcquisitionGeometry::default()];
    geoms.extend((0..10).map(|_| sampler.geometry(0.2, 5.0)));
    let start = Instant::now();
    let r = single_threaded(|| identities_suite(&geoms, 10_000, 7, &tol)).expect("identity suite");
    let elapsed = start.elapsed();
    let worst = (1..=6)
        .filter(|&i| i != 3)
        .map(|i| value(&r, &format!("identity{i}.max_rel_residual")))
        .fold(0.0, f64::max);
    let id3 = value(&r, "identity3.max_rel_residual");
    let passed = worst <= 1e-8 && id3 <= 1e-14 && elapsed <= Duration::from_secs(10);
    Outcome {
        passed,
        detail: format!(
            "11 geometries x 1e4 points: worst identity 1,2,4,5,6 rel {worst:.2e} (<= 1e-8), identity 3 {id3:.2e} (<= 1e-14), {:.2} s single-threaded (<= 10 s)",
            elapsed.as_secs_f64()
        ),
    }
}

fn microlocal_report() -> VerificationReport {
    microlocal_suite(
        &AcquisitionGeometry::default(),
        1000,
        11,
        &Tolerances::default(),
    )
    .expect("microlocal suite")
}

fn determinant(r: &VerificationReport) -> Outcome {
    let fd = value(r, "determinant.closed_vs_finite_diff");
    let lr = value(r, "determinant.left_vs_right");
    Outcome {
        passed: fd <= 1e-6 && lr <= 1e-10,
        detail: format!("1e3 points |x2| >= 1e-2: closed vs finite-diff {fd:.2e} (<= 1e-6), det L vs R {lr:.2e} (<= 1e-10)"),
    }
}

fn fold_blowdown(r: &VerificationReport) -> Outcome {
    let names = [
        "fold.failures",
        "fold.misalignment",
        "fold.min_abs_det_slope",
        "blowdown.failures",
        "blowdown.max_x2_component",
        "regular.failures",
    ];
    Outcome {
        passed: all_pass(r, &names),
        detail: format!(
            "1e3 points on x2 = 0: fold failures {}, min alignment 1-{:.1e}, min |d det/dx2| {:.2e}; blowdown failures {}, max x2 component {:.1e}; 1e3 off-critical points: {} non-regular verdicts",
            value(r, "fold.failures"),
            value(r, "fold.misalignment"),
            value(r, "fold.min_abs_det_slope"),
            value(r, "blowdown.failures"),
            value(r, "blowdown.max_x2_component"),
            value(r, "regular.failures"),
        ),
    }
}

fn positivity(r: &VerificationReport) -> Outcome {
    let min = value(r, "positivity.min_value");
    let track = value(r, "positivity.track_value_error");
    Outcome {
        passed: min > 0.0 && track <= 1e-12,
        detail: format!("1e5 samples: min positivity term {min:.3e} (> 0), value at (s,0) rel error {track:.2e} (<= 1e-12)"),
    }
}

fn adjointness() -> Outcome {
    let geom = AcquisitionGeometry::default();
    let grids = ImagingGrids {
        scene: SceneGrid::covering(Interval::new(-1.5, 1.5), Interval::new(-1.5, 1.5), 64, 64)
            .unwrap(),
        data: SinogramGrid::spanning(&geom, 64, 128).unwrap(),
    };
    let pulse = Pulse::ricker(10.0).unwrap();
    let start = Instant::now();
    let worst = single_threaded(|| {
        (0..20u64)
            .map(|seed| {
                dot_product_test(&geom, &grids, &pulse, seed)
                    .unwrap()
                    .relative_discrepancy
            })
            .fold(0.0, f64::max)
    });
    let elapsed = start.elapsed();
    Outcome {
        passed: worst <= 1e-12 && elapsed <= Duration::from_secs(30),
        detail: format!(
            "64x64 scene, 64x128 data, 20 seeds: worst rel discrepancy {worst:.2e} (<= 1e-12), {:.2} s (<= 30 s)",
            elapsed.as_secs_f64()
        ),
    }
}

fn mirror_artifact() -> Outcome {
    let geom = AcquisitionGeometry::default();
    let grids = ImagingGrids {
        scene: SceneGrid::covering(Interval::new(-1.5, 1.5), Interval::new(-1.5, 1.5), 128, 128)
            .unwrap(),
        data: SinogramGrid::spanning(&geom, 128, 256).unwrap(),
    };
    let pulse = Pulse::ricker(22.0).unwrap();
    let target = GroundPoint::new(0.5, 1.0);
    let start = Instant::now();
    let result = single_threaded(|| artifact_demo(&geom, target, &pulse, &grids));
    let elapsed = start.elapsed();
    match result {
        Ok(r) => {
            let ratio_ok = (r.peak_ratio - PEAK_RATIO_BASELINE).abs() <= 1e-12;
            Outcome {
                passed: r.peaks_within_one_cell() && ratio_ok && elapsed <= Duration::from_secs(120),
                detail: format!(
                    "peaks at ({:.5}, {:+.5}) and ({:.5}, {:+.5}), cell {:.5}; ratio {:.15} (baseline {PEAK_RATIO_BASELINE}); {:.2} s single-threaded (<= 120 s)",
                    r.true_peak.location.x1,
                    r.true_peak.location.x2,
                    r.mirror_peak.location.x1,
                    r.mirror_peak.location.x2,
                    r.image.grid().spacing().0,
                    r.peak_ratio,
                    elapsed.as_secs_f64()
                ),
            }
        }
        Err(e) => Outcome {
            passed: false,
            detail: format!("artifact demo failed: {e}"),
        },
    }
}

fn phase_gradients() -> Outcome {
    let mut sampler = PointSampler::new(5);
    let mut geoms = vec![AcquisitionGeometry::default()];
    geoms.extend((0..4).map(|_| sampler.geometry(0.2, 5.0)));
    let worst = geoms
        .iter()
        .enumerate()
        .map(|(k, g)| check_phase_gradients(g, 1000, 100 + k as u64).unwrap())
        .fold(0.0, f64::max);
    Outcome {
        passed: worst <= 1e-6,
        detail: format!(
            "5 geometries x 1e3 points: worst normwise rel error {worst:.2e} (<= 1e-6)"
        ),
    }
}

fn mute_taper() -> Outcome {
    let geom = AcquisitionGeometry::default();
    let grid =
        SceneGrid::covering(Interval::new(-1.5, 1.5), Interval::new(-1.5, 1.5), 48, 48).unwrap();
    let data = SinogramGrid::spanning(&geom, 96, 512).unwrap();
    let pulse = Pulse::ricker(20.0).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    let v: Vec<f64> = (0..grid.len()).map(|_| rng.gen_range(0.5..1.5)).collect();
    let d = forward(&geom, &Scene::new(grid, v).unwrap(), &pulse, &data).unwrap();

    let (ns, nt) = data.dims();
    let mut notch = 0usize;
    let mut notch_nonzero = 0usize;
    let mut edge_nonzero = 0usize;
    let mut outside_nonzero = 0usize;
    for is in 0..ns {
        for it in 0..nt {
            let t = data.t.value(it);
            let val = d.get(is, it);
            if (t - geom.mute_center()).abs() <= geom.mute_halfwidth() {
                notch += 1;
                notch_nonzero += usize::from(val != 0.0);
            }
            if is == 0 || is == ns - 1 || it == 0 || it == nt - 1 {
                edge_nonzero += usize::from(val != 0.0);
            }
            if (t - geom.mute_center()).abs() > 2.0 * geom.mute_halfwidth() {
                outside_nonzero += usize::from(val != 0.0);
            }
        }
    }
    Outcome {
        passed: notch > 0 && notch_nonzero == 0 && edge_nonzero == 0 && outside_nonzero > 0,
        detail: format!(
            "{notch} notch samples with {notch_nonzero} nonzero, {edge_nonzero} nonzero on window boundaries, {outside_nonzero} nonzero beyond the ramp"
        ),
    }
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["bsar"];
    argv.extend_from_slice(args);
    let code = cli::run_with(argv, &mut out, &mut err);
    (code, out)
}

fn determinism() -> Outcome {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut files: Vec<Vec<(String, Vec<u8>)>> = Vec::new();
    for (run, dir) in dirs.iter().enumerate() {
        let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
        let cfg = p("run.cfg");
        std::fs::write(
            &cfg,
            "scene.n1 = 48\nscene.n2 = 48\ndata.ns = 64\ndata.nt = 256\nseed = 3\n",
        )
        .unwrap();
        let grid = SceneGrid::covering(Interval::new(-1.5, 1.5), Interval::new(-1.5, 1.5), 48, 48)
            .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let scene = Scene::new(
            grid,
            (0..grid.len()).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
        .unwrap();
        bsar::io::write_scene(std::path::Path::new(&p("scene.bin")), &scene).unwrap();

        // the second run uses a single thread to show results do not depend on scheduling
        let go = || {
            let mut codes = vec![
                run_cli(&[
                    "simulate",
                    "--config",
                    &cfg,
                    "--scene",
                    &p("scene.bin"),
                    "--out",
                    &p("data.bin"),
                ])
                .0,
                run_cli(&[
                    "reconstruct",
                    "--config",
                    &cfg,
                    "--data",
                    &p("data.bin"),
                    "--out",
                    &p("image.bin"),
                ])
                .0,
                run_cli(&[
                    "demo-artifact",
                    "--config",
                    &cfg,
                    "--target",
                    "0.5,1.0",
                    "--out",
                    &p("demo"),
                ])
                .0,
            ];
            for (suite, out) in [("microlocal", "micro.txt"), ("identities", "ident.txt")] {
                codes.push(
                    run_cli(&[
                        "verify",
                        suite,
                        "--config",
                        &cfg,
                        "--samples",
                        "500",
                        "--out",
                        &p(out),
                    ])
                    .0,
                );
            }
            codes
        };
        let codes = if run == 0 { go() } else { single_threaded(go) };
        if codes.iter().any(|&c| c != 0) {
            return Outcome {
                passed: false,
                detail: format!("cli exit codes {codes:?}"),
            };
        }
        let names = [
            "data.bin",
            "image.bin",
            "image.pgm",
            "demo/image.bin",
            "demo/image.pgm",
            "demo/peaks.txt",
            "micro.txt",
            "ident.txt",
        ];
        files.push(
            names
                .iter()
                .map(|n| (n.to_string(), std::fs::read(p(n)).unwrap()))
                .collect(),
        );
    }
    let differing: Vec<&str> = files[0]
        .iter()
        .zip(&files[1])
        .filter(|(a, b)| a.1 != b.1)
        .map(|(a, _)| a.0.as_str())
        .collect();
    Outcome {
        passed: differing.is_empty(),
        detail: if differing.is_empty() {
            format!(
                "{} output files byte-identical across two runs (multi- vs single-threaded)",
                files[0].len()
            )
        } else {
            format!("differing outputs: {differing:?}")
        },
    }
}

fn main() {
    let micro = microlocal_report();
    let results = [
        ("1 generator identities", identities()),
        ("2 determinant agreement", determinant(&micro)),
        ("3 fold/blowdown verdicts", fold_blowdown(&micro)),
        ("4 positivity term", positivity(&micro)),
        ("5 adjoint exactness", adjointness()),
        ("6 mirror artifact", mirror_artifact()),
        ("7 phase-gradient oracle", phase_gradients()),
        ("8 mute/taper contract", mute_taper()),
        ("9 determinism", determinism()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "{} {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
