//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;

use logoclass::classifier::{LabeledSample, TrainedModel};
use logoclass::color::{extract_color, PartitionGrid, COLOR_DIMS};
use logoclass::evaluation::f_measure;
use logoclass::fusion::{apply_normalizer, fit_normalizer, Combo, FeatureMatrix};
use logoclass::harness::config::ExperimentConfig;
use logoclass::harness::experiment::results_csv;
use logoclass::harness::features::FeatureRecord;
use logoclass::harness::{extract_corpus, generate_synthetic_corpus, run_on_records, ExtractionSettings};
use logoclass::imaging::{GrayRaster, RgbRaster};
use logoclass::shape::{extract_shape, moment_of_values, ShapeConfig, SHAPE_DIMS};
use logoclass::texture::{extract_texture, BasisResponses, TextureParams, TEXTURE_DIMS};
use rand::Rng;
use tempfile::TempDir;

use common::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Synthetic {
    dir: TempDir,
    records: Vec<FeatureRecord>,
}

fn synthetic() -> &'static Synthetic {
    static CELL: OnceLock<Synthetic> = OnceLock::new();
    CELL.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let manifest = generate_synthetic_corpus(&dir.path().join("corpus"), 20, 0).unwrap();
        let outcome = extract_corpus(&manifest, &ExtractionSettings::default());
        assert!(outcome.failures.is_empty(), "{:?}", outcome.failures);
        Synthetic {
            dir,
            records: outcome.records,
        }
    })
}

fn f_consistency() -> Check {
    let mut worst = 0.0f64;
    for &(combo, split, _, p, r, f) in REFERENCE_ROWS.iter() {
        let got = f_measure(p, r);
        let err = (got - f).abs();
        worst = worst.max(err);
        ensure(err <= 0.02, || {
            format!("{combo} {split}: F({p}, {r}) = {got:.4}, expected {f}")
        })?;
    }
    Ok(format!("{} rows, max |dF| = {worst:.4}", REFERENCE_ROWS.len()))
}

fn synthetic_grid() -> Check {
    let s = synthetic();
    let config = ExperimentConfig::default();
    let a = run_on_records(&config, &s.records).map_err(|e| e.to_string())?;
    let b = run_on_records(&config, &s.records).map_err(|e| e.to_string())?;
    ensure(a.cells.len() == 49, || format!("{} cells", a.cells.len()))?;
    ensure(a == b, || "two runs differ".into())?;
    for cell in &a.cells {
        for run in &cell.runs {
            ensure(run.confusion.total() as usize == run.test_size, || {
                format!(
                    "{} @{}: total {} vs test {}",
                    cell.combo,
                    cell.train_pct,
                    run.confusion.total(),
                    run.test_size
                )
            })?;
        }
    }
    let cts = a
        .cells
        .iter()
        .find(|c| c.combo == Combo::CTS && c.train_pct == 50.0)
        .ok_or("missing c+t+s @ 50")?;
    ensure(cts.accuracy >= 90.0, || {
        format!("c+t+s @ 50-50 accuracy {:.2} < 90", cts.accuracy)
    })?;
    Ok(format!("49 cells, c+t+s @ 50-50 accuracy {:.2}", cts.accuracy))
}

fn dimensions() -> Check {
    let s = synthetic();
    let fused = [(Combo::CT, 56), (Combo::CS, 52), (Combo::TS, 12), (Combo::CTS, 60)];
    for r in &s.records {
        let f = &r.features;
        ensure(
            f.color.to_vec().len() == 48 && f.texture.to_vec().len() == 8 && f.shape.to_vec().len() == 4,
            || format!("{}: block dims wrong", r.source_path),
        )?;
        for (combo, d) in fused {
            ensure(f.row(combo).len() == d, || {
                format!("{}: {combo} has {} dims", r.source_path, f.row(combo).len())
            })?;
        }
    }
    ensure(COLOR_DIMS == 48 && TEXTURE_DIMS == 8 && SHAPE_DIMS == 4, || {
        "constants".into()
    })?;
    Ok(format!("{} images", s.records.len()))
}

fn color_closure() -> Check {
    let mut rng = rng(4);
    for i in 0..1000 {
        let w = 4 * rng.gen_range(1..=12);
        let h = 2 * rng.gen_range(1..=12);
        let raster = match i % 4 {
            0 => RgbRaster::filled(w, h, [0, 0, 0]).unwrap(),
            // black left half, random right half
            1 => RgbRaster::from_fn(w, h, |x, _| {
                if x < w / 2 {
                    [0, 0, 0]
                } else {
                    [rng.gen(), rng.gen(), rng.gen()]
                }
            })
            .unwrap(),
            _ => random_rgb(&mut rng, w, h),
        };
        let feat = extract_color(&raster, PartitionGrid::default()).map_err(|e| e.to_string())?;
        for p in 0..8 {
            let sum: f64 = (0..3).map(|k| feat.percentage(p, k)).sum();
            ensure((sum - 100.0).abs() <= 1e-9, || {
                format!("raster {i} partition {p}: sum {sum}")
            })?;
        }
    }
    Ok("1000 rasters, 8000 partitions".into())
}

fn oracle_equivalence() -> Check {
    let mut rng = rng(5);
    let mut worst = [0.0f64; 3];
    for i in 0..25 {
        let (w, h) = (4 * rng.gen_range(1..=16), 2 * rng.gen_range(1..=16));
        let raster = random_rgb(&mut rng, w, h);
        let got = extract_color(&raster, PartitionGrid::default()).unwrap().to_vec();
        for (a, b) in got.iter().zip(color_oracle(&raster)) {
            worst[0] = worst[0].max((a - b).abs());
        }
        ensure(worst[0] <= 1e-9, || format!("color instance {i}: {}", worst[0]))?;
    }
    for i in 0..20 {
        let (w, h) = (rng.gen_range(4..=24), rng.gen_range(4..=24));
        let gray = random_gray(&mut rng, w, h);
        let params = TextureParams {
            sigma: rng.gen_range(0.6..2.0),
            radius: rng.gen_range(1..=4),
        };
        let basis = BasisResponses::compute(&gray, params).unwrap();
        for theta in [0.0, 45.0, -45.0, 90.0] {
            let want = steered_oracle(&gray, theta, params.sigma, params.radius);
            for (a, b) in basis.steer(theta).values.iter().zip(&want) {
                worst[1] = worst[1].max((a - b).abs());
            }
        }
        let feat = extract_texture(&gray, params).unwrap().to_vec();
        for (a, b) in feat.iter().zip(texture_oracle(&gray, params.sigma, params.radius)) {
            worst[1] = worst[1].max((a - b).abs());
        }
        ensure(worst[1] <= 1e-9, || format!("texture instance {i}: {}", worst[1]))?;
    }
    for i in 0..20 {
        let (w, h) = (rng.gen_range(6..=40), rng.gen_range(6..=40));
        let values: Vec<f64> = (0..w * h).map(|_| rng.gen_range(0.0..1.0)).collect();
        let n = rng.gen_range(0..=6u32);
        let m = rng.gen_range(-(n as i32)..=n as i32);
        let z = moment_of_values(
            &values,
            w,
            h,
            ShapeConfig {
                order: n,
                repetition: m,
            },
        )
        .unwrap();
        let (re, im) = zernike_oracle(&values, w, h, n, m);
        let rel = ((z.re - re).hypot(z.im - im)) / re.hypot(im).max(1e-12);
        worst[2] = worst[2].max(rel);
        ensure(rel <= 1e-9, || {
            format!("zernike instance {i} (n={n}, m={m}): rel {rel}")
        })?;
    }
    Ok(format!(
        "color max err {:.1e}, texture max err {:.1e}, zernike max rel {:.1e}",
        worst[0], worst[1], worst[2]
    ))
}

fn steering_identity() -> Check {
    let mut rng = rng(6);
    let c45 = 45f64.to_radians().cos();
    let s45 = 45f64.to_radians().sin();
    let mut worst = 0.0f64;
    for i in 0..20 {
        let (w, h) = (rng.gen_range(8..=48), rng.gen_range(8..=48));
        let gray = random_gray(&mut rng, w, h);
        let basis = BasisResponses::compute(&gray, TextureParams::default()).unwrap();
        let (r0, r45, r90) = (basis.steer(0.0), basis.steer(45.0), basis.steer(90.0));
        for ((a, b), c) in r45.values.iter().zip(&r0.values).zip(&r90.values) {
            worst = worst.max((a - (c45 * b + s45 * c)).abs());
        }
        ensure(worst <= 1e-9, || format!("raster {i}: {worst}"))?;
    }
    Ok(format!("20 rasters, max err {worst:.1e}"))
}

fn zernike_rotation() -> Check {
    let mut rng = rng(7);
    let config = ShapeConfig::default();
    let expected = (-(config.repetition as f64) * std::f64::consts::FRAC_PI_2).rem_euclid(std::f64::consts::TAU);
    let mut worst = (0.0f64, 0.0f64);
    for i in 0..10 {
        let gray: GrayRaster = smooth_gray(&mut rng, 64);
        let f = extract_shape(&gray, config).unwrap();
        let amp_rel = (f.amplitude_h - f.amplitude_v).abs() / f.amplitude_h.max(f.amplitude_v);
        let shift = (f.phase_v - f.phase_h).rem_euclid(std::f64::consts::TAU);
        let d = (shift - expected).abs();
        let phase_err = d.min(std::f64::consts::TAU - d);
        worst = (worst.0.max(amp_rel), worst.1.max(phase_err));
        ensure(amp_rel <= 0.02 && phase_err <= 1e-2, || {
            format!("image {i}: amplitude rel {amp_rel:.2e}, phase err {phase_err:.2e}")
        })?;
    }
    Ok(format!(
        "10 images, amplitude rel {:.1e}, phase err {:.1e}",
        worst.0, worst.1
    ))
}

fn nn_equivalence() -> Check {
    let mut rng = rng(8);
    let dims = 6;
    // coarse integer grid so exact distance ties occur
    let mut refs: Vec<Vec<f64>> = (0..100)
        .map(|_| (0..dims).map(|_| rng.gen_range(0..4) as f64).collect())
        .collect();
    for i in 0..10 {
        refs[90 + i] = refs[i].clone();
    }
    let labels: Vec<usize> = (0..100).map(|i| i % 3).collect();
    let model = TrainedModel::new(
        refs.iter()
            .zip(&labels)
            .enumerate()
            .map(|(i, (f, &l))| LabeledSample {
                features: f.clone(),
                label: l,
                source_id: format!("r{i}"),
            })
            .collect(),
    )
    .unwrap();
    let mut ties = 0;
    for q in 0..200 {
        let query: Vec<f64> = if q % 5 == 0 {
            refs[q % 100].clone()
        } else {
            (0..dims)
                .map(|_| rng.gen_range(0..4) as f64 + rng.gen_range(-0.5..0.5) * (q % 2) as f64)
                .collect()
        };
        let want = nn_oracle(&refs, &query);
        let got = model.classify(&query).unwrap();
        if want.tied.len() > 1 {
            ties += 1;
        }
        ensure(got.index == want.index && got.label == labels[want.index], || {
            format!(
                "query {q}: got index {}, oracle {} (tied {:?})",
                got.index, want.index, want.tied
            )
        })?;
    }
    Ok(format!("200 queries x 100 references, {ties} with ties"))
}

fn normalization() -> Check {
    let s = synthetic();
    let train: Vec<&FeatureRecord> = s.records.iter().step_by(2).collect();
    let block = |combo: Combo, rows: &[&FeatureRecord]| {
        FeatureMatrix::from_rows(combo.dims(), rows.iter().map(|r| r.features.row(combo))).unwrap()
    };
    let normalize = |m: &FeatureMatrix| apply_normalizer(m, &fit_normalizer(m).unwrap()).unwrap();

    let fused = normalize(&block(Combo::CTS, &train));
    for row in fused.iter_rows() {
        ensure(row.iter().all(|v| (0.0..=1.0).contains(v)), || {
            "value outside [0, 1]".into()
        })?;
    }
    let parts = [Combo::C, Combo::T, Combo::S].map(|c| normalize(&block(c, &train)));
    let joined = FeatureMatrix::hconcat(&[&parts[0], &parts[1], &parts[2]]).unwrap();
    ensure(joined == fused, || "normalize(fuse) != fuse(normalize)".into())?;

    let with_zero = FeatureMatrix::from_rows(3, [[0.0, 2.0, 0.0], [0.0, 4.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
    let params = fit_normalizer(&with_zero).unwrap();
    let test = FeatureMatrix::from_rows(3, [[5.0, 2.0, 7.0]]).unwrap();
    let out = apply_normalizer(&test, &params).unwrap();
    ensure(out.row(0) == [0.0, 0.5, 0.0], || {
        format!("zero-max columns: {:?}", out.row(0))
    })?;
    Ok(format!("{} training rows, commutation exact", train.len()))
}

fn cli_determinism() -> Check {
    let s = synthetic();
    let corpus = s.dir.path().join("corpus");
    let run = |out: &Path, workers: &str| {
        let status = Command::new(env!("CARGO_BIN_EXE_logoclass"))
            .args(["run", "--corpus"])
            .arg(&corpus)
            .arg("--out")
            .arg(out)
            .args(["--workers", workers])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || {
            String::from_utf8_lossy(&status.stderr).into_owned()
        })?;
        std::fs::read(out.join("results.csv")).map_err(|e| e.to_string())
    };
    let a = run(&s.dir.path().join("out_a"), "1")?;
    let b = run(&s.dir.path().join("out_b"), "0")?;
    ensure(a == b, || "results.csv differs between runs".into())?;
    let expected = results_csv(&run_on_records(&ExperimentConfig::default(), &s.records).map_err(|e| e.to_string())?);
    ensure(a == expected.as_bytes(), || {
        "CLI output differs from library run".into()
    })?;
    Ok(format!("{} bytes identical", a.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("F-measure consistency with published rows", f_consistency),
        (
            "synthetic 7x7 grid: determinism, totals, c+t+s >= 90% at 50-50",
            synthetic_grid,
        ),
        ("feature dimensions 48/8/4 and fused 56/52/12/60", dimensions),
        ("color percentage closure on 1000 rasters", color_closure),
        ("oracle equivalence: color, texture, pseudo-Zernike", oracle_equivalence),
        ("steering identity at 45 degrees", steering_identity),
        ("pseudo-Zernike 90-degree rotation behavior", zernike_rotation),
        ("1-NN matches exhaustive oracle including ties", nn_equivalence),
        ("normalization contract", normalization),
        ("byte-identical results.csv across CLI runs", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
