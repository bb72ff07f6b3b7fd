use lflab::harness::{
    export_y4m, fmt_g6, rd_csv, rd_sweep, rd_sweep_field, scan_sequence, Mode, ScanOrder, SweepConfig,
};
use lflab::synthetic::translated_plane;
use lflab::{save_light_field, Error, LightField, View};

#[test]
fn spiral_on_three_by_three() {
    assert_eq!(
        scan_sequence(3, 3, ScanOrder::Spiral),
        [(1, 1), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0), (0, 0), (0, 1), (0, 2)]
    );
    assert_eq!(scan_sequence(1, 1, ScanOrder::Spiral), [(0, 0)]);
    assert_eq!(&scan_sequence(3, 3, ScanOrder::Raster)[..4], [(0, 0), (0, 1), (0, 2), (1, 0)]);
}

#[test]
fn black_view_frame() {
    let lf = LightField::new(1, 1, vec![View::filled(2, 2, [0, 0, 0]).unwrap()], 0.0, 0.0).unwrap();
    let bytes = export_y4m(&lf, ScanOrder::Spiral);
    let header = b"YUV4MPEG2 W2 H2 F25:1 Ip A1:1 C444\n";
    let mut expect = header.to_vec();
    expect.extend_from_slice(b"FRAME\n");
    expect.extend_from_slice(&[0, 0, 0, 0, 128, 128, 128, 128, 128, 128, 128, 128]);
    assert_eq!(bytes, expect);
}

#[test]
fn sweep_from_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let lf = translated_plane(4, 4, 24, 16, 0.5);
    let manifest = save_light_field(&lf, dir.path(), "plane", "{row}/{col}.ppm").unwrap();
    let out = dir.path().join("rd.csv");
    let mut cfg = SweepConfig::new(vec![Mode::Jpeg3d], vec![90, 10, 50]);
    cfg.output = Some(out.clone());
    let csv = rd_sweep(&manifest, &cfg).unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), csv);
    let bpp: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(bpp.len(), 3);
    assert!(bpp.windows(2).all(|w| w[1] >= w[0]));
    assert!(csv.lines().nth(1).unwrap().starts_with("jpeg3d,10,"));

    let one = rd_sweep(&manifest, &SweepConfig::new(vec![Mode::Jpeg2d], vec![40])).unwrap();
    assert_eq!(one.lines().count(), 2);

    match rd_sweep(dir.path().join("missing.json"), &cfg) {
        Err(Error::Io { .. }) => {}
        other => panic!("unexpected {other:?}"),
    }
}

/// Every 2d point inside the 4d PSNR range is beaten by the 4d curve:
/// interpolating the 4d curve at that PSNR needs fewer bits.
#[test]
fn four_d_dominates_two_d_on_small_baseline() {
    let lf = translated_plane(6, 6, 32, 32, 0.25);
    let points = rd_sweep_field(&lf, &SweepConfig::new(vec![Mode::Jpeg2d, Mode::Jpeg4d], vec![10, 30, 50, 70, 90]))
        .unwrap();
    let curve = |m: &str| -> Vec<(f64, f64)> {
        points.iter().filter(|p| p.mode == m).map(|p| (p.psnr_mean, p.bpp)).collect()
    };
    let (two, four) = (curve("jpeg2d"), curve("jpeg4d"));
    let mut checked = 0;
    for &(db, bpp) in &two {
        if let Some(w) = four.windows(2).find(|w| w[0].0 <= db && db <= w[1].0) {
            let t = (db - w[0].0) / (w[1].0 - w[0].0);
            let bpp4 = w[0].1 + t * (w[1].1 - w[0].1);
            assert!(bpp4 < bpp, "{db} dB: 4d {bpp4} vs 2d {bpp}");
            checked += 1;
        }
    }
    assert!(checked >= 1, "{}", rd_csv(&points));
}

#[test]
fn csv_numbers_use_six_significant_digits() {
    assert_eq!(fmt_g6(0.0125), "0.0125");
    assert_eq!(fmt_g6(37.958_312), "37.9583");
    assert_eq!(fmt_g6(f64::INFINITY), "inf");
}
