use std::path::Path;
use std::process::{Command, Output};

use lflab::synthetic::translated_plane;
use lflab::{load_light_field, ppm, save_light_field, LightField, View};

fn lflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lflab")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> Output {
    let out = lflab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn scene(dir: &Path) -> (LightField, String) {
    let lf = translated_plane(3, 3, 20, 12, 0.5);
    let manifest = save_light_field(&lf, dir, "scene", "{row}_{col}.ppm").unwrap();
    (lf, manifest.to_str().unwrap().to_string())
}

#[test]
fn encode_then_decode() {
    let dir = tempfile::tempdir().unwrap();
    let (lf, manifest) = scene(dir.path());
    let lfj = dir.path().join("lf.lfj");
    let out_dir = dir.path().join("decoded");
    ok(&["encode", "--manifest", &manifest, "--mode", "4d", "--quality", "50", "--out", lfj.to_str().unwrap()]);
    assert_eq!(&std::fs::read(&lfj).unwrap()[..4], b"LFJ1");
    ok(&[
        "decode",
        "--input",
        lfj.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--disparity-min",
        "-0.5",
        "--disparity-max",
        "1.5",
    ]);
    let decoded = load_light_field(out_dir.join("manifest.json")).unwrap();
    assert!(decoded.same_geometry(&lf));
    assert_eq!(decoded.disparity_min(), -0.5);
    assert!(lflab::direct_psnr(&lf, &decoded).unwrap() > 25.0);
}

#[test]
fn refocus_at_zero_is_average() {
    let dir = tempfile::tempdir().unwrap();
    let views: Vec<View> = (0..4).map(|i| View::filled(5, 4, [i * 40, 10, 200]).unwrap()).collect();
    let lf = LightField::new(2, 2, views, -1.0, 1.0).unwrap();
    let manifest = save_light_field(&lf, dir.path(), "flat", "{row}{col}.ppm").unwrap();
    let out_dir = dir.path().join("stack");
    ok(&[
        "refocus",
        "--manifest",
        manifest.to_str().unwrap(),
        "--alpha=-1,0,1.5",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    let mid = ppm::read_ppm(&std::fs::read(out_dir.join("focus_001.ppm")).unwrap()).unwrap();
    assert_eq!(mid, View::filled(5, 4, [60, 10, 200]).unwrap());
    assert!(out_dir.join("focus_002.ppm").exists());
}

#[test]
fn sweep_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let (_, manifest) = scene(dir.path());
    let csv = dir.path().join("rd.csv");
    let args = [
        "sweep",
        "--manifest",
        &manifest,
        "--modes",
        "2d,3d,4d",
        "--qualities",
        "10,30,50,70,90",
        "--out",
        csv.to_str().unwrap(),
    ];
    ok(&args);
    let first = std::fs::read_to_string(&csv).unwrap();
    ok(&args);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), first);
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines[0], "mode,quality,bpp,psnr_mean");
    assert_eq!(lines.len(), 16);
    assert!(lines[1].starts_with("jpeg2d,10,"));
    assert!(lines[15].starts_with("jpeg4d,90,"));

    let stdout = ok(&["exp0", "--manifest", &manifest, "--qualities", "20,60"]).stdout;
    let text = String::from_utf8(stdout).unwrap();
    assert_eq!(text.lines().next(), Some("quality,bpp,psnr_direct,psnr_rendered_mean"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn y4m_export_import() {
    let dir = tempfile::tempdir().unwrap();
    let (lf, manifest) = scene(dir.path());
    let y4m = dir.path().join("seq.y4m");
    let back_dir = dir.path().join("back");
    ok(&["y4m-export", "--manifest", &manifest, "--order", "spiral", "--out", y4m.to_str().unwrap()]);
    assert!(std::fs::read(&y4m).unwrap().starts_with(b"YUV4MPEG2 W20 H12 F25:1 Ip A1:1 C444\n"));
    ok(&[
        "y4m-import",
        "--input",
        y4m.to_str().unwrap(),
        "--rows",
        "3",
        "--cols",
        "3",
        "--order",
        "spiral",
        "--out-dir",
        back_dir.to_str().unwrap(),
    ]);
    let back = load_light_field(back_dir.join("manifest.json")).unwrap();
    for (a, b) in lf.views().iter().zip(back.views()) {
        assert!(a.samples().iter().zip(b.samples()).all(|(x, y)| x.abs_diff(*y) <= 1));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    let out = lflab(&["encode", "--manifest", missing.to_str().unwrap(), "--mode", "2d", "--quality", "50", "--out", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);

    assert_eq!(lflab(&["encode", "--bogus"]).status.code(), Some(2));
    assert_eq!(lflab(&["transcode"]).status.code(), Some(2));

    let junk = dir.path().join("junk.lfj");
    std::fs::write(&junk, b"LFJ2 not a stream").unwrap();
    let out = lflab(&["decode", "--input", junk.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("bitstream"), "{err}");
}
