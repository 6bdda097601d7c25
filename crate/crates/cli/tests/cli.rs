use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/../core/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wangcube")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn blocks_verify_passes() {
    let out = run(&["blocks", "verify"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn compile_writes_tiles_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["compile", &data("three_tiles.wang"), "--dim", "3", "--out", path(dir.path())]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["encoder.poly", "linker-U.poly", "linker-D.poly", "filler.poly", "manifest.txt"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let manifest = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    assert!(manifest.contains("layer 1 north 1111 0011 0001 0000 south 0001 0000 1111 0111"), "{manifest}");
}

#[test]
fn compile_rejects_a_single_tile_set() {
    let dir = tempfile::tempdir().unwrap();
    let wang = dir.path().join("one.wang");
    fs::write(&wang, r#"{"q": 1, "tiles": [{"n": 0, "e": 0, "s": 0, "w": 0}]}"#).unwrap();
    let out = run(&["compile", path(&wang), "--dim", "4", "--out", path(&dir.path().join("out"))]);
    assert_eq!(code(&out), 2);
}

#[test]
fn wang_solve_finds_the_small_torus() {
    let out = run(&["wang", "solve", &data("three_tiles.wang")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "torus 1x3\n1\n2\n0\n");
    let none = run(&["wang", "solve", &data("three_tiles.wang"), "--torus", "2x2"]);
    assert_eq!(code(&none), 1);
}

#[test]
fn build_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["tiling", "build", &data("three_tiles.wang"), "--out", path(dir.path())]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("det 1728000"));
    let cert = dir.path().join("certificate.txt");
    assert_eq!(code(&run(&["tiling", "verify", path(&cert)])), 0);
    assert_eq!(code(&run(&["tiling", "check-lattice", path(&cert)])), 0);

    let text = fs::read_to_string(&cert).unwrap();
    let tampered = text.replacen("\nlinker-U ", "\nlinker-D ", 1);
    assert_ne!(tampered, text);
    fs::write(&cert, tampered).unwrap();
    let out = run(&["tiling", "verify", path(&cert)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cell"));
}

#[test]
fn missing_linker_fails_lattice_check() {
    let dir = tempfile::tempdir().unwrap();
    run(&["tiling", "build", &data("all_red.wang"), "--out", path(dir.path())]);
    let cert = dir.path().join("certificate.txt");
    let text = fs::read_to_string(&cert).unwrap();
    let mut dropped = false;
    let kept: Vec<&str> = text
        .lines()
        .filter(|l| {
            let drop = !dropped && l.starts_with("linker-");
            dropped |= drop;
            !drop
        })
        .collect();
    fs::write(&cert, kept.join("\n")).unwrap();
    assert_eq!(code(&run(&["tiling", "check-lattice", path(&cert)])), 1);
}

#[test]
fn solve_boxes_and_tori() {
    let dir = tempfile::tempdir().unwrap();
    let tiles = dir.path().join("tiles");
    fs::create_dir(&tiles).unwrap();
    fs::write(tiles.join("h.poly"), "dim 2\n0 0\n1 0\n").unwrap();
    fs::write(tiles.join("v.poly"), "dim 2\n0 0\n0 1\n").unwrap();
    let t = path(&tiles);

    let out = run(&["solve", "--tiles", t, "--region", "4x4", "--mode", "count"]);
    assert_eq!((code(&out), stdout(&out)), (0, "count 36\n".to_string()));
    assert_eq!(code(&run(&["solve", "--tiles", t, "--region", "3x3"])), 1);
    assert_eq!(code(&run(&["solve", "--tiles", t, "--region", "8x8", "--mode", "count", "--budget", "3"])), 1);

    let lattice = dir.path().join("lattice");
    fs::write(&lattice, "2 0\n0 2\n").unwrap();
    let out = run(&["solve", "--tiles", t, "--lattice", path(&lattice), "--mode", "count"]);
    assert_eq!(stdout(&out), "count 8\n");

    let cert_dir = dir.path().join("found");
    assert_eq!(code(&run(&["solve", "--tiles", t, "--region", "2x3", "--out", path(&cert_dir)])), 0);
    assert_eq!(code(&run(&["tiling", "verify", path(&cert_dir.join("certificate.txt"))])), 0);
}

#[test]
fn render_is_reproducible() {
    let a = run(&["render", "level2", &data("three_tiles.wang"), "--svg", "--segments"]);
    let b = run(&["render", "level2", &data("three_tiles.wang"), "--svg", "--segments"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let u = stdout(&run(&["render", "level1", "u"]));
    let layers: Vec<&str> = u.split("\n\n").collect();
    assert_eq!(layers.len(), 10);
    assert!(!layers[5].contains('#') && !layers[6].contains('#'));
    assert_eq!(code(&run(&["render", "level1", "E4"])), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["bogus"])), 2);
    assert_eq!(code(&run(&["tiling", "verify", "/nonexistent/certificate.txt"])), 2);
    assert_eq!(code(&run(&["solve", "--tiles", "/nonexistent", "--region", "2x2"])), 2);
}
