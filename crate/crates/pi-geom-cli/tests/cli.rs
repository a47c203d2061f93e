//! End-to-end tests of the binary: exit-code contract, output formats,
//! determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi-geom"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const LOX_EXAMPLE: &[&str] = &[
    "loxodrome",
    "--kind",
    "ss",
    "--angle",
    "0.7853981633974483",
    "--profile",
    "exp(u)",
    "--t-min",
    "1",
    "--t-max",
    "2",
    "--samples",
    "50",
];

#[test]
fn loxodrome_sampling_succeeds() {
    let out = run(LOX_EXAMPLE);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "t,u,v,x,y,z");
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 50);
}

#[test]
fn identical_flags_are_byte_identical() {
    let a = run(LOX_EXAMPLE);
    let b = run(LOX_EXAMPLE);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn json_format_parses() {
    let mut args = LOX_EXAMPLE.to_vec();
    args.extend(["--format", "json"]);
    let out = run(&args);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["rows"].as_array().unwrap().len(), 50);
    assert_eq!(value["meta"]["subject"], "loxodrome kind=ss");
}

#[test]
fn verify_flag_passes_on_good_configs() {
    let mut args = LOX_EXAMPLE.to_vec();
    args.push("--verify");
    let out = run(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = String::from_utf8_lossy(&out.stderr);
    assert!(report.contains("OVERALL: PASS"), "{report}");
}

#[test]
fn zero_angle_loxodrome_is_the_meridian_and_verifies() {
    let out = run(&[
        "loxodrome", "--kind", "ss", "--angle", "0", "--profile", "exp(u)", "--samples", "20",
        "--verify",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    // v = 0 everywhere: the curve is the meridian itself
    for line in stdout(&out).lines().filter(|l| !l.starts_with('#')).skip(1) {
        let v: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(v, 0.0);
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("OVERALL: PASS"));
}

#[test]
fn construction_errors_exit_2() {
    // coth singularity
    let out = run(&[
        "loxodrome", "--kind", "ts", "--angle", "0", "--profile", "exp(u)",
    ]);
    assert_eq!(code(&out), 2);

    // t-range containing the log singularity
    let out = run(&[
        "loxodrome", "--kind", "ss", "--angle", "1", "--profile", "exp(u)", "--t-min", "-1",
        "--t-max", "1",
    ]);
    assert_eq!(code(&out), 2);

    // profile syntax error
    let out = run(&[
        "loxodrome", "--kind", "ss", "--angle", "1", "--profile", "3u",
    ]);
    assert_eq!(code(&out), 2);

    // u-range across the degenerate axis
    let out = run(&[
        "surface", "--kind", "spacelike-meridian", "--profile", "exp(u)", "--u-min", "-1",
        "--u-max", "1", "--v-min", "0", "--v-max", "1",
    ]);
    assert_eq!(code(&out), 2);

    // closed form seeded inside the forbidden band
    let out = run(&[
        "geodesic", "closed-form", "--c", "1", "--c1", "4", "--c2", "2", "--kind",
        "timelike-meridian", "--profile", "cos(u)", "--t-min", "-0.5", "--t-max", "2",
    ]);
    assert_eq!(code(&out), 2);

    // bad flags are also 2 (clap's own convention)
    let out = run(&["loxodrome", "--kind", "zz", "--angle", "1", "--profile", "u"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verification_failure_exits_3() {
    // a step coarse enough that the conserved-quantity drift misses the
    // reference tolerance but survives the integrator's own guard
    let out = run(&[
        "geodesic", "integrate", "--c", "1", "--c1", "4", "--c2", "2", "--kind",
        "timelike-meridian", "--profile", "cos(u)", "--t-min", "0.5", "--t-max", "1.5",
        "--step", "0.03", "--verify",
    ]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("OVERALL: FAIL"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["core", "loxodrome", "geodesic"] {
        let out = run(&["verify", suite]);
        assert_eq!(code(&out), 0, "suite {suite}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("OVERALL: PASS"));
    }
}

#[test]
fn verify_is_seed_stable() {
    let a = run(&["verify", "core", "--seed", "7"]);
    let b = run(&["verify", "core", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn surface_grid_shape() {
    let out = run(&[
        "surface", "--kind", "timelike-meridian", "--profile", "cos(u)", "--u-min", "0.1",
        "--u-max", "4", "--v-min", "-1", "--v-max", "1", "--nu", "4", "--nv", "3",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 12);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("pi-geom-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let mut args = LOX_EXAMPLE.to_vec();
    let path_str = path.to_str().unwrap().to_owned();
    args.extend(["--out", &path_str]);
    let filed = run(&args);
    assert_eq!(code(&filed), 0);
    let piped = run(LOX_EXAMPLE);
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
    std::fs::remove_dir_all(&dir).ok();
}
