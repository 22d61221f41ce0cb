use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use polygrowth::geometry::{speed, Direction};
use polygrowth::MonotoneRule;
use polygrowth_lab::config::{load_toml, GrowConfig, KpolyConfig, SolvableConfig, StripFileConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polygrowth"))
}

fn rules(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("rules").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn classify_reports_cases() {
    let o = run(&["classify", p(&rules("moore3.toml"))]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("Case 1, supercritical, not quasi-additive\n"), "{}", stdout(&o));
    assert!(stdout(&o).contains("K (16 vertices)"));

    let o = run(&["classify", p(&rules("box2_theta8.toml"))]);
    assert!(stdout(&o).starts_with("Case 3"));

    let o = run(&["classify", p(&rules("box2_theta11.toml"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not supercritical"));
}

#[test]
fn classify_svg_highlights_contact_points() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("k.svg");
    assert!(run(&["classify", p(&rules("moore3.toml")), "--svg", p(&svg)]).status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), 8);
    assert_eq!(text.matches("<path").count(), 2);
}

#[test]
fn survey_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = run(&["survey", "--rho", "1", "--csv", p(&csv)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("rho,theta,case,"));
    assert!(stdout(&o).contains("Case 1: [3]"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_rule = dir.path().join("bad.toml");
    std::fs::write(
        &bad_rule,
        "neighborhood = \"von-neumann\"\nkind = \"probtable\"\nprob_entries = [{ set = [[1, 0]], p = 0.5 }, { set = [[1, 0], [-1, 0]], p = 0.3 }]\n",
    )
    .unwrap();
    let o = run(&["validate", p(&bad_rule)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("monotonicity"));

    let typo = dir.path().join("typo.toml");
    std::fs::write(&typo, "neighborhood = \"moore\"\nkind = \"threshold\"\ntheta = \"three\"\n").unwrap();
    let o = run(&["classify", p(&typo)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("theta"), "{}", stderr(&o));

    let cfg = dir.path().join("grow.toml");
    std::fs::write(&cfg, "rule_file = \"nope.toml\"\np = 0.9\nhorizon = 5\nreplicaz = 2\n").unwrap();
    let o = run(&["grow", "--config", p(&cfg), "--out", p(&dir.path().join("o")), "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("replicaz"), "{}", stderr(&o));

    assert_eq!(run(&["survey"]).status.code(), Some(2));
    assert_eq!(run(&["validate", p(&rules("moore3.toml"))]).status.code(), Some(0));
}

#[test]
fn strip_at_p_one_matches_geometry() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s");
    let o = run(&[
        "strip", "--rule", p(&rules("box2_theta8.toml")), "--p", "1", "--direction", "0,1", "--direction", "1,2",
        "--direction=-2,3", "--direction", "1,1", "--width", "80", "--horizon", "120", "--seed", "9", "--out", p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rule = MonotoneRule::box_threshold(2, 8);
    let mut reader = csv::Reader::from_path(out.join("velocity.csv")).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["direction_x", "direction_y", "estimate", "stderr", "samples", "seed"]
    );
    let mut n = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let d = Direction::new(rec[0].parse().unwrap(), rec[1].parse().unwrap()).unwrap();
        let est: f64 = rec[2].parse().unwrap();
        assert_eq!(est, speed(&rule, d).unit_speed(d), "{d:?}");
        assert_eq!(&rec[3], "0.0");
        n += 1;
    }
    assert_eq!(n, 4);
}

fn replay_matches(args: &[&str], files: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", p(&a)]);
    let o = run(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["--threads", "3", "replay", p(&a.join("manifest.json")), "--out", p(&b)]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in files {
        let x = std::fs::read(a.join(f)).unwrap();
        let y = std::fs::read(b.join(f)).unwrap();
        assert!(x == y, "{f} differs after replay");
    }
}

#[test]
fn replays_are_byte_identical() {
    let moore = rules("moore3.toml");
    replay_matches(
        &["--threads", "1", "grow", "--rule", p(&moore), "--p", "0.8", "--horizon", "40", "--replicas", "3", "--snapshot-every", "10", "--seed", "4"],
        &["growth.csv", "final.rle", "growth.svg"],
    );
    replay_matches(
        &["strip", "--rule", p(&moore), "--p", "0.7", "--direction", "1,2", "--direction", "0,-1", "--width", "40", "--horizon", "80", "--seed", "8"],
        &["velocity.csv"],
    );
    replay_matches(
        &["kpoly", "--rule", p(&moore), "--p", "0.9", "--max-coord", "1", "--width", "40", "--horizon", "60", "--seed", "2"],
        &["velocity.csv", "kpoly.csv", "kpoly.svg"],
    );
    replay_matches(&["solvable", "--p", "0.4", "--horizon", "80", "--runs", "5", "--seed", "6"], &["interface.csv", "curve.csv", "solvable.svg"]);
    replay_matches(&["solvable", "--shape-family"], &["curves.csv", "shape_family.svg"]);
}

#[test]
fn missing_seed_is_generated_and_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v");
    let o = run(&["solvable", "--p", "0.5", "--horizon", "20", "--runs", "2", "--out", p(&out)]);
    assert!(o.status.success());
    let announced: u64 = stderr(&o).trim().strip_prefix("master seed: ").unwrap().parse().unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["master_seed"].as_u64(), Some(announced));
    assert_eq!(manifest["config"]["master_seed"].as_u64(), Some(announced));
}

#[test]
fn shape_family_has_eleven_curves() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["solvable", "--shape-family", "--out", p(dir.path())]).status.success());
    let mut reader = csv::Reader::from_path(dir.path().join("curves.csv")).unwrap();
    let mut ps: Vec<String> = reader.records().map(|r| r.unwrap()[0].to_string()).collect();
    ps.dedup();
    assert_eq!(ps.len(), 11);
    let svg = std::fs::read_to_string(dir.path().join("shape_family.svg")).unwrap();
    assert_eq!(svg.matches("<path").count(), 11);
}

#[test]
fn banded_snapshots_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g");
    let moore = rules("moore3.toml");
    let o = run(&["grow", "--rule", p(&moore), "--p", "1", "--horizon", "40", "--snapshot-every", "10", "--seed", "1", "--out", p(&out)]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(out.join("growth.svg")).unwrap();
    assert!(svg.contains("#4a5a6a") && svg.contains("#9fb0c0"));
    let pic = dir.path().join("r.svg");
    let o = run(&["render", p(&out.join("final.rle")), "--rule", p(&moore), "-o", p(&pic)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(std::fs::read_to_string(&pic).unwrap().contains("crimson"));
}

#[test]
fn shipped_configs_parse() {
    let base = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    load_toml::<GrowConfig>(&base.join("grow_moore3.toml")).unwrap();
    load_toml::<StripFileConfig>(&base.join("strip_moore3.toml")).unwrap();
    load_toml::<KpolyConfig>(&base.join("kpoly_box2_theta8.toml")).unwrap();
    load_toml::<SolvableConfig>(&base.join("solvable_half.toml")).unwrap();
    for entry in std::fs::read_dir(rules("")).unwrap() {
        let path = entry.unwrap().path();
        polygrowth_lab::rulefile::RuleFile::load(&path).unwrap();
    }
}
