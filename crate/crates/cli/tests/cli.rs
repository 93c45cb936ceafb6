//! End-to-end runs of the compiled binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_twinbeam")
}

/// Per-test scratch directory, removed on drop.
struct Scratch {
    root: PathBuf,
}

impl Scratch {
    fn new(tag: &str) -> Self {
        let root =
            std::env::temp_dir().join(format!("twinbeam-cli-{}-{}", tag, std::process::id()));
        let _ = fs::remove_dir_all(&root);
        fs::create_dir_all(&root).unwrap();
        Self { root }
    }

    fn config(&self, contents: &str) -> String {
        let path = self.root.join("run.toml");
        fs::write(&path, contents).unwrap();
        path.to_str().unwrap().to_owned()
    }

    fn dir(&self, name: &str) -> String {
        self.root.join(name).to_str().unwrap().to_owned()
    }

    fn path(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.root);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "{:?} failed\nstdout:\n{}\nstderr:\n{}",
        args,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    );
    out
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

/// Split an unquoted CSV line. Good enough for the numeric tables here.
fn split_csv(line: &str) -> Vec<&str> {
    line.split(',').collect()
}

/// Value of `column` in a single-data-row CSV.
fn csv_value(text: &str, column: &str) -> String {
    let mut lines = text.lines();
    let header = split_csv(lines.next().expect("header"));
    let row = split_csv(lines.next().expect("data row"));
    assert_eq!(header.len(), row.len());
    let idx = header
        .iter()
        .position(|h| *h == column)
        .unwrap_or_else(|| panic!("no column {column} in {header:?}"));
    row[idx].to_owned()
}

fn csv_number(text: &str, column: &str) -> f64 {
    csv_value(text, column).parse().unwrap()
}

/// Value of `key` in a key-value report.
fn report_value(text: &str, key: &str) -> String {
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix(key) {
            if rest.starts_with(' ') {
                return rest.trim().to_owned();
            }
        }
    }
    panic!("no key {key} in report:\n{text}");
}

fn sorted_file_names(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

#[test]
fn criterion_14_cli_determinism() {
    let scratch = Scratch::new("determinism");
    let config = scratch.config("scenario = \"probe_resonant\"\n");
    let subcommands: &[&[&str]] = &[
        &["plan"],
        &["spectrum"],
        &["sweep"],
        &["noise"],
        &["oracle-check", "--trials", "1000"],
    ];
    for (i, sub) in subcommands.iter().enumerate() {
        let out_a = scratch.dir(&format!("a{i}"));
        let out_b = scratch.dir(&format!("b{i}"));
        for out in [&out_a, &out_b] {
            let mut args = sub.to_vec();
            args.extend_from_slice(&[
                "--config", &config, "--out", out, "--format", "both", "--seed", "1",
            ]);
            run_ok(&args);
        }
        let names = sorted_file_names(Path::new(&out_a));
        assert!(!names.is_empty(), "{:?} emitted nothing", sub);
        assert_eq!(names, sorted_file_names(Path::new(&out_b)));
        for name in &names {
            let a = fs::read(Path::new(&out_a).join(name)).unwrap();
            let b = fs::read(Path::new(&out_b).join(name)).unwrap();
            assert_eq!(a, b, "{name} differs between identical {:?} runs", sub);
        }
    }
    println!(
        "criterion 14 PASS: plan/spectrum/sweep/noise/oracle-check each emit \
         byte-identical artifacts on repeated runs with fixed config and seed"
    );
}

#[test]
fn plan_probe_resonant_matches_published_point() {
    let scratch = Scratch::new("plan-sr");
    let config = scratch.config("scenario = \"probe_resonant\"\n");
    let out = scratch.dir("out");
    run_ok(&["plan", "--config", &config, "--out", &out]);
    let csv = read(&scratch.path("out/plan.csv"));
    assert!((csv_number(&csv, "pump_detuning_mhz") - -687.0).abs() < 5.0);
    assert!((csv_number(&csv, "beat_note_mhz") - 6103.5).abs() < 2.0);
    assert_eq!(csv_value(&csv, "feasibility"), "ok");
}

#[test]
fn plan_double_resonant_two_photon_detuning() {
    let scratch = Scratch::new("plan-dr");
    let config = scratch.config("scenario = \"double_resonant\"\n");
    let out = scratch.dir("out");
    run_ok(&["plan", "--config", &config, "--out", &out]);
    let csv = read(&scratch.path("out/plan.csv"));
    assert!((csv_number(&csv, "delta_mhz") - -26.0).abs() < 2.0);
    assert!((csv_number(&csv, "beat_note_mhz") - 6019.5).abs() < 2.0);
}

#[test]
fn plan_custom_zero_delta_beat_note() {
    let scratch = Scratch::new("plan-custom");
    let config = scratch.config("delta_mhz = 0.0\n");
    let out = scratch.dir("out");
    run_ok(&["plan", "--config", &config, "--out", &out]);
    let csv = read(&scratch.path("out/plan.csv"));
    assert_eq!(csv_value(&csv, "scenario"), "custom");
    assert!((csv_number(&csv, "beat_note_mhz") - 6071.5).abs() < 0.1);
}

#[test]
fn spectrum_marker_file_has_six_rows_for_pure_rb85() {
    let scratch = Scratch::new("markers");
    let config = scratch.config("scenario = \"probe_resonant\"\n");
    let out = scratch.dir("out");
    run_ok(&["spectrum", "--config", &config, "--out", &out]);
    let markers = read(&scratch.path("out/spectrum_markers.csv"));
    let lines: Vec<&str> = markers.lines().collect();
    assert_eq!(lines[0], "label,offset_mhz");
    assert_eq!(lines.len(), 1 + 6, "pure Rb85: 4 lines + 2 crossovers");
    let spectrum = read(&scratch.path("out/spectrum.csv"));
    assert_eq!(spectrum.lines().next().unwrap(), "offset_mhz,transmission");
}

#[test]
fn sweep_with_gain_disabled_never_squeezes() {
    let scratch = Scratch::new("no-gain");
    let config = scratch.config("scenario = \"probe_resonant\"\n\n[gain]\nA = 0.0\n");
    let out = scratch.dir("out");
    run_ok(&["sweep", "--config", &config, "--out", &out]);
    let csv = read(&scratch.path("out/sweep.csv"));
    for line in csv.lines().skip(1) {
        let fields = split_csv(line);
        let gain: f64 = fields[1].parse().unwrap();
        let squeezing_db: f64 = fields[4].parse().unwrap();
        assert_eq!(gain, 1.0);
        assert!(squeezing_db >= -1e-9, "loss-only point below QNL: {line}");
    }
    let summary = read(&scratch.path("out/sweep_summary.txt"));
    assert_eq!(report_value(&summary, "window"), "none");
}

#[test]
fn noise_budget_reproduces_calibrated_level() {
    let scratch = Scratch::new("noise");
    let config = scratch.config("scenario = \"probe_resonant\"\n");
    let out = scratch.dir("out");
    run_ok(&["noise", "--config", &config, "--out", &out]);
    let report = read(&scratch.path("out/noise_budget.txt"));
    let squeezing_db: f64 = report_value(&report, "squeezing_db").parse().unwrap();
    assert!((squeezing_db - -5.4).abs() < 0.05);
    let floor_db: f64 = report_value(&report, "electronic_floor_db")
        .parse()
        .unwrap();
    assert!(floor_db > -20.0 && floor_db < -8.0);
}

#[test]
fn unknown_config_key_is_rejected_with_diagnostics() {
    let scratch = Scratch::new("bad-key");
    let config = scratch.config("scenario = \"custom\"\nbogus_key = 1\n");
    let out = scratch.dir("out");
    let result = run(&["plan", "--config", &config, "--out", &out]);
    assert!(!result.status.success());
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("bogus_key"), "stderr:\n{stderr}");
}

#[test]
fn missing_config_is_an_error_for_plan() {
    let scratch = Scratch::new("no-config");
    let out = scratch.dir("out");
    let result = run(&["plan", "--out", &out]);
    assert!(!result.status.success());
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("--config"), "stderr:\n{stderr}");
}

#[test]
fn oracle_check_zero_trials_is_usage_error() {
    let scratch = Scratch::new("zero-trials");
    let out = scratch.dir("out");
    let result = run(&["oracle-check", "--trials", "0", "--out", &out]);
    assert_eq!(result.status.code(), Some(2), "expected a usage error");
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("--trials"), "stderr:\n{stderr}");
}

#[test]
fn oracle_check_passes_and_reports_deviation() {
    let scratch = Scratch::new("oracle");
    let out = scratch.dir("out");
    let result = run_ok(&[
        "oracle-check",
        "--trials",
        "1000",
        "--seed",
        "1",
        "--out",
        &out,
    ]);
    let stdout = String::from_utf8_lossy(&result.stdout);
    assert!(stdout.contains("max_rel_deviation"));
    let report = read(&scratch.path("out/oracle_check.txt"));
    let deviation: f64 = report_value(&report, "max_rel_deviation").parse().unwrap();
    assert!(deviation < 1e-9);
    assert_eq!(report_value(&report, "result"), "PASS");
}
