//! End-to-end checks of the command line interface.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

use fronttrack::harness::read_plot_data;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fronttrack"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fronttrack-cli-{}", tag));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn convergence_emits_reference_table() {
    let dir = temp_dir("conv");
    let out = bin()
        .args(["convergence", "--experiment", "1", "--format", "csv"])
        .args(["--out-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = fs::read_to_string(dir.join("convergence_experiment-1.csv")).unwrap();
    assert!(table.starts_with("n,l1_error,ooc\n"));
    assert!(table.contains("16,6.250e-3,\n"), "table:\n{}", table);
    assert!(table.contains("1024,9.766e-5,1.00\n"), "table:\n{}", table);
}

#[test]
fn solve_emits_transported_shock() {
    let dir = temp_dir("solve");
    let out = bin()
        .args(["solve", "--experiment", "1", "--n", "16", "--end-time", "0.3"])
        .args(["--out-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let sol = read_plot_data(&dir.join("solution_experiment-1_n16_t0.3.txt")).unwrap();
    // the initial jump has been transported to -0.5 + 0.3
    assert_eq!(sol.sample_at(-0.25), 0.5);
    assert_eq!(sol.sample_at(-0.15), 2.0);
}

#[test]
fn config_file_overrides_defaults() {
    let dir = temp_dir("config");
    let cfg_path = dir.join("run.cfg");
    fs::write(
        &cfg_path,
        format!(
            "experiment = 2\nn = 16\nend_time = 0.2\nout_dir = {}\n",
            dir.display()
        ),
    )
    .unwrap();
    let out = bin()
        .args(["solve", "--config", cfg_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("solution_experiment-2_n16_t0.2.txt").exists());
}

#[test]
fn custom_constant_datum_yields_constant_file() {
    let dir = temp_dir("custom");
    let cfg_path = dir.join("run.cfg");
    fs::write(
        &cfg_path,
        format!(
            "left_flux = identity\nright_flux = burgers\ndatum = constant:2\n\
             n = 16\nend_time = 0.4\nout_dir = {}\n",
            dir.display()
        ),
    )
    .unwrap();
    let out = bin()
        .args(["solve", "--config", cfg_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.join("solution_custom_n16_t0.4.txt")).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, vec!["-1 2", "1 2"]);
}

#[test]
fn custom_two_flux_problem_runs() {
    // transport into a steeper linear flux: the step compresses by the
    // slope ratio after crossing
    let dir = temp_dir("twoflux");
    let cfg_path = dir.join("run.cfg");
    fs::write(
        &cfg_path,
        format!(
            "left_flux = linear:1\nright_flux = linear:2\ndatum = step:-0.5:1:2\n\
             n = 32\nend_time = 0.9\nout_dir = {}\n",
            dir.display()
        ),
    )
    .unwrap();
    let out = bin()
        .args(["solve", "--config", cfg_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let sol = read_plot_data(&dir.join("solution_custom_n32_t0.9.txt")).unwrap();
    // interface keeps flux continuity: right trace of the crossed left
    // state is 1/2, and the crossed jump (1/2 -> 1) travels at speed 2
    assert_eq!(sol.sample_at(-0.2), 1.0);
    assert_eq!(sol.sample_at(0.2), 0.5);
    // jump crossed at t = 0.5, then 0.4 time units at speed 2
    assert_eq!(sol.sample_at(0.79), 0.5);
    assert_eq!(sol.sample_at(0.81), 1.0);
}

#[test]
fn stability_reports_slope() {
    let out = bin()
        .args(["stability", "--experiment", "1", "--n", "32", "--mode", "flux"])
        .args(["--eps", "1e-1,1e-2"])
        .args(["--out-dir", temp_dir("stab").to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("slope ="), "stdout:\n{}", stdout);
}

#[test]
fn errors_exit_nonzero_with_message() {
    let out = bin().args(["solve", "--experiment", "3"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown experiment"));

    let out = bin().args(["solve", "--no-such-flag"]).output().unwrap();
    assert!(!out.status.success());

    let out = bin()
        .args(["solve", "--delta", "0.3"]) // not 1/n
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("reciprocal"));
}
