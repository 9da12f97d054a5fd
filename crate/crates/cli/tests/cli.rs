use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hingecurv::{fixtures, io::to_off};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hingecurv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_column(table: &str, name: &str) -> Vec<Option<f64>> {
    let mut lines = table.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| {
            let cell = l.split(',').nth(i).unwrap();
            (!cell.is_empty()).then(|| cell.parse().unwrap())
        })
        .collect()
}

#[test]
fn generate_writes_an_icosahedron() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ico.off");
    let o = run(&["generate", "icosphere", "--r", "1", "--sub", "0", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("OFF\n12 20 0\n"));
    assert!(stderr(&o).contains("V=12 E=30 F=20"));
}

#[test]
fn generate_cylinder_summarizes_table_angles() {
    let o = run(&["generate", "cylinder", "--k", "16", "--r", "1", "--p", "0.5", "--rings", "8"]);
    assert!(o.status.success());
    let summary = stderr(&o);
    assert!(summary.contains(&format!("{:+.12} x 112", -std::f64::consts::TAU / 16.0)), "{summary}");
    assert!(summary.contains("+0.000000000000 x 208"), "{summary}");
    assert!(stdout(&o).starts_with("OFF\n128 224 0\n"));
}

#[test]
fn invalid_fixture_is_a_validation_failure() {
    let o = run(&["generate", "circle", "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("k >= 3"));
}

#[test]
fn icosphere_report_has_constant_mean_curvature() {
    let o = run(&["curvature", "--fixture", "icosphere", "--format", "json"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let vertices = report["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 12);
    for v in vertices {
        assert!((v["mean_curvature"].as_f64().unwrap() + 2.09851).abs() < 1e-4);
    }
    assert!(stderr(&o).contains("Gauss-Bonnet"));
}

#[test]
fn cylinder_csv_has_three_alpha_classes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cyl.csv");
    let o = run(&["curvature", "--fixture", "cylinder", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let hinges = fs::read_to_string(dir.path().join("cyl_hinges.csv")).unwrap();
    let theta = (std::f64::consts::TAU / 16.0 / 0.5).atan();
    let classes = [0.0, -1.0, -theta.cos().powi(2)];
    let alphas: Vec<f64> = csv_column(&hinges, "alpha").into_iter().flatten().collect();
    assert!(!alphas.is_empty());
    for a in &alphas {
        assert!(classes.iter().any(|c| (a - c).abs() < 1e-12), "{a}");
    }
    for c in classes {
        assert!(alphas.iter().any(|a| (a - c).abs() < 1e-12));
    }
    assert!(dir.path().join("cyl_vertices.csv").exists());
    assert!(dir.path().join("cyl_triangles.csv").exists());
}

#[test]
fn flat_grid_columns_are_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("grid.off");
    fs::write(&input, to_off(&fixtures::flat_grid(5, 4, 0.25))).unwrap();
    let o = run(&["curvature", input.to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let tables: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(tables.len(), 3);
    let columns = [
        (tables[0], "mean_curvature"),
        (tables[0], "cotan"),
        (tables[1], "angle"),
        (tables[1], "alpha"),
        (tables[2], "k11"),
        (tables[2], "kmax"),
    ];
    for (table, name) in columns {
        let values: Vec<f64> = csv_column(table, name).into_iter().flatten().collect();
        assert!(!values.is_empty(), "{name}");
        assert!(values.iter().all(|v| *v == 0.0), "{name}: {values:?}");
    }
}

fn compare_row(o: &Output, estimator: &str) -> f64 {
    let text = stdout(o);
    let max = csv_column(&text, "max_relative_error");
    let names: Vec<String> = text.lines().skip(1).map(|l| l.split(',').next().unwrap().to_string()).collect();
    max[names.iter().position(|n| n == estimator).unwrap()].unwrap()
}

#[test]
fn compare_against_references() {
    let o = run(&["compare", "--fixture", "circle", "--k", "64", "--reference", "circle:1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(compare_row(&o, "mean_curvature") < 1e-13);

    let o = run(&["compare", "--fixture", "icosphere", "--reference", "sphere:1"]);
    assert!((compare_row(&o, "mean_curvature") - 0.04926).abs() < 1e-4);

    let o = run(&["compare", "--fixture", "cylinder", "--reference", "cylinder"]);
    assert!(o.status.success());
    assert!(compare_row(&o, "mean_curvature") < 1e-12);
    assert!(compare_row(&o, "alpha") < 1e-12);
}

#[test]
fn compare_needs_a_radius_for_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ico.off");
    fs::write(&input, to_off(&fixtures::gen_icosphere(1.0, 0).unwrap())).unwrap();
    let o = run(&["compare", input.to_str().unwrap(), "--reference", "sphere"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing reference radius"));
}

#[test]
fn converge_checks_monotonicity() {
    for (family, levels) in [("circle", "4,8,16"), ("cylinder", "8,16,32"), ("icosphere", "0,1,2")] {
        let o = run(&["converge", "--family", family, "--levels", levels]);
        assert!(o.status.success(), "{family}: {}", stderr(&o));
        let rows = csv_column(&stdout(&o), "max_h_error");
        assert_eq!(rows.len(), 3);
        if family != "icosphere" {
            assert!(rows.iter().all(|e| e.unwrap() < 1e-12));
        }
    }
    let o = run(&["converge", "--family", "icosphere", "--levels", "0,1,2", "--dual", "barycentric"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic_and_independent_of_parallelism() {
    let args = ["curvature", "--fixture", "icosphere", "--sub", "2", "--format", "csv"];
    let a = run(&args);
    let b = run(&args);
    let mut parallel = args.to_vec();
    parallel.push("--parallel");
    let c = run(&parallel);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn io_problems_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.off");
    assert_eq!(run(&["curvature", missing.to_str().unwrap()]).status.code(), Some(2));

    let broken = dir.path().join("broken.off");
    fs::write(&broken, "OFF\n3 1 0\n0 0 0\n").unwrap();
    let o = run(&["curvature", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":4:") || stderr(&o).contains(":3:"), "{}", stderr(&o));

    let o = run(&["curvature", "--fixture", "icosphere", "--format", "ply"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ply_report_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ico.ply");
    let o = run(&["curvature", "--fixture", "icosphere", "--format", "ply", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let loaded = hingecurv::io::load_mesh(Path::new(&out)).unwrap();
    assert_eq!(loaded.mesh.vertex_count(), 12);
}
