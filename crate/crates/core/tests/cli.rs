use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equiclone"))
        .args(args)
        .env_remove("EQUICLONE_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fidelity_table_rows() {
    let o = run(&["fidelity-table", "--nmax", "2", "--mmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,m,closed_form,simulated,abs_error,asymptotic_limit")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0].starts_with("1,2,0.8535533906,0.8535533906,"));
    assert!(rows[1].starts_with("1,3,0.8333333333,"));
    assert!(rows[4].starts_with("2,4,0.9330127019,"));
}

#[test]
fn closed_forms_beyond_simulation_cap_leave_blanks() {
    let o = run(&["fidelity-table", "--nmax", "1", "--mmax", "14"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    let cells: Vec<&str> = last.split(',').collect();
    assert_eq!(cells[1], "14");
    assert_eq!(cells[3], "");
    assert_eq!(cells[4], "");
}

#[test]
fn json_output_shape() {
    let o = run(&["optimality", "--mmax", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["command"], "optimality");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[1]["m"], 3);
    assert_eq!(rows[1]["via_a"], serde_json::json!(0.8333333333));
    assert!(rows.iter().all(|r| r["agree"] == true));
}

#[test]
fn output_is_deterministic_and_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("equiclone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sep.csv");
    let args = [
        "separability",
        "--min",
        "-0.5",
        "--max",
        "0.5",
        "--steps",
        "501",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let c = run(&with_out);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn separability_finds_the_ppt_cell() {
    let o = run(&["separability"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ppt: Vec<&str> = text.lines().filter(|l| l.ends_with(",true")).collect();
    assert_eq!(ppt.len(), 1);
    let lo: f64 = ppt[0].split(',').next().unwrap().parse().unwrap();
    let opt = 3.0 - 2.0 * 2f64.sqrt();
    assert!(lo <= opt && opt - lo < 2e-4);
    let zero = text
        .lines()
        .find(|l| l.starts_with("0.0000000000,") || l.starts_with("0,"));
    if let Some(row) = zero {
        assert!(row.split(',').nth(1).unwrap().starts_with("-0.0393446"));
    }
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("PPT window"));
}

#[test]
fn network_verify_passes_and_reports_fidelities() {
    let o = run(&["network-verify", "--grid", "32"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("uqcm,x-z,0,"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("pc-xy,") && l.contains(",0.8535533906,")));
}

#[test]
fn tolerance_env_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_equiclone"))
        .args(["network-verify", "--grid", "8"])
        .env("EQUICLONE_TOL", "1e-40")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_equiclone"))
        .args(["network-verify"])
        .env("EQUICLONE_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["fidelity-table", "--nmax", "3", "--mmax", "3"][..],
        &["fidelity-table", "--mmax", "51"],
        &["separability", "--min", "0.5", "--max", "0.1"],
        &["separability", "--steps", "1"],
        &["optimality", "--mmax", "1"],
        &["network-verify", "--grid", "x"],
        &["no-such-command"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
