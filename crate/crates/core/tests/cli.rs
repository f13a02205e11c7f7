use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;
use std::process::Command;

use hilbert_decision::cli::{run, CSV_HEADER};
use hilbert_decision::ellsberg::{bet_utility, Bet, EllsbergPoint, Urn};
use hilbert_decision::plot::count_region_cells;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/scenarios")
        .join(name)
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hilbert-decision").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn utility_of(stdout: &str, label: &str) -> f64 {
    stdout
        .lines()
        .find_map(|l| {
            let mut parts = l.split_whitespace();
            (parts.next() == Some(label)).then(|| parts.next().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("no row for {label} in\n{stdout}"))
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
    rdr.records().map(Result::unwrap).collect()
}

#[test]
fn eval_urn1_reports_tie() {
    let (code, out, _) = cli(&["eval", fixture("urn1.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((utility_of(&out, "b") - 0.5).abs() < 1e-12);
    assert!((utility_of(&out, "w") - 0.5).abs() < 1e-12);
    assert!(out.contains("choice: b"));
    assert!(out.contains("tie: b, w"));
}

#[test]
fn eval_urn2_without_mind() {
    let (code, out, _) = cli(&["eval", fixture("urn2.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((utility_of(&out, "b") - 0.64).abs() < 1e-12);
    assert!((utility_of(&out, "w") - 0.36).abs() < 1e-12);
    assert!(out.contains("choice: b"));
    assert!(!out.contains("tie"));
}

#[test]
fn eval_urn2_with_mind_matches_closed_form() {
    let (code, out, _) = cli(&["eval", fixture("urn2_mind.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    let p = EllsbergPoint::new(0.8, 0.5, FRAC_PI_2).unwrap();
    for (label, bet) in [("b", Bet::Black), ("w", Bet::White)] {
        let expected = bet_utility(Urn::Unknown, bet, &p).unwrap();
        assert!((utility_of(&out, label) - expected).abs() < 1e-11);
    }
    assert!(out.contains("|c|^2: 0.430000000000"));
}

#[test]
fn eval_even_odd_and_portfolio() {
    let (code, out, _) = cli(&["eval", fixture("even_odd_100.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((utility_of(&out, "even") - 50.0).abs() < 1e-10);
    assert!(out.contains("tie: even, odd"));

    let (code, out, _) = cli(&["eval", fixture("portfolio.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    // log utility, |β₁|² = 0.64: stock-tilted 0.64 ln(149) + 0.36 ln(77)
    let tilted = 0.64 * 149.0f64.ln() + 0.36 * 77.0f64.ln();
    assert!((utility_of(&out, "stock-tilted") - tilted).abs() < 1e-9);
    assert!((utility_of(&out, "all-bond") - 105.0f64.ln()).abs() < 1e-9);
}

#[test]
fn eval_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = cli(&["eval", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 4, "{err}");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"outcomes\": [").unwrap();
    let (code, _, err) = cli(&["eval", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");

    let mismatch = dir.path().join("mismatch.json");
    std::fs::write(
        &mismatch,
        r#"{"outcomes": ["b", "w"], "world_state": [[1.0, 0.0], [0.0, 0.0]],
            "actions": [{"label": "x", "payoffs": [1.0, 2.0, 3.0]}]}"#,
    )
    .unwrap();
    assert_eq!(cli(&["eval", mismatch.to_str().unwrap()]).0, 2);

    let unnormalizable = dir.path().join("zero.json");
    std::fs::write(
        &unnormalizable,
        r#"{"outcomes": ["b", "w"], "world_state": [[0.0, 0.0], [0.0, 0.0]],
            "actions": [{"label": "x", "payoffs": [1.0, 2.0]}]}"#,
    )
    .unwrap();
    assert_eq!(cli(&["eval", unnormalizable.to_str().unwrap()]).0, 3);
}

#[test]
fn region_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("r.csv");
    let svg_path = dir.path().join("r.svg");
    let n = 400;
    let (code, out, err) = cli(&[
        "region",
        "--d",
        "0.5",
        "--pi-units",
        "--grid",
        &n.to_string(),
        "--csv",
        csv_path.to_str().unwrap(),
        "--svg",
        svg_path.to_str().unwrap(),
        "--mc",
        "200000",
        "--seed",
        "5",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("agrees within 3σ"), "{out}");
    let rows = csv_rows(&std::fs::read_to_string(&csv_path).unwrap());
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][0], "region");
    assert_eq!(&rows[0][5], "grid");
    assert_eq!(&rows[1][5], "monte-carlo");
    assert_eq!(&rows[1][6], "5");
    assert!(rows[1][1].contains("ChaCha8Rng"));
    let ratio: f64 = rows[0][2].parse().unwrap();
    assert!((ratio - 0.63).abs() <= 0.01);

    let svg = std::fs::read_to_string(&svg_path).unwrap();
    let (inside, total) = count_region_cells(&svg).unwrap();
    assert_eq!(total, (n * n) as u64);
    assert!((inside as f64 / total as f64 - ratio).abs() <= 2.0 / n as f64);
    assert!(svg.contains("#4477AA"));
}

#[test]
fn region_to_stdout_at_zero_phase() {
    let (code, out, err) = cli(&["region", "--d", "0"]);
    assert_eq!(code, 0);
    let rows = csv_rows(&out);
    let ratio: f64 = rows[0][2].parse().unwrap();
    assert!((ratio - 0.30).abs() <= 0.01);
    assert!(err.contains("ratio"));
}

#[test]
fn region_errors() {
    let dir = tempfile::tempdir().unwrap();
    let unwritable = dir.path().join("no/such/dir/out.csv");
    let (code, _, _) = cli(&["region", "--d", "1", "--grid", "50", "--csv", unwritable.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert_eq!(cli(&["region", "--d", "-0.5"]).0, 1);
    assert_eq!(cli(&["region", "--d", "1", "--grid", "1"]).0, 1);
    assert_eq!(cli(&["region", "--d", "1", "--u0", "2", "--u100", "1"]).0, 1);
    assert_eq!(cli(&["region", "--d", "1", "--mc", "10"]).0, 1);
    assert_eq!(cli(&["region"]).0, 1);
    assert_eq!(cli(&["frobnicate"]).0, 1);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn volume_reports_band_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let slices = dir.path().join("slices.csv");
    for path in [&a, &b] {
        let (code, out, err) = cli(&[
            "volume",
            "--grid",
            "60",
            "--mc",
            "100000",
            "--seed",
            "42",
            "--csv",
            path.to_str().unwrap(),
            "--slices",
            slices.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("57.2%..57.9%"), "{out}");
        assert!(out.contains("volume ratio"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let slice_rows = csv_rows(&std::fs::read_to_string(&slices).unwrap());
    assert_eq!(slice_rows.len(), 60);
    assert!(slice_rows.iter().all(|r| &r[0] == "volume-slice"));
}

#[test]
fn volume_on_degenerate_grid() {
    let (code, out, _) = cli(&["volume", "--grid", "2"]);
    assert_eq!(code, 0);
    let line = out.lines().find(|l| l.starts_with("volume ratio")).unwrap();
    let ratio: f64 = line.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!((0.0..=1.0).contains(&ratio));
    assert!(line.contains("refinement error"));
}

#[test]
fn sweep_rows_and_advisory() {
    let (code, out, err) = cli(&["sweep", "--step", "0.125", "--pi-units", "--grid", "100"]);
    assert_eq!(code, 0);
    assert_eq!(csv_rows(&out).len(), 9);
    assert!(err.is_empty());

    let (code, out, err) = cli(&["sweep", "--d", "0,0.25,0.5,0.75,1", "--pi-units", "--grid", "200"]);
    assert_eq!(code, 0);
    let ratios: Vec<f64> = csv_rows(&out).iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(ratios.len(), 5);
    assert!(ratios.windows(2).all(|w| w[0] < w[1]));
    assert!(err.contains("strictly increasing"), "{err}");

    assert_eq!(cli(&["sweep", "--d", "0,4"]).0, 1);
    assert_eq!(cli(&["sweep"]).0, 1);
    assert_eq!(cli(&["sweep", "--step", "0"]).0, 1);
}

#[test]
fn discrete_urn_and_utilities_flags() {
    let (code, out, _) = cli(&[
        "region", "--d", "0.5", "--pi-units", "--grid", "200", "--discrete-urn", "100", "--u0", "-1", "--u100", "3",
    ]);
    assert_eq!(code, 0);
    let rows = csv_rows(&out);
    assert!(rows[0][1].contains("discrete_urn=100"));
    assert!(rows[0][1].contains("u0=-1;u100=3"));
    assert_eq!(&rows[0][4], (101 * 200 + 101 * 100).to_string().as_str());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hilbert-decision");
    let ok = Command::new(bin)
        .args(["eval", fixture("urn1.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("tie: b, w"));
    let usage = Command::new(bin).args(["sweep", "--d", "9"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    let missing = Command::new(bin).args(["eval", "/nonexistent/x.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(4));
}
