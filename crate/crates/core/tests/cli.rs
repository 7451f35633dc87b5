use std::process::{Command, Output};

use serde_json::Value;

fn hypvis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypvis"))
        .args(args)
        .env_remove("HYPVIS_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = hypvis(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn point(v: &Value) -> (f64, f64) {
    (num(&v[0]), num(&v[1]))
}

#[test]
fn dist_reference_values() {
    let v = json(&["dist", "2i", "-1+1i"]);
    assert!((num(&v["visual_angle"]["value"]) - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert_eq!(v["visual_angle"]["branch"], "acute_formula");

    let v = json(&["dist", "1i", "2i"]);
    assert!((num(&v["rho"]) - 2f64.ln()).abs() < 1e-14);
    assert_eq!(v["visual_angle"]["branch"], "vertical_case");

    let v = json(&["dist", "1i", "1i"]);
    for key in ["rho", "chordal"] {
        assert_eq!(num(&v[key]), 0.0);
    }
    assert_eq!(num(&v["visual_angle"]["value"]), 0.0);
    assert_eq!(num(&v["bounds"]["upper"]), 0.0);
}

#[test]
fn points_reference_center() {
    let v = json(&["points", "2i", "-3+1i"]);
    let s5 = 5f64.sqrt();
    let (re, im) = point(&v["p"]["closed_form"]);
    assert!((re - (-6.0 + 2.0 * s5)).abs() < 1e-12);
    assert!((im - (15.0 - 6.0 * s5)).abs() < 1e-12);
}

#[test]
fn points_json_residuals_round_trip() {
    let v = json(&["points", "2i", "-3+1i"]);
    let fields = v.as_object().unwrap();
    assert!(!fields.is_empty());
    for (name, row) in fields {
        if row["closed_form"].is_null() || row["definitional"].is_null() {
            continue;
        }
        let (a, b) = (point(&row["closed_form"]), point(&row["definitional"]));
        let recomputed = (a.0 - b.0).hypot(a.1 - b.1);
        let scale = a.0.hypot(a.1).max(1.0);
        assert!(
            (recomputed - num(&row["residual"])).abs() < 1e-13 * scale,
            "{name}"
        );
    }
}

#[test]
fn points_on_unit_pair_center_at_origin() {
    let a = format!("{}+{}i", 0.4f64.cos(), 0.4f64.sin());
    let b = format!("{}+{}i", 2.0f64.cos(), 2.0f64.sin());
    let v = json(&["points", &a, &b]);
    let (re, im) = point(&v["u1"]["closed_form"]);
    assert!(re.abs() < 1e-12 && im == 0.0);
}

#[test]
fn points_on_vertical_pair_is_partial() {
    let v = json(&["points", "1i", "2i"]);
    let missing = |f: &str| v.get(f).is_none_or(|r| r["closed_form"].is_null());
    for f in ["u1", "b_star", "s", "v"] {
        assert!(missing(f), "{f}");
    }
    for f in ["a_star", "d", "f", "m", "p", "q", "u"] {
        assert!(!missing(f), "{f}");
    }
}

#[test]
fn figures() {
    let v = json(&["figure", "fig3", "2i", "-1+1i"]);
    let labels: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["label"].as_str().unwrap())
        .collect();
    for l in ["d", "p", "q", "m"] {
        assert!(labels.contains(&l), "{l}");
    }

    let a = format!("{}+{}i", 0.3f64.cos(), 0.3f64.sin());
    let b = format!("{}+{}i", 2.5f64.cos(), 2.5f64.sin());
    let v = json(&["figure", "fig5", &a, &b]);
    let x = |label: &str| {
        num(&v
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["label"] == label)
            .unwrap()["x1"])
    };
    for l in ["s", "m", "v"] {
        assert!((x(l) - x("u")).abs() < 1e-12, "{l}");
    }

    let out = hypvis(&["figure", "fig9", "2i", "-1+1i"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fig9"));
}

#[test]
fn holder_examples() {
    let v = json(&["holder", "1", "0.5"]);
    assert!((num(&v["bound"]) - 0.5f64.tan()).abs() < 1e-14);
    assert!((num(&v["sharp"]) - 0.5f64.tan()).abs() < 1e-14);

    let v = json(&["holder", "2", "0.7853981634"]);
    assert!((num(&v["bound"]) - num(&v["lambda"]).sqrt()).abs() < 1e-9);
    assert!(v.get("sharp").is_none());

    assert_eq!(hypvis(&["holder", "2", "1.6"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(hypvis(&["dist", "2i", "-1+1i"]).status.code(), Some(0));
    assert_eq!(hypvis(&["dist", "2x", "1i"]).status.code(), Some(2));
    assert_eq!(hypvis(&["dist", "1", "1i"]).status.code(), Some(2));
    assert_eq!(hypvis(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        hypvis(&["--tol", "bogus=1", "verify", "oracle"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hypvis(&["--samples", "0", "verify", "oracle"])
            .status
            .code(),
        Some(2)
    );
    // A negative tolerance cannot be met.
    let out = hypvis(&[
        "--samples",
        "20",
        "--tol",
        "oracle.oracle=-1",
        "verify",
        "oracle",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_oracle_small_sample() {
    let v = json(&["--samples", "100", "verify", "oracle"]);
    assert_eq!(v["pass"], true);
    let check = &v["suites"][0]["checks"][0];
    assert_eq!(check["name"], "oracle");
    assert!(num(&check["max_residual"]) < 1e-6);
}

#[test]
fn verify_holder_confirms_sharp_case() {
    let out = hypvis(&["--samples", "200", "verify", "holder"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_all_reports_the_mu_round_trip() {
    let out = hypvis(&["--format", "json", "--samples", "200", "verify", "all"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let mut failing = Vec::new();
    for suite in v["suites"].as_array().unwrap() {
        for check in suite["checks"].as_array().unwrap() {
            if check["pass"] == false {
                failing.push(format!(
                    "{}.{}",
                    suite["suite"].as_str().unwrap(),
                    check["name"].as_str().unwrap()
                ));
            }
        }
    }
    assert_eq!(failing, ["distortion.mu_round_trip"]);
}

#[test]
fn identical_seeds_give_identical_bytes() {
    for format in ["json", "csv", "text"] {
        let args = [
            "--format",
            format,
            "--seed",
            "9",
            "--samples",
            "50",
            "verify",
            "catalog",
        ];
        assert_eq!(hypvis(&args).stdout, hypvis(&args).stdout, "{format}");
    }
    let other = hypvis(&[
        "--format",
        "json",
        "--seed",
        "10",
        "--samples",
        "50",
        "verify",
        "catalog",
    ]);
    assert_ne!(
        other.stdout,
        hypvis(&[
            "--format",
            "json",
            "--seed",
            "9",
            "--samples",
            "50",
            "verify",
            "catalog"
        ])
        .stdout
    );
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypvis"))
        .args(["dist", "2i", "-1+1i"])
        .env("HYPVIS_FORMAT", "json")
        .output()
        .unwrap();
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
}
