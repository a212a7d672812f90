//! Replays the fuzz seeds through the same round-trip checks as the fuzz targets.

use freeclt::algebra::{format_rational, parse_rational};
use freeclt::wire::*;
use std::path::PathBuf;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn accepted(target: &str, ok: impl Fn(&str) -> bool) -> Vec<String> {
    seeds(target).into_iter().filter(|(_, text)| ok(text)).map(|(name, _)| name).collect()
}

#[test]
fn sequence_seeds() {
    let ok = accepted("parse_sequence", |t| match parse_sequence(t) {
        Ok(s) => {
            assert_eq!(parse_sequence(&sequence_to_json(&s)).unwrap(), s);
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, ["bernoulli_free", "delta2_classical", "sqrt2_entries"]);
}

#[test]
fn descriptor_seeds() {
    let ok = accepted("parse_descriptor", |t| match parse_descriptor(t) {
        Ok(m) => {
            assert_eq!(parse_descriptor(&descriptor_to_json(&m)).unwrap(), m);
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, ["atoms", "cauchy", "chebyshev", "mixture", "semicircle", "table"]);
}

#[test]
fn grid_seeds() {
    let ok = accepted("parse_grid", |t| match parse_grid(t) {
        Ok(g) => {
            assert_eq!(parse_grid(&grid_to_string(&g)).unwrap(), g);
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, ["basic", "exponent", "small"]);
}

#[test]
fn complex_and_polynomial_seeds() {
    assert_eq!(accepted("parse_complex", |t| parse_complex(t).is_ok()), ["basic", "negative"]);
    let ok = accepted("parse_polynomial", |t| match parse_polynomial(t) {
        Ok(p) => {
            assert_eq!(parse_polynomial(&polynomial_to_string(&p)).unwrap(), p);
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, ["basic", "constant"]);
}

#[test]
fn rational_seeds() {
    let ok = accepted("parse_rational", |t| match parse_rational(t) {
        Some(q) => {
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
            true
        }
        None => false,
    });
    assert!(ok.contains(&"big".to_string()) && ok.contains(&"fraction".to_string()) && ok.contains(&"integer".to_string()));
    assert!(!ok.contains(&"zero_den".to_string()));
}
