//! Text formats shared with the command line tool: sequence and measure JSON,
//! grid/point/polynomial flags, and CSV output.
//!
//! Every parser reports malformed input as [`Error::Schema`] with a path to the
//! offending field, such as `entries[3][0]`.

use crate::algebra::{format_rational, parse_rational};
use crate::analytic::{AnalyticMeasure, Complex64, Grid, MixtureComponent, Polynomial};
use crate::clt::{CltReport, EigenVerdict, LinMatrix};
use crate::error::{Error, Result};
use crate::{Flavor, Kind, QSqrt2, Sequence};
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::{json, Value};

/// Upper bound on JSON input size accepted by the parsers.
pub const MAX_INPUT_BYTES: usize = 16 << 20;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceWire {
    flavor: Flavor,
    kind: Kind,
    entries: Vec<[String; 2]>,
}

fn schema_from_json(err: serde_path_to_error::Error<serde_json::Error>) -> Error {
    let path = err.path().to_string();
    let message = err.inner().to_string();
    let field = if path == "." {
        message
            .strip_prefix("missing field `")
            .and_then(|rest| rest.split('`').next())
            .unwrap_or("$")
            .to_string()
    } else {
        path
    };
    Error::Schema { field, message }
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(Error::schema("$", format!("input exceeds {MAX_INPUT_BYTES} bytes")));
    }
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(schema_from_json)?;
    de.end().map_err(|e| Error::schema("$", e.to_string()))?;
    Ok(value)
}

/// Parses `{"flavor": …, "kind": …, "entries": [["p/q", "r/s"], …]}` where
/// each entry is `p/q + (r/s)·√2`.
pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let wire: SequenceWire = from_json(text)?;
    if wire.entries.is_empty() {
        return Err(Error::schema("entries", "must be nonempty"));
    }
    let entries = wire
        .entries
        .iter()
        .enumerate()
        .map(|(i, [a, b])| {
            let part = |j: usize, s: &str| {
                parse_rational(s).ok_or_else(|| {
                    Error::schema(format!("entries[{i}][{j}]"), format!("`{s}` is not a rational p/q"))
                })
            };
            Ok(QSqrt2::new(part(0, a)?, part(1, b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Sequence::new(wire.flavor, wire.kind, entries)
}

fn sequence_wire(seq: &Sequence) -> SequenceWire {
    SequenceWire {
        flavor: seq.flavor(),
        kind: seq.kind(),
        entries: pairs(seq.entries()),
    }
}

/// Compact JSON in the format read by [`parse_sequence`].
pub fn sequence_to_json(seq: &Sequence) -> String {
    serde_json::to_string(&sequence_wire(seq)).expect("sequences serialize")
}

fn pairs(values: &[QSqrt2]) -> Vec<[String; 2]> {
    values.iter().map(QSqrt2::to_pair).collect()
}

pub fn clt_report_to_json(report: &CltReport) -> String {
    let history: Vec<Value> = report
        .history
        .iter()
        .map(|s| {
            json!({
                "step": s.step,
                "moments": pairs(s.moments.entries()),
                "cumulants": pairs(s.cumulants.entries()),
                "gap": pairs(&s.gap),
            })
        })
        .collect();
    json!({
        "flavor": report.flavor,
        "steps": report.steps,
        "decay_exact": report.decay_exact,
        "gaps_strictly_decreasing": report.gaps_strictly_decreasing(),
        "limit": serde_json::to_value(sequence_wire(&report.last().moments)).expect("sequences serialize"),
        "history": history,
    })
    .to_string()
}

pub fn eigen_verdicts_to_json(flavor: Flavor, verdicts: &[EigenVerdict]) -> String {
    let rows: Vec<Value> = verdicts
        .iter()
        .map(|v| json!({"column": v.column, "eigenvalue": v.eigenvalue.to_pair(), "exact": v.exact}))
        .collect();
    json!({
        "flavor": flavor,
        "all_exact": verdicts.iter().all(|v| v.exact),
        "columns": rows,
    })
    .to_string()
}

/// Rows `a_{i,1..N}` as comma-separated rationals, zero-padded to `N` columns.
pub fn matrix_csv(matrix: &LinMatrix) -> String {
    let n = matrix.size();
    let mut out = String::new();
    for i in 1..=n {
        let row: Vec<String> = (1..=n).map(|j| format_cell(&matrix.get(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn format_cell(r: &crate::Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_rational(r)
    }
}

/// The lower triangle as JSON: `{"flavor": …, "size": N, "rows": [["1"], …]}`.
pub fn matrix_to_json(matrix: &LinMatrix) -> String {
    let rows: Vec<Vec<String>> = (1..=matrix.size())
        .map(|i| matrix.row(i).iter().map(format_rational).collect())
        .collect();
    json!({"flavor": matrix.flavor(), "size": matrix.size(), "rows": rows}).to_string()
}

/// Parses a measure descriptor such as `{"type":"semicircle","center":0,"radius":2}`
/// and validates its parameters.
pub fn parse_descriptor(text: &str) -> Result<AnalyticMeasure> {
    let value: Value = from_json(text)?;
    let m = measure_from_value(value, "")?;
    m.validate()?;
    Ok(m)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentWire {
    weight: f64,
    measure: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixtureWire {
    components: Vec<ComponentWire>,
}

fn join(prefix: &str, field: &str) -> String {
    match (prefix.is_empty(), field) {
        (true, "." | "$") => "$".to_string(),
        (true, _) => field.to_string(),
        (false, "." | "$") => prefix.to_string(),
        (false, _) if field.starts_with('[') => format!("{prefix}{field}"),
        (false, _) => format!("{prefix}.{field}"),
    }
}

fn from_value<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let message = e.inner().to_string();
        let field = if path == "." {
            message
                .strip_prefix("missing field `")
                .and_then(|rest| rest.split('`').next())
                .unwrap_or(".")
                .to_string()
        } else {
            path
        };
        Error::Schema {
            field: join(prefix, &field),
            message,
        }
    })
}

// The enum is tagged by `type`; serde buffers tagged content and loses field
// paths, so the tag is dispatched by hand.
fn measure_from_value(value: Value, prefix: &str) -> Result<AnalyticMeasure> {
    let Value::Object(mut map) = value else {
        return Err(Error::schema(join(prefix, "$"), "expected an object"));
    };
    let tag = match map.remove("type") {
        Some(Value::String(t)) => t,
        Some(_) => return Err(Error::schema(join(prefix, "type"), "expected a string")),
        None => return Err(Error::schema(join(prefix, "type"), "missing field `type`")),
    };
    if tag == "mixture" {
        let wire: MixtureWire = from_value(Value::Object(map), prefix)?;
        let components = wire
            .components
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let measure = measure_from_value(c.measure, &join(prefix, &format!("components[{i}].measure")))?;
                Ok(MixtureComponent {
                    weight: c.weight,
                    measure,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(AnalyticMeasure::Mixture { components });
    }
    if !matches!(
        tag.as_str(),
        "semicircle" | "cauchy_law" | "cauchy" | "chebyshev_eigen" | "density_table" | "atom_mixture" | "atoms"
    ) {
        return Err(Error::schema(join(prefix, "type"), format!("unknown measure type `{tag}`")));
    }
    // Validate the fields against the variant first so errors carry paths,
    // then build the enum through its own derive.
    match tag.as_str() {
        "semicircle" => from_value::<SemicircleWire>(Value::Object(map.clone()), prefix).map(|_| ())?,
        "cauchy_law" | "cauchy" => from_value::<CauchyWire>(Value::Object(map.clone()), prefix).map(|_| ())?,
        "chebyshev_eigen" => from_value::<ChebyshevWire>(Value::Object(map.clone()), prefix).map(|_| ())?,
        "density_table" => from_value::<TableWire>(Value::Object(map.clone()), prefix).map(|_| ())?,
        _ => from_value::<AtomsWire>(Value::Object(map.clone()), prefix).map(|_| ())?,
    }
    map.insert("type".into(), Value::String(tag));
    from_value(Value::Object(map), prefix)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct SemicircleWire {
    center: f64,
    radius: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct CauchyWire {
    location: f64,
    scale: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct ChebyshevWire {
    n: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct TableWire {
    grid: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct AtomsWire {
    points: Vec<f64>,
    weights: Vec<f64>,
}

pub fn descriptor_to_json(m: &AnalyticMeasure) -> String {
    serde_json::to_string(m).expect("descriptors serialize")
}

fn parse_float(field: &str, s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::schema(field, format!("`{s}` is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::schema(field, format!("`{s}` is not finite")))
    }
}

/// Parses `lo:hi:n`.
pub fn parse_grid(text: &str) -> Result<Grid> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(Error::schema("grid", "expected lo:hi:n"));
    };
    let lo = parse_float("grid.lo", lo)?;
    let hi = parse_float("grid.hi", hi)?;
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| Error::schema("grid.n", format!("`{n}` is not a point count")))?;
    if n > 1_000_000 {
        return Err(Error::schema("grid.n", "at most 1000000 points"));
    }
    Grid::new(lo, hi, n).map_err(|e| Error::schema("grid", e.to_string()))
}

pub fn grid_to_string(grid: &Grid) -> String {
    format!("{}:{}:{}", grid.lo, grid.hi, grid.n)
}

/// Parses `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let Some((re, im)) = text.split_once(',') else {
        return Err(Error::schema("z", "expected re,im"));
    };
    Ok(Complex64::new(parse_float("z.re", re)?, parse_float("z.im", im)?))
}

/// Parses `poly:c0,c1,…` into `c0 + c1·w + …`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let Some(body) = text.strip_prefix("poly:") else {
        return Err(Error::schema("psi", "expected poly:c0,c1,..."));
    };
    let coeffs = body
        .split(',')
        .enumerate()
        .map(|(i, c)| parse_float(&format!("psi[{i}]"), c))
        .collect::<Result<Vec<f64>>>()?;
    if coeffs.len() > 64 {
        return Err(Error::schema("psi", "at most 64 coefficients"));
    }
    Ok(Polynomial::from_real(&coeffs))
}

pub fn polynomial_to_string(p: &Polynomial) -> String {
    let cs: Vec<String> = p.coeffs.iter().map(|c| format!("{}", c.re)).collect();
    format!("poly:{}", cs.join(","))
}

/// 17 significant digits; parses back to the same `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV with header `x,density`.
pub fn density_csv(points: &[f64], values: &[f64]) -> String {
    let mut out = String::from("x,density\n");
    for (x, v) in points.iter().zip(values) {
        out.push_str(&format_f64(*x));
        out.push(',');
        out.push_str(&format_f64(*v));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::clt::build_lin_matrix;

    #[test]
    fn sequence_round_trip() {
        let text = r#"{"flavor":"free","kind":"moments","entries":[["0/1","0/1"],["1/1","0/1"],["-3/4","1/2"]]}"#;
        let seq = parse_sequence(text).unwrap();
        assert_eq!(seq.get(3).unwrap(), &QSqrt2::new(rational(-3, 4), rational(1, 2)));
        assert_eq!(sequence_to_json(&seq), text);
        assert_eq!(parse_sequence(&sequence_to_json(&seq)).unwrap(), seq);
    }

    #[test]
    fn schema_errors_name_fields() {
        let field = |text: &str| match parse_sequence(text) {
            Err(Error::Schema { field, .. }) => field,
            other => panic!("{other:?}"),
        };
        assert_eq!(
            field(r#"{"flavor":"free","kind":"moments","entries":[["0","0"],["1","0"],["2","0"],["x","0"]]}"#),
            "entries[3][0]"
        );
        assert_eq!(field(r#"{"flavor":"boolean","kind":"moments","entries":[["0","0"]]}"#), "flavor");
        assert_eq!(field(r#"{"flavor":"free","entries":[["0","0"]]}"#), "kind");
        assert_eq!(field(r#"{"flavor":"free","kind":"moments","entries":[]}"#), "entries");
        assert_eq!(field(r#"{"flavor":"free","kind":"moments","entries":[["1/0","0"]]}"#), "entries[0][0]");
        assert_eq!(field(r#"{"flavor":"free","kind":"moments","entries":[["1"]]}"#), "entries[0]");
        assert!(parse_sequence("{} trailing").is_err());
    }

    #[test]
    fn descriptors() {
        let m = parse_descriptor(r#"{"type":"semicircle","center":0,"radius":2}"#).unwrap();
        assert_eq!(m, AnalyticMeasure::standard_semicircle());
        assert_eq!(parse_descriptor(&descriptor_to_json(&m)).unwrap(), m);
        let c = parse_descriptor(r#"{"type":"cauchy","location":0,"scale":1}"#).unwrap();
        assert_eq!(c, AnalyticMeasure::standard_cauchy());
        match parse_descriptor(r#"{"type":"semicircle","center":0,"radius":-2}"#) {
            Err(Error::Schema { field, .. }) => assert_eq!(field, "radius"),
            other => panic!("{other:?}"),
        }
        match parse_descriptor(r#"{"type":"mixture","components":[{"weight":1,"measure":{"type":"atoms","points":[0],"weights":"x"}}]}"#) {
            Err(Error::Schema { field, .. }) => assert_eq!(field, "components[0].measure.weights"),
            other => panic!("{other:?}"),
        }
        assert!(parse_descriptor(r#"{"type":"levy"}"#).is_err());
    }

    #[test]
    fn flags() {
        let g = parse_grid("-3:3:601").unwrap();
        assert_eq!((g.lo, g.hi, g.n), (-3.0, 3.0, 601));
        assert_eq!(parse_grid(&grid_to_string(&g)).unwrap(), g);
        for bad in ["", "1:2", "2:1:5", "0:1:1", "a:1:3", "0:inf:3", "0:1:-2"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
        assert_eq!(parse_complex("1,2").unwrap(), Complex64::new(1.0, 2.0));
        assert!(parse_complex("1").is_err());
        let p = parse_polynomial("poly:0,0,1").unwrap();
        assert_eq!(polynomial_to_string(&p), "poly:0,0,1");
        assert!(parse_polynomial("0,1").is_err());
        assert!(parse_polynomial("poly:").is_err());
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn matrix_csv_is_padded() {
        let m = build_lin_matrix(Flavor::Free, 6).unwrap();
        let csv = matrix_csv(&m);
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[4], "10,0,5,0,1,0");
    }
}
