//! JSON formats: points files, curve sets and count reports.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use tropcount_core::counting::{CountReport, MarkedCurve};
use tropcount_core::incidence::RealPointConfig;
use tropcount_core::tropical::{
    curve_mikhalkin_mults, curve_welschinger_mult, BoundedEdge, Degree, EdgeId, Point, TropicalCurve, TropicalGraph,
    UnboundedEdge,
};

use crate::CliError;

pub const SCHEMA: &str = "tropcount/1";

pub fn rational(s: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(s.trim()).map_err(|_| CliError::Input(format!("not a rational number: {s:?}")))
}

fn rational_value(v: &Value) -> Result<BigRational, CliError> {
    match v {
        Value::String(s) => rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from(BigInt::from(n.as_i64().unwrap()))),
        other => Err(CliError::Input(format!("expected a \"p/q\" string, got {other}"))),
    }
}

fn point_value(v: &Value) -> Result<Point, CliError> {
    let coords = v.as_array().ok_or_else(|| CliError::Input(format!("expected a point, got {v}")))?;
    coords.iter().map(rational_value).collect()
}

pub fn point_json(p: &[BigRational]) -> Value {
    Value::Array(p.iter().map(|x| Value::String(x.to_string())).collect())
}

/// One sign string per point, such as `"+-"`.
pub fn parse_signs(s: &str) -> Result<Vec<i8>, CliError> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(CliError::Input(format!("bad sign {c:?} in {s:?}"))),
        })
        .collect()
}

fn sign_string(s: &[i8]) -> String {
    s.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect()
}

/// Contents of a points file.
#[derive(Debug)]
pub struct PointsFile {
    pub points: Vec<Point>,
    pub signs: Option<Vec<Vec<i8>>>,
}

fn object(v: &Value) -> Result<&Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| CliError::Input("expected a JSON object".into()))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    m.get(key).ok_or_else(|| CliError::Input(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| CliError::Input(format!("{what} must be an array")))
}

fn uint(v: &Value, what: &str) -> Result<u64, CliError> {
    v.as_u64().ok_or_else(|| CliError::Input(format!("{what} must be a non-negative integer")))
}

fn int_vec(v: &Value, what: &str) -> Result<Vec<i64>, CliError> {
    array(v, what)?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| CliError::Input(format!("{what} must hold integers"))))
        .collect()
}

pub fn parse_points(text: &str) -> Result<PointsFile, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("points file: {e}")))?;
    let m = object(&v)?;
    let points = array(field(m, "points")?, "points")?.iter().map(point_value).collect::<Result<Vec<_>, _>>()?;
    let signs = match m.get("signs") {
        None | Some(Value::Null) => None,
        Some(s) => Some(
            array(s, "signs")?
                .iter()
                .map(|x| x.as_str().ok_or_else(|| CliError::Input("signs must be strings".into())).and_then(parse_signs))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok(PointsFile { points, signs })
}

pub fn degree_json(d: &Degree) -> Value {
    Value::Array(d.entries.iter().map(|(v, m)| json!({ "direction": v, "multiplicity": m })).collect())
}

fn edge_json(e: EdgeId) -> Value {
    Value::String(e.to_string())
}

fn parse_edge(v: &Value) -> Result<EdgeId, CliError> {
    let s = v.as_str().ok_or_else(|| CliError::Input("marks must be edge names".into()))?;
    let bad = || CliError::Input(format!("bad edge name {s:?}"));
    let (kind, idx) = s.split_at(1.min(s.len()));
    let idx: usize = idx.parse().map_err(|_| bad())?;
    match kind {
        "b" => Ok(EdgeId::Bounded(idx)),
        "u" => Ok(EdgeId::Unbounded(idx)),
        _ => Err(bad()),
    }
}

pub fn curve_json(c: &TropicalCurve) -> Value {
    let g = &c.graph;
    let mut out = json!({
        "vertices": c.positions.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
        "bounded": g.bounded.iter().map(|b| json!({ "tail": b.tail, "head": b.head, "weight": b.weight })).collect::<Vec<_>>(),
        "unbounded": g.unbounded.iter().map(|u| json!({ "vertex": u.vertex, "direction": u.direction, "weight": u.weight })).collect::<Vec<_>>(),
        "marks": g.marked.iter().map(|&e| edge_json(e)).collect::<Vec<_>>(),
    });
    if c.n == 2 && g.is_trivalent() {
        if let (Ok((m, _)), Ok(r)) = (curve_mikhalkin_mults(c), curve_welschinger_mult(c)) {
            out["multiplicity"] = Value::String(m.to_string());
            out["mult_r"] = json!(r);
        }
    }
    out
}

fn parse_curve(v: &Value) -> Result<TropicalCurve, CliError> {
    let m = object(v)?;
    let positions = array(field(m, "vertices")?, "vertices")?.iter().map(point_value).collect::<Result<Vec<_>, _>>()?;
    let n = positions.first().map_or(2, Vec::len);
    let bounded = array(field(m, "bounded")?, "bounded")?
        .iter()
        .map(|b| {
            let b = object(b)?;
            Ok(BoundedEdge {
                tail: uint(field(b, "tail")?, "tail")? as usize,
                head: uint(field(b, "head")?, "head")? as usize,
                weight: uint(field(b, "weight")?, "weight")?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let unbounded = array(field(m, "unbounded")?, "unbounded")?
        .iter()
        .map(|u| {
            let u = object(u)?;
            Ok(UnboundedEdge {
                vertex: uint(field(u, "vertex")?, "vertex")? as usize,
                direction: int_vec(field(u, "direction")?, "direction")?,
                weight: uint(field(u, "weight")?, "weight")?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let marked = match m.get("marks") {
        Some(v) => array(v, "marks")?.iter().map(parse_edge).collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let graph = TropicalGraph { vertex_count: positions.len(), bounded, unbounded, marked };
    TropicalCurve::new(graph, positions, n).map_err(|e| CliError::Input(format!("curve: {e}")))
}

/// A curve set as written by `enumerate`.
#[derive(Debug)]
pub struct CurveSet {
    pub points: Vec<Point>,
    pub signs: Option<Vec<Vec<i8>>>,
    pub curves: Vec<MarkedCurve>,
}

pub fn curve_set_json(degree: &Degree, points: &[Point], signs: Option<&[Vec<i8>]>, curves: &[MarkedCurve]) -> Value {
    let complex: BigInt = curves.iter().filter_map(|c| curve_mikhalkin_mults(&c.curve).ok()).map(|m| m.0).sum();
    let welschinger: i64 = curves.iter().filter_map(|c| curve_welschinger_mult(&c.curve).ok()).sum();
    let mut out = json!({
        "schema": SCHEMA,
        "genus": 0,
        "degree": degree_json(degree),
        "points": points.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
        "curves": curves.iter().map(|c| curve_json(&c.curve)).collect::<Vec<_>>(),
        "totals": { "curves": curves.len(), "complex": complex.to_string(), "welschinger": welschinger },
    });
    if let Some(s) = signs {
        out["signs"] = Value::Array(s.iter().map(|x| Value::String(sign_string(x))).collect());
    }
    out
}

pub fn parse_curve_set(text: &str) -> Result<CurveSet, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("curve file: {e}")))?;
    let m = object(&v)?;
    match m.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => {}
        other => return Err(CliError::Input(format!("unsupported schema {other:?}"))),
    }
    let PointsFile { points, signs } = parse_points(&v.to_string())?;
    let curves = array(field(m, "curves")?, "curves")?
        .iter()
        .map(|c| parse_curve(c).map(MarkedCurve::new))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CurveSet { points, signs, curves })
}

fn opt(x: &Option<BigInt>) -> Value {
    x.as_ref().map_or(Value::Null, |v| Value::String(v.to_string()))
}

pub fn count_json(report: &CountReport, scale: &BigInt, real: Option<(&RealPointConfig, i8)>) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            let mut row = json!({
                "curve": r.curve,
                "edge_weights": r.complex_weight.to_string(),
                "lattice_index": r.th.complex_index.to_string(),
                "constraint_index": r.constraint_complex.to_string(),
                "complex": r.complex_contribution.to_string(),
                "vertex_product": opt(&r.vertex_product),
            });
            if r.real_contribution.is_some() {
                row["real_index"] = Value::String(r.th.real_index.to_string());
                row["twisted_index"] = opt(&r.th.twisted_real);
                row["real_weights"] = Value::String(r.real_weight.to_string());
                row["real_constraint_index"] = Value::String(r.constraint_real.to_string());
                row["real"] = opt(&r.real_contribution);
            }
            row
        })
        .collect();
    let mut totals = json!({ "complex": report.n_complex.to_string() });
    if let Some((config, sign_t)) = real {
        totals["real"] = opt(&report.n_real);
        totals["parity"] = json!(report.parity_holds());
        totals["sign_t"] = json!(if sign_t > 0 { "+" } else { "-" });
        totals["signs"] = Value::Array(config.signs.iter().map(|s| Value::String(sign_string(s))).collect());
    }
    json!({ "schema": SCHEMA, "scale": scale.to_string(), "rows": rows, "totals": totals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropcount_core::tropical::{q, standard_line};

    #[test]
    fn rationals_round_trip() {
        for s in ["0", "-7/2", "12345678901234567890/7"] {
            assert_eq!(rational(s).unwrap().to_string(), s);
        }
        assert_eq!(rational("4/2").unwrap(), q("2"));
        assert!(rational("1/0").is_err() || rational("x").is_err());
        assert!(rational("abc").is_err());
    }

    #[test]
    fn curve_round_trip() {
        let c = standard_line(vec![q("1/3"), q("-2")]);
        let back = parse_curve(&curve_json(&c)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn points_file() {
        let p = parse_points(r#"{"points": [["1/2", "3"], [4, "-5/7"]], "signs": ["++", "+-"]}"#).unwrap();
        assert_eq!(p.points[1], vec![q("4"), q("-5/7")]);
        assert_eq!(p.signs.unwrap()[1], vec![1, -1]);
        assert!(parse_points(r#"{"points": [[1.5, 2]]}"#).is_err());
        assert!(parse_points("{").is_err());
        assert!(parse_signs("+x").is_err());
    }

    #[test]
    fn edge_names() {
        assert_eq!(parse_edge(&json!("b3")).unwrap(), EdgeId::Bounded(3));
        assert_eq!(parse_edge(&json!("u0")).unwrap(), EdgeId::Unbounded(0));
        assert!(parse_edge(&json!("x1")).is_err());
        assert!(parse_edge(&json!("")).is_err());
    }
}
