//! JSON interchange. Rationals are `"n/d"` strings (`"n"` for integers), every payload carries
//! `schema_version: 1`, and object keys are emitted in sorted order so output
//! is byte-reproducible.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::classify::IpVerdict;
use crate::curvature::{AlternatingMap, BilinearSkewMap, CurvatureTensor4, JordanType};
use crate::error::{Error, Result};
use crate::exactlin::{LinearMap, Matrix, Rational, SignatureSpace};
use crate::reconstruct::Decomposition;

pub const SCHEMA_VERSION: u64 = 1;

/// Any payload the command line accepts.
#[derive(Clone, Debug)]
pub enum Payload {
    Tensor(CurvatureTensor4),
    SkewMap(BilinearSkewMap),
    Map(LinearMap),
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// `"n/d"`, or `"n"` for integers.
pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational_str(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| perr(format!("number {n} is not an integer; use an \"n/d\" string"))),
        _ => Err(perr(format!("expected a rational, found {v}"))),
    }
}

pub fn parse_rational_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    let int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| perr(format!("bad integer {t:?}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d == BigInt::from(0) {
                return Err(perr(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(int(n)?, d))
        }
        None => Ok(Rational::from_integer(int(s)?)),
    }
}

/// Comma-separated rationals, as accepted on the command line.
pub fn parse_vector(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational_str).collect()
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn parse_vector_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| perr("expected an array of rationals"))?
        .iter()
        .map(parse_rational)
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

pub fn parse_matrix(v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| perr("expected a matrix (array of rows)"))?
        .iter()
        .map(parse_vector_json)
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn space_to_json(s: &SignatureSpace) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), json!(s.p()));
    m.insert("q".into(), json!(s.q()));
    if !s.is_standard() {
        m.insert("gram".into(), matrix_to_json(s.gram()));
    }
    Value::Object(m)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field {key:?}")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| perr(format!("field {key:?} must be a nonnegative integer")))
}

pub fn parse_space(v: &Value) -> Result<SignatureSpace> {
    let p = usize_field(v, "p")?;
    let q = usize_field(v, "q")?;
    match v.get("gram") {
        None => Ok(SignatureSpace::standard(p, q)),
        Some(g) => {
            let s = SignatureSpace::from_gram(parse_matrix(g)?)?;
            if (s.p(), s.q()) != (p, q) {
                return Err(perr(format!(
                    "gram has signature ({}, {}) but ({p}, {q}) was declared",
                    s.p(),
                    s.q()
                )));
            }
            Ok(s)
        }
    }
}

fn check_version(v: &Value) -> Result<()> {
    match v.get("schema_version") {
        None => Ok(()),
        Some(x) if x.as_u64() == Some(SCHEMA_VERSION) => Ok(()),
        Some(x) => Err(perr(format!("unsupported schema_version {x}"))),
    }
}

fn versioned(mut m: Map<String, Value>) -> Value {
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    Value::Object(m)
}

fn pair_key(i: usize, j: usize) -> String {
    format!("{i},{j}")
}

fn parse_pair_key(k: &str) -> Result<(usize, usize)> {
    let (i, j) = k.split_once(',').ok_or_else(|| perr(format!("bad pair key {k:?}")))?;
    let idx = |t: &str| t.trim().parse::<usize>().map_err(|_| perr(format!("bad pair key {k:?}")));
    Ok((idx(i)?, idx(j)?))
}

pub fn tensor_to_json(r: &CurvatureTensor4) -> Value {
    let entries: Vec<Value> = r
        .nonzero_entries()
        .map(|(idx, x)| json!([idx[0], idx[1], idx[2], idx[3], rational_to_json(x)]))
        .collect();
    let mut m = Map::new();
    m.insert("space".into(), space_to_json(r.space()));
    m.insert("entries".into(), Value::Array(entries));
    versioned(m)
}

pub fn parse_tensor(v: &Value) -> Result<CurvatureTensor4> {
    check_version(v)?;
    let space = parse_space(field(v, "space")?)?;
    let entries = field(v, "entries")?
        .as_array()
        .ok_or_else(|| perr("entries must be an array"))?
        .iter()
        .map(|e| {
            let a = e
                .as_array()
                .filter(|a| a.len() == 5)
                .ok_or_else(|| perr("each entry is [i, j, k, l, value]"))?;
            let mut idx = [0usize; 4];
            for (slot, x) in idx.iter_mut().zip(a) {
                *slot = x.as_u64().ok_or_else(|| perr("entry index must be an integer"))? as usize;
            }
            Ok((idx, parse_rational(&a[4])?))
        })
        .collect::<Result<Vec<_>>>()?;
    CurvatureTensor4::from_sparse(space, entries)
}

pub fn skew_map_to_json(t: &BilinearSkewMap) -> Value {
    let blocks: Map<String, Value> = t
        .upper_blocks()
        .map(|((i, j), b)| (pair_key(i, j), matrix_to_json(b)))
        .collect();
    let mut m = Map::new();
    m.insert("domain".into(), space_to_json(t.domain()));
    m.insert("codomain".into(), space_to_json(t.codomain()));
    m.insert("blocks".into(), Value::Object(blocks));
    versioned(m)
}

pub fn parse_skew_map(v: &Value) -> Result<BilinearSkewMap> {
    check_version(v)?;
    let domain = parse_space(field(v, "domain")?)?;
    let codomain = parse_space(field(v, "codomain")?)?;
    let blocks = field(v, "blocks")?
        .as_object()
        .ok_or_else(|| perr("blocks must be an object keyed by \"i,j\""))?
        .iter()
        .map(|(k, b)| Ok((parse_pair_key(k)?, parse_matrix(b)?)))
        .collect::<Result<Vec<_>>>()?;
    BilinearSkewMap::from_upper_blocks(domain, codomain, blocks)
}

pub fn linear_map_to_json(phi: &LinearMap) -> Value {
    let mut m = Map::new();
    m.insert("domain".into(), space_to_json(phi.domain()));
    m.insert("codomain".into(), space_to_json(phi.codomain()));
    m.insert("matrix".into(), matrix_to_json(phi.matrix()));
    versioned(m)
}

pub fn parse_linear_map(v: &Value) -> Result<LinearMap> {
    check_version(v)?;
    let domain = parse_space(field(v, "domain")?)?;
    let codomain = match v.get("codomain") {
        Some(c) => parse_space(c)?,
        None => domain.clone(),
    };
    LinearMap::new(domain, codomain, parse_matrix(field(v, "matrix")?)?)
}

pub fn alternating_to_json(chi: &AlternatingMap) -> Value {
    let values: Map<String, Value> = chi
        .upper_values()
        .map(|((i, j), x)| (pair_key(i, j), vector_to_json(x)))
        .collect();
    let mut m = Map::new();
    m.insert("domain".into(), space_to_json(chi.domain()));
    m.insert("codomain".into(), space_to_json(chi.codomain()));
    m.insert("values".into(), Value::Object(values));
    versioned(m)
}

pub fn parse_alternating(v: &Value) -> Result<AlternatingMap> {
    check_version(v)?;
    let domain = parse_space(field(v, "domain")?)?;
    let codomain = parse_space(field(v, "codomain")?)?;
    let values = field(v, "values")?
        .as_object()
        .ok_or_else(|| perr("values must be an object keyed by \"i,j\""))?
        .iter()
        .map(|(k, x)| Ok((parse_pair_key(k)?, parse_vector_json(x)?)))
        .collect::<Result<Vec<_>>>()?;
    AlternatingMap::from_upper_values(domain, codomain, values)
}

/// Decomposition payload; `verified` is always true since unverified results are never returned.
pub fn decomposition_to_json(d: &Decomposition) -> Value {
    let mut m = Map::new();
    m.insert("variant".into(), json!(d.variant()));
    match d {
        Decomposition::ChiXi { chi, xi } => {
            m.insert("chi".into(), alternating_to_json(chi));
            m.insert("xi".into(), vector_to_json(xi));
        }
        Decomposition::PhiForm { epsilon, mu, phi } => {
            m.insert("epsilon".into(), json!(epsilon));
            m.insert("mu".into(), rational_to_json(mu));
            m.insert("phi".into(), linear_map_to_json(phi));
        }
    }
    m.insert("verified".into(), json!(true));
    versioned(m)
}

pub fn parse_decomposition(v: &Value) -> Result<Decomposition> {
    check_version(v)?;
    match field(v, "variant")?.as_str() {
        Some("ChiXi") => Ok(Decomposition::ChiXi {
            chi: parse_alternating(field(v, "chi")?)?,
            xi: parse_vector_json(field(v, "xi")?)?,
        }),
        Some("PhiForm") => {
            let epsilon = match field(v, "epsilon")?.as_i64() {
                Some(1) => 1,
                Some(-1) => -1,
                _ => return Err(perr("epsilon must be 1 or -1")),
            };
            Ok(Decomposition::PhiForm {
                epsilon,
                mu: parse_rational(field(v, "mu")?)?,
                phi: parse_linear_map(field(v, "phi")?)?,
            })
        }
        _ => Err(perr("variant must be \"ChiXi\" or \"PhiForm\"")),
    }
}

pub fn jordan_to_json(t: &JordanType) -> Value {
    let mut m = Map::new();
    m.insert("tag".into(), json!(format!("{:?}", t.tag())));
    if let Some(l) = t.lambda_sq() {
        m.insert("lambda_sq".into(), rational_to_json(l));
    }
    Value::Object(m)
}

pub fn ip_verdict_to_json(v: &IpVerdict) -> Value {
    let mut m = Map::new();
    m.insert("tag".into(), json!(v.tag()));
    if let Some(c) = v.constant() {
        m.insert("C".into(), rational_to_json(c));
    }
    Value::Object(m)
}

/// Wraps an object with the schema version.
pub fn with_version(v: Value) -> Value {
    match v {
        Value::Object(m) => versioned(m),
        other => other,
    }
}

/// Detects the payload kind by its keys.
pub fn parse_payload(v: &Value) -> Result<Payload> {
    if v.get("entries").is_some() {
        parse_tensor(v).map(Payload::Tensor)
    } else if v.get("blocks").is_some() {
        parse_skew_map(v).map(Payload::SkewMap)
    } else if v.get("matrix").is_some() {
        parse_linear_map(v).map(Payload::Map)
    } else {
        Err(perr("unrecognized payload: expected entries, blocks or matrix"))
    }
}

pub fn parse_str(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| perr(e.to_string()))
}

/// Pretty output with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
