use std::io::Read;

use serde_json::{json, Map, Value};

use curvrank::classify::{
    ip_class, is_admissible_phi, is_ip_by_sampling, is_self_adjoint, within_ip_hypotheses,
    IpSampling, Plane,
};
use curvrank::curvature::{
    is_timelike_plane, jordan_type, make_r_phi, make_t_phi, plane_operator, plane_rank_any,
    BilinearSkewMap, CurvatureTensor4, JordanType, SkewFamily,
};
use curvrank::exactlin::{LinearMap, SignatureSpace};
use curvrank::fixtures::{fixture, FixturePayload};
use curvrank::json::*;
use curvrank::realize::verify_realization;
use curvrank::reconstruct::decompose_traced;
use curvrank::sampling::{
    random_admissible_phi, random_conformal_phi, random_non_admissible_phi,
    random_non_self_adjoint_phi, random_spacelike_plane, random_totally_isotropic_phi,
};
use curvrank::{Error, Result};

use crate::{Cli, Command, Emit, Kind, Outcome};

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate => validate(cli),
        Command::PlaneOp { v1, v2, timelike } => plane_op(cli, v1, v2, *timelike),
        Command::Jordan { v1, v2 } => jordan(cli, v1, v2),
        Command::Classify => classify(cli),
        Command::IpCheck { planes } => ip_check(cli, planes),
        Command::Decompose => decompose(cli),
        Command::Realize { points, planes } => realize(cli, *points, *planes),
        Command::Fixture { name, p, emit } => emit_fixture(name, *p, *emit),
        Command::GenPhi { p, q, kernel, kind, factor, emit } => {
            gen_phi(cli, *p, *q, *kernel, *kind, factor, *emit)
        }
        Command::GenPlane { p, q } => gen_plane(cli, *p, *q),
    }
}

fn read_payload(cli: &Cli) -> Result<Payload> {
    let path = cli
        .json
        .as_deref()
        .ok_or_else(|| Error::BadParams("this command needs --json <path>".into()))?;
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    parse_payload(&parse_str(&text)?)
}

fn tensor_of(payload: Payload) -> Result<CurvatureTensor4> {
    match payload {
        Payload::Tensor(r) => Ok(r),
        Payload::Map(phi) => make_r_phi(&phi),
        Payload::SkewMap(t) => t.to_tensor(),
    }
}

fn skew_map_of(payload: Payload) -> Result<BilinearSkewMap> {
    match payload {
        Payload::Tensor(r) => BilinearSkewMap::from_tensor(&r),
        Payload::Map(phi) => Ok(make_t_phi(&phi)),
        Payload::SkewMap(t) => Ok(t),
    }
}

fn family_of(payload: Payload) -> Result<Box<dyn SkewFamily>> {
    Ok(match payload {
        Payload::SkewMap(t) => Box::new(t),
        other => Box::new(tensor_of(other)?),
    })
}

fn object(pairs: Vec<(&str, Value)>) -> Value {
    let m: Map<String, Value> = pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    with_version(Value::Object(m))
}

fn validate(cli: &Cli) -> Result<Outcome> {
    let r = tensor_of(read_payload(cli)?)?;
    let report = r.validate_symmetries();
    let mut value = serde_json::to_value(report).expect("report serializes");
    value["ok"] = json!(report.all());
    Ok(Outcome {
        value: with_version(value),
        code: if report.all() { 0 } else { 2 },
    })
}

fn plane_op(cli: &Cli, v1: &str, v2: &str, timelike: bool) -> Result<Outcome> {
    let family = family_of(read_payload(cli)?)?;
    let (v1, v2) = (parse_vector(v1)?, parse_vector(v2)?);
    if timelike {
        let rank = plane_rank_any(family.as_ref(), &v1, &v2)?;
        let kind = is_timelike_plane(family.domain(), &v1, &v2)?;
        return Ok(Outcome::ok(object(vec![
            ("rank", json!(rank)),
            ("timelike", json!(kind)),
        ])));
    }
    let op = plane_operator(family.as_ref(), &v1, &v2)?;
    Ok(Outcome::ok(object(vec![
        ("gramdet", rational_to_json(&op.gramdet)),
        ("op", matrix_to_json(&op.op)),
        ("rank", json!(op.rank())),
    ])))
}

fn jordan(cli: &Cli, v1: &str, v2: &str) -> Result<Outcome> {
    let family = family_of(read_payload(cli)?)?;
    let op = plane_operator(family.as_ref(), &parse_vector(v1)?, &parse_vector(v2)?)?;
    let jt = jordan_type(&op)?;
    Ok(Outcome::ok(object(vec![
        ("gramdet", rational_to_json(&op.gramdet)),
        ("jordan", jordan_to_json(&jt)),
    ])))
}

fn classify(cli: &Cli) -> Result<Outcome> {
    let phi = match read_payload(cli)? {
        Payload::Map(phi) => phi,
        _ => return Err(Error::BadParams("classify expects a linear map".into())),
    };
    let self_adjoint = is_self_adjoint(&phi)?;
    let admissible = is_admissible_phi(&phi);
    let (ip, reason) = match ip_class(&phi) {
        Ok(v) => (ip_verdict_to_json(&v), Value::Null),
        Err(e @ (Error::NotSelfAdjoint | Error::NotAdmissible)) => (Value::Null, json!(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(Outcome::ok(object(vec![
        ("admissible", json!(admissible)),
        ("ip", ip),
        ("ip_unavailable", reason),
        ("self_adjoint", json!(self_adjoint)),
        ("within_hypotheses", json!(within_ip_hypotheses(&phi))),
    ])))
}

fn parse_plane(s: &str) -> Result<Plane> {
    let (a, b) = s
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("plane {s:?} must look like v1;v2")))?;
    Ok((parse_vector(a)?, parse_vector(b)?))
}

fn plane_json(plane: &Plane, jt: &JordanType) -> Value {
    json!({
        "plane": [vector_to_json(&plane.0), vector_to_json(&plane.1)],
        "jordan": jordan_to_json(jt),
    })
}

fn ip_check(cli: &Cli, planes: &[String]) -> Result<Outcome> {
    let family = family_of(read_payload(cli)?)?;
    let forced = planes.iter().map(|p| parse_plane(p)).collect::<Result<Vec<_>>>()?;
    let sampled = is_ip_by_sampling(family.as_ref(), cli.samples, cli.seed, &forced)?;
    let mut pairs = vec![("planes", json!(forced.len() + cli.samples))];
    match &sampled {
        IpSampling::Constant(jt) => {
            pairs.push(("verdict", json!("constant")));
            pairs.push(("jordan", jordan_to_json(jt)));
        }
        IpSampling::Varies { first, second } => {
            pairs.push(("verdict", json!("varies")));
            pairs.push(("first", plane_json(&first.0, &first.1)));
            pairs.push(("second", plane_json(&second.0, &second.1)));
        }
    }
    Ok(Outcome::ok(object(pairs)))
}

fn decompose(cli: &Cli) -> Result<Outcome> {
    let t = skew_map_of(read_payload(cli)?)?;
    let (d, _) = decompose_traced(&t, cli.seed)?;
    Ok(Outcome::ok(decomposition_to_json(&d)))
}

fn realize(cli: &Cli, points: usize, planes: usize) -> Result<Outcome> {
    let r = tensor_of(read_payload(cli)?)?;
    let report = verify_realization(&r, points, planes, cli.seed)?;
    let samples: Vec<Value> = report
        .rank_samples
        .iter()
        .map(|s| {
            json!({
                "point": vector_to_json(&s.point),
                "rank": s.rank,
                "constant": s.constant,
            })
        })
        .collect();
    let ok = report.ok();
    Ok(Outcome {
        value: object(vec![
            ("epsilon", json!(report.epsilon)),
            ("mu", rational_to_json(&report.mu)),
            ("ok", json!(ok)),
            ("origin_check", json!(if report.origin_equal { "exact-equal" } else { "mismatch" })),
            ("phi", linear_map_to_json(&report.phi)),
            ("rank_samples", Value::Array(samples)),
            ("routes_agree", json!(report.routes_agree)),
        ]),
        code: if ok { 0 } else { 2 },
    })
}

fn emit_map(phi: &LinearMap, emit: Emit) -> Result<Value> {
    Ok(match emit {
        Emit::Native => linear_map_to_json(phi),
        Emit::Skew => skew_map_to_json(&make_t_phi(phi)),
        Emit::Tensor => tensor_to_json(&make_r_phi(phi)?),
    })
}

fn emit_fixture(name: &str, p: usize, emit: Emit) -> Result<Outcome> {
    let f = fixture(name, p)?;
    let mut value = match (&f.payload, emit) {
        (FixturePayload::Map(phi), _) => emit_map(phi, emit)?,
        (FixturePayload::SkewMap(t), Emit::Native | Emit::Skew) => skew_map_to_json(t),
        (FixturePayload::SkewMap(_), Emit::Tensor) => {
            return Err(Error::BadParams(format!("fixture {name} is not a curvature tensor")))
        }
    };
    value["fixture"] = json!(f.name);
    Ok(Outcome::ok(value))
}

fn gen_phi(
    cli: &Cli,
    p: usize,
    q: usize,
    kernel: usize,
    kind: Kind,
    factor: &str,
    emit: Emit,
) -> Result<Outcome> {
    let seed = cli.seed;
    let phi = match kind {
        Kind::Admissible => random_admissible_phi(p, q, kernel, seed)?,
        Kind::NonAdmissible => random_non_admissible_phi(p, q, seed)?,
        Kind::NonSelfAdjoint => random_non_self_adjoint_phi(p, q, seed)?,
        Kind::Conformal => random_conformal_phi(p, q, &parse_rational_str(factor)?, seed)?,
        Kind::Isotropic => random_totally_isotropic_phi(p, q, seed)?,
    };
    Ok(Outcome::ok(emit_map(&phi, emit)?))
}

fn gen_plane(cli: &Cli, p: usize, q: usize) -> Result<Outcome> {
    let space = SignatureSpace::standard(p, q);
    let (v1, v2) = random_spacelike_plane(&space, cli.seed, cli.bound)?;
    let gramdet = space.plane_gram_det(&v1, &v2)?;
    Ok(Outcome::ok(object(vec![
        ("gramdet", rational_to_json(&gramdet)),
        ("space", space_to_json(&space)),
        ("v1", vector_to_json(&v1)),
        ("v2", vector_to_json(&v2)),
    ])))
}
