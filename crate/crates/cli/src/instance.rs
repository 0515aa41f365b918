//! JSON instance files.
//!
//! Rationals may be given as JSON integers or as strings "p" / "p/q".
//! `lattice` lists basis vectors (columns of B).

use latmem::cvp::NormSpec;
use latmem::exact::{parse_rational, to_int_vec};
use latmem::geometry::{ConvexBody, LpBody, Polytope};
use latmem::lattice::LatticeBasis;
use latmem::{Error, IntMatrix, RatMatrix, RatVector, Rational, Result};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Cvp,
    Lmp,
    Svp,
}

#[derive(Debug)]
pub struct Instance {
    pub kind: Kind,
    pub lattice: LatticeBasis,
    pub target: Option<RatVector>,
    pub norm: Option<NormSpec>,
    pub body: Option<ConvexBody>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(bad(format!("expected a rational, got {v}"))),
    }
}

fn vector(v: &Value) -> Result<RatVector> {
    v.as_array()
        .ok_or_else(|| bad("expected an array"))?
        .iter()
        .map(rational)
        .collect()
}

fn rows(v: &Value) -> Result<Vec<RatVector>> {
    let rows: Vec<RatVector> = v
        .as_array()
        .ok_or_else(|| bad("expected an array of arrays"))?
        .iter()
        .map(vector)
        .collect::<Result<_>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(bad("ragged or empty matrix"));
    }
    Ok(rows)
}

fn int_matrix(v: &Value) -> Result<IntMatrix> {
    RatMatrix::from_rows(&rows(v)?)
        .to_int()
        .ok_or_else(|| bad("expected an integer matrix"))
}

fn int_vector(v: &Value) -> Result<Vec<latmem::Integer>> {
    to_int_vec(&vector(v)?).ok_or_else(|| bad("expected an integer vector"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn small_uint(v: &Value, what: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| bad(format!("{what} must be a small nonnegative integer")))
}

fn norm(v: &Value) -> Result<NormSpec> {
    if let Some(k) = v.get("lp") {
        let p = small_uint(k, "lp")?;
        if p == 0 {
            return Err(bad("lp must be at least 1"));
        }
        return Ok(NormSpec::Lp(p));
    }
    if v.get("infinity").is_some() {
        return Ok(NormSpec::Infinity);
    }
    if let Some(p) = v.get("polyhedral") {
        return NormSpec::polyhedral(int_matrix(field(p, "A")?)?, int_vector(field(p, "beta")?)?);
    }
    Err(bad(
        "norm must be {\"lp\": k}, {\"infinity\": true} or {\"polyhedral\": ...}",
    ))
}

fn body(v: &Value) -> Result<ConvexBody> {
    if let Some(p) = v.get("polytope") {
        let a = RatMatrix::from_rows(&rows(field(p, "A")?)?);
        let beta = vector(field(p, "beta")?)?;
        if beta.len() != a.rows() {
            return Err(bad("polytope A and beta disagree"));
        }
        return Ok(ConvexBody::Polytope(Polytope::from_rational(&a, &beta)?));
    }
    if let Some(b) = v.get("lp") {
        let p = small_uint(field(b, "p")?, "p")?;
        let t = vector(field(b, "t")?)?;
        let alpha = rational(field(b, "alpha")?)?;
        let v_inv = match b.get("V_inv") {
            Some(m) => RatMatrix::from_rows(&rows(m)?),
            None => RatMatrix::identity(t.len()),
        };
        let m = match b.get("m") {
            Some(m) => small_uint(m, "m")? as usize,
            None => t.len(),
        };
        return Ok(ConvexBody::Lp(LpBody::new(p, v_inv, t, &alpha, m)?));
    }
    Err(bad("body must be {\"polytope\": ...} or {\"lp\": ...}"))
}

pub fn parse(text: &str) -> Result<Instance> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))?;
    let kind = match field(&v, "kind")?.as_str() {
        Some("cvp") => Kind::Cvp,
        Some("lmp") => Kind::Lmp,
        Some("svp") => Kind::Svp,
        _ => return Err(bad("kind must be \"cvp\", \"lmp\" or \"svp\"")),
    };
    let lattice = LatticeBasis::new(RatMatrix::from_cols(&rows(field(&v, "lattice")?)?))?;
    let mut inst = Instance {
        kind,
        lattice,
        target: None,
        norm: None,
        body: None,
    };
    match kind {
        Kind::Cvp => {
            inst.target = Some(vector(field(&v, "target")?)?);
            inst.norm = Some(norm(field(&v, "norm")?)?);
        }
        Kind::Lmp => inst.body = Some(body(field(&v, "body")?)?),
        Kind::Svp => {}
    }
    Ok(inst)
}
