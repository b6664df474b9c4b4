//! JSON bundles for matrices, representations, environments and DSL values.
//!
//! Matrices are `{"rows": R, "cols": C, "data": [[re, im], ...]}` in
//! row-major order. Floats are written in shortest round-trip form, with
//! integral values as JSON integers.

use braket_core::cvs::{MetricOperator, VarVector, Variance};
use braket_core::numkernel::{self, Signature, Tolerances};
use braket_core::opalg::{KindedOperator, OperatorKind};
use braket_core::repsl2c::{self, BasisKind, BasisLabel, CoupledRep, Weight};
use braket_core::{Complex64, ComplexMatrix};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::dsl::{self, Environment};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] braket_core::Error),
}

pub type JsonResult<T> = std::result::Result<T, JsonError>;

fn schema<T>(msg: impl Into<String>) -> JsonResult<T> {
    Err(JsonError::Schema(msg.into()))
}

/// Largest magnitude below which every integral `f64` is an exact `i64`.
const EXACT_INT: f64 = 9_007_199_254_740_992.0;

pub fn number(x: f64) -> JsonResult<Value> {
    if !x.is_finite() {
        return schema(format!("non-finite number {x}"));
    }
    if x.fract() == 0.0 && x.abs() < EXACT_INT {
        return Ok(Value::from(x as i64));
    }
    Ok(Value::from(x))
}

fn complex_json(z: Complex64) -> JsonResult<Value> {
    Ok(Value::Array(vec![number(z.re)?, number(z.im)?]))
}

fn complex_list(zs: &[Complex64]) -> JsonResult<Value> {
    Ok(Value::Array(zs.iter().map(|&z| complex_json(z)).collect::<JsonResult<_>>()?))
}

pub fn matrix_to_json(a: &ComplexMatrix) -> JsonResult<Value> {
    Ok(json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "data": complex_list(a.entries())?,
    }))
}

fn field<'a>(v: &'a Value, key: &str) -> JsonResult<&'a Value> {
    v.get(key)
        .ok_or_else(|| JsonError::Schema(format!("missing field {key:?}")))
}

fn as_usize(v: &Value, what: &str) -> JsonResult<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| JsonError::Schema(format!("{what} must be a non-negative integer")))
}

fn as_i64(v: &Value, what: &str) -> JsonResult<i64> {
    v.as_i64()
        .ok_or_else(|| JsonError::Schema(format!("{what} must be an integer")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> JsonResult<&'a str> {
    v.as_str()
        .ok_or_else(|| JsonError::Schema(format!("{what} must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> JsonResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| JsonError::Schema(format!("{what} must be an array")))
}

fn complex_from_json(v: &Value) -> JsonResult<Complex64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => schema("complex entries must be numbers"),
        },
        _ => schema("complex entries must be [re, im] pairs"),
    }
}

fn complex_list_from_json(v: &Value, what: &str) -> JsonResult<Vec<Complex64>> {
    as_array(v, what)?.iter().map(complex_from_json).collect()
}

pub fn matrix_from_json(v: &Value) -> JsonResult<ComplexMatrix> {
    let rows = as_usize(field(v, "rows")?, "rows")?;
    let cols = as_usize(field(v, "cols")?, "cols")?;
    let data = complex_list_from_json(field(v, "data")?, "data")?;
    if data.len() != rows.saturating_mul(cols) {
        return schema(format!(
            "data has {} entries, expected {rows} x {cols}",
            data.len()
        ));
    }
    ComplexMatrix::new(rows, cols, data).map_err(|e| JsonError::Schema(e.to_string()))
}

fn parse_text(text: &str) -> JsonResult<Value> {
    serde_json::from_str(text).map_err(|e| JsonError::Schema(e.to_string()))
}

pub fn matrix_from_str(text: &str) -> JsonResult<ComplexMatrix> {
    matrix_from_json(&parse_text(text)?)
}

pub fn to_text(v: &Value) -> String {
    serde_json::to_string(v).expect("values built here always serialize")
}

pub fn signature_to_json(s: Signature) -> Value {
    json!([s.n_plus, s.n_minus])
}

fn label_to_json(label: &BasisLabel) -> Value {
    match *label {
        BasisLabel::Canonical {
            block,
            twice_lambda,
        } => json!({"block": block, "twice_lambda": twice_lambda}),
        BasisLabel::Rotation {
            block,
            twice_s,
            twice_sigma,
        } => json!({"block": block, "twice_s": twice_s, "twice_sigma": twice_sigma}),
        BasisLabel::Orthonormal {
            parity,
            twice_s,
            twice_sigma,
        } => json!({"parity": parity, "twice_s": twice_s, "twice_sigma": twice_sigma}),
    }
}

fn small_int<T: TryFrom<i64>>(v: &Value, what: &str) -> JsonResult<T> {
    T::try_from(as_i64(v, what)?).map_err(|_| JsonError::Schema(format!("{what} out of range")))
}

fn label_from_json(v: &Value, basis: BasisKind) -> JsonResult<BasisLabel> {
    Ok(match basis {
        BasisKind::Canonical => {
            let pair = as_array(field(v, "twice_lambda")?, "twice_lambda")?;
            let [a, b] = pair.as_slice() else {
                return schema("twice_lambda must have two entries");
            };
            BasisLabel::Canonical {
                block: small_int(field(v, "block")?, "block")?,
                twice_lambda: [small_int(a, "twice_lambda")?, small_int(b, "twice_lambda")?],
            }
        }
        BasisKind::Rotation => BasisLabel::Rotation {
            block: small_int(field(v, "block")?, "block")?,
            twice_s: small_int(field(v, "twice_s")?, "twice_s")?,
            twice_sigma: small_int(field(v, "twice_sigma")?, "twice_sigma")?,
        },
        BasisKind::Orthonormal => BasisLabel::Orthonormal {
            parity: small_int(field(v, "parity")?, "parity")?,
            twice_s: small_int(field(v, "twice_s")?, "twice_s")?,
            twice_sigma: small_int(field(v, "twice_sigma")?, "twice_sigma")?,
        },
    })
}

fn triple_to_json(ms: &[ComplexMatrix; 3]) -> JsonResult<Value> {
    Ok(Value::Array(ms.iter().map(matrix_to_json).collect::<JsonResult<_>>()?))
}

fn triple_from_json(v: &Value, what: &str) -> JsonResult<[ComplexMatrix; 3]> {
    let items = as_array(v, what)?;
    let [a, b, c] = items.as_slice() else {
        return schema(format!("{what} must hold three matrices"));
    };
    Ok([matrix_from_json(a)?, matrix_from_json(b)?, matrix_from_json(c)?])
}

pub fn rep_to_json(rep: &CoupledRep) -> JsonResult<Value> {
    let mut out = Map::new();
    out.insert("twice_j1".into(), json!(rep.j1.twice()));
    if !rep.is_diagonal() {
        out.insert("twice_j2".into(), json!(rep.j2.twice()));
    }
    out.insert("epsilon".into(), json!(rep.epsilon));
    out.insert("basis".into(), json!(rep.basis.name()));
    out.insert("dim".into(), json!(rep.dim));
    out.insert("metric".into(), matrix_to_json(rep.metric.eta())?);
    out.insert(
        "generators".into(),
        json!({
            "M": triple_to_json(&rep.m)?,
            "N": triple_to_json(&rep.n)?,
            "I": triple_to_json(&rep.i)?,
            "K": triple_to_json(&rep.k)?,
        }),
    );
    let signature = repsl2c::rep_signature(rep, &Tolerances::default())?;
    out.insert("signature".into(), signature_to_json(signature));
    out.insert(
        "labels".into(),
        Value::Array(rep.labels.iter().map(label_to_json).collect()),
    );
    Ok(Value::Object(out))
}

/// Reads a rep bundle. The change-of-basis matrix is not serialized; it is
/// rebuilt from `(j1, j2, epsilon, basis)`, which determine it.
pub fn rep_from_json(v: &Value) -> JsonResult<CoupledRep> {
    let j1 = Weight::from_twice(small_int(field(v, "twice_j1")?, "twice_j1")?);
    let j2 = match v.get("twice_j2") {
        Some(t) => {
            let j2 = Weight::from_twice(small_int(t, "twice_j2")?);
            if j2 == j1 {
                return schema("twice_j2 must be absent for diagonal reps");
            }
            j2
        }
        None => j1,
    };
    let epsilon: i8 = small_int(field(v, "epsilon")?, "epsilon")?;
    let basis_name = as_str(field(v, "basis")?, "basis")?;
    let basis = BasisKind::from_name(basis_name)
        .ok_or_else(|| JsonError::Schema(format!("unknown basis {basis_name:?}")))?;
    let dim = as_usize(field(v, "dim")?, "dim")?;
    let eta = matrix_from_json(field(v, "metric")?)?;
    let generators = field(v, "generators")?;
    let m = triple_from_json(field(generators, "M")?, "M")?;
    let n = triple_from_json(field(generators, "N")?, "N")?;
    let i = triple_from_json(field(generators, "I")?, "I")?;
    let k = triple_from_json(field(generators, "K")?, "K")?;
    let labels = as_array(field(v, "labels")?, "labels")?
        .iter()
        .map(|l| label_from_json(l, basis))
        .collect::<JsonResult<Vec<_>>>()?;

    let reference = repsl2c::build_in_basis(j1, j2, Some(epsilon), basis)?;
    if dim != reference.dim || labels.len() != dim {
        return schema(format!("dim {dim} does not match the weights"));
    }
    for g in m.iter().chain(&n).chain(&i).chain(&k) {
        if g.shape() != (dim, dim) {
            return schema("generator shape does not match dim");
        }
    }
    let metric = MetricOperator::new(eta, &Tolerances::default())?;
    let rep = CoupledRep {
        j1,
        j2,
        dim,
        m,
        n,
        i,
        k,
        metric,
        epsilon,
        basis,
        labels,
        basis_change: reference.basis_change,
    };
    let sig = as_array(field(v, "signature")?, "signature")?;
    let expected = repsl2c::rep_signature(&rep, &Tolerances::default())?;
    if sig.len() != 2
        || as_usize(&sig[0], "signature")? != expected.n_plus
        || as_usize(&sig[1], "signature")? != expected.n_minus
    {
        return schema("signature does not match the metric");
    }
    Ok(rep)
}

pub fn rep_from_str(text: &str) -> JsonResult<CoupledRep> {
    rep_from_json(&parse_text(text)?)
}

pub fn vector_to_json(v: &VarVector) -> JsonResult<Value> {
    Ok(json!({"variance": v.variance.name(), "data": complex_list(&v.components)?}))
}

pub fn vector_from_json(v: &Value) -> JsonResult<VarVector> {
    let name = as_str(field(v, "variance")?, "variance")?;
    let variance = Variance::from_name(name)
        .ok_or_else(|| JsonError::Schema(format!("unknown variance {name:?}")))?;
    Ok(VarVector::new(complex_list_from_json(field(v, "data")?, "data")?, variance))
}

pub fn operator_to_json(op: &KindedOperator) -> JsonResult<Value> {
    Ok(json!({"kind": op.kind.name(), "matrix": matrix_to_json(&op.mat)?}))
}

pub fn operator_from_json(v: &Value) -> JsonResult<KindedOperator> {
    let name = as_str(field(v, "kind")?, "kind")?;
    let kind = OperatorKind::from_name(name)
        .ok_or_else(|| JsonError::Schema(format!("unknown operator kind {name:?}")))?;
    Ok(KindedOperator::new(matrix_from_json(field(v, "matrix")?)?, kind)?)
}

/// `{"dimension", "metric", "basis"?, "vectors", "operators"}`. A vector
/// name maps to one binding or to an array of bindings in distinct
/// variances.
pub fn env_to_json(env: &Environment) -> JsonResult<Value> {
    let mut out = Map::new();
    out.insert("dimension".into(), json!(env.dimension()));
    out.insert("metric".into(), matrix_to_json(env.metric.eta())?);
    if let Some(prefix) = &env.basis {
        out.insert("basis".into(), json!(prefix));
    }
    let mut vectors = Map::new();
    for (name, bindings) in &env.vectors {
        let value = match bindings.as_slice() {
            [single] => vector_to_json(single)?,
            many => Value::Array(many.iter().map(vector_to_json).collect::<JsonResult<_>>()?),
        };
        vectors.insert(name.clone(), value);
    }
    out.insert("vectors".into(), Value::Object(vectors));
    let mut operators = Map::new();
    for (name, op) in &env.operators {
        operators.insert(name.clone(), operator_to_json(op)?);
    }
    out.insert("operators".into(), Value::Object(operators));
    Ok(Value::Object(out))
}

fn dsl_schema(e: dsl::DslError) -> JsonError {
    JsonError::Schema(e.to_string())
}

pub fn env_from_json(v: &Value) -> JsonResult<Environment> {
    let dimension = as_usize(field(v, "dimension")?, "dimension")?;
    let metric = MetricOperator::new(matrix_from_json(field(v, "metric")?)?, &Tolerances::default())?;
    if metric.dim() != dimension {
        return schema(format!(
            "metric has dimension {}, expected {dimension}",
            metric.dim()
        ));
    }
    let mut env = Environment::new(metric);
    if let Some(prefix) = v.get("basis") {
        env = env.with_basis(as_str(prefix, "basis")?);
    }
    if let Some(vectors) = v.get("vectors") {
        let vectors = vectors
            .as_object()
            .ok_or_else(|| JsonError::Schema("vectors must be an object".into()))?;
        for (name, value) in vectors {
            let bindings = match value {
                Value::Array(items) if !items.is_empty() => items.iter().collect(),
                Value::Array(_) => return schema(format!("vector {name:?} has no binding")),
                single => vec![single],
            };
            for b in bindings {
                env.bind_vector(name, vector_from_json(b)?).map_err(dsl_schema)?;
            }
        }
    }
    if let Some(operators) = v.get("operators") {
        let operators = operators
            .as_object()
            .ok_or_else(|| JsonError::Schema("operators must be an object".into()))?;
        for (name, value) in operators {
            env.bind_operator(name, operator_from_json(value)?).map_err(dsl_schema)?;
        }
    }
    Ok(env)
}

pub fn env_from_str(text: &str) -> JsonResult<Environment> {
    env_from_json(&parse_text(text)?)
}

pub fn value_to_json(v: &dsl::Value) -> JsonResult<Value> {
    Ok(match v {
        dsl::Value::Scalar(z) => json!({"type": "scalar", "value": complex_json(*z)?}),
        dsl::Value::Vector(x) => json!({
            "type": "vector",
            "variance": x.variance.name(),
            "data": complex_list(&x.components)?,
        }),
        dsl::Value::Operator(op) => json!({
            "type": "operator",
            "kind": op.kind.name(),
            "matrix": matrix_to_json(&op.mat)?,
        }),
    })
}

pub fn value_from_json(v: &Value) -> JsonResult<dsl::Value> {
    Ok(match as_str(field(v, "type")?, "type")? {
        "scalar" => dsl::Value::Scalar(complex_from_json(field(v, "value")?)?),
        "vector" => dsl::Value::Vector(vector_from_json(v)?),
        "operator" => dsl::Value::Operator(operator_from_json(v)?),
        other => return schema(format!("unknown value type {other:?}")),
    })
}

/// Convenience for callers holding a metric matrix in a file.
pub fn metric_from_str(text: &str) -> JsonResult<MetricOperator> {
    let eta = matrix_from_str(text)?;
    Ok(MetricOperator::new(eta, &Tolerances::default())?)
}

pub fn signature_of(a: &ComplexMatrix) -> JsonResult<Signature> {
    Ok(numkernel::signature(a, &Tolerances::default())?)
}
