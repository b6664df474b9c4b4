use braket_core::cvs::{self, VarVector};
use braket_core::opalg::{self, KindedOperator, OperatorKind, Slot};
use braket_core::{Complex64, ComplexMatrix};

use super::parser::{parse, ExprAst, Sign};
use super::{bra_of, describe_kind, slot_of, DslError, DslResult, Environment};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Complex64),
    Vector(VarVector),
    Operator(KindedOperator),
}

impl Value {
    fn describe(&self) -> String {
        match self {
            Value::Scalar(_) => "scalar".into(),
            Value::Vector(v) => format!("{} vector", v.variance.name()),
            Value::Operator(op) => describe_kind(op.kind),
        }
    }

    fn scale(self, z: Complex64) -> Value {
        match self {
            Value::Scalar(a) => Value::Scalar(a * z),
            Value::Vector(v) => Value::Vector(v.scale(z)),
            Value::Operator(op) => Value::Operator(op.scale(z)),
        }
    }
}

pub fn eval_str(src: &str, env: &Environment) -> DslResult<Value> {
    eval(&parse(src)?, env)
}

pub fn eval(ast: &ExprAst, env: &Environment) -> DslResult<Value> {
    let m = &env.metric;
    Ok(match ast {
        ExprAst::Ket { slot, name } => Value::Vector(env.vector(name, slot.ket())?),
        ExprAst::Bra { slot, name } => Value::Vector(env.vector(name, bra_of(*slot))?),
        ExprAst::OpRef(name) => Value::Operator(env.operator(name)?.clone()),
        ExprAst::Metric => Value::Operator(KindedOperator::metric(m)),
        ExprAst::MetricInv => Value::Operator(KindedOperator::metric_inv(m)),
        ExprAst::IdDown => Value::Operator(KindedOperator::identity_down(env.dimension())),
        ExprAst::IdUp => Value::Operator(KindedOperator::identity_up(env.dimension())),
        ExprAst::Literal(z) => Value::Scalar(*z),
        ExprAst::Juxt(items) => {
            let mut values = items.iter().map(|a| eval(a, env));
            let first = values.next().ok_or_else(|| DslError::Type("empty chain".into()))??;
            values.try_fold(first, |acc, next| juxtapose(acc, next?, env))?
        }
        ExprAst::Sum(terms) => {
            let mut acc: Option<Value> = None;
            for (sign, term) in terms {
                let mut v = eval(term, env)?;
                if *sign == Sign::Minus {
                    v = v.scale(Complex64::new(-1.0, 0.0));
                }
                acc = Some(match acc {
                    None => v,
                    Some(a) => add(a, v)?,
                });
            }
            acc.ok_or_else(|| DslError::Type("empty sum".into()))?
        }
        ExprAst::Scale(z, inner) => eval(inner, env)?.scale(*z),
        ExprAst::Adj(inner) => match eval(inner, env)? {
            Value::Scalar(z) => Value::Scalar(z.conj()),
            Value::Vector(v) if v.variance.is_ket() => Value::Vector(cvs::relate_bra(&v)?),
            Value::Vector(v) => Value::Vector(cvs::relate_ket(&v)?),
            Value::Operator(op) => Value::Operator(opalg::hermitian_adjoint(&op)),
        },
        ExprAst::Bar(inner) => match eval(inner, env)? {
            Value::Scalar(z) => Value::Scalar(z.conj()),
            Value::Operator(op) => Value::Operator(opalg::dirac_adjoint(&op, m)?),
            v @ Value::Vector(_) => {
                return Err(DslError::Type(format!("bar() of a {}", v.describe())))
            }
        },
        ExprAst::Trace(inner) => match eval(inner, env)? {
            Value::Operator(op) => Value::Scalar(opalg::trace(&op)?),
            v => return Err(DslError::Type(format!("tr() of a {}", v.describe()))),
        },
    })
}

fn add(a: Value, b: Value) -> DslResult<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
        (Value::Vector(x), Value::Vector(y)) => Value::Vector(x.try_add(&y)?),
        (Value::Operator(x), Value::Operator(y)) => Value::Operator(opalg::add(&x, &y)?),
        (a, b) => {
            return Err(DslError::Type(format!(
                "cannot add a {} and a {}",
                a.describe(),
                b.describe()
            )))
        }
    })
}

fn variance_error<T>(left: &Value, right: &Value) -> DslResult<T> {
    Err(DslError::Variance {
        left: left.describe(),
        right: right.describe(),
    })
}

/// The slot of kets a bra acts on directly.
fn bra_input(b: &VarVector) -> Slot {
    slot_of(b.variance.dual_ket().expect("a bra"))
}

fn juxtapose(left: Value, right: Value, env: &Environment) -> DslResult<Value> {
    Ok(match (left, right) {
        (Value::Scalar(a), v) | (v, Value::Scalar(a)) => v.scale(a),
        (Value::Vector(b), Value::Vector(k)) if b.variance.is_bra() && k.variance.is_ket() => {
            if bra_input(&b) == slot_of(k.variance) {
                Value::Scalar(cvs::dual_form(&b, &k)?)
            } else {
                // same position: the metric sits in the empty angle
                Value::Scalar(cvs::dual_form(&b, &cvs::couple(&env.metric, &k)?)?)
            }
        }
        (Value::Vector(k), Value::Vector(b)) if k.variance.is_ket() && b.variance.is_bra() => {
            let n = k.dim();
            if b.dim() != n {
                return Err(braket_core::Error::DimensionMismatch {
                    op: "outer product",
                    left: (n, 1),
                    right: (1, b.dim()),
                }
                .into());
            }
            let entries = k
                .components
                .iter()
                .flat_map(|x| b.components.iter().map(move |y| x * y))
                .collect();
            let kind = OperatorKind::from_slots(bra_input(&b), slot_of(k.variance));
            Value::Operator(KindedOperator::new(ComplexMatrix::new(n, n, entries)?, kind)?)
        }
        (Value::Operator(op), Value::Vector(k)) if k.variance.is_ket() => {
            if op.kind.input() != slot_of(k.variance) {
                return variance_error(&Value::Operator(op), &Value::Vector(k));
            }
            Value::Vector(op.apply(&k)?)
        }
        (Value::Vector(b), Value::Operator(op)) if b.variance.is_bra() => {
            if bra_input(&b) != op.kind.output() {
                return variance_error(&Value::Vector(b), &Value::Operator(op));
            }
            let row = op.mat.vec_mat(&b.components)?;
            let variance = op
                .kind
                .input()
                .ket()
                .dual_bra()
                .expect("kets have a dual bra");
            Value::Vector(VarVector::new(row, variance))
        }
        (Value::Operator(x), Value::Operator(y)) => Value::Operator(opalg::compose(&x, &y)?),
        (l, r) => return variance_error(&l, &r),
    })
}
