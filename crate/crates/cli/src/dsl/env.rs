use std::collections::BTreeMap;

use braket_core::cvs::{self, MetricOperator, VarVector, Variance};
use braket_core::opalg::KindedOperator;
use braket_core::Complex64;

use super::{bra_of, slot_of, DslError, DslResult};

/// Named vectors and operators over one metric.
///
/// A vector name may carry bindings in several variances; a variance that
/// is not bound is derived from another binding through the bra relation
/// and the metric. With `basis = Some(p)` the names `p1 .. pN` denote the
/// canonical dual bases: `kd:pi` is `e_i`, `bu:pi` the dual form with
/// `<pi|pj> = delta`, `bd:pi` and `ku:pi` their partners in the coupled
/// space.
#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    pub metric: MetricOperator,
    pub vectors: BTreeMap<String, Vec<VarVector>>,
    pub operators: BTreeMap<String, KindedOperator>,
    pub basis: Option<String>,
}

impl Environment {
    pub fn new(metric: MetricOperator) -> Self {
        Self {
            metric,
            vectors: BTreeMap::new(),
            operators: BTreeMap::new(),
            basis: None,
        }
    }

    pub fn dimension(&self) -> usize {
        self.metric.dim()
    }

    pub fn with_basis(mut self, prefix: &str) -> Self {
        self.basis = Some(prefix.to_string());
        self
    }

    pub fn bind_vector(&mut self, name: &str, v: VarVector) -> DslResult<()> {
        if v.dim() != self.dimension() {
            return Err(DslError::Type(format!(
                "vector {name:?} has dimension {}, environment has {}",
                v.dim(),
                self.dimension()
            )));
        }
        let slot = self.vectors.entry(name.to_string()).or_default();
        if slot.iter().any(|b| b.variance == v.variance) {
            return Err(DslError::Type(format!(
                "vector {name:?} bound twice as {}",
                v.variance.name()
            )));
        }
        slot.push(v);
        Ok(())
    }

    pub fn bind_operator(&mut self, name: &str, op: KindedOperator) -> DslResult<()> {
        if op.dim() != self.dimension() {
            return Err(DslError::Type(format!(
                "operator {name:?} has dimension {}, environment has {}",
                op.dim(),
                self.dimension()
            )));
        }
        self.operators.insert(name.to_string(), op);
        Ok(())
    }

    pub fn operator(&self, name: &str) -> DslResult<&KindedOperator> {
        self.operators
            .get(name)
            .ok_or_else(|| DslError::UnboundName(name.to_string()))
    }

    fn basis_index(&self, name: &str) -> Option<usize> {
        let rest = name.strip_prefix(self.basis.as_deref()?)?;
        if rest.starts_with('0') {
            return None;
        }
        let k: usize = rest.parse().ok()?;
        (1..=self.dimension()).contains(&k).then_some(k)
    }

    /// The vector `name` in the requested variance.
    pub fn vector(&self, name: &str, variance: Variance) -> DslResult<VarVector> {
        if let Some(bindings) = self.vectors.get(name) {
            if let Some(b) = bindings.iter().find(|b| b.variance == variance) {
                return Ok(b.clone());
            }
            return self.derive(&bindings[0], variance);
        }
        if let Some(k) = self.basis_index(name) {
            // all four dual basis elements have unit components
            let mut e = vec![Complex64::new(0.0, 0.0); self.dimension()];
            e[k - 1] = Complex64::new(1.0, 0.0);
            return Ok(VarVector::new(e, variance));
        }
        Err(DslError::UnboundName(name.to_string()))
    }

    fn derive(&self, from: &VarVector, to: Variance) -> DslResult<VarVector> {
        let ket = if from.variance.is_ket() {
            from.clone()
        } else {
            cvs::relate_ket(from)?
        };
        let target_slot = slot_of(to);
        let ket = if slot_of(ket.variance) == target_slot {
            ket
        } else {
            cvs::couple(&self.metric, &ket)?
        };
        if to == bra_of(target_slot) {
            Ok(cvs::relate_bra(&ket)?)
        } else {
            Ok(ket)
        }
    }
}
