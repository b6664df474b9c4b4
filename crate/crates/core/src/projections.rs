//! Projection operators on a coupled space: perp-ness, additivity,
//! coupled-subspace metrics and the orthonormal `P+ / P-` split.

use num_complex::Complex64;

use crate::cvs::MetricOperator;
use crate::error::{Error, Result};
use crate::numkernel::ComplexMatrix;
use crate::opalg::{KindedOperator, OperatorKind};

/// Idempotent ket-down operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    op: KindedOperator,
}

impl Projector {
    pub fn new(op: KindedOperator, tol: f64) -> Result<Self> {
        if op.kind != OperatorKind::DownDown {
            return Err(Error::WrongKind {
                op: "projector",
                got: op.kind,
            });
        }
        let deviation = (&op.mat * &op.mat).max_abs_diff(&op.mat);
        if deviation > tol {
            return Err(Error::NotIdempotent { deviation });
        }
        Ok(Self { op })
    }

    pub fn from_matrix(mat: ComplexMatrix, tol: f64) -> Result<Self> {
        Self::new(KindedOperator::down_down(mat)?, tol)
    }

    pub fn op(&self) -> &KindedOperator {
        &self.op
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.op.mat
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// Rank, read off the trace (exact for projectors up to round-off).
    pub fn rank(&self) -> usize {
        self.op.mat.trace().re.round().max(0.0) as usize
    }

    pub fn into_op(self) -> KindedOperator {
        self.op
    }
}

fn check_dims(op: &'static str, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op,
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(())
}

/// `P^+ eta Q = 0` within `tol`.
pub fn is_perp(p: &Projector, q: &Projector, m: &MetricOperator, tol: f64) -> Result<bool> {
    check_dims("is_perp", p.mat(), q.mat())?;
    check_dims("is_perp", p.mat(), m.eta())?;
    let overlap = &(&p.mat().conj_transpose() * m.eta()) * q.mat();
    Ok(overlap.max_abs() <= tol)
}

/// `PQ = QP = 0` within `tol`. When both vanish the sum must itself be a
/// projector; a sum failing that check is reported as not additive.
pub fn is_additive(p: &Projector, q: &Projector, tol: f64) -> Result<bool> {
    check_dims("is_additive", p.mat(), q.mat())?;
    let pq = p.mat() * q.mat();
    let qp = q.mat() * p.mat();
    if pq.max_abs() > tol || qp.max_abs() > tol {
        return Ok(false);
    }
    let sum = p.mat() + q.mat();
    Ok((&sum * &sum).max_abs_diff(&sum) <= 2.0 * tol)
}

/// Deviation from `P^+ eta = eta P`.
pub fn semi_hermitian_deviation(p: &Projector, m: &MetricOperator) -> Result<f64> {
    check_dims("semi_hermitian", p.mat(), m.eta())?;
    let lhs = &p.mat().conj_transpose() * m.eta();
    let rhs = m.eta() * p.mat();
    Ok(lhs.max_abs_diff(&rhs))
}

/// Metric of the coupled subspace `P K`: `eta_P = eta P`. Requires `P`
/// semi-hermitian and checks `eta_P` hermitian together with
/// `eta_P (P eta^-1) = P^+` and `(P eta^-1) eta_P = P`.
pub fn coupled_subspace_metric(
    p: &Projector,
    m: &MetricOperator,
    tol: f64,
) -> Result<ComplexMatrix> {
    let deviation = semi_hermitian_deviation(p, m)?;
    if deviation > tol {
        return Err(Error::NotSemiHermitian { deviation });
    }
    let eta_p = m.eta() * p.mat();
    let eta_p_inv = p.mat() * m.eta_inv();
    let checks = [
        eta_p.hermitian_deviation(),
        (&eta_p * &eta_p_inv).max_abs_diff(&p.mat().conj_transpose()),
        (&eta_p_inv * &eta_p).max_abs_diff(p.mat()),
    ];
    let worst = checks.iter().copied().fold(0.0, f64::max);
    if worst > tol {
        return Err(Error::NotSemiHermitian { deviation: worst });
    }
    Ok(eta_p)
}

/// The rank-one projectors onto each basis vector; a complete additive set.
pub fn elementary_projectors(n: usize) -> Vec<Projector> {
    (0..n)
        .map(|i| {
            let mut mat = ComplexMatrix::zeros(n, n);
            mat[(i, i)] = Complex64::new(1.0, 0.0);
            Projector {
                op: KindedOperator {
                    mat,
                    kind: OperatorKind::DownDown,
                },
            }
        })
        .collect()
}

/// Sums of the elementary projectors over the `+1` and `-1` diagonal
/// entries of an orthonormal metric.
pub fn orthonormal_split(m: &MetricOperator) -> Result<(Projector, Projector)> {
    if !m.is_orthonormal() {
        return Err(Error::NotOrthonormalMetric);
    }
    let diag = m.eta().diagonal();
    let pick = |sign: f64| {
        let d: Vec<f64> = diag
            .iter()
            .map(|z| if z.re == sign { 1.0 } else { 0.0 })
            .collect();
        Projector {
            op: KindedOperator {
                mat: ComplexMatrix::from_real_diag(&d),
                kind: OperatorKind::DownDown,
            },
        }
    };
    Ok((pick(1.0), pick(-1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn proj(rows: &[&[f64]]) -> Projector {
        Projector::from_matrix(ComplexMatrix::from_real_rows(rows).unwrap(), 1e-12).unwrap()
    }

    #[test]
    fn perp_examples() {
        let m = MetricOperator::from_real_diag(&[1.0, -1.0]).unwrap();
        let p = proj(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let q = proj(&[&[0.0, 0.0], &[0.0, 1.0]]);
        assert!(!is_perp(&p, &p, &m, 1e-12).unwrap());
        assert!(is_perp(&p, &q, &m, 1e-12).unwrap());

        // additive but not perp: the pair is not semi-hermitian
        let p = proj(&[&[1.0, 1.0], &[0.0, 0.0]]);
        let q = proj(&[&[0.0, -1.0], &[0.0, 1.0]]);
        assert!((p.mat() * q.mat()).max_abs() == 0.0);
        assert!(is_additive(&p, &q, 1e-12).unwrap());
        assert!(!is_perp(&p, &q, &m, 1e-12).unwrap());
    }

    #[test]
    fn additive_examples() {
        let p = proj(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let q = proj(&[&[0.0, 0.0], &[0.0, 1.0]]);
        assert!(is_additive(&p, &q, 1e-12).unwrap());
        assert!(!is_additive(&p, &p, 1e-12).unwrap());
    }

    #[test]
    fn rejects_non_idempotent() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 2.0]]).unwrap();
        assert!(matches!(
            Projector::from_matrix(m, 1e-12),
            Err(Error::NotIdempotent { .. })
        ));
    }

    #[test]
    fn coupled_subspace_metric_examples() {
        let m = MetricOperator::from_real_diag(&[1.0, -1.0, -1.0, -1.0]).unwrap();
        let id = Projector::from_matrix(ComplexMatrix::identity(4), 1e-12).unwrap();
        assert_eq!(coupled_subspace_metric(&id, &m, 1e-12).unwrap(), *m.eta());

        let p = Projector::from_matrix(ComplexMatrix::from_real_diag(&[1.0, 1.0, 0.0, 0.0]), 1e-12).unwrap();
        assert_eq!(
            coupled_subspace_metric(&p, &m, 1e-12).unwrap(),
            ComplexMatrix::from_real_diag(&[1.0, -1.0, 0.0, 0.0])
        );

        let m2 = MetricOperator::from_real_diag(&[1.0, -1.0]).unwrap();
        let bad = proj(&[&[1.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            coupled_subspace_metric(&bad, &m2, 1e-12),
            Err(Error::NotSemiHermitian { .. })
        ));
    }

    #[test]
    fn elementary_projectors_complete() {
        let ps = elementary_projectors(2);
        assert_eq!(*ps[0].mat(), ComplexMatrix::from_real_diag(&[1.0, 0.0]));
        assert_eq!(*ps[1].mat(), ComplexMatrix::from_real_diag(&[0.0, 1.0]));

        let ps = elementary_projectors(4);
        let sum = ps.iter().fold(ComplexMatrix::zeros(4, 4), |acc, p| &acc + p.mat());
        assert_eq!(sum, ComplexMatrix::identity(4));
        for (i, p) in ps.iter().enumerate() {
            for (j, q) in ps.iter().enumerate() {
                assert_eq!(is_additive(p, q, 0.0).unwrap(), i != j);
            }
        }
        let m = MetricOperator::from_real_diag(&[1.0, -1.0, 2.0, -0.5]).unwrap();
        for p in &ps {
            assert_eq!(semi_hermitian_deviation(p, &m).unwrap(), 0.0);
        }
    }

    #[test]
    fn orthonormal_split_examples() {
        let m = MetricOperator::from_real_diag(&[1.0, -1.0, -1.0, -1.0]).unwrap();
        let (pp, pm) = orthonormal_split(&m).unwrap();
        assert_eq!((pp.rank(), pm.rank()), (1, 3));
        assert_eq!(pp.mat() + pm.mat(), ComplexMatrix::identity(4));
        assert!(is_perp(&pp, &pm, &m, 0.0).unwrap());

        let unit = MetricOperator::unit(3);
        let (pp, pm) = orthonormal_split(&unit).unwrap();
        assert_eq!(*pp.mat(), ComplexMatrix::identity(3));
        assert_eq!(pm.mat().max_abs(), 0.0);

        let m = MetricOperator::from_real_diag(&[2.0, -1.0]).unwrap();
        assert!(matches!(
            orthonormal_split(&m),
            Err(Error::NotOrthonormalMetric)
        ));
    }

    #[test]
    fn orthonormal_split_reassembles_metric() {
        let m = MetricOperator::from_real_diag(&[1.0, -1.0]).unwrap();
        let (pp, pm) = orthonormal_split(&m).unwrap();
        let eta_plus = coupled_subspace_metric(&pp, &m, 1e-12).unwrap();
        let eta_minus = coupled_subspace_metric(&pm, &m, 1e-12).unwrap();
        assert_eq!(eta_plus, ComplexMatrix::from_real_diag(&[1.0, 0.0]));
        assert_eq!(eta_minus, ComplexMatrix::from_real_diag(&[0.0, -1.0]));
        assert_eq!(&eta_plus + &eta_minus, *m.eta());
    }
}
