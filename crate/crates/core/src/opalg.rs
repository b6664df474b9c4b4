//! Kind-checked operator algebra.
//!
//! Every operator is a square matrix plus one of four kinds recording which
//! ket space it reads from and which it writes to. The kind enforces the
//! slash grammar: only chains whose variances line up compose, and only
//! operators of the same kind add.

use num_complex::Complex64;

use crate::cvs::{MetricOperator, VarVector, Variance};
use crate::error::{Error, Result};
use crate::numkernel::ComplexMatrix;

/// The ket space an operator reads from or writes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Down,
    Up,
}

impl Slot {
    pub fn ket(self) -> Variance {
        match self {
            Slot::Down => Variance::KetDown,
            Slot::Up => Variance::KetUp,
        }
    }
}

/// Operator kinds named input-then-output: `DownUp` maps ket-down to ket-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// `/A/`
    DownDown,
    /// `\B\`
    UpUp,
    /// `\A/`, the kind of the metric.
    DownUp,
    /// `/B\`, the kind of the inverse metric.
    UpDown,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 4] = [
        OperatorKind::DownDown,
        OperatorKind::UpUp,
        OperatorKind::DownUp,
        OperatorKind::UpDown,
    ];

    pub fn from_slots(input: Slot, output: Slot) -> Self {
        match (input, output) {
            (Slot::Down, Slot::Down) => OperatorKind::DownDown,
            (Slot::Up, Slot::Up) => OperatorKind::UpUp,
            (Slot::Down, Slot::Up) => OperatorKind::DownUp,
            (Slot::Up, Slot::Down) => OperatorKind::UpDown,
        }
    }

    pub fn input(self) -> Slot {
        match self {
            OperatorKind::DownDown | OperatorKind::DownUp => Slot::Down,
            OperatorKind::UpUp | OperatorKind::UpDown => Slot::Up,
        }
    }

    pub fn output(self) -> Slot {
        match self {
            OperatorKind::DownDown | OperatorKind::UpDown => Slot::Down,
            OperatorKind::UpUp | OperatorKind::DownUp => Slot::Up,
        }
    }

    /// Kind of `self ∘ right`, if the chain is legal.
    pub fn compose(self, right: OperatorKind) -> Option<OperatorKind> {
        (right.output() == self.input()).then(|| OperatorKind::from_slots(right.input(), self.output()))
    }

    /// Kind of the hermitian adjoint.
    pub fn adjoint(self) -> OperatorKind {
        match self {
            OperatorKind::DownDown => OperatorKind::UpUp,
            OperatorKind::UpUp => OperatorKind::DownDown,
            cross => cross,
        }
    }

    pub fn is_cross(self) -> bool {
        matches!(self, OperatorKind::DownUp | OperatorKind::UpDown)
    }

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::DownDown => "DownDown",
            OperatorKind::UpUp => "UpUp",
            OperatorKind::DownUp => "DownUp",
            OperatorKind::UpDown => "UpDown",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// Square matrix tagged with its operator kind.
#[derive(Debug, Clone, PartialEq)]
pub struct KindedOperator {
    pub mat: ComplexMatrix,
    pub kind: OperatorKind,
}

impl KindedOperator {
    pub fn new(mat: ComplexMatrix, kind: OperatorKind) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch {
                op: "operator",
                left: mat.shape(),
                right: mat.shape(),
            });
        }
        Ok(Self { mat, kind })
    }

    pub fn down_down(mat: ComplexMatrix) -> Result<Self> {
        Self::new(mat, OperatorKind::DownDown)
    }

    /// `//`
    pub fn identity_down(n: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(n),
            kind: OperatorKind::DownDown,
        }
    }

    /// `\\`
    pub fn identity_up(n: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(n),
            kind: OperatorKind::UpUp,
        }
    }

    /// `\/`
    pub fn metric(m: &MetricOperator) -> Self {
        Self {
            mat: m.eta().clone(),
            kind: OperatorKind::DownUp,
        }
    }

    /// `/\`
    pub fn metric_inv(m: &MetricOperator) -> Self {
        Self {
            mat: m.eta_inv().clone(),
            kind: OperatorKind::UpDown,
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            mat: self.mat.scale(factor),
            kind: self.kind,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        add(self, &other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Applies the operator to a ket of its input variance.
    pub fn apply(&self, v: &VarVector) -> Result<VarVector> {
        if v.variance != self.kind.input().ket() {
            return Err(Error::WrongVariance {
                op: "apply",
                got: v.variance,
            });
        }
        Ok(VarVector::new(
            self.mat.mat_vec(&v.components)?,
            self.kind.output().ket(),
        ))
    }
}

fn check_same_dim(op: &'static str, x: &KindedOperator, y: &KindedOperator) -> Result<()> {
    if x.mat.shape() != y.mat.shape() {
        return Err(Error::DimensionMismatch {
            op,
            left: x.mat.shape(),
            right: y.mat.shape(),
        });
    }
    Ok(())
}

/// `X ∘ Y`: `Y` acts first, so its output must feed the input of `X`.
pub fn compose(x: &KindedOperator, y: &KindedOperator) -> Result<KindedOperator> {
    let kind = x.kind.compose(y.kind).ok_or(Error::KindMismatch {
        op: "compose",
        left: x.kind,
        right: y.kind,
    })?;
    check_same_dim("compose", x, y)?;
    Ok(KindedOperator {
        mat: x.mat.matmul(&y.mat)?,
        kind,
    })
}

pub fn add(x: &KindedOperator, y: &KindedOperator) -> Result<KindedOperator> {
    if x.kind != y.kind {
        return Err(Error::KindMismatch {
            op: "add",
            left: x.kind,
            right: y.kind,
        });
    }
    check_same_dim("add", x, y)?;
    Ok(KindedOperator {
        mat: x.mat.try_add(&y.mat)?,
        kind: x.kind,
    })
}

/// Entrywise conjugate transpose; swaps `DownDown` and `UpUp`, keeps cross kinds.
pub fn hermitian_adjoint(x: &KindedOperator) -> KindedOperator {
    KindedOperator {
        mat: x.mat.conj_transpose(),
        kind: x.kind.adjoint(),
    }
}

fn check_metric_dim(op: &'static str, m: &MetricOperator, x: &KindedOperator) -> Result<()> {
    if m.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            op,
            left: m.eta().shape(),
            right: x.mat.shape(),
        });
    }
    Ok(())
}

/// The coupled partner `eta A eta^-1` of a ket-down operator, or
/// `eta^-1 B eta` of a ket-up one.
pub fn couple_operator(m: &MetricOperator, a: &KindedOperator) -> Result<KindedOperator> {
    check_metric_dim("couple_operator", m, a)?;
    match a.kind {
        OperatorKind::DownDown => Ok(KindedOperator {
            mat: &(m.eta() * &a.mat) * m.eta_inv(),
            kind: OperatorKind::UpUp,
        }),
        OperatorKind::UpUp => Ok(KindedOperator {
            mat: &(m.eta_inv() * &a.mat) * m.eta(),
            kind: OperatorKind::DownDown,
        }),
        other => Err(Error::WrongKind {
            op: "couple_operator",
            got: other,
        }),
    }
}

/// Dirac adjoint: `eta^-1 X^+ eta` on ket-down operators, `eta X^+ eta^-1`
/// on ket-up operators, and the plain hermitian adjoint on cross kinds.
pub fn dirac_adjoint(x: &KindedOperator, m: &MetricOperator) -> Result<KindedOperator> {
    check_metric_dim("dirac_adjoint", m, x)?;
    let h = x.mat.conj_transpose();
    let mat = match x.kind {
        OperatorKind::DownDown => &(m.eta_inv() * &h) * m.eta(),
        OperatorKind::UpUp => &(m.eta() * &h) * m.eta_inv(),
        _ => h,
    };
    Ok(KindedOperator { mat, kind: x.kind })
}

/// Max entrywise distance between `X^+` and the coupled operator of `X`.
pub fn semi_hermitian_deviation(x: &KindedOperator, m: &MetricOperator) -> Result<f64> {
    if x.kind.is_cross() {
        return Err(Error::WrongKind {
            op: "is_semi_hermitian",
            got: x.kind,
        });
    }
    let adj = hermitian_adjoint(x);
    let coupled = couple_operator(m, x)?;
    Ok(adj.mat.max_abs_diff(&coupled.mat))
}

/// `X^+ = eta X eta^-1` (equivalently `bar(X) = X`) within `tol`.
pub fn is_semi_hermitian(x: &KindedOperator, m: &MetricOperator, tol: f64) -> Result<bool> {
    Ok(semi_hermitian_deviation(x, m)? <= tol)
}

/// Trace, defined only for operators mapping a space into itself.
pub fn trace(x: &KindedOperator) -> Result<Complex64> {
    if x.kind.is_cross() {
        return Err(Error::WrongKind {
            op: "trace",
            got: x.kind,
        });
    }
    Ok(x.mat.trace())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn kind_table_has_eight_legal_chains() {
        let legal = OperatorKind::ALL
            .iter()
            .flat_map(|&a| OperatorKind::ALL.iter().map(move |&b| a.compose(b)))
            .filter(Option::is_some)
            .count();
        assert_eq!(legal, 8);
        assert_eq!(
            OperatorKind::DownUp.compose(OperatorKind::UpDown),
            Some(OperatorKind::UpUp)
        );
        assert_eq!(OperatorKind::DownUp.compose(OperatorKind::DownUp), None);
    }

    #[test]
    fn metric_times_inverse_is_up_identity() {
        let m = MetricOperator::new(real(&[&[2.0, 1.0], &[1.0, -1.0]]), &Default::default()).unwrap();
        let prod = compose(&KindedOperator::metric(&m), &KindedOperator::metric_inv(&m)).unwrap();
        assert_eq!(prod.kind, OperatorKind::UpUp);
        assert!(prod.mat.approx_eq(&ComplexMatrix::identity(2), 1e-14));

        let prod = compose(&KindedOperator::metric_inv(&m), &KindedOperator::metric(&m)).unwrap();
        assert_eq!(prod.kind, OperatorKind::DownDown);
    }

    #[test]
    fn compose_and_add_rules() {
        let a = KindedOperator::down_down(real(&[&[1.0, 2.0], &[3.0, 4.0]])).unwrap();
        let id = KindedOperator::identity_down(2);
        assert_eq!(compose(&a, &id).unwrap(), a);

        let x = KindedOperator::new(a.mat.clone(), OperatorKind::DownUp).unwrap();
        assert!(matches!(compose(&x, &x), Err(Error::KindMismatch { .. })));

        let up = KindedOperator::identity_up(2);
        assert!(matches!(add(&id, &up), Err(Error::KindMismatch { .. })));

        let p = KindedOperator::down_down(real(&[&[1.0, 1.0], &[0.0, 0.0]])).unwrap();
        let q = id.sub(&p).unwrap();
        assert_eq!(add(&p, &q).unwrap(), id);
    }

    #[test]
    fn adjoint_of_metric_and_identity() {
        let m = MetricOperator::from_real_diag(&[1.0, -1.0, 1.0]).unwrap();
        let eta = KindedOperator::metric(&m);
        assert_eq!(hermitian_adjoint(&eta), eta);
        assert_eq!(
            hermitian_adjoint(&KindedOperator::identity_down(3)),
            KindedOperator::identity_up(3)
        );
        assert_eq!(dirac_adjoint(&eta, &m).unwrap(), eta);
        let id = KindedOperator::identity_down(3);
        assert_eq!(dirac_adjoint(&id, &m).unwrap(), id);
    }

    #[test]
    fn couple_operator_examples() {
        let a = KindedOperator::down_down(real(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap();
        let unit = MetricOperator::unit(2);
        assert_eq!(couple_operator(&unit, &a).unwrap().mat, a.mat);

        let m = MetricOperator::from_real_diag(&[1.0, -1.0]).unwrap();
        let hat = couple_operator(&m, &a).unwrap();
        assert_eq!(hat.kind, OperatorKind::UpUp);
        assert_eq!(hat.mat, real(&[&[0.0, -1.0], &[0.0, 0.0]]));

        let eta = KindedOperator::metric(&m);
        assert!(matches!(
            couple_operator(&m, &eta),
            Err(Error::WrongKind { .. })
        ));
    }

    #[test]
    fn semi_hermitian_examples() {
        let m = MetricOperator::from_real_diag(&[1.0, -1.0]).unwrap();
        assert!(is_semi_hermitian(&KindedOperator::identity_down(2), &m, 1e-12).unwrap());
        // hermitian, but eta A eta^-1 = -A
        let a = KindedOperator::down_down(real(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert!(!is_semi_hermitian(&a, &m, 1e-12).unwrap());
        assert!(matches!(
            is_semi_hermitian(&KindedOperator::metric(&m), &m, 1e-12),
            Err(Error::WrongKind { .. })
        ));
    }

    #[test]
    fn trace_rules() {
        assert_eq!(
            trace(&KindedOperator::identity_down(5)).unwrap(),
            Complex64::new(5.0, 0.0)
        );
        let m = MetricOperator::unit(2);
        assert!(matches!(
            trace(&KindedOperator::metric(&m)),
            Err(Error::WrongKind { .. })
        ));
    }
}
