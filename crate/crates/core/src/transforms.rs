//! Basis transformations, the semi-unitarity test and the `GL(N, C)`
//! generator families.
//!
//! Generator indices are 1-based, matching basis labels `(1) .. (N)`.

use num_complex::Complex64;

use crate::cvs::MetricOperator;
use crate::error::{Error, Result};
use crate::numkernel::{self, ComplexMatrix, Tolerances};
use crate::opalg::{self, KindedOperator, OperatorKind};

/// An invertible change of basis `|(i)'> = T |(i)>`, with its inverse cached.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange {
    t: ComplexMatrix,
    t_inv: ComplexMatrix,
}

impl BasisChange {
    pub fn new(t: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let t_inv = numkernel::inverse(&t, tol)?;
        Ok(Self { t, t_inv })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            t: ComplexMatrix::identity(n),
            t_inv: ComplexMatrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn inverse(&self) -> &ComplexMatrix {
        &self.t_inv
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    /// Dirac adjoint of `T` under `m`: `eta^-1 T^+ eta`.
    pub fn bar(&self, m: &MetricOperator) -> ComplexMatrix {
        &(m.eta_inv() * &self.t.conj_transpose()) * m.eta()
    }

    /// Components of `v` in the new basis: `T^-1 v`.
    pub fn new_components(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.t_inv.mat_vec(v)
    }

    fn check(&self, op: &'static str, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                op,
                left: self.t.shape(),
                right: (n, n),
            });
        }
        Ok(())
    }
}

/// Parameters `omega^{ij}` of a group element `exp(omega^{ij} X_ij)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeParams {
    pub omega: ComplexMatrix,
}

impl GaugeParams {
    pub fn new(omega: ComplexMatrix) -> Result<Self> {
        if !omega.is_square() {
            return Err(Error::DimensionMismatch {
                op: "gauge_params",
                left: omega.shape(),
                right: omega.shape(),
            });
        }
        Ok(Self { omega })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            omega: ComplexMatrix::zeros(n, n),
        }
    }

    /// Max violation of `omega^{ij} + conj(omega^{ji}) = 0`.
    pub fn gauge_violation(&self) -> f64 {
        (&self.omega + &self.omega.conj_transpose()).max_abs()
    }

    /// Real part antisymmetric and imaginary part symmetric within `tol`.
    pub fn is_gauge(&self, tol: f64) -> bool {
        self.gauge_violation() <= tol
    }

    /// Nearest parameters satisfying the gauge constraint: the
    /// anti-hermitian part of `omega`.
    pub fn gauge_projection(&self) -> Self {
        Self {
            omega: (&self.omega - &self.omega.conj_transpose()).scale_real(0.5),
        }
    }
}

/// `eta' = T^+ eta T`. Hermiticity and inertia are preserved.
pub fn transform_metric(
    bc: &BasisChange,
    m: &MetricOperator,
    tol: &Tolerances,
) -> Result<MetricOperator> {
    bc.check("transform_metric", m.dim())?;
    let eta = &(&bc.t.conj_transpose() * m.eta()) * &bc.t;
    MetricOperator::new(eta, tol)
}

/// Component transformation law for each operator kind.
pub fn transform_operator(bc: &BasisChange, x: &KindedOperator) -> Result<KindedOperator> {
    bc.check("transform_operator", x.dim())?;
    let t = &bc.t;
    let t_inv = &bc.t_inv;
    let mat = match x.kind {
        OperatorKind::DownDown => &(t_inv * &x.mat) * t,
        OperatorKind::UpUp => &(&t.conj_transpose() * &x.mat) * &t_inv.conj_transpose(),
        OperatorKind::DownUp => &(&t.conj_transpose() * &x.mat) * t,
        OperatorKind::UpDown => &(t_inv * &x.mat) * &t_inv.conj_transpose(),
    };
    Ok(KindedOperator { mat, kind: x.kind })
}

/// `max |U^+ eta U - eta|`.
pub fn symmetry_deviation(u: &ComplexMatrix, m: &MetricOperator) -> Result<f64> {
    if u.shape() != m.eta().shape() {
        return Err(Error::DimensionMismatch {
            op: "is_symmetry",
            left: u.shape(),
            right: m.eta().shape(),
        });
    }
    let lhs = &(&u.conj_transpose() * m.eta()) * u;
    Ok(lhs.max_abs_diff(m.eta()))
}

/// Semi-unitarity: `U^+ eta U = eta` within `tol`.
pub fn is_symmetry(u: &ComplexMatrix, m: &MetricOperator, tol: f64) -> Result<bool> {
    Ok(symmetry_deviation(u, m)? <= tol)
}

fn check_index(i: usize, j: usize, n: usize) -> Result<(usize, usize)> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange { i, j, dim: n });
    }
    Ok((i - 1, j - 1))
}

/// `X_ij = |(i)> <(j)| eta`, with entries `(X_ij)^k_l = delta^k_i eta_jl`.
pub fn generator_x(i: usize, j: usize, m: &MetricOperator) -> Result<KindedOperator> {
    let n = m.dim();
    let (i0, j0) = check_index(i, j, n)?;
    let mut mat = ComplexMatrix::zeros(n, n);
    for l in 0..n {
        mat[(i0, l)] = m.eta()[(j0, l)];
    }
    Ok(KindedOperator {
        mat,
        kind: OperatorKind::DownDown,
    })
}

/// Traceless `SL(N, C)` generator `H_ij = X_ij - (1/N) eta_ji 1`.
pub fn generator_h(i: usize, j: usize, m: &MetricOperator) -> Result<KindedOperator> {
    let n = m.dim();
    let x = generator_x(i, j, m)?;
    let shift = m.eta()[(j - 1, i - 1)] / n as f64;
    let mut mat = x.mat;
    for k in 0..n {
        mat[(k, k)] -= shift;
    }
    Ok(KindedOperator {
        mat,
        kind: OperatorKind::DownDown,
    })
}

/// Self-adjoint generators
/// `A_ij = (i/2)(X_ij - X_ji) + (1/N) Im(eta_ji) 1` and
/// `S_ij = -(1/2)(X_ij + X_ji) + (1/N) Re(eta_ji) 1`.
pub fn generators_a_s(
    i: usize,
    j: usize,
    m: &MetricOperator,
) -> Result<(KindedOperator, KindedOperator)> {
    let n = m.dim();
    let xij = generator_x(i, j, m)?.mat;
    let xji = generator_x(j, i, m)?.mat;
    let eta_ji = m.eta()[(j - 1, i - 1)];
    let id = ComplexMatrix::identity(n);

    let a = &(&xij - &xji).scale(Complex64::new(0.0, 0.5)) + &id.scale_real(eta_ji.im / n as f64);
    let s = &(&xij + &xji).scale_real(-0.5) + &id.scale_real(eta_ji.re / n as f64);
    Ok((
        KindedOperator {
            mat: a,
            kind: OperatorKind::DownDown,
        },
        KindedOperator {
            mat: s,
            kind: OperatorKind::DownDown,
        },
    ))
}

/// `sum_ij omega^{ij} X_ij`.
pub fn algebra_element(p: &GaugeParams, m: &MetricOperator) -> Result<ComplexMatrix> {
    let n = m.dim();
    if p.omega.rows() != n {
        return Err(Error::DimensionMismatch {
            op: "group_element",
            left: p.omega.shape(),
            right: m.eta().shape(),
        });
    }
    // (sum omega^{ij} X_ij)^k_l = sum_j omega^{kj} eta_jl
    Ok(&p.omega * m.eta())
}

/// `T(omega) = exp(omega^{ij} X_ij)`; semi-unitary when `p` satisfies the
/// gauge constraint.
pub fn group_element(p: &GaugeParams, m: &MetricOperator) -> Result<ComplexMatrix> {
    numkernel::expm(&algebra_element(p, m)?)
}

/// `X' = T X bar(T)`, the generator built from the transformed basis.
pub fn transform_generator(
    bc: &BasisChange,
    x: &KindedOperator,
    m: &MetricOperator,
) -> Result<KindedOperator> {
    if x.kind != OperatorKind::DownDown {
        return Err(Error::WrongKind {
            op: "transform_generator",
            got: x.kind,
        });
    }
    bc.check("transform_generator", x.dim())?;
    bc.check("transform_generator", m.dim())?;
    Ok(KindedOperator {
        mat: &(&bc.t * &x.mat) * &bc.bar(m),
        kind: OperatorKind::DownDown,
    })
}

/// A basis change bringing `m` to `diag(+1, .., +1, -1, .., -1)`:
/// eigenvectors of the metric scaled by `1/sqrt|lambda|`, positive
/// eigenvalues first.
pub fn orthonormalizing_change(m: &MetricOperator, tol: &Tolerances) -> Result<BasisChange> {
    let eig = numkernel::hermitian_eigen(m.eta(), tol)?;
    let mut order: Vec<usize> = (0..eig.values.len()).collect();
    order.sort_by(|&a, &b| eig.values[b].total_cmp(&eig.values[a]));
    let mut columns = Vec::with_capacity(order.len());
    for &k in &order {
        let lambda = eig.values[k];
        if lambda.abs() < tol.sig_tol {
            return Err(Error::DegenerateMetric { eigenvalue: lambda });
        }
        let s = 1.0 / lambda.abs().sqrt();
        columns.push(eig.vectors.column(k).iter().map(|z| z * s).collect());
    }
    BasisChange::new(ComplexMatrix::from_columns(&columns)?, tol)
}

/// Real dimension of the solution space of `omega + omega^+ = 0` over
/// `N x N` complex parameters, computed as `2N^2 - rank` of the real
/// constraint system.
pub fn gauge_parameter_dimension(n: usize) -> usize {
    let unknowns = 2 * n * n;
    // unknown layout: re(omega^{ij}) at 2(iN+j), im at 2(iN+j)+1
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = 2 * (i * n + j);
            let b = 2 * (j * n + i);
            let mut re = vec![0.0; unknowns];
            re[a] += 1.0;
            re[b] += 1.0;
            let mut im = vec![0.0; unknowns];
            im[a + 1] += 1.0;
            im[b + 1] -= 1.0;
            rows.push(re);
            rows.push(im);
        }
    }
    unknowns - real_rank(rows, 1e-12)
}

fn real_rank(mut rows: Vec<Vec<f64>>, tol: f64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs()))
        else {
            break;
        };
        if rows[p][c].abs() <= tol {
            continue;
        }
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank {
                let f = row[c] / pivot[c];
                if f != 0.0 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= f * y;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `bar(X_ij) = X_ji` deviation, used by callers checking generator algebra.
pub fn generator_adjoint_deviation(i: usize, j: usize, m: &MetricOperator) -> Result<f64> {
    let bar = opalg::dirac_adjoint(&generator_x(i, j, m)?, m)?;
    Ok(bar.mat.max_abs_diff(&generator_x(j, i, m)?.mat))
}
