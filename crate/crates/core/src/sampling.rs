//! Random generators for metrics, operators, projectors and gauge
//! parameters. Samples are rejected and redrawn until reasonably
//! conditioned, so identities can be checked at tight tolerances.

use num_complex::Complex64;
use rand::Rng;

use crate::cvs::{MetricOperator, VarVector};
use crate::error::Result;
use crate::numkernel::{self, ComplexMatrix, Tolerances};
use crate::opalg::{KindedOperator, OperatorKind};
use crate::projections::Projector;
use crate::transforms::GaugeParams;

const MAX_CONDITION: f64 = 1e3;
const MAX_TRIES: usize = 1000;

pub fn complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

/// Entries with real and imaginary parts uniform in `[-1, 1]`.
pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let entries = (0..rows * cols).map(|_| complex(rng)).collect();
    ComplexMatrix::new(rows, cols, entries).expect("non-empty shape")
}

pub fn real_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let entries = (0..rows * cols)
        .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), 0.0))
        .collect();
    ComplexMatrix::new(rows, cols, entries).expect("non-empty shape")
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| complex(rng)).collect()
}

pub fn ket_down<R: Rng + ?Sized>(rng: &mut R, n: usize) -> VarVector {
    VarVector::ket_down(vector(rng, n))
}

/// `max|A| * max|A^-1|`, a cheap conditioning proxy.
fn condition(a: &ComplexMatrix, inv: &ComplexMatrix) -> f64 {
    a.max_abs() * inv.max_abs() * a.rows() as f64
}

/// Random invertible matrix with bounded conditioning.
pub fn invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    for _ in 0..MAX_TRIES {
        let a = matrix(rng, n, n);
        if let Ok(inv) = a.inverse(1e-6) {
            if condition(&a, &inv) < MAX_CONDITION {
                return a;
            }
        }
    }
    panic!("no well-conditioned {n}x{n} matrix after {MAX_TRIES} draws")
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = matrix(rng, n, n);
    (&a + &a.conj_transpose()).scale_real(0.5)
}

/// Unitary `exp(iH)` for a random hermitian `H`.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let h = hermitian(rng, n).scale(Complex64::new(0.0, 1.0));
    numkernel::expm(&h).expect("square")
}

/// `T^+ eta T` for a random well-conditioned `T`.
pub fn congruence<R: Rng + ?Sized>(rng: &mut R, m: &MetricOperator) -> MetricOperator {
    for _ in 0..MAX_TRIES {
        let t = invertible(rng, m.dim());
        let eta = &(&t.conj_transpose() * m.eta()) * &t;
        if let Ok(out) = MetricOperator::new(eta, &Tolerances::default()) {
            if condition(out.eta(), out.eta_inv()) < MAX_CONDITION {
                return out;
            }
        }
    }
    panic!("no well-conditioned congruence after {MAX_TRIES} draws")
}

/// Random hermitian invertible metric of signature `(p, q)`.
pub fn metric_with_signature<R: Rng + ?Sized>(rng: &mut R, p: usize, q: usize) -> MetricOperator {
    let diag: Vec<f64> = (0..p + q).map(|k| if k < p { 1.0 } else { -1.0 }).collect();
    let base = MetricOperator::from_real_diag(&diag).expect("diagonal +-1 metric");
    congruence(rng, &base)
}

/// `U^+ D U` with `U` unitary and `D = diag(+1 x p, -1 x q)`: a random
/// metric of signature `(p, q)` whose inverse is `U^+ D U` as well.
pub fn unitary_metric<R: Rng + ?Sized>(rng: &mut R, p: usize, q: usize) -> MetricOperator {
    let diag: Vec<f64> = (0..p + q).map(|k| if k < p { 1.0 } else { -1.0 }).collect();
    let u = unitary(rng, p + q);
    let eta = &(&u.conj_transpose() * &ComplexMatrix::from_real_diag(&diag)) * &u;
    let eta = (&eta + &eta.conj_transpose()).scale_real(0.5);
    MetricOperator::new(eta, &Tolerances::default()).expect("unitary congruence of a +-1 diagonal")
}

/// Random hermitian invertible metric of dimension `n` and random signature.
pub fn metric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MetricOperator {
    let p = rng.random_range(0..=n);
    metric_with_signature(rng, p, n - p)
}

pub fn operator<R: Rng + ?Sized>(rng: &mut R, n: usize, kind: OperatorKind) -> KindedOperator {
    KindedOperator {
        mat: matrix(rng, n, n),
        kind,
    }
}

/// Semi-hermitian projector onto the column span of `w`:
/// `P = W (W^+ eta W)^-1 W^+ eta`. Fails if the span is degenerate for `m`.
pub fn semi_hermitian_projector_onto(m: &MetricOperator, w: &ComplexMatrix) -> Result<Projector> {
    let wh_eta = &w.conj_transpose() * m.eta();
    let gram = &wh_eta * w;
    let gram_inv = gram.inverse(1e-6)?;
    let p = &(w * &gram_inv) * &wh_eta;
    Projector::from_matrix(p, 1e-8)
}

fn well_conditioned_projector(m: &MetricOperator, w: &ComplexMatrix) -> Option<Projector> {
    let p = semi_hermitian_projector_onto(m, w).ok()?;
    (p.mat().max_abs() < 50.0).then_some(p)
}

/// Random semi-hermitian projector of the given rank.
pub fn semi_hermitian_projector<R: Rng + ?Sized>(
    rng: &mut R,
    m: &MetricOperator,
    rank: usize,
) -> Projector {
    for _ in 0..MAX_TRIES {
        let w = matrix(rng, m.dim(), rank);
        if let Some(p) = well_conditioned_projector(m, &w) {
            return p;
        }
    }
    panic!("no non-degenerate rank-{rank} subspace after {MAX_TRIES} draws")
}

/// A pair of semi-hermitian projectors. With `additive` the second range
/// lies in the metric-orthogonal complement of the first; otherwise both
/// ranges are drawn independently.
pub fn semi_hermitian_pair<R: Rng + ?Sized>(
    rng: &mut R,
    m: &MetricOperator,
    additive: bool,
) -> (Projector, Projector) {
    let n = m.dim();
    assert!(n >= 2, "pairs need dimension at least 2");
    for _ in 0..MAX_TRIES {
        let k1 = rng.random_range(1..n);
        let k2 = rng.random_range(1..=n - k1);
        let p1 = semi_hermitian_projector(rng, m, k1);
        let w2 = if additive {
            let complement = &ComplexMatrix::identity(n) - p1.mat();
            &complement * &matrix(rng, n, k2)
        } else {
            matrix(rng, n, k2)
        };
        if let Some(p2) = well_conditioned_projector(m, &w2) {
            return (p1, p2);
        }
    }
    panic!("no projector pair after {MAX_TRIES} draws")
}

/// Gauge parameters with `omega^{ij} + conj(omega^{ji}) = 0` and every
/// entry of modulus at most `bound`.
pub fn gauge_params<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: f64) -> GaugeParams {
    let part = bound / std::f64::consts::SQRT_2;
    let mut omega = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        omega[(i, i)] = Complex64::new(0.0, rng.random_range(-bound..=bound));
        for j in (i + 1)..n {
            let z = Complex64::new(rng.random_range(-part..=part), rng.random_range(-part..=part));
            omega[(i, j)] = z;
            omega[(j, i)] = -z.conj();
        }
    }
    GaugeParams { omega }
}

/// Unconstrained parameters with entries of modulus at most `bound`.
pub fn free_params<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: f64) -> GaugeParams {
    GaugeParams {
        omega: matrix(rng, n, n).scale_real(bound / std::f64::consts::SQRT_2),
    }
}
