//! Dense complex linear algebra used by every other module: products,
//! adjoints, inverses, hermitian eigen-signatures, exponentials and
//! Kronecker products.

mod eigen;
mod expm;
mod matrix;

pub use eigen::HermitianEigen;
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// Numerical thresholds shared across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Entrywise equality.
    pub eq_tol: f64,
    /// Hermiticity checks.
    pub herm_tol: f64,
    /// Eigenvalue zero threshold and inverse pivot threshold.
    pub sig_tol: f64,
    /// Metric preservation after the exponential map.
    pub sym_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eq_tol: 1e-10,
            herm_tol: 1e-10,
            sig_tol: 1e-9,
            sym_tol: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn new(eq_tol: f64, herm_tol: f64, sig_tol: f64, sym_tol: f64) -> Result<Self> {
        let t = Self {
            eq_tol,
            herm_tol,
            sig_tol,
            sym_tol,
        };
        if [eq_tol, herm_tol, sig_tol, sym_tol]
            .iter()
            .all(|x| x.is_finite() && *x > 0.0)
        {
            Ok(t)
        } else {
            Err(Error::InvalidShape(format!(
                "tolerances must be finite and positive: {t:?}"
            )))
        }
    }
}

/// Counts of positive and negative eigenvalues of a hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_minus: usize) -> Self {
        Self { n_plus, n_minus }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus
    }
}

impl From<Signature> for (usize, usize) {
    fn from(s: Signature) -> Self {
        (s.n_plus, s.n_minus)
    }
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn conj_transpose(a: &ComplexMatrix) -> ComplexMatrix {
    a.conj_transpose()
}

pub fn inverse(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    a.inverse(tol.sig_tol)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

fn require_hermitian(h: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            op: "hermitian",
            left: h.shape(),
            right: h.shape(),
        });
    }
    let deviation = h.hermitian_deviation();
    if deviation > tol.herm_tol * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Eigenvalues (ascending) and eigenvectors of a hermitian matrix.
pub fn hermitian_eigen(h: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEigen> {
    require_hermitian(h, tol)?;
    Ok(eigen::jacobi_hermitian(h))
}

/// Inertia of a hermitian matrix. Fails if any eigenvalue lies within
/// `sig_tol` of zero.
pub fn signature(h: &ComplexMatrix, tol: &Tolerances) -> Result<Signature> {
    let eig = hermitian_eigen(h, tol)?;
    let mut sig = Signature::new(0, 0);
    for &lambda in &eig.values {
        if lambda.abs() < tol.sig_tol {
            return Err(Error::DegenerateMetric { eigenvalue: lambda });
        }
        if lambda > 0.0 {
            sig.n_plus += 1;
        } else {
            sig.n_minus += 1;
        }
    }
    Ok(sig)
}

/// Matrix exponential. `expm(0)` is exactly the identity.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            op: "expm",
            left: a.shape(),
            right: a.shape(),
        });
    }
    Ok(expm::expm_square(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_examples() {
        let tol = Tolerances::default();
        let s = signature(&ComplexMatrix::from_real_diag(&[1.0, -1.0]), &tol).unwrap();
        assert_eq!((s.n_plus, s.n_minus), (1, 1));
        let s = signature(&ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0, -1.0]), &tol).unwrap();
        assert_eq!((s.n_plus, s.n_minus), (1, 3));
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(signature(&x, &tol).unwrap(), Signature::new(1, 1));
    }

    #[test]
    fn signature_errors() {
        let tol = Tolerances::default();
        let nh = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(signature(&nh, &tol), Err(Error::NotHermitian { .. })));
        let deg = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        assert!(matches!(signature(&deg, &tol), Err(Error::DegenerateMetric { .. })));
    }

    #[test]
    fn expm_examples() {
        let z = ComplexMatrix::zeros(3, 3);
        assert_eq!(expm(&z).unwrap(), ComplexMatrix::identity(3));

        let d = ComplexMatrix::from_real_diag(&[0.7, -2.5]);
        let e = expm(&d).unwrap();
        let expected = ComplexMatrix::from_real_diag(&[0.7f64.exp(), (-2.5f64).exp()]);
        assert!(e.approx_eq(&expected, 1e-14));

        // closed-form rotation
        for &theta in &[0.3, 1.0, 2.5, 7.0] {
            let gen = ComplexMatrix::from_real_rows(&[&[0.0, -theta], &[theta, 0.0]]).unwrap();
            let (c, s) = (f64::cos(theta), f64::sin(theta));
            let rot = ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).unwrap();
            assert!(expm(&gen).unwrap().approx_eq(&rot, 1e-13), "theta = {theta}");
        }

        assert!(expm(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn tolerances_must_be_positive() {
        assert!(Tolerances::new(1e-10, 0.0, 1e-9, 1e-8).is_err());
        assert!(Tolerances::new(1e-10, 1e-10, 1e-9, 1e-8).is_ok());
    }
}
