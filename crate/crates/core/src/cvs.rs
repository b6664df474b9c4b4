//! Coupled vector spaces in a fixed system of dual bases.
//!
//! A [`MetricOperator`] couples the ket-down space with the ket-up space.
//! Vectors carry their variance explicitly. Bra components are stored
//! already conjugated (they are the images of the anti-linear bra
//! relations), so pairing a bra with a ket is a plain bilinear sum.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, Signature, Tolerances};

/// Hermitian invertible metric with its cached inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricOperator {
    eta: ComplexMatrix,
    eta_inv: ComplexMatrix,
}

impl MetricOperator {
    /// Validates hermiticity and invertibility up front.
    pub fn new(eta: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !eta.is_square() {
            return Err(Error::DimensionMismatch {
                op: "metric",
                left: eta.shape(),
                right: eta.shape(),
            });
        }
        let deviation = eta.hermitian_deviation();
        if deviation > tol.herm_tol * eta.max_abs().max(1.0) {
            return Err(Error::NotHermitian { deviation });
        }
        let eta_inv = eta.inverse(tol.sig_tol)?;
        let n = eta.rows();
        let err = (&eta * &eta_inv).max_abs_diff(&ComplexMatrix::identity(n));
        if err > tol.eq_tol * eta.max_abs().max(1.0) * eta_inv.max_abs().max(1.0) {
            return Err(Error::Singular { pivot: err });
        }
        Ok(Self { eta, eta_inv })
    }

    pub fn from_real_diag(diag: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diag(diag), &Tolerances::default())
    }

    /// Unit metric of dimension `n`.
    pub fn unit(n: usize) -> Self {
        Self {
            eta: ComplexMatrix::identity(n),
            eta_inv: ComplexMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.eta.rows()
    }

    pub fn eta(&self) -> &ComplexMatrix {
        &self.eta
    }

    pub fn eta_inv(&self) -> &ComplexMatrix {
        &self.eta_inv
    }

    pub fn signature(&self, tol: &Tolerances) -> Result<Signature> {
        crate::numkernel::signature(&self.eta, tol)
    }

    /// True when the matrix is diagonal with entries exactly +-1.
    pub fn is_orthonormal(&self) -> bool {
        self.eta.is_diagonal(0.0)
            && self
                .eta
                .diagonal()
                .iter()
                .all(|d| d.im == 0.0 && (d.re == 1.0 || d.re == -1.0))
    }
}

/// Which of the four spaces a vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    KetDown,
    KetUp,
    BraDown,
    BraUp,
}

impl Variance {
    pub fn is_ket(self) -> bool {
        matches!(self, Variance::KetDown | Variance::KetUp)
    }

    pub fn is_bra(self) -> bool {
        !self.is_ket()
    }

    /// The ket variance this bra contracts with directly (parallel slashes).
    /// Bra-up vectors are functionals on ket-down vectors and vice versa.
    pub fn dual_ket(self) -> Option<Variance> {
        match self {
            Variance::BraUp => Some(Variance::KetDown),
            Variance::BraDown => Some(Variance::KetUp),
            _ => None,
        }
    }

    /// The bra that acts directly on kets of this variance.
    pub fn dual_bra(self) -> Option<Variance> {
        match self {
            Variance::KetDown => Some(Variance::BraUp),
            Variance::KetUp => Some(Variance::BraDown),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variance::KetDown => "KetDown",
            Variance::KetUp => "KetUp",
            Variance::BraDown => "BraDown",
            Variance::BraUp => "BraUp",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "KetDown" => Some(Variance::KetDown),
            "KetUp" => Some(Variance::KetUp),
            "BraDown" => Some(Variance::BraDown),
            "BraUp" => Some(Variance::BraUp),
            _ => None,
        }
    }
}

/// Component vector tagged with its variance.
#[derive(Debug, Clone, PartialEq)]
pub struct VarVector {
    pub components: Vec<Complex64>,
    pub variance: Variance,
}

impl VarVector {
    pub fn new(components: Vec<Complex64>, variance: Variance) -> Self {
        Self {
            components,
            variance,
        }
    }

    pub fn ket_down(components: Vec<Complex64>) -> Self {
        Self::new(components, Variance::KetDown)
    }

    pub fn ket_up(components: Vec<Complex64>) -> Self {
        Self::new(components, Variance::KetUp)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(
            self.components.iter().map(|&z| z * factor).collect(),
            self.variance,
        )
    }

    /// Sum of two vectors of the same variance and dimension.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch {
                op: "add",
                left: self.variance,
                right: other.variance,
            });
        }
        check_dims("add", self.dim(), other.dim())?;
        Ok(Self::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
            self.variance,
        ))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.variance != other.variance || self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn check_dims(op: &'static str, a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            op,
            left: (a, 1),
            right: (b, 1),
        });
    }
    Ok(())
}

fn conjugated(v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(|z| z.conj()).collect()
}

/// The anti-linear bra relation: ket-down to bra-down, ket-up to bra-up.
pub fn relate_bra(v: &VarVector) -> Result<VarVector> {
    let variance = match v.variance {
        Variance::KetDown => Variance::BraDown,
        Variance::KetUp => Variance::BraUp,
        other => {
            return Err(Error::WrongVariance {
                op: "relate_bra",
                got: other,
            })
        }
    };
    Ok(VarVector::new(conjugated(&v.components), variance))
}

/// Inverse of [`relate_bra`].
pub fn relate_ket(v: &VarVector) -> Result<VarVector> {
    let variance = match v.variance {
        Variance::BraDown => Variance::KetDown,
        Variance::BraUp => Variance::KetUp,
        other => {
            return Err(Error::WrongVariance {
                op: "relate_ket",
                got: other,
            })
        }
    };
    Ok(VarVector::new(conjugated(&v.components), variance))
}

/// Maps a ket-down vector to its coupled ket-up partner through the metric,
/// and a ket-up vector back through the inverse metric.
pub fn couple(m: &MetricOperator, v: &VarVector) -> Result<VarVector> {
    check_dims("couple", m.dim(), v.dim())?;
    match v.variance {
        Variance::KetDown => Ok(VarVector::ket_up(m.eta.mat_vec(&v.components)?)),
        Variance::KetUp => Ok(VarVector::ket_down(m.eta_inv.mat_vec(&v.components)?)),
        other => Err(Error::WrongVariance {
            op: "couple",
            got: other,
        }),
    }
}

/// Metric-free pairing of a bra with the ket it acts on directly.
pub fn dual_form(b: &VarVector, k: &VarVector) -> Result<Complex64> {
    if b.variance.dual_ket() != Some(k.variance) {
        return Err(Error::VarianceMismatch {
            op: "dual_form",
            left: b.variance,
            right: k.variance,
        });
    }
    check_dims("dual_form", b.dim(), k.dim())?;
    Ok(b.components
        .iter()
        .zip(&k.components)
        .map(|(a, b)| a * b)
        .sum())
}

/// The hermitian scalar product of two kets of the same variance:
/// `sum (x^i)* eta_ij y^j` for ket-down, with the inverse metric for ket-up.
pub fn scalar_product(m: &MetricOperator, x: &VarVector, y: &VarVector) -> Result<Complex64> {
    if x.variance != y.variance || x.variance.is_bra() {
        return Err(Error::VarianceMismatch {
            op: "scalar_product",
            left: x.variance,
            right: y.variance,
        });
    }
    check_dims("scalar_product", x.dim(), y.dim())?;
    check_dims("scalar_product", m.dim(), x.dim())?;
    let g = match x.variance {
        Variance::KetDown => &m.eta,
        _ => &m.eta_inv,
    };
    let gy = g.mat_vec(&y.components)?;
    Ok(x.components
        .iter()
        .zip(&gy)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexDirection {
    Lower,
    Raise,
}

/// `x_i = eta_ij x^j` when lowering, `x^i = (eta^-1)^ij x_j` when raising.
pub fn raise_lower_index(
    m: &MetricOperator,
    comps: &[Complex64],
    direction: IndexDirection,
) -> Result<Vec<Complex64>> {
    check_dims("raise_lower_index", m.dim(), comps.len())?;
    match direction {
        IndexDirection::Lower => m.eta.mat_vec(comps),
        IndexDirection::Raise => m.eta_inv.mat_vec(comps),
    }
}
