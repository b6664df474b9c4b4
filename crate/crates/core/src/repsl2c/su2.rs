use num_complex::Complex64;

use super::weight::Weight;
use crate::numkernel::ComplexMatrix;

/// Canonical irreducible su(2) representation of weight `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Su2Irrep {
    pub j: Weight,
    /// `J_1, J_2, J_3` in the basis `lambda = j, j-1, ..., -j`.
    pub generators: [ComplexMatrix; 3],
}

impl Su2Irrep {
    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    /// `J_1^2 + J_2^2 + J_3^2`.
    pub fn casimir(&self) -> ComplexMatrix {
        self.generators
            .iter()
            .map(|g| g * g)
            .reduce(|a, b| &a + &b)
            .expect("three generators")
    }
}

/// Condon-Shortley matrices: `J_3` diagonal descending, non-negative real
/// ladder elements `<lambda+1|J+|lambda> = sqrt(j(j+1) - lambda(lambda+1))`.
pub fn su2_generators(j: Weight) -> Su2Irrep {
    let d = j.dim();
    let jj = j.value();
    let mut raise = ComplexMatrix::zeros(d, d);
    let mut j3 = ComplexMatrix::zeros(d, d);
    for (k, twice_l) in j.twice_projections().enumerate() {
        let l = twice_l as f64 / 2.0;
        j3[(k, k)] = Complex64::new(l, 0.0);
        if k > 0 {
            raise[(k - 1, k)] = Complex64::new((jj * (jj + 1.0) - l * (l + 1.0)).sqrt(), 0.0);
        }
    }
    let lower = raise.transpose();
    let j1 = (&raise + &lower).scale_real(0.5);
    let j2 = (&raise - &lower).scale(Complex64::new(0.0, -0.5));
    Su2Irrep {
        j,
        generators: [j1, j2, j3],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_zero_is_trivial() {
        let r = su2_generators(Weight::ZERO);
        for g in &r.generators {
            assert_eq!(*g, ComplexMatrix::zeros(1, 1));
        }
    }

    #[test]
    fn spin_half_is_half_pauli() {
        let r = su2_generators(Weight::HALF);
        let c = Complex64::new;
        let sx = ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.5, 0.0]]).unwrap();
        let sy = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -0.5)], vec![c(0.0, 0.5), c(0.0, 0.0)]])
            .unwrap();
        let sz = ComplexMatrix::from_real_diag(&[0.5, -0.5]);
        assert!(r.generators[0].approx_eq(&sx, 1e-15));
        assert!(r.generators[1].approx_eq(&sy, 1e-15));
        assert_eq!(r.generators[2], sz);
    }

    #[test]
    fn casimir_and_commutators() {
        for twice in 1..=4 {
            let r = su2_generators(Weight::from_twice(twice));
            let j = r.j.value();
            let expected = ComplexMatrix::identity(r.dim()).scale_real(j * (j + 1.0));
            assert!(r.casimir().approx_eq(&expected, 1e-12), "2j = {twice}");

            let [a, b, c] = &r.generators;
            let i = Complex64::new(0.0, 1.0);
            assert!(a.commutator(b).unwrap().approx_eq(&c.scale(i), 1e-12));
            assert!(b.commutator(c).unwrap().approx_eq(&a.scale(i), 1e-12));
            assert!(c.commutator(a).unwrap().approx_eq(&b.scale(i), 1e-12));
        }
    }
}
