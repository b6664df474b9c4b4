//! Matrix exponential by scaling and squaring with a truncated Taylor series.

use super::matrix::ComplexMatrix;

/// Scaled matrices have 1-norm at most this, so the Taylor tail drops
/// below machine precision within ~20 terms.
const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 64;

pub(crate) fn expm_square(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let norm = a.norm_one();
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scale_real(0.5f64.powi(squarings));

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        let term_norm = term.norm_one();
        sum = &sum + &term;
        if term_norm <= f64::EPSILON * 1e-2 * sum.norm_one() {
            break;
        }
    }

    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
