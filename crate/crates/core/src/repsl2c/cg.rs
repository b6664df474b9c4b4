//! Exact Clebsch-Gordan coefficients.
//!
//! Every coefficient is a signed square root of a rational. The Racah sum
//! is evaluated over big rationals and the result kept as `(sign, value^2)`,
//! so symmetry and orthogonality identities can be checked with equality.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::weight::{twice_half_integer, Weight};
use crate::error::{Error, Result};

/// `sign * sqrt(squared)`, with `sign = 0` exactly when `squared = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CGValue {
    sign: i8,
    squared: BigRational,
}

impl CGValue {
    pub fn zero() -> Self {
        Self {
            sign: 0,
            squared: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            sign: 1,
            squared: BigRational::one(),
        }
    }

    /// Normalizes the sign to zero when `squared` vanishes.
    pub fn new(sign: i8, squared: BigRational) -> Result<Self> {
        if squared.is_negative() {
            return Err(Error::InvalidWeights("negative squared coefficient".into()));
        }
        if squared.is_zero() || sign == 0 {
            return Ok(Self::zero());
        }
        Ok(Self {
            sign: sign.signum(),
            squared,
        })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn squared(&self) -> &BigRational {
        &self.squared
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(&self) -> f64 {
        let sq = self.squared.to_f64().unwrap_or(f64::NAN);
        f64::from(self.sign) * sq.sqrt()
    }

    pub fn neg(&self) -> Self {
        Self {
            sign: -self.sign,
            squared: self.squared.clone(),
        }
    }

    /// Exact product, again a signed square root of a rational.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self {
            sign: self.sign * other.sign,
            squared: &self.squared * &other.squared,
        }
    }
}

impl fmt::Display for CGValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}sqrt({})", if s < 0 { "-" } else { "" }, self.squared),
        }
    }
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn half(twice: i64) -> i64 {
    debug_assert!(twice % 2 == 0, "odd argument {twice} to an integer factorial");
    twice / 2
}

/// Clebsch-Gordan coefficient `<j1, l1; j2, l2 | s, sigma>` with all
/// projections given as `2 lambda`.
pub fn clebsch_gordan(
    j1: Weight,
    twice_l1: i32,
    j2: Weight,
    twice_l2: i32,
    s: Weight,
    twice_sigma: i32,
) -> Result<CGValue> {
    let (tj1, tj2, ts) = (j1.twice() as i64, j2.twice() as i64, s.twice() as i64);
    let (tm1, tm2, tm) = (twice_l1 as i64, twice_l2 as i64, twice_sigma as i64);

    for (tj, tm, name) in [(tj1, tm1, "l1"), (tj2, tm2, "l2"), (ts, tm, "sigma")] {
        if tm.abs() > tj || (tj - tm) % 2 != 0 {
            return Err(Error::InvalidWeights(format!(
                "projection {name} = {tm}/2 invalid for weight {tj}/2"
            )));
        }
    }
    if ts < (tj1 - tj2).abs() || ts > tj1 + tj2 || (tj1 + tj2 + ts) % 2 != 0 {
        return Err(Error::InvalidWeights(format!(
            "s = {ts}/2 violates the triangle rule for j1 = {tj1}/2, j2 = {tj2}/2"
        )));
    }
    if tm1 + tm2 != tm {
        return Ok(CGValue::zero());
    }

    let f = |twice: i64| factorial(half(twice));
    let mut prefactor = BigRational::new(
        BigInt::from(ts + 1) * f(ts + tj1 - tj2) * f(ts - tj1 + tj2) * f(tj1 + tj2 - ts),
        f(tj1 + tj2 + ts + 2),
    );
    prefactor *= BigRational::from_integer(
        f(ts + tm) * f(ts - tm) * f(tj1 - tm1) * f(tj1 + tm1) * f(tj2 - tm2) * f(tj2 + tm2),
    );

    // Racah sum over k with all factorial arguments non-negative
    let a = [
        half(tj1 + tj2 - ts),
        half(tj1 - tm1),
        half(tj2 + tm2),
    ];
    let b = [half(ts - tj2 + tm1), half(ts - tj1 - tm2)];
    let k_min = b.iter().map(|&x| (-x).max(0)).max().unwrap_or(0);
    let k_max = *a.iter().min().expect("three bounds");
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(a[0] - k)
            * factorial(a[1] - k)
            * factorial(a[2] - k)
            * factorial(b[0] + k)
            * factorial(b[1] + k);
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }

    let sign = match sum.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    };
    CGValue::new(sign, prefactor * &sum * &sum)
}

/// Same as [`clebsch_gordan`] with decimal arguments (`0.5`, `-1.5`, ...).
pub fn clebsch_gordan_f64(j1: f64, l1: f64, j2: f64, l2: f64, s: f64, sigma: f64) -> Result<CGValue> {
    clebsch_gordan(
        Weight::from_f64(j1)?,
        twice_half_integer(l1)?,
        Weight::from_f64(j2)?,
        twice_half_integer(l2)?,
        Weight::from_f64(s)?,
        twice_half_integer(sigma)?,
    )
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let u: BigUint = n.magnitude().clone();
    let r = u.sqrt();
    (&r * &r == u).then(|| BigInt::from(r))
}

/// Rational square root when `q` is the square of a rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(exact_sqrt(q.numer())?, exact_sqrt(q.denom())?))
}

/// Exact sum of signed square roots of rationals.
///
/// Terms are grouped by square class: `sqrt(a)` and `sqrt(b)` share a class
/// when `a / b` is a rational square. Square roots from distinct classes are
/// linearly independent over the rationals, so the sum vanishes exactly when
/// every class coefficient does.
#[derive(Debug, Clone, Default)]
pub struct SqrtSum {
    /// `(representative radicand, rational coefficient)`
    classes: Vec<(BigRational, BigRational)>,
}

impl SqrtSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: &CGValue) {
        if term.is_zero() {
            return;
        }
        for (rep, coeff) in &mut self.classes {
            if let Some(ratio) = rational_sqrt(&(&term.squared / &*rep)) {
                let contribution = if term.sign < 0 { -ratio } else { ratio };
                *coeff += contribution;
                return;
            }
        }
        let one = BigRational::one();
        let coeff = if term.sign < 0 { -one } else { one };
        self.classes.push((term.squared.clone(), coeff));
    }

    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(|(_, c)| c.is_zero())
    }

    /// The exact value when it is a single signed square root.
    pub fn value(&self) -> Option<CGValue> {
        let live: Vec<_> = self.classes.iter().filter(|(_, c)| !c.is_zero()).collect();
        match live.as_slice() {
            [] => Some(CGValue::zero()),
            [(rep, coeff)] => {
                let sign = if coeff.is_negative() { -1 } else { 1 };
                CGValue::new(sign, rep * coeff * coeff).ok()
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn selection_rule() {
        let h = Weight::HALF;
        let v = clebsch_gordan(h, 1, h, 1, Weight::from_twice(2), 0).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn two_spin_halves() {
        let h = Weight::HALF;
        let one = Weight::from_twice(2);
        let v = clebsch_gordan(h, 1, h, -1, one, 0).unwrap();
        assert_eq!(v.sign(), 1);
        assert_eq!(*v.squared(), q(1, 2));

        let singlet_up = clebsch_gordan(h, 1, h, -1, Weight::ZERO, 0).unwrap();
        let singlet_down = clebsch_gordan(h, -1, h, 1, Weight::ZERO, 0).unwrap();
        assert_eq!((singlet_up.sign(), singlet_down.sign()), (1, -1));
        assert_eq!(*singlet_up.squared(), q(1, 2));

        let stretched = clebsch_gordan(h, 1, h, 1, one, 2).unwrap();
        assert_eq!((stretched.sign(), stretched.squared().clone()), (1, q(1, 1)));
    }

    #[test]
    fn one_times_half() {
        // <1,0; 1/2,1/2 | 3/2,1/2> = sqrt(2/3), <1,1; 1/2,-1/2 | 1/2,1/2> = sqrt(2/3),
        // <1,0; 1/2,1/2 | 1/2,1/2> = -sqrt(1/3)
        let one = Weight::from_twice(2);
        let h = Weight::HALF;
        let a = clebsch_gordan(one, 0, h, 1, Weight::from_twice(3), 1).unwrap();
        assert_eq!((a.sign(), a.squared().clone()), (1, q(2, 3)));
        let b = clebsch_gordan(one, 2, h, -1, h, 1).unwrap();
        assert_eq!((b.sign(), b.squared().clone()), (1, q(2, 3)));
        let c = clebsch_gordan(one, 0, h, 1, h, 1).unwrap();
        assert_eq!((c.sign(), c.squared().clone()), (-1, q(1, 3)));
    }

    #[test]
    fn invalid_arguments() {
        let h = Weight::HALF;
        assert!(clebsch_gordan(h, 3, h, 1, Weight::from_twice(2), 2).is_err());
        assert!(clebsch_gordan(h, 0, h, 1, Weight::from_twice(2), 1).is_err());
        assert!(clebsch_gordan(h, 1, h, 1, Weight::from_twice(4), 2).is_err());
        assert!(clebsch_gordan(h, 1, h, 1, Weight::from_twice(1), 1).is_err());
        assert!(clebsch_gordan_f64(0.5, 0.25, 0.5, 0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn sqrt_sum_classes() {
        let mut s = SqrtSum::new();
        s.add(&CGValue::new(1, q(1, 2)).unwrap());
        s.add(&CGValue::new(1, q(1, 8)).unwrap());
        // sqrt(1/2) + sqrt(1/8) = sqrt(9/8)
        assert_eq!(s.value().unwrap(), CGValue::new(1, q(9, 8)).unwrap());
        s.add(&CGValue::new(-1, q(9, 8)).unwrap());
        assert!(s.is_zero());

        let mut t = SqrtSum::new();
        t.add(&CGValue::new(1, q(1, 2)).unwrap());
        t.add(&CGValue::new(1, q(1, 3)).unwrap());
        assert!(!t.is_zero());
        assert!(t.value().is_none());
    }
}
