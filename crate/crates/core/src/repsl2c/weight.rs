use std::fmt;

use crate::error::{Error, Result};

/// An su(2) weight `j`, stored as the integer `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    twice_j: u32,
}

impl Weight {
    pub const ZERO: Weight = Weight { twice_j: 0 };
    pub const HALF: Weight = Weight { twice_j: 1 };

    pub fn from_twice(twice_j: u32) -> Self {
        Self { twice_j }
    }

    /// Accepts non-negative integers and half-integers.
    pub fn from_f64(j: f64) -> Result<Self> {
        let twice = twice_half_integer(j)?;
        if twice < 0 {
            return Err(Error::InvalidWeights(format!("negative weight {j}")));
        }
        Ok(Self {
            twice_j: twice as u32,
        })
    }

    pub fn twice(self) -> u32 {
        self.twice_j
    }

    pub fn value(self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// Dimension `2j + 1` of the irreducible representation.
    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    pub fn is_integer(self) -> bool {
        self.twice_j.is_multiple_of(2)
    }

    /// `2 lambda` for `lambda = j, j-1, ..., -j`, the canonical basis order.
    pub fn twice_projections(self) -> impl Iterator<Item = i32> {
        let t = self.twice_j as i32;
        (0..=self.twice_j as i32).map(move |k| t - 2 * k)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

/// `2x` for an integer or half-integer `x`.
pub fn twice_half_integer(x: f64) -> Result<i32> {
    let twice = 2.0 * x;
    if !twice.is_finite() || twice.round() != twice || twice.abs() > 1e6 {
        return Err(Error::InvalidWeights(format!(
            "{x} is not an integer or half-integer"
        )));
    }
    Ok(twice as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_half_integers() {
        assert_eq!(Weight::from_f64(0.5).unwrap().twice(), 1);
        assert_eq!(Weight::from_f64(2.0).unwrap().twice(), 4);
        assert!(Weight::from_f64(0.25).is_err());
        assert!(Weight::from_f64(-1.0).is_err());
        assert_eq!(
            Weight::from_twice(3).twice_projections().collect::<Vec<_>>(),
            vec![3, 1, -1, -3]
        );
        assert_eq!(Weight::from_twice(3).to_string(), "3/2");
    }
}
