//! Rational weight vectors.
//!
//! A weight records the exponent of a frame generator with respect to the
//! formal symbols `λ_1, …, λ_s` (logarithms of the lattice-monodromy
//! eigenvalues, which are `ℚ`-linearly independent reals).  Weights are stored
//! with trailing zeros trimmed, so vectors of different declared lengths
//! compare equal when they agree as finitely supported sequences.

use std::fmt;

use num_traits::Zero;

use super::rational::{rat_int, Rational};

/// A finitely supported rational vector `(w_1, …, w_s)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        let mut w = Weight(coords);
        w.trim();
        w
    }

    /// Weight from integer coordinates.
    pub fn from_ints(coords: &[i64]) -> Self {
        Weight::new(coords.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        Weight(Vec::new())
    }

    /// The unit weight `λ_idx`.
    pub fn unit(idx: usize) -> Self {
        let mut coords = vec![Rational::zero(); idx + 1];
        coords[idx] = Rational::from_integer(1.into());
        Weight(coords)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Rational::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate `idx` (zero beyond the stored support).
    pub fn coord(&self, idx: usize) -> Rational {
        self.0.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Number of symbols with nonzero support bound.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, rhs: &Weight) -> Weight {
        let len = self.0.len().max(rhs.0.len());
        Weight::new((0..len).map(|i| self.coord(i) + rhs.coord(i)).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, rhs: &Weight) -> Weight {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, q: &Rational) -> Weight {
        Weight::new(self.0.iter().map(|c| c * q).collect())
    }

    /// Sum of a list of weights.
    pub fn sum<'a>(weights: impl IntoIterator<Item = &'a Weight>) -> Weight {
        weights
            .into_iter()
            .fold(Weight::zero(), |acc, w| acc.add(w))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn trailing_zeros_do_not_distinguish() {
        assert_eq!(
            Weight::new(vec![rat(1, 2), rat(0, 1)]),
            Weight::new(vec![rat(1, 2)])
        );
        assert!(Weight::from_ints(&[0, 0]).is_zero());
    }

    #[test]
    fn arithmetic_cancels() {
        let a = Weight::from_ints(&[1, -1, 0]);
        let b = Weight::from_ints(&[-1, 1]);
        assert!(a.add(&b).is_zero());
        assert_eq!(a.sub(&a), Weight::zero());
        assert_eq!(Weight::unit(2), Weight::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn sum_of_model_weights() {
        let weights = [
            Weight::from_ints(&[1]),
            Weight::from_ints(&[-1]),
            Weight::from_ints(&[0]),
        ];
        assert!(Weight::sum(&weights).is_zero());
    }
}
