//! The field of Gaussian rationals `ℚ(i)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::rational::{rat_int, Rational};

/// An element `re + im·i` of `ℚ(i)`, with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn zero() -> Self {
        Gaussian::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Gaussian::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Gaussian::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(re: Rational) -> Self {
        Gaussian::new(re, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Gaussian::from_rational(rat_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate `re − im·i`.
    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    /// The rational `re² + im²`; zero exactly when `self` is zero.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                context: "Gaussian::inverse".to_string(),
            });
        }
        let n = self.norm_sqr();
        Ok(Gaussian::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Exact quotient `self / rhs`.
    pub fn div(&self, rhs: &Gaussian) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Scale by a rational.
    pub fn scale(&self, q: &Rational) -> Self {
        Gaussian::new(&self.re * q, &self.im * q)
    }
}

impl From<i64> for Gaussian {
    fn from(n: i64) -> Self {
        Gaussian::from_int(n)
    }
}

impl From<Rational> for Gaussian {
    fn from(q: Rational) -> Self {
        Gaussian::from_rational(q)
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Gaussian {
            type Output = Gaussian;
            fn $method(self, rhs: Gaussian) -> Gaussian {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        -&self
    }
}

impl AddAssign<&Gaussian> for Gaussian {
    fn add_assign(&mut self, rhs: &Gaussian) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Gaussian> for Gaussian {
    fn sub_assign(&mut self, rhs: &Gaussian) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Gaussian> for Gaussian {
    fn mul_assign(&mut self, rhs: &Gaussian) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            first = false;
        }
        if !self.im.is_zero() {
            if !first && self.im > Rational::zero() {
                write!(f, "+")?;
            }
            if self.im == rat_int(-1) {
                write!(f, "-i")?;
            } else if self.im.is_one() {
                write!(f, "i")?;
            } else {
                write!(f, "{}i", self.im)?;
            }
        }
        Ok(())
    }
}
