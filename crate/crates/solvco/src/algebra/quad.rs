//! Real quadratic field arithmetic `ℚ(√d)` with exact rational coordinates.
//!
//! Used by the lattice module: unit eigenvalues of `SL(k, ℤ)` matrices and the
//! conjugating matrices that diagonalize them live in a single real quadratic
//! field per computation.  The discriminant `d` must be square-free and `> 1`;
//! a pure rational may be constructed without committing to a discriminant and
//! unifies with either operand.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::rational::{rat_int, Rational};

/// An element `a + b√d` of `ℚ(√d)`.
///
/// `d == 0` is an internal sentinel for "pure rational, discriminant not yet
/// committed"; such values unify with any discriminant on first contact.
#[derive(Debug, Clone)]
pub struct QuadNumber {
    d: i64,
    a: Rational,
    b: Rational,
}

/// True if `d` has no repeated prime factor.
fn is_square_free(mut d: i64) -> bool {
    let mut p = 2;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        while d % p == 0 {
            d /= p;
        }
        p += 1;
    }
    true
}

/// Split `n > 0` as `d·f²` with `d` square-free; returns `(d, f)`.
pub(crate) fn square_free_part(n: i64) -> (i64, i64) {
    assert!(n > 0, "square_free_part requires a positive argument");
    let mut d = n;
    let mut f = 1i64;
    let mut p = 2i64;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            f *= p;
        }
        p += 1;
    }
    (d, f)
}

impl QuadNumber {
    /// The element `a + b√d`.  Requires `d > 1` square-free.
    pub fn new(d: i64, a: Rational, b: Rational) -> Result<Self> {
        if d <= 1 {
            return Err(Error::invalid(
                "QuadNumber::new",
                format!("discriminant must be > 1, got {d}"),
            ));
        }
        if !is_square_free(d) {
            return Err(Error::invalid(
                "QuadNumber::new",
                format!("discriminant must be square-free, got {d}"),
            ));
        }
        Ok(QuadNumber { d, a, b })
    }

    /// A rational, with the discriminant left uncommitted.
    pub fn rational(a: Rational) -> Self {
        QuadNumber {
            d: 0,
            a,
            b: Rational::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        QuadNumber::rational(rat_int(n))
    }

    pub fn zero() -> Self {
        QuadNumber::int(0)
    }

    pub fn one() -> Self {
        QuadNumber::int(1)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: i64) -> Result<Self> {
        QuadNumber::new(d, Rational::zero(), Rational::one())
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Coefficient `b` of `√d`.
    pub fn sqrt_coefficient(&self) -> &Rational {
        &self.b
    }

    /// The committed discriminant, if any.
    pub fn discriminant(&self) -> Option<i64> {
        if self.d == 0 {
            None
        } else {
            Some(self.d)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    /// The common discriminant of two operands, or an error if they disagree.
    fn unify(&self, rhs: &QuadNumber, _context: &str) -> Result<i64> {
        match (self.d, rhs.d) {
            (0, d) | (d, 0) => Ok(d),
            (l, r) if l == r => Ok(l),
            (l, r) => Err(Error::DiscriminantMismatch { left: l, right: r }),
        }
    }

    pub fn add(&self, rhs: &QuadNumber) -> Result<Self> {
        let d = self.unify(rhs, "add")?;
        Ok(QuadNumber {
            d,
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        })
    }

    pub fn sub(&self, rhs: &QuadNumber) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        QuadNumber {
            d: self.d,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn mul(&self, rhs: &QuadNumber) -> Result<Self> {
        let d = self.unify(rhs, "mul")?;
        let dq = rat_int(d);
        Ok(QuadNumber {
            d,
            a: &self.a * &rhs.a + &(&self.b * &rhs.b) * &dq,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        })
    }

    /// Galois conjugate `a − b√d`.
    pub fn conj(&self) -> Self {
        QuadNumber {
            d: self.d,
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a² − d·b²` (rational; zero exactly for zero since `d` is
    /// not a square).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &(&self.b * &self.b) * &rat_int(self.d.max(0))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                context: "QuadNumber::inverse".to_string(),
            });
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "nonzero quadratic number has nonzero norm");
        Ok(QuadNumber {
            d: self.d,
            a: &self.a / &n,
            b: -(&self.b / &n),
        })
    }

    pub fn div(&self, rhs: &QuadNumber) -> Result<Self> {
        let inv = rhs.inverse()?;
        self.mul(&inv)
    }

    /// Integer power (negative exponents via the inverse).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = QuadNumber::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadNumber {
            d: self.d,
            a: &self.a * q,
            b: &self.b * q,
        }
    }

    /// Parse a quadratic-field literal.
    ///
    /// Accepted shapes (whitespace ignored): plain rationals `3`, `-1/2`;
    /// radical terms `√5`, `-√5/5`, `2√5`, `3/2√5` (coefficient times `√d`,
    /// optionally divided by an integer); two-term sums `3+√5`, `1/2-1/2√5`;
    /// and an outer quotient `(−√5−3)/2`.  `sqrt5` may be written for `√5`.
    pub fn parse(input: &str) -> Result<Self> {
        let s: String = input
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        let err = |detail: String| Error::invalid("QuadNumber::parse", detail);
        if s.is_empty() {
            return Err(err("empty literal".to_string()));
        }
        // Outer quotient form: (expr)/k.
        if let Some(rest) = s.strip_prefix('(') {
            let close = rest
                .find(')')
                .ok_or_else(|| err(format!("unbalanced parenthesis in {input:?}")))?;
            let inner = &rest[..close];
            let tail = &rest[close + 1..];
            let den = tail.strip_prefix('/').ok_or_else(|| {
                err(format!(
                    "expected /denominator after parenthesis in {input:?}"
                ))
            })?;
            let den: i64 = den
                .parse()
                .map_err(|_| err(format!("bad denominator {den:?} in {input:?}")))?;
            if den == 0 {
                return Err(Error::DivisionByZero {
                    context: "QuadNumber::parse".to_string(),
                });
            }
            let inner = QuadNumber::parse(inner)?;
            return Ok(inner.scale(&Rational::new(1.into(), den.into())));
        }
        // Split into signed terms at top level.
        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        for (idx, c) in s.char_indices() {
            if (c == '+' || c == '-') && idx != 0 && !current.is_empty() {
                // A sign following '/' or another sign stays inside the term.
                let prev = current.chars().last().unwrap();
                if prev != '/' && prev != '+' && prev != '-' {
                    terms.push(std::mem::take(&mut current));
                    if c == '-' {
                        current.push('-');
                    }
                    continue;
                }
            }
            current.push(c);
        }
        terms.push(current);

        let mut acc = QuadNumber::zero();
        for term in &terms {
            acc = acc.add(&Self::parse_term(term).map_err(|e| match e {
                Error::InvalidInput { .. } => err(format!("bad term {term:?} in {input:?}")),
                other => other,
            })?)?;
        }
        Ok(acc)
    }

    /// Parse one signed term: `rational`, `[rational]√d[/int]`.
    fn parse_term(term: &str) -> Result<Self> {
        let err = |detail: String| Error::invalid("QuadNumber::parse_term", detail);
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        let radical_at = body
            .find('√')
            .map(|i| (i, '√'.len_utf8()))
            .or_else(|| body.find("sqrt").map(|i| (i, "sqrt".len())));
        let value = match radical_at {
            None => {
                let q: Rational = body
                    .parse()
                    .map_err(|_| err(format!("bad rational {body:?}")))?;
                QuadNumber::rational(q)
            }
            Some((pos, skip)) => {
                let coef = &body[..pos];
                let coef: Rational = if coef.is_empty() {
                    Rational::one()
                } else {
                    coef.parse()
                        .map_err(|_| err(format!("bad coefficient {coef:?}")))?
                };
                let rest = &body[pos + skip..];
                let (d_str, den) = match rest.find('/') {
                    Some(slash) => (&rest[..slash], Some(&rest[slash + 1..])),
                    None => (rest, None),
                };
                let d: i64 = d_str
                    .parse()
                    .map_err(|_| err(format!("bad discriminant {d_str:?}")))?;
                let mut b = coef;
                if let Some(den) = den {
                    let den: i64 = den
                        .parse()
                        .map_err(|_| err(format!("bad denominator {den:?}")))?;
                    if den == 0 {
                        return Err(Error::DivisionByZero {
                            context: "QuadNumber::parse_term".to_string(),
                        });
                    }
                    b /= rat_int(den);
                }
                QuadNumber::new(d, Rational::zero(), b)?
            }
        };
        Ok(if neg { value.neg() } else { value })
    }
}

impl PartialEq for QuadNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b {
            return false;
        }
        // Radical parts present in both: discriminants must agree.
        self.b.is_zero() || self.d == other.d
    }
}

impl Eq for QuadNumber {}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote = false;
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            wrote = true;
        }
        if !self.b.is_zero() {
            if wrote && self.b.is_positive() {
                write!(f, "+")?;
            }
            if self.b == rat_int(-1) {
                write!(f, "-")?;
            } else if !self.b.is_one() {
                write!(f, "{}", self.b)?;
            }
            write!(f, "√{}", self.d)?;
        }
        Ok(())
    }
}
