//! Sparse multivariate Laurent polynomials over `ℚ(i)`.
//!
//! This is the coefficient ring of all differential forms in the crate.  The
//! variables are formal weight symbols (`λ`, or `λ_1, λ_2`, …) together with
//! any indeterminate coefficients introduced by the generic-2-form oracle.
//! Negative exponents are allowed so that normalizations like `1/λ` stay
//! exact.  Exponent keys are stored with trailing zeros trimmed, so the ring
//! embeds compatibly into itself as the variable count grows.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};

use super::gaussian::Gaussian;
use super::rational::Rational;
use super::weight::Weight;

/// A finite sum `Σ c_e · x^e` with `c_e ∈ ℚ(i)` and `e ∈ ℤ^(finite)`.
///
/// Invariant: no stored coefficient is zero and every exponent key has its
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<Vec<i32>, Gaussian>,
}

fn trim_key(mut key: Vec<i32>) -> Vec<i32> {
    while key.last() == Some(&0) {
        key.pop();
    }
    key
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(Gaussian::one())
    }

    pub fn constant(c: Gaussian) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Laurent { terms }
    }

    pub fn from_rational(q: Rational) -> Self {
        Laurent::constant(Gaussian::from_rational(q))
    }

    pub fn from_int(n: i64) -> Self {
        Laurent::constant(Gaussian::from_int(n))
    }

    /// The variable `x_idx`.
    pub fn var(idx: usize) -> Self {
        Laurent::monomial_term(&unit_key(idx, 1), Gaussian::one())
    }

    /// A single term `c · x^e`.
    pub fn monomial_term(exponents: &[i32], c: Gaussian) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim_key(exponents.to_vec()), c);
        }
        Laurent { terms }
    }

    /// The linear form `Σ w_j · x_j` attached to a weight vector.
    pub fn from_weight(w: &Weight) -> Self {
        let mut acc = Laurent::zero();
        for (j, c) in w.coords().iter().enumerate() {
            if !c.is_zero() {
                acc.add_term(unit_key(j, 1), Gaussian::from_rational(c.clone()));
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Gaussian)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    fn add_term(&mut self, key: Vec<i32>, c: Gaussian) {
        if c.is_zero() {
            return;
        }
        let key = trim_key(key);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Laurent) -> Laurent {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let len = ka.len().max(kb.len());
                let mut key = vec![0i32; len];
                for (i, slot) in key.iter_mut().enumerate() {
                    *slot = ka.get(i).copied().unwrap_or(0) + kb.get(i).copied().unwrap_or(0);
                }
                out.add_term(key, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Gaussian) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Coefficient-wise complex conjugation (the variables are real symbols).
    pub fn conj(&self) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.conj()))
                .collect(),
        }
    }

    /// The constant value, if this polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Gaussian> {
        match self.terms.len() {
            0 => Some(Gaussian::zero()),
            1 => {
                let (k, v) = self.terms.iter().next().unwrap();
                k.is_empty().then(|| v.clone())
            }
            _ => None,
        }
    }

    /// Multiplicative inverse, defined exactly for single-term polynomials.
    pub fn inverse(&self) -> Result<Laurent> {
        if self.terms.len() != 1 {
            return Err(Error::invalid(
                "Laurent::inverse",
                format!(
                    "only single-term Laurent polynomials are invertible, got {} terms",
                    self.terms.len()
                ),
            ));
        }
        let (k, v) = self.terms.iter().next().unwrap();
        let key: Vec<i32> = k.iter().map(|e| -e).collect();
        Ok(Laurent::monomial_term(&key, v.inverse()?))
    }

    /// Exact quotient `self / rhs` in the Laurent ring.
    ///
    /// Intended for fraction-free elimination, where divisibility is
    /// guaranteed; returns an internal error if the division leaves a
    /// remainder (or fails to terminate within a generous step bound).
    pub fn div_exact(&self, rhs: &Laurent) -> Result<Laurent> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero {
                context: "Laurent::div_exact".to_string(),
            });
        }
        // Leading term under padded lexicographic order, which (unlike the
        // storage order on trimmed keys) is translation-invariant; that makes
        // the leading key strictly decrease each round, so exact divisions
        // terminate.
        fn leading(poly: &Laurent) -> (Vec<i32>, Gaussian) {
            poly.terms
                .iter()
                .max_by(|(ka, _), (kb, _)| padded_cmp(ka, kb))
                .map(|(k, v)| (k.clone(), v.clone()))
                .expect("nonzero Laurent has a leading term")
        }
        let (lead_key, lead_coeff) = leading(rhs);
        let mut remainder = self.clone();
        let mut quotient = Laurent::zero();
        let mut steps = 0usize;
        while !remainder.is_zero() {
            steps += 1;
            if steps > 4_096 {
                return Err(Error::internal(
                    "Laurent::div_exact",
                    "division did not terminate; dividend is not an exact multiple".to_string(),
                ));
            }
            let (rk, rc) = leading(&remainder);
            let len = rk.len().max(lead_key.len());
            let mut key = vec![0i32; len];
            for (i, slot) in key.iter_mut().enumerate() {
                *slot = rk.get(i).copied().unwrap_or(0) - lead_key.get(i).copied().unwrap_or(0);
            }
            let coeff = rc.div(&lead_coeff)?;
            let term = Laurent::monomial_term(&key, coeff.clone());
            quotient.add_term(key, coeff);
            remainder = remainder.sub(&term.mul(rhs));
        }
        Ok(quotient)
    }

    /// If `self == q · rhs` for a Gaussian constant `q`, return `q`.
    ///
    /// `rhs` must be nonzero.  Returns `None` when the two polynomials are not
    /// proportional over `ℚ(i)`.
    pub fn ratio_to(&self, rhs: &Laurent) -> Option<Gaussian> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Gaussian::zero());
        }
        if self.terms.len() != rhs.terms.len() {
            return None;
        }
        let mut ratio: Option<Gaussian> = None;
        for ((ka, ca), (kb, cb)) in self.terms.iter().zip(rhs.terms.iter()) {
            if ka != kb {
                return None;
            }
            let q = ca.div(cb).expect("stored coefficients are nonzero");
            match &ratio {
                None => ratio = Some(q),
                Some(r) if *r == q => {}
                Some(_) => return None,
            }
        }
        ratio
    }

    /// Substitute rational values for the variables.
    ///
    /// Missing positions in `values` default to 1 so that formal scale symbols
    /// can be evaluated away harmlessly.  Fails on a zero base raised to a
    /// negative power.
    pub fn eval_rational(&self, values: &[Rational]) -> Result<Gaussian> {
        let mut acc = Gaussian::zero();
        for (key, c) in &self.terms {
            let mut factor = Rational::from_integer(1.into());
            for (idx, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = values
                    .get(idx)
                    .cloned()
                    .unwrap_or_else(|| Rational::from_integer(1.into()));
                if base.is_zero() && e < 0 {
                    return Err(Error::DivisionByZero {
                        context: "Laurent::eval_rational".to_string(),
                    });
                }
                let mut pow = Rational::from_integer(1.into());
                for _ in 0..e.unsigned_abs() {
                    pow *= &base;
                }
                if e < 0 {
                    pow = pow.recip();
                }
                factor *= pow;
            }
            acc += &c.scale(&factor);
        }
        Ok(acc)
    }

    /// Render with the given variable names (missing names fall back to `x_j`).
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (key, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let var_part: Vec<String> = key
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(j, e)| {
                    let name = names
                        .get(j)
                        .map(|s| s.to_string())
                        .unwrap_or_else(|| format!("x{j}"));
                    if *e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if var_part.is_empty() {
                out.push_str(&format!("{c}"));
            } else if c.is_one() {
                out.push_str(&var_part.join("·"));
            } else {
                let needs_parens = !c.im.is_zero() && !c.re.is_zero();
                if needs_parens {
                    out.push_str(&format!("({c})·{}", var_part.join("·")));
                } else {
                    out.push_str(&format!("{c}·{}", var_part.join("·")));
                }
            }
        }
        out
    }
}

fn unit_key(idx: usize, e: i32) -> Vec<i32> {
    let mut key = vec![0i32; idx + 1];
    key[idx] = e;
    key
}

/// Lexicographic comparison of exponent keys after zero-padding to a common
/// length; translation-invariant, unlike the raw `Vec` order on trimmed keys.
fn padded_cmp(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
    let len = a.len().max(b.len());
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        match x.cmp(&y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_int};

    fn lam() -> Laurent {
        Laurent::var(0)
    }

    #[test]
    fn ring_identities() {
        let x = lam();
        let y = Laurent::var(1);
        let p = x.add(&y).mul(&x.sub(&y));
        let q = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, q);
        assert!(p.sub(&q).is_zero());
    }

    #[test]
    fn negative_exponents_cancel() {
        let x = lam();
        let inv = x.inverse().unwrap();
        assert_eq!(x.mul(&inv), Laurent::one());
        // 1/((2m−1)λ) with m = 2.
        let third = Laurent::monomial_term(&[-1], Gaussian::from_rational(rat(1, 3)));
        assert_eq!(third.mul(&x), Laurent::from_rational(rat(1, 3)));
    }

    #[test]
    fn from_weight_is_linear() {
        let w1 = Weight::from_ints(&[1, -1]);
        let w2 = Weight::from_ints(&[-1, 1]);
        assert!(Laurent::from_weight(&w1)
            .add(&Laurent::from_weight(&w2))
            .is_zero());
        assert_eq!(
            Laurent::from_weight(&Weight::from_ints(&[2])),
            lam().scale(&Gaussian::from_int(2))
        );
    }

    #[test]
    fn ratio_detects_proportionality() {
        let x = lam();
        let y = Laurent::var(1);
        let p = x.add(&y.scale(&Gaussian::from_int(3)));
        let q = p.scale(&Gaussian::new(rat(2, 1), rat(1, 2)));
        assert_eq!(q.ratio_to(&p), Some(Gaussian::new(rat(2, 1), rat(1, 2))));
        assert_eq!(p.ratio_to(&x), None);
        assert_eq!(Laurent::zero().ratio_to(&p), Some(Gaussian::zero()));
    }

    #[test]
    fn multi_term_inverse_is_rejected() {
        let p = lam().add(&Laurent::one());
        assert!(p.inverse().is_err());
    }

    #[test]
    fn exact_division_recovers_cofactor() {
        let x = lam();
        let y = Laurent::var(1);
        // (x² − y²) / (x − y) = x + y.
        let num = x.mul(&x).sub(&y.mul(&y));
        let den = x.sub(&y);
        assert_eq!(num.div_exact(&den).unwrap(), x.add(&y));
        // Laurent units divide anything.
        let p = x.add(&Laurent::one());
        let unit = Laurent::monomial_term(&[-1], Gaussian::from_int(2));
        let q = p.div_exact(&unit).unwrap();
        assert_eq!(q.mul(&unit), p);
        // Non-multiples are reported, not looped on forever.
        assert!(Laurent::one().div_exact(&p).is_err());
    }

    #[test]
    fn eval_substitutes_rationals() {
        // λ1·λ2^{-1} + 2 at λ1 = 3, λ2 = 1/2 → 6 + 2 = 8.
        let p = Laurent::monomial_term(&[1, -1], Gaussian::one()).add(&Laurent::from_int(2));
        assert_eq!(
            p.eval_rational(&[rat_int(3), rat(1, 2)]).unwrap(),
            Gaussian::from_int(8)
        );
        assert!(Laurent::monomial_term(&[-1], Gaussian::one())
            .eval_rational(&[rat_int(0)])
            .is_err());
    }

    #[test]
    fn display_names_variables() {
        let p = Laurent::monomial_term(&[1], Gaussian::from_rational(rat(-1, 2)));
        assert_eq!(p.display_with(&["λ"]), "-1/2·λ");
        assert_eq!(Laurent::zero().display_with(&["λ"]), "0");
    }
}
