//! Invariant differential forms: finite sums `Σ c · χ · m` with Laurent
//! coefficients `c`, twisting characters `χ`, and wedge monomials `m` over a
//! fixed generator set.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};

use super::gaussian::Gaussian;
use super::laurent::Laurent;
use super::monomial::{Character, GeneratorSet, Monomial};
use super::rational::Rational;

/// A differential form over a [`GeneratorSet`].
///
/// Stored as a map `(character, monomial) → coefficient` with no zero
/// coefficients; addition, wedge, conjugation and `d` all preserve this
/// normal form.  The generator set travels with the form, and mixing forms
/// from structurally different sets is a structural error.
#[derive(Debug, Clone)]
pub struct Form {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<(Character, Monomial), Laurent>,
}

impl Form {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        Form {
            gens: Arc::clone(gens),
            terms: BTreeMap::new(),
        }
    }

    /// The scalar (degree-0, untwisted) form with the given coefficient.
    pub fn scalar(gens: &Arc<GeneratorSet>, c: Laurent) -> Self {
        let mut f = Form::zero(gens);
        f.add_term(Character::identity(), Monomial::ONE, c);
        f
    }

    pub fn one(gens: &Arc<GeneratorSet>) -> Self {
        Form::scalar(gens, Laurent::one())
    }

    /// A single term `c · χ · m`.
    pub fn from_term(
        gens: &Arc<GeneratorSet>,
        character: Character,
        monomial: Monomial,
        c: Laurent,
    ) -> Self {
        let mut f = Form::zero(gens);
        f.add_term(character, monomial, c);
        f
    }

    /// The 1-form of a slot (`slot < N` unbarred, `slot ≥ N` barred).
    pub fn from_slot(gens: &Arc<GeneratorSet>, slot: usize) -> Result<Self> {
        let n = gens.len();
        if slot >= 2 * n {
            return Err(Error::invalid(
                "Form::from_slot",
                format!("slot {slot} out of range for {n} generators"),
            ));
        }
        if slot >= n && gens.entry(slot - n).self_conjugate {
            return Err(Error::invalid(
                "Form::from_slot",
                format!(
                    "generator {:?} is self-conjugate and has no barred slot",
                    gens.entry(slot - n).name
                ),
            ));
        }
        Ok(Form::from_term(
            gens,
            Character::identity(),
            Monomial::from_slots(&[slot]),
            Laurent::one(),
        ))
    }

    /// The 1-form of generator `idx`, optionally conjugated.
    pub fn generator(gens: &Arc<GeneratorSet>, idx: usize, barred: bool) -> Result<Self> {
        if idx >= gens.len() {
            return Err(Error::invalid(
                "Form::generator",
                format!("generator index {idx} out of range"),
            ));
        }
        let slot = if barred {
            if gens.entry(idx).self_conjugate {
                idx
            } else {
                gens.len() + idx
            }
        } else {
            idx
        };
        Form::from_slot(gens, slot)
    }

    /// The canonical wedge of the named generators, e.g. `["phi0", "phi1~"]`.
    pub fn from_names(gens: &Arc<GeneratorSet>, names: &[&str]) -> Result<Self> {
        let mut acc = Form::one(gens);
        for raw in names {
            let (name, barred) = match raw.strip_suffix('~') {
                Some(base) => (base, true),
                None => (*raw, false),
            };
            let idx = gens.index_of(name).ok_or_else(|| {
                Error::invalid("Form::from_names", format!("unknown generator {name:?}"))
            })?;
            acc = acc.wedge(&Form::generator(gens, idx, barred)?)?;
        }
        Ok(acc)
    }

    pub fn generator_set(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms in deterministic (character, monomial) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Character, &Monomial, &Laurent)> {
        self.terms.iter().map(|((c, m), v)| (c, m, v))
    }

    /// Coefficient of a term key (zero when absent).
    pub fn coefficient(&self, character: &Character, monomial: Monomial) -> Laurent {
        self.terms
            .get(&(character.clone(), monomial))
            .cloned()
            .unwrap_or_else(Laurent::zero)
    }

    fn add_term(&mut self, character: Character, monomial: Monomial, c: Laurent) {
        if c.is_zero() {
            return;
        }
        let key = (character, monomial);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing = existing.add(&c);
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check_same_set(&self, rhs: &Form, _op: &str) -> Result<()> {
        if self.gens.same_set(&rhs.gens) {
            Ok(())
        } else {
            Err(Error::GeneratorSetMismatch {
                left: self.gens.describe(),
                right: rhs.gens.describe(),
            })
        }
    }

    pub fn add(&self, rhs: &Form) -> Form {
        debug_assert!(
            self.gens.same_set(&rhs.gens),
            "generator set mismatch in add"
        );
        let mut out = self.clone();
        for ((ch, m), c) in &rhs.terms {
            out.add_term(ch.clone(), *m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Form {
        Form {
            gens: Arc::clone(&self.gens),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Form) -> Form {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Laurent) -> Form {
        let mut out = Form::zero(&self.gens);
        for ((ch, m), v) in &self.terms {
            out.add_term(ch.clone(), *m, v.mul(c));
        }
        out
    }

    pub fn scale_gaussian(&self, c: &Gaussian) -> Form {
        self.scale(&Laurent::constant(c.clone()))
    }

    pub fn scale_rational(&self, q: &Rational) -> Form {
        self.scale_gaussian(&Gaussian::from_rational(q.clone()))
    }

    pub fn scale_int(&self, n: i64) -> Form {
        self.scale_gaussian(&Gaussian::from_int(n))
    }

    /// Exterior product.  Characters multiply, monomials wedge with crossing
    /// signs, coefficients multiply.
    pub fn wedge(&self, rhs: &Form) -> Result<Form> {
        self.check_same_set(rhs, "wedge")?;
        let mut out = Form::zero(&self.gens);
        for ((ch_a, m_a), c_a) in &self.terms {
            for ((ch_b, m_b), c_b) in &rhs.terms {
                if let Some((m, sign)) = m_a.wedge(*m_b) {
                    let mut c = c_a.mul(c_b);
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.add_term(ch_a.mul(ch_b), m, c);
                }
            }
        }
        Ok(out)
    }

    /// `k`-fold wedge power (`k = 0` gives the scalar 1).
    pub fn pow(&self, k: usize) -> Result<Form> {
        let mut acc = Form::one(&self.gens);
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Complex conjugation: coefficients and characters conjugate, monomial
    /// slots bar-swap with the reordering sign.
    pub fn conjugate(&self) -> Form {
        let mut out = Form::zero(&self.gens);
        for ((ch, m), c) in &self.terms {
            let (cm, sign) = m.conj(&self.gens);
            let mut coeff = c.conj();
            if sign < 0 {
                coeff = coeff.neg();
            }
            out.add_term(ch.conj(), cm, coeff);
        }
        out
    }

    /// Multiply every term's character by `χ`.
    pub fn twist(&self, character: &Character) -> Form {
        let mut out = Form::zero(&self.gens);
        for ((ch, m), c) in &self.terms {
            out.add_term(ch.mul(character), *m, c.clone());
        }
        out
    }

    /// True when every term's character is the identity.
    pub fn is_untwisted(&self) -> bool {
        self.terms.keys().all(|(ch, _)| ch.is_identity())
    }

    /// Exterior derivative via the stored structure equations.
    ///
    /// For a term `c · χ · m` the derivative is `c · ζ ∧ (χ · m)` where
    /// `ζ = dlog χ + Σ_{slots of m} dlog γ_slot`; all `ζ` here are closed
    /// invariant 1-forms, which is what makes `d² = 0` automatic.
    pub fn d(&self) -> Result<Form> {
        let gens = &self.gens;
        let mut out = Form::zero(gens);
        for ((ch, m), c) in &self.terms {
            // ζ as slot → coefficient.
            let mut zeta: BTreeMap<usize, Laurent> = BTreeMap::new();
            let mut push = |slot: usize, coeff: Laurent| {
                let entry = zeta.entry(slot).or_insert_with(Laurent::zero);
                *entry = entry.add(&coeff);
            };
            for slot in m.slots() {
                for (s, coeff) in gens.slot_dlog(slot) {
                    push(*s, coeff.clone());
                }
            }
            if !ch.is_identity() {
                let ctx = gens.character_context().ok_or_else(|| Error::Unsupported {
                    operation: "Form::d".to_string(),
                    detail: "twisted term over a generator set with no character context"
                        .to_string(),
                })?;
                let coords = ch.a().support_len().max(ch.b().support_len());
                if coords > ctx.base_generators.len() {
                    return Err(Error::invalid(
                        "Form::d",
                        format!(
                            "character uses {coords} base coordinates but the context only maps {}",
                            ctx.base_generators.len()
                        ),
                    ));
                }
                for i in 0..coords {
                    let gen = ctx.base_generators[i];
                    let a = ch.a().coord(i);
                    let b = ch.b().coord(i);
                    if !a.is_zero() {
                        push(gen, ctx.lambda.scale(&Gaussian::from_rational(a)));
                    }
                    if !b.is_zero() {
                        let bar = gens.conj_slot(gen);
                        push(bar, ctx.lambda.scale(&Gaussian::from_rational(b)));
                    }
                }
            }
            for (slot, coeff) in zeta {
                if coeff.is_zero() {
                    continue;
                }
                if let Some((new_m, sign)) = Monomial::from_slots(&[slot]).wedge(*m) {
                    let mut term = c.mul(&coeff);
                    if sign < 0 {
                        term = term.neg();
                    }
                    out.add_term(ch.clone(), new_m, term);
                }
            }
        }
        Ok(out)
    }

    /// Homogeneous degree.  Errors on the zero form and on mixed degrees.
    pub fn degree(&self) -> Result<usize> {
        let mut degree: Option<usize> = None;
        for (_, m) in self.terms.keys() {
            let k = m.degree();
            match degree {
                None => degree = Some(k),
                Some(d) if d == k => {}
                Some(d) => {
                    return Err(Error::InhomogeneousForm {
                        kind: "degree".to_string(),
                        detail: format!("mixes degrees {d} and {k}"),
                    })
                }
            }
        }
        degree.ok_or_else(|| Error::InhomogeneousForm {
            kind: "degree".to_string(),
            detail: "zero form".to_string(),
        })
    }

    /// Homogeneous bidegree.  Errors on the zero form, on mixed bidegrees
    /// (naming both), and on monomials without a bidegree.
    pub fn bidegree(&self) -> Result<(usize, usize)> {
        let mut bidegree: Option<(usize, usize)> = None;
        for (_, m) in self.terms.keys() {
            let pq = m.bidegree(&self.gens)?;
            match bidegree {
                None => bidegree = Some(pq),
                Some(d) if d == pq => {}
                Some(d) => {
                    return Err(Error::InhomogeneousForm {
                        kind: "bidegree".to_string(),
                        detail: format!("mixes bidegrees {d:?} and {pq:?}"),
                    })
                }
            }
        }
        bidegree.ok_or_else(|| Error::InhomogeneousForm {
            kind: "bidegree".to_string(),
            detail: "zero form".to_string(),
        })
    }

    /// The part of the form in exterior degree `k`.
    pub fn project_degree(&self, k: usize) -> Form {
        Form {
            gens: Arc::clone(&self.gens),
            terms: self
                .terms
                .iter()
                .filter(|((_, m), _)| m.degree() == k)
                .map(|(key, v)| (key.clone(), v.clone()))
                .collect(),
        }
    }

    /// The part of the form in bidegree `(p, q)`.
    pub fn project_bidegree(&self, p: usize, q: usize) -> Result<Form> {
        let mut out = Form::zero(&self.gens);
        for ((ch, m), c) in &self.terms {
            if m.bidegree(&self.gens)? == (p, q) {
                out.add_term(ch.clone(), *m, c.clone());
            }
        }
        Ok(out)
    }

    /// Structural equality of normal forms.
    pub fn equals(&self, rhs: &Form) -> bool {
        self.gens.same_set(&rhs.gens) && self.terms == rhs.terms
    }
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.gens.var_names();
        for (i, ((ch, m), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let coeff = c.display_with(&names);
            let coeff_part = if coeff == "1" && !(ch.is_identity() && m.is_scalar()) {
                String::new()
            } else if c.term_count() > 1 {
                format!("({coeff})·")
            } else {
                format!("{coeff}·")
            };
            let char_part = if ch.is_identity() {
                String::new()
            } else {
                format!("{}·", ch.display())
            };
            let mono_part = if m.is_scalar() && !(coeff_part.is_empty() && char_part.is_empty()) {
                String::new()
            } else {
                m.display(&self.gens)
            };
            let mut rendered = format!("{coeff_part}{char_part}{mono_part}");
            if rendered.ends_with('·') {
                rendered.pop();
            }
            write!(f, "{rendered}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::GeneratorDecl;
    use crate::algebra::rational::rat;
    use crate::algebra::weight::Weight;

    /// The one-generalized-coordinate model frame: phi0 closed, phi1 with
    /// d(phi1) = −(1/2)λ1 (phi0 + phi0~) ∧ phi1 — but structure equations are
    /// irrelevant for the pure wedge tests, so the plain set omits them.
    fn plain(names: &[&str]) -> Arc<GeneratorSet> {
        GeneratorSet::new(
            names
                .iter()
                .map(|n| GeneratorDecl::closed(n, false))
                .collect(),
            vec!["λ".to_string()],
            None,
        )
        .unwrap()
    }

    #[test]
    fn real_combination_wedges_with_signs() {
        // (phi0 + phi0~) ∧ (phi1 ∧ phi1~) = phi0∧phi1∧phi1~ − phi1∧phi0~∧phi1~.
        let gens = plain(&["phi0", "phi1"]);
        let left = Form::from_names(&gens, &["phi0"])
            .unwrap()
            .add(&Form::from_names(&gens, &["phi0~"]).unwrap());
        let right = Form::from_names(&gens, &["phi1", "phi1~"]).unwrap();
        let product = left.wedge(&right).unwrap();
        let expected = Form::from_term(
            &gens,
            Character::identity(),
            Monomial::from_slots(&[0, 1, 3]),
            Laurent::one(),
        )
        .add(&Form::from_term(
            &gens,
            Character::identity(),
            Monomial::from_slots(&[1, 2, 3]),
            Laurent::from_int(-1),
        ));
        assert_eq!(product, expected);
    }

    #[test]
    fn wedge_is_graded_anticommutative_on_one_forms() {
        let gens = plain(&["a", "b"]);
        let a = Form::from_names(&gens, &["a"]).unwrap();
        let b = Form::from_names(&gens, &["b~"]).unwrap();
        assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().neg());
        assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn conjugate_is_an_involution() {
        let gens = plain(&["phi0", "phi1"]);
        let f = Form::from_names(&gens, &["phi0", "phi1~"])
            .unwrap()
            .scale_gaussian(&Gaussian::new(rat(1, 2), rat(3, 1)));
        assert_eq!(f.conjugate().conjugate(), f);
        // conj(phi0∧phi1~) = −(phi1∧phi0~) term with conjugated coefficient.
        let c = f
            .conjugate()
            .coefficient(&Character::identity(), Monomial::from_slots(&[1, 2]));
        assert_eq!(c, Laurent::constant(Gaussian::new(rat(-1, 2), rat(3, 1))));
    }

    #[test]
    fn d_uses_structure_equations() {
        // dw-frame with d(phi1) = −(1/2)λ (phi0 + phi0~) ∧ phi1.
        let lam = Laurent::var(0);
        let half = Gaussian::from_rational(rat(-1, 2));
        let gens = GeneratorSet::new(
            vec![
                GeneratorDecl::closed("phi0", false),
                GeneratorDecl {
                    name: "phi1".to_string(),
                    self_conjugate: false,
                    weight: Weight::from_ints(&[1]),
                    dlog: vec![
                        ((0, false), lam.scale(&half)),
                        ((0, true), lam.scale(&half)),
                    ],
                },
            ],
            vec!["λ".to_string()],
            None,
        )
        .unwrap();
        let phi1 = Form::from_names(&gens, &["phi1"]).unwrap();
        let expected = Form::from_names(&gens, &["phi0"])
            .unwrap()
            .add(&Form::from_names(&gens, &["phi0~"]).unwrap())
            .wedge(&phi1)
            .unwrap()
            .scale(&lam.scale(&half));
        assert_eq!(phi1.d().unwrap(), expected);
        // d² = 0 on a product too.
        let pair = Form::from_names(&gens, &["phi1", "phi1~"]).unwrap();
        assert!(pair.d().unwrap().d().unwrap().is_zero());
        assert!(Form::from_names(&gens, &["phi0"])
            .unwrap()
            .d()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn d_differentiates_characters() {
        use crate::algebra::monomial::CharacterContext;
        // One base generator w (phi = dw), character e^{λ(a w + b w~)}.
        let gens = GeneratorSet::new(
            vec![GeneratorDecl::closed("phi", false)],
            vec!["λ".to_string()],
            Some(CharacterContext {
                base_generators: vec![0],
                lambda: Laurent::var(0),
            }),
        )
        .unwrap();
        let ch = Character::from_int_pairs(&[(2, -2)]);
        let f = Form::scalar(&gens, Laurent::one()).twist(&ch);
        let df = f.d().unwrap();
        // d(χ) = λ(2 phi − 2 phi~) χ.
        let expected = Form::from_names(&gens, &["phi"])
            .unwrap()
            .scale_int(2)
            .sub(&Form::from_names(&gens, &["phi~"]).unwrap().scale_int(2))
            .scale(&Laurent::var(0))
            .twist(&ch);
        assert_eq!(df, expected);
        assert!(df.d().unwrap().is_zero());
    }

    #[test]
    fn degree_and_bidegree_projections() {
        let gens = plain(&["a", "b"]);
        let one = Form::from_names(&gens, &["a"]).unwrap();
        let two = Form::from_names(&gens, &["a", "b~"]).unwrap();
        let mixed = one.add(&two);
        assert!(mixed.degree().is_err());
        assert_eq!(mixed.project_degree(1), one);
        assert_eq!(two.bidegree().unwrap(), (1, 1));
        assert_eq!(two.project_bidegree(2, 0).unwrap(), Form::zero(&gens));
        assert!(Form::zero(&gens).degree().is_err());
    }

    #[test]
    fn display_is_readable() {
        let gens = plain(&["phi0", "phi1"]);
        let f = Form::from_names(&gens, &["phi0", "phi1~"])
            .unwrap()
            .scale_rational(&rat(-1, 2));
        assert_eq!(f.to_string(), "-1/2·phi0∧phi1~");
        assert_eq!(Form::zero(&gens).to_string(), "0");
        assert_eq!(Form::one(&gens).to_string(), "1");
    }
}
