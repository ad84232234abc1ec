//! Generator sets, wedge monomials, and twisting characters.
//!
//! A [`GeneratorSet`] declares an invariant coframe: a list of 1-form
//! generators, each either *complex* (it has an independent conjugate `γ̄`) or
//! *self-conjugate* (a real generator fixed by conjugation).  Generator `i`
//! occupies slot `i`; its conjugate, when distinct, occupies slot `N + i`.
//! The canonical monomial order lists unbarred generators in declaration
//! order followed by barred generators in declaration order, so a
//! [`Monomial`] is just the bitmask of its occupied slots and all wedge signs
//! are crossing parities.
//!
//! Structure equations are stored per slot in logarithmic-derivative form
//! `dγ = ζ ∧ γ` with `ζ` an invariant 1-form; this covers every coframe in
//! the crate and makes `d` a single wedge per term.  A [`Character`] is a
//! multiplicative function `e^{λ Σ (a_i w_i + b_i w̄_i)}` of the base
//! coordinates, recorded by its rational exponent pairs; forms may be twisted
//! by characters and `d` picks up the logarithmic derivative
//! `λ Σ (a_i dw_i + b_i dw̄_i)` via the generator set's character context.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};

use super::laurent::Laurent;
use super::rational::Rational;
use super::weight::Weight;

/// Maximum number of generators (slots are bits of a `u64`).
pub const MAX_GENERATORS: usize = 32;

/// Declaration of a single coframe generator.
#[derive(Debug, Clone)]
pub struct GeneratorDecl {
    /// Display name, e.g. `phi1`.
    pub name: String,
    /// True for real generators fixed by conjugation.
    pub self_conjugate: bool,
    /// Formal weight with respect to the declared weight symbols.
    pub weight: Weight,
    /// Logarithmic derivative: `d(γ) = (Σ coeff · slot-1-form) ∧ γ`.
    /// Slot references are `(generator index, barred)` pairs.
    pub dlog: Vec<((usize, bool), Laurent)>,
}

impl GeneratorDecl {
    /// A closed generator with zero weight.
    pub fn closed(name: &str, self_conjugate: bool) -> Self {
        GeneratorDecl {
            name: name.to_string(),
            self_conjugate,
            weight: Weight::zero(),
            dlog: Vec::new(),
        }
    }
}

/// Mapping that lets `d` differentiate characters: which generators play the
/// base-coordinate 1-forms `dw_i`, and the Laurent symbol standing for `λ`.
#[derive(Debug, Clone)]
pub struct CharacterContext {
    /// Generator indices serving as `dw_1, …, dw_r` in declaration order.
    pub base_generators: Vec<usize>,
    /// The scale symbol `λ` as a Laurent polynomial (usually a single symbol).
    pub lambda: Laurent,
}

/// An immutable declared coframe with structure equations.
///
/// Constructed through [`GeneratorSet::new`], which validates slot references
/// and checks `d² = 0` on every generator.
#[derive(Debug)]
pub struct GeneratorSet {
    entries: Vec<GeneratorDecl>,
    /// Per-slot logarithmic derivative, barred slots filled in by conjugation.
    dlogs: Vec<Vec<(usize, Laurent)>>,
    /// Display names of the Laurent variables (`λ`, `λ1`, …).
    var_names: Vec<String>,
    char_context: Option<CharacterContext>,
}

impl GeneratorSet {
    /// Validate and freeze a generator set.
    ///
    /// Checks: at most [`MAX_GENERATORS`] generators, unique non-empty names,
    /// well-formed slot references (no barred reference to a self-conjugate
    /// generator), and `d(dlog) = 0` for every slot — which is exactly
    /// `d² = 0` on the coframe, since `ζ ∧ ζ = 0` for 1-forms.
    pub fn new(
        entries: Vec<GeneratorDecl>,
        var_names: Vec<String>,
        char_context: Option<CharacterContext>,
    ) -> Result<Arc<Self>> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::invalid(
                "GeneratorSet::new",
                "no generators declared",
            ));
        }
        if n > MAX_GENERATORS {
            return Err(Error::invalid(
                "GeneratorSet::new",
                format!("{n} generators exceed the limit of {MAX_GENERATORS}"),
            ));
        }
        for (i, e) in entries.iter().enumerate() {
            if e.name.is_empty() {
                return Err(Error::invalid(
                    "GeneratorSet::new",
                    format!("generator {i} has an empty name"),
                ));
            }
            if entries[..i].iter().any(|prev| prev.name == e.name) {
                return Err(Error::invalid(
                    "GeneratorSet::new",
                    format!("duplicate generator name {:?}", e.name),
                ));
            }
        }
        if let Some(ctx) = &char_context {
            for &g in &ctx.base_generators {
                if g >= n {
                    return Err(Error::invalid(
                        "GeneratorSet::new",
                        format!("character context references generator {g} out of range"),
                    ));
                }
            }
        }

        // Resolve dlog slot references, then mirror them onto barred slots by
        // conjugation (coefficients conjugated, slots bar-swapped).
        let resolve = |decl: &GeneratorDecl| -> Result<Vec<(usize, Laurent)>> {
            decl.dlog
                .iter()
                .map(|((gen, barred), coeff)| {
                    if *gen >= n {
                        return Err(Error::invalid(
                            "GeneratorSet::new",
                            format!("dlog of {:?} references generator {gen} out of range", decl.name),
                        ));
                    }
                    if *barred && entries[*gen].self_conjugate {
                        return Err(Error::invalid(
                            "GeneratorSet::new",
                            format!(
                                "dlog of {:?} references the conjugate of self-conjugate generator {:?}",
                                decl.name, entries[*gen].name
                            ),
                        ));
                    }
                    let slot = if *barred { n + gen } else { *gen };
                    Ok((slot, coeff.clone()))
                })
                .collect()
        };

        let mut dlogs = vec![Vec::new(); 2 * n];
        for (i, decl) in entries.iter().enumerate() {
            let resolved = resolve(decl)?;
            if decl.self_conjugate {
                dlogs[i] = resolved;
            } else {
                dlogs[n + i] = resolved
                    .iter()
                    .map(|(slot, coeff)| {
                        let conj_slot = if entries[slot % n].self_conjugate {
                            *slot
                        } else if *slot < n {
                            slot + n
                        } else {
                            slot - n
                        };
                        (conj_slot, coeff.conj())
                    })
                    .collect();
                dlogs[i] = resolved;
            }
        }

        let set = Arc::new(GeneratorSet {
            entries,
            dlogs,
            var_names,
            char_context,
        });

        // d² = 0 on every generator: d(dlog_s) must vanish.
        for slot in set.slots() {
            let zeta = set.slot_one_form_terms(slot);
            let mut ddlog = crate::algebra::Form::zero(&set);
            for (s, coeff) in &zeta {
                let gen_form = crate::algebra::Form::from_slot(&set, *s)?.scale(coeff);
                ddlog = ddlog.add(&gen_form.d()?);
            }
            if !ddlog.is_zero() {
                return Err(Error::internal(
                    "GeneratorSet::new",
                    format!("d² ≠ 0: d(dlog) of slot {} is nonzero", set.slot_name(slot)),
                ));
            }
        }
        Ok(set)
    }

    /// Number of declared generators `N`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> &GeneratorDecl {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[GeneratorDecl] {
        &self.entries
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.var_names.iter().map(String::as_str).collect()
    }

    pub fn character_context(&self) -> Option<&CharacterContext> {
        self.char_context.as_ref()
    }

    /// Generator index by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    /// All occupied-able slots in canonical order: unbarred `0..N`, then the
    /// barred slots of the non-self-conjugate generators.
    pub fn slots(&self) -> Vec<usize> {
        let n = self.len();
        let mut slots: Vec<usize> = (0..n).collect();
        slots.extend(
            (0..n)
                .filter(|&i| !self.entries[i].self_conjugate)
                .map(|i| n + i),
        );
        slots
    }

    /// Total slot-space width `2N` (bits of the monomial mask).
    pub fn slot_space(&self) -> usize {
        2 * self.len()
    }

    /// Generator index underlying a slot.
    pub fn slot_generator(&self, slot: usize) -> usize {
        slot % self.len()
    }

    pub fn slot_is_barred(&self, slot: usize) -> bool {
        slot >= self.len()
    }

    /// The conjugate slot (identity on self-conjugate generators).
    pub fn conj_slot(&self, slot: usize) -> usize {
        let n = self.len();
        let gen = slot % n;
        if self.entries[gen].self_conjugate {
            slot
        } else if slot < n {
            slot + n
        } else {
            slot - n
        }
    }

    /// Weight of the generator behind a slot (conjugates share the weight).
    pub fn slot_weight(&self, slot: usize) -> &Weight {
        &self.entries[self.slot_generator(slot)].weight
    }

    /// Logarithmic derivative of the slot's generator as slot/coefficient
    /// pairs.
    pub fn slot_one_form_terms(&self, slot: usize) -> Vec<(usize, Laurent)> {
        self.dlogs[slot].clone()
    }

    pub(crate) fn slot_dlog(&self, slot: usize) -> &[(usize, Laurent)] {
        &self.dlogs[slot]
    }

    /// Display name of a slot (barred slots carry a trailing `~`).
    pub fn slot_name(&self, slot: usize) -> String {
        let gen = self.slot_generator(slot);
        if self.slot_is_barred(slot) {
            format!("{}~", self.entries[gen].name)
        } else {
            self.entries[gen].name.clone()
        }
    }

    /// Structural equality: same names, conjugation types, and weights.
    pub fn same_set(&self, other: &GeneratorSet) -> bool {
        std::ptr::eq(self, other)
            || (self.entries.len() == other.entries.len()
                && self.entries.iter().zip(other.entries.iter()).all(|(a, b)| {
                    a.name == b.name && a.self_conjugate == b.self_conjugate && a.weight == b.weight
                }))
    }

    /// Short description used in mismatch errors.
    pub fn describe(&self) -> String {
        let names: Vec<&str> = self.entries.iter().map(|e| e.name.as_str()).collect();
        format!("[{}]", names.join(", "))
    }

    /// All degree-`k` monomials over the full slot pool, ascending
    /// lexicographic in slot lists (deterministic).
    pub fn monomials_of_degree(&self, k: usize) -> Vec<Monomial> {
        monomials_from_pool(&self.slots(), k)
    }
}

/// Ascending-lexicographic `k`-combinations of the given slot pool.
pub fn monomials_from_pool(pool: &[usize], k: usize) -> Vec<Monomial> {
    let n = pool.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut mask = 0u64;
        for &i in &idx {
            mask |= 1 << pool[i];
        }
        out.push(Monomial(mask));
        // Advance the combination odometer.
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if idx[pos] != pos + n - k {
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// A wedge monomial: the bitmask of occupied slots, implicitly in canonical
/// (ascending-slot) order with coefficient `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_slots(slots: &[usize]) -> Self {
        let mut mask = 0u64;
        for &s in slots {
            mask |= 1 << s;
        }
        Monomial(mask)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_scalar(self) -> bool {
        self.0 == 0
    }

    pub fn contains_slot(self, slot: usize) -> bool {
        self.0 & (1 << slot) != 0
    }

    /// Occupied slots in ascending order.
    pub fn slots(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    /// Wedge of two canonical monomials: `None` when a slot repeats, else the
    /// union with the crossing-parity sign.
    pub fn wedge(self, rhs: Monomial) -> Option<(Monomial, i8)> {
        if self.0 & rhs.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut b = rhs.0;
        while b != 0 {
            let j = b.trailing_zeros();
            // Slots of `self` above j must cross b's factor j.
            inversions += (self.0 >> (j + 1)).count_ones();
            b &= b - 1;
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((Monomial(self.0 | rhs.0), sign))
    }

    /// Conjugate monomial and the permutation sign restoring canonical order.
    pub fn conj(self, gens: &GeneratorSet) -> (Monomial, i8) {
        let mapped: Vec<usize> = self.slots().iter().map(|&s| gens.conj_slot(s)).collect();
        let mut inversions = 0usize;
        for i in 0..mapped.len() {
            for j in i + 1..mapped.len() {
                if mapped[i] > mapped[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        (Monomial::from_slots(&mapped), sign)
    }

    /// `(p, q)` = (unbarred factors, barred factors).  Fails if the monomial
    /// touches a self-conjugate generator, which has no bidegree.
    pub fn bidegree(self, gens: &GeneratorSet) -> Result<(usize, usize)> {
        let mut p = 0;
        let mut q = 0;
        for s in self.slots() {
            if gens.entry(gens.slot_generator(s)).self_conjugate {
                return Err(Error::InhomogeneousForm {
                    kind: "bidegree".to_string(),
                    detail: format!(
                        "self-conjugate generator {} has no bidegree",
                        gens.slot_name(s)
                    ),
                });
            }
            if gens.slot_is_barred(s) {
                q += 1;
            } else {
                p += 1;
            }
        }
        Ok((p, q))
    }

    /// Total weight: sum of slot weights (barred slots included).
    pub fn weight(self, gens: &GeneratorSet) -> Weight {
        self.slots()
            .iter()
            .fold(Weight::zero(), |acc, &s| acc.add(gens.slot_weight(s)))
    }

    pub fn display(self, gens: &GeneratorSet) -> String {
        if self.is_scalar() {
            return "1".to_string();
        }
        let parts: Vec<String> = self.slots().iter().map(|&s| gens.slot_name(s)).collect();
        parts.join("∧")
    }
}

/// A multiplicative character `e^{λ Σ_i (a_i w_i + b_i w̄_i)}` of the base,
/// recorded by the rational exponent vectors `a` and `b`.
///
/// The identity has both vectors zero.  Characters multiply by adding
/// exponents, conjugation swaps `a ↔ b`, and a character descends to the
/// quotient by the crate's standard lattices exactly when `a_i + b_i = 0` for
/// every base coordinate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Character {
    a: Weight,
    b: Weight,
}

impl Character {
    pub fn identity() -> Self {
        Character::default()
    }

    pub fn new(a: Weight, b: Weight) -> Self {
        Character { a, b }
    }

    /// Build from per-coordinate `(a_i, b_i)` pairs.
    pub fn from_pairs(pairs: &[(Rational, Rational)]) -> Self {
        Character {
            a: Weight::new(pairs.iter().map(|(a, _)| a.clone()).collect()),
            b: Weight::new(pairs.iter().map(|(_, b)| b.clone()).collect()),
        }
    }

    pub fn from_int_pairs(pairs: &[(i64, i64)]) -> Self {
        Character {
            a: Weight::from_ints(&pairs.iter().map(|p| p.0).collect::<Vec<_>>()),
            b: Weight::from_ints(&pairs.iter().map(|p| p.1).collect::<Vec<_>>()),
        }
    }

    pub fn a(&self) -> &Weight {
        &self.a
    }

    pub fn b(&self) -> &Weight {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Group law: exponents add.
    pub fn mul(&self, rhs: &Character) -> Character {
        Character {
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
        }
    }

    pub fn inverse(&self) -> Character {
        Character {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    /// Conjugation swaps the holomorphic and antiholomorphic exponents.
    pub fn conj(&self) -> Character {
        Character {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Triviality on the standard lattices: real translations contribute
    /// `e^{λ(a_i+b_i)}` and imaginary ones a root of unity, so the character
    /// descends exactly when `a_i + b_i = 0` for all `i`.
    pub fn is_trivial_on_lattice(&self) -> bool {
        self.a.add(&self.b).is_zero()
    }

    /// Render like `e^{λ(w1 - w2~)}`; the identity renders as `1`.
    pub fn display(&self) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        let len = self.a.support_len().max(self.b.support_len());
        let mut parts: Vec<String> = Vec::new();
        for i in 0..len {
            for (coef, bar) in [(self.a.coord(i), ""), (self.b.coord(i), "~")] {
                if coef.is_zero() {
                    continue;
                }
                let var = format!("w{}{}", i + 1, bar);
                let piece = if coef == Rational::from_integer(1.into()) {
                    var
                } else if coef == Rational::from_integer((-1).into()) {
                    format!("-{var}")
                } else {
                    format!("{coef}·{var}")
                };
                parts.push(piece);
            }
        }
        let mut body = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 && !p.starts_with('-') {
                body.push_str(" + ");
            } else if i > 0 {
                body.push(' ');
            }
            body.push_str(p);
        }
        format!("e^{{λ({body})}}")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn plain_set(names: &[&str]) -> Arc<GeneratorSet> {
        GeneratorSet::new(
            names
                .iter()
                .map(|n| GeneratorDecl::closed(n, false))
                .collect(),
            vec![],
            None,
        )
        .unwrap()
    }

    #[test]
    fn monomial_wedge_signs_are_crossing_parities() {
        let a = Monomial::from_slots(&[0]);
        let b = Monomial::from_slots(&[1, 3]);
        assert_eq!(a.wedge(b), Some((Monomial::from_slots(&[0, 1, 3]), 1)));
        let c = Monomial::from_slots(&[2]);
        assert_eq!(c.wedge(b), Some((Monomial::from_slots(&[1, 2, 3]), -1)));
        // Repeated slot annihilates.
        assert_eq!(b.wedge(b), None);
    }

    #[test]
    fn conjugation_reorders_with_sign() {
        let gens = plain_set(&["phi0", "phi1"]);
        // conj(phi0 ∧ phi1~) = phi0~ ∧ phi1 = −(phi1 ∧ phi0~).
        let m = Monomial::from_slots(&[0, 3]);
        assert_eq!(m.conj(&gens), (Monomial::from_slots(&[1, 2]), -1));
        // conj(phi0 ∧ phi1) keeps order.
        let m = Monomial::from_slots(&[0, 1]);
        assert_eq!(m.conj(&gens), (Monomial::from_slots(&[2, 3]), 1));
    }

    #[test]
    fn bidegree_counts_bars() {
        let gens = plain_set(&["phi0", "phi1"]);
        let m = Monomial::from_slots(&[0, 1, 3]);
        assert_eq!(m.bidegree(&gens).unwrap(), (2, 1));
        let real =
            GeneratorSet::new(vec![GeneratorDecl::closed("E0", true)], vec![], None).unwrap();
        assert!(Monomial::from_slots(&[0]).bidegree(&real).is_err());
    }

    #[test]
    fn enumeration_is_deterministic_and_complete() {
        let gens = plain_set(&["a", "b", "c"]);
        let deg2 = gens.monomials_of_degree(2);
        assert_eq!(deg2.len(), 15); // C(6,2)
        let mut sorted = deg2.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 15);
        assert_eq!(gens.monomials_of_degree(0), vec![Monomial::ONE]);
        assert!(gens.monomials_of_degree(7).is_empty());
    }

    #[test]
    fn character_group_and_triviality() {
        // Attached character of ψ^{2j+1}: a_i = 1 (odd i), b_i = 1 (even i);
        // its conjugate swaps the roles; their product with the ψ^{2j+2} pair
        // patterns is trivial exactly when the a+b sums cancel.
        let psi1 = Character::from_int_pairs(&[(1, 0), (0, 1)]);
        let psi2 = Character::from_int_pairs(&[(0, -1), (-1, 0)]);
        assert!(!psi1.is_trivial_on_lattice());
        assert!(psi1.mul(&psi2).is_trivial_on_lattice());
        assert!(psi1.mul(&psi1.conj().inverse()).is_trivial_on_lattice());
        assert_eq!(psi1.mul(&psi1.inverse()), Character::identity());
        let half = Character::from_pairs(&[(rat(1, 2), rat(-1, 2))]);
        assert!(half.is_trivial_on_lattice());
        assert!(!half.is_identity());
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let result = GeneratorSet::new(
            vec![
                GeneratorDecl::closed("x", false),
                GeneratorDecl::closed("x", false),
            ],
            vec![],
            None,
        );
        assert!(result.is_err());
    }

    #[test]
    fn slots_skip_self_conjugate_bars() {
        let gens = GeneratorSet::new(
            vec![
                GeneratorDecl::closed("E0", true),
                GeneratorDecl::closed("phi", false),
            ],
            vec![],
            None,
        )
        .unwrap();
        assert_eq!(gens.slots(), vec![0, 1, 3]);
        assert_eq!(gens.conj_slot(0), 0);
        assert_eq!(gens.conj_slot(1), 3);
        assert_eq!(gens.slot_name(3), "phi~");
    }
}
