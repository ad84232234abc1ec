//! The two solvmanifold families and their invariant-form calculus.
//!
//! **Generalized Nakamura models** `Γ\(ℂ ⋉_ρ ℂⁿ)`: base coframe `φ⁰ = dw`
//! (closed) and fiber coframe `φ^i = e^{−λ_i(w+w̄)/2} dz_i`, giving the
//! structure equations `dφ^i = −(λ_i/2)(φ⁰ + φ̄⁰) ∧ φ^i`.  The weights
//! `λ_1, …, λ_n` are rational vectors in the formal symbols and must sum to
//! zero (unimodularity).  Every invariant form here is untwisted, and the de
//! Rham cohomology of the compact quotient is carried entirely by the
//! weight-zero monomials (the model is completely solvable).
//!
//! **Semidirect products of complex factors** `Γ\(ℂ^{2n} ⋉_ρ ℂ^{2m})`: base
//! coframe `φ^1, …, φ^{2n} = dw_i` (closed) and fiber coframe
//! `ψ^{2j+1} = e^{−λ(w_1+w̄_2+⋯+w_{2n-1}+w̄_{2n})} dz_{2j+1}`,
//! `ψ^{2j+2} = e^{ λ(w̄_1+w_2+⋯+w̄_{2n-1}+w_{2n})} dz_{2j+2}`.  With
//! `η = φ^1 + φ̄^2 + ⋯ + φ̄^{2n}` the equations read
//! `dψ^{2j+1} = −λ η ∧ ψ^{2j+1}` and `dψ^{2j+2} = λ η̄ ∧ ψ^{2j+2}`.
//! Each fiber generator carries an attached *de Rham character* (the inverse
//! of its frame exponential) so that the twisted elements `χ_m · m` are all
//! closed; the finite de Rham subcomplex consists of the twisted monomials
//! whose total character descends to the lattice quotient.  A second family
//! of attached characters (`β`/`γ`) twists every `(p,q)`-monomial into the
//! finite Dolbeault subcomplex, on which `∂̄` vanishes identically.

use std::sync::Arc;

use crate::algebra::matrix::{laurent_rank, laurent_row_echelon};
use crate::algebra::{rat, Character, Form, Gaussian, GeneratorSet, Laurent, Monomial, Weight};
use crate::algebra::{CharacterContext, GeneratorDecl};
use crate::error::{Error, Result};

/// Which family a [`Model`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// `Γ\(ℂ ⋉_ρ ℂⁿ)` with diagonal completely solvable monodromy.
    GeneralizedNakamura,
    /// `Γ\(ℂ^{2n} ⋉_ρ ℂ^{2m})`, the semidirect product of complex factors.
    Product,
}

/// A twisted monomial `χ · m`: one element of a finite sub-complex basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightedMonomial {
    pub character: Character,
    pub monomial: Monomial,
}

impl WeightedMonomial {
    pub fn untwisted(monomial: Monomial) -> Self {
        WeightedMonomial {
            character: Character::identity(),
            monomial,
        }
    }

    pub fn to_form(&self, model: &Model) -> Form {
        Form::from_term(
            model.generators(),
            self.character.clone(),
            self.monomial,
            Laurent::one(),
        )
    }

    pub fn display(&self, model: &Model) -> String {
        let mono = self.monomial.display(model.generators());
        if self.character.is_identity() {
            mono
        } else {
            format!("{}·{}", self.character.display(), mono)
        }
    }
}

/// An instantiated model: generator set plus the family-specific data needed
/// for bases, characters, and reports.
#[derive(Debug, Clone)]
pub struct Model {
    kind: ModelKind,
    gens: Arc<GeneratorSet>,
    /// Complex dimension of the group (= number of generators).
    complex_dim: usize,
    /// Generalized Nakamura: the fiber weights `λ_1, …, λ_n`.
    fiber_weights: Vec<Weight>,
    /// Product models: the two shape parameters.
    pairs_n: usize,
    pairs_m: usize,
    /// Per-generator attached de Rham characters (identity off the fiber).
    de_rham_chars: Vec<Character>,
    /// Per-generator attached Dolbeault characters for unbarred (`β`) and
    /// barred (`γ`) factors (product models only).
    dolbeault_unbarred: Vec<Character>,
    dolbeault_barred: Vec<Character>,
}

/// Build the generalized Nakamura model with the given fiber weights.
///
/// Requires at least one weight and `Σ λ_i = 0`; the number of formal weight
/// symbols is the largest support of the inputs.
pub fn generalized_nakamura(weights: &[Weight]) -> Result<Model> {
    if weights.is_empty() {
        return Err(Error::invalid(
            "generalized_nakamura",
            "at least one fiber weight is required",
        ));
    }
    let total = Weight::sum(weights);
    if !total.is_zero() {
        return Err(Error::CheckFailed {
            operation: "generalized_nakamura".to_string(),
            detail: format!("fiber weights must sum to zero, got {total}"),
        });
    }
    let n = weights.len();
    let symbols = weights.iter().map(Weight::support_len).max().unwrap_or(0);
    let var_names: Vec<String> = if symbols <= 1 {
        vec!["λ".to_string()]
    } else {
        (1..=symbols).map(|i| format!("λ{i}")).collect()
    };

    let mut decls = vec![GeneratorDecl::closed("phi0", false)];
    for (i, w) in weights.iter().enumerate() {
        let half = Laurent::from_weight(w).scale(&Gaussian::from_rational(rat(-1, 2)));
        decls.push(GeneratorDecl {
            name: format!("phi{}", i + 1),
            self_conjugate: false,
            weight: w.clone(),
            dlog: vec![((0, false), half.clone()), ((0, true), half)],
        });
    }
    let gens = GeneratorSet::new(decls, var_names, None)?;
    let identity_chars = vec![Character::identity(); n + 1];
    Ok(Model {
        kind: ModelKind::GeneralizedNakamura,
        gens,
        complex_dim: n + 1,
        fiber_weights: weights.to_vec(),
        pairs_n: 0,
        pairs_m: 0,
        de_rham_chars: identity_chars.clone(),
        dolbeault_unbarred: identity_chars.clone(),
        dolbeault_barred: identity_chars,
    })
}

/// Build the semidirect product of complex factors with base `ℂ^{2n}` and
/// fiber `ℂ^{2m}`.
pub fn product_model(n: usize, m: usize) -> Result<Model> {
    if n == 0 || m == 0 {
        return Err(Error::invalid(
            "product_model",
            format!("both parameters must be positive, got n={n}, m={m}"),
        ));
    }
    let gen_total = 2 * n + 2 * m;
    if gen_total > crate::algebra::MAX_GENERATORS {
        return Err(Error::invalid(
            "product_model",
            format!("{gen_total} generators exceed the supported maximum"),
        ));
    }
    let lambda = Laurent::var(0);

    // η = φ¹ + φ̄² + φ³ + φ̄⁴ + ⋯ (odd base coordinates unbarred, even barred).
    let eta: Vec<(usize, bool)> = (0..2 * n).map(|k| (k, k % 2 == 1)).collect();
    let eta_bar: Vec<(usize, bool)> = (0..2 * n).map(|k| (k, k % 2 == 0)).collect();

    let mut decls: Vec<GeneratorDecl> = (1..=2 * n)
        .map(|i| GeneratorDecl::closed(&format!("phi{i}"), false))
        .collect();
    for j in 1..=2 * m {
        let (refs, coeff, weight) = if j % 2 == 1 {
            (&eta, lambda.scale(&Gaussian::from_int(-1)), 1)
        } else {
            (&eta_bar, lambda.clone(), -1)
        };
        decls.push(GeneratorDecl {
            name: format!("psi{j}"),
            self_conjugate: false,
            weight: Weight::from_ints(&[weight]),
            dlog: refs.iter().map(|r| (*r, coeff.clone())).collect(),
        });
    }
    let gens = GeneratorSet::new(
        decls,
        vec!["λ".to_string()],
        Some(CharacterContext {
            base_generators: (0..2 * n).collect(),
            lambda: lambda.clone(),
        }),
    )?;

    // Attached de Rham characters: the inverse of each fiber frame
    // exponential.  ψ^{2j+1} carries e^{λ(w_1+w̄_2+⋯)}, i.e. a_k = 1 on odd
    // base coordinates and b_k = 1 on even ones (1-based); ψ^{2j+2} carries
    // e^{−λ(w̄_1+w_2+⋯)}.
    let odd_char = Character::from_int_pairs(
        &(0..2 * n)
            .map(|k| if k % 2 == 0 { (1, 0) } else { (0, 1) })
            .collect::<Vec<_>>(),
    );
    let even_char = Character::from_int_pairs(
        &(0..2 * n)
            .map(|k| if k % 2 == 0 { (0, -1) } else { (-1, 0) })
            .collect::<Vec<_>>(),
    );
    let mut de_rham_chars = vec![Character::identity(); 2 * n];
    for j in 1..=2 * m {
        de_rham_chars.push(if j % 2 == 1 {
            odd_char.clone()
        } else {
            even_char.clone()
        });
    }

    // Attached Dolbeault characters.  Unbarred fiber factors use the `β`
    // family: β_odd = e^{−λ(w_2−w̄_2+w_4−w̄_4+⋯)}, β_even = e^{λ(w_1−w̄_1+⋯)};
    // barred factors use the `γ` family: γ_odd = e^{−λ(w_1−w̄_1+⋯)},
    // γ_even = e^{λ(w_2−w̄_2+⋯)}.  All are trivial on the lattice.
    let on_even = |sign: i64| {
        Character::from_int_pairs(
            &(0..2 * n)
                .map(|k| if k % 2 == 1 { (sign, -sign) } else { (0, 0) })
                .collect::<Vec<_>>(),
        )
    };
    let on_odd = |sign: i64| {
        Character::from_int_pairs(
            &(0..2 * n)
                .map(|k| if k % 2 == 0 { (sign, -sign) } else { (0, 0) })
                .collect::<Vec<_>>(),
        )
    };
    let mut dolbeault_unbarred = vec![Character::identity(); 2 * n];
    let mut dolbeault_barred = vec![Character::identity(); 2 * n];
    for j in 1..=2 * m {
        if j % 2 == 1 {
            dolbeault_unbarred.push(on_even(-1));
            dolbeault_barred.push(on_odd(-1));
        } else {
            dolbeault_unbarred.push(on_odd(1));
            dolbeault_barred.push(on_even(1));
        }
    }

    Ok(Model {
        kind: ModelKind::Product,
        gens,
        complex_dim: gen_total,
        fiber_weights: Vec::new(),
        pairs_n: n,
        pairs_m: m,
        de_rham_chars,
        dolbeault_unbarred,
        dolbeault_barred,
    })
}

/// Report of [`Model::check_solvability`]: exact dimensions of the derived
/// and lower central series of the (complexified) Lie algebra, reconstructed
/// from the structure equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvabilityReport {
    /// `dim g ⊇ dim [g,g] ⊇ dim [[g,g],[g,g]] ⊇ …` down to 0 or stability.
    pub derived_dims: Vec<usize>,
    /// `dim g ⊇ dim c¹ ⊇ dim c² ⊇ …` (`c^{k+1} = [g, c^k]`).
    pub lower_central_dims: Vec<usize>,
    pub solvable: bool,
    pub nilpotent: bool,
    pub abelian: bool,
    /// Derived series reaches zero in at most two steps.
    pub two_step_solvable: bool,
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    /// Complex dimension `N` of the group (real dimension `2N`).
    pub fn complex_dim(&self) -> usize {
        self.complex_dim
    }

    /// Generalized Nakamura fiber weights (empty for product models).
    pub fn fiber_weights(&self) -> &[Weight] {
        &self.fiber_weights
    }

    /// Product-model shape `(n, m)`; zero for generalized Nakamura models.
    pub fn product_shape(&self) -> (usize, usize) {
        (self.pairs_n, self.pairs_m)
    }

    /// Number of formal weight symbols in play.
    pub fn symbol_count(&self) -> usize {
        match self.kind {
            ModelKind::Product => 1,
            ModelKind::GeneralizedNakamura => self
                .fiber_weights
                .iter()
                .map(Weight::support_len)
                .max()
                .unwrap_or(0)
                .max(1),
        }
    }

    /// The attached de Rham character of a slot (conjugate slots attach the
    /// conjugated character).
    pub fn slot_de_rham_char(&self, slot: usize) -> Character {
        let gen = self.gens.slot_generator(slot);
        let ch = &self.de_rham_chars[gen];
        if self.gens.slot_is_barred(slot) {
            ch.conj()
        } else {
            ch.clone()
        }
    }

    /// Total attached de Rham character of a monomial.
    pub fn monomial_de_rham_char(&self, m: Monomial) -> Character {
        m.slots().iter().fold(Character::identity(), |acc, &s| {
            acc.mul(&self.slot_de_rham_char(s))
        })
    }

    /// Total attached Dolbeault character of a monomial.
    pub fn monomial_dolbeault_char(&self, m: Monomial) -> Character {
        m.slots().iter().fold(Character::identity(), |acc, &s| {
            let gen = self.gens.slot_generator(s);
            let ch = if self.gens.slot_is_barred(s) {
                &self.dolbeault_barred[gen]
            } else {
                &self.dolbeault_unbarred[gen]
            };
            acc.mul(ch)
        })
    }

    /// Exterior derivative (checks the form belongs to this model).
    pub fn d(&self, form: &Form) -> Result<Form> {
        if !form.generator_set().same_set(&self.gens) {
            return Err(Error::GeneratorSetMismatch {
                left: form.generator_set().describe(),
                right: self.gens.describe(),
            });
        }
        form.d()
    }

    /// Dolbeault operator: the `(p, q+1)`-component of `d` on a form of pure
    /// bidegree `(p, q)`.  Errors on mixed bidegrees, naming both.
    pub fn delbar(&self, form: &Form) -> Result<Form> {
        let (p, q) = form.bidegree()?;
        self.d(form)?.project_bidegree(p, q + 1)
    }

    /// Holomorphic derivative: the `(p+1, q)`-component of `d`.
    pub fn del(&self, form: &Form) -> Result<Form> {
        let (p, q) = form.bidegree()?;
        self.d(form)?.project_bidegree(p + 1, q)
    }

    /// The finite de Rham sub-complex basis in exterior degree `k`.
    ///
    /// Generalized Nakamura: the weight-zero plain monomials — equivalently
    /// the four families `{m, φ⁰∧m, φ̄⁰∧m, φ⁰∧φ̄⁰∧m}` over weight-zero fiber
    /// monomials; these are exactly the cohomology representatives of the
    /// completely solvable quotient.  Product models: the twisted monomials
    /// `χ_m · m` whose total attached character is trivial on the lattice;
    /// `d` vanishes identically on them.  Deterministic enumeration order.
    pub fn admissible_basis(&self, k: usize) -> Result<Vec<WeightedMonomial>> {
        if k > 2 * self.complex_dim {
            return Ok(Vec::new());
        }
        let monos = self.gens.monomials_of_degree(k);
        let mut out = Vec::new();
        for m in monos {
            match self.kind {
                ModelKind::GeneralizedNakamura => {
                    if m.weight(&self.gens).is_zero() {
                        out.push(WeightedMonomial::untwisted(m));
                    }
                }
                ModelKind::Product => {
                    let ch = self.monomial_de_rham_char(m);
                    if ch.is_trivial_on_lattice() {
                        out.push(WeightedMonomial {
                            character: ch,
                            monomial: m,
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// The finite Dolbeault sub-complex basis in bidegree `(p, q)`:
    /// every `(p,q)`-monomial twisted by its attached `β`/`γ` character.
    ///
    /// Only defined for the product models; the generalized Nakamura family
    /// is reported as unsupported.
    pub fn dolbeault_basis(&self, p: usize, q: usize) -> Result<Vec<WeightedMonomial>> {
        if self.kind != ModelKind::Product {
            return Err(Error::Unsupported {
                operation: "dolbeault_basis".to_string(),
                detail: "finite Dolbeault sub-complexes are provided for the semidirect \
                         products of complex factors only"
                    .to_string(),
            });
        }
        let n = self.complex_dim;
        if p > n || q > n {
            return Ok(Vec::new());
        }
        let unbarred: Vec<usize> = (0..n).collect();
        let barred: Vec<usize> = (n..2 * n).collect();
        let mut out = Vec::new();
        for mp in crate::algebra::monomials_from_pool(&unbarred, p) {
            for mq in crate::algebra::monomials_from_pool(&barred, q) {
                let (m, sign) = mp
                    .wedge(mq)
                    .expect("unbarred and barred slots are disjoint");
                debug_assert_eq!(sign, 1, "canonical order: unbarred before barred");
                let ch = self.monomial_dolbeault_char(m);
                debug_assert!(ch.is_trivial_on_lattice());
                out.push(WeightedMonomial {
                    character: ch,
                    monomial: m,
                });
            }
        }
        Ok(out)
    }

    /// Reconstruct the dual Lie bracket from the structure equations and
    /// report the derived and lower central series exactly.
    ///
    /// Works over the complexified frame (dimensions agree with the real Lie
    /// algebra); ranks are exact over the fraction field of the weight-symbol
    /// ring.
    pub fn check_solvability(&self) -> Result<SolvabilityReport> {
        let slots = self.gens.slots();
        let dim = slots.len();
        let index_of: std::collections::BTreeMap<usize, usize> =
            slots.iter().enumerate().map(|(i, &s)| (s, i)).collect();

        // Structure constants: d e^a = Σ_{b<c} C^a_{bc} e^b ∧ e^c gives
        // [X_b, X_c] = −Σ_a C^a_{bc} X_a.
        let mut bracket = vec![vec![vec![Laurent::zero(); dim]; dim]; dim];
        for (a_idx, &a) in slots.iter().enumerate() {
            let da = Form::from_slot(&self.gens, a)?.d()?;
            for (ch, m, coeff) in da.terms() {
                if !ch.is_identity() {
                    return Err(Error::internal(
                        "check_solvability",
                        "invariant frame derivative produced a twisted term",
                    ));
                }
                let occupied = m.slots();
                if occupied.len() != 2 {
                    return Err(Error::internal(
                        "check_solvability",
                        "frame derivative term of unexpected degree",
                    ));
                }
                let (b_idx, c_idx) = (index_of[&occupied[0]], index_of[&occupied[1]]);
                let value = coeff.neg();
                bracket[b_idx][c_idx][a_idx] = bracket[b_idx][c_idx][a_idx].add(&value);
                bracket[c_idx][b_idx][a_idx] = bracket[c_idx][b_idx][a_idx].sub(&value);
            }
        }

        let bracket_vectors =
            |left: &[Vec<Laurent>], right: &[Vec<Laurent>]| -> Vec<Vec<Laurent>> {
                let mut out = Vec::new();
                for u in left {
                    for v in right {
                        let mut w = vec![Laurent::zero(); dim];
                        for (b, ub) in u.iter().enumerate() {
                            if ub.is_zero() {
                                continue;
                            }
                            for (c, vc) in v.iter().enumerate() {
                                if vc.is_zero() || b == c {
                                    continue;
                                }
                                let factor = ub.mul(vc);
                                for (a, w_a) in w.iter_mut().enumerate() {
                                    if !bracket[b][c][a].is_zero() {
                                        *w_a = w_a.add(&factor.mul(&bracket[b][c][a]));
                                    }
                                }
                            }
                        }
                        if w.iter().any(|x| !x.is_zero()) {
                            out.push(w);
                        }
                    }
                }
                laurent_row_echelon(out)
            };

        let full: Vec<Vec<Laurent>> = (0..dim)
            .map(|i| {
                let mut v = vec![Laurent::zero(); dim];
                v[i] = Laurent::one();
                v
            })
            .collect();

        // Derived series.
        let mut derived_dims = vec![dim];
        let mut current = full.clone();
        loop {
            let next = bracket_vectors(&current, &current);
            let next_dim = laurent_rank(&next);
            derived_dims.push(next_dim);
            if next_dim == 0 || next_dim == *derived_dims.iter().rev().nth(1).unwrap() {
                break;
            }
            current = next;
        }
        let solvable = *derived_dims.last().unwrap() == 0;

        // Lower central series.
        let mut lower_central_dims = vec![dim];
        let mut central = full.clone();
        loop {
            let next = bracket_vectors(&full, &central);
            let next_dim = laurent_rank(&next);
            lower_central_dims.push(next_dim);
            if next_dim == 0 || next_dim == *lower_central_dims.iter().rev().nth(1).unwrap() {
                break;
            }
            central = next;
        }
        let nilpotent = *lower_central_dims.last().unwrap() == 0;
        let abelian = derived_dims.get(1) == Some(&0);
        let two_step_solvable = solvable && derived_dims.len() <= 3;

        Ok(SolvabilityReport {
            derived_dims,
            lower_central_dims,
            solvable,
            nilpotent,
            abelian,
            two_step_solvable,
        })
    }

    /// Human-readable model description.
    pub fn describe(&self) -> String {
        match self.kind {
            ModelKind::GeneralizedNakamura => {
                let ws: Vec<String> = self.fiber_weights.iter().map(|w| w.to_string()).collect();
                format!("generalized Nakamura model, weights [{}]", ws.join(", "))
            }
            ModelKind::Product => format!(
                "semidirect product of complex factors, n={}, m={}",
                self.pairs_n, self.pairs_m
            ),
        }
    }
}

/// Binomial coefficient as `u64` (saturating only far beyond our sizes).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    fn gn(weights: &[&[i64]]) -> Model {
        generalized_nakamura(
            &weights
                .iter()
                .map(|w| Weight::from_ints(w))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn weights_must_sum_to_zero() {
        assert!(matches!(
            generalized_nakamura(&[Weight::from_ints(&[1])]),
            Err(Error::CheckFailed { .. })
        ));
        assert!(generalized_nakamura(&[]).is_err());
        assert!(gn(&[&[1], &[-1]]).complex_dim() == 3);
    }

    #[test]
    fn three_dim_model_admissible_counts_match_its_betti_numbers() {
        // Weight list (λ, −λ): counts 1,2,5,8,5,2,1 over degrees 0..6.
        let model = gn(&[&[1], &[-1]]);
        let counts: Vec<usize> = (0..=6)
            .map(|k| model.admissible_basis(k).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 8, 5, 2, 1]);
    }

    #[test]
    fn four_dim_model_admissible_counts() {
        // Weight list (λ, −λ, 0): counts 1,4,10,20,26,20,10,4,1.
        let model = gn(&[&[1], &[-1], &[0]]);
        let counts: Vec<usize> = (0..=8)
            .map(|k| model.admissible_basis(k).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 4, 10, 20, 26, 20, 10, 4, 1]);
    }

    #[test]
    fn product_model_admissible_counts() {
        // n = m = 1: degree-1 basis is the four base forms; degree 2 has 10.
        let model = product_model(1, 1).unwrap();
        let b1 = model.admissible_basis(1).unwrap();
        assert_eq!(b1.len(), 4);
        for wm in &b1 {
            assert!(wm.character.is_identity());
        }
        assert_eq!(model.admissible_basis(2).unwrap().len(), 10);
        // All admissible twisted elements are closed.
        for k in 0..=8 {
            for wm in model.admissible_basis(k).unwrap() {
                let f = wm.to_form(&model);
                assert!(
                    model.d(&f).unwrap().is_zero(),
                    "d ≠ 0 on {}",
                    wm.display(&model)
                );
            }
        }
    }

    #[test]
    fn product_model_betti_numbers_match_reference() {
        // n = m = 1 has the same Betti table as the 4-complex-dimensional
        // completely solvable model: 1,4,10,20,26,20,10,4,1.
        let model = product_model(1, 1).unwrap();
        let counts: Vec<usize> = (0..=8)
            .map(|k| model.admissible_basis(k).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 4, 10, 20, 26, 20, 10, 4, 1]);
    }

    #[test]
    fn structure_equations_of_the_product_model() {
        let model = product_model(1, 1).unwrap();
        let gens = model.generators();
        let eta = Form::from_names(gens, &["phi1"])
            .unwrap()
            .add(&Form::from_names(gens, &["phi2~"]).unwrap());
        let psi1 = Form::from_names(gens, &["psi1"]).unwrap();
        let psi2 = Form::from_names(gens, &["psi2"]).unwrap();
        let lam = Laurent::var(0);
        assert_eq!(
            model.d(&psi1).unwrap(),
            eta.wedge(&psi1).unwrap().scale(&lam).neg()
        );
        assert_eq!(
            model.d(&psi2).unwrap(),
            eta.conjugate().wedge(&psi2).unwrap().scale(&lam)
        );
        assert!(model
            .d(&Form::from_names(gens, &["phi1"]).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn dolbeault_basis_is_delbar_closed() {
        for (n, m) in [(1, 1), (1, 2)] {
            let model = product_model(n, m).unwrap();
            let dim = model.complex_dim();
            for p in 0..=dim.min(2) {
                for q in 0..=dim.min(2) {
                    let basis = model.dolbeault_basis(p, q).unwrap();
                    assert_eq!(
                        basis.len() as u64,
                        binomial(dim, p) * binomial(dim, q),
                        "({n},{m}) bidegree ({p},{q})"
                    );
                    for wm in basis {
                        let f = wm.to_form(&model);
                        assert!(
                            model.delbar(&f).unwrap().is_zero(),
                            "∂̄ ≠ 0 on {} in ({n},{m})",
                            wm.display(&model)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dolbeault_basis_is_unsupported_for_generalized_nakamura() {
        let model = gn(&[&[1], &[-1]]);
        assert!(matches!(
            model.dolbeault_basis(1, 1),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn delbar_rejects_mixed_bidegrees() {
        let model = product_model(1, 1).unwrap();
        let gens = model.generators();
        let mixed = Form::from_names(gens, &["phi1"])
            .unwrap()
            .add(&Form::from_names(gens, &["phi1~"]).unwrap());
        let err = model.delbar(&mixed).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("(1, 0)") && text.contains("(0, 1)"), "{text}");
    }

    #[test]
    fn d_squared_vanishes_exhaustively_on_small_models() {
        let models = [
            gn(&[&[1], &[-1]]),
            gn(&[&[1], &[-1], &[0]]),
            gn(&[&[1, 0], &[0, 1], &[-1, -1]]),
            product_model(1, 1).unwrap(),
        ];
        for model in &models {
            let gens = model.generators();
            for k in 0..=2 * model.complex_dim() {
                for m in gens.monomials_of_degree(k) {
                    let f = Form::from_term(gens, Character::identity(), m, Laurent::one());
                    assert!(model.d(&model.d(&f).unwrap()).unwrap().is_zero());
                }
            }
        }
        // Also on twisted monomials of the product model.
        let model = product_model(1, 1).unwrap();
        for k in 0..=4 {
            for m in model.generators().monomials_of_degree(k) {
                let ch = model.monomial_de_rham_char(m);
                let f = Form::from_term(model.generators(), ch, m, Laurent::one());
                assert!(model.d(&model.d(&f).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn solvability_reports() {
        // Completely solvable 3-complex-dimensional model: 2-step solvable,
        // not nilpotent.
        let report = gn(&[&[1], &[-1]]).check_solvability().unwrap();
        assert_eq!(report.derived_dims, vec![6, 4, 0]);
        assert!(report.solvable && report.two_step_solvable);
        assert!(!report.nilpotent && !report.abelian);
        assert_eq!(report.lower_central_dims, vec![6, 4, 4]);

        // Product model: same qualitative picture.
        let report = product_model(1, 1).unwrap().check_solvability().unwrap();
        assert_eq!(report.derived_dims, vec![8, 4, 0]);
        assert!(report.two_step_solvable && !report.nilpotent);

        // Zero weight: a complex torus, abelian.
        let report = gn(&[&[0]]).check_solvability().unwrap();
        assert!(report.abelian && report.nilpotent && report.solvable);
        assert_eq!(report.derived_dims, vec![4, 0]);
    }

    #[test]
    fn two_symbol_weights_stay_independent() {
        // Weights λ1, λ2, −λ1−λ2 with two independent symbols.
        let model = gn(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(model.symbol_count(), 2);
        // Degree-1 admissible: only φ⁰, φ̄⁰ (no fiber weight vanishes).
        assert_eq!(model.admissible_basis(1).unwrap().len(), 2);
        // Degree-2: only φ⁰∧φ̄⁰ — no pair of fiber weights cancels.
        let b2 = model.admissible_basis(2).unwrap();
        assert_eq!(b2.len(), 1);
        let report = model.check_solvability().unwrap();
        assert_eq!(report.derived_dims, vec![8, 6, 0]);
    }

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(10, 5), 252);
    }

    #[test]
    fn admissible_basis_elements_are_conjugation_stable() {
        let model = product_model(1, 1).unwrap();
        for k in 0..=8 {
            let basis = model.admissible_basis(k).unwrap();
            let set: std::collections::BTreeSet<(Character, Monomial)> = basis
                .iter()
                .map(|wm| (wm.character.clone(), wm.monomial))
                .collect();
            for wm in &basis {
                let (cm, _sign) = wm.monomial.conj(model.generators());
                assert!(set.contains(&(wm.character.conj(), cm)));
            }
        }
        let _ = rat_int(0);
    }
}
