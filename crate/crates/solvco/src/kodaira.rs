//! Almost-complex coframes and the bidegree splitting of `d` they induce.
//!
//! The invariant models carry interesting *non-integrable* almost complex
//! structures: a deformation family `J_t` on the five-dimensional generalized
//! Nakamura model, built from a real coframe `{E^j, F^j}`, and a structure `𝒥`
//! on the product models, built by mixing the fiber generators with their
//! conjugates.  For such structures `d` no longer splits as `∂ + ∂̄`; there are
//! four components, and the `(0,2)`-component of `d` on `(1,0)`-forms is
//! exactly the integrability obstruction.
//!
//! This module provides:
//!
//! * [`RealCoframe`] — the real generators `E^0, F^0, …, E^{2r}, F^{2r}` of
//!   the odd-dimensional generalized Nakamura models, with their diagonal
//!   structure equations `dE^j = −λ_i E^0 ∧ E^j`, `dF^j = λ_i E^0 ∧ F^j`;
//! * [`DeformationParams`] — the rational deformation parameters
//!   `α(t) = 2t₂/(t₁²+t₂²−1)` and `β(t) = ((1−t₁)²+t₂²)/(t₁²+t₂²−1)`,
//!   together with the block matrix of the deformed structure;
//! * [`AlmostComplexCoframe`] — an arbitrary constant-coefficient `(1,0)`-
//!   coframe over a generator set, with exact basis-change machinery that
//!   splits any invariant 2-form into its `(2,0)`, `(1,1)` and `(0,2)` parts
//!   and evaluates `∂̄` on wedge words of coframe elements by the graded
//!   Leibniz rule;
//! * the reference identities: the five structure equations of the deformed
//!   coframe, `∂̄Ω_t = (iλ₂α(t)/2)·φ_t^{0̄} ∧ Ω_t` for the top form, and the
//!   exact cancellation `∂̄Ω = 0` for the product-model structure `𝒥`.
//!
//! Analytic consequences (plurigenera, Kodaira dimension) depend on a
//! transcendental condition `α(t) ∈ (2π/kλ₂)ℤ` that cannot be decided in
//! exact rational arithmetic; reports carry them as recorded conclusions of
//! the reference development, never as computed values.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::matrix::GaussianMatrix;
use crate::algebra::{
    rat, Form, Gaussian, GeneratorDecl, GeneratorSet, Laurent, Monomial, Rational, Weight,
};
use crate::model;
use crate::{Error, Result};

/// Rational deformation parameters of the five-dimensional family.
///
/// The pair `t = (t₁, t₂)` must avoid the unit circle (the denominator
/// `t₁² + t₂² − 1` of both coefficients).  The derived values are
///
/// ```text
/// α(t) = 2t₂ / (t₁²+t₂²−1),   β(t) = ((1−t₁)²+t₂²) / (t₁²+t₂²−1),
/// ```
///
/// and `γ(t)` is determined by `−α(t)² − γ(t)β(t) = 1`.  Over the rationals
/// `β(t) = 0` would force `t = (1, 0)`, which lies on the excluded circle, so
/// `γ` is always defined; the constructor still checks `β ≠ 0` explicitly to
/// keep the invariant local.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationParams {
    t1: Rational,
    t2: Rational,
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
}

impl DeformationParams {
    /// Validate `t` and derive `α`, `β`, `γ`.
    pub fn new(t1: Rational, t2: Rational) -> Result<Self> {
        let denom = &t1 * &t1 + &t2 * &t2 - Rational::one();
        if denom.is_zero() {
            return Err(Error::invalid(
                "DeformationParams::new",
                format!("t = ({t1}, {t2}) lies on the unit circle t₁²+t₂² = 1"),
            ));
        }
        let alpha = (&t2 + &t2) / &denom;
        let one_minus_t1 = Rational::one() - &t1;
        let beta = (&one_minus_t1 * &one_minus_t1 + &t2 * &t2) / &denom;
        if beta.is_zero() {
            return Err(Error::invalid(
                "DeformationParams::new",
                format!("t = ({t1}, {t2}) gives β(t) = 0, so the deformed block is singular"),
            ));
        }
        let gamma = -(Rational::one() + &alpha * &alpha) / &beta;
        Ok(DeformationParams {
            t1,
            t2,
            alpha,
            beta,
            gamma,
        })
    }

    /// The parameter recovering the standard block structure.
    ///
    /// `α(t) = 0` forces `t₂ = 0`, and then `β(t) = −1` forces `t₁ = 0`;
    /// `t = (0, 0)` is the unique rational parameter whose matrix is the
    /// standard `J` (every block equal to `[[0, −1], [1, 0]]`).
    pub fn undeformed() -> Self {
        DeformationParams::new(Rational::zero(), Rational::zero())
            .expect("the origin avoids the unit circle")
    }

    pub fn t(&self) -> (&Rational, &Rational) {
        (&self.t1, &self.t2)
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// `γ(t) = −(1 + α(t)²)/β(t)`, the unique solution of `−α² − γβ = 1`.
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// The deformed `2×2` block `[[α, β], [γ, −α]]` (rows of the matrix).
    pub fn j_block(&self) -> [[Rational; 2]; 2] {
        [
            [self.alpha.clone(), self.beta.clone()],
            [self.gamma.clone(), -self.alpha.clone()],
        ]
    }

    /// The full endomorphism matrix on a real coframe with `pairs` pairs
    /// `(E^j, F^j)`: standard blocks `[[0, −1], [1, 0]]` on every pair except
    /// the last, which carries [`DeformationParams::j_block`].  Columns hold
    /// the images of the ordered basis `(E^0, F^0, …)`, so applying the
    /// transpose to the coefficient vector of a 1-form gives its pullback.
    pub fn j_matrix(&self, pairs: usize) -> Result<GaussianMatrix> {
        if pairs == 0 {
            return Err(Error::invalid("j_matrix", "at least one pair is required"));
        }
        let n = 2 * pairs;
        let mut rows = vec![vec![Gaussian::zero(); n]; n];
        for p in 0..pairs - 1 {
            rows[2 * p][2 * p + 1] = Gaussian::from_int(-1);
            rows[2 * p + 1][2 * p] = Gaussian::one();
        }
        let block = self.j_block();
        for (bi, brow) in block.iter().enumerate() {
            for (bj, entry) in brow.iter().enumerate() {
                rows[n - 2 + bi][n - 2 + bj] = Gaussian::from_rational(entry.clone());
            }
        }
        GaussianMatrix::from_rows(rows)
    }
}

/// The real invariant coframe of an odd-dimensional generalized Nakamura
/// model with `blocks` weight symbols `λ_1, …, λ_r`.
///
/// Generators are declared in the paired order `E^0, F^0, E^1, F^1, …,
/// E^{2r}, F^{2r}` (all real, i.e. fixed by conjugation) with the diagonal
/// structure equations
///
/// ```text
/// dE^0 = dF^0 = 0,
/// dE^j = −λ_i E^0 ∧ E^j,   dF^j = λ_i E^0 ∧ F^j,   i = ⌈j/2⌉.
/// ```
///
/// `d² = 0` is validated at construction.  Recombining pairs of `E`'s (and
/// pairs of `F`'s) recovers the holomorphic coframe of the underlying complex
/// model; recombining `E^j + iF^j` instead gives a non-integrable almost
/// complex structure, the starting point of the deformation family.
#[derive(Debug, Clone)]
pub struct RealCoframe {
    gens: Arc<GeneratorSet>,
    blocks: usize,
}

impl RealCoframe {
    /// Build the coframe with `blocks ≥ 1` weight symbols (complex dimension
    /// `2·blocks + 1`).
    pub fn new(blocks: usize) -> Result<Self> {
        if blocks == 0 {
            return Err(Error::invalid(
                "RealCoframe::new",
                "at least one weight-symbol block is required",
            ));
        }
        let pairs = 2 * blocks + 1;
        if 2 * pairs > crate::algebra::MAX_GENERATORS {
            return Err(Error::invalid(
                "RealCoframe::new",
                format!("{} generators exceed the supported maximum", 2 * pairs),
            ));
        }
        let mut decls = vec![
            GeneratorDecl::closed("E0", true),
            GeneratorDecl::closed("F0", true),
        ];
        for j in 1..pairs {
            let sym = j.div_ceil(2);
            let mut coords = vec![0i64; sym];
            coords[sym - 1] = -1;
            let e_weight = Weight::from_ints(&coords);
            coords[sym - 1] = 1;
            let f_weight = Weight::from_ints(&coords);
            for (prefix, weight) in [("E", e_weight), ("F", f_weight)] {
                decls.push(GeneratorDecl {
                    name: format!("{prefix}{j}"),
                    self_conjugate: true,
                    weight: weight.clone(),
                    dlog: vec![((0, false), Laurent::from_weight(&weight))],
                });
            }
        }
        let var_names = if blocks == 1 {
            vec!["λ".to_string()]
        } else {
            (1..=blocks).map(|i| format!("λ{i}")).collect()
        };
        let gens = GeneratorSet::new(decls, var_names, None)?;
        Ok(RealCoframe { gens, blocks })
    }

    /// The five-complex-dimensional instance (`λ_1`, `λ_2`).
    pub fn n5() -> Result<Self> {
        RealCoframe::new(2)
    }

    pub fn generator_set(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    /// Number of weight symbols `r`.
    pub fn blocks(&self) -> usize {
        self.blocks
    }

    /// Number of `(E, F)` pairs, i.e. the complex dimension `2r + 1`.
    pub fn pairs(&self) -> usize {
        2 * self.blocks + 1
    }

    /// The generator `E^j`.
    pub fn e(&self, j: usize) -> Result<Form> {
        self.pair_form(j, 0)
    }

    /// The generator `F^j`.
    pub fn f(&self, j: usize) -> Result<Form> {
        self.pair_form(j, 1)
    }

    fn pair_form(&self, j: usize, offset: usize) -> Result<Form> {
        if j >= self.pairs() {
            return Err(Error::invalid(
                "RealCoframe::pair_form",
                format!("pair index {j} out of range for {} pairs", self.pairs()),
            ));
        }
        Form::generator(&self.gens, 2 * j + offset, false)
    }

    /// The invariant symplectic form `ω̃ = Σ_j E^j ∧ F^j` (closed and
    /// non-degenerate, compatible with the paired almost complex structure).
    pub fn omega_tilde(&self) -> Result<Form> {
        let mut acc = Form::zero(&self.gens);
        for j in 0..self.pairs() {
            acc = acc.add(&self.e(j)?.wedge(&self.f(j)?)?);
        }
        Ok(acc)
    }

    /// The holomorphic coframe of the underlying complex model, reassembled
    /// from the real generators:
    ///
    /// ```text
    /// φ^0 = E^0 + iF^0,
    /// φ^{2i−1} = E^{2i−1} + iE^{2i},   φ^{2i} = F^{2i−1} + iF^{2i}.
    /// ```
    ///
    /// Its structure equations are the diagonal ones of the generalized
    /// Nakamura models with fiber weights `(λ_1, −λ_1, …, λ_r, −λ_r)`, and it
    /// is integrable.
    pub fn holomorphic_coframe(&self) -> Result<AlmostComplexCoframe> {
        let i = Gaussian::i();
        let mut forms = vec![self.e(0)?.add(&self.f(0)?.scale_gaussian(&i))];
        for b in 1..=self.blocks {
            forms.push(self.e(2 * b - 1)?.add(&self.e(2 * b)?.scale_gaussian(&i)));
            forms.push(self.f(2 * b - 1)?.add(&self.f(2 * b)?.scale_gaussian(&i)));
        }
        AlmostComplexCoframe::new(forms)
    }

    /// The deformed `(1,0)`-coframe
    ///
    /// ```text
    /// φ_t^j = E^j + iF^j   (j < 2r),
    /// φ_t^{2r} = (1 − iα(t)) E^{2r} − iβ(t) F^{2r},
    /// ```
    ///
    /// together with a report verifying every structure equation and the
    /// `∂̄`-identity on the top form against the reference expressions.
    pub fn deformed_coframe(
        &self,
        params: &DeformationParams,
    ) -> Result<(AlmostComplexCoframe, DeformedCoframeReport)> {
        let r = self.blocks;
        let top = 2 * r;
        let i = Gaussian::i();
        let mut forms = Vec::with_capacity(top + 1);
        for j in 0..top {
            forms.push(self.e(j)?.add(&self.f(j)?.scale_gaussian(&i)));
        }
        let one_minus_ia = Gaussian::new(Rational::one(), -params.alpha().clone());
        let minus_ib = Gaussian::new(Rational::zero(), -params.beta().clone());
        forms.push(
            self.e(top)?
                .scale_gaussian(&one_minus_ia)
                .add(&self.f(top)?.scale_gaussian(&minus_ib)),
        );
        let coframe = AlmostComplexCoframe::new(forms)?;

        let lam_name = |sym: usize| {
            if r == 1 {
                "λ".to_string()
            } else {
                format!("λ{sym}")
            }
        };
        let mut equations = Vec::new();
        equations.push(EquationCheck {
            name: "dφ_t^0".to_string(),
            equation: "0".to_string(),
            matches: coframe.form(0).d()?.is_zero(),
        });
        let zero_oh = coframe.form(0).add(coframe.conjugate_form(0));
        for j in 1..top {
            let sym = j.div_ceil(2);
            let rhs = zero_oh
                .wedge(coframe.conjugate_form(j))?
                .scale(&Laurent::var(sym - 1))
                .scale_rational(&rat(-1, 2));
            equations.push(EquationCheck {
                name: format!("dφ_t^{j}"),
                equation: format!("−({}/2)(φ_t^0 + φ_t^0̄) ∧ φ_t^{j}̄", lam_name(sym)),
                matches: coframe.form(j).d()?.equals(&rhs),
            });
        }
        let i_alpha = Gaussian::new(Rational::zero(), params.alpha().clone());
        let bracket = coframe
            .conjugate_form(top)
            .scale_gaussian(&one_minus_ia)
            .sub(&coframe.form(top).scale_gaussian(&i_alpha));
        let rhs_top = zero_oh
            .wedge(&bracket)?
            .scale(&Laurent::var(r - 1))
            .scale_rational(&rat(-1, 2));
        equations.push(EquationCheck {
            name: format!("dφ_t^{top}"),
            equation: format!(
                "−({}/2)(φ_t^0 + φ_t^0̄) ∧ [(1 − iα)φ_t^{top}̄ − iα φ_t^{top}]",
                lam_name(r)
            ),
            matches: coframe.form(top).d()?.equals(&rhs_top),
        });

        let omega = coframe.top_form()?;
        let half_i_alpha = Gaussian::new(Rational::zero(), params.alpha() / rat(2, 1));
        let expected_delbar = coframe
            .conjugate_form(0)
            .wedge(&omega)?
            .scale(&Laurent::var(r - 1))
            .scale_gaussian(&half_i_alpha);
        let delbar_top = coframe.delbar_top_form()?;
        let top_form_identity = EquationCheck {
            name: "∂̄Ω_t".to_string(),
            equation: format!("(i{}α/2) φ_t^0̄ ∧ Ω_t", lam_name(r)),
            matches: delbar_top.equals(&expected_delbar),
        };

        let integrable = coframe.is_integrable()?;
        let all_verified = equations.iter().all(|c| c.matches) && top_form_identity.matches;
        let report = DeformedCoframeReport {
            params: params.clone(),
            equations,
            top_form_identity,
            integrable,
            kodaira_note: format!(
                "Kodaira dimension (recorded reference conclusion, not computed): \
                 −∞ when α(t) avoids (2π/(k·{0}))ℤ for every k ≥ 1 — the k-th \
                 plurigenus is then 0 — and 0 otherwise, with every plurigenus \
                 equal to 1; the membership test mixes the rational α(t) with the \
                 transcendental 2π/{0} and is not exactly decidable.",
                lam_name(r)
            ),
            all_verified,
        };
        Ok((coframe, report))
    }
}

/// One verified identity: a name, a display of the expected right-hand side,
/// and whether the computed left-hand side matched it exactly.
#[derive(Debug, Clone)]
pub struct EquationCheck {
    pub name: String,
    pub equation: String,
    pub matches: bool,
}

/// Verification report for [`RealCoframe::deformed_coframe`].
#[derive(Debug, Clone)]
pub struct DeformedCoframeReport {
    pub params: DeformationParams,
    /// The `2r + 1` structure equations, in coframe order.
    pub equations: Vec<EquationCheck>,
    /// `∂̄Ω_t = (iλ_r α(t)/2) φ_t^{0̄} ∧ Ω_t`.
    pub top_form_identity: EquationCheck,
    /// Whether the deformed structure is integrable (it never is: each
    /// `dφ_t^j` has the `(0,2)`-component `−(λ_i/2) φ_t^{0̄ j̄}`).
    pub integrable: bool,
    /// The analytic conclusion attached to the family, recorded verbatim.
    pub kodaira_note: String,
    pub all_verified: bool,
}

/// The `(2,0)`, `(1,1)` and `(0,2)` components of an invariant 2-form with
/// respect to an almost complex coframe.  Their sum is the original form.
#[derive(Debug, Clone)]
pub struct TwoFormSplit {
    pub comp20: Form,
    pub comp11: Form,
    pub comp02: Form,
}

/// A constant-coefficient `(1,0)`-coframe over a generator set, together with
/// the exact basis-change data needed to split invariant 2-forms by bidegree.
///
/// The `N` forms and their conjugates must span the complexified cotangent
/// space (`2N` slots), which is verified by exact rank at construction.  The
/// wedge pairs `θ^u ∧ θ^v` (`u < v`, conjugates included) then form a basis
/// of invariant 2-forms; the inverse of that basis-change matrix is computed
/// once and reused by every split.  Coefficients may involve the formal
/// weight symbols: right-hand sides are decomposed per Laurent exponent and
/// solved against the constant matrix.
#[derive(Debug)]
pub struct AlmostComplexCoframe {
    gens: Arc<GeneratorSet>,
    forms: Vec<Form>,
    conjugates: Vec<Form>,
    /// Wedge products of extended coframe elements, aligned with `pair_list`.
    pair_products: Vec<Form>,
    /// Index pairs `(u, v)`, `u < v`, into the extended list `θ^0 … θ^{N−1},
    /// θ̄^0 … θ̄^{N−1}`.
    pair_list: Vec<(usize, usize)>,
    /// Inverse of the monomial-coordinates-of-pair-products matrix.
    pair_inverse: GaussianMatrix,
    /// Degree-2 monomial basis of the generator set and its index map.
    two_monomials: Vec<Monomial>,
    mono_index: BTreeMap<Monomial, usize>,
}

impl AlmostComplexCoframe {
    /// Validate and freeze a coframe; see the type-level invariants.
    pub fn new(forms: Vec<Form>) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::invalid("AlmostComplexCoframe::new", "the coframe is empty"))?;
        let gens = first.generator_set().clone();
        let slots = gens.slots();
        if slots.len() != 2 * forms.len() {
            return Err(Error::invalid(
                "AlmostComplexCoframe::new",
                format!(
                    "{} forms cannot be half of a {}-slot cotangent space",
                    forms.len(),
                    slots.len()
                ),
            ));
        }
        for (a, f) in forms.iter().enumerate() {
            if !gens.same_set(f.generator_set()) {
                return Err(Error::GeneratorSetMismatch {
                    left: gens.describe(),
                    right: f.generator_set().describe(),
                });
            }
            one_form_coordinates(&slots, f).map_err(|e| {
                Error::invalid(
                    "AlmostComplexCoframe::new",
                    format!("coframe entry {a} is not a constant invariant 1-form: {e}"),
                )
            })?;
        }
        let conjugates: Vec<Form> = forms.iter().map(Form::conjugate).collect();

        let mut rows = Vec::with_capacity(2 * forms.len());
        for f in forms.iter().chain(conjugates.iter()) {
            rows.push(one_form_coordinates(&slots, f)?);
        }
        let basis = GaussianMatrix::from_rows(rows)?;
        if basis.rank() != slots.len() {
            return Err(Error::invalid(
                "AlmostComplexCoframe::new",
                "the coframe and its conjugates do not span the cotangent space",
            ));
        }

        let two_monomials = gens.monomials_of_degree(2);
        let mono_index: BTreeMap<Monomial, usize> = two_monomials
            .iter()
            .enumerate()
            .map(|(idx, m)| (*m, idx))
            .collect();
        let extended: Vec<&Form> = forms.iter().chain(conjugates.iter()).collect();
        let mut pair_list = Vec::new();
        let mut pair_products = Vec::new();
        let mut columns = Vec::new();
        for u in 0..extended.len() {
            for v in u + 1..extended.len() {
                let product = extended[u].wedge(extended[v])?;
                columns.push(two_form_constant_coordinates(
                    &mono_index,
                    &product,
                    two_monomials.len(),
                )?);
                pair_list.push((u, v));
                pair_products.push(product);
            }
        }
        let pair_matrix = GaussianMatrix::from_columns(&columns)?;
        let pair_inverse = pair_matrix.inverse().map_err(|_| {
            Error::internal(
                "AlmostComplexCoframe::new",
                "wedge pairs of a full-rank coframe must form a 2-form basis",
            )
        })?;

        Ok(AlmostComplexCoframe {
            gens,
            forms,
            conjugates,
            pair_products,
            pair_list,
            pair_inverse,
            two_monomials,
            mono_index,
        })
    }

    /// Complex dimension `N`.
    pub fn dimension(&self) -> usize {
        self.forms.len()
    }

    pub fn generator_set(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    /// The `(1,0)`-form `θ^a`.
    pub fn form(&self, a: usize) -> &Form {
        &self.forms[a]
    }

    /// The `(0,1)`-form `θ̄^a`.
    pub fn conjugate_form(&self, a: usize) -> &Form {
        &self.conjugates[a]
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    /// Split an invariant 2-form into its bidegree components with respect to
    /// this coframe.
    pub fn split_two_form(&self, f: &Form) -> Result<TwoFormSplit> {
        let n = self.dimension();
        let zero = || Form::zero(&self.gens);
        let mut split = TwoFormSplit {
            comp20: zero(),
            comp11: zero(),
            comp02: zero(),
        };
        if f.is_zero() {
            return Ok(split);
        }
        if f.degree()? != 2 {
            return Err(Error::invalid(
                "split_two_form",
                "only 2-forms can be split against the wedge-pair basis",
            ));
        }
        if !self.gens.same_set(f.generator_set()) {
            return Err(Error::GeneratorSetMismatch {
                left: self.gens.describe(),
                right: f.generator_set().describe(),
            });
        }
        // Decompose the coordinate vector by Laurent exponent key, solve each
        // constant system, and reassemble.
        let mut by_exponent: BTreeMap<Vec<i32>, Vec<Gaussian>> = BTreeMap::new();
        for (ch, m, c) in f.terms() {
            if !ch.is_identity() {
                return Err(Error::Unsupported {
                    operation: "split_two_form".to_string(),
                    detail: "twisted forms have no invariant bidegree split".to_string(),
                });
            }
            let idx = *self
                .mono_index
                .get(&m.clone())
                .ok_or_else(|| Error::internal("split_two_form", "unknown degree-2 monomial"))?;
            for (key, g) in c.terms() {
                let slot = by_exponent
                    .entry(key.to_vec())
                    .or_insert_with(|| vec![Gaussian::zero(); self.two_monomials.len()]);
                slot[idx] += g;
            }
        }
        for (key, coords) in by_exponent {
            let solution = self.pair_inverse.mul_vec(&coords)?;
            for (idx, value) in solution.iter().enumerate() {
                if value.is_zero() {
                    continue;
                }
                let contribution =
                    self.pair_products[idx].scale(&Laurent::monomial_term(&key, value.clone()));
                let (u, v) = self.pair_list[idx];
                let target = if v < n {
                    &mut split.comp20
                } else if u < n {
                    &mut split.comp11
                } else {
                    &mut split.comp02
                };
                *target = target.add(&contribution);
            }
        }
        debug_assert!(split.comp20.add(&split.comp11).add(&split.comp02).equals(f));
        Ok(split)
    }

    /// `∂̄` of a single coframe element: the `(1,1)`-component of `dθ^a` for
    /// unbarred entries, the `(0,2)`-component of `dθ̄^a` for barred ones.
    pub fn delbar_generator(&self, a: usize, barred: bool) -> Result<Form> {
        if a >= self.dimension() {
            return Err(Error::invalid(
                "delbar_generator",
                format!("coframe index {a} out of range"),
            ));
        }
        let f = if barred {
            &self.conjugates[a]
        } else {
            &self.forms[a]
        };
        let split = self.split_two_form(&f.d()?)?;
        Ok(if barred { split.comp02 } else { split.comp11 })
    }

    /// The `(0,2)`-components of `dθ^a` for every `a` — the integrability
    /// obstruction of the almost complex structure, generator by generator.
    pub fn integrability_obstructions(&self) -> Result<Vec<Form>> {
        (0..self.dimension())
            .map(|a| Ok(self.split_two_form(&self.forms[a].d()?)?.comp02))
            .collect()
    }

    /// True when every obstruction vanishes, i.e. `d` of every `(1,0)`-form
    /// has no `(0,2)`-part.
    pub fn is_integrable(&self) -> Result<bool> {
        Ok(self.integrability_obstructions()?.iter().all(Form::is_zero))
    }

    /// `∂̄` of a wedge word of coframe elements, by the graded Leibniz rule:
    /// each factor has pure bidegree, so the `(p, q+1)`-component of the
    /// product rule only collects `∂̄` of the factors.
    pub fn delbar_wedge_word(&self, word: &[(usize, bool)]) -> Result<Form> {
        let factor = |&(a, barred): &(usize, bool)| -> Result<&Form> {
            if a >= self.dimension() {
                return Err(Error::invalid(
                    "delbar_wedge_word",
                    format!("coframe index {a} out of range"),
                ));
            }
            Ok(if barred {
                &self.conjugates[a]
            } else {
                &self.forms[a]
            })
        };
        let mut result = Form::zero(&self.gens);
        for l in 0..word.len() {
            let delbar_l = self.delbar_generator(word[l].0, word[l].1)?;
            if delbar_l.is_zero() {
                continue;
            }
            let mut term = Form::one(&self.gens);
            for (pos, entry) in word.iter().enumerate() {
                term = if pos == l {
                    term.wedge(&delbar_l)?
                } else {
                    term.wedge(factor(entry)?)?
                };
                if term.is_zero() {
                    break;
                }
            }
            if l % 2 == 1 {
                term = term.neg();
            }
            result = result.add(&term);
        }
        Ok(result)
    }

    /// The top `(N, 0)`-form `Ω = θ^0 ∧ … ∧ θ^{N−1}`.
    pub fn top_form(&self) -> Result<Form> {
        let mut omega = Form::one(&self.gens);
        for f in &self.forms {
            omega = omega.wedge(f)?;
        }
        Ok(omega)
    }

    /// `∂̄Ω` by the graded Leibniz rule.
    pub fn delbar_top_form(&self) -> Result<Form> {
        let word: Vec<(usize, bool)> = (0..self.dimension()).map(|a| (a, false)).collect();
        self.delbar_wedge_word(&word)
    }
}

/// True iff `d` of every `(1,0)`-coframe element has vanishing
/// `(0,2)`-component (the coframe formulation of the vanishing of the
/// integrability obstruction).
pub fn integrability_check(coframe: &AlmostComplexCoframe) -> Result<bool> {
    coframe.is_integrable()
}

/// Build the deformed coframe of the five-dimensional model at parameter `t`
/// and verify its structure equations; see [`RealCoframe::deformed_coframe`].
pub fn n5_deformed_coframe(
    t: (Rational, Rational),
) -> Result<(AlmostComplexCoframe, DeformedCoframeReport)> {
    let params = DeformationParams::new(t.0, t.1)?;
    RealCoframe::n5()?.deformed_coframe(&params)
}

/// `∂̄Ω_t` for the five-dimensional deformed family, after asserting the
/// identity `∂̄Ω_t = (iλ₂α(t)/2) φ_t^{0̄} ∧ Ω_t` exactly.
pub fn delbar_top_form_n5(t: (Rational, Rational)) -> Result<Form> {
    let (coframe, report) = n5_deformed_coframe(t)?;
    if !report.top_form_identity.matches {
        return Err(Error::CheckFailed {
            operation: "delbar_top_form_n5".to_string(),
            detail: "computed ∂̄Ω_t differs from (iλ₂α/2) φ_t^0̄ ∧ Ω_t".to_string(),
        });
    }
    coframe.delbar_top_form()
}

/// Verification report for [`jstructure_coframe`].
#[derive(Debug, Clone)]
pub struct JStructureReport {
    /// The product-model shape `(n, m)`.
    pub shape: (usize, usize),
    /// The structure equations `dα^i = 0`, `dβ^{2j+1} = …`, `dβ^{2j+2} = …`.
    pub equations: Vec<EquationCheck>,
    /// The per-generator `∂̄` formulas extracted by the bidegree split.
    pub delbar_equations: Vec<EquationCheck>,
    /// `d` commutes with conjugation on every coframe element.
    pub conjugates_consistent: bool,
    /// `d(dθ) = 0` for every coframe element.
    pub d_squared_vanishes: bool,
    /// Whether the structure is integrable (it never is: `dβ^{2j+1}` has the
    /// `(0,2)`-component `−(λ/2)(Σ ᾱ^i) ∧ β̄^{2j+2}`).
    pub integrable: bool,
    /// `∂̄(α^{1…2n} ∧ β^{1…2m}) = 0` by exact cancellation.
    pub top_form_vanishes: bool,
    /// The analytic conclusion attached to the structure, recorded verbatim.
    pub kodaira_note: String,
    pub all_verified: bool,
}

/// The mixed almost complex coframe on the product model `(n, m)`:
///
/// ```text
/// α^i = φ^i   (i = 1..2n),
/// β^{2j+1} = ψ^{2j+1} + iψ^{2j+2},   β^{2j+2} = ψ̄^{2j+1} + iψ̄^{2j+2},
/// ```
///
/// with normalization constant 1 (the reference expansion's `√2/2` factor is
/// dropped: the structure equations are invariant under rescaling all `β^j`
/// by a common nonzero constant, and `ℚ(i)` coefficients then suffice).
/// Returns the coframe and a report verifying the structure equations, the
/// `∂̄` formulas, and the exact vanishing of `∂̄` on the top form.
pub fn jstructure_coframe(n: usize, m: usize) -> Result<(AlmostComplexCoframe, JStructureReport)> {
    let coframe = jstructure_forms(n, m)?;
    let gens = coframe.generator_set().clone();
    let lambda_half = Laurent::var(0);

    // η = α^1 + ᾱ^2 + α^3 + ᾱ^4 + ⋯ (odd base indices unbarred, even barred).
    let mut eta = Form::zero(&gens);
    let mut sum_alpha = Form::zero(&gens);
    let mut sum_abar_odd = Form::zero(&gens);
    let mut sum_abar_even = Form::zero(&gens);
    for i in 1..=2 * n {
        let unbarred = coframe.form(i - 1);
        let barred = coframe.conjugate_form(i - 1);
        eta = eta.add(if i % 2 == 1 { unbarred } else { barred });
        sum_alpha = sum_alpha.add(unbarred);
        if i % 2 == 1 {
            sum_abar_odd = sum_abar_odd.add(barred);
        } else {
            sum_abar_even = sum_abar_even.add(barred);
        }
    }
    let eta_bar = eta.conjugate();
    let eta_plus = eta.add(&eta_bar);
    let eta_diff = eta_bar.sub(&eta);

    let beta = |j: usize| coframe.form(2 * n + j - 1);
    let beta_bar = |j: usize| coframe.conjugate_form(2 * n + j - 1);

    let mut equations = Vec::new();
    let mut alpha_closed = true;
    for i in 1..=2 * n {
        alpha_closed &= coframe.form(i - 1).d()?.is_zero();
    }
    equations.push(EquationCheck {
        name: "dα^i".to_string(),
        equation: "0 (i = 1..2n)".to_string(),
        matches: alpha_closed,
    });
    for j in 0..m {
        let odd = 2 * j + 1;
        let even = 2 * j + 2;
        let rhs_odd = eta_diff
            .wedge(beta(odd))?
            .sub(&eta_plus.wedge(beta_bar(even))?)
            .scale(&lambda_half)
            .scale_rational(&rat(1, 2));
        equations.push(EquationCheck {
            name: format!("dβ^{odd}"),
            equation: format!("(λ/2)[(η̄ − η) ∧ β^{odd} − (η + η̄) ∧ β̄^{even}]"),
            matches: beta(odd).d()?.equals(&rhs_odd),
        });
        let rhs_even = eta
            .sub(&eta_bar)
            .wedge(beta(even))?
            .sub(&eta_plus.wedge(beta_bar(odd))?)
            .scale(&lambda_half)
            .scale_rational(&rat(1, 2));
        equations.push(EquationCheck {
            name: format!("dβ^{even}"),
            equation: format!("(λ/2)[−(η + η̄) ∧ β̄^{odd} + (η − η̄) ∧ β^{even}]"),
            matches: beta(even).d()?.equals(&rhs_even),
        });
    }

    let mut delbar_equations = Vec::new();
    let mut alpha_delbar_closed = true;
    for i in 1..=2 * n {
        alpha_delbar_closed &= coframe.delbar_generator(i - 1, false)?.is_zero();
    }
    delbar_equations.push(EquationCheck {
        name: "∂̄α^i".to_string(),
        equation: "0 (i = 1..2n)".to_string(),
        matches: alpha_delbar_closed,
    });
    let abar_diff = sum_abar_odd.sub(&sum_abar_even);
    for j in 0..m {
        let odd = 2 * j + 1;
        let even = 2 * j + 2;
        let rhs_odd = abar_diff
            .wedge(beta(odd))?
            .sub(&sum_alpha.wedge(beta_bar(even))?)
            .scale(&lambda_half)
            .scale_rational(&rat(1, 2));
        delbar_equations.push(EquationCheck {
            name: format!("∂̄β^{odd}"),
            equation: format!("(λ/2)[(Σ_odd ᾱ − Σ_even ᾱ) ∧ β^{odd} − (Σ α) ∧ β̄^{even}]"),
            matches: coframe
                .delbar_generator(2 * n + odd - 1, false)?
                .equals(&rhs_odd),
        });
        let rhs_even = abar_diff
            .neg()
            .wedge(beta(even))?
            .sub(&sum_alpha.wedge(beta_bar(odd))?)
            .scale(&lambda_half)
            .scale_rational(&rat(1, 2));
        delbar_equations.push(EquationCheck {
            name: format!("∂̄β^{even}"),
            equation: format!("(λ/2)[−(Σ α) ∧ β̄^{odd} + (Σ_even ᾱ − Σ_odd ᾱ) ∧ β^{even}]"),
            matches: coframe
                .delbar_generator(2 * n + even - 1, false)?
                .equals(&rhs_even),
        });
    }

    let mut conjugates_consistent = true;
    let mut d_squared_vanishes = true;
    for a in 0..coframe.dimension() {
        let d_form = coframe.form(a).d()?;
        conjugates_consistent &= coframe.conjugate_form(a).d()?.equals(&d_form.conjugate());
        d_squared_vanishes &= d_form.d()?.is_zero();
    }

    let integrable = coframe.is_integrable()?;
    let top_form_vanishes = coframe.delbar_top_form()?.is_zero();
    let all_verified = equations.iter().all(|c| c.matches)
        && delbar_equations.iter().all(|c| c.matches)
        && conjugates_consistent
        && d_squared_vanishes
        && !integrable
        && top_form_vanishes;
    let report = JStructureReport {
        shape: (n, m),
        equations,
        delbar_equations,
        conjugates_consistent,
        d_squared_vanishes,
        integrable,
        top_form_vanishes,
        kodaira_note: "Kodaira dimension (recorded reference conclusion, not computed): \
                       the top form is ∂̄-closed — verified exactly here — and the \
                       function-theoretic step (holomorphic functions on the compact \
                       quotient are constant) then gives every plurigenus equal to 1 \
                       and Kodaira dimension 0."
            .to_string(),
        all_verified,
    };
    Ok((coframe, report))
}

fn jstructure_forms(n: usize, m: usize) -> Result<AlmostComplexCoframe> {
    let model = model::product_model(n, m)?;
    let gens = model.generators().clone();
    let i = Gaussian::i();
    let mut forms = Vec::with_capacity(2 * n + 2 * m);
    for k in 0..2 * n {
        forms.push(Form::generator(&gens, k, false)?);
    }
    for j in 0..m {
        let odd = 2 * n + 2 * j;
        let even = odd + 1;
        for barred in [false, true] {
            forms.push(
                Form::generator(&gens, odd, barred)?
                    .add(&Form::generator(&gens, even, barred)?.scale_gaussian(&i)),
            );
        }
    }
    AlmostComplexCoframe::new(forms)
}

/// `∂̄(α^{1…2n} ∧ β^{1…2m})` for the mixed product-model structure, after
/// asserting that it cancels to zero exactly.
pub fn delbar_top_form_j(n: usize, m: usize) -> Result<Form> {
    let coframe = jstructure_forms(n, m)?;
    let result = coframe.delbar_top_form()?;
    if !result.is_zero() {
        return Err(Error::CheckFailed {
            operation: "delbar_top_form_j".to_string(),
            detail: "∂̄ of the top form did not cancel to zero".to_string(),
        });
    }
    Ok(result)
}

/// `∂̄` of the top word with one `β`-factor removed (1-based index
/// `omitted_beta ∈ 1..=2m`).  The exact cancellation needs the full product,
/// so this is nonzero — it is the control computation for
/// [`delbar_top_form_j`].
pub fn delbar_top_form_j_omitting(n: usize, m: usize, omitted_beta: usize) -> Result<Form> {
    if omitted_beta == 0 || omitted_beta > 2 * m {
        return Err(Error::invalid(
            "delbar_top_form_j_omitting",
            format!("β-index {omitted_beta} out of range 1..={}", 2 * m),
        ));
    }
    let coframe = jstructure_forms(n, m)?;
    let word: Vec<(usize, bool)> = (0..2 * n)
        .chain(
            (0..2 * m)
                .filter(|j| j + 1 != omitted_beta)
                .map(|j| 2 * n + j),
        )
        .map(|a| (a, false))
        .collect();
    coframe.delbar_wedge_word(&word)
}

/// Coordinates of a constant invariant 1-form over the listed slots.
fn one_form_coordinates(slots: &[usize], f: &Form) -> Result<Vec<Gaussian>> {
    let mut coords = vec![Gaussian::zero(); slots.len()];
    for (ch, m, c) in f.terms() {
        if !ch.is_identity() {
            return Err(Error::Unsupported {
                operation: "one_form_coordinates".to_string(),
                detail: "twisted forms are not constant-coefficient".to_string(),
            });
        }
        let term_slots = m.slots();
        if term_slots.len() != 1 {
            return Err(Error::invalid(
                "one_form_coordinates",
                format!(
                    "expected a 1-form, found a degree-{} term",
                    term_slots.len()
                ),
            ));
        }
        let idx = slots
            .iter()
            .position(|&s| s == term_slots[0])
            .ok_or_else(|| Error::internal("one_form_coordinates", "unknown slot"))?;
        let value = c.as_constant().ok_or_else(|| Error::Unsupported {
            operation: "one_form_coordinates".to_string(),
            detail: "coefficients must not involve the weight symbols".to_string(),
        })?;
        coords[idx] += &value;
    }
    Ok(coords)
}

/// Coordinates of a constant invariant 2-form over the degree-2 monomials.
fn two_form_constant_coordinates(
    mono_index: &BTreeMap<Monomial, usize>,
    f: &Form,
    dim: usize,
) -> Result<Vec<Gaussian>> {
    let mut coords = vec![Gaussian::zero(); dim];
    for (ch, m, c) in f.terms() {
        if !ch.is_identity() {
            return Err(Error::Unsupported {
                operation: "two_form_constant_coordinates".to_string(),
                detail: "twisted forms are not constant-coefficient".to_string(),
            });
        }
        let idx = *mono_index
            .get(m)
            .ok_or_else(|| Error::internal("two_form_constant_coordinates", "unknown monomial"))?;
        let value = c.as_constant().ok_or_else(|| Error::Unsupported {
            operation: "two_form_constant_coordinates".to_string(),
            detail: "coefficients must not involve the weight symbols".to_string(),
        })?;
        coords[idx] += &value;
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    fn params(t1: Rational, t2: Rational) -> DeformationParams {
        DeformationParams::new(t1, t2).unwrap()
    }

    #[test]
    fn deformation_parameters_match_reference_values() {
        let p = params(rat_int(1), rat_int(1));
        assert_eq!(*p.alpha(), rat_int(2));
        assert_eq!(*p.beta(), rat_int(1));
        assert_eq!(*p.gamma(), rat_int(-5));

        let origin = DeformationParams::undeformed();
        assert_eq!(origin.t(), (&rat_int(0), &rat_int(0)));
        assert_eq!(*origin.alpha(), rat_int(0));
        assert_eq!(*origin.beta(), rat_int(-1));
        assert_eq!(*origin.gamma(), rat_int(1));

        let p = params(rat(1, 2), rat(1, 2));
        assert_eq!(*p.alpha(), rat_int(-2));
        assert_eq!(*p.beta(), rat_int(-1));
        assert_eq!(*p.gamma(), rat_int(5));

        assert!(DeformationParams::new(rat_int(1), rat_int(0)).is_err());
        assert!(DeformationParams::new(rat(3, 5), rat(4, 5)).is_err());
    }

    #[test]
    fn j_matrix_squares_to_minus_identity_and_fixes_the_coframe() {
        for (t1, t2) in [
            (rat_int(1), rat_int(1)),
            (rat(1, 2), rat(1, 2)),
            (rat_int(0), rat_int(0)),
            (rat_int(2), rat(-1, 3)),
        ] {
            let p = params(t1, t2);
            let block = p.j_block();
            // block² = (α² + βγ)·identity must be −identity.
            let trace_term = &block[0][0] * &block[0][0] + &block[0][1] * &block[1][0];
            assert_eq!(trace_term, rat_int(-1));

            let j = p.j_matrix(5).unwrap();
            let square = j.mul(&j).unwrap();
            let minus_identity = GaussianMatrix::from_rows(
                (0..10)
                    .map(|r| {
                        (0..10)
                            .map(|c| {
                                if r == c {
                                    Gaussian::from_int(-1)
                                } else {
                                    Gaussian::zero()
                                }
                            })
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            assert_eq!(square, minus_identity);

            // The coframe entries are +i eigenvectors of the transposed
            // action on coefficient vectors.
            let real = RealCoframe::n5().unwrap();
            let (coframe, _) = real.deformed_coframe(&p).unwrap();
            let slots = real.generator_set().slots();
            let jt = j.transpose();
            for a in 0..coframe.dimension() {
                let coords = one_form_coordinates(&slots, coframe.form(a)).unwrap();
                let image = jt.mul_vec(&coords).unwrap();
                let i = Gaussian::i();
                for (got, original) in image.iter().zip(coords.iter()) {
                    assert_eq!(*got, &i * original);
                }
            }
        }
    }

    #[test]
    fn real_coframe_satisfies_the_diagonal_structure_equations() {
        let real = RealCoframe::n5().unwrap();
        assert!(real.e(0).unwrap().d().unwrap().is_zero());
        assert!(real.f(0).unwrap().d().unwrap().is_zero());
        for (j, sym) in [(1usize, 0usize), (2, 0), (3, 1), (4, 1)] {
            let e0 = real.e(0).unwrap();
            let lam = Laurent::var(sym);
            let de = real.e(j).unwrap().d().unwrap();
            let expected = e0.wedge(&real.e(j).unwrap()).unwrap().scale(&lam).neg();
            assert!(de.equals(&expected), "dE^{j} mismatch");
            let df = real.f(j).unwrap().d().unwrap();
            let expected = e0.wedge(&real.f(j).unwrap()).unwrap().scale(&lam);
            assert!(df.equals(&expected), "dF^{j} mismatch");
        }
    }

    #[test]
    fn paired_two_form_is_a_symplectic_structure_compatible_with_the_pairing() {
        let real = RealCoframe::n5().unwrap();
        let omega = real.omega_tilde().unwrap();
        assert!(omega.d().unwrap().is_zero());
        assert!(!omega.pow(5).unwrap().is_zero());

        let (coframe, _) = real
            .deformed_coframe(&DeformationParams::undeformed())
            .unwrap();
        let verdict = crate::symplectic::check_compatibility(&omega, coframe.forms()).unwrap();
        assert!(verdict.tamed);
        assert!(verdict.compatible);
    }

    #[test]
    fn holomorphic_reassembly_is_integrable_with_the_invariant_equations() {
        let real = RealCoframe::n5().unwrap();
        let holo = real.holomorphic_coframe().unwrap();
        assert!(integrability_check(&holo).unwrap());
        assert!(holo.form(0).d().unwrap().is_zero());
        // dφ^{2i−1} = −(λ_i/2)(φ^0 + φ^0̄) ∧ φ^{2i−1} and the opposite sign
        // for φ^{2i}: exactly the diagonal model equations with fiber weights
        // (λ₁, −λ₁, λ₂, −λ₂).
        let zero_oh = holo.form(0).add(holo.conjugate_form(0));
        for (a, sym, sign) in [(1usize, 0usize, -1i64), (2, 0, 1), (3, 1, -1), (4, 1, 1)] {
            let rhs = zero_oh
                .wedge(holo.form(a))
                .unwrap()
                .scale(&Laurent::var(sym))
                .scale_rational(&rat(sign, 2));
            assert!(holo.form(a).d().unwrap().equals(&rhs), "dφ^{a} mismatch");
        }
    }

    #[test]
    fn deformed_coframe_reproduces_the_paired_coframe_at_the_origin() {
        let real = RealCoframe::n5().unwrap();
        let (coframe, report) = real
            .deformed_coframe(&DeformationParams::undeformed())
            .unwrap();
        assert!(report.all_verified);
        let i = Gaussian::i();
        for j in 0..5 {
            let expected = real
                .e(j)
                .unwrap()
                .add(&real.f(j).unwrap().scale_gaussian(&i));
            assert!(coframe.form(j).equals(&expected));
        }
        // α(0,0) = 0, so the top-form identity degenerates to ∂̄Ω = 0.
        assert!(coframe.delbar_top_form().unwrap().is_zero());
    }

    #[test]
    fn deformed_structure_equations_hold_at_reference_parameters() {
        for (t1, t2) in [(rat_int(1), rat_int(1)), (rat(1, 2), rat(1, 2))] {
            let (_, report) = n5_deformed_coframe((t1.clone(), t2.clone())).unwrap();
            assert_eq!(report.equations.len(), 5);
            for check in &report.equations {
                assert!(check.matches, "{} failed at t = ({t1}, {t2})", check.name);
            }
            assert!(report.top_form_identity.matches);
            assert!(!report.integrable);
            assert!(report.all_verified);
        }
    }

    #[test]
    fn vanishing_alpha_removes_the_unbarred_term_from_the_last_equation() {
        // t₂ = 0 gives α = 0: the deformed equation loses its φ_t^4 term.
        let p = params(rat(1, 2), rat_int(0));
        assert_eq!(*p.alpha(), rat_int(0));
        let real = RealCoframe::n5().unwrap();
        let (coframe, report) = real.deformed_coframe(&p).unwrap();
        assert!(report.all_verified);
        let zero_oh = coframe.form(0).add(coframe.conjugate_form(0));
        let reduced = zero_oh
            .wedge(coframe.conjugate_form(4))
            .unwrap()
            .scale(&Laurent::var(1))
            .scale_rational(&rat(-1, 2));
        assert!(coframe.form(4).d().unwrap().equals(&reduced));
        assert!(coframe.delbar_top_form().unwrap().is_zero());
    }

    #[test]
    fn delbar_top_form_matches_the_reference_formula() {
        for (t1, t2) in [
            (rat_int(1), rat_int(1)),
            (rat(1, 2), rat(1, 2)),
            (rat_int(2), rat_int(3)),
            (rat_int(-1), rat(1, 4)),
        ] {
            let p = params(t1.clone(), t2.clone());
            let (coframe, _) = RealCoframe::n5().unwrap().deformed_coframe(&p).unwrap();
            let delbar = delbar_top_form_n5((t1.clone(), t2.clone())).unwrap();
            // (iλ₂α/2) φ_t^0̄ ∧ Ω_t, with α real: a purely imaginary
            // multiple of λ₂.
            let expected = coframe
                .conjugate_form(0)
                .wedge(&coframe.top_form().unwrap())
                .unwrap()
                .scale(&Laurent::var(1))
                .scale_gaussian(&Gaussian::new(rat_int(0), p.alpha() / rat_int(2)));
            assert!(delbar.equals(&expected), "t = ({t1}, {t2})");
            assert!(!delbar.is_zero());
        }
        // α = 2 at t = (1,1): the coefficient is exactly iλ₂.
        let (coframe, _) = n5_deformed_coframe((rat_int(1), rat_int(1))).unwrap();
        let delbar = coframe.delbar_top_form().unwrap();
        let expected = coframe
            .conjugate_form(0)
            .wedge(&coframe.top_form().unwrap())
            .unwrap()
            .scale(&Laurent::var(1))
            .scale_gaussian(&Gaussian::i());
        assert!(delbar.equals(&expected));
    }

    #[test]
    fn deformed_per_generator_delbar_components_are_the_expected_ones() {
        let p = params(rat_int(1), rat_int(1));
        let real = RealCoframe::n5().unwrap();
        let (coframe, _) = real.deformed_coframe(&p).unwrap();
        // ∂̄φ_t^1 = −(λ₁/2) φ_t^{0 1̄}; obstruction −(λ₁/2) φ_t^{0̄ 1̄}.
        let delbar = coframe.delbar_generator(1, false).unwrap();
        let expected = coframe
            .form(0)
            .wedge(coframe.conjugate_form(1))
            .unwrap()
            .scale(&Laurent::var(0))
            .scale_rational(&rat(-1, 2));
        assert!(delbar.equals(&expected));
        let obstruction = &coframe.integrability_obstructions().unwrap()[1];
        let expected = coframe
            .conjugate_form(0)
            .wedge(coframe.conjugate_form(1))
            .unwrap()
            .scale(&Laurent::var(0))
            .scale_rational(&rat(-1, 2));
        assert!(obstruction.equals(&expected));
        // ∂̄φ_t^4 = −(λ₂/2)[(1−iα) φ_t^{0 4̄} − iα φ_t^{0̄ 4}].
        let one_minus_ia = Gaussian::new(rat_int(1), -p.alpha().clone());
        let i_alpha = Gaussian::new(rat_int(0), p.alpha().clone());
        let delbar = coframe.delbar_generator(4, false).unwrap();
        let expected = coframe
            .form(0)
            .wedge(coframe.conjugate_form(4))
            .unwrap()
            .scale_gaussian(&one_minus_ia)
            .sub(
                &coframe
                    .conjugate_form(0)
                    .wedge(coframe.form(4))
                    .unwrap()
                    .scale_gaussian(&i_alpha),
            )
            .scale(&Laurent::var(1))
            .scale_rational(&rat(-1, 2));
        assert!(delbar.equals(&expected));
        // Sanity: the three components reassemble dφ_t^4.
        let split = coframe
            .split_two_form(&coframe.form(4).d().unwrap())
            .unwrap();
        let total = split.comp20.add(&split.comp11).add(&split.comp02);
        assert!(total.equals(&coframe.form(4).d().unwrap()));
    }

    #[test]
    fn deformed_family_generalizes_to_higher_odd_dimension() {
        let real = RealCoframe::new(3).unwrap();
        assert_eq!(real.pairs(), 7);
        let p = params(rat_int(1), rat_int(1));
        let (coframe, report) = real.deformed_coframe(&p).unwrap();
        assert_eq!(report.equations.len(), 7);
        assert!(report.all_verified);
        let delbar = coframe.delbar_top_form().unwrap();
        let expected = coframe
            .conjugate_form(0)
            .wedge(&coframe.top_form().unwrap())
            .unwrap()
            .scale(&Laurent::var(2))
            .scale_gaussian(&Gaussian::i());
        assert!(delbar.equals(&expected));
    }

    #[test]
    fn jstructure_reports_verify_for_small_shapes() {
        for (n, m) in [(1usize, 1usize), (1, 2)] {
            let (_, report) = jstructure_coframe(n, m).unwrap();
            assert_eq!(report.shape, (n, m));
            assert_eq!(report.equations.len(), 1 + 2 * m);
            assert_eq!(report.delbar_equations.len(), 1 + 2 * m);
            for check in report.equations.iter().chain(&report.delbar_equations) {
                assert!(check.matches, "{} failed for ({n}, {m})", check.name);
            }
            assert!(report.conjugates_consistent);
            assert!(report.d_squared_vanishes);
            assert!(!report.integrable);
            assert!(report.top_form_vanishes);
            assert!(report.all_verified);
        }
    }

    #[test]
    fn delbar_top_form_j_cancels_and_the_control_word_does_not() {
        assert!(delbar_top_form_j(1, 1).unwrap().is_zero());
        assert!(delbar_top_form_j(1, 2).unwrap().is_zero());
        assert!(delbar_top_form_j(2, 1).unwrap().is_zero());
        // Removing any single β-factor breaks the cancellation.
        for omitted in 1..=4 {
            let partial = delbar_top_form_j_omitting(1, 2, omitted).unwrap();
            assert!(!partial.is_zero(), "omitting β^{omitted}");
        }
        assert!(delbar_top_form_j_omitting(1, 2, 5).is_err());
    }

    #[test]
    fn integrability_check_distinguishes_the_reference_structures() {
        // Holomorphic product coframe: integrable.
        let model = model::product_model(1, 1).unwrap();
        let gens = model.generators().clone();
        let holo = AlmostComplexCoframe::new(
            (0..4)
                .map(|k| Form::generator(&gens, k, false).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(integrability_check(&holo).unwrap());

        // Mixed structure: not integrable.
        let (mixed, _) = jstructure_coframe(1, 1).unwrap();
        assert!(!integrability_check(&mixed).unwrap());

        // Complex torus: integrable, with ∂̄-closed top form.
        let torus_gens = GeneratorSet::new(
            vec![
                GeneratorDecl::closed("z1", false),
                GeneratorDecl::closed("z2", false),
            ],
            vec![],
            None,
        )
        .unwrap();
        let torus = AlmostComplexCoframe::new(vec![
            Form::generator(&torus_gens, 0, false).unwrap(),
            Form::generator(&torus_gens, 1, false).unwrap(),
        ])
        .unwrap();
        assert!(integrability_check(&torus).unwrap());
        assert!(torus.delbar_top_form().unwrap().is_zero());

        // Deformed family: never integrable, not even at the origin.
        for t in [(rat_int(1), rat_int(1)), (rat_int(0), rat_int(0))] {
            let (coframe, _) = n5_deformed_coframe(t).unwrap();
            assert!(!integrability_check(&coframe).unwrap());
        }
    }

    #[test]
    fn delbar_identities_are_stable_under_rescaling() {
        // Scale every β of the mixed structure by 3/2: the structure
        // equations keep their shape and ∂̄ of the top word still cancels.
        let model = model::product_model(1, 1).unwrap();
        let gens = model.generators().clone();
        let i = Gaussian::i();
        let scale = rat(3, 2);
        let mut forms = vec![
            Form::generator(&gens, 0, false).unwrap(),
            Form::generator(&gens, 1, false).unwrap(),
        ];
        forms.push(
            Form::generator(&gens, 2, false)
                .unwrap()
                .add(&Form::generator(&gens, 3, false).unwrap().scale_gaussian(&i))
                .scale_rational(&scale),
        );
        forms.push(
            Form::generator(&gens, 2, true)
                .unwrap()
                .add(&Form::generator(&gens, 3, true).unwrap().scale_gaussian(&i))
                .scale_rational(&scale),
        );
        let rescaled = AlmostComplexCoframe::new(forms).unwrap();
        assert!(rescaled.delbar_top_form().unwrap().is_zero());
        assert!(!rescaled.is_integrable().unwrap());

        // Scale the last deformed coframe entry by 2: ∂̄Ω scales linearly.
        let p = params(rat_int(1), rat_int(1));
        let real = RealCoframe::n5().unwrap();
        let (coframe, _) = real.deformed_coframe(&p).unwrap();
        let baseline = coframe.delbar_top_form().unwrap();
        let mut scaled_forms: Vec<Form> = coframe.forms().to_vec();
        scaled_forms[4] = scaled_forms[4].scale_int(2);
        let scaled = AlmostComplexCoframe::new(scaled_forms).unwrap();
        assert!(scaled
            .delbar_top_form()
            .unwrap()
            .equals(&baseline.scale_int(2)));
    }

    #[test]
    fn coframe_construction_rejects_degenerate_input() {
        let real = RealCoframe::n5().unwrap();
        let i = Gaussian::i();
        let phi = |j: usize| {
            real.e(j)
                .unwrap()
                .add(&real.f(j).unwrap().scale_gaussian(&i))
        };
        // Wrong count.
        assert!(AlmostComplexCoframe::new(vec![phi(0), phi(1)]).is_err());
        // Repeated entry: conjugates no longer span.
        assert!(AlmostComplexCoframe::new(vec![phi(0), phi(1), phi(2), phi(3), phi(3)]).is_err());
        // A real entry is its own conjugate: rank drops.
        assert!(AlmostComplexCoframe::new(vec![
            phi(0),
            phi(1),
            phi(2),
            phi(3),
            real.e(4).unwrap()
        ])
        .is_err());
        // Non-constant coefficient.
        assert!(AlmostComplexCoframe::new(vec![
            phi(0).scale(&Laurent::var(0)),
            phi(1),
            phi(2),
            phi(3),
            phi(4)
        ])
        .is_err());
        // Wrong degree.
        assert!(AlmostComplexCoframe::new(vec![
            phi(0).wedge(&phi(1)).unwrap(),
            phi(1),
            phi(2),
            phi(3),
            phi(4)
        ])
        .is_err());
        // Empty coframe.
        assert!(AlmostComplexCoframe::new(Vec::new()).is_err());
    }
}
