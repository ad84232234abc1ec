//! Invariant symplectic structures and the hard Lefschetz condition.
//!
//! This module decides when the models carry invariant symplectic forms
//! (the weight-pairing criterion), constructs the standard families of
//! closed nondegenerate 2-forms, computes Lefschetz maps on de Rham
//! cohomology exactly, and provides two auxiliary certificates: the
//! exactness witness that obstructs Kähler metrics on the products, and a
//! taming/compatibility check for almost complex structures given by
//! (1,0)-coframes.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::matrix::{is_positive_definite, GaussianMatrix};
use crate::algebra::{rat, Character, Form, Gaussian, Laurent, Monomial, Rational, Weight};
use crate::cohomology;
use crate::error::{Error, Result};
use crate::model::{Model, ModelKind, WeightedMonomial};

/// A pairing of the fiber indices `{1..n}` into two-element blocks with
/// opposite weights, plus (odd case) one leftover index of weight zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Index pairs `(i, j)`, 1-based, with `λ_i + λ_j = 0`.
    pub pairs: Vec<(usize, usize)>,
    /// The unpaired index when `n` is odd; its weight must vanish.
    pub leftover: Option<usize>,
}

/// Searches for the lexicographically least valid [`Partition`] of the given
/// weights by backtracking: at the smallest unassigned index the candidate
/// partners are tried in ascending order, and the leftover slot is used only
/// when no pairing extends to a full partition.
pub fn find_partition(lambdas: &[Weight]) -> Option<Partition> {
    fn extend(
        lambdas: &[Weight],
        used: &mut [bool],
        pairs: &mut Vec<(usize, usize)>,
        leftover: &mut Option<usize>,
    ) -> bool {
        let Some(i) = used.iter().position(|u| !u) else {
            return true;
        };
        used[i] = true;
        for j in i + 1..lambdas.len() {
            if used[j] || !lambdas[i].add(&lambdas[j]).is_zero() {
                continue;
            }
            used[j] = true;
            pairs.push((i + 1, j + 1));
            if extend(lambdas, used, pairs, leftover) {
                return true;
            }
            pairs.pop();
            used[j] = false;
        }
        if leftover.is_none() && lambdas[i].is_zero() {
            *leftover = Some(i + 1);
            if extend(lambdas, used, pairs, leftover) {
                return true;
            }
            *leftover = None;
        }
        used[i] = false;
        false
    }

    let mut used = vec![false; lambdas.len()];
    let mut pairs = Vec::new();
    let mut leftover = None;
    if extend(lambdas, &mut used, &mut pairs, &mut leftover) {
        Some(Partition { pairs, leftover })
    } else {
        None
    }
}

/// Coefficient data for [`build_symplectic`].
///
/// For the completely solvable family the form is
/// `ω = (i/2)C φ⁰∧φ̄⁰ + (1/2)Σ_{(i,j)} (A φ^i∧φ^j + B φ^i∧φ̄^j +
/// B̄ φ̄^i∧φ^j + Ā φ̄^i∧φ̄^j) [+ (i/2)D φ^ℓ∧φ̄^ℓ]` over an explicit
/// [`Partition`]; for the products it is `ω = (i/2)Σ_k C_k φ^k∧φ̄^k +
/// (1/2)Σ_j (B_j ψ^{2j−1}∧ψ̄^{2j} + B̄_j ψ̄^{2j−1}∧ψ^{2j})` with the
/// fiber pairing implicit.
#[derive(Debug, Clone)]
pub struct SymplecticSpec<'a> {
    pub model: &'a Model,
    /// `C` (one entry) or `C_1..C_{2n}`; must be real and nonzero.
    pub base_coeffs: Vec<Rational>,
    /// One `(A, B) ≠ (0, 0)` per partition pair (completely solvable family).
    pub pair_coeffs: Vec<(Gaussian, Gaussian)>,
    /// One `B_j ≠ 0` per fiber pair (product family).
    pub fiber_coeffs: Vec<Gaussian>,
    /// `D ≠ 0` for the leftover index (odd completely solvable case).
    pub leftover_coeff: Option<Rational>,
    /// Explicit pairing for the completely solvable family; `None` for
    /// products, whose pairing `ψ^{2j−1} ↔ ψ̄^{2j}` is fixed.
    pub partition: Option<Partition>,
}

impl<'a> SymplecticSpec<'a> {
    /// Default coefficients: `C = C_k = D = 1`, `A = 0`, `B = B_j = 1`, with
    /// the partition found by [`find_partition`].  Fails when no partition of
    /// the fiber weights exists.
    pub fn defaults(model: &'a Model) -> Result<Self> {
        match model.kind() {
            ModelKind::GeneralizedNakamura => {
                let partition =
                    find_partition(model.fiber_weights()).ok_or_else(|| Error::CheckFailed {
                        operation: "SymplecticSpec::defaults".to_string(),
                        detail: "the fiber weights admit no pairing into opposite-sum \
                                 blocks, so no invariant symplectic form exists"
                            .to_string(),
                    })?;
                let pair_coeffs = partition
                    .pairs
                    .iter()
                    .map(|_| (Gaussian::zero(), Gaussian::one()))
                    .collect();
                let leftover_coeff = partition.leftover.map(|_| rat(1, 1));
                Ok(SymplecticSpec {
                    model,
                    base_coeffs: vec![rat(1, 1)],
                    pair_coeffs,
                    fiber_coeffs: Vec::new(),
                    leftover_coeff,
                    partition: Some(partition),
                })
            }
            ModelKind::Product => {
                let (n, m) = model.product_shape();
                Ok(SymplecticSpec {
                    model,
                    base_coeffs: vec![rat(1, 1); 2 * n],
                    pair_coeffs: Vec::new(),
                    fiber_coeffs: vec![Gaussian::one(); m],
                    leftover_coeff: None,
                    partition: None,
                })
            }
        }
    }
}

/// Builds the closed real 2-form described by `spec`, after validating every
/// coefficient constraint (violations are rejected naming the offending
/// pair).  The result is re-verified to be d-closed and conjugation-fixed.
pub fn build_symplectic(spec: &SymplecticSpec) -> Result<Form> {
    let model = spec.model;
    let gens = model.generators();
    let half_i = Gaussian::new(rat(0, 1), rat(1, 2));
    let half = Gaussian::new(rat(1, 2), rat(0, 1));
    let mut w = Form::zero(gens);
    match model.kind() {
        ModelKind::GeneralizedNakamura => {
            let partition = spec.partition.as_ref().ok_or_else(|| {
                Error::invalid("build_symplectic", "missing partition for this family")
            })?;
            validate_partition(model, partition)?;
            if spec.base_coeffs.len() != 1 {
                return Err(Error::invalid(
                    "build_symplectic",
                    format!(
                        "expected one base coefficient C, got {}",
                        spec.base_coeffs.len()
                    ),
                ));
            }
            let c = &spec.base_coeffs[0];
            if c.is_zero() {
                return Err(Error::invalid("build_symplectic", "C must be nonzero"));
            }
            if !spec.fiber_coeffs.is_empty() {
                return Err(Error::invalid(
                    "build_symplectic",
                    "fiber coefficients are only meaningful for product models",
                ));
            }
            if spec.pair_coeffs.len() != partition.pairs.len() {
                return Err(Error::invalid(
                    "build_symplectic",
                    format!(
                        "{} pair coefficient(s) for {} pair(s)",
                        spec.pair_coeffs.len(),
                        partition.pairs.len()
                    ),
                ));
            }
            let base = Form::generator(gens, 0, false)?.wedge(&Form::generator(gens, 0, true)?)?;
            w = w.add(&base.scale_gaussian(&half_i.scale(c)));
            for (&(i, j), (a, b)) in partition.pairs.iter().zip(&spec.pair_coeffs) {
                if a.is_zero() && b.is_zero() {
                    return Err(Error::invalid(
                        "build_symplectic",
                        format!("pair ({i}, {j}): (A, B) = (0, 0) is not allowed"),
                    ));
                }
                let pi = Form::generator(gens, i, false)?;
                let pj = Form::generator(gens, j, false)?;
                let pjb = Form::generator(gens, j, true)?;
                let unbarred = pi.wedge(&pj)?.scale_gaussian(a);
                let mixed = pi.wedge(&pjb)?.scale_gaussian(b);
                let term = unbarred.add(&mixed);
                // The Ā and B̄ summands are the conjugates, which keeps the
                // whole pair contribution real.
                w = w.add(&term.add(&term.conjugate()).scale_gaussian(&half));
            }
            if let Some(l) = partition.leftover {
                let d = spec.leftover_coeff.as_ref().ok_or_else(|| {
                    Error::invalid(
                        "build_symplectic",
                        format!("leftover index {l} requires a coefficient D"),
                    )
                })?;
                if d.is_zero() {
                    return Err(Error::invalid(
                        "build_symplectic",
                        format!("leftover index {l}: D must be nonzero"),
                    ));
                }
                let pl =
                    Form::generator(gens, l, false)?.wedge(&Form::generator(gens, l, true)?)?;
                w = w.add(&pl.scale_gaussian(&half_i.scale(d)));
            } else if spec.leftover_coeff.is_some() {
                return Err(Error::invalid(
                    "build_symplectic",
                    "a leftover coefficient was given but the partition has no leftover",
                ));
            }
        }
        ModelKind::Product => {
            let (n, m) = model.product_shape();
            if spec.partition.is_some() || !spec.pair_coeffs.is_empty() {
                return Err(Error::invalid(
                    "build_symplectic",
                    "product models use the fixed pairing ψ^{2j−1} ↔ ψ̄^{2j}; \
                     no explicit partition is accepted",
                ));
            }
            if spec.base_coeffs.len() != 2 * n {
                return Err(Error::invalid(
                    "build_symplectic",
                    format!(
                        "expected {} base coefficients C_k, got {}",
                        2 * n,
                        spec.base_coeffs.len()
                    ),
                ));
            }
            if spec.fiber_coeffs.len() != m {
                return Err(Error::invalid(
                    "build_symplectic",
                    format!(
                        "expected {} fiber coefficients B_j, got {}",
                        m,
                        spec.fiber_coeffs.len()
                    ),
                ));
            }
            for (k, c) in spec.base_coeffs.iter().enumerate() {
                if c.is_zero() {
                    return Err(Error::invalid(
                        "build_symplectic",
                        format!("C_{} must be nonzero", k + 1),
                    ));
                }
                let pk =
                    Form::generator(gens, k, false)?.wedge(&Form::generator(gens, k, true)?)?;
                w = w.add(&pk.scale_gaussian(&half_i.scale(c)));
            }
            for (j, b) in spec.fiber_coeffs.iter().enumerate() {
                if b.is_zero() {
                    return Err(Error::invalid(
                        "build_symplectic",
                        format!(
                            "fiber pair ({}, {}): B must be nonzero",
                            2 * j + 1,
                            2 * j + 2
                        ),
                    ));
                }
                let odd = Form::generator(gens, 2 * n + 2 * j, false)?;
                let even_bar = Form::generator(gens, 2 * n + 2 * j + 1, true)?;
                let term = odd.wedge(&even_bar)?.scale_gaussian(b);
                w = w.add(&term.add(&term.conjugate()).scale_gaussian(&half));
            }
        }
    }
    verify_closed_real(model, &w, "build_symplectic")?;
    Ok(w)
}

/// [`build_symplectic`] with the default coefficients of
/// [`SymplecticSpec::defaults`].
pub fn default_symplectic(model: &Model) -> Result<Form> {
    build_symplectic(&SymplecticSpec::defaults(model)?)
}

/// The non-invariant symplectic form on a product model that pairs each
/// fiber block as `χ_j·ψ^{2j−1}∧ψ^{2j}` (a character-twisted monomial)
/// instead of the untwisted `ψ^{2j−1}∧ψ̄^{2j}`:
///
/// `Ω = (i/2)Σ_k φ^k∧φ̄^k + (1/2)Σ_j (χ_j·ψ^{2j−1}∧ψ^{2j} + conj)`.
///
/// Twisted monomials are closed in these models, so Ω is closed; it is real
/// by construction and nondegenerate because the blocks cover all slots.
pub fn character_twisted_symplectic(model: &Model) -> Result<Form> {
    if model.kind() != ModelKind::Product {
        return Err(Error::Unsupported {
            operation: "character_twisted_symplectic".to_string(),
            detail: "the character-twisted pairing needs the product fiber structure".to_string(),
        });
    }
    let gens = model.generators();
    let (n, m) = model.product_shape();
    let half_i = Gaussian::new(rat(0, 1), rat(1, 2));
    let half = Gaussian::new(rat(1, 2), rat(0, 1));
    let mut w = Form::zero(gens);
    for k in 0..2 * n {
        let pk = Form::generator(gens, k, false)?.wedge(&Form::generator(gens, k, true)?)?;
        w = w.add(&pk.scale_gaussian(&half_i));
    }
    for j in 0..m {
        let odd = Form::generator(gens, 2 * n + 2 * j, false)?;
        let even = Form::generator(gens, 2 * n + 2 * j + 1, false)?;
        let pair = odd.wedge(&even)?;
        let (_, mono, _) = pair
            .terms()
            .next()
            .ok_or_else(|| Error::internal("character_twisted_symplectic", "empty pair"))?;
        let chi = model.monomial_de_rham_char(*mono);
        let term = Form::from_term(gens, chi, *mono, Laurent::constant(half.clone()));
        w = w.add(&term.add(&term.conjugate()));
    }
    verify_closed_real(model, &w, "character_twisted_symplectic")?;
    Ok(w)
}

/// Internal honesty check: the constructors above must return d-closed,
/// conjugation-fixed 2-forms; anything else is a bug.
fn verify_closed_real(model: &Model, w: &Form, operation: &str) -> Result<()> {
    if w.degree()? != 2 {
        return Err(Error::internal(
            operation,
            "constructed form is not a 2-form",
        ));
    }
    if !model.d(w)?.is_zero() {
        return Err(Error::internal(operation, "constructed form is not closed"));
    }
    if !w.conjugate().equals(w) {
        return Err(Error::internal(operation, "constructed form is not real"));
    }
    Ok(())
}

fn validate_partition(model: &Model, partition: &Partition) -> Result<()> {
    let weights = model.fiber_weights();
    let n = weights.len();
    let mut seen = vec![false; n];
    let mut mark = |idx: usize| -> Result<()> {
        if idx == 0 || idx > n {
            return Err(Error::invalid(
                "build_symplectic",
                format!("partition index {idx} out of range 1..={n}"),
            ));
        }
        if seen[idx - 1] {
            return Err(Error::invalid(
                "build_symplectic",
                format!("partition index {idx} appears twice"),
            ));
        }
        seen[idx - 1] = true;
        Ok(())
    };
    for &(i, j) in &partition.pairs {
        mark(i)?;
        mark(j)?;
        if !weights[i - 1].add(&weights[j - 1]).is_zero() {
            return Err(Error::invalid(
                "build_symplectic",
                format!("pair ({i}, {j}): λ_{i} + λ_{j} ≠ 0"),
            ));
        }
    }
    if let Some(l) = partition.leftover {
        mark(l)?;
        if !weights[l - 1].is_zero() {
            return Err(Error::invalid(
                "build_symplectic",
                format!("leftover index {l}: λ_{l} ≠ 0"),
            ));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::invalid(
            "build_symplectic",
            "partition does not cover every fiber index",
        ));
    }
    Ok(())
}

/// True iff `w^N ≠ 0` for `N` the complex dimension, computed exactly.
pub fn top_power_nonzero(model: &Model, w: &Form) -> Result<bool> {
    Ok(!w.pow(model.complex_dim())?.is_zero())
}

/// Coordinates of `v` in the degree-`k` chain basis; every term of `v` must
/// be a constant multiple of a basis element.
fn form_coordinates(basis: &[WeightedMonomial], v: &Form) -> Result<Vec<Gaussian>> {
    let mut index: BTreeMap<(Character, Monomial), usize> = BTreeMap::new();
    for (p, wm) in basis.iter().enumerate() {
        index.insert((wm.character.clone(), wm.monomial), p);
    }
    let mut out = vec![Gaussian::zero(); basis.len()];
    for (character, mono, coeff) in v.terms() {
        let c = coeff.as_constant().ok_or_else(|| Error::Unsupported {
            operation: "lefschetz".to_string(),
            detail: "only constant-coefficient forms act on the cohomology bases".to_string(),
        })?;
        let p = index
            .get(&(character.clone(), *mono))
            .ok_or_else(|| Error::internal("lefschetz", "image term escapes the complex"))?;
        out[*p] = c;
    }
    Ok(out)
}

/// Matrix of `[α] ↦ [multiplier ∧ α]` from the `H^from` representative basis
/// to the `H^to` representative basis, reduced modulo exact forms by solving
/// against the stacked `[representatives | image of d]` columns.  The
/// representative coordinates are unique because the representatives are
/// independent modulo the image.
fn wedge_action(
    model: &Model,
    multiplier: &Form,
    from: usize,
    to: usize,
) -> Result<GaussianMatrix> {
    let domain = cohomology::de_rham(model, from)?;
    let codomain = cohomology::de_rham(model, to)?;
    let basis_to = cohomology::chain_basis(model, to)?;
    let basis_prev = if to == 0 {
        Vec::new()
    } else {
        cohomology::chain_basis(model, to - 1)?
    };
    let image = cohomology::normalized_differential(model, &basis_prev, &basis_to)?;
    let mut columns: Vec<Vec<Gaussian>> = Vec::new();
    for &j in &codomain.indices {
        let mut unit = vec![Gaussian::zero(); basis_to.len()];
        unit[j] = Gaussian::one();
        columns.push(unit);
    }
    for j in 0..basis_prev.len() {
        columns.push(image.column(j));
    }
    let solver = if columns.is_empty() {
        None
    } else {
        Some(GaussianMatrix::from_columns(&columns)?)
    };
    let mut out = GaussianMatrix::zeros(codomain.dimension, domain.dimension);
    for (c, alpha) in domain.representatives.iter().enumerate() {
        let v = multiplier.wedge(alpha)?;
        let coords = form_coordinates(&basis_to, &v)?;
        match &solver {
            None => {
                if coords.iter().any(|x| !x.is_zero()) {
                    return Err(Error::internal(
                        "lefschetz",
                        "nonzero image in a zero-dimensional target",
                    ));
                }
            }
            Some(solver) => {
                let x = solver
                    .solve(&coords)?
                    .ok_or_else(|| Error::internal("lefschetz", "closed image failed to reduce"))?;
                for (r, value) in x.iter().take(codomain.dimension).enumerate() {
                    out.set(r, c, value.clone());
                }
            }
        }
    }
    Ok(out)
}

/// One Lefschetz step `[α] ↦ [w ∧ α] : H^j → H^{j+2}`.
pub fn lefschetz_step(model: &Model, w: &Form, j: usize) -> Result<GaussianMatrix> {
    let wd = model.d(w)?;
    if !wd.is_zero() {
        return Err(Error::NotClosed {
            terms: wd.term_count(),
        });
    }
    wedge_action(model, w, j, j + 2)
}

/// The `k`-fold Lefschetz map `[α] ↦ [w^k ∧ α] : H^{N−k} → H^{N+k}` for
/// `N` the complex dimension, as an exact matrix between the de Rham
/// representative bases.
pub fn lefschetz_matrix(model: &Model, w: &Form, k: usize) -> Result<GaussianMatrix> {
    let n = model.complex_dim();
    if k > n {
        return Err(Error::invalid(
            "lefschetz_matrix",
            format!("k = {k} exceeds the complex dimension {n}"),
        ));
    }
    let wd = model.d(w)?;
    if !wd.is_zero() {
        return Err(Error::NotClosed {
            terms: wd.term_count(),
        });
    }
    wedge_action(model, &w.pow(k)?, n - k, n + k)
}

/// Verdict for one Lefschetz power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzVerdict {
    pub k: usize,
    /// `dim H^{N−k} == dim H^{N+k}` (always expected by Poincaré duality).
    pub square: bool,
    /// Exact determinant nonzero over `ℚ(i)`.
    pub bijective: bool,
}

/// Outcome of [`check_hlc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HlcVerdict {
    pub per_k: Vec<LefschetzVerdict>,
    /// True iff every `L^k`, `k = 1..N`, is bijective.
    pub holds: bool,
}

/// Checks the hard Lefschetz condition for a symplectic form: `w` is
/// re-verified to be closed (error otherwise) and nondegenerate (error
/// naming the vanishing power otherwise), then every `L^k` is tested for
/// squareness and exact invertibility.
pub fn check_hlc(model: &Model, w: &Form) -> Result<HlcVerdict> {
    let wd = model.d(w)?;
    if !wd.is_zero() {
        return Err(Error::NotClosed {
            terms: wd.term_count(),
        });
    }
    if !top_power_nonzero(model, w)? {
        return Err(Error::Degenerate {
            power: model.complex_dim(),
        });
    }
    let n = model.complex_dim();
    let mut per_k = Vec::new();
    for k in 1..=n {
        let m = lefschetz_matrix(model, w, k)?;
        let square = m.rows() == m.cols();
        let bijective = square && !m.det()?.is_zero();
        per_k.push(LefschetzVerdict {
            k,
            square,
            bijective,
        });
    }
    let holds = per_k.iter().all(|v| v.bijective);
    Ok(HlcVerdict { per_k, holds })
}

/// Outcome of [`invariant_symplectic_exists`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistenceVerdict {
    pub exists: bool,
    pub witness: Option<Partition>,
}

/// Decides existence of an invariant symplectic structure on a completely
/// solvable model via the weight-pairing criterion.
pub fn invariant_symplectic_exists(model: &Model) -> Result<ExistenceVerdict> {
    if model.kind() != ModelKind::GeneralizedNakamura {
        return Err(Error::Unsupported {
            operation: "invariant_symplectic_exists".to_string(),
            detail: "the pairing criterion applies to the completely solvable family".to_string(),
        });
    }
    let witness = find_partition(model.fiber_weights());
    Ok(ExistenceVerdict {
        exists: witness.is_some(),
        witness,
    })
}

/// Brute-force cross-check of the pairing criterion: expands the *generic*
/// closed invariant 2-form with indeterminate coefficients
/// `g = Σ_i t_i·m_i + Σ_x s_x·(φ⁰+φ̄⁰)∧x` (over all weight-zero 2-monomials
/// `m_i` and all fiber slots `x` of nonzero weight) and tests whether
/// `g^N` is identically zero as a polynomial in the indeterminates.
///
/// The parameterization is verified on the spot: every summand is checked
/// closed, and the parameter count is compared against
/// `dim Λ² − rank d₂`, so the generic form really spans the kernel of `d`.
pub fn partition_oracle(model: &Model) -> Result<bool> {
    if model.kind() != ModelKind::GeneralizedNakamura {
        return Err(Error::Unsupported {
            operation: "partition_oracle".to_string(),
            detail: "the oracle targets the completely solvable family".to_string(),
        });
    }
    let n = model.fiber_weights().len();
    if n > 4 {
        return Err(Error::Unsupported {
            operation: "partition_oracle".to_string(),
            detail: format!("brute-force expansion is limited to n ≤ 4 fibers, got {n}"),
        });
    }
    let gens = model.generators();
    let mut next_var = model.symbol_count();
    let mut generic = Form::zero(gens);
    let mut parameter_count = 0usize;

    for wm in model.admissible_basis(2)? {
        let term = wm.to_form(model).scale(&Laurent::var(next_var));
        next_var += 1;
        parameter_count += 1;
        generic = generic.add(&term);
    }
    let base = Form::generator(gens, 0, false)?.add(&Form::generator(gens, 0, true)?);
    for slot in gens.slots() {
        let g = gens.slot_generator(slot);
        if g == 0 || gens.slot_weight(slot).is_zero() {
            continue;
        }
        let term = base
            .wedge(&Form::from_slot(gens, slot)?)?
            .scale(&Laurent::var(next_var));
        next_var += 1;
        parameter_count += 1;
        if !model.d(&term)?.is_zero() {
            return Err(Error::internal(
                "partition_oracle",
                "a (φ⁰+φ̄⁰)∧x summand is not closed",
            ));
        }
        generic = generic.add(&term);
    }
    if !model.d(&generic)?.is_zero() {
        return Err(Error::internal(
            "partition_oracle",
            "the generic form is not closed",
        ));
    }
    // Completeness: the parameters must span the full kernel of d₂.
    let basis2 = cohomology::chain_basis(model, 2)?;
    let basis3 = cohomology::chain_basis(model, 3)?;
    let rank = cohomology::normalized_differential(model, &basis2, &basis3)?.rank();
    if parameter_count != basis2.len() - rank {
        return Err(Error::internal(
            "partition_oracle",
            format!(
                "parameterized {} closed directions, kernel has dimension {}",
                parameter_count,
                basis2.len() - rank
            ),
        ));
    }
    Ok(!generic.pow(model.complex_dim())?.is_zero())
}

/// Outcome of [`exactness_witness`].
#[derive(Debug, Clone)]
pub struct ExactnessWitness {
    /// `θ = (1/λ)·φ¹∧φ̄¹∧⋯∧φ^{2n}∧ψ¹∧ψ̄¹∧⋯∧ψ^{2m−1}∧ψ̄^{2m−1}`
    /// (the φ-block misses only `φ̄^{2n}`).
    pub theta: Form,
    /// `φ = φ¹∧φ̄¹∧⋯∧φ^{2n}∧φ̄^{2n}∧ψ¹∧ψ̄¹∧⋯∧ψ^{2m−1}∧ψ̄^{2m−1}`.
    pub phi: Form,
    /// Whether `dθ = φ` holds exactly.
    pub verified: bool,
    /// Ratio `2m − 1` between the normalization `1/((2m−1)λ)` quoted in
    /// reference statements and the verified coefficient `1/λ`; they agree
    /// exactly when `m = 1`.
    pub reference_ratio: Rational,
}

/// Builds the pair witnessing that the nonzero-degree invariant form `φ` is
/// exact on the product models (so they carry no Kähler metric compatible
/// with their natural structures).  Differentiating the ψ-block telescopes:
/// the `m` odd pairs contribute `−λ(η+η̄)` each and the `m−1` even pairs
/// `+λ(η+η̄)` each, so `dθ = φ` with the coefficient `1/λ` for every `m`.
pub fn exactness_witness(model: &Model) -> Result<ExactnessWitness> {
    if model.kind() != ModelKind::Product {
        return Err(Error::Unsupported {
            operation: "exactness_witness".to_string(),
            detail: "the witness is defined on the product models".to_string(),
        });
    }
    let gens = model.generators();
    let (n, m) = model.product_shape();
    let mut theta = Form::scalar(gens, Laurent::monomial_term(&[-1], Gaussian::one()));
    let mut phi = Form::one(gens);
    for k in 0..2 * n {
        let unbarred = Form::generator(gens, k, false)?;
        theta = theta.wedge(&unbarred)?;
        phi = phi.wedge(&unbarred)?;
        let barred = Form::generator(gens, k, true)?;
        if k + 1 < 2 * n {
            theta = theta.wedge(&barred)?;
        }
        phi = phi.wedge(&barred)?;
    }
    for j in 0..2 * m - 1 {
        let unbarred = Form::generator(gens, 2 * n + j, false)?;
        let barred = Form::generator(gens, 2 * n + j, true)?;
        theta = theta.wedge(&unbarred)?.wedge(&barred)?;
        phi = phi.wedge(&unbarred)?.wedge(&barred)?;
    }
    let verified = model.d(&theta)?.equals(&phi);
    Ok(ExactnessWitness {
        theta,
        phi,
        verified,
        reference_ratio: rat(2 * m as i64 - 1, 1),
    })
}

/// Outcome of [`check_compatibility`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityVerdict {
    /// `w(u, Ju) > 0` for all `u ≠ 0` (positive definiteness of the
    /// symmetrized `w(·, J·)`, decided exactly).
    pub tamed: bool,
    /// Tamed and `w(J·, J·) = w(·, ·)` identically.
    pub compatible: bool,
}

/// Decides whether the real closed 2-form `w` tames / is compatible with the
/// almost complex structure whose (1,0)-coframe is `coframe`.
///
/// Both `w` and the coframe entries must be untwisted constant-coefficient
/// forms over the same generator set; everything is translated to the real
/// coordinates `(E^g, F^g)` of each generator (`γ = E + iF`, self-conjugate
/// generators contributing a single real coordinate), where `J` acts as
/// multiplication by `i` on the span of the coframe.
pub fn check_compatibility(w: &Form, coframe: &[Form]) -> Result<CompatibilityVerdict> {
    let gens = w.generator_set();
    if !w.is_untwisted() {
        return Err(Error::Unsupported {
            operation: "check_compatibility".to_string(),
            detail: "w must be an untwisted (invariant) form".to_string(),
        });
    }
    if w.degree()? != 2 {
        return Err(Error::invalid("check_compatibility", "w must be a 2-form"));
    }
    if !w.conjugate().equals(w) {
        return Err(Error::invalid("check_compatibility", "w is not real"));
    }

    // Real coordinate layout: one E per generator, then one F per
    // non-self-conjugate generator.
    let count = gens.len();
    let e_index: Vec<usize> = (0..count).collect();
    let mut f_index: Vec<Option<usize>> = vec![None; count];
    let mut next = count;
    for (g, slot) in f_index.iter_mut().enumerate() {
        if !gens.entry(g).self_conjugate {
            *slot = Some(next);
            next += 1;
        }
    }
    let rdim = next;
    if !rdim.is_multiple_of(2) {
        return Err(Error::invalid(
            "check_compatibility",
            "odd real dimension admits no almost complex structure",
        ));
    }
    if coframe.len() != rdim / 2 {
        return Err(Error::invalid(
            "check_compatibility",
            format!(
                "coframe has {} entries, expected {} for real dimension {}",
                coframe.len(),
                rdim / 2,
                rdim
            ),
        ));
    }

    // Expansion of a slot 1-form in the real coordinates.
    let expand = |slot: usize| -> Vec<(usize, Gaussian)> {
        let g = gens.slot_generator(slot);
        match f_index[g] {
            None => vec![(e_index[g], Gaussian::one())],
            Some(f) => {
                let i = if gens.slot_is_barred(slot) {
                    -&Gaussian::i()
                } else {
                    Gaussian::i()
                };
                vec![(e_index[g], Gaussian::one()), (f, i)]
            }
        }
    };
    let one_form_coords = |form: &Form, operation: &str| -> Result<Vec<Gaussian>> {
        if !form.is_untwisted() {
            return Err(Error::Unsupported {
                operation: operation.to_string(),
                detail: "coframe entries must be untwisted".to_string(),
            });
        }
        if form.degree()? != 1 {
            return Err(Error::invalid(operation, "coframe entries must be 1-forms"));
        }
        let mut out = vec![Gaussian::zero(); rdim];
        for (_, mono, coeff) in form.terms() {
            let c = coeff.as_constant().ok_or_else(|| Error::Unsupported {
                operation: operation.to_string(),
                detail: "coframe entries must have constant coefficients".to_string(),
            })?;
            let slot = mono.slots()[0];
            for (idx, factor) in expand(slot) {
                out[idx] = &out[idx] + &(&factor * &c);
            }
        }
        Ok(out)
    };

    // J from the coframe: multiplication by ±i on the coframe span and its
    // conjugate, conjugated back to real coordinates.
    let mut columns = Vec::with_capacity(rdim);
    for theta in coframe {
        columns.push(one_form_coords(theta, "check_compatibility")?);
    }
    for theta in coframe {
        columns.push(one_form_coords(&theta.conjugate(), "check_compatibility")?);
    }
    let c_mat = GaussianMatrix::from_columns(&columns)?;
    let c_inv = c_mat.inverse().map_err(|_| Error::CheckFailed {
        operation: "check_compatibility".to_string(),
        detail: "the coframe and its conjugate do not span the coframe space \
                 (degenerate coframe)"
            .to_string(),
    })?;
    let mut diag = GaussianMatrix::zeros(rdim, rdim);
    for j in 0..rdim / 2 {
        diag.set(j, j, Gaussian::i());
        diag.set(rdim / 2 + j, rdim / 2 + j, -&Gaussian::i());
    }
    let j_coforms = c_mat.mul(&diag)?.mul(&c_inv)?;
    for i in 0..rdim {
        for j in 0..rdim {
            if !j_coforms.get(i, j).is_real() {
                return Err(Error::CheckFailed {
                    operation: "check_compatibility".to_string(),
                    detail: "the coframe does not define a real almost complex structure"
                        .to_string(),
                });
            }
        }
    }
    let j_vectors = j_coforms.transpose();

    // w as an antisymmetric matrix on the real coordinates.
    let mut w_mat = GaussianMatrix::zeros(rdim, rdim);
    for (_, mono, coeff) in w.terms() {
        let c = coeff.as_constant().ok_or_else(|| Error::Unsupported {
            operation: "check_compatibility".to_string(),
            detail: "w must have constant coefficients".to_string(),
        })?;
        let slots = mono.slots();
        let (s, t) = (slots[0], slots[1]);
        for (a, ca) in expand(s) {
            for (b, cb) in expand(t) {
                let v = &(&c * &ca) * &cb;
                w_mat.set(a, b, &(w_mat.get(a, b).clone()) + &v);
                w_mat.set(b, a, &(w_mat.get(b, a).clone()) - &v);
            }
        }
    }
    for i in 0..rdim {
        for j in 0..rdim {
            if !w_mat.get(i, j).is_real() {
                return Err(Error::internal(
                    "check_compatibility",
                    "a real 2-form produced non-real coefficients",
                ));
            }
        }
    }

    // Tamed: the symmetric part of u ↦ w(u, Ju) is positive definite.
    let g_mat = w_mat.mul(&j_vectors)?;
    let mut sym = vec![vec![rat(0, 1); rdim]; rdim];
    for (i, row) in sym.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let v = &(g_mat.get(i, j).re.clone() + g_mat.get(j, i).re.clone()) * rat(1, 2);
            *entry = v;
        }
    }
    let tamed = is_positive_definite(&sym)?;

    // Compatible: additionally w(J·, J·) = w.
    let invariant = j_vectors.transpose().mul(&w_mat)?.mul(&j_vectors)? == w_mat;
    Ok(CompatibilityVerdict {
        tamed,
        compatible: tamed && invariant,
    })
}
