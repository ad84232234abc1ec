//! Input descriptors: the JSON shape accepted by every subcommand, its
//! validation, and the construction of library objects from it.
//!
//! The accepted shape is mirrored by `schema/model-descriptor.schema.json`;
//! a test keeps the two in lockstep.  Every number is an exact rational
//! string (`"1/2"`, `"-3"`); Gaussian rationals are `[real, imaginary]`
//! string pairs.

use serde::{Deserialize, Serialize};
use solvco::algebra::{Gaussian, Rational, Weight};
use solvco::model::{generalized_nakamura, product_model, Model};
use solvco::symplectic::SymplecticSpec;

use crate::error::{check_err, input_err, CliError, CliResult};

/// The model requested by the user, exactly as given in the descriptor file.
///
/// `weights` belongs to the completely solvable family
/// (`kind = "generalized_nakamura"`), `n`/`m` to the semidirect products of
/// complex factors (`kind = "product"`); mixing them is rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDescriptor {
    pub kind: String,
    /// Fiber weight rows, one per fiber coordinate, as rational strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<String>>>,
    /// Number of base coordinate pairs of the product family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// Number of fiber coordinate pairs of the product family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// Optional symplectic coefficient overrides (defaults otherwise).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<SymplecticOverrides>,
    /// Optional lattice data to validate and report on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeData>,
}

/// Coefficient overrides for the invariant symplectic form.  Every field
/// replaces the corresponding default wholesale when present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymplecticOverrides {
    /// `C` (one entry, completely solvable) or `C_1..C_{2n}` (product).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<String>>,
    /// One `[A, B]` per weight pair (completely solvable family), each a
    /// `[re, im]` Gaussian pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[[String; 2]; 2]>>,
    /// One Gaussian `B_j` per fiber pair (product family).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<[String; 2]>>,
    /// `D` for the unpaired zero-weight index (odd completely solvable case).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leftover: Option<String>,
}

/// Lattice data attached to a descriptor: each present field is validated
/// and echoed back as a named report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeData {
    /// Imaginary base period `τ` (completely solvable family), rational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    /// Fiber period multiples `k_i` (product family), nonzero integers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periods: Option<Vec<i64>>,
    /// Integer monodromy matrix, row-major.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    /// Eigenvector basis rows over a real quadratic field, e.g. `"(√5-3)/2"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
}

/// Parses an exact rational string, naming the offending field on failure.
pub fn parse_rational(text: &str, field: &str) -> CliResult<Rational> {
    text.trim().parse().map_err(|e| {
        CliError::Input(format!(
            "field {field}: cannot parse {text:?} as an exact rational (like \"1/2\" or \"-3\"): {e}"
        ))
    })
}

/// Parses a `[re, im]` Gaussian-rational pair.
pub fn parse_gaussian(pair: &[String; 2], field: &str) -> CliResult<Gaussian> {
    let re = parse_rational(&pair[0], &format!("{field}[0]"))?;
    let im = parse_rational(&pair[1], &format!("{field}[1]"))?;
    Ok(Gaussian::new(re, im))
}

impl ModelDescriptor {
    /// Parses and schema-checks a descriptor from JSON text.  Unknown fields,
    /// missing fields and type mismatches are all input errors.
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Input(format!("descriptor does not match the schema: {e}"))
        })
    }

    /// Builds the library model this descriptor denotes.
    pub fn build_model(&self) -> CliResult<Model> {
        match self.kind.as_str() {
            "generalized_nakamura" => {
                if self.n.is_some() || self.m.is_some() {
                    return Err(CliError::input(
                        "fields n/m apply to kind \"product\" only; \
                         the completely solvable family takes weights",
                    ));
                }
                let rows = self.weights.as_ref().ok_or_else(|| {
                    CliError::input(
                        "field weights: required for kind \"generalized_nakamura\"",
                    )
                })?;
                let mut weights = Vec::with_capacity(rows.len());
                for (i, row) in rows.iter().enumerate() {
                    let mut coords = Vec::with_capacity(row.len());
                    for (j, entry) in row.iter().enumerate() {
                        coords.push(parse_rational(entry, &format!("weights[{i}][{j}]"))?);
                    }
                    weights.push(Weight::new(coords));
                }
                generalized_nakamura(&weights).map_err(input_err)
            }
            "product" => {
                if self.weights.is_some() {
                    return Err(CliError::input(
                        "field weights applies to kind \"generalized_nakamura\" only; \
                         the product family takes n and m",
                    ));
                }
                let n = self
                    .n
                    .ok_or_else(|| CliError::input("field n: required for kind \"product\""))?;
                let m = self
                    .m
                    .ok_or_else(|| CliError::input("field m: required for kind \"product\""))?;
                product_model(n as usize, m as usize).map_err(input_err)
            }
            other => Err(CliError::Input(format!(
                "field kind: expected \"generalized_nakamura\" or \"product\", got {other:?}"
            ))),
        }
    }

    /// The symplectic coefficient specification for `model`: the defaults
    /// with `overrides` (or, absent that, this descriptor's own `symplectic`
    /// block) applied on top.  Parse failures are input errors; the
    /// mathematical coefficient constraints are enforced later by the form
    /// construction, as check failures.
    pub fn symplectic_spec<'a>(
        &self,
        model: &'a Model,
        overrides: Option<&SymplecticOverrides>,
    ) -> CliResult<SymplecticSpec<'a>> {
        let mut spec = SymplecticSpec::defaults(model).map_err(check_err)?;
        let (source, prefix) = match overrides {
            Some(o) => (Some(o), "omega"),
            None => (self.symplectic.as_ref(), "symplectic"),
        };
        if let Some(o) = source {
            apply_overrides(&mut spec, o, prefix)?;
        }
        Ok(spec)
    }
}

fn apply_overrides(
    spec: &mut SymplecticSpec<'_>,
    o: &SymplecticOverrides,
    prefix: &str,
) -> CliResult<()> {
    if let Some(base) = &o.base {
        spec.base_coeffs = base
            .iter()
            .enumerate()
            .map(|(k, s)| parse_rational(s, &format!("{prefix}.base[{k}]")))
            .collect::<CliResult<_>>()?;
    }
    if let Some(pairs) = &o.pairs {
        spec.pair_coeffs = pairs
            .iter()
            .enumerate()
            .map(|(k, [a, b])| {
                Ok((
                    parse_gaussian(a, &format!("{prefix}.pairs[{k}][0]"))?,
                    parse_gaussian(b, &format!("{prefix}.pairs[{k}][1]"))?,
                ))
            })
            .collect::<CliResult<_>>()?;
    }
    if let Some(fibers) = &o.fibers {
        spec.fiber_coeffs = fibers
            .iter()
            .enumerate()
            .map(|(k, g)| parse_gaussian(g, &format!("{prefix}.fibers[{k}]")))
            .collect::<CliResult<_>>()?;
    }
    if let Some(l) = &o.leftover {
        spec.leftover_coeff = Some(parse_rational(l, &format!("{prefix}.leftover"))?);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use solvco::model::ModelKind;

    #[test]
    fn parses_and_builds_both_model_kinds() {
        let d = ModelDescriptor::from_json(
            r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"]]}"#,
        )
        .unwrap();
        let model = d.build_model().unwrap();
        assert_eq!(model.kind(), ModelKind::GeneralizedNakamura);
        assert_eq!(model.complex_dim(), 3);

        let d = ModelDescriptor::from_json(r#"{"kind": "product", "n": 1, "m": 2}"#).unwrap();
        let model = d.build_model().unwrap();
        assert_eq!(model.kind(), ModelKind::Product);
        assert_eq!(model.product_shape(), (1, 2));
    }

    #[test]
    fn rational_strings_parse_exactly() {
        assert_eq!(
            parse_rational("1/2", "f").unwrap(),
            solvco::algebra::rat(1, 2)
        );
        assert_eq!(
            parse_rational("-3", "f").unwrap(),
            solvco::algebra::rat_int(-3)
        );
        let err = parse_rational("1/0", "weights[0][0]").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("weights[0][0]"), "{err}");
        assert!(parse_rational("x", "f").is_err());
    }

    #[test]
    fn schema_violations_are_input_errors() {
        for (text, needle) in [
            (r#"{"kind": "torus"}"#, "kind"),
            (r#"{"kind": "product", "n": 1}"#, "field m"),
            (r#"{"kind": "product", "n": 1, "m": 1, "weights": [["0"]]}"#, "weights"),
            (r#"{"kind": "generalized_nakamura"}"#, "weights"),
            (
                r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"]], "n": 2}"#,
                "product",
            ),
        ] {
            let err = ModelDescriptor::from_json(text)
                .and_then(|d| d.build_model())
                .map(|_| ())
                .unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}");
            assert!(err.to_string().contains(needle), "{text}: {err}");
        }
        let err = ModelDescriptor::from_json(r#"{"kind": "product", "n": 1, "m": 1, "x": 0}"#)
            .unwrap_err();
        assert!(err.to_string().contains("unknown field"), "{err}");
    }

    #[test]
    fn descriptor_round_trips_through_json() {
        let d = ModelDescriptor {
            kind: "product".into(),
            weights: None,
            n: Some(1),
            m: Some(1),
            symplectic: Some(SymplecticOverrides {
                base: Some(vec!["2".into(), "1/3".into()]),
                pairs: None,
                fibers: Some(vec![["0".into(), "1".into()]]),
                leftover: None,
            }),
            lattice: Some(LatticeData {
                tau: Some("1/2".into()),
                periods: Some(vec![1, -2]),
                matrix: None,
                basis: None,
            }),
        };
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(ModelDescriptor::from_json(&text).unwrap(), d);
        // Absent optional fields are not serialized.
        assert!(!text.contains("\"weights\""));
        assert!(!text.contains("\"pairs\""));
    }

    #[test]
    fn overrides_replace_the_default_coefficients() {
        let d = ModelDescriptor::from_json(
            r#"{"kind": "product", "n": 1, "m": 1,
                "symplectic": {"base": ["2", "1"], "fibers": [["0", "1"]]}}"#,
        )
        .unwrap();
        let model = d.build_model().unwrap();
        let spec = d.symplectic_spec(&model, None).unwrap();
        assert_eq!(spec.base_coeffs.len(), 2);
        assert_eq!(spec.base_coeffs[0], solvco::algebra::rat_int(2));
        assert_eq!(
            spec.fiber_coeffs[0],
            Gaussian::new(solvco::algebra::rat_int(0), solvco::algebra::rat_int(1))
        );
        // An explicit override argument wins over the descriptor block.
        let o = SymplecticOverrides {
            base: Some(vec!["5".into(), "5".into()]),
            pairs: None,
            fibers: None,
            leftover: None,
        };
        let spec = d.symplectic_spec(&model, Some(&o)).unwrap();
        assert_eq!(spec.base_coeffs[0], solvco::algebra::rat_int(5));
        // The fiber default is restored (the override block replaces the
        // descriptor block wholesale, not field by field).
        assert_eq!(spec.fiber_coeffs[0], Gaussian::one());
    }
}
