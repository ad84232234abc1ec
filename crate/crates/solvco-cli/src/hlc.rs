//! The `hlc` subcommand: builds the requested symplectic form and verifies
//! the hard Lefschetz condition on it by exact linear algebra.

use solvco::algebra::Form;
use solvco::model::Model;
use solvco::symplectic::{build_symplectic, character_twisted_symplectic, check_hlc};

use crate::betti::{partition_section, reports_section};
use crate::descriptor::{ModelDescriptor, SymplecticOverrides};
use crate::document::{HlcSection, LefschetzEntry, Meta, ResultDocument};
use crate::error::{check_err, CliError, CliResult};
use crate::markdown::document_markdown;

/// The `--omega` flag, resolved.
#[derive(Debug)]
pub enum OmegaChoice {
    /// No flag: the descriptor's own overrides when present, else defaults.
    Unspecified,
    /// `default`: force the default coefficients, ignoring the descriptor's
    /// overrides.
    Default,
    /// `example-5.3`: the non-invariant character-twisted reference form
    /// (product models only).
    Example53,
    /// Inline JSON object with coefficient overrides.
    Inline(Box<SymplecticOverrides>),
}

/// Parses the raw `--omega` value.  Anything starting with `{` is inline
/// JSON; otherwise only the documented preset names are accepted.
pub fn parse_omega(raw: Option<&str>) -> CliResult<OmegaChoice> {
    match raw.map(str::trim) {
        None => Ok(OmegaChoice::Unspecified),
        Some("default") => Ok(OmegaChoice::Default),
        Some("example-5.3") => Ok(OmegaChoice::Example53),
        Some(text) if text.starts_with('{') => {
            let overrides: SymplecticOverrides = serde_json::from_str(text).map_err(|e| {
                CliError::Input(format!("--omega inline JSON does not match the schema: {e}"))
            })?;
            Ok(OmegaChoice::Inline(Box::new(overrides)))
        }
        Some(other) => Err(CliError::Input(format!(
            "--omega: expected \"default\", \"example-5.3\" or an inline JSON object, got {other:?}"
        ))),
    }
}

#[derive(Debug)]
pub struct HlcOutcome {
    pub doc: ResultDocument,
    pub markdown: String,
    pub holds: bool,
    /// The smallest non-bijective power, when the verdict is negative.
    pub first_failing: Option<usize>,
}

/// Builds ω per the choice and checks hard Lefschetz.  Construction and
/// verification failures are check failures (exit 3); only the preset being
/// inapplicable to the model kind is a usage error.
pub fn compute(descriptor: &ModelDescriptor, choice: &OmegaChoice) -> CliResult<HlcOutcome> {
    let model = descriptor.build_model()?;
    let (omega, source) = build_omega(descriptor, &model, choice)?;
    let verdict = check_hlc(&model, &omega).map_err(check_err)?;
    let per_k: Vec<LefschetzEntry> = verdict
        .per_k
        .iter()
        .map(|v| LefschetzEntry {
            k: v.k,
            square: v.square,
            bijective: v.bijective,
        })
        .collect();
    let first_failing = per_k.iter().find(|e| !e.bijective).map(|e| e.k);

    let doc = ResultDocument {
        command: "hlc".to_string(),
        descriptor: descriptor.clone(),
        model: model.describe(),
        betti: None,
        hodge: None,
        hlc: Some(HlcSection {
            source,
            omega: omega.to_string(),
            per_k,
            holds: verdict.holds,
        }),
        partition: partition_section(&model)?,
        reports: reports_section(descriptor)?,
        meta: Meta::new(),
    };
    let markdown = document_markdown(&doc, &format!("Hard Lefschetz — {}", doc.model));
    Ok(HlcOutcome {
        doc,
        markdown,
        holds: verdict.holds,
        first_failing,
    })
}

fn build_omega(
    descriptor: &ModelDescriptor,
    model: &Model,
    choice: &OmegaChoice,
) -> CliResult<(Form, String)> {
    match choice {
        OmegaChoice::Unspecified => {
            let spec = descriptor.symplectic_spec(model, None)?;
            let source = if descriptor.symplectic.is_some() {
                "descriptor"
            } else {
                "default"
            };
            Ok((build_symplectic(&spec).map_err(check_err)?, source.into()))
        }
        OmegaChoice::Default => {
            let bare = ModelDescriptor {
                symplectic: None,
                ..descriptor.clone()
            };
            let spec = bare.symplectic_spec(model, None)?;
            Ok((build_symplectic(&spec).map_err(check_err)?, "default".into()))
        }
        OmegaChoice::Example53 => Ok((
            character_twisted_symplectic(model).map_err(check_err)?,
            "example-5.3".into(),
        )),
        OmegaChoice::Inline(overrides) => {
            let spec = descriptor.symplectic_spec(model, Some(overrides))?;
            Ok((build_symplectic(&spec).map_err(check_err)?, "inline".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product_11() -> ModelDescriptor {
        ModelDescriptor::from_json(r#"{"kind": "product", "n": 1, "m": 1}"#).unwrap()
    }

    #[test]
    fn default_forms_satisfy_hard_lefschetz() {
        for text in [
            r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"]]}"#,
            r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"], ["0"]]}"#,
            r#"{"kind": "product", "n": 1, "m": 1}"#,
        ] {
            let d = ModelDescriptor::from_json(text).unwrap();
            let outcome = compute(&d, &OmegaChoice::Unspecified).unwrap();
            assert!(outcome.holds, "{text}");
            assert!(outcome.first_failing.is_none());
            let hlc = outcome.doc.hlc.unwrap();
            assert_eq!(hlc.source, "default");
            assert!(hlc.per_k.iter().all(|e| e.square && e.bijective));
        }
    }

    #[test]
    fn the_character_twisted_preset_holds_on_the_product_model() {
        let outcome = compute(&product_11(), &OmegaChoice::Example53).unwrap();
        assert!(outcome.holds);
        assert_eq!(outcome.doc.hlc.unwrap().source, "example-5.3");

        // The preset names a product-family form; asking for it on the
        // completely solvable family is a usage error.
        let d = ModelDescriptor::from_json(
            r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"]]}"#,
        )
        .unwrap();
        assert_eq!(
            compute(&d, &OmegaChoice::Example53).unwrap_err().exit_code(),
            2
        );
    }

    #[test]
    fn zero_coefficients_fail_the_constraint_check() {
        let d = ModelDescriptor::from_json(
            r#"{"kind": "product", "n": 1, "m": 1, "symplectic": {"base": ["0", "1"]}}"#,
        )
        .unwrap();
        let err = compute(&d, &OmegaChoice::Unspecified).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("C_1"), "{err}");
        // --omega default bypasses the bad descriptor block.
        let outcome = compute(&d, &OmegaChoice::Default).unwrap();
        assert!(outcome.holds);
    }

    #[test]
    fn inline_overrides_are_applied_and_checked() {
        let overrides: SymplecticOverrides =
            serde_json::from_str(r#"{"base": ["2", "1"], "fibers": [["0", "1"]]}"#).unwrap();
        let outcome = compute(
            &product_11(),
            &OmegaChoice::Inline(Box::new(overrides)),
        )
        .unwrap();
        assert!(outcome.holds);
        assert_eq!(outcome.doc.hlc.unwrap().source, "inline");

        match parse_omega(Some(r#"{"fibers": [["0", "0"]]}"#)).unwrap() {
            OmegaChoice::Inline(o) => {
                let err = compute(&product_11(), &OmegaChoice::Inline(o)).unwrap_err();
                assert_eq!(err.exit_code(), 3, "B = 0 violates the constraints");
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn omega_flag_parsing_rejects_unknown_values() {
        assert!(matches!(parse_omega(None).unwrap(), OmegaChoice::Unspecified));
        assert!(matches!(
            parse_omega(Some("default")).unwrap(),
            OmegaChoice::Default
        ));
        assert!(matches!(
            parse_omega(Some("example-5.3")).unwrap(),
            OmegaChoice::Example53
        ));
        assert_eq!(parse_omega(Some("fancy")).unwrap_err().exit_code(), 2);
        assert_eq!(
            parse_omega(Some(r#"{"base": 3}"#)).unwrap_err().exit_code(),
            2
        );
    }

    #[test]
    fn models_without_a_weight_pairing_are_check_failures() {
        let d = ModelDescriptor::from_json(
            r#"{"kind": "generalized_nakamura", "weights": [["1"], ["1"], ["-2"]]}"#,
        )
        .unwrap();
        let err = compute(&d, &OmegaChoice::Unspecified).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
