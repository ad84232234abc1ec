//! Keeps the shipped JSON-Schema document and the serde descriptor types in
//! lockstep: property names and strictness must match exactly, so the schema
//! users validate against never drifts from what the binary accepts.

use std::collections::BTreeSet;

use serde_json::Value;
use solvco_cli::descriptor::{LatticeData, ModelDescriptor, SymplecticOverrides};

const SCHEMA: &str = include_str!("../schema/model-descriptor.schema.json");

fn schema() -> Value {
    serde_json::from_str(SCHEMA).expect("the shipped schema is valid JSON")
}

fn property_names(obj: &Value) -> BTreeSet<String> {
    obj["properties"]
        .as_object()
        .expect("schema object with properties")
        .keys()
        .cloned()
        .collect()
}

fn serialized_keys<T: serde::Serialize>(value: &T) -> BTreeSet<String> {
    serde_json::to_value(value)
        .unwrap()
        .as_object()
        .expect("struct serializes to an object")
        .keys()
        .cloned()
        .collect()
}

/// A descriptor with every optional field populated, so serialization
/// exposes every serde field name.
fn full_descriptor() -> ModelDescriptor {
    ModelDescriptor {
        kind: "product".into(),
        weights: Some(vec![vec!["1".into()]]),
        n: Some(1),
        m: Some(1),
        symplectic: Some(full_symplectic()),
        lattice: Some(full_lattice()),
    }
}

fn full_symplectic() -> SymplecticOverrides {
    SymplecticOverrides {
        base: Some(vec!["1".into()]),
        pairs: Some(vec![[
            ["0".into(), "0".into()],
            ["1".into(), "0".into()],
        ]]),
        fibers: Some(vec![["1".into(), "0".into()]]),
        leftover: Some("1".into()),
    }
}

fn full_lattice() -> LatticeData {
    LatticeData {
        tau: Some("1".into()),
        periods: Some(vec![1]),
        matrix: Some(vec![vec![1]]),
        basis: Some(vec![vec!["1".into()]]),
    }
}

#[test]
fn schema_property_names_match_the_serde_fields() {
    let schema = schema();
    assert_eq!(property_names(&schema), serialized_keys(&full_descriptor()));
    assert_eq!(
        property_names(&schema["$defs"]["symplectic"]),
        serialized_keys(&full_symplectic())
    );
    assert_eq!(
        property_names(&schema["$defs"]["lattice"]),
        serialized_keys(&full_lattice())
    );
}

#[test]
fn schema_strictness_matches_serde_strictness() {
    let schema = schema();
    // The schema closes every object, exactly as deny_unknown_fields does.
    for obj in [
        &schema,
        &schema["$defs"]["symplectic"],
        &schema["$defs"]["lattice"],
    ] {
        assert_eq!(obj["additionalProperties"], Value::Bool(false));
    }
    assert!(ModelDescriptor::from_json(r#"{"kind": "product", "n": 1, "m": 1, "zz": 0}"#).is_err());
    assert!(serde_json::from_str::<SymplecticOverrides>(r#"{"zz": 0}"#).is_err());
    assert!(serde_json::from_str::<LatticeData>(r#"{"zz": 0}"#).is_err());
    // The only schema-required field is the only serde-required field.
    assert_eq!(schema["required"], serde_json::json!(["kind"]));
    assert!(ModelDescriptor::from_json("{}").is_err());
}

#[test]
fn documented_examples_parse_and_build() {
    for text in [
        r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"]]}"#,
        r#"{"kind": "generalized_nakamura", "weights": [["1", "0"], ["0", "1"], ["-1", "-1"]]}"#,
        r#"{"kind": "product", "n": 2, "m": 1}"#,
    ] {
        let d = ModelDescriptor::from_json(text).unwrap();
        d.build_model().unwrap();
    }
}
