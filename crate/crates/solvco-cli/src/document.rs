//! The result document written by every subcommand: a lossless JSON record
//! of the request and the computed verdicts, plus helpers for canonical
//! (timing-stripped) comparison.
//!
//! Struct fields serialize in declaration order and absent sections are
//! omitted, so identical requests produce byte-identical JSON up to the
//! timing field, which [`canonical_form`] strips.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use solvco::lattice::{mu_weights, poly_display, IntMatrix, LatticeSpec, QuadMatrix};
use solvco::num_bigint::BigInt;

use crate::descriptor::{parse_rational, LatticeData, ModelDescriptor};
use crate::error::{input_err, CliError, CliResult};

/// Everything a subcommand reports: the echoed request, the computed
/// sections that apply to it, and generation metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    /// Which subcommand produced this document.
    pub command: String,
    /// The request, echoed exactly as parsed.
    pub descriptor: ModelDescriptor,
    /// One line describing the model the descriptor denotes.
    pub model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hlc: Option<HlcSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reports: Option<ReportsSection>,
    pub meta: Meta,
}

/// Betti numbers by two independent routes plus per-degree representatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BettiSection {
    /// `b_0..b_{2N}` by the weight-sector route.
    pub table: Vec<usize>,
    /// The same numbers by full kernel/image elimination.
    pub baseline: Vec<usize>,
    pub routes_agree: bool,
    /// Harmonic representative monomials, all degrees or the one selected.
    pub degrees: Vec<DegreeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub degree: usize,
    pub dimension: usize,
    pub generators: Vec<String>,
}

/// Hodge numbers: the invariant-basis dimension count next to the printed
/// reference diamond, with every disagreeing cell flagged.  Both values are
/// always reported; no reconciliation is applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HodgeSection {
    /// `h^{p,q}` basis-dimension counts, rows `p`, columns `q`.
    pub basis_count: Vec<Vec<u64>>,
    /// Reference diamond entries where stated (upper half), else null.
    pub printed: Vec<Vec<Option<u64>>>,
    /// Cells `[p, q]` where the two disagree.
    pub discrepancies: Vec<[usize; 2]>,
}

/// The hard Lefschetz verdict for one symplectic form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HlcSection {
    /// Where ω came from: `default`, `descriptor`, `example-5.3`, `inline`.
    pub source: String,
    /// The symplectic form, rendered exactly.
    pub omega: String,
    pub per_k: Vec<LefschetzEntry>,
    /// True iff every `L^k` is bijective.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LefschetzEntry {
    pub k: usize,
    /// `dim H^{N−k} == dim H^{N+k}`.
    pub square: bool,
    /// `L^k: H^{N−k} → H^{N+k}` has nonzero exact determinant.
    pub bijective: bool,
}

/// Existence of an invariant symplectic structure (completely solvable
/// family): the weight pairing found, if any.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionSection {
    pub exists: bool,
    /// 1-based index pairs with `λ_i + λ_j = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[usize; 2]>>,
    /// The unpaired zero-weight index when the fiber count is odd.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leftover: Option<usize>,
}

/// Named check results for data attached to the descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeReportSection>,
}

/// Validation reports for the descriptor's lattice data, one per field given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeReportSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<TauReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periods: Option<MuReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauReport {
    pub tau: String,
    pub accepted: bool,
}

/// Certificate that the fiber period multiples induce trivial residues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuReport {
    pub k: Vec<i64>,
    pub residues: Vec<i64>,
    pub all_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub size: usize,
    pub determinant: String,
    /// Characteristic polynomial coefficients, descending from `x^n`.
    pub char_poly: Vec<String>,
    pub char_poly_display: String,
    pub in_special_linear: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub size: usize,
    /// Discriminant of the quadratic field the entries live in, when any
    /// entry has a radical part.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<i64>,
}

/// Tool, library and timing metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub library: String,
    /// Wall time; excluded from canonical comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Meta {
    pub fn new() -> Meta {
        Meta {
            tool: "solvco".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            library: solvco::VERSION.to_string(),
            timing_ms: None,
        }
    }
}

impl Default for Meta {
    fn default() -> Self {
        Meta::new()
    }
}

/// Serializes a document as pretty JSON with a trailing newline.
pub fn to_json(doc: &ResultDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("result documents always serialize");
    text.push('\n');
    text
}

/// The canonical comparison form of a result JSON: parsed back to a value,
/// the timing field removed, and re-serialized with sorted keys.  Two runs
/// of the same request agree here byte for byte.
pub fn canonical_form(json_text: &str) -> CliResult<String> {
    let mut v: Value = serde_json::from_str(json_text)
        .map_err(|e| CliError::Internal(format!("result document is not valid JSON: {e}")))?;
    if let Some(meta) = v.get_mut("meta").and_then(Value::as_object_mut) {
        meta.remove("timing_ms");
    }
    Ok(v.to_string())
}

/// Builds the lattice validation reports for descriptor-supplied data.
/// Malformed entries are input errors; every successfully parsed field is
/// reported with its exact checks.
pub fn lattice_reports(data: &LatticeData) -> CliResult<LatticeReportSection> {
    let tau = match &data.tau {
        Some(text) => {
            let value = parse_rational(text, "lattice.tau")?;
            LatticeSpec::with_tau(value).map_err(input_err)?;
            Some(TauReport {
                tau: text.clone(),
                accepted: true,
            })
        }
        None => None,
    };
    let periods = match &data.periods {
        Some(kvec) => {
            let cert = mu_weights(kvec).map_err(input_err)?;
            Some(MuReport {
                k: cert.k,
                residues: cert.residues,
                all_trivial: cert.all_trivial,
            })
        }
        None => None,
    };
    let matrix = match &data.matrix {
        Some(rows) => {
            let big_rows: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let m = IntMatrix::from_rows(big_rows).map_err(input_err)?;
            let coeffs = m.char_poly();
            Some(MatrixReport {
                size: m.size(),
                determinant: m.det().to_string(),
                char_poly: coeffs.iter().map(BigInt::to_string).collect(),
                char_poly_display: poly_display(&coeffs),
                in_special_linear: m.in_special_linear(),
            })
        }
        None => None,
    };
    let basis = match &data.basis {
        Some(rows) => {
            let refs: Vec<Vec<&str>> = rows
                .iter()
                .map(|r| r.iter().map(String::as_str).collect())
                .collect();
            let slices: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
            let p = QuadMatrix::parse_rows(&slices).map_err(input_err)?;
            Some(BasisReport {
                size: p.size(),
                discriminant: p.discriminant(),
            })
        }
        None => None,
    };
    Ok(LatticeReportSection {
        tau,
        periods,
        matrix,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::ModelDescriptor;

    fn sample_doc() -> ResultDocument {
        ResultDocument {
            command: "betti".into(),
            descriptor: ModelDescriptor::from_json(r#"{"kind": "product", "n": 1, "m": 1}"#)
                .unwrap(),
            model: "sample".into(),
            betti: Some(BettiSection {
                table: vec![1, 2, 1],
                baseline: vec![1, 2, 1],
                routes_agree: true,
                degrees: vec![DegreeEntry {
                    degree: 0,
                    dimension: 1,
                    generators: vec!["1".into()],
                }],
            }),
            hodge: None,
            hlc: None,
            partition: None,
            reports: None,
            meta: Meta {
                timing_ms: Some(17),
                ..Meta::new()
            },
        }
    }

    #[test]
    fn documents_round_trip_losslessly() {
        let doc = sample_doc();
        let text = to_json(&doc);
        assert!(text.ends_with('\n'));
        let back: ResultDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn canonical_form_strips_only_the_timing() {
        let doc = sample_doc();
        let mut other = doc.clone();
        other.meta.timing_ms = Some(99_999);
        assert_eq!(
            canonical_form(&to_json(&doc)).unwrap(),
            canonical_form(&to_json(&other)).unwrap()
        );
        let mut changed = doc.clone();
        changed.model = "different".into();
        assert_ne!(
            canonical_form(&to_json(&doc)).unwrap(),
            canonical_form(&to_json(&changed)).unwrap()
        );
    }

    #[test]
    fn lattice_reports_validate_each_field() {
        let data = LatticeData {
            tau: Some("1/3".into()),
            periods: Some(vec![1, 2, -3]),
            matrix: Some(vec![vec![1, 1], vec![1, 2]]),
            basis: Some(vec![
                vec!["1+√5".into(), "0".into()],
                vec!["0".into(), "1-√5".into()],
            ]),
        };
        let section = lattice_reports(&data).unwrap();
        assert!(section.tau.unwrap().accepted);
        assert!(section.periods.unwrap().all_trivial);
        let m = section.matrix.unwrap();
        assert_eq!(m.determinant, "1");
        assert_eq!(m.char_poly, vec!["1", "-3", "1"]);
        assert!(m.in_special_linear);
        assert_eq!(section.basis.unwrap().discriminant, Some(5));

        let bad_tau = LatticeData {
            tau: Some("0".into()),
            periods: None,
            matrix: None,
            basis: None,
        };
        assert_eq!(lattice_reports(&bad_tau).unwrap_err().exit_code(), 2);
        let bad_period = LatticeData {
            tau: None,
            periods: Some(vec![1, 0]),
            matrix: None,
            basis: None,
        };
        assert_eq!(lattice_reports(&bad_period).unwrap_err().exit_code(), 2);
    }
}
