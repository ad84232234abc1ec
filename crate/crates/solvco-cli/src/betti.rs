//! The `betti` subcommand: Betti numbers by two independent routes, harmonic
//! representative tables per degree, the Hodge comparison for product
//! models, and the symplectic-pairing verdict for the completely solvable
//! family.

use rayon::prelude::*;
use solvco::cohomology::{betti_table, betti_table_baseline, de_rham, hodge_table};
use solvco::model::{Model, ModelKind};
use solvco::symplectic::invariant_symplectic_exists;

use crate::descriptor::ModelDescriptor;
use crate::document::{
    lattice_reports, BettiSection, DegreeEntry, HodgeSection, Meta, PartitionSection,
    ReportsSection, ResultDocument,
};
use crate::error::{check_err, CliError, CliResult};
use crate::markdown::document_markdown;

#[derive(Debug)]
pub struct BettiOutcome {
    pub doc: ResultDocument,
    pub markdown: String,
}

/// Runs the full Betti pipeline for a descriptor.  `degree` restricts the
/// representative table (never the Betti array) to one degree;
/// `include_hodge` controls whether product models also get the Hodge
/// comparison section.
pub fn compute(
    descriptor: &ModelDescriptor,
    degree: Option<usize>,
    include_hodge: bool,
) -> CliResult<BettiOutcome> {
    let model = descriptor.build_model()?;
    let table = betti_table(&model).map_err(check_err)?;
    let baseline = betti_table_baseline(&model).map_err(check_err)?;
    if table != baseline {
        return Err(CliError::Check(format!(
            "the weight-sector route and the full-elimination route disagree: \
             {table:?} vs {baseline:?}"
        )));
    }

    let real_dim = 2 * model.complex_dim();
    let degrees: Vec<usize> = match degree {
        Some(k) if k > real_dim => {
            return Err(CliError::Input(format!(
                "--degree {k} exceeds the real dimension {real_dim} of this model"
            )))
        }
        Some(k) => vec![k],
        None => (0..=real_dim).collect(),
    };
    let entries: Vec<DegreeEntry> = degrees
        .par_iter()
        .map(|&k| degree_entry(&model, k))
        .collect::<CliResult<_>>()?;
    for entry in &entries {
        if entry.dimension != table[entry.degree] {
            return Err(CliError::Internal(format!(
                "degree {}: representative count {} disagrees with b_{} = {}",
                entry.degree, entry.dimension, entry.degree, table[entry.degree]
            )));
        }
    }

    let hodge = if include_hodge && model.kind() == ModelKind::Product {
        let t = hodge_table(&model).map_err(check_err)?;
        Some(HodgeSection {
            basis_count: t.computed,
            printed: t.reference,
            discrepancies: t.discrepancies.iter().map(|&(p, q)| [p, q]).collect(),
        })
    } else {
        None
    };
    let partition = partition_section(&model)?;
    let reports = reports_section(descriptor)?;

    let doc = ResultDocument {
        command: "betti".to_string(),
        descriptor: descriptor.clone(),
        model: model.describe(),
        betti: Some(BettiSection {
            table,
            baseline,
            routes_agree: true,
            degrees: entries,
        }),
        hodge,
        hlc: None,
        partition,
        reports,
        meta: Meta::new(),
    };
    let markdown = document_markdown(&doc, &format!("Betti numbers — {}", doc.model));
    Ok(BettiOutcome { doc, markdown })
}

fn degree_entry(model: &Model, k: usize) -> CliResult<DegreeEntry> {
    let basis = de_rham(model, k).map_err(check_err)?;
    Ok(DegreeEntry {
        degree: k,
        dimension: basis.dimension,
        generators: basis
            .representatives
            .iter()
            .map(|f| f.to_string())
            .collect(),
    })
}

/// The symplectic-pairing verdict, for the completely solvable family only.
pub fn partition_section(model: &Model) -> CliResult<Option<PartitionSection>> {
    if model.kind() != ModelKind::GeneralizedNakamura {
        return Ok(None);
    }
    let verdict = invariant_symplectic_exists(model).map_err(check_err)?;
    Ok(Some(match verdict.witness {
        Some(p) => PartitionSection {
            exists: verdict.exists,
            pairs: Some(p.pairs.iter().map(|&(i, j)| [i, j]).collect()),
            leftover: p.leftover,
        },
        None => PartitionSection {
            exists: verdict.exists,
            pairs: None,
            leftover: None,
        },
    }))
}

/// The reports section for descriptor-attached data, when any is present.
pub fn reports_section(descriptor: &ModelDescriptor) -> CliResult<Option<ReportsSection>> {
    match &descriptor.lattice {
        Some(data) => Ok(Some(ReportsSection {
            lattice: Some(lattice_reports(data)?),
        })),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n3() -> ModelDescriptor {
        ModelDescriptor::from_json(r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"]]}"#)
            .unwrap()
    }

    #[test]
    fn three_dimensional_table_matches_the_reference_column() {
        let outcome = compute(&n3(), None, true).unwrap();
        let betti = outcome.doc.betti.unwrap();
        assert_eq!(betti.table, vec![1, 2, 5, 8, 5, 2, 1]);
        assert_eq!(betti.baseline, betti.table);
        assert!(betti.routes_agree);
        assert_eq!(betti.degrees.len(), 7);
        assert_eq!(betti.degrees[3].generators.len(), 8);
        // The completely solvable family carries the pairing verdict and no
        // Hodge section.
        assert!(outcome.doc.hodge.is_none());
        let partition = outcome.doc.partition.unwrap();
        assert!(partition.exists);
        assert_eq!(partition.pairs, Some(vec![[1, 2]]));
        assert!(outcome.markdown.contains("| degree | generators | b_k |"));
    }

    #[test]
    fn degree_flag_restricts_the_representative_table() {
        let outcome = compute(&n3(), Some(2), true).unwrap();
        let betti = outcome.doc.betti.unwrap();
        assert_eq!(betti.table.len(), 7, "the Betti array stays complete");
        assert_eq!(betti.degrees.len(), 1);
        assert_eq!(betti.degrees[0].degree, 2);
        assert_eq!(betti.degrees[0].dimension, 5);
        let err = compute(&n3(), Some(7), true).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn product_model_reports_the_hodge_comparison() {
        let d = ModelDescriptor::from_json(r#"{"kind": "product", "n": 1, "m": 1}"#).unwrap();
        let outcome = compute(&d, Some(0), true).unwrap();
        let betti = outcome.doc.betti.unwrap();
        assert_eq!(betti.table, vec![1, 4, 10, 20, 26, 20, 10, 4, 1]);
        let hodge = outcome.doc.hodge.unwrap();
        assert_eq!(hodge.basis_count[1][1], 16);
        assert_eq!(hodge.printed[1][1], Some(8));
        assert_eq!(hodge.discrepancies, vec![[1, 1], [1, 2], [2, 1]]);
        assert!(outcome.doc.partition.is_none());
        // And the comparison can be switched off for plain tables.
        let outcome = compute(&d, Some(0), false).unwrap();
        assert!(outcome.doc.hodge.is_none());
    }
}
