//! Markdown rendering of result documents: one pipe table per section,
//! mirroring the reference layout `degree | generators | b_k`.
//!
//! Markdown output never contains the timing field, so rendered files are
//! byte-identical across runs.

use crate::document::{
    BettiSection, HlcSection, HodgeSection, LatticeReportSection, PartitionSection,
    ResultDocument,
};

fn row(cells: &[String]) -> String {
    format!("| {} |", cells.join(" | "))
}

fn separator(n: usize) -> String {
    row(&vec!["---".to_string(); n])
}

/// Renders a whole document under the given heading.
pub fn document_markdown(doc: &ResultDocument, heading: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {heading}\n\n"));
    out.push_str(&format!("Model: {}.\n", doc.model));
    if let Some(betti) = &doc.betti {
        out.push('\n');
        out.push_str(&betti_markdown(betti));
    }
    if let Some(hodge) = &doc.hodge {
        out.push('\n');
        out.push_str(&hodge_markdown(hodge));
    }
    if let Some(hlc) = &doc.hlc {
        out.push('\n');
        out.push_str(&hlc_markdown(hlc));
    }
    if let Some(partition) = &doc.partition {
        out.push('\n');
        out.push_str(&partition_markdown(partition));
    }
    if let Some(reports) = &doc.reports {
        if let Some(lattice) = &reports.lattice {
            out.push('\n');
            out.push_str(&lattice_markdown(lattice));
        }
    }
    out.push_str(&format!(
        "\n---\nGenerated by {} {} (library {}).\n",
        doc.meta.tool, doc.meta.version, doc.meta.library
    ));
    out
}

/// The `degree | generators | b_k` table.
pub fn betti_markdown(betti: &BettiSection) -> String {
    let mut out = String::new();
    out.push_str("## Betti numbers\n\n");
    out.push_str(&row(&[
        "degree".to_string(),
        "generators".to_string(),
        "b_k".to_string(),
    ]));
    out.push('\n');
    out.push_str(&separator(3));
    out.push('\n');
    for entry in &betti.degrees {
        out.push_str(&row(&[
            entry.degree.to_string(),
            entry.generators.join(", "),
            entry.dimension.to_string(),
        ]));
        out.push('\n');
    }
    out.push('\n');
    if betti.routes_agree {
        out.push_str(&format!(
            "b = ({}); the weight-sector route and the full-elimination route agree.\n",
            betti
                .table
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ));
    } else {
        out.push_str(&format!(
            "ROUTE MISMATCH: weight-sector table ({:?}) differs from the elimination table ({:?}).\n",
            betti.table, betti.baseline
        ));
    }
    out
}

/// The `h^{p,q}` table with printed reference values alongside.
pub fn hodge_markdown(hodge: &HodgeSection) -> String {
    let dim = hodge.basis_count.len().saturating_sub(1);
    let mut out = String::new();
    out.push_str("## Hodge numbers\n\n");
    let mut header = vec!["h^{p,q}".to_string()];
    header.extend((0..=dim).map(|q| format!("q = {q}")));
    out.push_str(&row(&header));
    out.push('\n');
    out.push_str(&separator(dim + 2));
    out.push('\n');
    for p in 0..=dim {
        let mut cells = vec![format!("p = {p}")];
        for q in 0..=dim {
            let computed = hodge.basis_count[p][q];
            cells.push(match hodge.printed[p][q] {
                Some(r) if r != computed => format!("{computed} (printed: {r})"),
                _ => computed.to_string(),
            });
        }
        out.push_str(&row(&cells));
        out.push('\n');
    }
    out.push('\n');
    if hodge.discrepancies.is_empty() {
        out.push_str("Every stated reference entry matches the basis count.\n");
    } else {
        let cells: Vec<String> = hodge
            .discrepancies
            .iter()
            .map(|[p, q]| format!("({p}, {q})"))
            .collect();
        out.push_str(&format!(
            "The basis count and the printed reference disagree at {}; \
             both values are reported above and neither is adjusted.\n",
            cells.join(", ")
        ));
    }
    out
}

/// The per-`k` hard Lefschetz table with the verdict line.
pub fn hlc_markdown(hlc: &HlcSection) -> String {
    let mut out = String::new();
    out.push_str("## Hard Lefschetz\n\n");
    out.push_str(&format!("ω ({}): {}\n\n", hlc.source, hlc.omega));
    out.push_str(&row(&[
        "k".to_string(),
        "dims match".to_string(),
        "L^k bijective".to_string(),
    ]));
    out.push('\n');
    out.push_str(&separator(3));
    out.push('\n');
    for entry in &hlc.per_k {
        out.push_str(&row(&[
            entry.k.to_string(),
            yes_no(entry.square),
            yes_no(entry.bijective),
        ]));
        out.push('\n');
    }
    out.push('\n');
    if hlc.holds {
        out.push_str("Verdict: the hard Lefschetz condition holds.\n");
    } else {
        let failing: Vec<String> = hlc
            .per_k
            .iter()
            .filter(|e| !e.bijective)
            .map(|e| e.k.to_string())
            .collect();
        out.push_str(&format!(
            "Verdict: the hard Lefschetz condition FAILS (non-bijective L^k at k = {}).\n",
            failing.join(", ")
        ));
    }
    out
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn partition_markdown(partition: &PartitionSection) -> String {
    let mut out = String::new();
    out.push_str("## Invariant symplectic pairing\n\n");
    if partition.exists {
        let pairs = partition
            .pairs
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(|[i, j]| format!("({i}, {j})"))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "The fiber weights pair into opposite-sum blocks: {pairs}"
        ));
        if let Some(l) = partition.leftover {
            out.push_str(&format!("; unpaired zero-weight index: {l}"));
        }
        out.push_str(".\n");
    } else {
        out.push_str(
            "No pairing of the fiber weights into opposite-sum blocks exists, \
             so no invariant symplectic form exists.\n",
        );
    }
    out
}

fn lattice_markdown(lattice: &LatticeReportSection) -> String {
    let mut out = String::new();
    out.push_str("## Lattice reports\n\n");
    if let Some(tau) = &lattice.tau {
        out.push_str(&format!(
            "- Imaginary base period τ = {}: {}.\n",
            tau.tau,
            if tau.accepted { "accepted" } else { "rejected" }
        ));
    }
    if let Some(mu) = &lattice.periods {
        out.push_str(&format!(
            "- Fiber period multiples k = {:?}: residues {:?} ({}).\n",
            mu.k,
            mu.residues,
            if mu.all_trivial {
                "all trivial"
            } else {
                "NON-TRIVIAL"
            }
        ));
    }
    if let Some(m) = &lattice.matrix {
        out.push_str(&format!(
            "- Monodromy matrix ({size}×{size}): det = {det}, char poly {poly}, {sl}.\n",
            size = m.size,
            det = m.determinant,
            poly = m.char_poly_display,
            sl = if m.in_special_linear {
                "inside the special linear group"
            } else {
                "NOT in the special linear group"
            }
        ));
    }
    if let Some(b) = &lattice.basis {
        match b.discriminant {
            Some(d) => out.push_str(&format!(
                "- Eigenvector basis ({size}×{size}) over ℚ(√{d}).\n",
                size = b.size
            )),
            None => out.push_str(&format!(
                "- Eigenvector basis ({size}×{size}) with rational entries.\n",
                size = b.size
            )),
        }
    }
    out
}
