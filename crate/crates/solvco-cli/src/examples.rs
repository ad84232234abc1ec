//! The `examples` subcommand: regenerates every reference artifact — the
//! three Betti tables, the Hodge-diamond comparison, the lattice family and
//! splitting checks, the character-twisted symplectic expansions with their
//! Lefschetz image lists, the repeated-eigenvalue matrix report, and the
//! coframe structure-identity reports.
//!
//! Every artifact is computed exactly and contains no timing data, so file
//! contents are byte-identical across runs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use solvco::algebra::{rat, rat_int, Character, Form, Gaussian, Rational};
use solvco::cohomology::{ddbar_defect, hodge_table};
use solvco::kodaira::{
    integrability_check, jstructure_coframe, n5_deformed_coframe, DeformedCoframeReport,
    EquationCheck, JStructureReport, RealCoframe,
};
use solvco::lattice::{
    char_poly_cofactor, poly_display, repeated_eigenvalue_example, trace_family_matrix,
    verify_splitting_example, GroupElement, IntMatrix,
};
use solvco::model::{product_model, Model};
use solvco::num_bigint::BigInt;
use solvco::symplectic::character_twisted_symplectic;

use crate::betti;
use crate::descriptor::ModelDescriptor;
use crate::error::{check_err, CliError, CliResult};
use crate::markdown::document_markdown;

/// Regenerates all artifacts into `out_dir`, returning the paths written.
pub fn run(out_dir: &Path) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| CliError::io("create directory", out_dir, &e))?;
    let generators: Vec<(&'static str, fn() -> CliResult<String>)> = vec![
        ("table1.md", gen_table1),
        ("table2.md", gen_table2),
        ("table3.md", gen_table3),
        ("figure1.json", gen_figure1),
        ("example51.json", gen_example51),
        ("example52.json", gen_example52),
        ("example53.json", gen_example53_json),
        ("example53.md", gen_example53_md),
        ("example54.json", gen_example54),
        ("structure_identities.json", gen_structure_identities),
        ("index.md", gen_index),
    ];
    let artifacts: Vec<(&'static str, String)> = generators
        .par_iter()
        .map(|&(name, gen)| Ok((name, gen()?)))
        .collect::<CliResult<_>>()?;
    let mut written = Vec::with_capacity(artifacts.len());
    for (name, content) in artifacts {
        let path = out_dir.join(name);
        fs::write(&path, content).map_err(|e| CliError::io("write", &path, &e))?;
        written.push(path);
    }
    Ok(written)
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("artifacts always serialize");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// Betti tables 1–3.
// ---------------------------------------------------------------------------

fn n3_descriptor() -> ModelDescriptor {
    ModelDescriptor::from_json(r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"]]}"#)
        .expect("fixed descriptor")
}

fn n4_descriptor() -> ModelDescriptor {
    ModelDescriptor::from_json(
        r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"], ["0"]]}"#,
    )
    .expect("fixed descriptor")
}

fn product11_descriptor() -> ModelDescriptor {
    ModelDescriptor::from_json(r#"{"kind": "product", "n": 1, "m": 1}"#).expect("fixed descriptor")
}

fn betti_table_md(descriptor: &ModelDescriptor, heading: &str) -> CliResult<String> {
    let outcome = betti::compute(descriptor, None, false)?;
    Ok(document_markdown(&outcome.doc, heading))
}

fn gen_table1() -> CliResult<String> {
    betti_table_md(
        &n3_descriptor(),
        "Reference table 1 — de Rham cohomology of the three-dimensional completely solvable model",
    )
}

fn gen_table2() -> CliResult<String> {
    betti_table_md(
        &n4_descriptor(),
        "Reference table 2 — de Rham cohomology of the four-dimensional completely solvable model",
    )
}

fn gen_table3() -> CliResult<String> {
    betti_table_md(
        &product11_descriptor(),
        "Reference table 3 — de Rham cohomology of the (1, 1) product model",
    )
}

// ---------------------------------------------------------------------------
// Figure 1: the Hodge diamond comparison.
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Figure1 {
    model: String,
    shape: [usize; 2],
    /// Every `h^{p,q}` cell: basis count next to the printed value.
    cells: Vec<Figure1Cell>,
    basis_count: Vec<Vec<u64>>,
    printed: Vec<Vec<Option<u64>>>,
    discrepancies: Vec<[usize; 2]>,
    /// Per-degree `Σ_{p+q=k} h^{p,q}` against `b_k`.
    degree_sums: Vec<DegreeSum>,
    note: String,
}

#[derive(Serialize)]
struct Figure1Cell {
    p: usize,
    q: usize,
    basis_count: u64,
    printed: Option<u64>,
    discrepancy: bool,
}

#[derive(Serialize)]
struct DegreeSum {
    degree: usize,
    hodge_sum: u64,
    betti: u64,
    exceeds: bool,
}

fn gen_figure1() -> CliResult<String> {
    let model = product_model(1, 1).map_err(check_err)?;
    let table = hodge_table(&model).map_err(check_err)?;
    let dim = model.complex_dim();
    let mut cells = Vec::new();
    for p in 0..=dim {
        for q in 0..=dim {
            let printed = table.reference[p][q];
            cells.push(Figure1Cell {
                p,
                q,
                basis_count: table.computed[p][q],
                printed,
                discrepancy: matches!(printed, Some(r) if r != table.computed[p][q]),
            });
        }
    }
    let mut degree_sums = Vec::new();
    for k in 0..=2 * dim {
        let defect = ddbar_defect(&model, k).map_err(check_err)?;
        degree_sums.push(DegreeSum {
            degree: k,
            hodge_sum: defect.sum_hodge,
            betti: defect.betti,
            exceeds: defect.violated,
        });
    }
    Ok(to_pretty(&Figure1 {
        model: model.describe(),
        shape: [1, 1],
        cells,
        basis_count: table.computed.clone(),
        printed: table.reference.clone(),
        discrepancies: table.discrepancies.iter().map(|&(p, q)| [p, q]).collect(),
        degree_sums,
        note: "The basis-dimension count and the printed reference diamond disagree at \
               (1,1), (1,2) and (2,1); both values are recorded and no reconciliation is \
               applied.  Degrees where the diamond row sum exceeds b_k witness the failure \
               of the ∂∂̄ comparison."
            .to_string(),
    }))
}

// ---------------------------------------------------------------------------
// The trace-family lattice matrices (n = 3..10).
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Family51 {
    rows: Vec<Family51Row>,
    note: String,
}

#[derive(Serialize)]
struct Family51Row {
    n: i64,
    matrix: Vec<Vec<String>>,
    trace: String,
    determinant: String,
    char_poly: Vec<String>,
    char_poly_display: String,
    matches_expected: bool,
    cofactor_agrees: bool,
    in_special_linear: bool,
}

fn int_matrix_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.size())
        .map(|i| (0..m.size()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn gen_example51() -> CliResult<String> {
    let mut rows = Vec::new();
    for n in 3..=10i64 {
        let m = trace_family_matrix(n).map_err(check_err)?;
        let coeffs = m.char_poly();
        let expected = vec![BigInt::from(1), BigInt::from(-n), BigInt::from(1)];
        let cofactor = char_poly_cofactor(&m).map_err(check_err)?;
        rows.push(Family51Row {
            n,
            matrix: int_matrix_strings(&m),
            trace: m.trace().to_string(),
            determinant: m.det().to_string(),
            char_poly: coeffs.iter().map(BigInt::to_string).collect(),
            char_poly_display: poly_display(&coeffs),
            matches_expected: coeffs == expected,
            cofactor_agrees: cofactor == coeffs,
            in_special_linear: m.in_special_linear(),
        });
    }
    Ok(to_pretty(&Family51 {
        rows,
        note: "Each matrix [[1, 1], [n−2, n−1]] has trace n, determinant 1 and \
               characteristic polynomial x² − nx + 1; the polynomial is verified both \
               by the trace-power recursion and by brute-force cofactor expansion."
            .to_string(),
    }))
}

// ---------------------------------------------------------------------------
// The rank-four lattice splitting report.
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Splitting {
    char_poly: Vec<String>,
    char_poly_display: String,
    in_special_linear: bool,
    conjugation_ok: bool,
    generators: BTreeMap<String, GeneratorReport>,
    word_matrix: Vec<Vec<String>>,
    word_determinant: String,
    word_unimodular: bool,
    splits_off_third_coordinate: bool,
    all_verified: bool,
}

#[derive(Serialize)]
struct GeneratorReport {
    word: String,
    base_steps: [i64; 2],
    translation: Vec<[String; 2]>,
    expected_translation: Vec<[String; 2]>,
    matches: bool,
}

fn translation_strings(g: &GroupElement) -> Vec<[String; 2]> {
    g.z.iter()
        .map(|(re, im)| [re.to_string(), im.to_string()])
        .collect()
}

fn word_for(name: &str) -> &'static str {
    match name {
        "g0'" => "g0",
        "g1'" => "g3 · g2 · g1⁻¹",
        "g2'" => "g2",
        "g3'" => "g3³ · g2⁻¹ · g1⁻²",
        "h0'" => "h0",
        "h1'" => "h3 · h2 · h1⁻¹",
        "h2'" => "h2",
        "h3'" => "h3³ · h2⁻¹ · h1⁻²",
        _ => "?",
    }
}

fn gen_example52() -> CliResult<String> {
    let report = verify_splitting_example().map_err(check_err)?;
    let mut generators = BTreeMap::new();
    for g in &report.generators {
        generators.insert(
            g.name.replace('\'', "_prime"),
            GeneratorReport {
                word: word_for(&g.name).to_string(),
                base_steps: [g.element.re_steps, g.element.tau_steps],
                translation: translation_strings(&g.element),
                expected_translation: translation_strings(&g.expected),
                matches: g.matches,
            },
        );
    }
    Ok(to_pretty(&Splitting {
        char_poly: report.char_poly.iter().map(BigInt::to_string).collect(),
        char_poly_display: poly_display(&report.char_poly),
        in_special_linear: report.in_special_linear,
        conjugation_ok: report.conjugation_ok,
        generators,
        word_matrix: int_matrix_strings(&report.word_matrix),
        word_determinant: report.word_determinant.to_string(),
        word_unimodular: report.word_unimodular,
        splits_off_third_coordinate: report.splits_off_third_coordinate,
        all_verified: report.all_verified,
    }))
}

// ---------------------------------------------------------------------------
// The character-twisted symplectic form: powers and Lefschetz image lists.
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TwistedPowers {
    model: String,
    omega: String,
    omega_squared: String,
    omega_cubed: String,
    cube_consistent: bool,
    printed_cube_ratio: String,
    lefschetz_rows: Vec<LefschetzRow>,
    note: String,
}

#[derive(Serialize)]
struct LefschetzRow {
    power: usize,
    source: String,
    image: String,
}

/// `scale · (monomial from names) [· character twist]`.
fn term(model: &Model, scale: Gaussian, names: &[&str], twist: Option<&Character>) -> Form {
    let mut f = Form::from_names(model.generators(), names)
        .expect("fixed generator names")
        .scale_gaussian(&scale);
    if let Some(chi) = twist {
        f = f.twist(chi);
    }
    f
}

/// The attached character of `ψ¹∧ψ²` in a product model (the twist carried
/// by the fiber pair).
fn twist_char(model: &Model) -> Character {
    let (n, _) = model.product_shape();
    let pair = Form::generator(model.generators(), 2 * n, false)
        .expect("fiber generator")
        .wedge(&Form::generator(model.generators(), 2 * n + 1, false).expect("fiber generator"))
        .expect("wedge of distinct generators");
    let (_, mono, _) = pair.terms().next().expect("nonzero wedge");
    model.monomial_de_rham_char(*mono)
}

fn twisted_powers() -> CliResult<TwistedPowers> {
    let model = product_model(1, 1).map_err(check_err)?;
    let omega = character_twisted_symplectic(&model).map_err(check_err)?;
    let square = omega.pow(2).map_err(check_err)?;
    let cube = omega.pow(3).map_err(check_err)?;
    let cube_consistent = cube.equals(&square.wedge(&omega).map_err(check_err)?);

    let one = Gaussian::one();
    let f = twist_char(&model);
    let sources: Vec<(usize, Form)> = vec![
        (1, term(&model, one.clone(), &["phi1", "phi1~", "phi2"], None)),
        (
            1,
            term(&model, one.clone(), &["phi1", "psi1", "psi2"], Some(&f)),
        ),
        (1, term(&model, one.clone(), &["phi1", "psi1~", "psi2"], None)),
        (2, term(&model, one.clone(), &["phi1", "phi1~"], None)),
        (2, term(&model, one.clone(), &["phi1", "phi2~"], None)),
        (2, term(&model, one.clone(), &["psi1", "psi2"], Some(&f))),
        (3, term(&model, one.clone(), &["phi1"], None)),
        (3, term(&model, one, &["phi2"], None)),
    ];
    let mut rows = Vec::new();
    for (power, source) in sources {
        let multiplier = omega.pow(power).map_err(check_err)?;
        let image = multiplier.wedge(&source).map_err(check_err)?;
        rows.push(LefschetzRow {
            power,
            source: source.to_string(),
            image: image.to_string(),
        });
    }

    Ok(TwistedPowers {
        model: model.describe(),
        omega: omega.to_string(),
        omega_squared: square.to_string(),
        omega_cubed: cube.to_string(),
        cube_consistent,
        printed_cube_ratio: "2".to_string(),
        lefschetz_rows: rows,
        note: "The reference display of the cube is internally inconsistent: its own \
               square wedged with the form gives coefficients ±3/4, while the cube is \
               printed with ±3/2 — exactly twice the product of the two earlier \
               displays.  The honest values are recorded; the printed third-power \
               image list inherits the same factor and flips the sign of its \
               first-generator rows."
            .to_string(),
    })
}

fn gen_example53_json() -> CliResult<String> {
    Ok(to_pretty(&twisted_powers()?))
}

fn gen_example53_md() -> CliResult<String> {
    let data = twisted_powers()?;
    let mut out = String::new();
    out.push_str("# Character-twisted symplectic form — powers and Lefschetz images\n\n");
    out.push_str(&format!("Model: {}.\n\n", data.model));
    out.push_str(&format!("Ω = {}\n\n", data.omega));
    out.push_str(&format!("Ω² = {}\n\n", data.omega_squared));
    out.push_str(&format!("Ω³ = {}\n\n", data.omega_cubed));
    out.push_str(&format!(
        "Ω³ ≡ Ω² ∧ Ω: {}.  Printed-cube ratio: {} (see note).\n\n",
        if data.cube_consistent { "yes" } else { "NO" },
        data.printed_cube_ratio
    ));
    out.push_str("## Lefschetz images\n\n");
    for row in &data.lefschetz_rows {
        out.push_str(&format!(
            "- L^{}[{}] = [{}]\n",
            row.power, row.source, row.image
        ));
    }
    out.push_str(&format!("\nNote: {}\n", data.note));
    Ok(out)
}

// ---------------------------------------------------------------------------
// The repeated-eigenvalue matrix report.
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RepeatedEigenvalue {
    matrix: Vec<Vec<String>>,
    char_poly: Vec<String>,
    char_poly_display: String,
    factored_display: String,
    factor_square_matches: bool,
    cofactor_agrees: bool,
    in_special_linear: bool,
    diagonal: Vec<String>,
    note: String,
}

/// Coefficient convolution: the square of a descending-coefficient poly.
fn poly_square(p: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); 2 * p.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in p.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn gen_example54() -> CliResult<String> {
    let (m, d) = repeated_eigenvalue_example().map_err(check_err)?;
    let coeffs = m.char_poly();
    let factor = vec![BigInt::from(1), BigInt::from(-4), BigInt::from(1)];
    let squared = poly_square(&factor);
    let cofactor = char_poly_cofactor(&m).map_err(check_err)?;
    let diagonal: Vec<String> = (0..d.size()).map(|i| d.get(i, i).to_string()).collect();
    Ok(to_pretty(&RepeatedEigenvalue {
        matrix: int_matrix_strings(&m),
        char_poly: coeffs.iter().map(BigInt::to_string).collect(),
        char_poly_display: poly_display(&coeffs),
        factored_display: format!("({})^2", poly_display(&factor)),
        factor_square_matches: coeffs == squared,
        cofactor_agrees: cofactor == coeffs,
        in_special_linear: m.in_special_linear(),
        diagonal,
        note: "The characteristic polynomial is the square of x² − 4x + 1, so the \
               eigenvalues 2 ± √3 each repeat: the weight exponents follow the \
               pattern (λ, −λ, λ, −λ).  Verified independently by brute-force \
               cofactor expansion."
            .to_string(),
    }))
}

// ---------------------------------------------------------------------------
// Coframe structure-identity reports.
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct StructureIdentities {
    deformed_family: Vec<DeformedJson>,
    almost_complex_products: Vec<JStructureJson>,
    integrable_controls: Vec<ControlJson>,
}

#[derive(Serialize)]
struct DeformedJson {
    t: [String; 2],
    alpha: String,
    beta: String,
    gamma: String,
    equations: Vec<EquationJson>,
    top_form_identity: EquationJson,
    delbar_top_form: String,
    integrable: bool,
    kodaira_note: String,
    all_verified: bool,
}

#[derive(Serialize)]
struct JStructureJson {
    shape: [usize; 2],
    equations: Vec<EquationJson>,
    delbar_equations: Vec<EquationJson>,
    conjugates_consistent: bool,
    d_squared_vanishes: bool,
    integrable: bool,
    top_form_vanishes: bool,
    kodaira_note: String,
    all_verified: bool,
}

#[derive(Serialize)]
struct ControlJson {
    coframe: String,
    integrable: bool,
}

#[derive(Serialize)]
struct EquationJson {
    name: String,
    equation: String,
    matches: bool,
}

fn equation_json(e: &EquationCheck) -> EquationJson {
    EquationJson {
        name: e.name.clone(),
        equation: e.equation.clone(),
        matches: e.matches,
    }
}

fn deformed_json(t: (Rational, Rational)) -> CliResult<DeformedJson> {
    let (coframe, report): (_, DeformedCoframeReport) =
        n5_deformed_coframe(t).map_err(check_err)?;
    let delbar_top = coframe.delbar_top_form().map_err(check_err)?;
    let (t1, t2) = report.params.t();
    Ok(DeformedJson {
        t: [t1.to_string(), t2.to_string()],
        alpha: report.params.alpha().to_string(),
        beta: report.params.beta().to_string(),
        gamma: report.params.gamma().to_string(),
        equations: report.equations.iter().map(equation_json).collect(),
        top_form_identity: equation_json(&report.top_form_identity),
        delbar_top_form: delbar_top.to_string(),
        integrable: report.integrable,
        kodaira_note: report.kodaira_note.clone(),
        all_verified: report.all_verified,
    })
}

fn jstructure_json(n: usize, m: usize) -> CliResult<JStructureJson> {
    let (_, report): (_, JStructureReport) = jstructure_coframe(n, m).map_err(check_err)?;
    Ok(JStructureJson {
        shape: [n, m],
        equations: report.equations.iter().map(equation_json).collect(),
        delbar_equations: report.delbar_equations.iter().map(equation_json).collect(),
        conjugates_consistent: report.conjugates_consistent,
        d_squared_vanishes: report.d_squared_vanishes,
        integrable: report.integrable,
        top_form_vanishes: report.top_form_vanishes,
        kodaira_note: report.kodaira_note.clone(),
        all_verified: report.all_verified,
    })
}

fn gen_structure_identities() -> CliResult<String> {
    let deformed_family = vec![
        deformed_json((rat_int(1), rat_int(1)))?,
        deformed_json((rat(1, 2), rat(1, 2)))?,
    ];
    let almost_complex_products = vec![jstructure_json(1, 1)?, jstructure_json(1, 2)?];

    let mut integrable_controls = Vec::new();
    let holo = RealCoframe::n5()
        .and_then(|c| c.holomorphic_coframe())
        .map_err(check_err)?;
    integrable_controls.push(ControlJson {
        coframe: "holomorphic reassembly of the five-dimensional real coframe".to_string(),
        integrable: integrability_check(&holo).map_err(check_err)?,
    });
    let model = product_model(1, 1).map_err(check_err)?;
    let gens = model.generators().clone();
    let product_holo = solvco::kodaira::AlmostComplexCoframe::new(
        (0..4)
            .map(|k| Form::generator(&gens, k, false))
            .collect::<solvco::Result<_>>()
            .map_err(check_err)?,
    )
    .map_err(check_err)?;
    integrable_controls.push(ControlJson {
        coframe: "holomorphic coframe of the (1, 1) product model".to_string(),
        integrable: integrability_check(&product_holo).map_err(check_err)?,
    });

    Ok(to_pretty(&StructureIdentities {
        deformed_family,
        almost_complex_products,
        integrable_controls,
    }))
}

// ---------------------------------------------------------------------------
// Index.
// ---------------------------------------------------------------------------

fn gen_index() -> CliResult<String> {
    Ok("\
# Reference artifacts

- `table1.md` — Betti table of the three-dimensional completely solvable model.
- `table2.md` — Betti table of the four-dimensional completely solvable model.
- `table3.md` — Betti table of the (1, 1) product model.
- `figure1.json` — Hodge diamond of the (1, 1) product model: basis counts next to the printed reference, discrepancies flagged.
- `example51.json` — the trace-family integer matrices (n = 3..10) with characteristic polynomials x² − nx + 1.
- `example52.json` — the rank-four lattice splitting: conjugation over ℚ(√5) and the eight primed generators with their exact translations.
- `example53.json`, `example53.md` — the character-twisted symplectic form, its powers, and the Lefschetz image lists.
- `example54.json` — the repeated-eigenvalue matrix with characteristic polynomial (x² − 4x + 1)².
- `structure_identities.json` — coframe structure equations: the deformed five-dimensional family, the non-integrable product structures, and the integrable controls.

All artifacts are exact and deterministic: regenerating them produces byte-identical files.
"
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_factor_square_is_the_expected_quartic() {
        let factor = vec![BigInt::from(1), BigInt::from(-4), BigInt::from(1)];
        let squared = poly_square(&factor);
        let expected: Vec<BigInt> = [1i64, -8, 18, -8, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(squared, expected);
    }

    #[test]
    fn trace_family_rows_all_verify() {
        let json = gen_example51().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 8);
        for row in rows {
            assert!(row["matches_expected"].as_bool().unwrap());
            assert!(row["cofactor_agrees"].as_bool().unwrap());
            assert!(row["in_special_linear"].as_bool().unwrap());
        }
        assert_eq!(rows[0]["char_poly_display"], "x^2 - 3x + 1");
    }

    #[test]
    fn splitting_report_names_the_primed_generators() {
        let json = gen_example52().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["all_verified"].as_bool().unwrap());
        let g1 = &v["generators"]["g1_prime"];
        assert!(g1["matches"].as_bool().unwrap());
        assert_eq!(g1["translation"][0][0], "1/2-1/10√5");
        assert_eq!(g1["translation"][1][0], "1/2+1/10√5");
        assert_eq!(g1["translation"][2][0], "0");
        assert_eq!(v["word_determinant"], "-1");
    }

    #[test]
    fn twisted_power_rows_are_consistent() {
        let data = twisted_powers().unwrap();
        assert!(data.cube_consistent);
        assert_eq!(data.lefschetz_rows.len(), 8);
        assert!(data.omega_cubed.contains("3/4"));
        // The third-power images of the two base generators share their
        // coefficient (the honest cube has no sign flip between them).
        assert!(data.lefschetz_rows[6].image.contains("3/4i"));
        assert!(data.lefschetz_rows[7].image.contains("3/4i"));
    }

    #[test]
    fn structure_identity_reports_verify() {
        let json = gen_structure_identities().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for entry in v["deformed_family"].as_array().unwrap() {
            assert!(entry["all_verified"].as_bool().unwrap());
            assert!(!entry["integrable"].as_bool().unwrap());
        }
        assert_eq!(v["deformed_family"][0]["alpha"], "2");
        assert_eq!(v["deformed_family"][0]["beta"], "1");
        for entry in v["almost_complex_products"].as_array().unwrap() {
            assert!(entry["all_verified"].as_bool().unwrap());
            assert!(entry["top_form_vanishes"].as_bool().unwrap());
        }
        for entry in v["integrable_controls"].as_array().unwrap() {
            assert!(entry["integrable"].as_bool().unwrap());
        }
    }
}
