//! Serializable reports and their text, Markdown and DOT renderings.

use std::fmt::Write as _;

use jm_core::algebra::{
    classify_sn_jordan_modules, inclusion_hasse, irrep_multiplicities, is_g_module, lie_closed, matrix_algebra_closed,
    table1, uniformization_stable_linear, ClosureVerdict, Minimality, ModuleVerdict, MultiplicityVector,
};
use jm_core::catalog::{sample_distributions, DistributionVector, NAMED_TR_MODELS_4};
use jm_core::rational::format_rational;
use jm_core::suites::run_suite;
use jm_core::uniformization::{expm_reference, expm_uniformization, FloatMatrix};
use jm_core::{MatrixSubspace, PermGroup};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::io::{float_17, float_matrix_to_json, rational_matrix_to_strings};
use crate::spec::ParsedSpec;
use crate::CliError;

pub const SCHEMA: &str = "jm/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Expected stability verdicts for [`NAMED_TR_MODELS_4`], in the same order.
pub const TABLE1_EXPECTED: [bool; 11] = [true, true, false, false, false, true, false, true, true, true, true];

type MatrixStrings = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub left: usize,
    pub right: usize,
    pub product: MatrixStrings,
    pub residual: MatrixStrings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub closed: bool,
    pub witness: Option<WitnessReport>,
}

impl From<&ClosureVerdict> for ClosureReport {
    fn from(v: &ClosureVerdict) -> Self {
        Self {
            closed: v.closed,
            witness: v.witness.as_ref().map(|w| WitnessReport {
                left: w.left,
                right: w.right,
                product: rational_matrix_to_strings(&w.product),
                residual: rational_matrix_to_strings(&w.residual),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleWitnessReport {
    pub generator: String,
    pub basis_index: usize,
    pub image: MatrixStrings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub group: String,
    pub closed: bool,
    pub witness: Option<ModuleWitnessReport>,
}

impl ModuleReport {
    fn new(group: &PermGroup, v: &ModuleVerdict) -> Self {
        Self {
            group: group.generator_string(),
            closed: v.closed,
            witness: v.witness.as_ref().map(|w| ModuleWitnessReport {
                generator: w.generator.to_string(),
                basis_index: w.basis_index,
                image: rational_matrix_to_strings(&w.image),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    /// `minimal` or `inconclusive`.
    pub verdict: String,
    pub certificate: Option<MatrixStrings>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
    pub irrep_dimensions: Vec<u64>,
    pub dimension: usize,
    /// `Σ count · irrep dimension`, which must equal `dimension`.
    pub accounted: u64,
    pub identity_holds: bool,
}

impl MultiplicityReport {
    pub fn new(m: &MultiplicityVector, dimension: usize) -> Self {
        let slots = MultiplicityVector::labels(m.n)
            .into_iter()
            .zip(MultiplicityVector::irrep_dimensions(m.n))
            .zip(m.counts);
        let mut labels = Vec::new();
        let mut counts = Vec::new();
        let mut irrep_dimensions = Vec::new();
        for ((label, dim), count) in slots {
            if let (Some(label), Some(dim), Some(count)) = (label, dim, count) {
                labels.push(label);
                counts.push(count);
                irrep_dimensions.push(dim);
            }
        }
        let accounted = m.accounted_dimension();
        Self {
            labels,
            counts,
            irrep_dimensions,
            dimension,
            accounted,
            identity_holds: accounted == dimension as u64,
        }
    }
}

/// Verdicts for one concrete subspace (one `π` sample for reversible families).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub pi: Option<Vec<String>>,
    pub dimension: usize,
    pub jordan: ClosureReport,
    pub lie: ClosureReport,
    pub matrix_algebra: ClosureReport,
    pub g_module: ModuleReport,
    pub minimality: MinimalityReport,
    pub uniformization_stable: Option<bool>,
    pub multiplicities: Option<MultiplicityReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub version: String,
    pub seed: u64,
    pub spec: String,
    pub family: String,
    pub n: usize,
    /// `given`, `sampled` or absent for families without a distribution.
    pub pi_mode: Option<String>,
    pub cases: Vec<CaseReport>,
    /// Aggregate over cases: any certified failure is `false`, all certified
    /// passes are `true`, anything else is absent.
    pub uniformization_stable: Option<bool>,
}

fn pi_strings(pi: &DistributionVector) -> Vec<String> {
    pi.values().iter().map(format_rational).collect()
}

fn analyse_case(
    s: &MatrixSubspace,
    hints: &[jm_core::RationalMatrix],
    module_group: &PermGroup,
    pi: Option<&DistributionVector>,
) -> Result<CaseReport, CliError> {
    let verdict = uniformization_stable_linear(s, hints)?;
    let module = is_g_module(s, module_group)?;
    let sn = PermGroup::symmetric(s.n());
    let is_sn_module = module_group.order() == sn.order() && module.closed;
    let multiplicities = if is_sn_module && (3..=8).contains(&s.n()) {
        Some(MultiplicityReport::new(&irrep_multiplicities(s)?, s.dim()))
    } else {
        None
    };
    Ok(CaseReport {
        pi: pi.map(pi_strings),
        dimension: s.dim(),
        jordan: (&verdict.jordan).into(),
        lie: (&lie_closed(s)?).into(),
        matrix_algebra: (&matrix_algebra_closed(s)?).into(),
        g_module: ModuleReport::new(module_group, &module),
        minimality: match verdict.minimality {
            Minimality::Minimal { certificate } => MinimalityReport {
                verdict: String::from("minimal"),
                certificate: Some(rational_matrix_to_strings(&certificate)),
            },
            Minimality::Inconclusive => MinimalityReport {
                verdict: String::from("inconclusive"),
                certificate: None,
            },
        },
        uniformization_stable: verdict.stable,
        multiplicities,
    })
}

/// Full verdict report for `jm check`.
pub fn check_report(
    parsed: &ParsedSpec,
    module_group: Option<&PermGroup>,
    samples: usize,
    seed: u64,
) -> Result<AnalysisReport, CliError> {
    let sn;
    let module_group = match module_group {
        Some(g) => g,
        None => {
            sn = PermGroup::symmetric(parsed.n);
            &sn
        }
    };
    if module_group.n() != parsed.n {
        return Err(CliError::Parse(format!(
            "group acts on {} points but the model has {} states",
            module_group.n(),
            parsed.n
        )));
    }
    let pis = parsed.distributions(samples, seed);
    let mut cases = Vec::new();
    let family;
    if pis.is_empty() {
        let spec = parsed.instantiate(None)?;
        family = spec.family.label();
        cases.push(analyse_case(&spec.build()?, &spec.cone_generators()?, module_group, None)?);
    } else {
        let mut label = "";
        for pi in &pis {
            let spec = parsed.instantiate(Some(pi))?;
            label = spec.family.label();
            cases.push(analyse_case(&spec.build()?, &spec.cone_generators()?, module_group, Some(pi))?);
        }
        family = label;
    }
    let uniformization_stable = if cases.iter().any(|c| c.uniformization_stable == Some(false)) {
        Some(false)
    } else if cases.iter().all(|c| c.uniformization_stable == Some(true)) {
        Some(true)
    } else {
        None
    };
    Ok(AnalysisReport {
        schema: SCHEMA.into(),
        version: VERSION.into(),
        seed,
        spec: parsed.text.clone(),
        family: family.into(),
        n: parsed.n,
        pi_mode: parsed
            .kind
            .needs_pi()
            .then(|| String::from(if parsed.is_sampled() { "sampled" } else { "given" })),
        cases,
        uniformization_stable,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn tri(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "inconclusive",
    }
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "spec: {} (family {}, n = {}, seed {})", self.spec, self.family, self.n, self.seed);
        for (k, c) in self.cases.iter().enumerate() {
            if let Some(pi) = &c.pi {
                let _ = writeln!(out, "case {}: pi = ({})", k + 1, pi.join(", "));
            }
            let _ = writeln!(out, "  dimension: {}", c.dimension);
            let witness = |r: &ClosureReport| match &r.witness {
                Some(w) => format!("no (basis {} with basis {} escapes)", w.left, w.right),
                None => String::from("yes"),
            };
            let _ = writeln!(out, "  jordan: {}", witness(&c.jordan));
            let _ = writeln!(out, "  lie: {}", witness(&c.lie));
            let _ = writeln!(out, "  matrix algebra: {}", witness(&c.matrix_algebra));
            let module = match &c.g_module.witness {
                Some(w) => format!("no ({} moves basis {} out)", w.generator, w.basis_index),
                None => String::from("yes"),
            };
            let _ = writeln!(out, "  module under <{}>: {}", c.g_module.group, module);
            let _ = writeln!(out, "  minimality: {}", c.minimality.verdict);
            if let Some(m) = &c.multiplicities {
                let parts: Vec<String> = m.labels.iter().zip(&m.counts).map(|(l, c)| format!("{c}{l}")).collect();
                let _ = writeln!(out, "  multiplicities: {}", parts.join(" + "));
            }
            let _ = writeln!(out, "  stable: {}", tri(c.uniformization_stable));
        }
        let _ = writeln!(out, "uniformization stable: {}", tri(self.uniformization_stable));
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("### `{}` (n = {}, seed {})\n\n", self.spec, self.n, self.seed);
        out.push_str("| case | pi | dim | Jordan | Lie | matrix algebra | module | minimal | stable |\n");
        out.push_str("|---|---|---|---|---|---|---|---|---|\n");
        for (k, c) in self.cases.iter().enumerate() {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                k + 1,
                c.pi.as_ref().map_or_else(|| String::from("-"), |p| p.join(", ")),
                c.dimension,
                yes_no(c.jordan.closed),
                yes_no(c.lie.closed),
                yes_no(c.matrix_algebra.closed),
                yes_no(c.g_module.closed),
                c.minimality.verdict,
                tri(c.uniformization_stable)
            );
        }
        let _ = writeln!(out, "\nUniformization stable: **{}**", tri(self.uniformization_stable));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyNode {
    pub name: String,
    pub aliases: Vec<String>,
    pub dimension: usize,
    pub multiplicities: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyGraph {
    pub schema: String,
    pub n: usize,
    pub candidates_tested: usize,
    pub nodes: Vec<HierarchyNode>,
    /// Covering pairs `(smaller, larger)` by node name.
    pub edges: Vec<(String, String)>,
}

pub fn hierarchy(n: usize) -> Result<HierarchyGraph, CliError> {
    let c = classify_sn_jordan_modules(n)?;
    let subspaces: Vec<MatrixSubspace> = c.models.iter().map(|m| m.subspace.clone()).collect();
    let edges = inclusion_hasse(&subspaces)?
        .into_iter()
        .map(|(a, b)| (c.models[a].name.clone(), c.models[b].name.clone()))
        .collect();
    Ok(HierarchyGraph {
        schema: SCHEMA.into(),
        n,
        candidates_tested: c.candidates,
        nodes: c
            .models
            .iter()
            .map(|m| HierarchyNode {
                name: m.name.clone(),
                aliases: m.aliases.clone(),
                dimension: m.subspace.dim(),
                multiplicities: m.multiplicities.as_ref().map(MultiplicityVector::as_tuple),
            })
            .collect(),
        edges,
    })
}

impl HierarchyGraph {
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph hierarchy_n{} {{\n  rankdir=TB;\n", self.n);
        for node in &self.nodes {
            let _ = writeln!(out, "  \"{}\" [label=\"{}\\ndim {}\"];", node.name, node.name, node.dimension);
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}: {} Jordan-closed modules\n", self.n, self.nodes.len());
        for node in &self.nodes {
            let alias = if node.aliases.is_empty() {
                String::new()
            } else {
                format!(" (= {})", node.aliases.join(" = "))
            };
            let _ = writeln!(out, "  {}{}: dim {}", node.name, alias, node.dimension);
        }
        out.push_str("inclusions:\n");
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  {a} < {b}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub subgroup: String,
    pub generators: String,
    pub model: String,
    pub order: usize,
    pub pair_orbits: usize,
    pub stable: Option<bool>,
    pub expected: bool,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Report {
    pub schema: String,
    pub seed: u64,
    pub pi_samples: Vec<Vec<String>>,
    pub rows: Vec<Table1Row>,
    pub yes: usize,
    pub no: usize,
    pub all_match: bool,
}

pub fn table1_report(samples: usize, seed: u64) -> Result<Table1Report, CliError> {
    let pis = sample_distributions(4, samples, seed);
    let rows: Vec<Table1Row> = table1(&pis)?
        .into_iter()
        .zip(TABLE1_EXPECTED)
        .zip(NAMED_TR_MODELS_4)
        .map(|((row, expected), named)| {
            debug_assert_eq!(row.generators, named.generators);
            Table1Row {
                subgroup: row.subgroup.into(),
                generators: row.generators.into(),
                model: row.model.into(),
                order: row.group.order(),
                pair_orbits: row.pair_orbits,
                stable: row.result.stable,
                expected,
                matches: row.result.stable == Some(expected),
            }
        })
        .collect();
    Ok(Table1Report {
        schema: SCHEMA.into(),
        seed,
        pi_samples: pis.iter().map(pi_strings).collect(),
        yes: rows.iter().filter(|r| r.stable == Some(true)).count(),
        no: rows.iter().filter(|r| r.stable == Some(false)).count(),
        all_match: rows.iter().all(|r| r.matches),
        rows,
    })
}

impl Table1Report {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<8} {:<30} {:<6} {:>5} {:>6}  {}\n",
            "Subgroup", "Generators", "Model", "Order", "Orbits", "Stable"
        );
        for r in &self.rows {
            let mark = if r.matches { "" } else { "  MISMATCH" };
            let _ = writeln!(
                out,
                "{:<8} {:<30} {:<6} {:>5} {:>6}  {}{}",
                r.subgroup,
                format!("<{}>", r.generators),
                r.model,
                r.order,
                r.pair_orbits,
                tri(r.stable),
                mark
            );
        }
        let _ = writeln!(
            out,
            "{} yes, {} no over {} sampled pi (seed {})",
            self.yes,
            self.no,
            self.pi_samples.len(),
            self.seed
        );
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| Subgroup | Generator | Model | Order | Pair orbits | Stable |\n|---|---|---|---|---|---|\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "| {} | <{}> | {} | {} | {} | {} |",
                r.subgroup,
                r.generators,
                r.model,
                r.order,
                r.pair_orbits,
                tri(r.stable)
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub schema: String,
    pub spec: String,
    pub n: usize,
    pub multiplicities: MultiplicityReport,
}

pub fn decompose_report(parsed: &ParsedSpec, seed: u64) -> Result<DecomposeReport, CliError> {
    let pi = parsed.distributions(1, seed);
    let spec = parsed.instantiate(pi.first())?;
    let s = spec.build()?;
    let m = irrep_multiplicities(&s)?;
    Ok(DecomposeReport {
        schema: SCHEMA.into(),
        spec: parsed.text.clone(),
        n: parsed.n,
        multiplicities: MultiplicityReport::new(&m, s.dim()),
    })
}

impl DecomposeReport {
    pub fn to_text(&self) -> String {
        let m = &self.multiplicities;
        let parts: Vec<String> = m.labels.iter().zip(&m.counts).map(|(l, c)| format!("{c}{l}")).collect();
        let dims: Vec<String> = m
            .counts
            .iter()
            .zip(&m.irrep_dimensions)
            .map(|(c, d)| format!("{c}*{d}"))
            .collect();
        format!(
            "{}: {}\nmultiplicities: ({})\ndimension identity: {} = {} ({})\n",
            self.spec,
            parts.join(" + "),
            m.counts.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            dims.join(" + "),
            m.dimension,
            if m.identity_holds { "holds" } else { "FAILS" }
        )
    }
}

#[derive(Debug, Serialize)]
pub struct ExpmReport {
    pub schema: &'static str,
    pub method: &'static str,
    pub n: usize,
    pub t: Box<RawValue>,
    pub matrix: Vec<Vec<Box<RawValue>>>,
    pub lambda: Option<Box<RawValue>>,
    pub terms_used: Option<usize>,
    pub truncation_bound: Option<Box<RawValue>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpmMethod {
    Uniformization,
    Reference,
}

pub fn expm_report(q: &FloatMatrix, t: f64, tol: f64, method: ExpmMethod) -> Result<ExpmReport, CliError> {
    if !q.is_rate_matrix(1e-9) {
        return Err(CliError::Parse(String::from("input is not a rate matrix")));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(CliError::Parse(format!("t = {t} must be finite and non-negative")));
    }
    Ok(match method {
        ExpmMethod::Uniformization => {
            let (m, d) = expm_uniformization(q, t, tol)?;
            ExpmReport {
                schema: SCHEMA,
                method: "unif",
                n: q.n(),
                t: float_17(t),
                matrix: float_matrix_to_json(&m),
                lambda: Some(float_17(d.lambda)),
                terms_used: Some(d.terms_used),
                truncation_bound: Some(float_17(d.truncation_bound)),
            }
        }
        ExpmMethod::Reference => ExpmReport {
            schema: SCHEMA,
            method: "ref",
            n: q.n(),
            t: float_17(t),
            matrix: float_matrix_to_json(&expm_reference(q, t)),
            lambda: None,
            terms_used: None,
            truncation_bound: None,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutput {
    pub schema: String,
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

pub fn suite_report(name: &str, seed: u64, samples: usize) -> Result<SuiteOutput, CliError> {
    let report = run_suite(name, seed, samples)?;
    Ok(SuiteOutput {
        schema: SCHEMA.into(),
        suite: report.suite.clone(),
        seed,
        passed: report.passed(),
        checks: report
            .checks
            .into_iter()
            .map(|c| CheckLine {
                name: c.name,
                passed: c.passed,
                detail: c.detail,
            })
            .collect(),
    })
}

impl SuiteOutput {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let detail = if c.detail.is_empty() {
                String::new()
            } else {
                format!(" [{}]", c.detail)
            };
            let _ = writeln!(out, "{} {}{}", if c.passed { "PASS" } else { "FAIL" }, c.name, detail);
        }
        let _ = writeln!(
            out,
            "suite {}: {}",
            self.suite,
            if self.passed { "all checks passed" } else { "FAILED" }
        );
        out
    }
}
