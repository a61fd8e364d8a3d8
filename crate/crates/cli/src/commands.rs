use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use zqspin::code::{cut_code, cycle_code};
use zqspin::engines::{partition, Engine};
use zqspin::graph::decomposition::tree_decomposition;
use zqspin::transforms::{apply_symmetry, dual_model, symmetry_group_sample, DualityCertificate, SymmetryElement};
use zqspin::{CodeOverZq, DecompositionStrategy, Limits, Method, OrientedGraph, ScaledValue, ZqVector};

use crate::error::CliError;
use crate::files::{read_json, write_json, GraphFile, Model, ModelFile};

pub const SYMMETRY_TOLERANCE: f64 = 1e-9;
pub const DUALITY_TOLERANCE: f64 = 1e-9;

pub fn load_graph(path: &Path) -> Result<OrientedGraph, CliError> {
    read_json::<GraphFile>(path)?.to_graph()
}

pub fn load_model(path: &Path, g: &OrientedGraph) -> Result<Model, CliError> {
    let model = read_json::<ModelFile>(path)?.to_model()?;
    if model.edge_count() != g.edge_count() {
        return Err(CliError::Parse(format!(
            "model has {} edges, graph has {}",
            model.edge_count(),
            g.edge_count()
        )));
    }
    Ok(model)
}

/// `start:stop:steps`, evenly spaced and inclusive of both ends.
pub fn parse_beta_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Parse(format!("beta range {text:?} is not start:stop:steps"));
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(CliError::Parse("beta range needs at least one step".into()));
    }
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(CliError::Parse("beta range endpoints must be finite and positive".into()));
    }
    if n > 1 && b < a {
        return Err(CliError::Parse("beta range must be ascending".into()));
    }
    Ok((0..n)
        .map(|i| {
            if n == 1 {
                return a;
            }
            // Hits both endpoints exactly.
            let t = i as f64 / (n - 1) as f64;
            a * (1.0 - t) + b * t
        })
        .collect())
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub beta: Option<f64>,
    pub value: ScaledValue,
    pub method: Engine,
    pub width: Option<usize>,
    pub cost: u64,
}

pub fn partition_rows(
    g: &OrientedGraph,
    model: &Model,
    betas: &[Option<f64>],
    method: Method,
    limits: &Limits,
) -> Result<Vec<Row>, CliError> {
    // Validate every point before spending time on any of them.
    let tables = betas.iter().map(|&b| model.weights(b)).collect::<Result<Vec<_>, _>>()?;
    tables
        .par_iter()
        .zip(betas.par_iter())
        .map(|(w, &beta)| {
            let r = partition(g, w, method, limits)?;
            Ok(Row { beta, value: r.value, method: r.method, width: r.width, cost: r.cost })
        })
        .collect()
}

pub const CSV_HEADER: &str = "beta,value_re_mantissa,value_im_mantissa,exponent2,value_decimal,method,width,cost";

pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let m = r.value.mantissa();
        let beta = r.beta.map(|b| b.to_string()).unwrap_or_default();
        let width = r.width.map(|w| w.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{beta},{},{},{},{},{},{width},{}",
            m.re,
            m.im,
            r.value.exponent(),
            r.value.to_decimal_string(),
            r.method.as_str(),
            r.cost
        )
        .expect("writing to a String");
    }
    out
}

#[derive(Debug, Serialize)]
pub struct DualReport {
    pub certificate: DualityCertificate,
    pub files: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primal_value: Option<ScaledValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_value: Option<ScaledValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_error: Option<f64>,
}

pub fn dual(
    g: &OrientedGraph,
    model: &Model,
    beta: Option<f64>,
    out: &Path,
    verify: bool,
    limits: &Limits,
) -> Result<DualReport, CliError> {
    let w = model.weights(beta)?;
    let (d, wd, cert) = dual_model(g, &w)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    let files = [
        ("dual_graph.json", serde_json::to_value(GraphFile::from_graph(&d))),
        ("dual_model.json", serde_json::to_value(ModelFile::from_weights(&wd))),
        ("certificate.json", serde_json::to_value(&cert)),
    ];
    let mut written = Vec::new();
    for (name, value) in files {
        let path = out.join(name);
        write_json(&path, &value.expect("serializable"))?;
        written.push(path.display().to_string());
    }
    let mut report = DualReport { certificate: cert, files: written, primal_value: None, dual_value: None, relative_error: None };
    if verify {
        let zg = partition(g, &w, Method::Auto, limits)?.value;
        let zd = partition(&d, &wd, Method::Auto, limits)?.value;
        let err = zd.relative_error(&(zg * report.certificate.scalar()));
        report.primal_value = Some(zg);
        report.dual_value = Some(zd);
        report.relative_error = Some(err);
    }
    Ok(report)
}

#[derive(Debug, Serialize)]
pub struct SymcheckReport {
    pub count: usize,
    pub seed: u64,
    pub value: ScaledValue,
    pub max_relative_deviation: f64,
    pub tolerance: f64,
}

/// A unit vector outside the cut code, if the graph has a cycle.
fn shift_outside_code(code: &CodeOverZq) -> Option<ZqVector> {
    (0..code.len()).find_map(|e| {
        let mut v = vec![0; code.len()];
        v[e] = 1;
        let v = ZqVector::new(code.q(), v).expect("unit vector is reduced");
        (!code.contains(&v).expect("same shape")).then_some(v)
    })
}

pub fn symcheck(
    g: &OrientedGraph,
    model: &Model,
    beta: Option<f64>,
    count: usize,
    seed: u64,
    inject_invalid: bool,
    limits: &Limits,
) -> Result<SymcheckReport, CliError> {
    let w = model.weights(beta)?;
    let base = partition(g, &w, Method::Auto, limits)?.value;
    let mut elements = symmetry_group_sample(g, w.q(), count, seed)?;
    if inject_invalid {
        let bogus = shift_outside_code(&cut_code(g, w.q())?)
            .ok_or_else(|| CliError::Parse("every shift is a symmetry on a forest; nothing to corrupt".into()))?;
        elements = elements
            .into_iter()
            .map(|s| SymmetryElement::new_unchecked(s.u().checked_add(&bogus).expect("same shape"), s.v().clone()))
            .collect();
    }
    let deviations = elements
        .par_iter()
        .map(|s| {
            let ws = apply_symmetry(s, &w)?;
            Ok(partition(g, &ws, Method::Auto, limits)?.value.relative_error(&base))
        })
        .collect::<Result<Vec<f64>, CliError>>()?;
    let max = deviations.into_iter().fold(0.0, f64::max);
    Ok(SymcheckReport { count, seed, value: base, max_relative_deviation: max, tolerance: SYMMETRY_TOLERANCE })
}

#[derive(Debug, Serialize)]
pub struct CodeSummary {
    pub dimension: usize,
    pub cardinality: Option<String>,
    pub log2_cardinality: f64,
    pub generators: Vec<String>,
    pub basis: Vec<String>,
}

impl CodeSummary {
    fn new(c: &CodeOverZq) -> Self {
        CodeSummary {
            dimension: c.dimension(),
            cardinality: c.cardinality().map(|x| x.to_string()),
            log2_cardinality: c.log2_cardinality(),
            generators: c.generators().iter().map(ToString::to_string).collect(),
            basis: c.basis().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CodeInfo {
    pub q: u32,
    pub vertices: usize,
    pub edges: usize,
    pub cut: CodeSummary,
    pub cycle: CodeSummary,
    /// `|C| = q^{n-1}`.
    pub cardinality_check: bool,
}

pub fn codeinfo(g: &OrientedGraph, q: u32) -> Result<CodeInfo, CliError> {
    let cut = cut_code(g, q)?;
    let cycle = cycle_code(g, q)?;
    let expected = (q as u128).checked_pow(g.vertex_count() as u32 - 1);
    let check = expected.is_some() && cut.cardinality() == expected
        || expected.is_none() && cut.dimension() == g.vertex_count() - 1;
    Ok(CodeInfo {
        q,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        cut: CodeSummary::new(&cut),
        cycle: CodeSummary::new(&cycle),
        cardinality_check: check,
    })
}

#[derive(Debug, Serialize)]
pub struct TdInfo {
    pub strategy: DecompositionStrategy,
    pub vertices: usize,
    pub edges: usize,
    pub width: usize,
    pub bags: usize,
    /// Bag size to number of bags.
    pub bag_histogram: BTreeMap<usize, usize>,
}

pub fn tdinfo(g: &OrientedGraph, strategy: DecompositionStrategy) -> Result<TdInfo, CliError> {
    let td = tree_decomposition(g, strategy)?;
    let mut bag_histogram = BTreeMap::new();
    for bag in td.bags() {
        *bag_histogram.entry(bag.len()).or_insert(0) += 1;
    }
    Ok(TdInfo {
        strategy,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        width: td.width(),
        bags: td.len(),
        bag_histogram,
    })
}
