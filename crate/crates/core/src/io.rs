//! Text formats for spaces, relations, predicates, contexts, scales and
//! lattices.
//!
//! Matrices are CSV: the first row holds the column identifiers (after an
//! ignored corner cell), every further row starts with its row identifier.
//! Cells are quantale literals. Lines starting with `#` are comments.
//!
//! ```text
//! # fuzzy similarity
//! ,a,b
//! a,1,0.6
//! b,0.6,1
//! ```
//!
//! A context bundle stacks three such matrices under section headers:
//!
//! ```text
//! quantale: fuzzy
//! [objects]
//! ...
//! [attributes]
//! ...
//! [incidence]
//! ...
//! ```
//!
//! The `[objects]` and `[attributes]` sections may be omitted, in which case
//! the corresponding spaces are discrete over the incidence identifiers.
//!
//! All writers are deterministic: numeric values use 9 fractional digits and
//! element order follows the in-memory order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::concept::{Concept, ConceptLattice, FormalContext, Implication};
use crate::error::{Error, Result};
use crate::lingvar::{LinguisticVariable, PiecewiseLinear};
use crate::matrix::Matrix;
use crate::quantale::{Quantale, QuantaleTag};
use crate::report::ValidationReport;
use crate::vrelation::VRelation;
use crate::vspace::{ApproximationSpace, VSpace};

fn parse_error(line: u64, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn at(line: u64, column: usize, err: Error) -> Error {
    match err {
        Error::Parse { .. } => err,
        Error::Domain(m) | Error::Structural(m) => parse_error(line, column, m),
        other => parse_error(line, column, other.to_string()),
    }
}

fn from_json(err: serde_json::Error) -> Error {
    if err.is_io() {
        Error::Json(err)
    } else {
        parse_error(err.line() as u64, err.column(), err.to_string())
    }
}

/// CSV records with their 1-based line numbers, shifted by `offset`.
fn records(text: &str, offset: u64) -> Result<Vec<(u64, Vec<String>)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(offset + line, 0, e.to_string())
        })?;
        let line = offset + rec.position().map_or(0, |p| p.line());
        out.push((line, rec.iter().map(str::to_string).collect()));
    }
    Ok(out)
}

fn csv_line(fields: &[String]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(fields).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("UTF-8 input")
}

/// A matrix with its row and column identifiers, as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMatrix<V> {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub matrix: Matrix<V>,
}

pub fn read_matrix<Q: Quantale>(q: &Q, text: &str) -> Result<LabeledMatrix<Q::Value>> {
    read_matrix_at(q, text, 0)
}

fn read_matrix_at<Q: Quantale>(q: &Q, text: &str, offset: u64) -> Result<LabeledMatrix<Q::Value>> {
    let recs = records(text, offset)?;
    let Some(((_, header), body)) = recs.split_first() else {
        return Ok(LabeledMatrix {
            rows: vec![],
            cols: vec![],
            matrix: Matrix::filled(0, 0, q.bottom()),
        });
    };
    let cols: Vec<String> = header[1..].to_vec();
    let mut rows = Vec::with_capacity(body.len());
    let mut values = Vec::with_capacity(body.len());
    for (line, rec) in body {
        if rec.len() != cols.len() + 1 {
            return Err(parse_error(
                *line,
                rec.len().min(cols.len() + 1) + 1,
                format!("expected {} fields, found {}", cols.len() + 1, rec.len()),
            ));
        }
        if rec[0].is_empty() {
            return Err(parse_error(*line, 1, "missing row identifier"));
        }
        rows.push(rec[0].clone());
        let row = rec[1..]
            .iter()
            .enumerate()
            .map(|(j, lit)| q.parse_value(lit).map_err(|e| at(*line, j + 2, e)))
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    Ok(LabeledMatrix {
        matrix: Matrix::from_rows(values, cols.len())?,
        rows,
        cols,
    })
}

pub fn write_matrix<Q: Quantale>(
    q: &Q,
    rows: &[String],
    cols: &[String],
    matrix: &Matrix<Q::Value>,
) -> String {
    let mut out = String::new();
    let header: Vec<String> = std::iter::once(String::new())
        .chain(cols.iter().cloned())
        .collect();
    out.push_str(&csv_line(&header));
    for (i, id) in rows.iter().enumerate() {
        let fields: Vec<String> = std::iter::once(id.clone())
            .chain(matrix.row(i).iter().map(|&v| q.format_value(v)))
            .collect();
        out.push_str(&csv_line(&fields));
    }
    out
}

/// A space from a square matrix file. Axioms are not checked here.
pub fn read_space<Q: Quantale>(q: &Q, text: &str) -> Result<VSpace<Q>> {
    let m = read_matrix(q, text)?;
    space_from_labeled(q, m)
}

fn space_from_labeled<Q: Quantale>(q: &Q, m: LabeledMatrix<Q::Value>) -> Result<VSpace<Q>> {
    if m.rows != m.cols {
        return Err(Error::structural(
            "a metric file must list its row identifiers in column order",
        ));
    }
    VSpace::new(q.clone(), m.rows, m.matrix)
}

pub fn write_space<Q: Quantale>(space: &VSpace<Q>) -> String {
    write_matrix(
        space.quantale(),
        space.elements(),
        space.elements(),
        space.metric(),
    )
}

fn positions(ids: &[String], space: &VSpace<impl Quantale>, what: &str) -> Result<Vec<usize>> {
    if ids.len() != space.len() {
        return Err(Error::structural(format!(
            "{what} lists {} identifiers, the space has {}",
            ids.len(),
            space.len()
        )));
    }
    let mut seen = vec![false; space.len()];
    ids.iter()
        .map(|id| {
            let i = space
                .index_of(id)
                .ok_or_else(|| Error::structural(format!("{what}: unknown element `{id}`")))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::structural(format!("{what}: `{id}` listed twice")));
            }
            Ok(i)
        })
        .collect()
}

/// Reorders a labeled matrix to the element order of two spaces.
fn align<Q: Quantale>(
    m: &LabeledMatrix<Q::Value>,
    source: &VSpace<Q>,
    target: &VSpace<Q>,
) -> Result<Matrix<Q::Value>> {
    let r = positions(&m.rows, source, "relation rows")?;
    let c = positions(&m.cols, target, "relation columns")?;
    let mut out = Matrix::filled(source.len(), target.len(), source.quantale().bottom());
    for (i, &ri) in r.iter().enumerate() {
        for (j, &cj) in c.iter().enumerate() {
            out.set(ri, cj, m.matrix.get(i, j));
        }
    }
    Ok(out)
}

/// A raw relation matrix between two spaces; rows and columns may appear in
/// any order. Compatibility is not checked here.
pub fn read_relation<Q: Quantale>(
    text: &str,
    source: &VSpace<Q>,
    target: &VSpace<Q>,
) -> Result<VRelation<Q>> {
    let m = read_matrix(source.quantale(), text)?;
    let matrix = align(&m, source, target)?;
    VRelation::new(source.clone(), target.clone(), matrix)
}

pub fn write_relation<Q: Quantale>(rel: &VRelation<Q>) -> String {
    write_matrix(
        rel.quantale(),
        rel.source().elements(),
        rel.target().elements(),
        rel.matrix(),
    )
}

/// Two-column pairs `(id, field)`, in file order.
fn read_pairs(text: &str) -> Result<Vec<(u64, String, String)>> {
    records(text, 0)?
        .into_iter()
        .map(|(line, rec)| match rec.as_slice() {
            [a, b] if !a.is_empty() => Ok((line, a.clone(), b.clone())),
            [_, _] => Err(parse_error(line, 1, "missing identifier")),
            _ => Err(parse_error(
                line,
                rec.len().min(2) + 1,
                format!("expected 2 fields, found {}", rec.len()),
            )),
        })
        .collect()
}

/// A predicate file lists every element of the space once, in any order.
pub fn read_predicate<Q: Quantale>(space: &VSpace<Q>, text: &str) -> Result<Vec<Q::Value>> {
    let q = space.quantale();
    let pairs = read_pairs(text)?;
    let ids: Vec<String> = pairs.iter().map(|(_, id, _)| id.clone()).collect();
    let pos = positions(&ids, space, "predicate")?;
    let mut out = vec![q.bottom(); space.len()];
    for ((line, _, lit), i) in pairs.iter().zip(pos) {
        out[i] = q.parse_value(lit).map_err(|e| at(*line, 2, e))?;
    }
    Ok(out)
}

pub fn write_predicate<Q: Quantale>(space: &VSpace<Q>, values: &[Q::Value]) -> String {
    let q = space.quantale();
    space
        .elements()
        .iter()
        .zip(values)
        .map(|(id, &v)| csv_line(&[id.clone(), q.format_value(v)]))
        .collect()
}

/// `(object, data element)` pairs.
pub fn read_description(text: &str) -> Result<Vec<(String, String)>> {
    Ok(read_pairs(text)?
        .into_iter()
        .map(|(_, g, d)| (g, d))
        .collect())
}

pub fn write_description(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(g, d)| csv_line(&[g.clone(), d.clone()]))
        .collect()
}

/// The parts of a context bundle before any validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextBundle<Q: Quantale> {
    pub objects: VSpace<Q>,
    pub attributes: VSpace<Q>,
    pub incidence: Matrix<Q::Value>,
}

impl<Q: Quantale> ContextBundle<Q> {
    pub fn from_context(ctx: &FormalContext<Q>) -> Self {
        Self {
            objects: ctx.objects().space().clone(),
            attributes: ctx.attributes().space().clone(),
            incidence: ctx.incidence().matrix().clone(),
        }
    }

    /// Axiom violations of both spaces (including symmetry) and of the
    /// incidence relation.
    pub fn validate(&self) -> Result<ValidationReport> {
        let mut report = ValidationReport::new();
        for space in [&self.objects, &self.attributes] {
            report.extend(space.validate());
            if !space.is_symmetric() {
                report.push(
                    crate::report::Axiom::Symmetry,
                    &[],
                    format!("space over {:?} is not symmetric", space.elements()),
                );
            }
        }
        report.extend(self.relation()?.validate());
        Ok(report)
    }

    pub fn relation(&self) -> Result<VRelation<Q>> {
        VRelation::new(
            self.objects.clone(),
            self.attributes.clone(),
            self.incidence.clone(),
        )
    }

    /// A validated context; with `repair` the incidence is closed first.
    pub fn into_context(self, repair: bool) -> Result<FormalContext<Q>> {
        let objects = ApproximationSpace::new(self.objects)?;
        let attributes = ApproximationSpace::new(self.attributes)?;
        if repair {
            FormalContext::repaired(objects, attributes, self.incidence)
        } else {
            FormalContext::new(objects, attributes, self.incidence)
        }
    }
}

struct Section {
    name: String,
    line: u64,
    body: String,
}

/// The `quantale:` header line and its value, if present.
type Header = Option<(u64, String)>;

fn split_bundle(text: &str) -> Result<(Header, Vec<Section>)> {
    let mut header = None;
    let mut sections: Vec<Section> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k as u64 + 1;
        let t = raw.trim();
        if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if sections.iter().any(|s| s.name == name) {
                return Err(parse_error(line, 1, format!("duplicate section [{name}]")));
            }
            sections.push(Section {
                name: name.to_string(),
                line,
                body: String::new(),
            });
        } else if let Some(s) = sections.last_mut() {
            s.body.push_str(raw);
            s.body.push('\n');
        } else if t.is_empty() || t.starts_with('#') {
            continue;
        } else if let Some(tag) = t.strip_prefix("quantale:") {
            header = Some((line, tag.trim().to_string()));
        } else {
            return Err(parse_error(
                line,
                1,
                format!("unexpected `{t}` before the first section"),
            ));
        }
    }
    Ok((header, sections))
}

/// The quantale a bundle declares in its `quantale:` header.
pub fn bundle_quantale(text: &str) -> Result<QuantaleTag> {
    match split_bundle(text)?.0 {
        Some((line, tag)) => tag.parse().map_err(|e| at(line, 11, e)),
        None => Err(parse_error(1, 1, "missing `quantale:` header")),
    }
}

fn check_tag<Q: Quantale>(q: &Q, declared: &QuantaleTag) -> Result<()> {
    if &q.tag() != declared {
        return Err(Error::structural(format!(
            "file declares quantale `{declared}` but `{}` is in use",
            q.tag()
        )));
    }
    Ok(())
}

pub fn read_bundle<Q: Quantale>(q: &Q, text: &str) -> Result<ContextBundle<Q>> {
    check_tag(q, &bundle_quantale(text)?)?;
    let (_, sections) = split_bundle(text)?;
    let mut found: HashMap<&str, &Section> = HashMap::new();
    for s in &sections {
        match s.name.as_str() {
            "objects" | "attributes" | "incidence" => {
                found.insert(s.name.as_str(), s);
            }
            other => return Err(parse_error(s.line, 1, format!("unknown section [{other}]"))),
        }
    }
    let inc = found
        .get("incidence")
        .ok_or_else(|| parse_error(1, 1, "missing [incidence] section"))?;
    let incidence = read_matrix_at(q, &inc.body, inc.line)?;
    let space = |name: &str, ids: &[String]| -> Result<VSpace<Q>> {
        match found.get(name) {
            Some(s) => space_from_labeled(q, read_matrix_at(q, &s.body, s.line)?)
                .map_err(|e| at(s.line, 1, e)),
            None => VSpace::discrete(q.clone(), ids.to_vec()).map_err(|e| at(inc.line, 1, e)),
        }
    };
    let objects = space("objects", &incidence.rows)?;
    let attributes = space("attributes", &incidence.cols)?;
    let matrix = align(&incidence, &objects, &attributes).map_err(|e| at(inc.line, 1, e))?;
    Ok(ContextBundle {
        objects,
        attributes,
        incidence: matrix,
    })
}

pub fn write_bundle<Q: Quantale>(bundle: &ContextBundle<Q>) -> String {
    let q = bundle.objects.quantale();
    let mut out = format!("quantale: {}\n", q.tag());
    out.push_str("[objects]\n");
    out.push_str(&write_space(&bundle.objects));
    out.push_str("[attributes]\n");
    out.push_str(&write_space(&bundle.attributes));
    out.push_str("[incidence]\n");
    out.push_str(&write_matrix(
        q,
        bundle.objects.elements(),
        bundle.attributes.elements(),
        &bundle.incidence,
    ));
    out
}

pub fn write_context<Q: Quantale>(ctx: &FormalContext<Q>) -> String {
    write_bundle(&ContextBundle::from_context(ctx))
}

/// A JSON string or number standing for a quantale literal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Number(f64),
    Text(String),
}

impl Literal {
    fn text(&self) -> String {
        match self {
            Literal::Number(x) => x.to_string(),
            Literal::Text(s) => s.clone(),
        }
    }
}

/// How a scale file gives a metric: `"discrete"`, a matrix file relative to
/// the scale file, or an inline matrix of literals in element order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricRef {
    Named(String),
    File { file: String },
    Inline { matrix: Vec<Vec<Literal>> },
}

impl Default for MetricRef {
    fn default() -> Self {
        MetricRef::Named("discrete".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    /// Explicit element identifiers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    /// An inclusive integer range, shorthand for its decimal identifiers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[i64; 2]>,
    #[serde(default)]
    pub metric: MetricRef,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub name: String,
    /// Breakpoints `[x, y]`; data identifiers must be numbers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub piecewise: Option<Vec<[f64; 2]>>,
    /// Membership per data identifier.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<String, Literal>>,
    /// Membership of data elements missing from `table` (default: error).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<Literal>,
}

/// The JSON shape of a scale (linguistic variable) file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleFile {
    pub quantale: String,
    pub domain: DomainSpec,
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub term_metric: MetricRef,
}

/// The parts of a scale before validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleParts<Q: Quantale> {
    pub terms: VSpace<Q>,
    pub domain: VSpace<Q>,
    pub assignment: Matrix<Q::Value>,
}

impl<Q: Quantale> ScaleParts<Q> {
    /// A validated variable, plus the predicate repairs applied if `repair`.
    pub fn into_variable(self, repair: bool) -> Result<(LinguisticVariable<Q>, ValidationReport)> {
        LinguisticVariable::new(
            ApproximationSpace::new(self.terms)?,
            ApproximationSpace::new(self.domain)?,
            self.assignment,
            repair,
        )
    }
}

pub fn scale_quantale(text: &str) -> Result<QuantaleTag> {
    let file: ScaleFile = serde_json::from_str(text).map_err(from_json)?;
    file.quantale.parse()
}

fn resolve_metric<Q: Quantale>(
    q: &Q,
    metric: &MetricRef,
    elements: Vec<String>,
    base: Option<&Path>,
) -> Result<VSpace<Q>> {
    match metric {
        MetricRef::Named(name) if name == "discrete" => VSpace::discrete(q.clone(), elements),
        MetricRef::Named(name) => Err(Error::structural(format!(
            "unknown metric `{name}` (use \"discrete\", {{\"file\": ...}} or {{\"matrix\": ...}})"
        ))),
        MetricRef::File { file } => {
            let path = base.map_or_else(|| Path::new(file).to_path_buf(), |b| b.join(file));
            let space = read_space(q, &std::fs::read_to_string(&path)?)?;
            let pos = positions(
                space.elements(),
                &VSpace::discrete(q.clone(), elements.clone())?,
                "metric file",
            )?;
            let n = elements.len();
            let mut m = Matrix::filled(n, n, q.bottom());
            for (i, &pi) in pos.iter().enumerate() {
                for (j, &pj) in pos.iter().enumerate() {
                    m.set(pi, pj, space.distance(i, j));
                }
            }
            VSpace::new(q.clone(), elements, m)
        }
        MetricRef::Inline { matrix } => {
            let rows = matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|l| q.parse_value(&l.text()))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_rows(rows, elements.len())?;
            VSpace::new(q.clone(), elements, m)
        }
    }
}

/// Reads a scale file; `base` resolves relative metric file references.
pub fn read_scale<Q: Quantale>(q: &Q, text: &str, base: Option<&Path>) -> Result<ScaleParts<Q>> {
    let file: ScaleFile = serde_json::from_str(text).map_err(from_json)?;
    check_tag(q, &file.quantale.parse()?)?;
    let elements = match (&file.domain.elements, file.domain.range) {
        (Some(e), None) => e.clone(),
        (None, Some([lo, hi])) if lo <= hi => (lo..=hi).map(|d| d.to_string()).collect(),
        (None, Some(_)) => return Err(Error::structural("domain range is empty")),
        _ => {
            return Err(Error::structural(
                "domain needs exactly one of `elements` and `range`",
            ))
        }
    };
    let domain = resolve_metric(q, &file.domain.metric, elements, base)?;
    let names: Vec<String> = file.terms.iter().map(|t| t.name.clone()).collect();
    let terms = resolve_metric(q, &file.term_metric, names, base)?;
    let mut rows = Vec::with_capacity(file.terms.len());
    for t in &file.terms {
        rows.push(term_row(q, t, domain.elements())?);
    }
    Ok(ScaleParts {
        assignment: Matrix::from_rows(rows, domain.len())?,
        terms,
        domain,
    })
}

fn term_row<Q: Quantale>(q: &Q, t: &TermSpec, domain: &[String]) -> Result<Vec<Q::Value>> {
    let ctx = |e: Error| Error::structural(format!("term `{}`: {e}", t.name));
    match (&t.piecewise, &t.table) {
        (Some(points), None) => {
            let f =
                PiecewiseLinear::new(points.iter().map(|&[x, y]| (x, y)).collect()).map_err(ctx)?;
            domain
                .iter()
                .map(|d| {
                    let x: f64 = d.parse().map_err(|_| {
                        ctx(Error::structural(format!(
                            "data element `{d}` is not a number"
                        )))
                    })?;
                    q.parse_value(&f.eval(x).to_string()).map_err(ctx)
                })
                .collect()
        }
        (None, Some(table)) => {
            if let Some(extra) = table.keys().find(|k| !domain.contains(k)) {
                return Err(ctx(Error::structural(format!(
                    "unknown data element `{extra}`"
                ))));
            }
            domain
                .iter()
                .map(|d| match table.get(d).or(t.default.as_ref()) {
                    Some(lit) => q.parse_value(&lit.text()).map_err(ctx),
                    None => Err(ctx(Error::structural(format!("no membership for `{d}`")))),
                })
                .collect()
        }
        _ => Err(ctx(Error::structural(
            "give exactly one of `piecewise` and `table`",
        ))),
    }
}

fn metric_ref<Q: Quantale>(space: &VSpace<Q>) -> MetricRef {
    let q = space.quantale();
    let n = space.len();
    let discrete = (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = if i == j { q.unit() } else { q.bottom() };
            q.equiv(space.distance(i, j), expected)
        })
    });
    if discrete {
        return MetricRef::default();
    }
    MetricRef::Inline {
        matrix: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Literal::Text(q.format_value(space.distance(i, j))))
                    .collect()
            })
            .collect(),
    }
}

/// Writes a variable as a scale file with explicit tables.
pub fn write_scale<Q: Quantale>(var: &LinguisticVariable<Q>) -> String {
    let q = var.quantale();
    let domain = var.domain().space();
    let file = ScaleFile {
        quantale: q.tag().to_string(),
        domain: DomainSpec {
            elements: Some(domain.elements().to_vec()),
            range: None,
            metric: metric_ref(domain),
        },
        terms: var
            .terms()
            .elements()
            .iter()
            .enumerate()
            .map(|(m, name)| TermSpec {
                name: name.clone(),
                piecewise: None,
                table: Some(
                    domain
                        .elements()
                        .iter()
                        .enumerate()
                        .map(|(d, id)| {
                            (
                                id.clone(),
                                Literal::Text(q.format_value(var.membership(m, d))),
                            )
                        })
                        .collect(),
                ),
                default: None,
            })
            .collect(),
        term_metric: metric_ref(var.terms().space()),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("scale files serialize");
    out.push('\n');
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    quantale: String,
    objects: Vec<String>,
    attributes: Vec<String>,
    grid: Vec<String>,
    concepts: Vec<Concept<String>>,
    order: Vec<Vec<String>>,
}

pub fn write_lattice<Q: Quantale>(lattice: &ConceptLattice<Q>) -> String {
    let q = lattice.quantale();
    let fmt = |vs: &[Q::Value]| vs.iter().map(|&v| q.format_value(v)).collect::<Vec<_>>();
    let n = lattice.len();
    let file = LatticeFile {
        quantale: q.tag().to_string(),
        objects: lattice.objects().to_vec(),
        attributes: lattice.attributes().to_vec(),
        grid: fmt(lattice.grid()),
        concepts: lattice
            .concepts()
            .iter()
            .map(|c| Concept {
                extent: fmt(&c.extent),
                intent: fmt(&c.intent),
            })
            .collect(),
        order: (0..n).map(|i| fmt(lattice.order().row(i))).collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("lattices serialize");
    out.push('\n');
    out
}

pub fn read_lattice<Q: Quantale>(q: &Q, text: &str) -> Result<ConceptLattice<Q>> {
    let file: LatticeFile = serde_json::from_str(text).map_err(from_json)?;
    check_tag(q, &file.quantale.parse()?)?;
    let parse = |vs: &[String], len: usize, what: &str| -> Result<Vec<Q::Value>> {
        if vs.len() != len {
            return Err(Error::structural(format!(
                "{what} has {} values, expected {len}",
                vs.len()
            )));
        }
        vs.iter().map(|s| q.parse_value(s)).collect()
    };
    let grid = file
        .grid
        .iter()
        .map(|s| q.parse_value(s))
        .collect::<Result<Vec<_>>>()?;
    let (g, m, n) = (
        file.objects.len(),
        file.attributes.len(),
        file.concepts.len(),
    );
    let concepts = file
        .concepts
        .iter()
        .map(|c| {
            Ok(Concept {
                extent: parse(&c.extent, g, "extent")?,
                intent: parse(&c.intent, m, "intent")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if file.order.len() != n {
        return Err(Error::structural(
            "order matrix does not match the concept count",
        ));
    }
    let rows = file
        .order
        .iter()
        .map(|r| parse(r, n, "order row"))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConceptLattice::from_parts(
        q.clone(),
        file.objects,
        file.attributes,
        grid,
        concepts,
        Matrix::from_rows(rows, n)?,
    ))
}

/// The Hasse diagram of a lattice as written to DOT.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseGraph {
    /// Node labels, indexed by concept position.
    pub nodes: Vec<String>,
    /// `(lower, upper, label)`.
    pub edges: Vec<(usize, usize, Option<String>)>,
}

fn describe<Q: Quantale>(q: &Q, ids: &[String], vs: &[Q::Value]) -> String {
    let parts: Vec<String> = ids
        .iter()
        .zip(vs)
        .filter(|(_, &v)| !q.equiv(v, q.bottom()))
        .map(|(id, &v)| {
            if q.equiv(v, q.unit()) {
                id.clone()
            } else {
                format!("{id}:{}", q.format_value(v))
            }
        })
        .collect();
    parts.join(" ")
}

/// Hasse edges of the lattice. Each node shows the non-bottom entries of its
/// extent and intent; an edge is labeled with the degree to which the upper
/// concept is below the lower one, unless that degree is `e` or `⊥`.
pub fn hasse_graph<Q: Quantale>(lattice: &ConceptLattice<Q>) -> HasseGraph {
    let q = lattice.quantale();
    let nodes = lattice
        .concepts()
        .iter()
        .map(|c| {
            format!(
                "{} | {}",
                describe(q, lattice.objects(), &c.extent),
                describe(q, lattice.attributes(), &c.intent)
            )
        })
        .collect();
    let edges = lattice
        .hasse_edges()
        .into_iter()
        .map(|(lo, hi)| {
            let back = lattice.order().get(hi, lo);
            let label = (!q.equiv(back, q.unit()) && !q.equiv(back, q.bottom()))
                .then(|| q.format_value(back));
            (lo, hi, label)
        })
        .collect();
    HasseGraph { nodes, edges }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn write_dot(graph: &HasseGraph) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, label) in graph.nodes.iter().enumerate() {
        let _ = writeln!(out, "  c{i} [label=\"{}\"];", escape(label));
    }
    for (lo, hi, label) in &graph.edges {
        match label {
            Some(l) => {
                let _ = writeln!(out, "  c{lo} -> c{hi} [label=\"{}\"];", escape(l));
            }
            None => {
                let _ = writeln!(out, "  c{lo} -> c{hi};");
            }
        }
    }
    out.push_str("}\n");
    out
}

fn quoted_label(s: &str, line: u64) -> Result<String> {
    let inner = s
        .strip_prefix("[label=\"")
        .and_then(|r| r.strip_suffix("\"]"))
        .ok_or_else(|| parse_error(line, 1, "expected [label=\"...\"]"))?;
    let mut out = String::new();
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            out.extend(chars.next());
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

fn node_index(s: &str, line: u64) -> Result<usize> {
    s.strip_prefix('c')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| parse_error(line, 1, format!("`{s}` is not a concept node")))
}

/// Reads back the DOT subset produced by [`write_dot`].
pub fn read_dot(text: &str) -> Result<HasseGraph> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k as u64 + 1;
        let t = raw.trim();
        if t.is_empty()
            || t == "}"
            || t.starts_with("digraph")
            || t.starts_with("rankdir")
            || t.starts_with("node ")
        {
            continue;
        }
        let t = t
            .strip_suffix(';')
            .ok_or_else(|| parse_error(line, raw.len(), "missing `;`"))?;
        if let Some((lo, rest)) = t.split_once(" -> ") {
            let (hi, label) = match rest.split_once(' ') {
                Some((hi, l)) => (hi, Some(quoted_label(l, line)?)),
                None => (rest, None),
            };
            edges.push((node_index(lo, line)?, node_index(hi, line)?, label));
        } else {
            let (id, label) = t
                .split_once(' ')
                .ok_or_else(|| parse_error(line, 1, "expected a node or an edge"))?;
            if node_index(id, line)? != nodes.len() {
                return Err(parse_error(line, 1, "nodes must be numbered consecutively"));
            }
            nodes.push(quoted_label(label, line)?);
        }
    }
    Ok(HasseGraph { nodes, edges })
}

pub fn write_implications<Q: Quantale>(q: &Q, implications: &[Implication<Q::Value>]) -> String {
    let mut out = csv_line(&["premise".into(), "conclusion".into(), "measure".into()]);
    for imp in implications {
        out.push_str(&csv_line(&[
            imp.premise.clone(),
            imp.conclusion.clone(),
            q.format_value(imp.measure),
        ]));
    }
    out
}

pub fn read_implications<Q: Quantale>(q: &Q, text: &str) -> Result<Vec<Implication<Q::Value>>> {
    let recs = records(text, 0)?;
    let mut out = Vec::new();
    for (k, (line, rec)) in recs.into_iter().enumerate() {
        if rec.len() != 3 {
            return Err(parse_error(line, rec.len().min(3) + 1, "expected 3 fields"));
        }
        if k == 0 && rec == ["premise", "conclusion", "measure"] {
            continue;
        }
        out.push(Implication {
            measure: q.parse_value(&rec[2]).map_err(|e| at(line, 3, e))?,
            premise: rec[0].clone(),
            conclusion: rec[1].clone(),
        });
    }
    Ok(out)
}
