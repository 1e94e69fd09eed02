//! The algebra text format and the JSON report schema.
//!
//! ```text
//! # comment
//! field 2
//! vertex K M N
//! arrow a: K -> N
//! arrow k: K -> K degree 4
//! order short-major-rlex a > b > c
//! relation d^2 = c*a*e*b
//! relation b*d = 0
//! ```
//!
//! `order` takes `>` (most significant first) or `<` (least significant first).

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{Element, MonomialOrder, OrderKind, Quiver};
use crate::resolution::Resolution;
use crate::rewrite::RewriteSystem;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub label: String,
    pub source: String,
    pub target: String,
    pub degree: u32,
}

/// A parsed algebra file; relations are kept as text until resolved against the quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub field: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub order: OrderKind,
    /// Arrow labels, most significant first.
    pub precedence: Vec<String>,
    pub relations: Vec<(String, String)>,
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut field = None;
        let mut vertices: Vec<String> = Vec::new();
        let mut arrows = Vec::new();
        let mut order = None;
        let mut relations = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("");
            let toks = tokens(line);
            let Some(&(c0, directive)) = toks.first() else { continue };
            let err = |col: usize, msg: String| Error::parse(line_no, col + 1, msg);
            let rest_col = toks.get(1).map(|t| t.0).unwrap_or(line.len());
            match directive {
                "field" => {
                    let &(c, p) = toks.get(1).ok_or_else(|| err(rest_col, "expected a prime".into()))?;
                    let p: u32 = p.parse().map_err(|_| err(c, format!("`{p}` is not a number")))?;
                    Field::new(p).map_err(|e| err(c, e.to_string()))?;
                    if toks.len() > 2 {
                        return Err(err(toks[2].0, "unexpected text after the field".into()));
                    }
                    field = Some(p);
                }
                "vertex" | "vertices" => {
                    if toks.len() < 2 {
                        return Err(err(rest_col, "expected vertex labels".into()));
                    }
                    vertices.extend(toks[1..].iter().map(|t| t.1.to_string()));
                }
                "arrow" => {
                    let body = &line[rest_col..];
                    let (name, tail) = body.split_once(':').ok_or_else(|| err(rest_col, "expected `name: source -> target`".into()))?;
                    let tail_col = rest_col + name.len() + 1;
                    let tt = tokens(tail);
                    let at = |i: usize| tt.get(i).map(|t| tail_col + t.0).unwrap_or(line.len());
                    if tt.len() < 3 || tt[1].1 != "->" {
                        return Err(err(at(1), "expected `source -> target`".into()));
                    }
                    let degree = match tt.len() {
                        3 => 1,
                        5 if tt[3].1 == "degree" => tt[4].1.parse().map_err(|_| err(at(4), format!("`{}` is not a degree", tt[4].1)))?,
                        _ => return Err(err(at(3), "expected `degree <k>` or end of line".into())),
                    };
                    arrows.push(ArrowDecl { label: name.trim().to_string(), source: tt[0].1.to_string(), target: tt[2].1.to_string(), degree });
                }
                "order" => {
                    let &(c, kind) = toks.get(1).ok_or_else(|| err(rest_col, "expected an order kind".into()))?;
                    let kind = OrderKind::from_name(kind).ok_or_else(|| err(c, format!("unknown order `{kind}`")))?;
                    let mut labels = Vec::new();
                    let mut sep = None;
                    for (i, &(c, t)) in toks[2..].iter().enumerate() {
                        if i % 2 == 0 {
                            labels.push(t.to_string());
                        } else if (t == ">" || t == "<") && sep.is_none_or(|s| s == t) {
                            sep = Some(t);
                        } else {
                            return Err(err(c, format!("expected a consistent `>` or `<`, found `{t}`")));
                        }
                    }
                    if sep == Some("<") {
                        labels.reverse();
                    }
                    order = Some((kind, labels));
                }
                "relation" => {
                    let body = &line[rest_col..];
                    let (l, r) = match body.split_once('=') {
                        Some((l, r)) => (l.trim(), r.trim()),
                        None => (body.trim(), "0"),
                    };
                    if l.is_empty() || r.is_empty() {
                        return Err(err(rest_col, "empty side in relation".into()));
                    }
                    relations.push((l.to_string(), r.to_string()));
                }
                other => return Err(err(c0, format!("unknown directive `{other}`"))),
            }
        }
        let field = field.ok_or_else(|| Error::parse(1, 1, "missing `field` directive"))?;
        let (order, precedence) = order.ok_or_else(|| Error::parse(1, 1, "missing `order` directive"))?;
        let file = AlgebraFile { field, vertices, arrows, order, precedence, relations };
        file.validate(text)?;
        Ok(file)
    }

    /// Resolves labels and relation words, reporting the line of the first offending directive.
    fn validate(&self, text: &str) -> Result<()> {
        let locate = |needle: &str, directive: &str| -> (usize, usize) {
            for (i, line) in text.lines().enumerate() {
                let body = line.split('#').next().unwrap_or("");
                if body.trim_start().starts_with(directive) {
                    if let Some(c) = body.find(needle) {
                        return (i + 1, c + 1);
                    }
                }
            }
            (1, 1)
        };
        let q = self.quiver().map_err(|e| {
            let (l, c) = match &e {
                Error::UnknownVertex(v) | Error::DuplicateLabel(v) | Error::ZeroDegree(v) => locate(v, "arrow"),
                _ => (1, 1),
            };
            Error::parse(l, c, e.to_string())
        })?;
        self.order_on(&q).map_err(|e| {
            let (l, c) = locate(&self.precedence.first().cloned().unwrap_or_default(), "order");
            Error::parse(l, c, e.to_string())
        })?;
        for (l, r) in &self.relations {
            self.relation_element(&q, l, r).map_err(|e| {
                let (ln, c) = locate(l, "relation");
                Error::parse(ln, c, e.to_string())
            })?;
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.field)
    }

    pub fn quiver(&self) -> Result<Quiver> {
        Quiver::new(self.vertices.iter().cloned(), self.arrows.iter().map(|a| (a.label.clone(), a.source.clone(), a.target.clone(), a.degree)))
    }

    pub fn order_on(&self, q: &Quiver) -> Result<MonomialOrder> {
        let labels: Vec<&str> = self.precedence.iter().map(String::as_str).collect();
        MonomialOrder::descending(self.order, q, &labels)
    }

    fn relation_element(&self, q: &Quiver, l: &str, r: &str) -> Result<Element> {
        let f = self.field()?;
        let lhs = q.parse_element(f, l)?;
        let rhs = q.parse_element(f, r)?;
        lhs.sub(&rhs)
    }

    /// Relations as `lhs - rhs`.
    pub fn relation_elements(&self, q: &Quiver) -> Result<Vec<Element>> {
        self.relations.iter().map(|(l, r)| self.relation_element(q, l, r)).collect()
    }

    /// The rewrite system, with every relation oriented by the declared order.
    pub fn system(&self) -> Result<RewriteSystem> {
        let q = self.quiver()?;
        let order = self.order_on(&q)?;
        let rels = self.relation_elements(&q)?;
        RewriteSystem::from_relations(q, self.field()?, order, &rels)
    }

    /// The file describing a rewrite system, one oriented relation per rule.
    pub fn from_system(sys: &RewriteSystem) -> Self {
        let q = sys.quiver();
        AlgebraFile {
            field: sys.field().characteristic(),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowDecl {
                    label: a.label.clone(),
                    source: q.vertex_label(a.source).to_string(),
                    target: q.vertex_label(a.target).to_string(),
                    degree: a.degree,
                })
                .collect(),
            order: sys.order().kind(),
            precedence: sys.order().precedence().iter().map(|&a| q.arrow_label(a).to_string()).collect(),
            relations: sys.rules().iter().map(|r| (q.format_word(&r.lhs), q.format_element(&r.rhs))).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("field {}\nvertex {}\n", self.field, self.vertices.join(" "));
        for a in &self.arrows {
            s.push_str(&format!("arrow {}: {} -> {}", a.label, a.source, a.target));
            if a.degree != 1 {
                s.push_str(&format!(" degree {}", a.degree));
            }
            s.push('\n');
        }
        s.push_str(&format!("order {} {}\n", self.order.name(), self.precedence.join(" > ")));
        for (l, r) in &self.relations {
            s.push_str(&format!("relation {l} = {r}\n"));
        }
        s
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The stated values contradict each other; the computed value decides.
    Flag,
    Skipped,
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reference {
    /// A value stated for the M11 block.
    Stated,
    /// Recomputed by an independent method.
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub reference: Reference,
    pub expected: String,
    pub computed: String,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, reference: Reference, expected: impl Into<String>, computed: impl Into<String>) -> Self {
        let (expected, computed) = (expected.into(), computed.into());
        let status = if expected == computed { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, reference, expected, computed, details: String::new() }
    }

    pub fn boolean(name: impl Into<String>, reference: Reference, holds: bool, details: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if holds { Status::Pass } else { Status::Fail },
            reference,
            expected: "true".into(),
            computed: holds.to_string(),
            details: details.into(),
        }
    }

    pub fn with_details(mut self, details: impl Into<String>) -> Self {
        self.details = details.into();
        self
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn failed(name: impl Into<String>, reference: Reference, err: &Error) -> Self {
        Check { name: name.into(), status: Status::Fail, reference, expected: String::new(), computed: String::new(), details: format!("error: {err}") }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub field: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<String>,
    pub order: String,
    pub relations: Vec<String>,
    pub dimension: usize,
    pub projective_dims: Vec<usize>,
}

impl AlgebraSummary {
    pub fn of(alg: &Algebra) -> Self {
        let q = alg.quiver();
        let sys = alg.system();
        let ord = sys.order();
        let prec: Vec<&str> = ord.precedence().iter().map(|&a| q.arrow_label(a)).collect();
        AlgebraSummary {
            field: alg.field().characteristic(),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| {
                    let mut s = format!("{}: {} -> {}", a.label, q.vertex_label(a.source), q.vertex_label(a.target));
                    if a.degree != 1 {
                        s.push_str(&format!(" degree {}", a.degree));
                    }
                    s
                })
                .collect(),
            order: format!("{} {}", ord.kind().name(), prec.join(" > ")),
            relations: sys.rules().iter().map(|r| r.format(q)).collect(),
            dimension: alg.dim(),
            projective_dims: (0..alg.vertex_count()).map(|v| alg.pim_dim(v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub simple: String,
    pub finite: bool,
    pub period: Option<usize>,
    /// Summand vertex labels of each term.
    pub terms: Vec<Vec<String>>,
    /// `differentials[n - 1]` is `d_n` as rows of entries in word syntax.
    pub differentials: Vec<Vec<Vec<String>>>,
}

impl ResolutionReport {
    pub fn of(alg: &Algebra, res: &Resolution, period: Option<usize>) -> Self {
        let q = alg.quiver();
        ResolutionReport {
            simple: q.vertex_label(res.simple()).to_string(),
            finite: res.is_finite(),
            period,
            terms: res.terms().iter().map(|t| t.summands().iter().map(|&v| q.vertex_label(v).to_string()).collect()).collect(),
            differentials: res.differentials().iter().map(|d| d.format_entries(alg)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDim {
    pub source: String,
    pub target: String,
    pub degree: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub name: String,
    pub source: String,
    pub target: String,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub generators: Vec<GeneratorReport>,
    /// Generator names from least to most significant.
    pub order: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    /// The simple `S` of `Ext*(S, -)`, or `S,T` for a single pair.
    pub group: String,
    pub method: String,
    pub coefficients: Vec<i64>,
    pub closed_form: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub algebra: Option<AlgebraSummary>,
    pub resolutions: Vec<ResolutionReport>,
    pub ext_dims: Vec<ExtDim>,
    pub presentation: Option<PresentationReport>,
    pub hilbert: Vec<HilbertReport>,
    pub checks: Vec<Check>,
}

impl Default for Report {
    fn default() -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            algebra: None,
            resolutions: Vec::new(),
            ext_dims: Vec::new(),
            presentation: None,
            hilbert: Vec::new(),
            checks: Vec::new(),
        }
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str =
        "# two loops\nfield 3\nvertex A\narrow x: A -> A\narrow y: A -> A\norder short-major-rlex x > y\nrelation x*y = y*x\nrelation x^2 = 0\nrelation y^2\n";

    #[test]
    fn parses_directives() {
        let f = AlgebraFile::parse(SMALL).unwrap();
        assert_eq!(f.field, 3);
        assert_eq!(f.arrows.len(), 2);
        assert_eq!(f.relations[2], ("y^2".to_string(), "0".to_string()));
        let sys = f.system().unwrap();
        assert_eq!(sys.rules().len(), 3);
    }

    #[test]
    fn ascending_order_is_reversed() {
        let text = SMALL.replace("x > y", "y < x");
        assert_eq!(AlgebraFile::parse(&text).unwrap().precedence, vec!["x", "y"]);
    }

    #[test]
    fn text_round_trip() {
        let f = AlgebraFile::parse(SMALL).unwrap();
        let again = AlgebraFile::parse(&f.to_text()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn unknown_directive_has_position() {
        let err = AlgebraFile::parse("field 2\n  vertx A\n").unwrap_err();
        assert_eq!(err, Error::parse(2, 3, "unknown directive `vertx`"));
    }

    #[test]
    fn bad_arrow_word_reports_line() {
        let text = SMALL.replace("relation y^2", "relation z^2");
        match AlgebraFile::parse(&text).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 9),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn mixed_order_separators_rejected() {
        let text = "field 2\nvertex A\narrow x: A -> A\narrow y: A -> A\narrow z: A -> A\norder degree-llex x < y > z\n";
        assert!(matches!(AlgebraFile::parse(text), Err(Error::Parse { line: 6, .. })));
    }

    #[test]
    fn report_json_round_trip() {
        let mut r = Report::default();
        r.checks.push(Check::new("x", Reference::Stated, "1", "2"));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(r, back);
        assert!(!back.passed());
    }
}
