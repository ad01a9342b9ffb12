//! Job documents: the TOML schema and its lowering to core values.

use algebroid_core::algebroid::presets;
use algebroid_core::scalar::rational::{int, parse_rational};
use algebroid_core::scalar::{parse_expr, parse_poly};
use algebroid_core::thom_index::{Density, Domain, Quadrature, Region};
use algebroid_core::{
    AlgForm, AlgebroidPresentation, Blade, Error, Expr, FiniteGroupoid, FiniteRep, GConnection, Metric, Poly, Scalar,
};
use num_rational::BigRational;
use serde::Deserialize;
use toml::Spanned;

/// A string from the document, remembering where it came from.
pub type Text = Spanned<String>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub scalars: Backend,
    #[serde(default)]
    pub coords: Vec<String>,
    pub algebroid: Option<AlgebroidSpec>,
    pub metric: Option<Vec<Vec<Text>>>,
    pub connection: Option<ConnectionSpec>,
    pub density: Option<Text>,
    pub domain: Option<DomainSpec>,
    pub quadrature: Option<QuadratureSpec>,
    pub groupoid: Option<GroupoidSpec>,
    #[serde(default, rename = "job")]
    pub jobs: Vec<Job>,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Poly,
    Expr,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidSpec {
    pub preset: Option<String>,
    pub rank: Option<usize>,
    /// `anchor[α][i] = ρ^i_α`.
    pub anchor: Option<Vec<Vec<Text>>>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
}

/// `[e_i, e_j] = Σ_γ value[γ] e_γ`, one-based.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub pair: [usize; 2],
    pub value: Vec<Text>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionSpec {
    pub preset: Option<String>,
    pub rank: Option<usize>,
    /// `omega[α]` is the matrix `ω_α`.
    pub omega: Option<Vec<Vec<Vec<Text>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub bounds: Option<Vec<[Text; 2]>>,
    #[serde(default)]
    pub numeric: bool,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Point,
    Box,
    Plane,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    pub tolerance: Option<f64>,
    pub budget: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidSpec {
    pub preset: Option<String>,
    /// Objects of the pair groupoid, or of an explicit groupoid.
    pub objects: Option<usize>,
    /// Order of the cyclic group.
    pub order: Option<usize>,
    /// Multiplication table of a group.
    pub table: Option<Vec<Vec<usize>>>,
    /// `[source, target]` per arrow.
    pub arrows: Option<Vec<[usize; 2]>>,
    pub units: Option<Vec<usize>>,
    pub inverses: Option<Vec<usize>>,
    /// `[g, h, g∘h]` for each composable pair.
    pub compose: Option<Vec<[usize; 3]>>,
    pub weights: Option<Vec<Text>>,
    pub representation: Option<GroupoidRepSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidRepSpec {
    pub dims: Vec<usize>,
    pub matrices: Vec<Vec<Vec<Text>>>,
}

/// One requested computation.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub kind: String,
    pub class: Option<String>,
    pub truncate: Option<usize>,
    pub symbol: Option<String>,
    pub coefficients: Option<String>,
    pub nu: Option<Vec<Term>>,
    pub form: Option<Vec<Term>>,
    pub max_degree: Option<usize>,
    #[serde(default)]
    pub table: bool,
}

/// `coeff · e^{blade}`, blade indices one-based.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub blade: Vec<usize>,
    pub coeff: Text,
}

pub const KINDS: [&str; 8] = [
    "validate",
    "cohomology",
    "charclass",
    "curvature",
    "index",
    "groupoid",
    "thom-check",
    "modular",
];

/// A failure with the exit status it maps to.
#[derive(Debug)]
pub struct Diagnostic {
    pub exit: u8,
    pub message: String,
}

impl Diagnostic {
    pub fn parse(message: impl Into<String>) -> Self {
        Diagnostic {
            exit: 2,
            message: message.into(),
        }
    }

    pub fn semantic(message: impl Into<String>) -> Self {
        Diagnostic {
            exit: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Diagnostic {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Diagnostic::parse(e.to_string()),
            _ => Diagnostic::semantic(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Diagnostic>;

/// Line and column (both one-based) of a byte offset.
pub fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Parses TOML, reporting syntax and schema errors with their position.
pub fn parse_document(source: &str) -> Result<Document> {
    let doc: Document = toml::from_str(source).map_err(|e| Diagnostic::parse(e.to_string().trim_end().to_string()))?;
    for (i, job) in doc.jobs.iter().enumerate() {
        if !KINDS.contains(&job.kind.as_str()) {
            return Err(Diagnostic::parse(format!(
                "job {}: unknown kind `{}` (expected one of {})",
                i + 1,
                job.kind,
                KINDS.join(", ")
            )));
        }
    }
    Ok(doc)
}

/// Scalars the document can be read into.
pub trait DocScalar: Scalar {
    fn parse_str(input: &str, names: &[String]) -> algebroid_core::Result<Self>;
}

impl DocScalar for Poly {
    fn parse_str(input: &str, names: &[String]) -> algebroid_core::Result<Self> {
        parse_poly(input, names)
    }
}

impl DocScalar for Expr {
    fn parse_str(input: &str, names: &[String]) -> algebroid_core::Result<Self> {
        parse_expr(input, names)
    }
}

/// Everything the jobs of one document work on.
pub struct Context<'a, S: Scalar> {
    pub source: &'a str,
    pub doc: &'a Document,
    pub coords: Vec<String>,
    pub algebroid: Option<AlgebroidPresentation<S>>,
    pub metric: Option<Metric<S>>,
    pub density: Option<Density<S>>,
    pub domain: Option<Domain>,
    pub quadrature: Quadrature,
    pub groupoid: Option<(FiniteGroupoid, FiniteRep, Option<Vec<BigRational>>)>,
}

impl<'a, S: DocScalar> Context<'a, S> {
    pub fn build(source: &'a str, doc: &'a Document, overrides: QuadratureSpec) -> Result<Self> {
        let mut ctx = Context {
            source,
            doc,
            coords: doc.coords.clone(),
            algebroid: None,
            metric: None,
            density: None,
            domain: None,
            quadrature: Quadrature::default(),
            groupoid: None,
        };
        if let Some(spec) = &doc.algebroid {
            let alg = ctx.algebroid(spec)?;
            ctx.coords = alg.coords().to_vec();
            ctx.algebroid = Some(alg);
        }
        if let Some(g) = &doc.metric {
            let n = ctx.coords.len();
            let g = ctx.matrix(g)?;
            ctx.metric = Some(Metric::new(g, n)?);
        }
        if let Some(f) = &doc.density {
            let alg = ctx.require_algebroid()?;
            let f = ctx.scalar(f)?;
            ctx.density = Some(Density::new(alg, f)?);
        }
        if let Some(d) = &doc.domain {
            ctx.domain = Some(ctx.domain(d)?);
        }
        let q = doc.quadrature.as_ref();
        ctx.quadrature = Quadrature {
            tolerance: overrides
                .tolerance
                .or(q.and_then(|q| q.tolerance))
                .unwrap_or(ctx.quadrature.tolerance),
            budget: overrides
                .budget
                .or(q.and_then(|q| q.budget))
                .unwrap_or(ctx.quadrature.budget),
        };
        if ctx.quadrature.tolerance.is_nan() || ctx.quadrature.tolerance <= 0.0 {
            return Err(Diagnostic::parse("quadrature tolerance must be positive"));
        }
        if let Some(g) = &doc.groupoid {
            ctx.groupoid = Some(ctx.groupoid(g)?);
        }
        Ok(ctx)
    }

    fn position(&self, t: &Text) -> String {
        let (line, col) = line_col(self.source, t.span().start);
        format!("line {line}, column {col}")
    }

    /// Reads a scalar, locating parse errors inside the document.
    pub fn scalar(&self, t: &Text) -> Result<S> {
        S::parse_str(t.get_ref(), &self.coords).map_err(|e| match e {
            Error::Parse { column, message } => {
                // Skip the opening quote.
                let (line, col) = line_col(self.source, t.span().start + column);
                Diagnostic::parse(format!("parse error at line {line}, column {col}: {message}"))
            }
            other => Diagnostic::semantic(format!("{}: {other}", self.position(t))),
        })
    }

    pub fn rational(&self, t: &Text) -> Result<BigRational> {
        parse_rational(t.get_ref()).map_err(|e| Diagnostic::parse(format!("{}: {e}", self.position(t))))
    }

    fn matrix(&self, rows: &[Vec<Text>]) -> Result<Vec<Vec<S>>> {
        rows.iter()
            .map(|row| row.iter().map(|t| self.scalar(t)).collect())
            .collect()
    }

    pub fn require_algebroid(&self) -> Result<&AlgebroidPresentation<S>> {
        self.algebroid
            .as_ref()
            .ok_or_else(|| Diagnostic::semantic("the document declares no [algebroid]"))
    }

    fn algebroid(&self, spec: &AlgebroidSpec) -> Result<AlgebroidPresentation<S>> {
        if let Some(name) = &spec.preset {
            if spec.anchor.is_some() || !spec.brackets.is_empty() {
                return Err(Diagnostic::parse(
                    "algebroid: `preset` excludes `anchor` and `brackets`",
                ));
            }
            return Ok(match name.as_str() {
                "su2" => presets::su2(),
                "aff1" => presets::aff1(),
                "so2_plane" => presets::so2_plane(),
                "so3_space" => presets::so3_space(),
                "tangent" => AlgebroidPresentation::tangent_named(self.coords.clone()),
                "abelian" => presets::abelian(
                    spec.rank
                        .ok_or_else(|| Diagnostic::parse("abelian preset needs `rank`"))?,
                ),
                other => return Err(Diagnostic::parse(format!("unknown algebroid preset `{other}`"))),
            });
        }
        let n = self.coords.len();
        let anchor = match (&spec.anchor, spec.rank) {
            (Some(a), _) => self.matrix(a)?,
            (None, Some(r)) => vec![vec![S::zero(n); n]; r],
            (None, None) => return Err(Diagnostic::parse("algebroid needs `preset`, `anchor` or `rank`")),
        };
        if let Some(r) = spec.rank {
            if r != anchor.len() {
                return Err(Diagnostic::semantic(format!(
                    "rank {r} but {} anchor rows",
                    anchor.len()
                )));
            }
        }
        let rank = anchor.len();
        let mut brackets = Vec::new();
        for b in &spec.brackets {
            let [i, j] = b.pair;
            if i == 0 || j == 0 || i > rank || j > rank {
                return Err(Diagnostic::semantic(format!(
                    "bracket [e{i}, e{j}] outside frame 1..{rank}"
                )));
            }
            let value = b.value.iter().map(|t| self.scalar(t)).collect::<Result<Vec<_>>>()?;
            brackets.push(((i - 1, j - 1), value));
        }
        Ok(AlgebroidPresentation::new(self.coords.clone(), anchor, brackets)?)
    }

    /// The document's connection, if any, on the given algebroid.
    pub fn connection(&self, alg: &AlgebroidPresentation<S>) -> Result<Option<GConnection<S>>> {
        let Some(spec) = &self.doc.connection else {
            return Ok(None);
        };
        let n = alg.base_dim();
        Ok(Some(match (spec.preset.as_deref(), &spec.omega) {
            (Some(_), Some(_)) => return Err(Diagnostic::parse("connection: `preset` excludes `omega`")),
            (Some("adjoint"), None) => GConnection::adjoint(alg),
            (Some("trivial"), None) => GConnection::trivial(alg, spec.rank.unwrap_or(1)),
            (Some("levi-civita"), None) => {
                let metric = self.metric_or_identity(alg);
                algebroid_core::chern_weil::levi_civita(alg, &metric)?
            }
            (Some(other), None) => return Err(Diagnostic::parse(format!("unknown connection preset `{other}`"))),
            (None, Some(omega)) => {
                let omega = omega.iter().map(|w| self.matrix(w)).collect::<Result<Vec<_>>>()?;
                GConnection::new(alg.rank(), n, omega)?
            }
            (None, None) => return Err(Diagnostic::parse("connection needs `preset` or `omega`")),
        }))
    }

    pub fn metric_or_identity(&self, alg: &AlgebroidPresentation<S>) -> Metric<S> {
        self.metric
            .clone()
            .unwrap_or_else(|| Metric::identity(alg.rank(), alg.base_dim()))
    }

    pub fn density_or_canonical(&self, alg: &AlgebroidPresentation<S>) -> Density<S> {
        self.density.clone().unwrap_or_else(|| Density::canonical(alg))
    }

    /// A form from `(blade, coeff)` terms on the algebroid.
    pub fn form(&self, alg: &AlgebroidPresentation<S>, terms: &[Term]) -> Result<AlgForm<S>> {
        let r = alg.rank();
        let mut out = AlgForm::zero(r, alg.base_dim());
        for t in terms {
            if t.blade.iter().any(|&i| i == 0 || i > r) {
                return Err(Diagnostic::semantic(format!(
                    "{}: blade {:?} outside frame 1..{r}",
                    self.position(&t.coeff),
                    t.blade
                )));
            }
            let zero_based: Vec<usize> = t.blade.iter().map(|i| i - 1).collect();
            let blade = Blade::from_indices(&zero_based)?;
            // Reordering the blade indices is a permutation with a sign.
            let inversions = (0..zero_based.len())
                .flat_map(|a| (a + 1..zero_based.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| zero_based[a] > zero_based[b])
                .count();
            let c = self.scalar(&t.coeff)?;
            let c = if inversions % 2 == 1 { c.negated() } else { c };
            out = out.add(&AlgForm::monomial(blade, c, r))?;
        }
        Ok(out)
    }

    fn domain(&self, spec: &DomainSpec) -> Result<Domain> {
        let n = self.coords.len();
        let bounds = |ctx: &Self| -> Result<Vec<(BigRational, BigRational)>> {
            let b = spec
                .bounds
                .as_ref()
                .ok_or_else(|| Diagnostic::parse("box domain needs `bounds`"))?;
            if b.len() != n {
                return Err(Diagnostic::semantic(format!("{} bounds for {n} coordinates", b.len())));
            }
            b.iter()
                .map(|[lo, hi]| Ok((ctx.rational(lo)?, ctx.rational(hi)?)))
                .collect()
        };
        Ok(match spec.kind {
            DomainKind::Point => Domain::Point,
            DomainKind::Plane => Domain::Numeric(Region::Plane(n)),
            DomainKind::Box if spec.numeric => Domain::Numeric(Region::Box(
                bounds(self)?
                    .iter()
                    .map(|(a, b)| {
                        (
                            algebroid_core::scalar::rational::to_f64(a),
                            algebroid_core::scalar::rational::to_f64(b),
                        )
                    })
                    .collect(),
            )),
            DomainKind::Box => Domain::Box(bounds(self)?),
        })
    }

    fn groupoid(&self, spec: &GroupoidSpec) -> Result<(FiniteGroupoid, FiniteRep, Option<Vec<BigRational>>)> {
        let grp = match spec.preset.as_deref() {
            Some("pair") => FiniteGroupoid::pair(
                spec.objects
                    .ok_or_else(|| Diagnostic::parse("pair groupoid needs `objects`"))?,
            ),
            Some("cyclic") => FiniteGroupoid::cyclic(
                spec.order
                    .ok_or_else(|| Diagnostic::parse("cyclic group needs `order`"))?,
            ),
            Some(other) => return Err(Diagnostic::parse(format!("unknown groupoid preset `{other}`"))),
            None => match (&spec.table, &spec.arrows) {
                (Some(t), None) => FiniteGroupoid::group(t)?,
                (None, Some(arrows)) => {
                    let missing = |k: &str| Diagnostic::parse(format!("explicit groupoid needs `{k}`"));
                    FiniteGroupoid::new(
                        spec.objects.ok_or_else(|| missing("objects"))?,
                        arrows.iter().map(|[s, t]| (*s, *t)).collect(),
                        spec.units.clone().ok_or_else(|| missing("units"))?,
                        spec.inverses.clone().ok_or_else(|| missing("inverses"))?,
                        spec.compose
                            .as_ref()
                            .ok_or_else(|| missing("compose"))?
                            .iter()
                            .map(|[g, h, gh]| ((*g, *h), *gh)),
                    )?
                }
                _ => {
                    return Err(Diagnostic::parse(
                        "groupoid needs exactly one of `preset`, `table`, `arrows`",
                    ))
                }
            },
        };
        let rep = match &spec.representation {
            None => FiniteRep::trivial(&grp),
            Some(r) => {
                let matrices = r
                    .matrices
                    .iter()
                    .map(|m| {
                        m.iter()
                            .map(|row| row.iter().map(|t| self.rational(t)).collect())
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<Vec<BigRational>>>>>()?;
                FiniteRep::new(&grp, r.dims.clone(), matrices)?
            }
        };
        let weights = match &spec.weights {
            None => None,
            Some(w) => Some(w.iter().map(|t| self.rational(t)).collect::<Result<Vec<_>>>()?),
        };
        Ok((grp, rep, weights))
    }
}

/// The unit weights `Ω = 1` on every object.
pub fn unit_weights(grp: &FiniteGroupoid) -> Vec<BigRational> {
    vec![int(1); grp.n_objects()]
}
