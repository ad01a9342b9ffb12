//! Execution of individual jobs.

use std::str::FromStr;

use algebroid_core::ce::{cohomology_const, Representation};
use algebroid_core::chern_weil::{char_class, curvature, levi_civita, CharacteristicClass};
use algebroid_core::groupoid::{check_weights, convolve, groupoid_cohomology, trace_counterexample};
use algebroid_core::scalar::rational::fmt_rational;
use algebroid_core::thom_index::{
    index_general, modular_cocycle, thom_integral, Domain, IndexInput, IndexSymbol, PullbackModel, Value,
};
use algebroid_core::{AlgForm, AlgebroidPresentation, Blade, GConnection, Scalar};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value as Json};

use crate::document::{unit_weights, Context, Diagnostic, DocScalar, Job, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error(u8),
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error(code) => code,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error(_) => "error",
        }
    }
}

/// The result of one job, rendered both ways.
pub struct JobOutput {
    pub kind: String,
    pub status: Status,
    pub summary: String,
    pub details: Vec<String>,
    pub data: Json,
}

impl JobOutput {
    fn ok(kind: &str, summary: String, details: Vec<String>, data: Json) -> Self {
        JobOutput {
            kind: kind.into(),
            status: Status::Ok,
            summary,
            details,
            data,
        }
    }

    pub fn failed(kind: &str, d: Diagnostic) -> Self {
        JobOutput {
            kind: kind.into(),
            status: Status::Error(d.exit),
            summary: d.message.clone(),
            details: Vec::new(),
            data: json!({ "message": d.message }),
        }
    }
}

/// Overrides from the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct Flags {
    pub truncate: Option<usize>,
}

pub fn run_job<S: DocScalar>(ctx: &Context<S>, job: &Job, flags: Flags) -> JobOutput {
    let kind = job.kind.as_str();
    let out = match kind {
        "validate" => validate(ctx),
        "cohomology" => cohomology(ctx, job),
        "charclass" => charclass(ctx, job, flags),
        "curvature" => curvature_job(ctx),
        "index" => index(ctx, job),
        "groupoid" => groupoid(ctx, job),
        "thom-check" => thom_check(ctx, job),
        "modular" => modular(ctx),
        other => Err(Diagnostic::parse(format!("unknown job kind `{other}`"))),
    };
    out.unwrap_or_else(|d| JobOutput::failed(kind, d))
}

fn form_json<S: Scalar>(form: &AlgForm<S>, names: &[String]) -> Json {
    Json::Array(
        form.terms()
            .map(|(b, c)| {
                let blade: Vec<usize> = b.indices().iter().map(|i| i + 1).collect();
                json!({ "blade": blade, "coeff": c.display_with(names) })
            })
            .collect(),
    )
}

fn value_json(v: &Value) -> Json {
    let (re, im) = v.to_complex();
    json!({
        "exact": v.is_exact(),
        "value": v.to_string(),
        "re": re,
        "im": im,
        "error": v.error(),
    })
}

fn valid_algebroid<'c, S: DocScalar>(ctx: &'c Context<S>) -> Result<&'c AlgebroidPresentation<S>> {
    let alg = ctx.require_algebroid()?;
    if !alg.validate().is_valid() {
        return Err(Diagnostic::semantic(
            "the algebroid fails validation; run `validate` for the report",
        ));
    }
    Ok(alg)
}

fn validate<S: DocScalar>(ctx: &Context<S>) -> Result<JobOutput> {
    let alg = ctx.require_algebroid()?;
    let report = alg.validate();
    let violations: Vec<Json> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "kind": v.kind.to_string(),
                "indices": v.indices,
                "component": v.component,
                "residual": v.residual.display_with(alg.coords()),
            })
        })
        .collect();
    let data = json!({ "valid": report.is_valid(), "violations": violations });
    if report.is_valid() {
        return Ok(JobOutput::ok("validate", "valid".into(), Vec::new(), data));
    }
    let lines = report.render(alg.coords());
    Ok(JobOutput {
        kind: "validate".into(),
        status: Status::Violation,
        summary: format!("{} violation(s)", lines.len()),
        details: lines,
        data,
    })
}

fn connection_or_levi_civita<S: DocScalar>(ctx: &Context<S>, alg: &AlgebroidPresentation<S>) -> Result<GConnection<S>> {
    match ctx.connection(alg)? {
        Some(c) => Ok(c),
        None => Ok(levi_civita(alg, &ctx.metric_or_identity(alg))?),
    }
}

fn cohomology<S: DocScalar>(ctx: &Context<S>, job: &Job) -> Result<JobOutput> {
    let alg = valid_algebroid(ctx)?;
    if alg.base_dim() > 0 {
        return Err(Diagnostic::semantic(
            "cohomology is computed over a point only; over a chart, check explicit forms instead",
        ));
    }
    let rep = match job.coefficients.as_deref().unwrap_or("trivial") {
        "trivial" => Representation::trivial(alg, 1),
        "connection" => {
            let conn = ctx
                .connection(alg)?
                .ok_or_else(|| Diagnostic::semantic("coefficients = \"connection\" needs a [connection]"))?;
            Representation::new(alg, conn)?
        }
        other => return Err(Diagnostic::parse(format!("unknown coefficients `{other}`"))),
    };
    let betti = cohomology_const(alg, &rep)?;
    let shown: Vec<String> = betti.iter().map(usize::to_string).collect();
    Ok(JobOutput::ok(
        "cohomology",
        format!("betti = ({})", shown.join(", ")),
        Vec::new(),
        json!({ "betti": betti }),
    ))
}

fn curvature_job<S: DocScalar>(ctx: &Context<S>) -> Result<JobOutput> {
    let alg = valid_algebroid(ctx)?;
    let conn = connection_or_levi_civita(ctx, alg)?;
    let r = curvature(alg, &conn)?;
    let m = r.size();
    let names = alg.coords();
    let mut details = Vec::new();
    let mut entries = Vec::new();
    for i in 0..m {
        let mut row = Vec::new();
        for j in 0..m {
            let e = r.entry(i, j);
            if !e.vanishes() {
                details.push(format!("R[{},{}] = {}", i + 1, j + 1, e.display_with(names)));
            }
            row.push(form_json(e, names));
        }
        entries.push(Json::Array(row));
    }
    let flat = r.vanishes();
    let summary = if flat {
        "flat".to_string()
    } else {
        format!("{m}x{m} curvature")
    };
    Ok(JobOutput::ok(
        "curvature",
        summary,
        details,
        json!({ "flat": flat, "matrix": entries }),
    ))
}

fn charclass<S: DocScalar>(ctx: &Context<S>, job: &Job, flags: Flags) -> Result<JobOutput> {
    let alg = valid_algebroid(ctx)?;
    let name = job.class.as_deref().unwrap_or("ch");
    let class = CharacteristicClass::from_str(name)?;
    let truncate = flags.truncate.or(job.truncate).unwrap_or(alg.rank());
    let conn = connection_or_levi_civita(ctx, alg)?;
    let metric = ctx.metric_or_identity(alg);
    let result = char_class(alg, &conn, class, truncate, Some(&metric))?;
    let names = alg.coords();
    let mut details: Vec<String> = (0..=truncate.min(alg.rank()))
        .filter_map(|d| {
            let h = result.form.homogeneous(d);
            (!h.is_zero()).then(|| format!("degree {d}: {}", h.display_with(names)))
        })
        .collect();
    details.extend(result.warnings.iter().map(|w| format!("warning: {w}")));
    Ok(JobOutput::ok(
        "charclass",
        format!("{class} = {}", result.form.display_with(names)),
        details,
        json!({
            "class": class.to_string(),
            "truncate": truncate,
            "form": form_json(&result.form, names),
            "warnings": result.warnings,
        }),
    ))
}

fn domain<S: DocScalar>(ctx: &Context<S>, alg: &AlgebroidPresentation<S>) -> Result<Domain> {
    match &ctx.domain {
        Some(d) => Ok(d.clone()),
        None if alg.base_dim() == 0 => Ok(Domain::Point),
        None => Err(Diagnostic::semantic("integration over a chart needs a [domain]")),
    }
}

fn index<S: DocScalar>(ctx: &Context<S>, job: &Job) -> Result<JobOutput> {
    let alg = valid_algebroid(ctx)?;
    let symbol = match job.symbol.as_deref().unwrap_or("euler") {
        "euler" => IndexSymbol::Euler,
        "signature" => IndexSymbol::Signature,
        "dirac" => IndexSymbol::Dirac,
        other => IndexSymbol::Other(other.to_string()),
    };
    let metric = ctx.metric_or_identity(alg);
    let density = ctx.density_or_canonical(alg);
    let domain = domain(ctx, alg)?;
    let nu = match &job.nu {
        Some(terms) => ctx.form(alg, terms)?,
        None => AlgForm::constant(1, alg.rank(), alg.base_dim()),
    };
    let bundle = ctx.connection(alg)?;
    let input = IndexInput {
        alg,
        metric: &metric,
        density: &density,
        domain: &domain,
        quadrature: &ctx.quadrature,
    };
    let report = index_general(&input, &symbol, bundle.as_ref(), &nu)?;
    Ok(JobOutput::ok(
        "index",
        format!("{symbol} index = {}", report.value),
        report.notes.iter().map(|n| format!("note: {n}")).collect(),
        json!({
            "symbol": symbol.to_string(),
            "value": value_json(&report.value),
            "notes": report.notes,
        }),
    ))
}

fn thom_check<S: DocScalar>(ctx: &Context<S>, job: &Job) -> Result<JobOutput> {
    let alg = valid_algebroid(ctx)?;
    let alpha = match &job.form {
        Some(terms) => ctx.form(alg, terms)?,
        None => AlgForm::monomial(Blade::top(alg.rank()), S::one(alg.base_dim()), alg.rank()),
    };
    let density = ctx.density_or_canonical(alg);
    let domain = domain(ctx, alg)?;
    let model = PullbackModel::cotangent(alg);
    let (base, total) = thom_integral(&model, &alpha, &density, &domain, &ctx.quadrature)?;
    let agree = match (&base, &total) {
        (Value::Exact(a), Value::Exact(b)) => a == b,
        _ => {
            let (a, b) = (base.to_complex(), total.to_complex());
            let slack = (base.error() + total.error()).max(ctx.quadrature.tolerance);
            (a.0 - b.0).abs() <= slack && (a.1 - b.1).abs() <= slack
        }
    };
    Ok(JobOutput {
        kind: "thom-check".into(),
        status: if agree { Status::Ok } else { Status::Violation },
        summary: if agree {
            "integrals agree".into()
        } else {
            "integrals differ".into()
        },
        details: vec![format!("base integral: {base}"), format!("Thom side:     {total}")],
        data: json!({ "agree": agree, "base": value_json(&base), "thom": value_json(&total) }),
    })
}

fn modular<S: DocScalar>(ctx: &Context<S>) -> Result<JobOutput> {
    let alg = valid_algebroid(ctx)?;
    let density = ctx.density_or_canonical(alg);
    let theta = modular_cocycle(alg, &density)?;
    let unimodular = theta.vanishes();
    Ok(JobOutput::ok(
        "modular",
        format!("θ = {}", theta.display_with(alg.coords())),
        vec![if unimodular {
            "density is invariant".into()
        } else {
            "density is not invariant".into()
        }],
        json!({ "unimodular": unimodular, "cocycle": form_json(&theta, alg.coords()) }),
    ))
}

fn delta(n: usize, a: usize) -> Vec<BigRational> {
    (0..n)
        .map(|b| {
            if a == b {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

fn groupoid<S: DocScalar>(ctx: &Context<S>, job: &Job) -> Result<JobOutput> {
    let (grp, rep, weights) = ctx
        .groupoid
        .as_ref()
        .ok_or_else(|| Diagnostic::semantic("the document declares no [groupoid]"))?;
    let max_degree = job.max_degree.unwrap_or(3);
    let betti = groupoid_cohomology(grp, rep, max_degree);
    let shown: Vec<String> = betti.iter().map(usize::to_string).collect();
    let na = grp.n_arrows();
    let mut details = vec![
        format!(
            "objects: {}, arrows: {na}, orbits: {}",
            grp.n_objects(),
            grp.num_orbits()
        ),
        format!("betti = ({})", shown.join(", ")),
    ];
    let mut table = Vec::new();
    if job.table {
        for a in 0..na {
            for b in 0..na {
                let product = convolve(grp, &delta(na, a), &delta(na, b))?;
                let support: Vec<String> = product
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| {
                        if v.is_one() {
                            format!("δ{c}")
                        } else {
                            format!("{}·δ{c}", fmt_rational(v))
                        }
                    })
                    .collect();
                if !support.is_empty() {
                    details.push(format!("δ{a} * δ{b} = {}", support.join(" + ")));
                    table.push(json!([a, b, support.join(" + ")]));
                }
            }
        }
    }
    let weights = weights.clone().unwrap_or_else(|| unit_weights(grp));
    let mut status = Status::Ok;
    let trace = match check_weights(grp, &weights) {
        Ok(()) => {
            details.push("trace: weights are orbit-constant; τ is a trace".into());
            json!({ "invariant": true })
        }
        Err(e) => {
            status = Status::Violation;
            details.push(format!("trace: {e}"));
            match trace_counterexample(grp, &weights)? {
                Some(ce) => {
                    let arrow = |f: &[BigRational]| f.iter().position(|v| !v.is_zero()).unwrap_or(0);
                    let (g, h) = (arrow(&ce.f1), arrow(&ce.f2));
                    details.push(format!(
                        "counterexample: τ(δ{g} * δ{h}) = {} but τ(δ{h} * δ{g}) = {}",
                        fmt_rational(&ce.forward),
                        fmt_rational(&ce.backward)
                    ));
                    json!({
                        "invariant": false,
                        "message": e.to_string(),
                        "counterexample": {
                            "f1": g, "f2": h,
                            "forward": fmt_rational(&ce.forward),
                            "backward": fmt_rational(&ce.backward),
                        },
                    })
                }
                None => json!({ "invariant": false, "message": e.to_string() }),
            }
        }
    };
    Ok(JobOutput {
        kind: "groupoid".into(),
        status,
        summary: format!("betti = ({})", shown.join(", ")),
        details,
        data: json!({
            "objects": grp.n_objects(),
            "arrows": na,
            "orbits": grp.num_orbits(),
            "betti": betti,
            "convolution": table,
            "trace": trace,
        }),
    })
}
