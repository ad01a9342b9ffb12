use num_rational::BigRational;

use super::quadrature::{self, Quadrature, Region};
use super::value::{ExactValue, Value};
use crate::algebroid::AlgebroidPresentation;
use crate::ce::{AlgForm, Blade};
use crate::error::{Error, Result};
use crate::scalar::rational::to_f64;
use crate::scalar::Scalar;

/// A transversal density `Ω = f · (e_1 ∧ ... ∧ e_r) ⊗ (dx^1 ∧ ... ∧ dx^n)`,
/// stored as its coefficient `f` in the frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Density<S> {
    coefficient: S,
}

impl<S: Scalar> Density<S> {
    /// Rejects coefficients that vanish: exactly for constants, at sample
    /// points otherwise.
    pub fn new(alg: &AlgebroidPresentation<S>, coefficient: S) -> Result<Self> {
        let n = alg.base_dim();
        if coefficient.nvars() != n {
            return Err(Error::Dimension(format!(
                "density over {} variables on a {n}-coordinate chart",
                coefficient.nvars()
            )));
        }
        let vanishes = match coefficient.as_rational() {
            Some(c) => num_traits::Zero::is_zero(&c),
            None => sample_points(n).iter().any(|p| match coefficient.eval_f64(p) {
                Ok(v) => v.abs() < 1e-12,
                Err(_) => true,
            }),
        };
        if vanishes {
            return Err(Error::VanishingDensity(coefficient.display_with(alg.coords())));
        }
        Ok(Density { coefficient })
    }

    /// The frame density, `f = 1`.
    pub fn canonical(alg: &AlgebroidPresentation<S>) -> Self {
        Density {
            coefficient: S::one(alg.base_dim()),
        }
    }

    pub fn coefficient(&self) -> &S {
        &self.coefficient
    }
}

fn sample_points(n: usize) -> Vec<Vec<f64>> {
    (0..24)
        .map(|k| {
            (0..n)
                .map(|i| (((k * 13 + i * 7 + 3) % 19) as f64 / 19.0 - 0.5) * 1.8)
                .collect()
        })
        .collect()
}

/// `f · θ`, where `θ(e_α) = L_{e_α} Ω / Ω = ρ_α(f)/f + tr ad(e_α) + div ρ(e_α)`.
/// Vanishes exactly when the density is invariant; avoids dividing by `f`.
pub fn invariance_residual<S: Scalar>(alg: &AlgebroidPresentation<S>, density: &Density<S>) -> AlgForm<S> {
    let n = alg.base_dim();
    let r = alg.rank();
    let f = &density.coefficient;
    AlgForm::from_terms(
        r,
        n,
        (0..r).map(|a| {
            let c = alg
                .anchor_apply(a, f)
                .plus(&f.times(&alg.trace_ad(a).plus(&alg.anchor_divergence(a))));
            (Blade::single(a), c)
        }),
    )
}

/// The modular cocycle `θ` of a density; zero iff the density is invariant.
pub fn modular_cocycle<S: Scalar>(alg: &AlgebroidPresentation<S>, density: &Density<S>) -> Result<AlgForm<S>> {
    let residual = invariance_residual(alg, density);
    if residual.vanishes() {
        return Ok(AlgForm::zero(alg.rank(), alg.base_dim()));
    }
    let inv = density
        .coefficient
        .try_recip()
        .ok_or_else(|| Error::NotInvertible(density.coefficient.display_with(alg.coords())))?;
    Ok(residual.times_scalar(&inv))
}

/// Where to integrate.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    /// The base is a point.
    Point,
    /// A box with exact bounds; integrated exactly for polynomial integrands.
    Box(Vec<(BigRational, BigRational)>),
    /// A region integrated by adaptive quadrature.
    Numeric(Region),
}

impl Domain {
    fn dimension(&self) -> Option<usize> {
        match self {
            Domain::Point => Some(0),
            Domain::Box(b) => Some(b.len()),
            Domain::Numeric(Region::Box(b)) => Some(b.len()),
            Domain::Numeric(Region::Plane(n)) => Some(*n),
        }
    }
}

/// Integrates a top-degree form against an invariant density and multiplies
/// by `i^i_power / (2π)^inv_two_pi`.
#[allow(clippy::too_many_arguments)]
pub fn integrate<S: Scalar>(
    alg: &AlgebroidPresentation<S>,
    form: &AlgForm<S>,
    density: &Density<S>,
    domain: &Domain,
    normalization: (i32, u32),
    quad: &Quadrature,
) -> Result<Value> {
    let r = alg.rank();
    let n = alg.base_dim();
    if form.rank() != r || form.nvars() != n {
        return Err(Error::AlgebroidMismatch {
            left_rank: form.rank(),
            left_vars: form.nvars(),
            right_rank: r,
            right_vars: n,
        });
    }
    if let Some((b, _)) = form.terms().find(|(b, c)| b.degree() != r && !c.vanishes()) {
        return Err(Error::Dimension(format!(
            "only top-degree forms integrate; found a degree-{} component",
            b.degree()
        )));
    }
    if domain.dimension() != Some(n) {
        return Err(Error::Dimension(format!(
            "domain does not match a {n}-coordinate chart"
        )));
    }
    let residual = invariance_residual(alg, density);
    if !residual.vanishes() {
        let theta = modular_cocycle(alg, density)
            .map(|t| t.display_with(alg.coords()))
            .unwrap_or_else(|_| residual.display_with(alg.coords()));
        return Err(Error::NonInvariantDensity(theta));
    }
    let integrand = form.coefficient(Blade::top(r)).times(&density.coefficient);
    let (ip, tp) = normalization;
    let raw = match domain {
        Domain::Point => match integrand.as_rational() {
            Some(c) => Value::Exact(ExactValue::rational(c)),
            None => Value::Approx {
                re: integrand.eval_f64(&[])?,
                im: 0.0,
                error: 0.0,
            },
        },
        Domain::Box(bounds) => match integrand.to_poly() {
            Some(p) => Value::Exact(ExactValue::rational(p.integrate_box(bounds)?)),
            None => {
                let region = Region::Box(bounds.iter().map(|(a, b)| (to_f64(a), to_f64(b))).collect());
                numeric(&integrand, &region, quad)?
            }
        },
        Domain::Numeric(region) => numeric(&integrand, region, quad)?,
    };
    Ok(raw.normalized(ip, tp))
}

fn numeric<S: Scalar>(integrand: &S, region: &Region, quad: &Quadrature) -> Result<Value> {
    let tape = integrand.to_expr().compile();
    let r = quadrature::integrate(|p| tape.eval(p), region, quad)?;
    Ok(Value::Approx {
        re: r.value,
        im: 0.0,
        error: r.error,
    })
}
