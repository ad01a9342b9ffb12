//! Topological sides of the Euler, signature and Dirac index formulas.
//!
//! Normalizations: a degree-`2j` component of `e`, `L` or `Â` carries
//! `(2π)^{-j}`; a degree-`2l` component of `ch(E)` carries `(i/2π)^l`; a
//! degree-`2k` component of `ν` carries `(2π i)^{-k}`.

use std::fmt;

use num_rational::BigRational;

use super::density::{integrate, Density, Domain};
use super::quadrature::Quadrature;
use super::value::Value;
use crate::algebroid::AlgebroidPresentation;
use crate::ce::AlgForm;
use crate::chern_weil::{
    char_class, euler_class, levi_civita, roots_identity, CharacteristicClass, GConnection, Metric, RootsIdentity,
};
use crate::error::{Error, Result};
use crate::scalar::rational::fmt_rational;
use crate::scalar::Scalar;

/// An index together with remarks on how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexReport {
    pub value: Value,
    pub notes: Vec<String>,
}

/// Shared inputs of the index evaluators.
pub struct IndexInput<'a, S: Scalar> {
    pub alg: &'a AlgebroidPresentation<S>,
    pub metric: &'a Metric<S>,
    pub density: &'a Density<S>,
    pub domain: &'a Domain,
    pub quadrature: &'a Quadrature,
}

/// A homogeneous form with its normalization `(i-power, (2π)^{-1}-power)`.
type Piece<S> = (AlgForm<S>, i32, u32);

fn components<S: Scalar>(form: &AlgForm<S>, norm: impl Fn(usize) -> Option<(i32, u32)>) -> Vec<Piece<S>> {
    let top = form.max_degree().unwrap_or(0);
    (0..=top)
        .filter_map(|d| {
            let h = form.homogeneous(d);
            if h.is_zero() {
                return None;
            }
            norm(d).map(|(i, t)| (h, i, t))
        })
        .collect()
}

fn class_norm(d: usize) -> Option<(i32, u32)> {
    (d % 2 == 0).then_some((0, (d / 2) as u32))
}

fn nu_pieces<S: Scalar>(nu: &AlgForm<S>, notes: &mut Vec<String>) -> Vec<Piece<S>> {
    let pieces = components(nu, |d| (d % 2 == 0).then_some((-((d / 2) as i32), (d / 2) as u32)));
    let odd = (0..=nu.max_degree().unwrap_or(0)).filter(|d| d % 2 == 1 && !nu.homogeneous(*d).is_zero());
    for d in odd {
        notes.push(format!("odd degree-{d} component of ν does not pair and was dropped"));
    }
    pieces
}

/// `Σ ∫ ⟨p_1 ∧ ... ∧ p_k, Ω⟩` over one homogeneous piece from each factor,
/// keeping the combinations of top degree.
fn graded_pairing<S: Scalar>(
    input: &IndexInput<S>,
    factors: &[Vec<Piece<S>>],
    notes: &mut Vec<String>,
) -> Result<Value> {
    let r = input.alg.rank();
    let n = input.alg.base_dim();
    let mut combos: Vec<Piece<S>> = vec![(AlgForm::constant(1, r, n), 0, 0)];
    for factor in factors {
        let mut next = Vec::new();
        for (acc, ai, at) in &combos {
            for (p, pi, pt) in factor {
                if acc.degree().unwrap_or(0) + p.degree().unwrap_or(0) > r {
                    continue;
                }
                let w = acc.wedge(p)?;
                if !w.is_zero() {
                    next.push((w, ai + pi, at + pt));
                }
            }
        }
        combos = next;
    }
    let mut value = Value::zero();
    let mut any = false;
    for (form, i, t) in combos.iter().filter(|(f, _, _)| f.degree() == Some(r)) {
        any = true;
        value = value.add(&integrate(
            input.alg,
            form,
            input.density,
            input.domain,
            (*i, *t),
            input.quadrature,
        )?);
    }
    if !any {
        notes.push(format!(
            "no combination of components reaches degree {r}; the index is zero"
        ));
    }
    Ok(value)
}

/// `∫_M ⟨e(A), Ω⟩` with the Euler form of the Levi-Civita connection.
pub fn index_euler<S: Scalar>(input: &IndexInput<S>) -> Result<IndexReport> {
    let e = euler_class(input.alg, input.metric)?;
    let mut notes = e.warnings.clone();
    let r = input.alg.rank();
    if r % 2 == 1 {
        return Ok(IndexReport {
            value: Value::zero(),
            notes,
        });
    }
    let value = integrate(
        input.alg,
        &e.form,
        input.density,
        input.domain,
        (0, (r / 2) as u32),
        input.quadrature,
    )?;
    notes.dedup();
    Ok(IndexReport { value, notes })
}

/// `∫_M ⟨ν ∧ L(A), Ω⟩`.
pub fn index_signature<S: Scalar>(input: &IndexInput<S>, nu: &AlgForm<S>) -> Result<IndexReport> {
    let r = input.alg.rank();
    let conn = levi_civita(input.alg, input.metric)?;
    let l = char_class(input.alg, &conn, CharacteristicClass::LGenus, r, None)?;
    let mut notes = l.warnings;
    let factors = [nu_pieces(nu, &mut notes), components(&l.form, class_norm)];
    let value = graded_pairing(input, &factors, &mut notes)?;
    Ok(IndexReport { value, notes })
}

/// `∫_M ⟨ν ∧ Â(A) ∧ ch(E), Ω⟩`.
pub fn index_dirac<S: Scalar>(input: &IndexInput<S>, bundle: &GConnection<S>, nu: &AlgForm<S>) -> Result<IndexReport> {
    let r = input.alg.rank();
    let conn = levi_civita(input.alg, input.metric)?;
    let a_hat = char_class(input.alg, &conn, CharacteristicClass::AHat, r, None)?;
    let ch = char_class(input.alg, bundle, CharacteristicClass::Ch, r, None)?;
    let mut notes = a_hat.warnings;
    notes.extend(ch.warnings);
    let ch_pieces = components(&ch.form, |d| (d % 2 == 0).then_some(((d / 2) as i32, (d / 2) as u32)));
    let factors = [
        nu_pieces(nu, &mut notes),
        components(&a_hat.form, class_norm),
        ch_pieces,
    ];
    let value = graded_pairing(input, &factors, &mut notes)?;
    Ok(IndexReport { value, notes })
}

/// Symbol classes whose Euler division has a closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSymbol {
    /// `Σ (-1)^i Λ^i A*`, the de Rham symbol.
    Euler,
    /// `Λ^+ A* - Λ^- A*`.
    Signature,
    /// The spinor symbol twisted by a bundle.
    Dirac,
    /// Any other symbol, by name.
    Other(String),
}

impl fmt::Display for IndexSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSymbol::Euler => f.write_str("euler"),
            IndexSymbol::Signature => f.write_str("signature"),
            IndexSymbol::Dirac => f.write_str("dirac"),
            IndexSymbol::Other(s) => f.write_str(s),
        }
    }
}

fn roots_note(identity: RootsIdentity, r: usize) -> Result<String> {
    let rep = roots_identity(identity, r / 2, r)?;
    let lambdas: Vec<String> = rep
        .normalizations
        .iter()
        .filter_map(|(d, l)| {
            l.as_ref()
                .map(|l: &BigRational| format!("degree {d}: {}", fmt_rational(l)))
        })
        .collect();
    Ok(format!(
        "{identity} roots identity holds (residual zero) with normalization {}",
        lambdas.join(", ")
    ))
}

/// `∫ ⟨ν ∧ ch(σ) Td(A ⊗ C) / e(A), Ω⟩`, evaluated only where the division by
/// the Euler form reduces through a roots identity to a closed form.
pub fn index_general<S: Scalar>(
    input: &IndexInput<S>,
    symbol: &IndexSymbol,
    bundle: Option<&GConnection<S>>,
    nu: &AlgForm<S>,
) -> Result<IndexReport> {
    let r = input.alg.rank();
    match symbol {
        IndexSymbol::Euler => {
            let mut rep = index_euler(input)?;
            if r % 2 == 0 {
                rep.notes.push(roots_note(RootsIdentity::GaussBonnet, r)?);
            }
            let nu0 = nu.homogeneous(0);
            if nu.terms().any(|(b, c)| b.degree() > 0 && !c.vanishes()) {
                rep.notes
                    .push("positive-degree components of ν do not pair with the top-degree Euler form".into());
            }
            if nu0.coefficient(crate::ce::Blade::EMPTY).as_rational() != Some(num_traits::One::one()) {
                let e = euler_class(input.alg, input.metric)?;
                let form = nu0.wedge(&e.form)?;
                rep.value = if r % 2 == 0 {
                    integrate(
                        input.alg,
                        &form,
                        input.density,
                        input.domain,
                        (0, (r / 2) as u32),
                        input.quadrature,
                    )?
                } else {
                    Value::zero()
                };
            }
            Ok(rep)
        }
        IndexSymbol::Signature => {
            let mut rep = index_signature(input, nu)?;
            if r % 2 == 0 {
                rep.notes.push(roots_note(RootsIdentity::Signature, r)?);
            }
            Ok(rep)
        }
        IndexSymbol::Dirac => {
            let trivial;
            let bundle = match bundle {
                Some(b) => b,
                None => {
                    trivial = GConnection::trivial(input.alg, 1);
                    &trivial
                }
            };
            index_dirac(input, bundle, nu)
        }
        IndexSymbol::Other(name) => Err(Error::UnresolvedEulerDivision {
            symbol: name.clone(),
            needed: "a roots identity writing ch(σ) Td(A ⊗ C) / e(A) as a polynomial in Pontryagin and Euler forms"
                .into(),
        }),
    }
}
