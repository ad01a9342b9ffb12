//! Algebroid forms, the Chevalley-Eilenberg complex and its cohomology.

mod cohomology;
mod differential;
mod form;

pub use cohomology::{cohomology_const, differential_matrix, find_primitive, is_cocycle, Primitive};
pub use differential::{basis, d, d_twisted, Representation};
pub use form::{AlgForm, Blade, VectorForm};

use crate::algebroid::AlgebroidMorphism;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Pull-back of a form on the target of `(f, φ)` to its source:
/// coefficients are composed with `f` and `e2^b ↦ Σ_a φ_{ba} e1^a`.
pub fn pullback_form<S: Scalar>(
    morphism: &AlgebroidMorphism<S>,
    form: &AlgForm<S>,
    source_nvars: usize,
) -> Result<AlgForm<S>> {
    let r1 = morphism.source_rank();
    if form.rank() != morphism.target_rank() || form.nvars() != morphism.base_map.len() {
        return Err(Error::InvalidMorphism(format!(
            "form of rank {} over {} coordinates does not live on the morphism target",
            form.rank(),
            form.nvars()
        )));
    }
    let pulled_duals: Vec<AlgForm<S>> = morphism
        .phi
        .iter()
        .map(|row| {
            AlgForm::from_terms(
                r1,
                source_nvars,
                row.iter().enumerate().map(|(a, s)| (Blade::single(a), s.clone())),
            )
        })
        .collect();
    let mut out = AlgForm::zero(r1, source_nvars);
    for (blade, coeff) in form.terms() {
        let c = coeff.substitute(&morphism.base_map, source_nvars);
        if c.is_zero() {
            continue;
        }
        let mut acc = AlgForm::scalar(c, r1);
        for b in blade.indices() {
            acc = acc.wedge(&pulled_duals[b])?;
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}
