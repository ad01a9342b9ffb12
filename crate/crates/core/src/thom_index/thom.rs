//! Formal Thom-class calculus on pull-back algebroids.
//!
//! The Thom generator `Th` is a symbol of degree `m` (the fibre rank) with
//! `∫_fibre Th = 1`; it is not represented by a bump form.

use super::density::{integrate, invariance_residual, Density, Domain};
use super::quadrature::Quadrature;
use super::symplectic::PullbackModel;
use super::value::Value;
use crate::algebroid::AlgebroidMorphism;
use crate::ce::{pullback_form, AlgForm, Blade};
use crate::error::{Error, Result};
use crate::scalar::{det, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
    Unoriented,
}

/// `plain + thom ∧ Th`, where `Th` spans the frame indices
/// `vertical_start .. vertical_start + fiber_rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThomForm<S: Scalar> {
    pub plain: AlgForm<S>,
    pub thom: AlgForm<S>,
    pub vertical_start: usize,
    pub fiber_rank: usize,
}

impl<S: Scalar> ThomForm<S> {
    pub fn zero(rank: usize, nvars: usize, vertical_start: usize, fiber_rank: usize) -> Self {
        ThomForm {
            plain: AlgForm::zero(rank, nvars),
            thom: AlgForm::zero(rank, nvars),
            vertical_start,
            fiber_rank,
        }
    }

    /// The bare generator `Th` on the fibre `R^m`, seen as its own tangent
    /// algebroid.
    pub fn generator(m: usize) -> Self {
        ThomForm {
            plain: AlgForm::zero(m, m),
            thom: AlgForm::constant(1, m, m),
            vertical_start: 0,
            fiber_rank: m,
        }
    }

    /// `(a + b Th) ∧ (c + d Th) = ac + (a d + (-1)^{m deg c} b c) Th`;
    /// `Th ∧ Th = 0`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if (self.vertical_start, self.fiber_rank) != (other.vertical_start, other.fiber_rank) {
            return Err(Error::Dimension("Thom forms with different fibres".into()));
        }
        let plain = self.plain.wedge(&other.plain)?;
        let mut thom = self.plain.wedge(&other.thom)?;
        for (b, c) in other.plain.terms() {
            let piece = self.thom.wedge(&AlgForm::monomial(*b, c.clone(), other.plain.rank()))?;
            thom = if self.fiber_rank * b.degree() % 2 == 1 {
                thom.sub(&piece)?
            } else {
                thom.add(&piece)?
            };
        }
        Ok(ThomForm {
            plain,
            thom,
            vertical_start: self.vertical_start,
            fiber_rank: self.fiber_rank,
        })
    }
}

/// `Th(E)` for the trivial bundle of the model, as `±1 · Th`.
pub fn thom_class<S: Scalar>(model: &PullbackModel<S>, orientation: Orientation) -> Result<ThomForm<S>> {
    let sign = match orientation {
        Orientation::Positive => 1,
        Orientation::Negative => -1,
        Orientation::Unoriented => return Err(Error::Unoriented),
    };
    let (rank, nvars) = (model.total.rank(), model.total.base_dim());
    let mut out = ThomForm::zero(rank, nvars, model.base_rank(), model.fiber_rank);
    out.thom = AlgForm::constant(sign, rank, nvars);
    Ok(out)
}

/// `α ↦ π^*α ∧ Th`.
pub fn thom_map<S: Scalar>(model: &PullbackModel<S>, alpha: &AlgForm<S>) -> Result<ThomForm<S>> {
    let mut out = thom_class(model, Orientation::Positive)?;
    out.thom = model.horizontal_lift(alpha)?;
    Ok(out)
}

/// Integration over the fibres: `π^*α ∧ Th ↦ α`. Terms with vertical
/// generators next to `Th` exceed the fibre degree and drop out; a plain
/// part with a full vertical component is not compactly supported.
pub fn fiber_integrate<S: Scalar>(model: &PullbackModel<S>, t: &ThomForm<S>) -> Result<AlgForm<S>> {
    let vertical = model.vertical_top();
    if (t.vertical_start, t.fiber_rank) != (model.base_rank(), model.fiber_rank) {
        return Err(Error::Dimension("Thom form does not live on this pull-back".into()));
    }
    if let Some((b, _)) = t
        .plain
        .terms()
        .find(|(b, c)| b.0 & vertical.0 == vertical.0 && !c.vanishes())
    {
        return Err(Error::NotCompactVertical(format!(
            "plain term on {:?} has full fibre degree",
            b.indices().iter().map(|i| i + 1).collect::<Vec<_>>()
        )));
    }
    let (r, n) = (model.base_rank(), model.base.base_dim());
    Ok(AlgForm::from_terms(
        r,
        n,
        t.thom
            .terms()
            .filter(|(b, _)| b.0 & vertical.0 == 0)
            .map(|(b, c)| (*b, model.at_zero_section(c))),
    ))
}

/// Pull-back along a morphism whose vertical block (from the source fibre
/// generators at `source_start` to the target's) is constant and invertible;
/// `Th` picks up the sign of its determinant.
pub fn pullback_thom<S: Scalar>(
    morphism: &AlgebroidMorphism<S>,
    t: &ThomForm<S>,
    source_nvars: usize,
    source_start: usize,
) -> Result<ThomForm<S>> {
    let m = t.fiber_rank;
    let block: Vec<Vec<S>> = (0..m)
        .map(|j| {
            (0..m)
                .map(|i| {
                    morphism
                        .phi
                        .get(t.vertical_start + j)
                        .and_then(|row| row.get(source_start + i))
                        .cloned()
                        .ok_or_else(|| Error::InvalidMorphism("vertical block out of range".into()))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let d = det(&block, source_nvars);
    let d = d
        .as_rational()
        .ok_or_else(|| Error::NonConstant("vertical block of the morphism".into()))?;
    if num_traits::Zero::is_zero(&d) {
        return Err(Error::InvalidMorphism("vertical block is singular".into()));
    }
    let plain = pullback_form(morphism, &t.plain, source_nvars)?;
    let mut thom = pullback_form(morphism, &t.thom, source_nvars)?;
    if num_traits::Signed::is_negative(&d) {
        thom = thom.neg();
    }
    Ok(ThomForm {
        plain,
        thom,
        vertical_start: source_start,
        fiber_rank: m,
    })
}

/// Both sides of `∫_M ⟨α, Ω⟩ = ∫_{A*} ⟨π^*α ∧ Th, Θ^r ⊗ π^*Ω⟩` for a top
/// form `α`: the base integral, and the total-space integral computed by
/// integrating `Th` over the fibres and pairing with the Liouville volume.
pub fn thom_integral<S: Scalar>(
    model: &PullbackModel<S>,
    alpha: &AlgForm<S>,
    density: &Density<S>,
    domain: &Domain,
    quad: &Quadrature,
) -> Result<(Value, Value)> {
    let base = integrate(&model.base, alpha, density, domain, (0, 0), quad)?;

    let base_coefficient = AlgForm::scalar(density.coefficient().clone(), model.base_rank());
    let lifted = model.horizontal_lift(&base_coefficient)?.coefficient(Blade::EMPTY);
    let lifted = Density::new(&model.total, lifted)?;
    if !invariance_residual(&model.total, &lifted).vanishes() {
        return Err(Error::NonInvariantDensity("pull-back volume on the total space".into()));
    }
    let image = thom_map(model, alpha)?;
    let (_, theta_top) = model.theta_power()?;
    let pairing = theta_top
        .as_rational()
        .ok_or_else(|| Error::NonConstant("top coefficient of Θ^r".into()))?
        / model.liouville_constant();
    let r = model.base_rank();
    let top_h = Blade::top(r);
    let coefficient = model.at_zero_section(&image.thom.coefficient(top_h)).scaled(&pairing);
    let pushed = AlgForm::monomial(top_h, coefficient, r);
    let total = integrate(&model.base, &pushed, density, domain, (0, 0), quad)?;
    Ok((base, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{presets, AlgebroidPresentation};
    use crate::scalar::rational::int;
    use crate::scalar::Poly;

    #[test]
    fn fiber_integration_inverts_the_thom_map() {
        let su2 = presets::su2::<Poly>();
        let model = PullbackModel::cotangent(&su2);
        for degree in 0..=3 {
            for form in crate::ce::basis(&su2, degree) {
                let t = thom_map(&model, &form).unwrap();
                assert_eq!(fiber_integrate(&model, &t).unwrap(), form);
            }
        }
        let one = AlgForm::constant(1, 3, 0);
        assert_eq!(
            thom_map(&model, &one).unwrap(),
            thom_class(&model, Orientation::Positive).unwrap()
        );
    }

    #[test]
    fn unoriented_and_noncompact_inputs_are_rejected() {
        let model = PullbackModel::cotangent(&AlgebroidPresentation::<Poly>::tangent(1));
        assert_eq!(thom_class(&model, Orientation::Unoriented), Err(Error::Unoriented));
        let mut t = ThomForm::zero(2, 2, 1, 1);
        t.plain = AlgForm::basis(1, 2, 2);
        assert!(matches!(fiber_integrate(&model, &t), Err(Error::NotCompactVertical(_))));
    }

    #[test]
    fn th_squares_to_zero() {
        let model = PullbackModel::cotangent(&AlgebroidPresentation::<Poly>::tangent(2));
        let th = thom_class(&model, Orientation::Positive).unwrap();
        let sq = th.wedge(&th).unwrap();
        assert!(sq.plain.is_zero() && sq.thom.is_zero());
    }

    #[test]
    fn restriction_to_a_fibre_is_the_generator() {
        let su2 = presets::su2::<Poly>();
        let model = PullbackModel::cotangent(&su2);
        let incl = AlgebroidMorphism::fibre_inclusion(&su2, 3, &[]).unwrap();
        let th = thom_class(&model, Orientation::Positive).unwrap();
        assert_eq!(pullback_thom(&incl, &th, 3, 0).unwrap(), ThomForm::generator(3));

        let t2 = AlgebroidPresentation::<Poly>::tangent(2);
        let model = PullbackModel::cotangent(&t2);
        let x0 = [Poly::from_int(3, 2), Poly::from_int(-1, 2)];
        let incl = AlgebroidMorphism::fibre_inclusion(&t2, 2, &x0).unwrap();
        let th = thom_class(&model, Orientation::Negative).unwrap();
        let restricted = pullback_thom(&incl, &th, 2, 0).unwrap();
        assert_eq!(restricted.thom, AlgForm::constant(-1, 2, 2));
    }

    #[test]
    fn naturality() {
        let so2 = presets::so2_plane::<Poly>();
        let model = PullbackModel::new(&so2, 2);
        let id = AlgebroidMorphism::identity(&model.total);
        let th = thom_class(&model, Orientation::Positive).unwrap();
        assert_eq!(pullback_thom(&id, &th, 4, 1).unwrap(), th);

        // The anchor, as a morphism to the tangent algebroid, induces a map
        // of pull-backs; the Thom class pulls back to the Thom class.
        let t2 = AlgebroidPresentation::<Poly>::tangent(2);
        let anchor = AlgebroidMorphism::anchor_of(&so2);
        let induced = anchor.induced_on_pullbacks(2, 2);
        let target = PullbackModel::new(&t2, 2);
        assert!(induced.validate(&model.total, &target.total).unwrap().is_valid());
        let pulled = pullback_thom(&induced, &thom_class(&target, Orientation::Positive).unwrap(), 4, 1).unwrap();
        assert_eq!(pulled, th);
    }

    #[test]
    fn integration_compatibility() {
        let su2 = presets::su2::<Poly>();
        let model = PullbackModel::cotangent(&su2);
        let top = AlgForm::monomial(Blade::top(3), Poly::one(0), 3);
        let (base, total) = thom_integral(
            &model,
            &top,
            &Density::canonical(&su2),
            &Domain::Point,
            &Quadrature::default(),
        )
        .unwrap();
        assert_eq!(base, total);
        assert_eq!(base.to_string(), "1");

        let t1 = AlgebroidPresentation::<Poly>::tangent(1);
        let model = PullbackModel::cotangent(&t1);
        let x = Poly::var(0, 1);
        let alpha = AlgForm::monomial(Blade::single(0), &(&x * &x) + &Poly::from_int(1, 1), 1);
        let unit = Domain::Box(vec![(int(0), int(1))]);
        let (base, total) =
            thom_integral(&model, &alpha, &Density::canonical(&t1), &unit, &Quadrature::default()).unwrap();
        assert_eq!(base, total);
        assert_eq!(base.to_string(), "4/3");
    }
}
