//! The Koszul differential of an algebroid, optionally twisted by a connection.

use super::form::{AlgForm, Blade, VectorForm};
use crate::algebroid::AlgebroidPresentation;
use crate::chern_weil::{curvature, GConnection};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check<S: Scalar>(alg: &AlgebroidPresentation<S>, form: &AlgForm<S>) -> Result<()> {
    if form.rank() != alg.rank() || form.nvars() != alg.base_dim() {
        return Err(Error::AlgebroidMismatch {
            left_rank: form.rank(),
            left_vars: form.nvars(),
            right_rank: alg.rank(),
            right_vars: alg.base_dim(),
        });
    }
    Ok(())
}

/// `d α` for a scalar form, by the Koszul formula
///
/// `dα(X_0..X_k) = Σ_i (-1)^i ρ(X_i) α(..X̂_i..)
///               + Σ_{i<j} (-1)^{i+j} α([X_i,X_j], ..X̂_i..X̂_j..)`.
///
/// Top-degree components map to zero.
pub fn d<S: Scalar>(alg: &AlgebroidPresentation<S>, form: &AlgForm<S>) -> Result<AlgForm<S>> {
    check(alg, form)?;
    let r = alg.rank();
    let mut out = AlgForm::zero(r, alg.base_dim());
    for (k, a) in form.terms() {
        let k = *k;
        // Anchor terms: J = K ∪ {j}, X_j sits at position count_below(j).
        for j in 0..r {
            if k.contains(j) {
                continue;
            }
            let da = alg.anchor_apply(j, a);
            if da.is_zero() {
                continue;
            }
            let term = if k.count_below(j) % 2 == 1 { da.negated() } else { da };
            out.add_term(k.with(j), term);
        }
        // Bracket terms: α(e_γ, e_L) = (-1)^{#L below γ} a_{L ∪ γ}.
        for g in k.indices() {
            let l = k.without(g);
            let base = if l.count_below(g) % 2 == 1 {
                a.negated()
            } else {
                a.clone()
            };
            for ja in 0..r {
                if l.contains(ja) {
                    continue;
                }
                for jb in ja + 1..r {
                    if l.contains(jb) {
                        continue;
                    }
                    let c = alg.structure(ja, jb, g);
                    if c.is_zero() {
                        continue;
                    }
                    let target = l.with(ja).with(jb);
                    let pa = target.count_below(ja);
                    let pb = target.count_below(jb);
                    let term = c.times(&base);
                    out.add_term(target, if (pa + pb) % 2 == 1 { term.negated() } else { term });
                }
            }
        }
    }
    Ok(out)
}

/// `d^∇ α = dα + ω ∧ α` for a bundle-valued form. Flatness is not
/// required; on a representation this squares to zero.
pub fn d_twisted<S: Scalar>(
    alg: &AlgebroidPresentation<S>,
    conn: &GConnection<S>,
    form: &VectorForm<S>,
) -> Result<VectorForm<S>> {
    conn.check_algebroid(alg)?;
    let m = conn.bundle_rank();
    if form.bundle_rank() != m {
        return Err(Error::Dimension(format!(
            "form with {} components for a rank-{m} bundle",
            form.bundle_rank()
        )));
    }
    let mut comps = form.components.iter().map(|c| d(alg, c)).collect::<Result<Vec<_>>>()?;
    for (c, comp) in form.components.iter().enumerate() {
        for (k, a) in comp.terms() {
            for j in 0..alg.rank() {
                if k.contains(j) {
                    continue;
                }
                let negative = k.count_below(j) % 2 == 1;
                for (i, out) in comps.iter_mut().enumerate() {
                    let w = &conn.omega(j)[i][c];
                    if w.is_zero() {
                        continue;
                    }
                    let term = w.times(a);
                    out.add_term(k.with(j), if negative { term.negated() } else { term });
                }
            }
        }
    }
    Ok(VectorForm { components: comps })
}

/// A flat connection, i.e. a representation of the algebroid.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<S> {
    connection: GConnection<S>,
}

impl<S: Scalar> Representation<S> {
    /// Accepts `conn` only if its curvature vanishes.
    pub fn new(alg: &AlgebroidPresentation<S>, conn: GConnection<S>) -> Result<Self> {
        let r = curvature(alg, &conn)?;
        if let Some((i, j)) = r.first_nonvanishing() {
            return Err(Error::NotFlat(format!(
                "curvature entry ({}, {}) is {}",
                i + 1,
                j + 1,
                r.entry(i, j).display_with(alg.coords())
            )));
        }
        Ok(Representation { connection: conn })
    }

    pub fn trivial(alg: &AlgebroidPresentation<S>, m: usize) -> Self {
        Representation {
            connection: GConnection::trivial(alg, m),
        }
    }

    pub fn connection(&self) -> &GConnection<S> {
        &self.connection
    }

    pub fn bundle_rank(&self) -> usize {
        self.connection.bundle_rank()
    }

    pub fn d(&self, alg: &AlgebroidPresentation<S>, form: &VectorForm<S>) -> Result<VectorForm<S>> {
        d_twisted(alg, &self.connection, form)
    }
}

/// All basis forms `e^K` of the given degree.
pub fn basis<S: Scalar>(alg: &AlgebroidPresentation<S>, degree: usize) -> Vec<AlgForm<S>> {
    let n = alg.base_dim();
    Blade::all_of_degree(alg.rank(), degree)
        .into_iter()
        .map(|b| AlgForm::monomial(b, S::one(n), alg.rank()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets::*;
    use crate::scalar::Poly;

    type A = AlgebroidPresentation<Poly>;

    #[test]
    fn de_rham_on_the_plane() {
        let t = A::tangent(2);
        let x = Poly::var(0, 2);
        let beta = AlgForm::monomial(Blade::single(1), x, 2);
        let dx_dy = AlgForm::monomial(Blade::top(2), Poly::one(2), 2);
        assert_eq!(d(&t, &beta).unwrap(), dx_dy);
    }

    #[test]
    fn chevalley_eilenberg_signs() {
        let g = su2::<Poly>();
        let e1 = AlgForm::basis(0, 3, 0);
        let expected = AlgForm::monomial(Blade::from_indices(&[1, 2]).unwrap(), Poly::from_int(-1, 0), 3);
        assert_eq!(d(&g, &e1).unwrap(), expected);

        let a = aff1::<Poly>();
        let e2 = AlgForm::basis(1, 2, 0);
        let expected = AlgForm::monomial(Blade::top(2), Poly::from_int(-1, 0), 2);
        assert_eq!(d(&a, &e2).unwrap(), expected);
        assert!(d(&a, &AlgForm::basis(0, 2, 0)).unwrap().is_zero());
    }

    #[test]
    fn constants_are_closed() {
        for a in [su2::<Poly>(), so3_space(), A::tangent(2)] {
            let one = AlgForm::constant(1, a.rank(), a.base_dim());
            assert!(d(&a, &one).unwrap().is_zero());
        }
    }

    #[test]
    fn adjoint_representation_squares_to_zero() {
        let g = su2::<Poly>();
        let rep = Representation::new(&g, GConnection::adjoint(&g)).unwrap();
        for k in 0..3 {
            for b in Blade::all_of_degree(3, k) {
                for c in 0..3 {
                    let mut f = VectorForm::zero(3, 3, 0);
                    f.components[c] = AlgForm::monomial(b, Poly::one(0), 3);
                    let dd = rep.d(&g, &rep.d(&g, &f).unwrap()).unwrap();
                    assert!(dd.is_zero());
                }
            }
        }
    }

    #[test]
    fn mismatched_form_is_rejected() {
        let g = su2::<Poly>();
        assert!(d(&g, &AlgForm::basis(0, 2, 0)).is_err());
    }
}
