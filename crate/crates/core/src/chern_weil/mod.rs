//! Curvature of algebroid connections and Chern-Weil forms.
//!
//! Characteristic forms carry no factors of `2π` or `i`; normalizations are
//! applied once, at integration time.

mod connection;
mod form_matrix;
mod genus;
mod levi_civita;
mod pfaffian;
mod roots;
pub mod series;

pub use connection::GConnection;
pub use form_matrix::FormMatrix;
pub use genus::{char_class, class_from_curvature, euler_class, newton, CharacteristicClass, ClassForm};
pub use levi_civita::{levi_civita, levi_civita_residuals, Metric};
pub use pfaffian::pfaffian;
pub use roots::{roots_identity, RootsIdentity, RootsReport};

use crate::algebroid::AlgebroidPresentation;
use crate::ce::{AlgForm, Blade};
use crate::error::Result;
use crate::scalar::Scalar;

/// `R_{αβ} = ρ_α ω_β - ρ_β ω_α + [ω_α, ω_β] - Σ_γ C^γ_{αβ} ω_γ`, assembled
/// as a matrix of 2-forms.
pub fn curvature<S: Scalar>(alg: &AlgebroidPresentation<S>, conn: &GConnection<S>) -> Result<FormMatrix<S>> {
    conn.check_algebroid(alg)?;
    let r = alg.rank();
    let n = alg.base_dim();
    let m = conn.bundle_rank();
    let mut out = FormMatrix::zero(m, r, n);
    for a in 0..r {
        for b in a + 1..r {
            let blade = Blade(1 << a | 1 << b);
            let (wa, wb) = (conn.omega(a), conn.omega(b));
            let c = alg.bracket(a, b);
            for i in 0..m {
                for j in 0..m {
                    let mut v = alg.anchor_apply(a, &wb[i][j]).minus(&alg.anchor_apply(b, &wa[i][j]));
                    for k in 0..m {
                        if !wa[i][k].is_zero() && !wb[k][j].is_zero() {
                            v = v.plus(&wa[i][k].times(&wb[k][j]));
                        }
                        if !wb[i][k].is_zero() && !wa[k][j].is_zero() {
                            v = v.minus(&wb[i][k].times(&wa[k][j]));
                        }
                    }
                    for (g, cg) in c.iter().enumerate() {
                        if !cg.is_zero() && !conn.omega(g)[i][j].is_zero() {
                            v = v.minus(&cg.times(&conn.omega(g)[i][j]));
                        }
                    }
                    if !v.is_zero() {
                        out.entry_mut(i, j).add_term(blade, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `d^∇ R = dR + [ω, R]`, which vanishes by the Bianchi identity.
pub fn covariant_derivative<S: Scalar>(
    alg: &AlgebroidPresentation<S>,
    conn: &GConnection<S>,
    r: &FormMatrix<S>,
) -> Result<FormMatrix<S>> {
    let m = r.size();
    let rank = alg.rank();
    let n = alg.base_dim();
    let omega = FormMatrix::from_fn(m, rank, n, |i, j| {
        AlgForm::from_terms(
            rank,
            n,
            (0..rank).map(|a| (Blade::single(a), conn.omega(a)[i][j].clone())),
        )
    });
    let mut out = FormMatrix::zero(m, rank, n);
    for i in 0..m {
        for j in 0..m {
            let mut v = crate::ce::d(alg, r.entry(i, j))?;
            for k in 0..m {
                v = v.add(&omega.entry(i, k).wedge(r.entry(k, j))?)?;
                v = v.sub(&r.entry(i, k).wedge(omega.entry(k, j))?)?;
            }
            *out.entry_mut(i, j) = v;
        }
    }
    Ok(out)
}
