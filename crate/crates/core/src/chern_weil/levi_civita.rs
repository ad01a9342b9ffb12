use num_traits::Signed;

use super::GConnection;
use crate::algebroid::AlgebroidPresentation;
use crate::error::{Error, Result};
use crate::scalar::rational::q;
use crate::scalar::{det, inverse, Matrix, Scalar};

/// A fibre metric on the algebroid, as a symmetric matrix in the frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric<S> {
    g: Matrix<S>,
    nvars: usize,
}

impl<S: Scalar> Metric<S> {
    /// Checks exact symmetry and positive-definiteness: by leading minors
    /// when constant, at sample points otherwise.
    pub fn new(g: Matrix<S>, nvars: usize) -> Result<Self> {
        let r = g.len();
        if g.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidMetric("metric must be square".into()));
        }
        for i in 0..r {
            for j in i + 1..r {
                if !g[i][j].minus(&g[j][i]).vanishes() {
                    return Err(Error::InvalidMetric(format!(
                        "entries ({}, {}) and ({}, {}) differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let minors: Vec<S> = (1..=r)
            .map(|k| {
                let sub: Matrix<S> = g[..k].iter().map(|row| row[..k].to_vec()).collect();
                det(&sub, nvars)
            })
            .collect();
        for (k, minor) in minors.iter().enumerate() {
            let positive = match minor.as_rational() {
                Some(c) => c.is_positive(),
                None => sample_points(nvars)
                    .iter()
                    .filter_map(|p| minor.eval_f64(p).ok())
                    .all(|v| v > 0.0),
            };
            if !positive {
                return Err(Error::InvalidMetric(format!(
                    "leading minor of order {} is not positive",
                    k + 1
                )));
            }
        }
        Ok(Metric { g, nvars })
    }

    pub fn identity(r: usize, nvars: usize) -> Self {
        Metric {
            g: crate::scalar::identity(r, nvars),
            nvars,
        }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.g
    }

    pub fn det(&self) -> S {
        det(&self.g, self.nvars)
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.g[i][j]
    }
}

fn sample_points(nvars: usize) -> Vec<Vec<f64>> {
    (0..16)
        .map(|k| {
            (0..nvars)
                .map(|i| (((k * 37 + i * 11) % 17) as f64 / 17.0 - 0.5) * 1.8)
                .collect()
        })
        .collect()
}

/// Torsion-free metric connection on the algebroid, from the Koszul formula
///
/// `2⟨∇_α e_β, e_γ⟩ = ρ_α g_{βγ} + ρ_β g_{αγ} - ρ_γ g_{αβ}
///                  + ⟨[e_α,e_β], e_γ⟩ - ⟨[e_α,e_γ], e_β⟩ - ⟨[e_β,e_γ], e_α⟩`.
///
/// The returned connection has `(ω_α)_{γβ} = Γ^γ_{αβ}`.
pub fn levi_civita<S: Scalar>(alg: &AlgebroidPresentation<S>, metric: &Metric<S>) -> Result<GConnection<S>> {
    let r = alg.rank();
    let n = alg.base_dim();
    if metric.g.len() != r {
        return Err(Error::InvalidMetric(format!(
            "{}x{} metric on a rank-{r} algebroid",
            metric.g.len(),
            metric.g.len()
        )));
    }
    let g = &metric.g;
    let ginv = inverse(g, n).ok_or_else(|| Error::NotInvertible("metric determinant".into()))?;
    let half = q(1, 2);
    // ⟨[e_a,e_b], e_c⟩
    let bracket_pair = |a: usize, b: usize, c: usize| -> S {
        let mut acc = S::zero(n);
        for (d, cd) in alg.bracket(a, b).iter().enumerate() {
            if !cd.is_zero() {
                acc = acc.plus(&cd.times(&g[d][c]));
            }
        }
        acc
    };
    let mut lowered = vec![vec![vec![S::zero(n); r]; r]; r];
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let v = alg
                    .anchor_apply(a, &g[b][c])
                    .plus(&alg.anchor_apply(b, &g[a][c]))
                    .minus(&alg.anchor_apply(c, &g[a][b]))
                    .plus(&bracket_pair(a, b, c))
                    .minus(&bracket_pair(a, c, b))
                    .minus(&bracket_pair(b, c, a));
                lowered[a][b][c] = v.scaled(&half);
            }
        }
    }
    let omega = (0..r)
        .map(|a| {
            (0..r)
                .map(|c| {
                    (0..r)
                        .map(|b| {
                            let mut acc = S::zero(n);
                            for d in 0..r {
                                if !ginv[c][d].is_zero() && !lowered[a][b][d].is_zero() {
                                    acc = acc.plus(&ginv[c][d].times(&lowered[a][b][d]));
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    GConnection::new(r, n, omega)
}

/// Residuals of metric compatibility
/// `ρ_α g_{βγ} - ⟨∇_α e_β, e_γ⟩ - ⟨e_β, ∇_α e_γ⟩` and torsion
/// `∇_α e_β - ∇_β e_α - [e_α, e_β]`; all vanish for the Levi-Civita connection.
pub fn levi_civita_residuals<S: Scalar>(
    alg: &AlgebroidPresentation<S>,
    metric: &Metric<S>,
    conn: &GConnection<S>,
) -> (Vec<S>, Vec<S>) {
    let r = alg.rank();
    let n = alg.base_dim();
    let g = &metric.g;
    let nabla = |a: usize, b: usize, c: usize| -> S { conn.omega(a)[c][b].clone() };
    let lower = |a: usize, b: usize, c: usize| -> S {
        let mut acc = S::zero(n);
        for d in 0..r {
            acc = acc.plus(&nabla(a, b, d).times(&g[d][c]));
        }
        acc
    };
    let mut compat = Vec::new();
    let mut torsion = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                compat.push(
                    alg.anchor_apply(a, &g[b][c])
                        .minus(&lower(a, b, c))
                        .minus(&lower(a, c, b)),
                );
                torsion.push(nabla(a, b, c).minus(&nabla(b, a, c)).minus(&alg.structure(a, b, c)));
            }
        }
    }
    (compat, torsion)
}
