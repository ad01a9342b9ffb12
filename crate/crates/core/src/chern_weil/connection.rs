use crate::algebroid::{AlgebroidMorphism, AlgebroidPresentation};
use crate::error::{Error, Result};
use crate::scalar::{Matrix, Scalar};

/// An algebroid connection on the trivial bundle of rank `m`:
/// `∇_{e_α} s = ρ(e_α)(s) + ω_α s` for a column vector of component
/// functions `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct GConnection<S> {
    rank: usize,
    nvars: usize,
    omega: Vec<Matrix<S>>,
}

impl<S: Scalar> GConnection<S> {
    /// `omega[α]` is the `m×m` matrix `ω_α`.
    pub fn new(rank: usize, nvars: usize, omega: Vec<Matrix<S>>) -> Result<Self> {
        if omega.len() != rank {
            return Err(Error::Dimension(format!(
                "{} connection matrices for a rank-{rank} algebroid",
                omega.len()
            )));
        }
        let m = omega.first().map(Vec::len).unwrap_or(0);
        for w in &omega {
            if w.len() != m
                || w.iter()
                    .any(|row| row.len() != m || row.iter().any(|s| s.nvars() != nvars))
            {
                return Err(Error::Dimension(format!(
                    "connection matrices must all be {m}x{m} over {nvars} variables"
                )));
            }
        }
        Ok(GConnection { rank, nvars, omega })
    }

    /// The trivial flat connection `ω = 0` on a rank-`m` bundle.
    pub fn trivial(alg: &AlgebroidPresentation<S>, m: usize) -> Self {
        let n = alg.base_dim();
        GConnection {
            rank: alg.rank(),
            nvars: n,
            omega: vec![vec![vec![S::zero(n); m]; m]; alg.rank()],
        }
    }

    /// The adjoint connection on the algebroid itself: `ω_α = ad(e_α)`,
    /// i.e. `(ω_α)_{γβ} = C^γ_{αβ}`.
    pub fn adjoint(alg: &AlgebroidPresentation<S>) -> Self {
        let r = alg.rank();
        let omega = (0..r)
            .map(|a| {
                (0..r)
                    .map(|g| (0..r).map(|b| alg.structure(a, b, g)).collect())
                    .collect()
            })
            .collect();
        GConnection {
            rank: r,
            nvars: alg.base_dim(),
            omega,
        }
    }

    pub fn algebroid_rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bundle_rank(&self) -> usize {
        self.omega.first().map(Vec::len).unwrap_or(0)
    }

    pub fn omega(&self, alpha: usize) -> &Matrix<S> {
        &self.omega[alpha]
    }

    pub fn check_algebroid(&self, alg: &AlgebroidPresentation<S>) -> Result<()> {
        if alg.rank() != self.rank || alg.base_dim() != self.nvars {
            return Err(Error::AlgebroidMismatch {
                left_rank: self.rank,
                left_vars: self.nvars,
                right_rank: alg.rank(),
                right_vars: alg.base_dim(),
            });
        }
        Ok(())
    }

    /// Block-diagonal connection on `E1 ⊕ E2`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (m1, m2) = (self.bundle_rank(), other.bundle_rank());
        let n = self.nvars;
        let omega = (0..self.rank)
            .map(|a| {
                let mut w = vec![vec![S::zero(n); m1 + m2]; m1 + m2];
                for i in 0..m1 {
                    for j in 0..m1 {
                        w[i][j] = self.omega[a][i][j].clone();
                    }
                }
                for i in 0..m2 {
                    for j in 0..m2 {
                        w[m1 + i][m1 + j] = other.omega[a][i][j].clone();
                    }
                }
                w
            })
            .collect();
        Ok(GConnection {
            rank: self.rank,
            nvars: n,
            omega,
        })
    }

    /// Connection `ω1 ⊗ 1 + 1 ⊗ ω2` on `E1 ⊗ E2`, basis `(i, j) ↦ i m2 + j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (m1, m2) = (self.bundle_rank(), other.bundle_rank());
        let n = self.nvars;
        let omega = (0..self.rank)
            .map(|a| {
                let mut w = vec![vec![S::zero(n); m1 * m2]; m1 * m2];
                for i in 0..m1 {
                    for j in 0..m2 {
                        for k in 0..m1 {
                            for l in 0..m2 {
                                let mut v = S::zero(n);
                                if j == l {
                                    v = v.plus(&self.omega[a][i][k]);
                                }
                                if i == k {
                                    v = v.plus(&other.omega[a][j][l]);
                                }
                                w[i * m2 + j][k * m2 + l] = v;
                            }
                        }
                    }
                }
                w
            })
            .collect();
        Ok(GConnection {
            rank: self.rank,
            nvars: n,
            omega,
        })
    }

    /// Pull-back along a morphism `(f, φ): A1 → A2` of a connection on
    /// `A2`: `ω1_a = Σ_b φ_{ba} (ω2_b ∘ f)`.
    pub fn pullback(&self, morphism: &AlgebroidMorphism<S>, source_nvars: usize) -> Result<Self> {
        if morphism.target_rank() != self.rank || morphism.base_map.len() != self.nvars {
            return Err(Error::InvalidMorphism(
                "morphism target does not carry this connection".into(),
            ));
        }
        let m = self.bundle_rank();
        let r1 = morphism.source_rank();
        let pulled: Vec<Matrix<S>> = self
            .omega
            .iter()
            .map(|w| {
                w.iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| s.substitute(&morphism.base_map, source_nvars))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let omega = (0..r1)
            .map(|a| {
                let mut w = vec![vec![S::zero(source_nvars); m]; m];
                for (b, pb) in pulled.iter().enumerate() {
                    let coeff = &morphism.phi[b][a];
                    if coeff.is_zero() {
                        continue;
                    }
                    for i in 0..m {
                        for j in 0..m {
                            w[i][j] = w[i][j].plus(&coeff.times(&pb[i][j]));
                        }
                    }
                }
                w
            })
            .collect();
        Ok(GConnection {
            rank: r1,
            nvars: source_nvars,
            omega,
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank || self.nvars != other.nvars {
            return Err(Error::AlgebroidMismatch {
                left_rank: self.rank,
                left_vars: self.nvars,
                right_rank: other.rank,
                right_vars: other.nvars,
            });
        }
        Ok(())
    }
}
