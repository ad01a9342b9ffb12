use num_rational::BigRational;

use crate::ce::{AlgForm, Blade};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A square matrix of algebroid forms. Entries of curvature-type matrices
/// have even degree, so their products commute.
#[derive(Clone, Debug, PartialEq)]
pub struct FormMatrix<S: Scalar> {
    rank: usize,
    nvars: usize,
    entries: Vec<Vec<AlgForm<S>>>,
}

impl<S: Scalar> FormMatrix<S> {
    pub fn zero(m: usize, rank: usize, nvars: usize) -> Self {
        FormMatrix {
            rank,
            nvars,
            entries: vec![vec![AlgForm::zero(rank, nvars); m]; m],
        }
    }

    pub fn identity(m: usize, rank: usize, nvars: usize) -> Self {
        let mut out = FormMatrix::zero(m, rank, nvars);
        for i in 0..m {
            out.entries[i][i] = AlgForm::constant(1, rank, nvars);
        }
        out
    }

    pub fn from_entries(entries: Vec<Vec<AlgForm<S>>>) -> Result<Self> {
        let m = entries.len();
        let first = entries
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::Dimension("empty form matrix".into()))?;
        let (rank, nvars) = (first.rank(), first.nvars());
        for row in &entries {
            if row.len() != m {
                return Err(Error::Dimension("form matrix must be square".into()));
            }
            for e in row {
                first.check_compatible(e)?;
                if e.terms().any(|(b, _)| b.degree() % 2 == 1) {
                    return Err(Error::Dimension("form matrix entries must have even degree".into()));
                }
            }
        }
        Ok(FormMatrix { rank, nvars, entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgForm<S> {
        &self.entries[i][j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut AlgForm<S> {
        &mut self.entries[i][j]
    }

    pub fn first_nonvanishing(&self) -> Option<(usize, usize)> {
        let m = self.size();
        (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .find(|&(i, j)| !self.entries[i][j].vanishes())
    }

    pub fn vanishes(&self) -> bool {
        self.first_nonvanishing().is_none()
    }

    /// Matrix product, dropping form components above `max_degree`.
    pub fn mul(&self, other: &Self, max_degree: usize) -> Result<Self> {
        let m = self.size();
        if other.size() != m {
            return Err(Error::Dimension("form matrices of different sizes".into()));
        }
        let mut out = FormMatrix::zero(m, self.rank, self.nvars);
        for i in 0..m {
            for j in 0..m {
                let mut acc = AlgForm::zero(self.rank, self.nvars);
                for k in 0..m {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.wedge_truncated(b, max_degree)?)?;
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let m = self.size();
        let mut out = self.clone();
        for i in 0..m {
            for j in 0..m {
                out.entries[i][j] = out.entries[i][j].add(&other.entries[i][j])?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        for row in &mut out.entries {
            for e in row {
                *e = e.scale(q);
            }
        }
        out
    }

    /// Left multiplication by a matrix of functions.
    pub fn left_mul_scalars(&self, g: &[Vec<S>]) -> Self {
        let m = self.size();
        let mut out = FormMatrix::zero(m, self.rank, self.nvars);
        for i in 0..m {
            for j in 0..m {
                let mut acc = AlgForm::zero(self.rank, self.nvars);
                for (k, gik) in g[i].iter().enumerate() {
                    if !gik.is_zero() {
                        acc = acc.add(&self.entries[k][j].times_scalar(gik)).expect("same algebroid");
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let m = self.size();
        let mut out = self.clone();
        for i in 0..m {
            for j in 0..m {
                out.entries[i][j] = self.entries[j][i].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> AlgForm<S> {
        let mut acc = AlgForm::zero(self.rank, self.nvars);
        for i in 0..self.size() {
            acc = acc.add(&self.entries[i][i]).expect("same algebroid");
        }
        acc
    }

    /// `tr(A^k)` for `k = 1..=kmax`, truncated at `max_degree`.
    pub fn power_traces(&self, kmax: usize, max_degree: usize) -> Result<Vec<AlgForm<S>>> {
        let mut out = Vec::with_capacity(kmax);
        let mut power = self.clone();
        for k in 1..=kmax {
            if k > 1 {
                power = power.mul(self, max_degree)?;
            }
            out.push(power.trace().truncated(max_degree));
        }
        Ok(out)
    }

    /// Direct sum (block diagonal).
    pub fn block_diag(&self, other: &Self) -> Self {
        let (m1, m2) = (self.size(), other.size());
        let mut out = FormMatrix::zero(m1 + m2, self.rank, self.nvars);
        for i in 0..m1 {
            for j in 0..m1 {
                out.entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..m2 {
            for j in 0..m2 {
                out.entries[m1 + i][m1 + j] = other.entries[i][j].clone();
            }
        }
        out
    }

    /// Whether `A^T = -A` entrywise.
    pub fn is_antisymmetric(&self) -> bool {
        let m = self.size();
        (0..m).all(|i| {
            (0..m).all(|j| {
                self.entries[i][j]
                    .add(&self.entries[j][i])
                    .map(|s| s.vanishes())
                    .unwrap_or(false)
            })
        })
    }

    /// A matrix whose entries are given by a closure over `(i, j)`.
    pub fn from_fn(m: usize, rank: usize, nvars: usize, f: impl Fn(usize, usize) -> AlgForm<S>) -> Self {
        FormMatrix {
            rank,
            nvars,
            entries: (0..m).map(|i| (0..m).map(|j| f(i, j)).collect()).collect(),
        }
    }

    /// Entry `(i, j)` as a 2-form with the given blade coefficients.
    pub fn two_form(rank: usize, nvars: usize, coeffs: impl IntoIterator<Item = ((usize, usize), S)>) -> AlgForm<S> {
        AlgForm::from_terms(
            rank,
            nvars,
            coeffs.into_iter().map(|((a, b), c)| {
                let blade = Blade::from_indices(&[a, b]).expect("distinct indices");
                if a < b {
                    (blade, c)
                } else {
                    (blade, c.negated())
                }
            }),
        )
    }
}
