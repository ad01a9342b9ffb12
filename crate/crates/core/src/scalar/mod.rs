//! Scalar backends: exact polynomials and evaluable expressions.
//!
//! Everything above this layer is generic over [`Scalar`], so the same
//! algebroid, form and curvature code runs exactly on [`Poly`] and
//! numerically on [`Expr`].

mod expr;
mod parse;
mod poly;
pub mod rational;

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use expr::{Expr, Tape};
pub use parse::{parse_expr, parse_poly};
pub use poly::{Monomial, Poly, PolyDisplay};

use crate::error::Result;

/// A commutative ring of functions on a chart, with partial derivatives.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero(nvars: usize) -> Self;
    fn from_rational(c: &BigRational, nvars: usize) -> Self;
    fn var(index: usize, nvars: usize) -> Self;
    fn nvars(&self) -> usize;

    /// Structural zero test. Exact for [`Poly`].
    fn is_zero(&self) -> bool;

    /// Semantic zero test: exact for polynomials, sampled for expressions.
    fn vanishes(&self) -> bool;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &BigRational) -> Self;

    fn derive(&self, index: usize) -> Result<Self>;

    /// Composition with a map into this chart; `args[i]` replaces coordinate `i`.
    fn substitute(&self, args: &[Self], nvars: usize) -> Self;

    /// Multiplicative inverse, when representable in this backend.
    fn try_recip(&self) -> Option<Self>;

    /// Square root, when representable in this backend.
    fn try_sqrt(&self) -> Option<Self>;

    /// The value if this is a constant known exactly.
    fn as_rational(&self) -> Option<BigRational>;

    fn to_expr(&self) -> Expr;

    /// The polynomial this scalar equals, if it is one.
    fn to_poly(&self) -> Option<Poly>;

    fn eval_f64(&self, point: &[f64]) -> Result<f64>;

    fn display_with(&self, names: &[String]) -> String;

    fn one(nvars: usize) -> Self {
        Self::from_rational(&BigRational::one(), nvars)
    }

    fn from_int(c: i64, nvars: usize) -> Self {
        Self::from_rational(&rational::int(c), nvars)
    }
}

impl Scalar for Poly {
    fn zero(nvars: usize) -> Self {
        Poly::zero(nvars)
    }

    fn from_rational(c: &BigRational, nvars: usize) -> Self {
        Poly::constant(c.clone(), nvars)
    }

    fn var(index: usize, nvars: usize) -> Self {
        Poly::var(index, nvars)
    }

    fn nvars(&self) -> usize {
        Poly::nvars(self)
    }

    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }

    fn vanishes(&self) -> bool {
        Poly::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn scaled(&self, c: &BigRational) -> Self {
        self.scale(c)
    }

    fn derive(&self, index: usize) -> Result<Self> {
        Poly::derive(self, index)
    }

    fn substitute(&self, args: &[Self], nvars: usize) -> Self {
        Poly::substitute(self, args, nvars)
    }

    fn try_recip(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!c.is_zero()).then(|| Poly::constant(c.recip(), self.nvars()))
    }

    fn try_sqrt(&self) -> Option<Self> {
        let c = self.as_constant()?;
        rational::sqrt_exact(&c).map(|r| Poly::constant(r, self.nvars()))
    }

    fn as_rational(&self) -> Option<BigRational> {
        self.as_constant()
    }

    fn to_poly(&self) -> Option<Poly> {
        Some(self.clone())
    }

    fn to_expr(&self) -> Expr {
        let n = self.nvars();
        let mut acc = Expr::zero(n);
        for (m, c) in self.terms() {
            let mut term = Expr::constant(c.clone(), n);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&Expr::var(i, n).powi(e as i32));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        Poly::eval_f64(self, point)
    }

    fn display_with(&self, names: &[String]) -> String {
        Poly::display_with(self, names).to_string()
    }
}

impl Scalar for Expr {
    fn zero(nvars: usize) -> Self {
        Expr::zero(nvars)
    }

    fn from_rational(c: &BigRational, nvars: usize) -> Self {
        Expr::constant(c.clone(), nvars)
    }

    fn var(index: usize, nvars: usize) -> Self {
        Expr::var(index, nvars)
    }

    fn nvars(&self) -> usize {
        Expr::nvars(self)
    }

    fn is_zero(&self) -> bool {
        Expr::is_zero(self)
    }

    fn vanishes(&self) -> bool {
        Expr::vanishes(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }

    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn negated(&self) -> Self {
        self.neg()
    }

    fn scaled(&self, c: &BigRational) -> Self {
        self.mul(&Expr::constant(c.clone(), self.nvars()))
    }

    fn derive(&self, index: usize) -> Result<Self> {
        Expr::derive(self, index)
    }

    fn substitute(&self, args: &[Self], nvars: usize) -> Self {
        Expr::substitute(self, args, nvars)
    }

    fn try_recip(&self) -> Option<Self> {
        (!Expr::is_zero(self)).then(|| Expr::one(self.nvars()).div(self))
    }

    fn try_sqrt(&self) -> Option<Self> {
        Some(self.sqrt())
    }

    fn as_rational(&self) -> Option<BigRational> {
        self.as_constant()
    }

    fn to_poly(&self) -> Option<Poly> {
        Expr::to_poly(self)
    }

    fn to_expr(&self) -> Expr {
        self.clone()
    }

    fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        self.eval(point)
    }

    fn display_with(&self, names: &[String]) -> String {
        Expr::display_with(self, names)
    }
}

/// Square matrices over a scalar backend, stored row-major.
pub type Matrix<S> = Vec<Vec<S>>;

/// Determinant by dynamic programming over column subsets; `O(n 2^n)`
/// ring operations and no division, so it works over any backend.
pub fn det<S: Scalar>(m: &[Vec<S>], nvars: usize) -> S {
    let n = m.len();
    if n == 0 {
        return S::one(nvars);
    }
    // dp[mask]: signed sum over injections of the first popcount(mask) rows
    // onto the columns in mask.
    let mut dp: Vec<Option<S>> = vec![None; 1 << n];
    dp[0] = Some(S::one(nvars));
    for mask in 0usize..(1 << n) {
        let Some(acc) = dp[mask].clone() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 || m[row][col].is_zero() {
                continue;
            }
            // Sign of placing `col` after the columns already used.
            let above = (mask >> (col + 1)).count_ones();
            let mut term = acc.times(&m[row][col]);
            if above % 2 == 1 {
                term = term.negated();
            }
            let slot = &mut dp[mask | (1 << col)];
            *slot = Some(match slot.take() {
                Some(s) => s.plus(&term),
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| S::zero(nvars))
}

/// Inverse via adjugate and determinant.
pub fn inverse<S: Scalar>(m: &[Vec<S>], nvars: usize) -> Option<Matrix<S>> {
    let n = m.len();
    let d = det(m, nvars);
    let inv_det = d.try_recip()?;
    let mut out = vec![vec![S::zero(nvars); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Matrix<S> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let mut cof = det(&minor, nvars);
            if (i + j) % 2 == 1 {
                cof = cof.negated();
            }
            out[i][j] = cof.times(&inv_det);
        }
    }
    Some(out)
}

pub fn mat_mul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], nvars: usize) -> Matrix<S> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map(Vec::len).unwrap_or(0);
    let mut out = vec![vec![S::zero(nvars); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = S::zero(nvars);
            for l in 0..k {
                if !a[i][l].is_zero() && !b[l][j].is_zero() {
                    acc = acc.plus(&a[i][l].times(&b[l][j]));
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn identity<S: Scalar>(n: usize, nvars: usize) -> Matrix<S> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { S::one(nvars) } else { S::zero(nvars) })
                .collect()
        })
        .collect()
}
