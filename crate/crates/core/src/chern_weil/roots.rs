//! Genus identities checked in formal Chern roots `±x_1, ..., ±x_p`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::series::{l_series, todd_series, Series};
use crate::error::{Error, Result};
use crate::scalar::rational::int;
use crate::scalar::{Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootsIdentity {
    /// `ch(Σ (-1)^i Λ^i g*) Td(g ⊗ C) / e(g) = e(g)`.
    GaussBonnet,
    /// `ch(Λ^+ g* - Λ^- g*) Td(g ⊗ C) / e(g) = L(g)`.
    Signature,
}

impl std::fmt::Display for RootsIdentity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RootsIdentity::GaussBonnet => "Gauss-Bonnet",
            RootsIdentity::Signature => "signature",
        })
    }
}

/// Outcome of expanding both sides of a roots identity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootsReport {
    pub identity: RootsIdentity,
    pub half_rank: usize,
    /// Form-degree truncation used.
    pub truncation: usize,
    /// Per even form degree `2d ≤ truncation`: the factor `λ` with
    /// `LHS_{2d} = λ RHS_{2d}`, or `None` where the right side vanishes.
    pub normalizations: Vec<(usize, Option<BigRational>)>,
    /// `LHS - Σ λ_{2d} RHS_{2d}` in the roots; zero when the identity holds.
    pub residual: Poly,
}

fn one_var(s: &Series, var: usize, nvars: usize, max_degree: u32) -> Poly {
    let terms = s.coeffs.iter().enumerate().take(max_degree as usize + 1).map(|(k, c)| {
        let mut e = vec![0; nvars];
        e[var] = k as u32;
        (e, c.clone())
    });
    Poly::from_terms(nvars, terms).expect("exponent vectors sized to nvars")
}

/// Divides by the monomial `x_1 ⋯ x_p`; errors if some term is not divisible.
fn divide_by_euler(p: &Poly) -> Result<Poly> {
    let n = p.nvars();
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        if m.exponents().contains(&0) {
            return Err(Error::UnresolvedEulerDivision {
                symbol: Monomial::from_exponents(m.exponents().to_vec())
                    .exponents()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                needed: "numerator divisible by the product of the roots".into(),
            });
        }
        terms.push((m.exponents().iter().map(|e| e - 1).collect(), c.clone()));
    }
    Poly::from_terms(n, terms)
}

/// Expands both sides of `identity` for half-rank `p` up to form degree
/// `truncation` (root degree `truncation / 2`), measuring the normalization
/// between them degree by degree.
pub fn roots_identity(identity: RootsIdentity, p: usize, truncation: usize) -> Result<RootsReport> {
    let top = (truncation / 2) as u32;
    // The numerator is divided by a degree-p monomial, so expand it further.
    let num_degree = top + p as u32;
    let len = num_degree as usize + 2;
    let td = todd_series(len);
    let td_pair = td.mul(&td.rescale(&int(-1)));
    let one = Series::from_fn(len, |k| {
        if k == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    let per_root = match identity {
        // (1 - e^x)(1 - e^{-x})
        RootsIdentity::GaussBonnet => one
            .add(&Series::exp_x(len, 1).scale(&int(-1)))
            .mul(&one.add(&Series::exp_x(len, -1).scale(&int(-1)))),
        // e^{-x} - e^{x}
        RootsIdentity::Signature => Series::exp_x(len, -1).add(&Series::exp_x(len, 1).scale(&int(-1))),
    }
    .mul(&td_pair);

    let mut numerator = Poly::one(p);
    let mut rhs = Poly::one(p);
    for j in 0..p {
        numerator = numerator.mul_truncated(&one_var(&per_root, j, p, num_degree), num_degree);
        let r = match identity {
            RootsIdentity::GaussBonnet => Poly::var(j, p),
            RootsIdentity::Signature => one_var(&l_series(len), j, p, top),
        };
        rhs = rhs.mul_truncated(&r, top);
    }
    let lhs = divide_by_euler(&numerator)?.truncate(top);

    let mut normalizations = Vec::new();
    let mut residual = Poly::zero(p);
    for d in 0..=top {
        let l = lhs.homogeneous(d);
        let r = rhs.homogeneous(d);
        let lambda = r.terms().next().map(|(m, rc)| {
            let lc = l
                .terms()
                .find(|(lm, _)| *lm == m)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(BigRational::zero);
            lc / rc
        });
        let scaled = match &lambda {
            Some(c) => r.scale(c),
            None => Poly::zero(p),
        };
        residual = &residual + &(&l - &scaled);
        normalizations.push((2 * d as usize, lambda));
    }
    Ok(RootsReport {
        identity,
        half_rank: p,
        truncation,
        normalizations,
        residual,
    })
}
