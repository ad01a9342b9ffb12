use num_rational::BigRational;
use num_traits::Zero;

use super::differential::{d, d_twisted};
use super::form::{AlgForm, Blade, VectorForm};
use crate::algebroid::AlgebroidPresentation;
use crate::ce::Representation;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Monomial, Poly, Scalar};

fn constant_of<S: Scalar>(s: &S, what: &str) -> Result<BigRational> {
    s.as_rational()
        .ok_or_else(|| Error::NonConstant(format!("{what} is not a constant")))
}

/// The matrix of `d: C^k → C^{k+1}` for a Lie algebra with a constant
/// representation. Columns index `(blade, bundle component)` pairs in
/// canonical blade order; rows likewise for degree `k + 1`.
pub fn differential_matrix<S: Scalar>(
    alg: &AlgebroidPresentation<S>,
    rep: &Representation<S>,
    k: usize,
) -> Result<Vec<Vec<BigRational>>> {
    if alg.base_dim() != 0 {
        return Err(Error::NonConstant(format!(
            "cohomology needs a point base, this chart has {} coordinates",
            alg.base_dim()
        )));
    }
    let r = alg.rank();
    let m = rep.bundle_rank();
    let src = Blade::all_of_degree(r, k);
    let dst = Blade::all_of_degree(r, k + 1);
    let mut rows = vec![vec![BigRational::zero(); src.len() * m]; dst.len() * m];
    for (col, blade) in src.iter().enumerate() {
        for c in 0..m {
            let mut f = VectorForm::zero(m, r, 0);
            f.components[c] = AlgForm::monomial(*blade, S::one(0), r);
            let df = d_twisted(alg, rep.connection(), &f)?;
            for (i, comp) in df.components.iter().enumerate() {
                for (b, v) in comp.terms() {
                    let row = dst.iter().position(|x| x == b).expect("degree k+1 blade");
                    rows[row * m + i][col * m + c] = constant_of(v, "differential entry")?;
                }
            }
        }
    }
    Ok(rows)
}

/// Betti numbers `b_0..b_r` of a Lie algebra with coefficients in a
/// constant representation, by exact rank computation.
pub fn cohomology_const<S: Scalar>(alg: &AlgebroidPresentation<S>, rep: &Representation<S>) -> Result<Vec<usize>> {
    let r = alg.rank();
    let m = rep.bundle_rank();
    let ranks = (0..=r)
        .map(|k| {
            if k == r {
                Ok(0)
            } else {
                differential_matrix(alg, rep, k).map(|mat| linalg::rank(&mat))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=r)
        .map(|k| {
            let dim = Blade::all_of_degree(r, k).len() * m;
            dim - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }
        })
        .collect())
}

pub fn is_cocycle<S: Scalar>(alg: &AlgebroidPresentation<S>, form: &AlgForm<S>) -> Result<bool> {
    Ok(d(alg, form)?.vanishes())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Primitive {
    /// A form `β` with `dβ` equal to the target.
    Found(AlgForm<Poly>),
    /// The target is not exact (point base only, where the search is complete).
    NotExact,
    /// No primitive with coefficients of the given degree bound.
    NotFoundWithinAnsatz { max_degree: u32 },
}

fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    fn rec(i: usize, left: u32, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == acc.len() {
            out.push(Monomial::from_exponents(acc.clone()));
            return;
        }
        for e in 0..=left {
            acc[i] = e;
            rec(i + 1, left - e, acc, out);
        }
        acc[i] = 0;
    }
    let mut acc = vec![0; nvars];
    rec(0, max_degree, &mut acc, &mut out);
    out
}

/// Searches for `β` with `dβ = target`, where `target` is homogeneous of
/// degree `k ≥ 1` and `β` has polynomial coefficients of total degree at
/// most `max_degree`. Over a point base the search is exhaustive.
pub fn find_primitive(alg: &AlgebroidPresentation<Poly>, target: &AlgForm<Poly>, max_degree: u32) -> Result<Primitive> {
    let Some(k) = target.degree() else {
        return Ok(Primitive::Found(AlgForm::zero(alg.rank(), alg.base_dim())));
    };
    if k == 0 {
        return Ok(if target.vanishes() {
            Primitive::Found(AlgForm::zero(alg.rank(), alg.base_dim()))
        } else {
            Primitive::NotExact
        });
    }
    let n = alg.base_dim();
    let monomials = monomials_up_to(n, if n == 0 { 0 } else { max_degree });
    let mut unknowns = Vec::new();
    let mut images = Vec::new();
    for blade in Blade::all_of_degree(alg.rank(), k - 1) {
        for mono in &monomials {
            let coeff = Poly::from_terms(n, [(mono.exponents().to_vec(), BigRational::from_integer(1.into()))])?;
            let basis = AlgForm::monomial(blade, coeff, alg.rank());
            images.push(d(alg, &basis)?);
            unknowns.push(basis);
        }
    }
    // One equation per (blade, monomial) appearing anywhere.
    let mut keys: Vec<(Blade, Monomial)> = Vec::new();
    let mut push_key = |b: Blade, m: &Monomial| {
        if !keys.iter().any(|(kb, km)| *kb == b && km == m) {
            keys.push((b, m.clone()));
        }
    };
    for img in images.iter().chain(std::iter::once(target)) {
        for (b, p) in img.terms() {
            for (m, _) in p.terms() {
                push_key(*b, m);
            }
        }
    }
    let coeff_of = |f: &AlgForm<Poly>, b: Blade, m: &Monomial| -> BigRational {
        f.coefficient(b)
            .terms()
            .find(|(mm, _)| *mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    };
    let a: Vec<Vec<BigRational>> = keys
        .iter()
        .map(|(b, m)| images.iter().map(|img| coeff_of(img, *b, m)).collect())
        .collect();
    let rhs: Vec<BigRational> = keys.iter().map(|(b, m)| coeff_of(target, *b, m)).collect();
    match linalg::solve(&a, &rhs) {
        Some(x) => {
            let mut beta = AlgForm::zero(alg.rank(), n);
            for (u, c) in unknowns.iter().zip(x) {
                if !c.is_zero() {
                    beta = beta.add(&u.scale(&c))?;
                }
            }
            Ok(Primitive::Found(beta))
        }
        None if n == 0 => Ok(Primitive::NotExact),
        None => Ok(Primitive::NotFoundWithinAnsatz { max_degree }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets::*;

    type A = AlgebroidPresentation<Poly>;

    #[test]
    fn betti_numbers_of_small_lie_algebras() {
        let triv = |a: &A| Representation::trivial(a, 1);
        let r3 = abelian::<Poly>(3);
        assert_eq!(cohomology_const(&r3, &triv(&r3)).unwrap(), vec![1, 3, 3, 1]);
        let g = su2::<Poly>();
        assert_eq!(cohomology_const(&g, &triv(&g)).unwrap(), vec![1, 0, 0, 1]);
        let a = aff1::<Poly>();
        assert_eq!(cohomology_const(&a, &triv(&a)).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn chart_cohomology_is_refused() {
        let t = A::tangent(1);
        assert!(matches!(
            cohomology_const(&t, &Representation::trivial(&t, 1)),
            Err(Error::NonConstant(_))
        ));
    }

    #[test]
    fn primitives() {
        let a = aff1::<Poly>();
        let top = AlgForm::monomial(Blade::top(2), Poly::one(0), 2);
        match find_primitive(&a, &top, 0).unwrap() {
            Primitive::Found(beta) => assert_eq!(d(&a, &beta).unwrap(), top),
            other => panic!("{other:?}"),
        }
        let g = su2::<Poly>();
        let vol = AlgForm::monomial(Blade::top(3), Poly::one(0), 3);
        assert_eq!(find_primitive(&g, &vol, 0).unwrap(), Primitive::NotExact);

        let t = A::tangent(2);
        let area = AlgForm::monomial(Blade::top(2), Poly::one(2), 2);
        match find_primitive(&t, &area, 1).unwrap() {
            Primitive::Found(beta) => assert_eq!(d(&t, &beta).unwrap(), area),
            other => panic!("{other:?}"),
        }
        let x2 = Poly::var(0, 2).pow(2);
        let hard = AlgForm::monomial(Blade::top(2), x2, 2);
        assert_eq!(
            find_primitive(&t, &hard, 1).unwrap(),
            Primitive::NotFoundWithinAnsatz { max_degree: 1 }
        );
    }
}
