//! Characteristic forms from curvature via power sums.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use super::form_matrix::FormMatrix;
use super::levi_civita::{levi_civita, Metric};
use super::pfaffian::pfaffian;
use super::series::{a_hat_series, l_series, todd_series};
use super::{curvature, GConnection};
use crate::algebroid::AlgebroidPresentation;
use crate::ce::AlgForm;
use crate::error::{Error, Result};
use crate::scalar::rational::{factorial, int};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacteristicClass {
    /// The `k`-th Chern form, `det(1 + R) = Σ c_k`.
    Chern(usize),
    TotalChern,
    /// `tr exp(R)`.
    Ch,
    /// `Π x_j / (1 - e^{-x_j})` over the curvature eigenvalues.
    Todd,
    /// `Π y_j / tanh(y_j)` over the Pontryagin roots.
    LGenus,
    /// `Π (y_j/2) / sinh(y_j/2)` over the Pontryagin roots.
    AHat,
    /// `Pf(g R)`, for Levi-Civita curvatures lowered by the metric.
    Pfaffian,
    /// `Pf(g R) / sqrt(det g)`.
    Euler,
}

impl fmt::Display for CharacteristicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacteristicClass::Chern(k) => write!(f, "chern{k}"),
            CharacteristicClass::TotalChern => f.write_str("chern"),
            CharacteristicClass::Ch => f.write_str("ch"),
            CharacteristicClass::Todd => f.write_str("todd"),
            CharacteristicClass::LGenus => f.write_str("l_genus"),
            CharacteristicClass::AHat => f.write_str("a_hat"),
            CharacteristicClass::Pfaffian => f.write_str("pfaffian"),
            CharacteristicClass::Euler => f.write_str("euler"),
        }
    }
}

impl FromStr for CharacteristicClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "chern" => CharacteristicClass::TotalChern,
            "ch" => CharacteristicClass::Ch,
            "todd" => CharacteristicClass::Todd,
            "l_genus" | "L" => CharacteristicClass::LGenus,
            "a_hat" => CharacteristicClass::AHat,
            "pfaffian" => CharacteristicClass::Pfaffian,
            "euler" => CharacteristicClass::Euler,
            _ => match s.strip_prefix("chern").and_then(|k| k.parse().ok()) {
                Some(k) => CharacteristicClass::Chern(k),
                None => {
                    return Err(Error::Parse {
                        column: 1,
                        message: format!("unknown characteristic class `{s}`"),
                    })
                }
            },
        })
    }
}

/// A characteristic form together with any warnings raised computing it.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassForm<S: Scalar> {
    pub form: AlgForm<S>,
    pub warnings: Vec<String>,
}

fn exp_form<S: Scalar>(x: &AlgForm<S>, max_degree: usize) -> Result<AlgForm<S>> {
    let mut out = AlgForm::constant(1, x.rank(), x.nvars());
    let mut power = AlgForm::constant(1, x.rank(), x.nvars());
    for k in 1..=max_degree / 2 {
        power = power.wedge_truncated(x, max_degree)?;
        if power.is_zero() {
            break;
        }
        out = out.add(&power.scale(&factorial(k as u32).recip()))?;
    }
    Ok(out)
}

/// Elementary symmetric forms `c_0..c_kmax` from power traces `s_1..` by
/// Newton's identities.
pub fn newton<S: Scalar>(
    s: &[AlgForm<S>],
    kmax: usize,
    max_degree: usize,
    rank: usize,
    nvars: usize,
) -> Result<Vec<AlgForm<S>>> {
    let mut c = vec![AlgForm::constant(1, rank, nvars)];
    for k in 1..=kmax {
        let mut acc = AlgForm::zero(rank, nvars);
        for i in 1..=k {
            let Some(si) = s.get(i - 1) else { break };
            let term = c[k - i].wedge_truncated(si, max_degree)?;
            acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        c.push(acc.scale(&int(k as i64).recip()));
    }
    Ok(c)
}

/// `exp(Σ_k t_k σ_k)` for series coefficients `t_k` and forms `σ_k`.
fn exp_of_sum<S: Scalar>(
    terms: impl IntoIterator<Item = (BigRational, AlgForm<S>)>,
    max_degree: usize,
    rank: usize,
    nvars: usize,
) -> Result<AlgForm<S>> {
    let mut acc = AlgForm::zero(rank, nvars);
    for (t, f) in terms {
        if !t.is_zero() {
            acc = acc.add(&f.scale(&t))?;
        }
    }
    exp_form(&acc, max_degree)
}

/// Characteristic form of a curvature matrix, truncated at form degree
/// `max_degree`. Pfaffian-type classes need a metric to lower `R`.
pub fn class_from_curvature<S: Scalar>(
    r: &FormMatrix<S>,
    class: CharacteristicClass,
    max_degree: usize,
    metric: Option<&Metric<S>>,
) -> Result<ClassForm<S>> {
    let rank = r.rank();
    let nvars = r.nvars();
    let max_degree = max_degree.min(rank);
    let m = r.size();
    let half = max_degree / 2;
    let mut warnings = Vec::new();
    let power_traces = |k: usize| r.power_traces(k, max_degree);
    let form = match class {
        CharacteristicClass::Chern(k) => {
            let s = power_traces(k)?;
            newton(&s, k, max_degree, rank, nvars)?.swap_remove(k)
        }
        CharacteristicClass::TotalChern => {
            let kmax = half.min(m);
            let s = power_traces(kmax)?;
            let c = newton(&s, kmax, max_degree, rank, nvars)?;
            let mut acc = AlgForm::zero(rank, nvars);
            for ck in c {
                acc = acc.add(&ck)?;
            }
            acc
        }
        CharacteristicClass::Ch => {
            let s = power_traces(half)?;
            let mut acc = AlgForm::constant(m as i64, rank, nvars);
            for (k, sk) in s.iter().enumerate() {
                acc = acc.add(&sk.scale(&factorial(k as u32 + 1).recip()))?;
            }
            acc
        }
        CharacteristicClass::Todd => {
            let log = todd_series(half + 1).log();
            let s = power_traces(half)?;
            exp_of_sum(
                s.into_iter().enumerate().map(|(k, sk)| (log.coeff(k + 1), sk)),
                max_degree,
                rank,
                nvars,
            )?
        }
        CharacteristicClass::LGenus | CharacteristicClass::AHat => {
            let g = if class == CharacteristicClass::LGenus {
                l_series(half + 2)
            } else {
                a_hat_series(half + 2)
            };
            let log = g.log();
            // ½ tr((-R²)^k) = Σ_j y_j^{2k} = (-1)^k s_{2k} / 2.
            let s = power_traces(half)?;
            let terms = (1..=half / 2).map(|k| {
                let sign = if k % 2 == 1 { int(-1) } else { int(1) };
                (log.coeff(2 * k) * sign / int(2), s[2 * k - 1].clone())
            });
            exp_of_sum(terms.collect::<Vec<_>>(), max_degree, rank, nvars)?
        }
        CharacteristicClass::Pfaffian | CharacteristicClass::Euler => {
            if m % 2 == 1 {
                warnings.push(format!("odd bundle rank {m}: Pfaffian is defined as zero"));
                AlgForm::zero(rank, nvars)
            } else {
                let lowered = match metric {
                    Some(g) => r.left_mul_scalars(g.matrix()),
                    None => r.clone(),
                };
                if !lowered.is_antisymmetric() {
                    return Err(Error::InvalidMetric(
                        "curvature is not antisymmetric with respect to the metric".into(),
                    ));
                }
                let pf = pfaffian(&lowered)?;
                if class == CharacteristicClass::Euler {
                    let det = metric.map(|g| g.det()).unwrap_or_else(|| S::one(nvars));
                    let root = det.try_sqrt().ok_or_else(|| {
                        Error::NotInvertible("sqrt(det g) is not representable exactly; use the numeric backend".into())
                    })?;
                    let inv = root.try_recip().ok_or_else(|| Error::NotInvertible("det g".into()))?;
                    pf.times_scalar(&inv)
                } else {
                    pf
                }
                .truncated(max_degree)
            }
        }
    };
    Ok(ClassForm { form, warnings })
}

/// Characteristic form of a connection on `alg`; for `Pfaffian` and
/// `Euler` without an explicit connection use [`euler_class`].
pub fn char_class<S: Scalar>(
    alg: &AlgebroidPresentation<S>,
    conn: &GConnection<S>,
    class: CharacteristicClass,
    max_degree: usize,
    metric: Option<&Metric<S>>,
) -> Result<ClassForm<S>> {
    let r = curvature(alg, conn)?;
    class_from_curvature(&r, class, max_degree, metric)
}

/// `Pf(g R) / sqrt(det g)` for the Levi-Civita connection of `metric`.
pub fn euler_class<S: Scalar>(alg: &AlgebroidPresentation<S>, metric: &Metric<S>) -> Result<ClassForm<S>> {
    let conn = levi_civita(alg, metric)?;
    char_class(alg, &conn, CharacteristicClass::Euler, alg.rank(), Some(metric))
}
