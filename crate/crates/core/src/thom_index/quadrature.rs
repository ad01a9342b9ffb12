//! Adaptive tensor Gauss-Legendre quadrature on boxes.

use rayon::prelude::*;

use crate::error::{Error, Result};

const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
    (0.906_179_845_938_664, 0.236_926_885_056_189_08),
];

const GL7: [(f64, f64); 7] = [
    (0.0, 0.417_959_183_673_469_4),
    (-0.405_845_151_377_397_2, 0.381_830_050_505_118_9),
    (0.405_845_151_377_397_2, 0.381_830_050_505_118_9),
    (-0.741_531_185_599_394_4, 0.279_705_391_489_276_7),
    (0.741_531_185_599_394_4, 0.279_705_391_489_276_7),
    (-0.949_107_912_342_758_5, 0.129_484_966_168_869_7),
    (0.949_107_912_342_758_5, 0.129_484_966_168_869_7),
];

/// Tolerance and box budget for adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    /// Absolute error target for the whole integral.
    pub tolerance: f64,
    /// Maximum number of boxes evaluated before giving up.
    pub budget: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            tolerance: 1e-10,
            budget: 200_000,
        }
    }
}

/// Region of integration in chart coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Box(Vec<(f64, f64)>),
    /// All of `R^n`, mapped onto `(-1, 1)^n` by `x = t / (1 - t²)²`.
    Plane(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error: f64,
    pub boxes: usize,
}

fn plane_map(t: f64) -> (f64, f64) {
    let s = 1.0 - t * t;
    (t / (s * s), (1.0 + 3.0 * t * t) / (s * s * s))
}

fn tensor_rule<F>(f: &F, bounds: &[(f64, f64)], rule: &[(f64, f64)], scratch: &mut Vec<f64>) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let n = bounds.len();
    let k = rule.len();
    let total = k.pow(n as u32);
    let mut sum = 0.0;
    for idx in 0..total {
        let mut rem = idx;
        let mut w = 1.0;
        scratch.clear();
        for &(lo, hi) in bounds {
            let (node, weight) = rule[rem % k];
            rem /= k;
            let half = 0.5 * (hi - lo);
            scratch.push(lo + half * (node + 1.0));
            w *= weight * half;
        }
        sum += w * f(scratch)?;
    }
    Ok(sum)
}

fn volume(bounds: &[(f64, f64)]) -> f64 {
    bounds.iter().map(|(lo, hi)| hi - lo).product()
}

/// Integrates `f` over `region` to absolute tolerance `q.tolerance`.
///
/// Boxes are refined in generations evaluated in parallel; contributions are
/// summed in box order, so the result does not depend on scheduling.
pub fn integrate<F>(f: F, region: &Region, q: &Quadrature) -> Result<QuadratureResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    match region {
        Region::Box(bounds) => adaptive(&f, bounds.clone(), q),
        Region::Plane(n) => {
            let g = |t: &[f64]| -> Result<f64> {
                let mut x = Vec::with_capacity(t.len());
                let mut jac = 1.0;
                for &ti in t {
                    let (xi, ji) = plane_map(ti);
                    x.push(xi);
                    jac *= ji;
                }
                let v = f(&x)?;
                Ok(if v == 0.0 { 0.0 } else { v * jac })
            };
            adaptive(&g, vec![(-1.0, 1.0); *n], q)
        }
    }
}

fn adaptive<F>(f: &F, root: Vec<(f64, f64)>, q: &Quadrature) -> Result<QuadratureResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    if root.is_empty() {
        let v = f(&[])?;
        return Ok(QuadratureResult {
            value: v,
            error: 0.0,
            boxes: 1,
        });
    }
    let total_volume = volume(&root);
    let mut active = vec![root];
    let (mut done_value, mut done_error) = (0.0, 0.0);
    let mut boxes = 0;
    loop {
        boxes += active.len();
        let results: Vec<(f64, f64)> = active
            .par_iter()
            .map_init(Vec::new, |scratch, b| {
                let hi = tensor_rule(f, b, &GL7, scratch)?;
                let lo = tensor_rule(f, b, &GL5, scratch)?;
                Ok((hi, (hi - lo).abs()))
            })
            .collect::<Result<_>>()?;
        let pending_error: f64 = results.iter().map(|r| r.1).sum();
        if done_error + pending_error <= q.tolerance {
            let value = done_value + results.iter().map(|r| r.0).sum::<f64>();
            return Ok(QuadratureResult {
                value,
                error: done_error + pending_error,
                boxes,
            });
        }
        let mut next = Vec::new();
        for (b, (v, e)) in active.into_iter().zip(results) {
            if e <= q.tolerance * volume(&b) / total_volume {
                done_value += v;
                done_error += e;
            } else {
                let (dim, _) = b
                    .iter()
                    .enumerate()
                    .map(|(i, (lo, hi))| (i, hi - lo))
                    .fold((0, f64::MIN), |best, c| if c.1 > best.1 { c } else { best });
                let mid = 0.5 * (b[dim].0 + b[dim].1);
                let mut left = b.clone();
                left[dim].1 = mid;
                let mut right = b;
                right[dim].0 = mid;
                next.push(left);
                next.push(right);
            }
        }
        if boxes + next.len() > q.budget {
            return Err(Error::Quadrature {
                estimate: done_value,
                error: done_error + pending_error,
                boxes,
            });
        }
        active = next;
    }
}
