//! Finite groupoids: cochain complex, convolution algebra and trace.
//!
//! Composition is written functionally: `g ∘ h` is defined when
//! `s(g) = t(h)`, and `λ_g: E_{s(g)} → E_{t(g)}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::rank;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    unit: Vec<usize>,
    inverse: Vec<usize>,
    /// `table[g * n_arrows + h] = g ∘ h` when composable.
    table: Vec<Option<usize>>,
}

impl FiniteGroupoid {
    /// Builds and validates a groupoid from `(source, target)` per arrow, the
    /// unit arrow of each object, inverses, and the products `((g, h), g ∘ h)`
    /// of all composable pairs.
    pub fn new(
        n_objects: usize,
        arrows: Vec<(usize, usize)>,
        unit: Vec<usize>,
        inverse: Vec<usize>,
        compose: impl IntoIterator<Item = ((usize, usize), usize)>,
    ) -> Result<Self> {
        let na = arrows.len();
        let bad = |msg: String| Err(Error::InvalidGroupoid(msg));
        if unit.len() != n_objects || inverse.len() != na {
            return bad("unit or inverse table has the wrong length".into());
        }
        if let Some(&(s, t)) = arrows.iter().find(|(s, t)| *s >= n_objects || *t >= n_objects) {
            return bad(format!("arrow {s} -> {t} leaves the object set"));
        }
        if unit.iter().chain(&inverse).any(|&g| g >= na) {
            return bad("unit or inverse names an unknown arrow".into());
        }
        let mut table = vec![None; na * na];
        for ((g, h), gh) in compose {
            if g >= na || h >= na || gh >= na {
                return bad(format!("product ({g}, {h}) -> {gh} names an unknown arrow"));
            }
            if table[g * na + h].replace(gh).is_some() {
                return bad(format!("product ({g}, {h}) given twice"));
            }
        }
        let grp = FiniteGroupoid {
            n_objects,
            source: arrows.iter().map(|a| a.0).collect(),
            target: arrows.iter().map(|a| a.1).collect(),
            unit,
            inverse,
            table,
        };
        grp.check()?;
        Ok(grp)
    }

    fn check(&self) -> Result<()> {
        let na = self.n_arrows();
        let fail = |msg: String| Err(Error::InvalidGroupoid(msg));
        for g in 0..na {
            for h in 0..na {
                let composable = self.source[g] == self.target[h];
                match (composable, self.table[g * na + h]) {
                    (true, None) => return fail(format!("missing product of composable arrows {g} and {h}")),
                    (false, Some(_)) => return fail(format!("product given for non-composable arrows {g} and {h}")),
                    (true, Some(gh)) => {
                        if self.source[gh] != self.source[h] || self.target[gh] != self.target[g] {
                            return fail(format!("product {g}∘{h} has the wrong endpoints"));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for (x, &u) in self.unit.iter().enumerate() {
            if self.source[u] != x || self.target[u] != x {
                return fail(format!("unit of object {x} is not a loop at {x}"));
            }
        }
        for g in 0..na {
            let (s, t) = (self.source[g], self.target[g]);
            if self.compose(self.unit[t], g) != Some(g) || self.compose(g, self.unit[s]) != Some(g) {
                return fail(format!("unit law fails for arrow {g}"));
            }
            let gi = self.inverse[g];
            if self.compose(g, gi) != Some(self.unit[t]) || self.compose(gi, g) != Some(self.unit[s]) {
                return fail(format!("inverse law fails for arrow {g}"));
            }
        }
        for f in 0..na {
            for g in 0..na {
                let Some(fg) = self.compose(f, g) else { continue };
                for h in 0..na {
                    let Some(gh) = self.compose(g, h) else { continue };
                    if self.compose(fg, h) != self.compose(f, gh) {
                        return fail(format!("associativity fails for ({f}, {g}, {h})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The pair groupoid on `n` points; arrow `i * n + j` goes from `j` to `i`.
    pub fn pair(n: usize) -> Self {
        let arrows = (0..n * n).map(|a| (a % n, a / n)).collect();
        let unit = (0..n).map(|i| i * n + i).collect();
        let inverse = (0..n * n).map(|a| (a % n) * n + a / n).collect();
        let mut compose = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    compose.push(((i * n + j, j * n + k), i * n + k));
                }
            }
        }
        FiniteGroupoid::new(n, arrows, unit, inverse, compose).expect("pair groupoid axioms")
    }

    /// A group over a single object from its multiplication table.
    pub fn group(mul: &[Vec<usize>]) -> Result<Self> {
        let n = mul.len();
        let e = (0..n)
            .find(|&e| (0..n).all(|g| mul[e].get(g) == Some(&g) && mul[g].get(e) == Some(&g)))
            .ok_or_else(|| Error::InvalidGroupoid("multiplication table has no identity".into()))?;
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| mul[g][h] == e)
                    .ok_or_else(|| Error::InvalidGroupoid(format!("element {g} has no inverse")))
            })
            .collect::<Result<_>>()?;
        let compose = (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .map(|(g, h)| ((g, h), mul[g][h]));
        FiniteGroupoid::new(1, vec![(0, 0); n], vec![e], inverse, compose)
    }

    /// The cyclic group `Z/n`.
    pub fn cyclic(n: usize) -> Self {
        let mul: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        FiniteGroupoid::group(&mul).expect("cyclic group axioms")
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let (no, na) = (self.n_objects, self.n_arrows());
        let mut arrows: Vec<(usize, usize)> = self.source.iter().copied().zip(self.target.iter().copied()).collect();
        arrows.extend(other.source.iter().zip(&other.target).map(|(s, t)| (s + no, t + no)));
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().map(|u| u + na));
        let mut inverse = self.inverse.clone();
        inverse.extend(other.inverse.iter().map(|g| g + na));
        let mut compose = Vec::new();
        for (grp, offset) in [(self, 0), (other, na)] {
            let n = grp.n_arrows();
            for g in 0..n {
                for h in 0..n {
                    if let Some(gh) = grp.compose(g, h) {
                        compose.push(((g + offset, h + offset), gh + offset));
                    }
                }
            }
        }
        FiniteGroupoid::new(no + other.n_objects, arrows, unit, inverse, compose).expect("union of groupoids")
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_arrows(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn target(&self, g: usize) -> usize {
        self.target[g]
    }

    pub fn unit(&self, x: usize) -> usize {
        self.unit[x]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// `g ∘ h`, defined when `s(g) = t(h)`.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.table[g * self.n_arrows() + h]
    }

    /// Orbit label of every object.
    pub fn orbits(&self) -> Vec<usize> {
        let mut label: Vec<Option<usize>> = vec![None; self.n_objects];
        let mut next = 0;
        for x in 0..self.n_objects {
            if label[x].is_some() {
                continue;
            }
            label[x] = Some(next);
            for g in 0..self.n_arrows() {
                if self.source[g] == x {
                    label[self.target[g]] = Some(next);
                }
            }
            next += 1;
        }
        label.into_iter().map(|l| l.expect("labelled")).collect()
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits().into_iter().max().map_or(0, |m| m + 1)
    }

    /// `G_k`: composable strings `(g_1, ..., g_k)` with `s(g_i) = t(g_{i+1})`;
    /// for `k = 0`, one empty string per object, listed by object.
    pub fn nerve(&self, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return (0..self.n_objects).map(|_| Vec::new()).collect();
        }
        let mut out: Vec<Vec<usize>> = (0..self.n_arrows()).map(|g| vec![g]).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for s in &out {
                let last = *s.last().expect("nonempty");
                for h in 0..self.n_arrows() {
                    if self.source[last] == self.target[h] {
                        let mut t = s.clone();
                        t.push(h);
                        next.push(t);
                    }
                }
            }
            out = next;
        }
        out
    }
}

/// A representation: a vector space `E_x` per object and `λ_g: E_{s(g)} → E_{t(g)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteRep {
    dims: Vec<usize>,
    matrices: Vec<Vec<Vec<BigRational>>>,
}

fn identity(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>], inner: usize, cols: usize) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .map(|k| &row[k] * &b[k][j])
                        .fold(BigRational::zero(), |s, v| s + v)
                })
                .collect()
        })
        .collect()
}

impl FiniteRep {
    /// Validates shapes, `λ_{u(x)} = id` and `λ_g λ_h = λ_{g∘h}`.
    pub fn new(grp: &FiniteGroupoid, dims: Vec<usize>, matrices: Vec<Vec<Vec<BigRational>>>) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidRepresentation(msg));
        if dims.len() != grp.n_objects() || matrices.len() != grp.n_arrows() {
            return fail("one dimension per object and one matrix per arrow are required".into());
        }
        for (g, m) in matrices.iter().enumerate() {
            let (rows, cols) = (dims[grp.target(g)], dims[grp.source(g)]);
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return fail(format!("matrix of arrow {g} must be {rows}x{cols}"));
            }
        }
        for x in 0..grp.n_objects() {
            if matrices[grp.unit(x)] != identity(dims[x]) {
                return fail(format!("unit arrow of object {x} does not act as the identity"));
            }
        }
        for g in 0..grp.n_arrows() {
            for h in 0..grp.n_arrows() {
                if let Some(gh) = grp.compose(g, h) {
                    let prod = mat_mul(&matrices[g], &matrices[h], dims[grp.source(g)], dims[grp.source(h)]);
                    if prod != matrices[gh] {
                        return fail(format!("λ_{g} λ_{h} differs from λ of their product"));
                    }
                }
            }
        }
        Ok(FiniteRep { dims, matrices })
    }

    /// The trivial line representation.
    pub fn trivial(grp: &FiniteGroupoid) -> Self {
        FiniteRep {
            dims: vec![1; grp.n_objects()],
            matrices: vec![identity(1); grp.n_arrows()],
        }
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn matrix(&self, g: usize) -> &[Vec<BigRational>] {
        &self.matrices[g]
    }
}

/// Offsets of each string's block in `C^k = ⊕_{G_k} E_{t(g_1)}`.
struct CochainLayout {
    strings: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    offsets: Vec<usize>,
    dim: usize,
}

fn layout(grp: &FiniteGroupoid, rep: &FiniteRep, k: usize) -> CochainLayout {
    let strings = grp.nerve(k);
    let mut offsets = Vec::with_capacity(strings.len());
    let mut index = BTreeMap::new();
    let mut dim = 0;
    for (i, s) in strings.iter().enumerate() {
        offsets.push(dim);
        let fibre = if k == 0 { i } else { grp.target(s[0]) };
        dim += rep.dim(fibre);
        if k > 0 {
            index.insert(s.clone(), i);
        }
    }
    CochainLayout {
        strings,
        index,
        offsets,
        dim,
    }
}

/// The differential `C^k → C^{k+1}` as a matrix (rows index `C^{k+1}`):
///
/// `dφ(g_1..g_{k+1}) = λ_{g_1} φ(g_2..g_{k+1})
///     + Σ_{i=1}^k (-1)^i φ(.., g_i g_{i+1}, ..) + (-1)^{k+1} φ(g_1..g_k)`.
pub fn differential_matrix(grp: &FiniteGroupoid, rep: &FiniteRep, k: usize) -> Vec<Vec<BigRational>> {
    let src = layout(grp, rep, k);
    let dst = layout(grp, rep, k + 1);
    let mut m = vec![vec![BigRational::zero(); src.dim]; dst.dim];
    // Adds `sign · A` into the block (row string, column string).
    let mut add = |row: usize, col_block: usize, a: &[Vec<BigRational>], sign: i64| {
        let (r0, c0) = (dst.offsets[row], src.offsets[col_block]);
        for (i, arow) in a.iter().enumerate() {
            for (j, v) in arow.iter().enumerate() {
                if !v.is_zero() {
                    m[r0 + i][c0 + j] += v * BigRational::from_integer(sign.into());
                }
            }
        }
    };
    // Degree-0 blocks are indexed by object, higher ones by string.
    let block_of = |s: &[usize]| src.index[s];
    for (row, s) in dst.strings.iter().enumerate() {
        let g1 = s[0];
        let fibre = rep.dim(grp.target(g1));
        let id = identity(fibre);
        // λ_{g_1} φ(g_2..)
        let first = if k == 0 { grp.source(g1) } else { block_of(&s[1..]) };
        add(row, first, rep.matrix(g1), 1);
        for i in 1..=k {
            let mut t = s[..i - 1].to_vec();
            t.push(grp.compose(s[i - 1], s[i]).expect("composable string"));
            t.extend_from_slice(&s[i + 1..]);
            add(row, block_of(&t), &id, if i % 2 == 0 { 1 } else { -1 });
        }
        let last = if k == 0 { grp.target(g1) } else { block_of(&s[..k]) };
        add(row, last, &id, if (k + 1) % 2 == 0 { 1 } else { -1 });
    }
    m
}

/// Betti numbers `b_0..b_max_degree` of the cochain complex, by exact rank.
pub fn groupoid_cohomology(grp: &FiniteGroupoid, rep: &FiniteRep, max_degree: usize) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=max_degree)
        .map(|k| rank(&differential_matrix(grp, rep, k)))
        .collect();
    (0..=max_degree)
        .map(|k| {
            let dim = layout(grp, rep, k).dim;
            dim - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }
        })
        .collect()
}

/// `(f_1 * f_2)(g) = Σ_{h : s(h) = s(g)} f_1(g ∘ h^{-1}) f_2(h)`.
pub fn convolve(grp: &FiniteGroupoid, f1: &[BigRational], f2: &[BigRational]) -> Result<Vec<BigRational>> {
    let na = grp.n_arrows();
    if f1.len() != na || f2.len() != na {
        return Err(Error::Dimension(format!("arrow functions need {na} values")));
    }
    Ok((0..na)
        .map(|g| {
            (0..na)
                .filter(|&h| grp.source(h) == grp.source(g) && !f2[h].is_zero())
                .map(|h| {
                    let gh = grp.compose(g, grp.inverse(h)).expect("s(g) = t(h^{-1})");
                    &f1[gh] * &f2[h]
                })
                .fold(BigRational::zero(), |s, v| s + v)
        })
        .collect())
}

/// The indicator of the unit arrows, the identity for convolution.
pub fn unit_function(grp: &FiniteGroupoid) -> Vec<BigRational> {
    let mut f = vec![BigRational::zero(); grp.n_arrows()];
    for x in 0..grp.n_objects() {
        f[grp.unit(x)] = BigRational::one();
    }
    f
}

/// Checks that object weights are positive and constant on orbits.
pub fn check_weights(grp: &FiniteGroupoid, weights: &[BigRational]) -> Result<()> {
    if weights.len() != grp.n_objects() {
        return Err(Error::Dimension(format!(
            "{} weights for {} objects",
            weights.len(),
            grp.n_objects()
        )));
    }
    if let Some(x) = weights.iter().position(|w| !w.is_positive()) {
        return Err(Error::NonInvariantWeights(format!(
            "weight of object {x} is not positive"
        )));
    }
    if let Some(g) = (0..grp.n_arrows()).find(|&g| weights[grp.source(g)] != weights[grp.target(g)]) {
        return Err(Error::NonInvariantWeights(format!(
            "objects {} and {} lie in one orbit but have weights {} and {}",
            grp.source(g),
            grp.target(g),
            weights[grp.source(g)],
            weights[grp.target(g)]
        )));
    }
    Ok(())
}

/// `τ_Ω(f) = Σ_x f(u(x)) Ω(x)` for orbit-constant positive weights `Ω`.
pub fn trace(grp: &FiniteGroupoid, f: &[BigRational], weights: &[BigRational]) -> Result<BigRational> {
    check_weights(grp, weights)?;
    trace_unchecked(grp, f, weights)
}

fn trace_unchecked(grp: &FiniteGroupoid, f: &[BigRational], weights: &[BigRational]) -> Result<BigRational> {
    if f.len() != grp.n_arrows() {
        return Err(Error::Dimension(format!(
            "arrow functions need {} values",
            grp.n_arrows()
        )));
    }
    Ok((0..grp.n_objects()).fold(BigRational::zero(), |s, x| s + &f[grp.unit(x)] * &weights[x]))
}

/// Functions witnessing that non-invariant weights break the trace property.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceCounterexample {
    pub f1: Vec<BigRational>,
    pub f2: Vec<BigRational>,
    /// `τ(f_1 * f_2)`.
    pub forward: BigRational,
    /// `τ(f_2 * f_1)`.
    pub backward: BigRational,
}

/// For weights that differ across an arrow `g`, the pair `δ_g, δ_{g^{-1}}`
/// with `τ(δ_g * δ_{g^{-1}}) = Ω(t(g))` and `τ(δ_{g^{-1}} * δ_g) = Ω(s(g))`.
pub fn trace_counterexample(grp: &FiniteGroupoid, weights: &[BigRational]) -> Result<Option<TraceCounterexample>> {
    if weights.len() != grp.n_objects() {
        return Err(Error::Dimension(format!(
            "{} weights for {} objects",
            weights.len(),
            grp.n_objects()
        )));
    }
    let Some(g) = (0..grp.n_arrows()).find(|&g| weights[grp.source(g)] != weights[grp.target(g)]) else {
        return Ok(None);
    };
    let delta = |a: usize| -> Vec<BigRational> {
        (0..grp.n_arrows())
            .map(|b| {
                if a == b {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    };
    let (f1, f2) = (delta(g), delta(grp.inverse(g)));
    let forward = trace_unchecked(grp, &convolve(grp, &f1, &f2)?, weights)?;
    let backward = trace_unchecked(grp, &convolve(grp, &f2, &f1)?, weights)?;
    Ok(Some(TraceCounterexample {
        f1,
        f2,
        forward,
        backward,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;

    fn is_zero_product(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> bool {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        mat_mul(a, b, inner, cols).iter().flatten().all(Zero::is_zero)
    }

    #[test]
    fn differential_squares_to_zero() {
        let groupoids = [
            FiniteGroupoid::pair(3),
            FiniteGroupoid::cyclic(2),
            FiniteGroupoid::cyclic(3),
        ];
        for grp in &groupoids {
            let rep = FiniteRep::trivial(grp);
            for k in 0..3 {
                let d0 = differential_matrix(grp, &rep, k);
                let d1 = differential_matrix(grp, &rep, k + 1);
                assert!(is_zero_product(&d1, &d0), "k = {k}");
            }
        }
        // The sign representation of Z/2.
        let z2 = FiniteGroupoid::cyclic(2);
        let sign = FiniteRep::new(&z2, vec![1], vec![vec![vec![int(1)]], vec![vec![int(-1)]]]).unwrap();
        for k in 0..3 {
            let d0 = differential_matrix(&z2, &sign, k);
            let d1 = differential_matrix(&z2, &sign, k + 1);
            assert!(is_zero_product(&d1, &d0));
        }
        assert_eq!(groupoid_cohomology(&z2, &sign, 3), vec![0, 0, 0, 0]);
    }

    #[test]
    fn betti_numbers() {
        let p3 = FiniteGroupoid::pair(3);
        assert_eq!(groupoid_cohomology(&p3, &FiniteRep::trivial(&p3), 3), vec![1, 0, 0, 0]);
        let two = FiniteGroupoid::pair(2).disjoint_union(&FiniteGroupoid::pair(3));
        assert_eq!(groupoid_cohomology(&two, &FiniteRep::trivial(&two), 2), vec![2, 0, 0]);
        assert_eq!(two.num_orbits(), 2);
        let z2 = FiniteGroupoid::cyclic(2);
        assert_eq!(groupoid_cohomology(&z2, &FiniteRep::trivial(&z2), 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn convolution_on_the_pair_groupoid_is_matrix_multiplication() {
        let p3 = FiniteGroupoid::pair(3);
        let f1: Vec<BigRational> = (0..9).map(|i| int(i * i - 3)).collect();
        let f2: Vec<BigRational> = (0..9).map(|i| int(2 * i + 1)).collect();
        let conv = convolve(&p3, &f1, &f2).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                let expected: BigRational = (0..3).map(|j| &f1[i * 3 + j] * &f2[j * 3 + k]).sum();
                assert_eq!(conv[i * 3 + k], expected);
            }
        }
        let unit = unit_function(&p3);
        assert_eq!(convolve(&p3, &unit, &f2).unwrap(), f2);
        assert_eq!(trace(&p3, &f1, &[int(1), int(1), int(1)]).unwrap(), int(-3 + 13 + 61));
    }

    #[test]
    fn group_algebra_of_z2() {
        let z2 = FiniteGroupoid::cyclic(2);
        let a = vec![int(2), int(3)];
        let b = vec![int(5), int(7)];
        assert_eq!(
            convolve(&z2, &a, &b).unwrap(),
            vec![int(2 * 5 + 3 * 7), int(2 * 7 + 3 * 5)]
        );
    }

    #[test]
    fn non_invariant_weights() {
        let p3 = FiniteGroupoid::pair(3);
        let weights = [int(1), int(2), int(1)];
        assert!(matches!(
            trace(&p3, &unit_function(&p3), &weights),
            Err(Error::NonInvariantWeights(_))
        ));
        let ce = trace_counterexample(&p3, &weights).unwrap().unwrap();
        assert_ne!(ce.forward, ce.backward);
        assert!(trace_counterexample(&p3, &[int(2), int(2), int(2)]).unwrap().is_none());
        let off_units: Vec<BigRational> = (0..9)
            .map(|a| if a % 4 == 0 { int(0) } else { int(a as i64) })
            .collect();
        assert_eq!(trace(&p3, &off_units, &[int(1), int(1), int(1)]).unwrap(), int(0));
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let bad = FiniteGroupoid::group(&[vec![0, 1], vec![1, 1]]);
        assert!(matches!(bad, Err(Error::InvalidGroupoid(_))));
        let z2 = FiniteGroupoid::cyclic(2);
        let rep = FiniteRep::new(&z2, vec![1], vec![vec![vec![int(1)]], vec![vec![int(2)]]]);
        assert!(matches!(rep, Err(Error::InvalidRepresentation(_))));
    }
}
