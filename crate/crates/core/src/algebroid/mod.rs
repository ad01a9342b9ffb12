//! Lie algebroids presented in a frame over a single chart.

mod morphism;

use std::fmt;

use num_rational::BigRational;

pub use morphism::AlgebroidMorphism;

use crate::error::{Error, Result};
use crate::scalar::rational::int;
use crate::scalar::Scalar;

/// A Lie algebroid over a chart with coordinates `x^1..x^n`, in a frame
/// `e_1..e_r`: anchor `ρ(e_α) = Σ_i ρ^i_α ∂_i` and brackets
/// `[e_α, e_β] = Σ_γ C^γ_{αβ} e_γ`.
///
/// Structure functions are stored for `α < β` only. Indices in the API are
/// zero-based; reports and rendered output use one-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebroidPresentation<S> {
    coords: Vec<String>,
    rank: usize,
    anchor: Vec<Vec<S>>,
    structure: Vec<Vec<S>>,
    antisymmetry_defects: Vec<Violation<S>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    Antisymmetry,
    AnchorMorphism,
    Jacobi,
    AnchorCompatibility,
    BracketCompatibility,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Antisymmetry => "antisymmetry",
            ViolationKind::AnchorMorphism => "anchor morphism",
            ViolationKind::Jacobi => "Jacobi",
            ViolationKind::AnchorCompatibility => "anchor compatibility",
            ViolationKind::BracketCompatibility => "bracket compatibility",
        })
    }
}

/// One failed identity: the one-based frame indices it was checked on, the
/// one-based output component, and the nonzero residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<S> {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
    pub component: usize,
    pub residual: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<S> {
    pub violations: Vec<Violation<S>>,
}

impl<S: Scalar> ValidationReport<S> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind, indices: &[usize]) -> bool {
        self.violations.iter().any(|v| v.kind == kind && v.indices == indices)
    }

    /// One line per violation, using the given coordinate names.
    pub fn render(&self, names: &[String]) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| {
                let idx: Vec<String> = v.indices.iter().map(usize::to_string).collect();
                format!(
                    "{} violated at ({}), component {}: residual {}",
                    v.kind,
                    idx.join(","),
                    v.component,
                    v.residual.display_with(names)
                )
            })
            .collect()
    }
}

fn pair_index(a: usize, b: usize, rank: usize) -> usize {
    debug_assert!(a < b && b < rank);
    a * rank - a * (a + 1) / 2 + (b - a - 1)
}

/// Coordinate names `prefix1, prefix2, ...`.
pub fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl<S: Scalar> AlgebroidPresentation<S> {
    /// Builds a presentation from the anchor (`anchor[α][i] = ρ^i_α`) and
    /// the brackets of pairs `α < β` (`brackets[(α, β)][γ] = C^γ_{αβ}`);
    /// missing pairs have zero bracket.
    pub fn new(
        coords: Vec<String>,
        anchor: Vec<Vec<S>>,
        brackets: impl IntoIterator<Item = ((usize, usize), Vec<S>)>,
    ) -> Result<Self> {
        let n = coords.len();
        let rank = anchor.len();
        if rank > 64 {
            return Err(Error::Dimension(format!("rank {rank} exceeds 64")));
        }
        for (a, row) in anchor.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "anchor row {} has {} entries, expected {n}",
                    a + 1,
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|s| s.nvars() != n) {
                return Err(Error::Dimension(format!(
                    "anchor entry over {} variables in a {n}-coordinate chart",
                    bad.nvars()
                )));
            }
        }
        let npairs = rank * rank.saturating_sub(1) / 2;
        let mut structure = vec![vec![S::zero(n); rank]; npairs];
        for ((a, b), coeffs) in brackets {
            if a >= rank || b >= rank {
                return Err(Error::FrameIndex { index: a.max(b), rank });
            }
            if coeffs.len() != rank || coeffs.iter().any(|s| s.nvars() != n) {
                return Err(Error::Dimension(format!(
                    "bracket [e{}, e{}] needs {rank} coefficients over {n} variables",
                    a + 1,
                    b + 1
                )));
            }
            match a.cmp(&b) {
                std::cmp::Ordering::Less => structure[pair_index(a, b, rank)] = coeffs,
                std::cmp::Ordering::Greater => {
                    structure[pair_index(b, a, rank)] = coeffs.iter().map(S::negated).collect()
                }
                std::cmp::Ordering::Equal => {
                    return Err(Error::Dimension(format!(
                        "bracket of e{} with itself is implied to be zero",
                        a + 1
                    )))
                }
            }
        }
        Ok(AlgebroidPresentation {
            coords,
            rank,
            anchor,
            structure,
            antisymmetry_defects: Vec::new(),
        })
    }

    /// Builds from a full array `structure[α][β][γ] = C^γ_{αβ}`. Entries with
    /// `α < β` are used; failures of antisymmetry are kept and reported by
    /// [`validate`](Self::validate).
    pub fn from_full_structure(coords: Vec<String>, anchor: Vec<Vec<S>>, structure: Vec<Vec<Vec<S>>>) -> Result<Self> {
        let rank = anchor.len();
        if structure.len() != rank || structure.iter().any(|r| r.len() != rank) {
            return Err(Error::Dimension(format!(
                "structure array must be {rank}x{rank}x{rank}"
            )));
        }
        let mut pairs = Vec::new();
        let mut defects = Vec::new();
        for a in 0..rank {
            for b in 0..rank {
                let coeffs = &structure[a][b];
                if coeffs.len() != rank {
                    return Err(Error::Dimension(format!(
                        "structure array must be {rank}x{rank}x{rank}"
                    )));
                }
                if a < b {
                    pairs.push(((a, b), coeffs.clone()));
                }
                if a <= b {
                    for (g, c) in coeffs.iter().enumerate() {
                        let residual = c.plus(&structure[b][a][g]);
                        if !residual.vanishes() {
                            defects.push(Violation {
                                kind: ViolationKind::Antisymmetry,
                                indices: vec![a + 1, b + 1],
                                component: g + 1,
                                residual,
                            });
                        }
                    }
                }
            }
        }
        let mut out = AlgebroidPresentation::new(coords, anchor, pairs)?;
        out.antisymmetry_defects = defects;
        Ok(out)
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn base_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `ρ^i_α`.
    pub fn anchor(&self, alpha: usize, i: usize) -> &S {
        &self.anchor[alpha][i]
    }

    pub fn anchor_row(&self, alpha: usize) -> &[S] {
        &self.anchor[alpha]
    }

    /// `C^γ_{αβ}` for all `γ`.
    pub fn bracket(&self, a: usize, b: usize) -> Vec<S> {
        let n = self.base_dim();
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.structure[pair_index(a, b, self.rank)].clone(),
            std::cmp::Ordering::Greater => self.structure[pair_index(b, a, self.rank)]
                .iter()
                .map(S::negated)
                .collect(),
            std::cmp::Ordering::Equal => vec![S::zero(n); self.rank],
        }
    }

    /// `C^γ_{αβ}`.
    pub fn structure(&self, a: usize, b: usize, g: usize) -> S {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.structure[pair_index(a, b, self.rank)][g].clone(),
            std::cmp::Ordering::Greater => self.structure[pair_index(b, a, self.rank)][g].negated(),
            std::cmp::Ordering::Equal => S::zero(self.base_dim()),
        }
    }

    /// `ρ(e_α)(f)`.
    pub fn anchor_apply(&self, alpha: usize, f: &S) -> S {
        let mut acc = S::zero(self.base_dim());
        for (i, coeff) in self.anchor[alpha].iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let df = f.derive(i).expect("index within chart");
            if !df.is_zero() {
                acc = acc.plus(&coeff.times(&df));
            }
        }
        acc
    }

    /// Whether every structure function is constant and the anchor vanishes.
    pub fn is_lie_algebra(&self) -> bool {
        self.base_dim() == 0
    }

    /// Checks antisymmetry, the anchor morphism property and the Jacobi
    /// identity (with the Leibniz correction for non-constant structure
    /// functions).
    pub fn validate(&self) -> ValidationReport<S> {
        let mut violations = self.antisymmetry_defects.clone();
        let r = self.rank;
        let n = self.base_dim();
        for a in 0..r {
            for b in a + 1..r {
                let c = self.bracket(a, b);
                for i in 0..n {
                    // ρ([e_a,e_b]) - [ρ(e_a), ρ(e_b)], component i.
                    let mut lhs = S::zero(n);
                    for (g, cg) in c.iter().enumerate() {
                        if !cg.is_zero() {
                            lhs = lhs.plus(&cg.times(&self.anchor[g][i]));
                        }
                    }
                    let commutator = self
                        .anchor_apply(a, &self.anchor[b][i])
                        .minus(&self.anchor_apply(b, &self.anchor[a][i]));
                    let residual = lhs.minus(&commutator);
                    if !residual.vanishes() {
                        violations.push(Violation {
                            kind: ViolationKind::AnchorMorphism,
                            indices: vec![a + 1, b + 1],
                            component: i + 1,
                            residual,
                        });
                    }
                }
            }
        }
        for a in 0..r {
            for b in a + 1..r {
                for c in b + 1..r {
                    let jac = self.jacobiator(a, b, c);
                    for (e, residual) in jac.into_iter().enumerate() {
                        if !residual.vanishes() {
                            violations.push(Violation {
                                kind: ViolationKind::Jacobi,
                                indices: vec![a + 1, b + 1, c + 1],
                                component: e + 1,
                                residual,
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Frame components of `[[e_a,e_b],e_c] + [[e_b,e_c],e_a] + [[e_c,e_a],e_b]`.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> Vec<S> {
        let n = self.base_dim();
        let mut out = vec![S::zero(n); self.rank];
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            // [[e_x,e_y],e_z] = Σ_δ C^δ_{xy} [e_δ,e_z] - ρ_z(C^δ_{xy}) e_δ
            let cxy = self.bracket(x, y);
            for (d, cd) in cxy.iter().enumerate() {
                if cd.is_zero() {
                    continue;
                }
                for (e, ce) in self.bracket(d, z).iter().enumerate() {
                    if !ce.is_zero() {
                        out[e] = out[e].plus(&cd.times(ce));
                    }
                }
                let drift = self.anchor_apply(z, cd);
                out[d] = out[d].minus(&drift);
            }
        }
        out
    }

    /// The tangent algebroid of an `n`-dimensional chart in the coordinate frame.
    pub fn tangent(n: usize) -> Self {
        Self::tangent_named(numbered("x", n))
    }

    pub fn tangent_named(coords: Vec<String>) -> Self {
        let n = coords.len();
        let anchor = (0..n)
            .map(|a| (0..n).map(|i| if a == i { S::one(n) } else { S::zero(n) }).collect())
            .collect();
        AlgebroidPresentation::new(coords, anchor, []).expect("well-formed")
    }

    /// A Lie algebra over a point from `constants[α][β][γ] = C^γ_{αβ}`.
    pub fn lie_algebra(constants: &[Vec<Vec<BigRational>>]) -> Result<Self> {
        Self::action(constants, Vec::new(), Vec::new())
    }

    /// The action algebroid of a Lie algebra acting on a chart through the
    /// vector fields `fields[α][i]`. Fails if the result does not validate.
    pub fn action(constants: &[Vec<Vec<BigRational>>], coords: Vec<String>, fields: Vec<Vec<S>>) -> Result<Self> {
        let n = coords.len();
        let r = constants.len();
        let anchor = if fields.is_empty() { vec![Vec::new(); r] } else { fields };
        if anchor.len() != r {
            return Err(Error::Dimension(format!(
                "{} vector fields for a {r}-dimensional Lie algebra",
                anchor.len()
            )));
        }
        let structure = constants
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cs| cs.iter().map(|c| S::from_rational(c, n)).collect())
                    .collect()
            })
            .collect();
        let out = Self::from_full_structure(coords, anchor, structure)?;
        out.require_valid()
    }

    /// The trivial bundle of rank `r` over an `n`-chart with zero anchor and bracket.
    pub fn abelian_bundle(n: usize, r: usize) -> Self {
        AlgebroidPresentation::new(numbered("x", n), vec![vec![S::zero(n); n]; r], []).expect("well-formed")
    }

    /// Returns `self` if it validates, otherwise the rendered violations.
    pub fn require_valid(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidAlgebroid(report.render(&self.coords).join("; ")))
        }
    }

    /// Direct product over the product chart; mixed brackets vanish.
    pub fn product(&self, other: &Self) -> Self {
        let n1 = self.base_dim();
        let n2 = other.base_dim();
        let n = n1 + n2;
        let left: Vec<S> = (0..n1).map(|i| S::var(i, n)).collect();
        let right: Vec<S> = (0..n2).map(|i| S::var(n1 + i, n)).collect();
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        let r1 = self.rank;
        let mut anchor = Vec::new();
        for a in 0..r1 {
            let mut row: Vec<S> = self.anchor[a].iter().map(|s| s.substitute(&left, n)).collect();
            row.extend((0..n2).map(|_| S::zero(n)));
            anchor.push(row);
        }
        for a in 0..other.rank {
            let mut row: Vec<S> = (0..n1).map(|_| S::zero(n)).collect();
            row.extend(other.anchor[a].iter().map(|s| s.substitute(&right, n)));
            anchor.push(row);
        }
        let r = r1 + other.rank;
        let mut brackets = Vec::new();
        for a in 0..r1 {
            for b in a + 1..r1 {
                let mut c: Vec<S> = self.bracket(a, b).iter().map(|s| s.substitute(&left, n)).collect();
                c.extend((0..other.rank).map(|_| S::zero(n)));
                brackets.push(((a, b), c));
            }
        }
        for a in 0..other.rank {
            for b in a + 1..other.rank {
                let mut c: Vec<S> = (0..r1).map(|_| S::zero(n)).collect();
                c.extend(other.bracket(a, b).iter().map(|s| s.substitute(&right, n)));
                brackets.push(((r1 + a, r1 + b), c));
            }
        }
        debug_assert_eq!(anchor.len(), r);
        AlgebroidPresentation::new(coords, anchor, brackets).expect("well-formed")
    }

    /// Pull-back along the projection of the trivial fibration
    /// `chart × R^m → chart`, whose fibre coordinates get the given names.
    ///
    /// The frame is `h_1..h_r, v_1..v_m`: `h_α` is `e_α` paired with the
    /// horizontal lift of `ρ(e_α)`, and `v_j` is `∂/∂u_j`. Brackets of `h`
    /// are those of `e`; all others vanish.
    pub fn pullback(&self, fibre_coords: Vec<String>) -> Self {
        let n = self.base_dim();
        let m = fibre_coords.len();
        let total = n + m;
        let embed: Vec<S> = (0..n).map(|i| S::var(i, total)).collect();
        let mut coords = self.coords.clone();
        coords.extend(fibre_coords);
        let mut anchor = Vec::new();
        for a in 0..self.rank {
            let mut row: Vec<S> = self.anchor[a].iter().map(|s| s.substitute(&embed, total)).collect();
            row.extend((0..m).map(|_| S::zero(total)));
            anchor.push(row);
        }
        for j in 0..m {
            anchor.push(
                (0..total)
                    .map(|i| if i == n + j { S::one(total) } else { S::zero(total) })
                    .collect(),
            );
        }
        let r = self.rank + m;
        let mut brackets = Vec::new();
        for a in 0..self.rank {
            for b in a + 1..self.rank {
                let mut c: Vec<S> = self.bracket(a, b).iter().map(|s| s.substitute(&embed, total)).collect();
                c.extend((0..m).map(|_| S::zero(total)));
                brackets.push(((a, b), c));
            }
        }
        debug_assert_eq!(anchor.len(), r);
        AlgebroidPresentation::new(coords, anchor, brackets).expect("well-formed")
    }

    /// `π^!A` over the dual bundle `A*`, with fibre coordinates `p1..pr`.
    pub fn cotangent_pullback(&self) -> Self {
        self.pullback(numbered("p", self.rank))
    }

    /// The modular trace `tr ad(e_α) = Σ_β C^β_{αβ}`.
    pub fn trace_ad(&self, alpha: usize) -> S {
        let mut acc = S::zero(self.base_dim());
        for b in 0..self.rank {
            acc = acc.plus(&self.structure(alpha, b, b));
        }
        acc
    }

    /// `div ρ(e_α) = Σ_i ∂_i ρ^i_α`.
    pub fn anchor_divergence(&self, alpha: usize) -> S {
        let mut acc = S::zero(self.base_dim());
        for (i, c) in self.anchor[alpha].iter().enumerate() {
            acc = acc.plus(&c.derive(i).expect("index within chart"));
        }
        acc
    }

    /// Converts every scalar to another backend.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlgebroidPresentation<T> {
        AlgebroidPresentation {
            coords: self.coords.clone(),
            rank: self.rank,
            anchor: self.anchor.iter().map(|row| row.iter().map(&f).collect()).collect(),
            structure: self.structure.iter().map(|row| row.iter().map(&f).collect()).collect(),
            antisymmetry_defects: self
                .antisymmetry_defects
                .iter()
                .map(|v| Violation {
                    kind: v.kind,
                    indices: v.indices.clone(),
                    component: v.component,
                    residual: f(&v.residual),
                })
                .collect(),
        }
    }
}

/// A bracket `[e_a, e_b] = Σ c e_g` listed as `((a, b), [(g, c)])`.
pub type BracketTable = [((usize, usize), Vec<(usize, BigRational)>)];

/// Structure constants as a full `r×r×r` array from the brackets of pairs.
pub fn constants_from_brackets(rank: usize, brackets: &BracketTable) -> Vec<Vec<Vec<BigRational>>> {
    let zero = int(0);
    let mut c = vec![vec![vec![zero; rank]; rank]; rank];
    for ((a, b), terms) in brackets {
        for (g, v) in terms {
            c[*a][*b][*g] += v;
            c[*b][*a][*g] -= v;
        }
    }
    c
}

/// Named examples used throughout the test-suite and the command line.
pub mod presets {
    use super::*;
    use crate::scalar::rational::int;

    /// `su(2)`: `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
    pub fn su2<S: Scalar>() -> AlgebroidPresentation<S> {
        AlgebroidPresentation::lie_algebra(&su2_constants(int(1))).expect("su(2) is a Lie algebra")
    }

    /// The `su(2)`-type brackets with `[e1,e2] = k e3`.
    pub fn su2_constants(k: BigRational) -> Vec<Vec<Vec<BigRational>>> {
        constants_from_brackets(
            3,
            &[
                ((0, 1), vec![(2, k)]),
                ((1, 2), vec![(0, int(1))]),
                ((2, 0), vec![(1, int(1))]),
            ],
        )
    }

    /// `aff(1)`: `[e1,e2] = e2`.
    pub fn aff1<S: Scalar>() -> AlgebroidPresentation<S> {
        AlgebroidPresentation::lie_algebra(&constants_from_brackets(2, &[((0, 1), vec![(1, int(1))])]))
            .expect("aff(1) is a Lie algebra")
    }

    /// The abelian Lie algebra `R^n`.
    pub fn abelian<S: Scalar>(n: usize) -> AlgebroidPresentation<S> {
        AlgebroidPresentation::abelian_bundle(0, n)
    }

    /// Rotations of the plane: `e1 ↦ -y ∂x + x ∂y`.
    pub fn so2_plane<S: Scalar>() -> AlgebroidPresentation<S> {
        let coords = vec!["x".to_string(), "y".to_string()];
        let field = vec![S::var(1, 2).negated(), S::var(0, 2)];
        AlgebroidPresentation::action(&[vec![vec![int(0)]]], coords, vec![field]).expect("rotations act on the plane")
    }

    /// `so(3)` acting on `R^3` by infinitesimal rotations, with
    /// `[e1,e2] = e3` cyclically and `e_a ↦ -(x × ∂)_a`.
    pub fn so3_space<S: Scalar>() -> AlgebroidPresentation<S> {
        let coords = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let v = |i| S::var(i, 3);
        let z = || S::zero(3);
        let fields = vec![
            vec![z(), v(2), v(1).negated()],
            vec![v(2).negated(), z(), v(0)],
            vec![v(1), v(0).negated(), z()],
        ];
        AlgebroidPresentation::action(&su2_constants(int(1)), coords, fields).expect("rotations act on space")
    }
}
