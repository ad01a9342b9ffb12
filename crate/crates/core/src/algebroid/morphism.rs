use super::{AlgebroidPresentation, ValidationReport, Violation, ViolationKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A bundle map `φ: A1 → A2` covering a chart map `f`.
///
/// `base_map[i]` is the `i`-th target coordinate as a function of the source
/// coordinates; `phi[b][a]` is the `e2_b` component of `φ(e1_a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebroidMorphism<S> {
    pub base_map: Vec<S>,
    pub phi: Vec<Vec<S>>,
}

impl<S: Scalar> AlgebroidMorphism<S> {
    pub fn new(base_map: Vec<S>, phi: Vec<Vec<S>>) -> Self {
        AlgebroidMorphism { base_map, phi }
    }

    pub fn source_rank(&self) -> usize {
        self.phi.first().map(Vec::len).unwrap_or(0)
    }

    pub fn target_rank(&self) -> usize {
        self.phi.len()
    }

    fn check_dims(&self, a1: &AlgebroidPresentation<S>, a2: &AlgebroidPresentation<S>) -> Result<()> {
        let n1 = a1.base_dim();
        let ok = self.base_map.len() == a2.base_dim()
            && self.base_map.iter().all(|s| s.nvars() == n1)
            && self.phi.len() == a2.rank()
            && self
                .phi
                .iter()
                .all(|row| row.len() == a1.rank() && row.iter().all(|s| s.nvars() == n1));
        if ok {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "morphism shapes do not match rank {} over {} coordinates -> rank {} over {} coordinates",
                a1.rank(),
                n1,
                a2.rank(),
                a2.base_dim()
            )))
        }
    }

    /// The identity of `a`.
    pub fn identity(a: &AlgebroidPresentation<S>) -> Self {
        let n = a.base_dim();
        let r = a.rank();
        AlgebroidMorphism {
            base_map: (0..n).map(|i| S::var(i, n)).collect(),
            phi: (0..r)
                .map(|b| (0..r).map(|c| if b == c { S::one(n) } else { S::zero(n) }).collect())
                .collect(),
        }
    }

    /// The anchor `ρ: A → TM` over the identity of the chart.
    pub fn anchor_of(a: &AlgebroidPresentation<S>) -> Self {
        let n = a.base_dim();
        AlgebroidMorphism {
            base_map: (0..n).map(|i| S::var(i, n)).collect(),
            phi: (0..n)
                .map(|i| (0..a.rank()).map(|al| a.anchor(al, i).clone()).collect())
                .collect(),
        }
    }

    /// The zero section `A → π^!A` for a pull-back with `m` fibre
    /// coordinates: `x ↦ (x, 0)`, `e_α ↦ h_α`.
    pub fn zero_section(a: &AlgebroidPresentation<S>, m: usize) -> Self {
        let n = a.base_dim();
        let r = a.rank();
        let mut base_map: Vec<S> = (0..n).map(|i| S::var(i, n)).collect();
        base_map.extend((0..m).map(|_| S::zero(n)));
        let phi = (0..r + m)
            .map(|b| (0..r).map(|c| if b == c { S::one(n) } else { S::zero(n) }).collect())
            .collect();
        AlgebroidMorphism { base_map, phi }
    }

    /// Inclusion of the fibre over the point `x0`, seen as the tangent
    /// algebroid of `R^m`, into `π^!A`: `u ↦ (x0, u)`, `∂_{u_j} ↦ v_j`.
    pub fn fibre_inclusion(a: &AlgebroidPresentation<S>, m: usize, x0: &[S]) -> Result<Self> {
        let n = a.base_dim();
        if x0.len() != n || x0.iter().any(|s| s.nvars() != m) {
            return Err(Error::PointDimension {
                expected: n,
                got: x0.len(),
            });
        }
        let r = a.rank();
        let mut base_map = x0.to_vec();
        base_map.extend((0..m).map(|j| S::var(j, m)));
        let phi = (0..r + m)
            .map(|b| {
                (0..m)
                    .map(|j| if b == r + j { S::one(m) } else { S::zero(m) })
                    .collect()
            })
            .collect();
        Ok(AlgebroidMorphism { base_map, phi })
    }

    /// The morphism `π1^!A1 → π2^!A2` induced on pull-backs with `m` fibre
    /// coordinates: `(x, u) ↦ (f(x), u)`, `h_a ↦ Σ φ_{ba} h_b`, `v_j ↦ v_j`.
    pub fn induced_on_pullbacks(&self, n1: usize, m: usize) -> Self {
        let total = n1 + m;
        let embed: Vec<S> = (0..n1).map(|i| S::var(i, total)).collect();
        let mut base_map: Vec<S> = self.base_map.iter().map(|s| s.substitute(&embed, total)).collect();
        base_map.extend((0..m).map(|j| S::var(n1 + j, total)));
        let r1 = self.source_rank();
        let r2 = self.target_rank();
        let mut phi = vec![vec![S::zero(total); r1 + m]; r2 + m];
        for b in 0..r2 {
            for a in 0..r1 {
                phi[b][a] = self.phi[b][a].substitute(&embed, total);
            }
        }
        for j in 0..m {
            phi[r2 + j][r1 + j] = S::one(total);
        }
        AlgebroidMorphism { base_map, phi }
    }

    /// Checks compatibility with anchors and brackets.
    pub fn validate(
        &self,
        a1: &AlgebroidPresentation<S>,
        a2: &AlgebroidPresentation<S>,
    ) -> Result<ValidationReport<S>> {
        self.check_dims(a1, a2)?;
        let n1 = a1.base_dim();
        let r1 = a1.rank();
        let r2 = a2.rank();
        let pull = |s: &S| s.substitute(&self.base_map, n1);
        let mut violations = Vec::new();

        // Σ_b φ_{ba} (ρ2^i_b ∘ f) = ρ1_a(f^i)
        for a in 0..r1 {
            for (i, fi) in self.base_map.iter().enumerate() {
                let mut lhs = S::zero(n1);
                for b in 0..r2 {
                    if !self.phi[b][a].is_zero() {
                        lhs = lhs.plus(&self.phi[b][a].times(&pull(a2.anchor(b, i))));
                    }
                }
                let residual = lhs.minus(&a1.anchor_apply(a, fi));
                if !residual.vanishes() {
                    violations.push(Violation {
                        kind: ViolationKind::AnchorCompatibility,
                        indices: vec![a + 1],
                        component: i + 1,
                        residual,
                    });
                }
            }
        }

        // φ([e_a,e_b]) = [φ e_a, φ e_b] in the pulled-back sense:
        // Σ_g C1^g_{ab} φ_{eg} = Σ_{c,d} φ_{ca} φ_{db} (C2^e_{cd}∘f)
        //                        + ρ1_a(φ_{eb}) - ρ1_b(φ_{ea})
        let c2: Vec<Vec<Vec<S>>> = (0..r2)
            .map(|c| (0..r2).map(|d| a2.bracket(c, d).iter().map(pull).collect()).collect())
            .collect();
        for a in 0..r1 {
            for b in a + 1..r1 {
                let c1 = a1.bracket(a, b);
                for e in 0..r2 {
                    let mut lhs = S::zero(n1);
                    for (g, cg) in c1.iter().enumerate() {
                        if !cg.is_zero() {
                            lhs = lhs.plus(&cg.times(&self.phi[e][g]));
                        }
                    }
                    let mut rhs = a1
                        .anchor_apply(a, &self.phi[e][b])
                        .minus(&a1.anchor_apply(b, &self.phi[e][a]));
                    for c in 0..r2 {
                        if self.phi[c][a].is_zero() {
                            continue;
                        }
                        for d in 0..r2 {
                            if self.phi[d][b].is_zero() || c2[c][d][e].is_zero() {
                                continue;
                            }
                            rhs = rhs.plus(&self.phi[c][a].times(&self.phi[d][b]).times(&c2[c][d][e]));
                        }
                    }
                    let residual = lhs.minus(&rhs);
                    if !residual.vanishes() {
                        violations.push(Violation {
                            kind: ViolationKind::BracketCompatibility,
                            indices: vec![a + 1, b + 1],
                            component: e + 1,
                            residual,
                        });
                    }
                }
            }
        }
        Ok(ValidationReport { violations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets::*;
    use crate::scalar::Poly;

    type A = AlgebroidPresentation<Poly>;
    type M = AlgebroidMorphism<Poly>;

    #[test]
    fn identity_and_anchor_are_morphisms() {
        let t = A::tangent(2);
        assert!(M::identity(&t).validate(&t, &t).unwrap().is_valid());
        for a in [so2_plane::<Poly>(), so3_space(), su2(), A::tangent(3)] {
            let tm = A::tangent_named(a.coords().to_vec());
            let rho = M::anchor_of(&a);
            assert!(rho.validate(&a, &tm).unwrap().is_valid(), "{:?}", a.coords());
        }
    }

    #[test]
    fn zero_bundle_map_over_nonconstant_base_map_fails() {
        let t = A::tangent(1);
        let x = Poly::var(0, 1);
        let m = M::new(vec![&x * &x], vec![vec![Poly::zero(1)]]);
        let report = m.validate(&t, &t).unwrap();
        assert!(report.has(ViolationKind::AnchorCompatibility, &[1]));
    }

    #[test]
    fn zero_section_and_fibre_inclusion() {
        for a in [su2::<Poly>(), so2_plane(), aff1(), A::tangent(2)] {
            let r = a.rank();
            let pb = a.cotangent_pullback();
            let iota = M::zero_section(&a, r);
            assert!(iota.validate(&a, &pb).unwrap().is_valid());
            let fibre = A::tangent_named(crate::algebroid::numbered("p", r));
            let x0: Vec<Poly> = (0..a.base_dim()).map(|i| Poly::from_int(i as i64 + 1, r)).collect();
            let inc = M::fibre_inclusion(&a, r, &x0).unwrap();
            assert!(inc.validate(&fibre, &pb).unwrap().is_valid());
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let t1 = A::tangent(1);
        let t2 = A::tangent(2);
        assert!(M::identity(&t1).validate(&t1, &t2).is_err());
    }
}
