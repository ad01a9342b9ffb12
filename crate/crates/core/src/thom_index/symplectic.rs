use num_rational::BigRational;

use crate::algebroid::{numbered, AlgebroidMorphism, AlgebroidPresentation};
use crate::ce::{AlgForm, Blade};
use crate::error::{Error, Result};
use crate::scalar::rational::{factorial, int};
use crate::scalar::Scalar;

/// The pull-back algebroid `π^!A` of a trivial rank-`m` bundle over the
/// chart of `A`, in the frame `h_1..h_r, v_1..v_m` over coordinates
/// `x^1..x^n, p_1..p_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct PullbackModel<S> {
    pub base: AlgebroidPresentation<S>,
    pub total: AlgebroidPresentation<S>,
    pub fiber_rank: usize,
}

impl<S: Scalar> PullbackModel<S> {
    pub fn new(base: &AlgebroidPresentation<S>, fiber_rank: usize) -> Self {
        PullbackModel {
            total: base.pullback(numbered("p", fiber_rank)),
            base: base.clone(),
            fiber_rank,
        }
    }

    /// `π^!A` over the dual bundle `A*`.
    pub fn cotangent(base: &AlgebroidPresentation<S>) -> Self {
        PullbackModel::new(base, base.rank())
    }

    pub fn base_rank(&self) -> usize {
        self.base.rank()
    }

    /// Frame indices of the vertical generators `v_j`.
    pub fn vertical(&self) -> std::ops::Range<usize> {
        self.base.rank()..self.base.rank() + self.fiber_rank
    }

    /// The blade `v_1 ∧ ... ∧ v_m`.
    pub fn vertical_top(&self) -> Blade {
        Blade(Blade::top(self.total.rank()).0 & !Blade::top(self.base.rank()).0)
    }

    /// `π^*α`: `e^α ↦ h^α`, coefficients constant along the fibres.
    pub fn horizontal_lift(&self, form: &AlgForm<S>) -> Result<AlgForm<S>> {
        let n = self.base.base_dim();
        if form.rank() != self.base.rank() || form.nvars() != n {
            return Err(Error::AlgebroidMismatch {
                left_rank: form.rank(),
                left_vars: form.nvars(),
                right_rank: self.base.rank(),
                right_vars: n,
            });
        }
        let total_vars = n + self.fiber_rank;
        let embed: Vec<S> = (0..n).map(|i| S::var(i, total_vars)).collect();
        Ok(AlgForm::from_terms(
            self.total.rank(),
            total_vars,
            form.terms().map(|(b, c)| (*b, c.substitute(&embed, total_vars))),
        ))
    }

    /// Restriction of coefficients to the zero section, `p = 0`.
    pub fn at_zero_section(&self, s: &S) -> S {
        let n = self.base.base_dim();
        let mut args: Vec<S> = (0..n).map(|i| S::var(i, n)).collect();
        args.extend((0..self.fiber_rank).map(|_| S::zero(n)));
        s.substitute(&args, n)
    }

    pub fn zero_section(&self) -> AlgebroidMorphism<S> {
        AlgebroidMorphism::zero_section(&self.base, self.fiber_rank)
    }

    /// The canonical symplectic form on `π^!A` over `A*`:
    /// `Θ = Σ_α h^α ∧ v^α + Σ_{α<β} (Σ_γ p_γ C^γ_{αβ}) h^α ∧ h^β`.
    /// The second sum is the correction that makes `Θ` closed; closedness is
    /// verified before returning.
    pub fn symplectic_form(&self) -> Result<AlgForm<S>> {
        let r = self.base.rank();
        if self.fiber_rank != r {
            return Err(Error::Dimension(format!(
                "symplectic form needs the dual bundle; fibre rank {} differs from rank {r}",
                self.fiber_rank
            )));
        }
        let n = self.base.base_dim();
        let total_vars = n + r;
        let embed: Vec<S> = (0..n).map(|i| S::var(i, total_vars)).collect();
        let mut theta = AlgForm::zero(2 * r, total_vars);
        for a in 0..r {
            theta.add_term(Blade::from_indices(&[a, r + a])?, S::one(total_vars));
        }
        for a in 0..r {
            for b in a + 1..r {
                let mut c = S::zero(total_vars);
                for (g, cg) in self.base.bracket(a, b).iter().enumerate() {
                    if !cg.is_zero() {
                        c = c.plus(&S::var(n + g, total_vars).times(&cg.substitute(&embed, total_vars)));
                    }
                }
                theta.add_term(Blade::from_indices(&[a, b])?, c);
            }
        }
        let d_theta = crate::ce::d(&self.total, &theta)?;
        if !d_theta.vanishes() {
            return Err(Error::InvalidAlgebroid(format!(
                "symplectic form is not closed: dΘ = {}",
                d_theta.display_with(self.total.coords())
            )));
        }
        Ok(theta)
    }

    /// `r! (-1)^{r(r-1)/2}`, the top coefficient of `Θ^r`.
    pub fn liouville_constant(&self) -> BigRational {
        let r = self.base.rank();
        let sign = if (r * r.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 };
        factorial(r as u32) * int(sign)
    }

    /// `Θ^r` and its coefficient on `h_1 ∧ ... ∧ h_r ∧ v_1 ∧ ... ∧ v_r`.
    pub fn theta_power(&self) -> Result<(AlgForm<S>, S)> {
        let theta = self.symplectic_form()?;
        let r = self.base.rank();
        let mut power = AlgForm::constant(1, 2 * r, theta.nvars());
        for _ in 0..r {
            power = power.wedge(&theta)?;
        }
        let top = power.coefficient(Blade::top(2 * r));
        Ok((power, top))
    }

    /// The Liouville form `Θ^r / (r! (-1)^{r(r-1)/2})`, whose top coefficient is 1.
    pub fn liouville(&self) -> Result<AlgForm<S>> {
        let (power, _) = self.theta_power()?;
        Ok(power.scale(&self.liouville_constant().recip()))
    }
}
