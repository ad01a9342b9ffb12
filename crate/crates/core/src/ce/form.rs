//! Algebroid forms in the dual frame `e^1, ..., e^r`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A basis blade `e^{i_1} ∧ ... ∧ e^{i_k}` with `i_1 < ... < i_k`, stored as
/// a bit set of zero-based frame indices. Rank is limited to 64.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(pub u64);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_indices(indices: &[usize]) -> Result<Blade> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= 64 {
                return Err(Error::Dimension(format!("frame index {i} exceeds 64")));
            }
            if bits & (1 << i) != 0 {
                return Err(Error::Dimension(format!("repeated frame index {i}")));
            }
            bits |= 1 << i;
        }
        Ok(Blade(bits))
    }

    pub fn single(i: usize) -> Blade {
        Blade(1 << i)
    }

    /// `e^0 ∧ ... ∧ e^{r-1}`.
    pub fn top(rank: usize) -> Blade {
        if rank == 64 {
            Blade(u64::MAX)
        } else {
            Blade((1u64 << rank) - 1)
        }
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << i))
    }

    pub fn with(self, i: usize) -> Blade {
        Blade(self.0 | (1 << i))
    }

    /// Number of indices in `self` strictly below `i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    /// Sign and blade of `self ∧ other`, or `None` if they overlap.
    pub fn wedge(self, other: Blade) -> Option<(bool, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut b = other.0;
        while b != 0 {
            let i = b.trailing_zeros();
            inversions += (self.0 >> i).count_ones();
            b &= b - 1;
        }
        Some((inversions % 2 == 1, Blade(self.0 | other.0)))
    }

    /// All blades of the given degree in a rank-`rank` frame, in canonical order.
    pub fn all_of_degree(rank: usize, degree: usize) -> Vec<Blade> {
        let mut out = Vec::new();
        fn rec(start: usize, rank: usize, left: usize, acc: u64, out: &mut Vec<Blade>) {
            if left == 0 {
                out.push(Blade(acc));
                return;
            }
            for i in start..rank {
                if rank - i < left {
                    break;
                }
                rec(i + 1, rank, left - 1, acc | (1 << i), out);
            }
        }
        if degree <= rank {
            rec(0, rank, degree, 0, &mut out);
        }
        out
    }
}

impl Ord for Blade {
    /// Degree first, then lexicographic on the index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A scalar-valued algebroid form: a finite sum of `coefficient * blade`.
#[derive(Clone, PartialEq)]
pub struct AlgForm<S> {
    rank: usize,
    nvars: usize,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> AlgForm<S> {
    pub fn zero(rank: usize, nvars: usize) -> Self {
        AlgForm {
            rank,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(f: S, rank: usize) -> Self {
        let nvars = f.nvars();
        let mut out = AlgForm::zero(rank, nvars);
        out.add_term(Blade::EMPTY, f);
        out
    }

    pub fn constant(c: i64, rank: usize, nvars: usize) -> Self {
        AlgForm::scalar(S::from_int(c, nvars), rank)
    }

    /// `e^i` (zero-based index).
    pub fn basis(i: usize, rank: usize, nvars: usize) -> Self {
        assert!(i < rank, "frame index {i} out of range for rank {rank}");
        AlgForm::monomial(Blade::single(i), S::one(nvars), rank)
    }

    pub fn monomial(blade: Blade, coefficient: S, rank: usize) -> Self {
        let nvars = coefficient.nvars();
        let mut out = AlgForm::zero(rank, nvars);
        out.add_term(blade, coefficient);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, S)>>(rank: usize, nvars: usize, terms: I) -> Self {
        let mut out = AlgForm::zero(rank, nvars);
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every coefficient vanishes (sampled for numeric backends).
    pub fn vanishes(&self) -> bool {
        self.terms.values().all(Scalar::vanishes)
    }

    pub fn coefficient(&self, blade: Blade) -> S {
        self.terms.get(&blade).cloned().unwrap_or_else(|| S::zero(self.nvars))
    }

    /// Adds `c * blade`, dropping structurally zero results.
    pub fn add_term(&mut self, blade: Blade, c: S) {
        if c.is_zero() {
            return;
        }
        debug_assert!(blade.0 >> self.rank == 0 || self.rank == 64);
        match self.terms.remove(&blade) {
            Some(existing) => {
                let sum = existing.plus(&c);
                if !sum.is_zero() {
                    self.terms.insert(blade, sum);
                }
            }
            None => {
                self.terms.insert(blade, c);
            }
        }
    }

    /// The degree if homogeneous; `None` for zero or mixed forms.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|b| b.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|b| b.degree()).max()
    }

    /// Component of the given degree.
    pub fn homogeneous(&self, degree: usize) -> Self {
        AlgForm {
            rank: self.rank,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == degree)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// Components of degree at most `degree`.
    pub fn truncated(&self, degree: usize) -> Self {
        AlgForm {
            rank: self.rank,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() <= degree)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank || self.nvars != other.nvars {
            return Err(Error::AlgebroidMismatch {
                left_rank: self.rank,
                left_vars: self.nvars,
                right_rank: other.rank,
                right_vars: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| c.negated())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.map_coefficients(|c| c.scaled(q))
    }

    /// Multiplies every coefficient by the function `f`.
    pub fn times_scalar(&self, f: &S) -> Self {
        self.map_coefficients(|c| c.times(f))
    }

    pub fn map_coefficients(&self, f: impl Fn(&S) -> S) -> Self {
        let mut out = AlgForm::zero(self.rank, self.nvars);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    /// Exterior product. Terms above the rank vanish automatically.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.wedge_unchecked(other, usize::MAX))
    }

    /// Exterior product keeping only components of degree `<= max_degree`.
    pub fn wedge_truncated(&self, other: &Self, max_degree: usize) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.wedge_unchecked(other, max_degree))
    }

    fn wedge_unchecked(&self, other: &Self, max_degree: usize) -> Self {
        let mut out = AlgForm::zero(self.rank, self.nvars);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if ba.degree() + bb.degree() > max_degree {
                    continue;
                }
                if let Some((negative, blade)) = ba.wedge(*bb) {
                    let p = ca.times(cb);
                    out.add_term(blade, if negative { p.negated() } else { p });
                }
            }
        }
        out
    }

    /// Applies `f` to each coefficient as a chart function (composition).
    pub fn substitute(&self, args: &[S], nvars: usize) -> Self {
        let mut out = AlgForm::zero(self.rank, nvars);
        for (b, c) in &self.terms {
            out.add_term(*b, c.substitute(args, nvars));
        }
        out
    }

    /// Human-readable rendering with one-based frame indices, e.g.
    /// `(2*x)*e1^e3 + e2`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (b, c) in &self.terms {
            let coeff = c.display_with(names);
            if b.degree() == 0 {
                parts.push(coeff);
                continue;
            }
            let blade = b
                .indices()
                .iter()
                .map(|i| format!("e{}", i + 1))
                .collect::<Vec<_>>()
                .join("^");
            parts.push(match coeff.as_str() {
                "1" => blade,
                "-1" => format!("-{blade}"),
                c if c.chars().skip(1).any(|ch| matches!(ch, '+' | '-' | ' ')) => format!("({coeff})*{blade}"),
                _ => format!("{coeff}*{blade}"),
            });
        }
        parts.join(" + ")
    }
}

impl<S: Scalar> fmt::Debug for AlgForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "AlgForm[{}]", self.display_with(&names))
    }
}

/// A form with values in a trivialized bundle of rank `m`, one scalar form
/// per bundle component.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorForm<S: Scalar> {
    pub components: Vec<AlgForm<S>>,
}

impl<S: Scalar> VectorForm<S> {
    pub fn zero(m: usize, rank: usize, nvars: usize) -> Self {
        VectorForm {
            components: vec![AlgForm::zero(rank, nvars); m],
        }
    }

    pub fn scalar(form: AlgForm<S>) -> Self {
        VectorForm { components: vec![form] }
    }

    pub fn bundle_rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(AlgForm::is_zero)
    }

    pub fn vanishes(&self) -> bool {
        self.components.iter().all(AlgForm::vanishes)
    }
}
