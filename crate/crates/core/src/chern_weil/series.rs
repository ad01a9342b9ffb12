//! Truncated univariate power series with rational coefficients.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::rational::{factorial, int};

/// `Σ_{k<len} coeffs[k] x^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub coeffs: Vec<BigRational>,
}

impl Series {
    pub fn from_fn(len: usize, f: impl Fn(usize) -> BigRational) -> Self {
        Series {
            coeffs: (0..len).map(f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `e^{s x}` with `s = ±1`.
    pub fn exp_x(len: usize, sign: i64) -> Self {
        Series::from_fn(len, |k| {
            let c = factorial(k as u32).recip();
            if sign < 0 && k % 2 == 1 {
                -c
            } else {
                c
            }
        })
    }

    /// `sinh(x)/x`.
    pub fn sinhc(len: usize) -> Self {
        Series::from_fn(len, |k| {
            if k % 2 == 0 {
                factorial(k as u32 + 1).recip()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn cosh(len: usize) -> Self {
        Series::from_fn(len, |k| {
            if k % 2 == 0 {
                factorial(k as u32).recip()
            } else {
                BigRational::zero()
            }
        })
    }

    /// `x ↦ c x` substitution.
    pub fn rescale(&self, c: &BigRational) -> Self {
        let mut p = BigRational::one();
        let mut out = self.clone();
        for v in &mut out.coeffs {
            *v *= &p;
            p *= c;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        Series::from_fn(len, |k| self.coeff(k) + other.coeff(k))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        Series::from_fn(len, |k| (0..=k).map(|i| self.coeff(i) * other.coeff(k - i)).sum())
    }

    /// Quotient; the divisor must have an invertible constant term.
    pub fn div(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let inv0 = other.coeff(0).recip();
        let mut q: Vec<BigRational> = Vec::with_capacity(len);
        for k in 0..len {
            let mut v = self.coeff(k);
            for i in 0..k {
                v -= &q[i] * other.coeff(k - i);
            }
            q.push(v * &inv0);
        }
        Series { coeffs: q }
    }

    /// Divides by `x`; the constant term must vanish.
    pub fn shift_down(&self) -> Option<Self> {
        if !self.coeff(0).is_zero() {
            return None;
        }
        Some(Series {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Self {
        assert!(self.coeff(0).is_one(), "log needs constant term 1");
        let len = self.len();
        let mut h = self.clone();
        h.coeffs[0] = BigRational::zero();
        let mut out = Series::from_fn(len, |_| BigRational::zero());
        let mut power = h.clone();
        for n in 1..len {
            let c = int(if n % 2 == 1 { 1 } else { -1 }) / int(n as i64);
            out = out.add(&power.scale(&c));
            power = power.mul(&h);
        }
        out
    }
}

/// `x / (1 - e^{-x})`.
pub fn todd_series(len: usize) -> Series {
    let one_minus = Series::from_fn(len + 1, |k| {
        if k == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
    .add(&Series::exp_x(len + 1, -1).scale(&int(-1)));
    let q = one_minus.shift_down().expect("1 - e^{-x} vanishes at 0");
    Series::from_fn(len, |k| {
        if k == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
    .div(&q)
}

/// `x / tanh(x)`.
pub fn l_series(len: usize) -> Series {
    Series::cosh(len).div(&Series::sinhc(len))
}

/// `(x/2) / sinh(x/2)`.
pub fn a_hat_series(len: usize) -> Series {
    let one = Series::from_fn(len, |k| {
        if k == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    one.div(&Series::sinhc(len).rescale(&crate::scalar::rational::q(1, 2)))
}
