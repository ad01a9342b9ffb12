use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::rational::{fmt_rational, to_f64};

/// An exact number `Σ c · i^a / (2π)^b` with rational `c`, `a ∈ {0, 1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactValue {
    terms: BTreeMap<(u8, u32), BigRational>,
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::default()
    }

    pub fn rational(c: BigRational) -> Self {
        ExactValue::default().plus_term(0, 0, c)
    }

    fn plus_term(mut self, i_power: u8, inv_two_pi: u32, c: BigRational) -> Self {
        if c.is_zero() {
            return self;
        }
        let key = (i_power, inv_two_pi);
        let v = self.terms.entry(key).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
        self
    }

    /// Multiplies by `i^i_power / (2π)^inv_two_pi`.
    pub fn normalized(&self, i_power: i32, inv_two_pi: u32) -> Self {
        let mut out = ExactValue::zero();
        for (&(a, b), c) in &self.terms {
            let total = (a as i32 + i_power).rem_euclid(4);
            let c = if total >= 2 { -c.clone() } else { c.clone() };
            out = out.plus_term((total % 2) as u8, b + inv_two_pi, c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out = out.plus_term(a, b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = ExactValue::zero();
        for (&(a, b), v) in &self.terms {
            out = out.plus_term(a, b, v * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if it is a plain rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// `(re, im)` in floating point.
    pub fn to_complex(&self) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        for (&(a, b), c) in &self.terms {
            let v = to_f64(c) / (2.0 * PI).powi(b as i32);
            if a == 0 {
                re += v;
            } else {
                im += v;
            }
        }
        (re, im)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(a, b), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k > 0 {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !(mag.is_one() && a > 0) {
                factors.push(fmt_rational(&mag));
            }
            if a == 1 {
                factors.push("i".to_string());
            }
            let mut s = factors.join("*");
            match b {
                0 => {}
                1 => s.push_str("/(2π)"),
                _ => s.push_str(&format!("/(2π)^{b}")),
            }
            f.write_str(&s)?;
        }
        Ok(())
    }
}

/// An integration result: exact, or numeric with an error estimate.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(ExactValue),
    Approx { re: f64, im: f64, error: f64 },
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(ExactValue::zero())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    /// Real part in floating point.
    pub fn re(&self) -> f64 {
        self.to_complex().0
    }

    pub fn to_complex(&self) -> (f64, f64) {
        match self {
            Value::Exact(v) => v.to_complex(),
            Value::Approx { re, im, .. } => (*re, *im),
        }
    }

    pub fn error(&self) -> f64 {
        match self {
            Value::Exact(_) => 0.0,
            Value::Approx { error, .. } => *error,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a.add(b)),
            _ => {
                let (a, b) = (self.to_complex(), other.to_complex());
                Value::Approx {
                    re: a.0 + b.0,
                    im: a.1 + b.1,
                    error: self.error() + other.error(),
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        match self {
            Value::Exact(v) => Value::Exact(v.scale(c)),
            Value::Approx { re, im, error } => {
                let k = to_f64(c);
                Value::Approx {
                    re: re * k,
                    im: im * k,
                    error: error * k.abs(),
                }
            }
        }
    }

    /// Multiplies by `i^i_power / (2π)^inv_two_pi`.
    pub fn normalized(&self, i_power: i32, inv_two_pi: u32) -> Self {
        match self {
            Value::Exact(v) => Value::Exact(v.normalized(i_power, inv_two_pi)),
            Value::Approx { re, im, error } => {
                let s = (2.0 * PI).powi(-(inv_two_pi as i32));
                let (re, im) = match i_power.rem_euclid(4) {
                    0 => (*re, *im),
                    1 => (-im, *re),
                    2 => (-re, -im),
                    _ => (*im, -re),
                };
                Value::Approx {
                    re: re * s,
                    im: im * s,
                    error: error * s,
                }
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(v) => write!(f, "{v}"),
            Value::Approx { re, im, error } => {
                if *im == 0.0 {
                    write!(f, "{re:.9} ± {error:.1e}")
                } else {
                    write!(f, "{re:.9} + {im:.9}i ± {error:.1e}")
                }
            }
        }
    }
}
