//! Expression trees for non-polynomial chart functions.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, int, to_f64};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
enum Node {
    Const(BigRational),
    Var(usize),
    Add(Expr, Expr),
    Mul(Expr, Expr),
    Neg(Expr),
    Div(Expr, Expr),
    Pow(Expr, i32),
    Exp(Expr),
    Sqrt(Expr),
    Sin(Expr),
    Cos(Expr),
}

/// An immutable expression over `nvars` chart coordinates.
///
/// Subtrees are shared through `Arc`, so derivatives of large expressions
/// stay compact; [`Expr::compile`] flattens the shared graph for fast
/// repeated evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    nvars: usize,
    node: Arc<Node>,
}

impl Expr {
    fn make(nvars: usize, node: Node) -> Self {
        Expr {
            nvars,
            node: Arc::new(node),
        }
    }

    pub fn constant(c: BigRational, nvars: usize) -> Self {
        Expr::make(nvars, Node::Const(c))
    }

    pub fn zero(nvars: usize) -> Self {
        Expr::constant(BigRational::zero(), nvars)
    }

    pub fn one(nvars: usize) -> Self {
        Expr::constant(BigRational::one(), nvars)
    }

    pub fn var(index: usize, nvars: usize) -> Self {
        assert!(index < nvars, "variable {index} out of range for {nvars}");
        Expr::make(nvars, Node::Var(index))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match &*self.node {
            Node::Const(c) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&*self.node, Node::Const(c) if c.is_zero())
    }

    fn is_one(&self) -> bool {
        matches!(&*self.node, Node::Const(c) if c.is_one())
    }

    pub fn add(&self, other: &Expr) -> Expr {
        match (self.as_constant(), other.as_constant()) {
            (Some(a), Some(b)) => Expr::constant(a + b, self.nvars),
            (Some(a), None) if a.is_zero() => other.clone(),
            (None, Some(b)) if b.is_zero() => self.clone(),
            _ => Expr::make(self.nvars, Node::Add(self.clone(), other.clone())),
        }
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Expr {
        match &*self.node {
            Node::Const(c) => Expr::constant(-c, self.nvars),
            Node::Neg(inner) => inner.clone(),
            _ => Expr::make(self.nvars, Node::Neg(self.clone())),
        }
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        match (self.as_constant(), other.as_constant()) {
            (Some(a), Some(b)) => Expr::constant(a * b, self.nvars),
            (Some(a), _) if a.is_zero() => Expr::zero(self.nvars),
            (_, Some(b)) if b.is_zero() => Expr::zero(self.nvars),
            (Some(a), _) if a.is_one() => other.clone(),
            (_, Some(b)) if b.is_one() => self.clone(),
            (Some(a), _) if (-a.clone()).is_one() => other.neg(),
            (_, Some(b)) if (-b.clone()).is_one() => self.neg(),
            _ => Expr::make(self.nvars, Node::Mul(self.clone(), other.clone())),
        }
    }

    pub fn div(&self, other: &Expr) -> Expr {
        if self.is_zero() {
            return Expr::zero(self.nvars);
        }
        if other.is_one() {
            return self.clone();
        }
        match (self.as_constant(), other.as_constant()) {
            (Some(a), Some(b)) if !b.is_zero() => Expr::constant(a / b, self.nvars),
            _ => Expr::make(self.nvars, Node::Div(self.clone(), other.clone())),
        }
    }

    pub fn powi(&self, n: i32) -> Expr {
        match n {
            0 => Expr::one(self.nvars),
            1 => self.clone(),
            _ => match self.as_constant() {
                Some(c) if n > 0 => Expr::constant(num_traits::pow(c, n as usize), self.nvars),
                _ => Expr::make(self.nvars, Node::Pow(self.clone(), n)),
            },
        }
    }

    pub fn exp(&self) -> Expr {
        if self.is_zero() {
            return Expr::one(self.nvars);
        }
        Expr::make(self.nvars, Node::Exp(self.clone()))
    }

    pub fn sqrt(&self) -> Expr {
        if let Some(c) = self.as_constant() {
            if let Some(r) = super::rational::sqrt_exact(&c) {
                return Expr::constant(r, self.nvars);
            }
        }
        Expr::make(self.nvars, Node::Sqrt(self.clone()))
    }

    pub fn sin(&self) -> Expr {
        if self.is_zero() {
            return Expr::zero(self.nvars);
        }
        Expr::make(self.nvars, Node::Sin(self.clone()))
    }

    pub fn cos(&self) -> Expr {
        if self.is_zero() {
            return Expr::one(self.nvars);
        }
        Expr::make(self.nvars, Node::Cos(self.clone()))
    }

    pub fn derive(&self, index: usize) -> Result<Expr> {
        if index >= self.nvars {
            return Err(Error::CoordinateOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut memo = HashMap::new();
        Ok(self.derive_memo(index, &mut memo))
    }

    fn derive_memo(&self, i: usize, memo: &mut HashMap<*const Node, Expr>) -> Expr {
        let key = Arc::as_ptr(&self.node);
        if let Some(d) = memo.get(&key) {
            return d.clone();
        }
        let n = self.nvars;
        let d = match &*self.node {
            Node::Const(_) => Expr::zero(n),
            Node::Var(j) => {
                if *j == i {
                    Expr::one(n)
                } else {
                    Expr::zero(n)
                }
            }
            Node::Add(a, b) => a.derive_memo(i, memo).add(&b.derive_memo(i, memo)),
            Node::Mul(a, b) => {
                let da = a.derive_memo(i, memo);
                let db = b.derive_memo(i, memo);
                da.mul(b).add(&a.mul(&db))
            }
            Node::Neg(a) => a.derive_memo(i, memo).neg(),
            Node::Div(a, b) => {
                let da = a.derive_memo(i, memo);
                let db = b.derive_memo(i, memo);
                da.mul(b).sub(&a.mul(&db)).div(&b.powi(2))
            }
            Node::Pow(a, k) => {
                let da = a.derive_memo(i, memo);
                Expr::constant(int(*k as i64), n).mul(&a.powi(k - 1)).mul(&da)
            }
            Node::Exp(a) => self.mul(&a.derive_memo(i, memo)),
            Node::Sqrt(a) => a.derive_memo(i, memo).div(&Expr::constant(int(2), n).mul(self)),
            Node::Sin(a) => a.cos().mul(&a.derive_memo(i, memo)),
            Node::Cos(a) => a.sin().neg().mul(&a.derive_memo(i, memo)),
        };
        memo.insert(key, d.clone());
        d
    }

    /// Replaces coordinate `i` by `args[i]`.
    pub fn substitute(&self, args: &[Expr], target: usize) -> Expr {
        assert_eq!(args.len(), self.nvars, "substitution arity mismatch");
        let mut memo = HashMap::new();
        self.subst_memo(args, target, &mut memo)
    }

    fn subst_memo(&self, args: &[Expr], target: usize, memo: &mut HashMap<*const Node, Expr>) -> Expr {
        let key = Arc::as_ptr(&self.node);
        if let Some(e) = memo.get(&key) {
            return e.clone();
        }
        let mut s = |e: &Expr| e.subst_memo(args, target, memo);
        let out = match &*self.node {
            Node::Const(c) => Expr::constant(c.clone(), target),
            Node::Var(j) => args[*j].clone(),
            Node::Add(a, b) => {
                let (a, b) = (s(a), s(b));
                a.add(&b)
            }
            Node::Mul(a, b) => {
                let (a, b) = (s(a), s(b));
                a.mul(&b)
            }
            Node::Neg(a) => s(a).neg(),
            Node::Div(a, b) => {
                let (a, b) = (s(a), s(b));
                a.div(&b)
            }
            Node::Pow(a, k) => s(a).powi(*k),
            Node::Exp(a) => s(a).exp(),
            Node::Sqrt(a) => s(a).sqrt(),
            Node::Sin(a) => s(a).sin(),
            Node::Cos(a) => s(a).cos(),
        };
        memo.insert(key, out.clone());
        out
    }

    /// Floating-point evaluation; poles and negative square roots are errors.
    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.nvars {
            return Err(Error::PointDimension {
                expected: self.nvars,
                got: point.len(),
            });
        }
        self.compile().eval(point)
    }

    /// Sampled zero test at fixed pseudo-random points in `(-0.9, 0.9)^n`.
    pub fn vanishes(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let tape = self.compile();
        let mut state = 0x2545_f491_4f6c_dd1d_u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 1.8 - 0.9
        };
        let mut evaluated = 0;
        for _ in 0..24 {
            let p: Vec<f64> = (0..self.nvars).map(|_| next()).collect();
            match tape.eval(&p) {
                Ok(v) if v.abs() > 1e-9 => return false,
                Ok(_) => evaluated += 1,
                Err(_) => {}
            }
        }
        evaluated > 0
    }

    /// Flattens the shared expression graph into a straight-line program.
    pub fn compile(&self) -> Tape {
        let mut tape = Tape {
            nvars: self.nvars,
            ops: Vec::new(),
        };
        let mut slots = HashMap::new();
        self.emit(&mut tape, &mut slots);
        tape
    }

    fn emit(&self, tape: &mut Tape, slots: &mut HashMap<*const Node, usize>) -> usize {
        let key = Arc::as_ptr(&self.node);
        if let Some(&s) = slots.get(&key) {
            return s;
        }
        let op = match &*self.node {
            Node::Const(c) => Op::Const(to_f64(c)),
            Node::Var(j) => Op::Var(*j),
            Node::Add(a, b) => Op::Add(a.emit(tape, slots), b.emit(tape, slots)),
            Node::Mul(a, b) => Op::Mul(a.emit(tape, slots), b.emit(tape, slots)),
            Node::Neg(a) => Op::Neg(a.emit(tape, slots)),
            Node::Div(a, b) => Op::Div(a.emit(tape, slots), b.emit(tape, slots)),
            Node::Pow(a, k) => Op::Pow(a.emit(tape, slots), *k),
            Node::Exp(a) => Op::Exp(a.emit(tape, slots)),
            Node::Sqrt(a) => Op::Sqrt(a.emit(tape, slots)),
            Node::Sin(a) => Op::Sin(a.emit(tape, slots)),
            Node::Cos(a) => Op::Cos(a.emit(tape, slots)),
        };
        tape.ops.push(op);
        let slot = tape.ops.len() - 1;
        slots.insert(key, slot);
        slot
    }

    /// Infix rendering with the given coordinate names.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.render(names, &mut s, 0);
        s
    }

    // Precedence: 0 sum, 1 product, 2 unary, 3 power base.
    fn render(&self, names: &[String], out: &mut String, prec: u8) {
        let wrap = |out: &mut String, need: bool, f: &dyn Fn(&mut String)| {
            if need {
                out.push('(');
            }
            f(out);
            if need {
                out.push(')');
            }
        };
        match &*self.node {
            Node::Const(c) => {
                let text = fmt_rational(c);
                let compound = c.is_negative() || !c.is_integer();
                wrap(out, compound && prec > 0, &|o| o.push_str(&text));
            }
            Node::Var(j) => out.push_str(names.get(*j).map(String::as_str).unwrap_or("?")),
            Node::Add(a, b) => wrap(out, prec > 0, &|o| {
                a.render(names, o, 0);
                if let Node::Neg(inner) = &*b.node {
                    o.push_str(" - ");
                    inner.render(names, o, 1);
                } else {
                    o.push_str(" + ");
                    b.render(names, o, 0);
                }
            }),
            Node::Mul(a, b) => wrap(out, prec > 1, &|o| {
                a.render(names, o, 1);
                o.push('*');
                b.render(names, o, 2);
            }),
            Node::Div(a, b) => wrap(out, prec > 1, &|o| {
                a.render(names, o, 1);
                o.push('/');
                b.render(names, o, 2);
            }),
            Node::Neg(a) => wrap(out, prec > 1, &|o| {
                o.push('-');
                a.render(names, o, 2);
            }),
            Node::Pow(a, k) => wrap(out, prec > 2, &|o| {
                a.render(names, o, 3);
                let _ = if *k < 0 { write!(o, "^({k})") } else { write!(o, "^{k}") };
            }),
            Node::Exp(a) => func(out, "exp", a, names),
            Node::Sqrt(a) => func(out, "sqrt", a, names),
            Node::Sin(a) => func(out, "sin", a, names),
            Node::Cos(a) => func(out, "cos", a, names),
        }
    }

    /// The same expression as a polynomial, if it is one.
    pub fn to_poly(&self) -> Option<super::Poly> {
        use super::Poly;
        let n = self.nvars;
        Some(match &*self.node {
            Node::Const(c) => Poly::constant(c.clone(), n),
            Node::Var(j) => Poly::var(*j, n),
            Node::Add(a, b) => &a.to_poly()? + &b.to_poly()?,
            Node::Mul(a, b) => &a.to_poly()? * &b.to_poly()?,
            Node::Neg(a) => -&a.to_poly()?,
            Node::Div(a, b) => {
                let c = b.as_constant().filter(|c| !c.is_zero())?;
                a.to_poly()?.scale(&c.recip())
            }
            Node::Pow(a, k) if *k >= 0 => a.to_poly()?.pow(*k as u32),
            _ => return None,
        })
    }
}

fn func(out: &mut String, name: &str, arg: &Expr, names: &[String]) {
    out.push_str(name);
    out.push('(');
    arg.render(names, out, 0);
    out.push(')');
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Const(f64),
    Var(usize),
    Add(usize, usize),
    Mul(usize, usize),
    Neg(usize),
    Div(usize, usize),
    Pow(usize, i32),
    Exp(usize),
    Sqrt(usize),
    Sin(usize),
    Cos(usize),
}

/// A compiled expression; each op reads earlier slots only.
#[derive(Clone, Debug)]
pub struct Tape {
    nvars: usize,
    ops: Vec<Op>,
}

impl Tape {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.nvars {
            return Err(Error::PointDimension {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut v: Vec<f64> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let x = match *op {
                Op::Const(c) => c,
                Op::Var(j) => point[j],
                Op::Add(a, b) => v[a] + v[b],
                Op::Mul(a, b) => v[a] * v[b],
                Op::Neg(a) => -v[a],
                Op::Div(a, b) => {
                    if v[b] == 0.0 {
                        return Err(Error::Domain("division by zero".into()));
                    }
                    v[a] / v[b]
                }
                Op::Pow(a, k) => {
                    if k < 0 && v[a] == 0.0 {
                        return Err(Error::Domain("negative power of zero".into()));
                    }
                    v[a].powi(k)
                }
                Op::Exp(a) => v[a].exp(),
                Op::Sqrt(a) => {
                    if v[a] < 0.0 {
                        return Err(Error::Domain("square root of a negative number".into()));
                    }
                    v[a].sqrt()
                }
                Op::Sin(a) => v[a].sin(),
                Op::Cos(a) => v[a].cos(),
            };
            if !x.is_finite() {
                return Err(Error::Domain("non-finite intermediate value".into()));
            }
            v.push(x);
        }
        Ok(v.last().copied().unwrap_or(0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_expr;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn eval_examples() {
        let e = parse_expr("1/(1+x^2+y^2)", &names()).unwrap();
        assert_eq!(e.eval(&[0.0, 0.0]).unwrap(), 1.0);
        let pole = parse_expr("x/y", &names()).unwrap();
        assert!(matches!(pole.eval(&[1.0, 0.0]), Err(Error::Domain(_))));
        let neg = parse_expr("sqrt(x)", &names()).unwrap();
        assert!(matches!(neg.eval(&[-1.0, 0.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let e = parse_expr("exp(x*y)*sin(x) + sqrt(1+x^2)/(2+cos(y))", &names()).unwrap();
        let dx = e.derive(0).unwrap();
        let (x, y, h) = (0.3, -0.7, 1e-5);
        let fd = (e.eval(&[x + h, y]).unwrap() - e.eval(&[x - h, y]).unwrap()) / (2.0 * h);
        let exact = dx.eval(&[x, y]).unwrap();
        assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0));
    }

    #[test]
    fn polynomial_round_trip() {
        let e = parse_expr("(x+1)^2 - 2*x", &names()).unwrap();
        let p = e.to_poly().unwrap();
        assert_eq!(p.display_with(&names()).to_string(), "x^2 + 1");
        assert!(parse_expr("exp(x)", &names()).unwrap().to_poly().is_none());
    }

    #[test]
    fn sampled_zero_test() {
        let e = parse_expr("sin(x)^2 + cos(x)^2 - 1", &names()).unwrap();
        assert!(e.vanishes());
        assert!(!parse_expr("x*y", &names()).unwrap().vanishes());
    }
}
