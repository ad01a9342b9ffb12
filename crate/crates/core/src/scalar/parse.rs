//! Infix syntax for scalars: `3/2*x^2*y - 1`, `4/(1+x^2+y^2)^2`, `exp(-x)`.

use num_rational::BigRational;

use super::expr::Expr;
use super::poly::Poly;
use super::rational::parse_decimal;
use crate::error::{Error, Result};

/// Parses an expression over the named coordinates.
pub fn parse_expr(input: &str, names: &[String]) -> Result<Expr> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        names,
    };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a polynomial; non-polynomial constructs are rejected.
pub fn parse_poly(input: &str, names: &[String]) -> Result<Poly> {
    parse_expr(input, names)?.to_poly().ok_or_else(|| Error::Parse {
        column: 1,
        message: format!("`{input}` is not a polynomial with rational coefficients"),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = self.pos;
        let exponent = if self.eat(b'(') {
            let k = self.integer()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)` after exponent"));
            }
            k
        } else {
            self.integer()?
        };
        i32::try_from(exponent).map(|k| base.powi(k)).map_err(|_| Error::Parse {
            column: start + 1,
            message: "exponent too large".into(),
        })
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse {
                column: start + 1,
                message: "expected an integer exponent".into(),
            })
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if c == b'(' {
            self.pos += 1;
            let e = self.sum()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(e);
        }
        if c.is_ascii_digit() || c == b'.' {
            let start = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let value: BigRational = parse_decimal(text).ok_or_else(|| Error::Parse {
                column: start + 1,
                message: format!("malformed number `{text}`"),
            })?;
            return Ok(Expr::constant(value, self.nvars()));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            if let Some(i) = self.names.iter().position(|n| n == ident) {
                return Ok(Expr::var(i, self.nvars()));
            }
            let f: fn(&Expr) -> Expr = match ident {
                "exp" => Expr::exp,
                "sqrt" => Expr::sqrt,
                "sin" => Expr::sin,
                "cos" => Expr::cos,
                _ => {
                    return Err(Error::Parse {
                        column: start + 1,
                        message: format!("unknown identifier `{ident}`"),
                    })
                }
            };
            if !self.eat(b'(') {
                return Err(self.error("expected `(` after function name"));
            }
            let arg = self.sum()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(f(&arg));
        }
        Err(self.error(&format!("unexpected character `{}`", c as char)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn round_trips_canonical_output() {
        let p = parse_poly("3/2*x^2*y - 1", &names()).unwrap();
        assert_eq!(p.display_with(&names()).to_string(), "3/2*x^2*y - 1");
        let q = parse_poly("0.5*x - -y", &names()).unwrap();
        assert_eq!(q.display_with(&names()).to_string(), "1/2*x + y");
    }

    #[test]
    fn reports_columns() {
        match parse_expr("x + $", &names()) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match parse_expr("x + z", &names()) {
            Err(Error::Parse { column, message }) => {
                assert_eq!(column, 5);
                assert!(message.contains('z'));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("exp(x)", &names()).is_err());
    }

    #[test]
    fn negative_exponents() {
        let e = parse_expr("x^(-2)", &names()).unwrap();
        assert_eq!(e.eval(&[2.0, 0.0]).unwrap(), 0.25);
    }
}
