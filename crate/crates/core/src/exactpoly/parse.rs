//! Text syntax for polynomials and rational expressions.
//!
//! `^` raises to a nonnegative integer power, `*` may be omitted between
//! factors (`2x y` is `2*x*y`), and `/` is accepted only where the divisor
//! evaluates to a nonzero constant. Decimal points are not part of the
//! syntax, so every accepted number is an exact rational.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PolyError, Polynomial, PolyRing, Rational};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let err = |pos: usize, msg: &str| PolyError::Parse {
        input: input.to_string(),
        position: pos,
        message: msg.to_string(),
    };
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    return Err(err(i, "decimal numbers are not exact; write p/q"));
                }
                out.push((start, Tok::Num(input[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
                continue;
            }
            _ => return Err(err(i, &format!("unexpected character '{c}'"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        let position = self
            .toks
            .get(self.pos)
            .map(|t| t.0)
            .unwrap_or(self.input.len());
        PolyError::Parse {
            input: self.input.to_string(),
            position,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, PolyError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, PolyError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => {
                    self.pos -= 1;
                    Err(self.err("expected a nonnegative integer exponent"))
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, PolyError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Num(Rational::from_integer(n))),
            Some(Tok::Ident(s)) => Ok(Expr::Var(s)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => {
                        self.pos -= 1;
                        Err(self.err("expected ')'"))
                    }
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a number, a variable or '('"))
            }
        }
    }
}

pub fn parse_expr(input: &str) -> Result<Expr, PolyError> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        input,
        toks,
        pos: 0,
    };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl Expr {
    pub fn to_poly(&self, ring: &Arc<PolyRing>) -> Result<Polynomial, PolyError> {
        Ok(match self {
            Expr::Num(q) => ring.constant(q.clone()),
            Expr::Var(name) => ring.var(name)?,
            Expr::Neg(e) => -&e.to_poly(ring)?,
            Expr::Add(a, b) => &a.to_poly(ring)? + &b.to_poly(ring)?,
            Expr::Sub(a, b) => &a.to_poly(ring)? - &b.to_poly(ring)?,
            Expr::Mul(a, b) => &a.to_poly(ring)? * &b.to_poly(ring)?,
            Expr::Div(a, b) => {
                let d = b.to_poly(ring)?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => a.to_poly(ring)?.scale(&c.recip()),
                    _ => {
                        return Err(PolyError::Parse {
                            input: format!("{self:?}"),
                            position: 0,
                            message: "division is only allowed by a nonzero constant".into(),
                        })
                    }
                }
            }
            Expr::Pow(b, e) => b.to_poly(ring)?.pow(*e),
        })
    }

    /// Evaluates to a rational number, looking identifiers up in `env`.
    pub fn eval(&self, env: &dyn Fn(&str) -> Option<Rational>) -> Result<Rational, PolyError> {
        Ok(match self {
            Expr::Num(q) => q.clone(),
            Expr::Var(name) => env(name).ok_or_else(|| PolyError::UnknownVariable(name.clone()))?,
            Expr::Neg(e) => -e.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                if d.is_zero() {
                    return Err(PolyError::DivisionByZero);
                }
                a.eval(env)? / d
            }
            Expr::Pow(b, e) => {
                let base = b.eval(env)?;
                let mut acc = Rational::one();
                for _ in 0..*e {
                    acc *= &base;
                }
                acc
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};

    #[test]
    fn implicit_multiplication() {
        let e = parse_expr("2x y").unwrap();
        let v = e
            .eval(&|n| match n {
                "x" => Some(int(3)),
                "y" => Some(int(5)),
                _ => None,
            })
            .unwrap();
        assert_eq!(v, int(30));
    }

    #[test]
    fn precedence() {
        let env = |n: &str| if n == "a" { Some(int(2)) } else { None };
        assert_eq!(parse_expr("-a^2").unwrap().eval(&env).unwrap(), int(-4));
        assert_eq!(parse_expr("3/2*a").unwrap().eval(&env).unwrap(), int(3));
        assert_eq!(parse_expr("(1 - a)^3").unwrap().eval(&env).unwrap(), int(-1));
        assert_eq!(parse_expr("-a^2/4").unwrap().eval(&env).unwrap(), int(-1));
        assert_eq!(parse_expr("1/3 - 1/2").unwrap().eval(&env).unwrap(), rat(-1, 6));
    }

    #[test]
    fn errors() {
        assert!(parse_expr("").is_err());
        assert!(parse_expr("1.5*x").is_err());
        assert!(parse_expr("x +").is_err());
        assert!(parse_expr("(x").is_err());
        assert!(parse_expr("x^y").is_err());
        assert!(parse_expr("x $ y").is_err());
        assert!(matches!(
            parse_expr("1/(a-2)").unwrap().eval(&|_| Some(int(2))),
            Err(PolyError::DivisionByZero)
        ));
    }
}
