//! Coordinate expressions in one variable `t`.
//!
//! ```
//! use smarandache_core::expr::parse;
//! let e = parse("2*t + sin(t)^2").unwrap();
//! assert!((e.eval(std::f64::consts::FRAC_PI_2).unwrap() - (std::f64::consts::PI + 1.0)).abs() < 1e-12);
//! ```
//!
//! Precedence from loosest to tightest: `+ -`, `* /`, unary `-`, `^`.
//! `^` is right-associative and binds tighter than unary minus, so `-t^2`
//! is `-(t^2)` while `2^-1` is `0.5`.

use std::fmt;

use crate::error::{Error, Result};
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Asin,
    Acos,
    Atan,
    Sqrt,
    Exp,
    Log,
    Abs,
}

impl Func {
    pub const ALL: [Func; 10] =
        [Func::Sin, Func::Cos, Func::Tan, Func::Asin, Func::Acos, Func::Atan, Func::Sqrt, Func::Exp, Func::Log, Func::Abs];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Asin => "asin",
            Func::Acos => "acos",
            Func::Atan => "atan",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Abs => "abs",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    fn apply(self, x: f64) -> Result<f64> {
        let bad = || Err(Error::Domain { function: self.name().to_string(), argument: x });
        let y = match self {
            Func::Sqrt if x < 0.0 => return bad(),
            Func::Log if x <= 0.0 => return bad(),
            Func::Asin | Func::Acos if !(-1.0..=1.0).contains(&x) => return bad(),
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Asin => x.asin(),
            Func::Acos => x.acos(),
            Func::Atan => x.atan(),
            Func::Sqrt => x.sqrt(),
            Func::Exp => x.exp(),
            Func::Log => x.ln(),
            Func::Abs => x.abs(),
        };
        if y.is_finite() {
            Ok(y)
        } else {
            bad()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }
}

/// Expression tree. Literals are non-negative; negation is explicit.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Const(Constant),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            Expr::Num(v) => Ok(*v),
            Expr::Var => Ok(t),
            Expr::Const(c) => Ok(c.value()),
            Expr::Neg(e) => Ok(-e.eval(t)?),
            Expr::Call(f, e) => f.apply(e.eval(t)?),
            Expr::Binary(op, a, b) => {
                let (x, y) = (a.eval(t)?, b.eval(t)?);
                let (v, culprit) = match op {
                    BinOp::Add => (x + y, x),
                    BinOp::Sub => (x - y, x),
                    BinOp::Mul => (x * y, x),
                    BinOp::Div => (x / y, y),
                    BinOp::Pow => (x.powf(y), x),
                };
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Domain { function: op.symbol().to_string(), argument: culprit })
                }
            }
        }
    }
}

/// Fully parenthesized form; parsing it back gives an equivalent tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var => f.write_str("t"),
            Expr::Const(c) => f.write_str(c.name()),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn syntax(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax { offset, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some('+') => BinOp::Add,
                Some('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some('*') => BinOp::Mul,
                Some('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            // right operand may itself be negated or another power
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => Err(self.syntax(start, "unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    let at = self.pos;
                    return Err(self.syntax(at, "expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(start),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.ident(start),
            Some(c) => Err(self.syntax(start, format!("unexpected `{c}`"))),
        }
    }

    fn number(&mut self, start: usize) -> Result<Expr> {
        let bytes = self.src.as_bytes();
        let mut i = start;
        let digits = |i: &mut usize| {
            let from = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            *i - from
        };
        let mut count = digits(&mut i);
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            count += digits(&mut i);
        }
        if count == 0 {
            return Err(self.syntax(start, "malformed number"));
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            // `2e` followed by something else is a number times a name
            if digits(&mut j) > 0 {
                i = j;
            }
        }
        let text = &self.src[start..i];
        let v: f64 = text.parse().map_err(|_| self.syntax(start, "malformed number"))?;
        if !v.is_finite() {
            return Err(self.syntax(start, "number out of range"));
        }
        self.pos = i;
        Ok(Expr::Num(v))
    }

    fn ident(&mut self, start: usize) -> Result<Expr> {
        let bytes = self.src.as_bytes();
        let mut i = start;
        while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
            i += 1;
        }
        let name = &self.src[start..i];
        self.pos = i;
        match name {
            "t" => return Ok(Expr::Var),
            "pi" => return Ok(Expr::Const(Constant::Pi)),
            "e" => return Ok(Expr::Const(Constant::E)),
            _ => {}
        }
        let Some(func) = Func::from_name(name) else {
            return Err(Error::UnknownIdentifier { name: name.to_string(), offset: start });
        };
        if !self.eat('(') {
            let at = self.pos;
            return Err(self.syntax(at, format!("expected `(` after `{name}`")));
        }
        let arg = self.expr()?;
        if !self.eat(')') {
            let at = self.pos;
            return Err(self.syntax(at, "expected `)`"));
        }
        Ok(Expr::Call(func, Box::new(arg)))
    }
}

fn parse_at(text: &str, base: usize) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr().map_err(|e| shift(e, base))?;
    if let Some(c) = p.peek() {
        return Err(Error::Syntax { offset: base + p.pos, message: format!("unexpected `{c}`") });
    }
    Ok(e)
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Syntax { offset, message } => Error::Syntax { offset: offset + base, message },
        Error::UnknownIdentifier { name, offset } => Error::UnknownIdentifier { name, offset: offset + base },
        other => other,
    }
}

/// Parses a single expression. Error offsets are byte offsets into `text`.
pub fn parse(text: &str) -> Result<Expr> {
    parse_at(text, 0)
}

/// Three coordinate expressions `x(t); y(t); z(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveExpr(pub [Expr; 3]);

impl CurveExpr {
    pub fn eval(&self, t: f64) -> Result<Vec3> {
        Ok(Vec3::new(self.0[0].eval(t)?, self.0[1].eval(t)?, self.0[2].eval(t)?))
    }
}

impl fmt::Display for CurveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}; {}", self.0[0], self.0[1], self.0[2])
    }
}

pub fn parse_curve(text: &str) -> Result<CurveExpr> {
    let mut parts = Vec::with_capacity(3);
    let mut base = 0;
    for (k, piece) in text.split(';').enumerate() {
        if k == 3 {
            return Err(Error::Syntax { offset: base - 1, message: "expected exactly three `;`-separated coordinates".into() });
        }
        parts.push(parse_at(piece, base)?);
        base += piece.len() + 1;
    }
    if parts.len() != 3 {
        return Err(Error::Syntax { offset: text.len(), message: "expected exactly three `;`-separated coordinates".into() });
    }
    let [x, y, z]: [Expr; 3] = parts.try_into().expect("three parts");
    Ok(CurveExpr([x, y, z]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn at(s: &str, t: f64) -> f64 {
        parse(s).unwrap().eval(t).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(at("2+3*4", 0.0), 14.0);
        assert_eq!(at("2^3^2", 0.0), 512.0);
        assert_eq!(at("-t^2", 3.0), -9.0);
        assert_eq!(at("2^-1", 0.0), 0.5);
        assert_eq!(at("t^3 - t", 2.0), 6.0);
        assert_eq!(at("10 - 4 - 3", 0.0), 3.0);
        assert_eq!(at("8 / 4 / 2", 0.0), 1.0);
        assert_eq!(at("cos(t)", 0.0), 1.0);
        assert!((at("2*t + sin(t)^2", FRAC_PI_2) - (PI + 1.0)).abs() < 1e-12);
        assert_eq!(at("sqrt(t)", 4.0), 2.0);
        assert_eq!(at(" 1.5e1 + .5 ", 0.0), 15.5);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert!(matches!(parse("cos("), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(parse("1 +"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse("(1"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("1 2"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("2e"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse("sin t"), Err(Error::Syntax { offset: 4, .. })));
        assert_eq!(parse("foo(t)"), Err(Error::UnknownIdentifier { name: "foo".into(), offset: 0 }));
    }

    #[test]
    fn domain_errors() {
        let e = parse("asin(t)").unwrap();
        assert_eq!(e.eval(2.0), Err(Error::Domain { function: "asin".into(), argument: 2.0 }));
        assert!(matches!(parse("log(t)").unwrap().eval(0.0), Err(Error::Domain { .. })));
        assert!(matches!(parse("sqrt(t)").unwrap().eval(-1.0), Err(Error::Domain { .. })));
        assert!(matches!(parse("1/t").unwrap().eval(0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn curve_triples() {
        let c = parse_curve("cos(t); sin(t); 0.5*t").unwrap();
        assert_eq!(c.eval(0.0).unwrap(), Vec3::new(1.0, 0.0, 0.0));
        assert!(matches!(parse_curve("t; t"), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(parse_curve("t; t; t; t"), Err(Error::Syntax { offset: 7, .. })));
        assert!(matches!(parse_curve("t; sin(; t"), Err(Error::Syntax { offset: 7, .. })));
    }

    #[test]
    fn display_reparses() {
        let e = parse("-t^2 + 3*sin(pi*t)/e").unwrap();
        let back = parse(&e.to_string()).unwrap();
        assert_eq!(e, back);
    }
}
