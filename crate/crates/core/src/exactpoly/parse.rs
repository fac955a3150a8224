//! Text grammar shared by every module and the CLI.
//!
//! ```text
//! expr   := [sign] term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | atom ["^" int]
//! atom   := integer | identifier | "d/d" identifier | "(" expr ")"
//! int    := ["-" | "+"] digits | "(" ["-"] digits ")"
//! ```
//!
//! The `d/dv` atom only has meaning for vector fields; polynomial
//! evaluation rejects it.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Polynomial, Rational, VarKind, VariableSpace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Deriv(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Deriv(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Int(s.parse().expect("digits")));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            // `d/dname` is a single token
            if c == 'd'
                && chars.get(i + 1) == Some(&'/')
                && chars.get(i + 2) == Some(&'d')
                && chars
                    .get(i + 3)
                    .is_some_and(|c| c.is_ascii_alphabetic() || *c == '_')
            {
                let start = i + 3;
                let mut j = start;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                out.push(Token::Deriv(chars[start..j].iter().collect()));
                i = j;
                continue;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
            continue;
        }
        let t = match c {
            '+' => Token::Plus,
            '-' | '\u{2212}' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => return Err(Error::Syntax(format!("unexpected character `{other}`"))),
        };
        out.push(t);
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat(&Token::Minus) {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat(&Token::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Token::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Token::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(&Token::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(&Token::Slash) {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(&Token::Minus) {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let atom = self.atom()?;
        if self.eat(&Token::Caret) {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(atom), e));
        }
        Ok(atom)
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat(&Token::LParen);
        let negative = if self.eat(&Token::Minus) {
            true
        } else {
            self.eat(&Token::Plus);
            false
        };
        let n = match self.next() {
            Some(Token::Int(n)) => {
                i64::try_from(n).map_err(|_| Error::Syntax("exponent out of range".into()))?
            }
            other => {
                return Err(Error::Syntax(format!(
                    "expected integer exponent, got {other:?}"
                )))
            }
        };
        if paren && !self.eat(&Token::RParen) {
            return Err(Error::Syntax("unclosed exponent".into()));
        }
        Ok(if negative { -n } else { n })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Expr::Int(n)),
            Some(Token::Ident(s)) => Ok(Expr::Var(s)),
            Some(Token::Deriv(s)) => Ok(Expr::Deriv(s)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return Err(Error::Syntax("missing `)`".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Syntax(format!("unexpected token {t:?}"))),
            None => Err(Error::Syntax("unexpected end of input".into())),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Syntax("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Syntax(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

/// Interpretation of the expression tree into some algebra.
pub trait Evaluator {
    type Value;
    fn int(&self, n: &BigInt) -> Result<Self::Value>;
    fn var(&self, name: &str) -> Result<Self::Value>;
    fn deriv(&self, name: &str) -> Result<Self::Value> {
        Err(Error::Syntax(format!("unexpected `d/d{name}`")))
    }
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn pow(&self, a: Self::Value, n: i64) -> Result<Self::Value>;
}

impl Expr {
    pub fn eval<E: Evaluator>(&self, ev: &E) -> Result<E::Value> {
        match self {
            Expr::Int(n) => ev.int(n),
            Expr::Var(s) => ev.var(s),
            Expr::Deriv(s) => ev.deriv(s),
            Expr::Neg(a) => {
                let a = a.eval(ev)?;
                ev.neg(a)
            }
            Expr::Add(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.add(a, b)
            }
            Expr::Sub(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.sub(a, b)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.mul(a, b)
            }
            Expr::Div(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.div(a, b)
            }
            Expr::Pow(a, n) => {
                let a = a.eval(ev)?;
                ev.pow(a, *n)
            }
        }
    }

    pub fn to_polynomial(&self, space: &Arc<VariableSpace>) -> Result<Polynomial> {
        self.eval(&PolyEval { space })
    }
}

/// Evaluates into Laurent polynomials over a fixed space. Division and
/// negative powers are allowed only for monomials.
pub struct PolyEval<'a> {
    pub space: &'a Arc<VariableSpace>,
}

impl PolyEval<'_> {
    fn invert(&self, p: &Polynomial) -> Result<Polynomial> {
        if let Some((e, _)) = p.as_monomial() {
            if let Some(i) = e
                .iter()
                .enumerate()
                .position(|(i, &k)| k > 0 && self.space.kind(i) == VarKind::Affine)
            {
                return Err(Error::NegativeExponentOnAffineVar(
                    self.space.name(i).to_string(),
                ));
            }
        }
        p.inverse()
    }
}

impl Evaluator for PolyEval<'_> {
    type Value = Polynomial;

    fn int(&self, n: &BigInt) -> Result<Polynomial> {
        Ok(Polynomial::constant(
            self.space,
            Rational::from_integer(n.clone()),
        ))
    }

    fn var(&self, name: &str) -> Result<Polynomial> {
        Polynomial::var(self.space, name)
    }

    fn neg(&self, a: Polynomial) -> Result<Polynomial> {
        Ok(-a)
    }

    fn add(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
        a.try_add(&b)
    }

    fn sub(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
        a.try_sub(&b)
    }

    fn mul(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
        a.try_mul(&b)
    }

    fn div(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
        a.try_mul(&self.invert(&b)?)
    }

    fn pow(&self, a: Polynomial, n: i64) -> Result<Polynomial> {
        if n < 0 {
            self.invert(&a)?.powi(-n)
        } else {
            a.powi(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deriv_tokens() {
        let e = parse_expr("x^2*d/dx + (1/2)*t^-1*d/dt").unwrap();
        let mut derivs = Vec::new();
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Deriv(s) => out.push(s.clone()),
                Expr::Neg(a) | Expr::Pow(a, _) => walk(a, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                _ => {}
            }
        }
        walk(&e, &mut derivs);
        assert_eq!(derivs, vec!["x".to_string(), "t".to_string()]);
    }

    #[test]
    fn exponent_forms() {
        let s = VariableSpace::laurent(&["x"]);
        let a = Polynomial::parse("x^(-2)", &s).unwrap();
        let b = Polynomial::parse("x^-2", &s).unwrap();
        let c = Polynomial::parse("1/x^2", &s).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert!(Polynomial::parse("(x+1)^-1", &s).is_err());
        assert!(Polynomial::parse("x $ 2", &s).is_err());
        assert!(Polynomial::parse("", &s).is_err());
    }
}
