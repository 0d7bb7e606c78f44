//! Expressions for regular polynomials in `q`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | 'q' | 'i' | 'j' | 'k' | '(' expr ')'
//! ```
//!
//! `*` is the star product (the ordinary product on constants); `/` divides by
//! a nonzero constant on the right. A JSON array `[w, x, y, z]` is also
//! accepted as a constant.

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::series::RegularPolynomial;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(f64),
    Var,
    Unit(Quaternion),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn parse_error(input: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{msg} in '{input}'"))
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        let token = match c {
            ' ' | '\t' => {
                pos += 1;
                continue;
            }
            '0'..='9' | '.' => {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '.') {
                    pos += 1;
                }
                // exponent, only when followed by digits
                if pos < chars.len() && (chars[pos] == 'e' || chars[pos] == 'E') {
                    let mut look = pos + 1;
                    if look < chars.len() && (chars[look] == '+' || chars[look] == '-') {
                        look += 1;
                    }
                    if look < chars.len() && chars[look].is_ascii_digit() {
                        pos = look;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                    }
                }
                let text: String = chars[start..pos].iter().collect();
                let value = text
                    .parse::<f64>()
                    .map_err(|_| parse_error(input, format!("bad number '{text}'")))?;
                tokens.push(Token::Number(value));
                continue;
            }
            'q' => Token::Var,
            'i' => Token::Unit(Quaternion::I),
            'j' => Token::Unit(Quaternion::J),
            'k' => Token::Unit(Quaternion::K),
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            other => return Err(parse_error(input, format!("unexpected character '{other}'"))),
        };
        tokens.push(token);
        pos += 1;
    }
    Ok(tokens)
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RegularPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RegularPolynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.star(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let divisor = self.unary()?;
                    if divisor.degree().unwrap_or(0) > 0 {
                        return Err(parse_error(self.input, "division by a non-constant"));
                    }
                    let inv = divisor
                        .coeff(0)
                        .inverse()
                        .map_err(|_| parse_error(self.input, "division by zero"))?;
                    acc = acc.right_scale(inv);
                }
                Some(Token::Number(_) | Token::Var | Token::Unit(_) | Token::Open) => {
                    acc = acc.star(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RegularPolynomial> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RegularPolynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.next() {
            Some(Token::Number(n)) if n >= 0.0 && n.fract() == 0.0 && n <= 1000.0 => Ok(base.star_pow(n as u32)),
            _ => Err(parse_error(self.input, "exponent must be a non-negative integer")),
        }
    }

    fn atom(&mut self) -> Result<RegularPolynomial> {
        match self.next() {
            Some(Token::Number(x)) => Ok(RegularPolynomial::constant(Quaternion::real(x))),
            Some(Token::Var) => Ok(RegularPolynomial::identity()),
            Some(Token::Unit(u)) => Ok(RegularPolynomial::constant(u)),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(parse_error(self.input, "missing ')'")),
                }
            }
            Some(t) => Err(parse_error(self.input, format!("unexpected {t:?}"))),
            None => Err(parse_error(self.input, "unexpected end of input")),
        }
    }
}

/// Parses a regular polynomial in `q`.
pub fn parse_polynomial(input: &str) -> Result<RegularPolynomial> {
    let trimmed = input.trim();
    if trimmed.starts_with('[') {
        return Ok(RegularPolynomial::constant(trimmed.parse()?));
    }
    let tokens = tokenize(trimmed)?;
    if tokens.is_empty() {
        return Err(parse_error(input, "empty expression"));
    }
    let mut parser = Parser { input, tokens, pos: 0 };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parse_error(input, "trailing input"));
    }
    Ok(value)
}

/// Parses a constant expression such as `0.5i`, `(i+j)/2` or `[0,1,0,0]`.
pub fn parse_quaternion(input: &str) -> Result<Quaternion> {
    let p = parse_polynomial(input)?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(parse_error(input, "expected a constant, found a polynomial in q"));
    }
    let value = p.coeff(0);
    if !value.is_finite() {
        return Err(parse_error(input, "non-finite value"));
    }
    Ok(value)
}
