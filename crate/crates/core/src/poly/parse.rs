//! Text form of polynomials: integer or rational coefficients, `*` products,
//! `**` powers, `+`/`-` between terms. Parser and printer round-trip.

use super::{Coeff, Monomial, MonomialOrder, OrderKind, PolyError, Polynomial, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::fmt;

impl Polynomial<BigRational> {
    /// Parse a polynomial in the given ring. A trailing `;` is accepted.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self, PolyError> {
        Parser::new(ring, text)?.parse()
    }
}

/// Variables occurring in a polynomial text, in order of first appearance.
pub fn scan_variables(text: &str) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            if !vars.contains(&name) {
                vars.push(name);
            }
        } else {
            i += 1;
        }
    }
    vars
}

struct Parser<'r> {
    ring: &'r Ring,
    tokens: Vec<Token>,
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Slash,
    Power,
    Int(BigInt),
    Ident(String),
}

impl<'r> Parser<'r> {
    fn new(ring: &'r Ring, text: &str) -> Result<Self, PolyError> {
        let text = text.trim().trim_end_matches(';').trim();
        let mut tokens = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' => i += 1,
                '+' => {
                    tokens.push(Token::Plus);
                    i += 1;
                }
                '-' => {
                    tokens.push(Token::Minus);
                    i += 1;
                }
                '*' => {
                    if chars.get(i + 1) == Some(&'*') {
                        tokens.push(Token::Power);
                        i += 2;
                    } else {
                        tokens.push(Token::Star);
                        i += 1;
                    }
                }
                '^' => {
                    tokens.push(Token::Power);
                    i += 1;
                }
                '/' => {
                    tokens.push(Token::Slash);
                    i += 1;
                }
                d if d.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    tokens.push(Token::Int(s.parse().expect("digits")));
                }
                a if a.is_ascii_alphabetic() || a == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    tokens.push(Token::Ident(chars[start..i].iter().collect()));
                }
                other => {
                    return Err(PolyError::Parse(format!("unexpected character `{other}`")));
                }
            }
        }
        Ok(Parser {
            ring,
            tokens,
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse(&mut self) -> Result<Polynomial<BigRational>, PolyError> {
        let mut poly = Polynomial::zero(self.ring);
        if self.tokens.is_empty() {
            return Err(PolyError::Parse("empty polynomial".into()));
        }
        let mut sign = 1i64;
        // Optional leading sign.
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.pos += 1;
                }
                Token::Minus => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ => break,
            }
        }
        loop {
            let (mono, coeff) = self.parse_term()?;
            let c = if sign < 0 { -coeff } else { coeff };
            poly.add_term(mono, c);
            match self.next() {
                None => break,
                Some(Token::Plus) => sign = 1,
                Some(Token::Minus) => sign = -1,
                Some(t) => {
                    return Err(PolyError::Parse(format!("expected + or -, found {t:?}")));
                }
            }
            // Allow chains like `- -x`.
            while let Some(t) = self.peek() {
                match t {
                    Token::Plus => {
                        self.pos += 1;
                    }
                    Token::Minus => {
                        sign = -sign;
                        self.pos += 1;
                    }
                    _ => break,
                }
            }
        }
        Ok(poly)
    }

    fn parse_term(&mut self) -> Result<(Monomial, BigRational), PolyError> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; self.ring.nvars()];
        loop {
            match self.next() {
                Some(Token::Int(n)) => {
                    coeff *= BigRational::from_integer(n);
                    if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Int(d)) => {
                                if d.sign() == num_bigint::Sign::NoSign {
                                    return Err(PolyError::Parse("division by zero".into()));
                                }
                                coeff /= BigRational::from_integer(d);
                            }
                            t => {
                                return Err(PolyError::Parse(format!(
                                    "expected integer denominator, found {t:?}"
                                )));
                            }
                        }
                    }
                }
                Some(Token::Ident(name)) => {
                    let idx = self
                        .ring
                        .var_index(&name)
                        .ok_or(PolyError::UnknownVariable(name))?;
                    let mut power = 1u32;
                    if self.peek() == Some(&Token::Power) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Int(n)) => {
                                power = n
                                    .try_into()
                                    .map_err(|_| PolyError::Parse("exponent too large".into()))?;
                            }
                            t => {
                                return Err(PolyError::Parse(format!(
                                    "expected integer exponent, found {t:?}"
                                )));
                            }
                        }
                    }
                    exps[idx] += power;
                }
                t => {
                    return Err(PolyError::Parse(format!("expected a factor, found {t:?}")));
                }
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exps(exps), coeff))
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    /// Prints in the conventional report form: terms sorted descending under
    /// lex with the *last* ring variable most significant, which reproduces
    /// the usual `R**3*e*x**2` ordering for a ring declared as (x, e, R).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::with_precedence(
            OrderKind::Lex,
            (0..self.ring.nvars()).rev().collect(),
        );
        let mut first = true;
        for (mono, coeff) in self.sorted_terms(&order) {
            let (sign_str, abs) = if coeff.is_negative() {
                (if first { "-" } else { " - " }, coeff.neg())
            } else {
                (if first { "" } else { " + " }, coeff)
            };
            write!(f, "{sign_str}")?;
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || mono.is_one() {
                factors.push(format!("{abs}"));
            }
            for &vi in (0..self.ring.nvars()).rev().collect::<Vec<_>>().iter() {
                let e = mono.exps()[vi];
                let name = &self.ring.var_names()[vi];
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}**{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
            first = false;
        }
        Ok(())
    }
}
