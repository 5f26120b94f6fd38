//! Small recursive-descent parser for polynomial expressions such as
//! `x2*x4 - 1/2*x3^2` or `(x + 1)*L`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::poly::{terms_add, terms_mul, terms_scale};
use crate::exactalg::rational::Rational;
use crate::exactalg::ring::{Monomial, Ring, TermMap};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{text}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Token>,
    pos: usize,
    source: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in `{}`", self.pos, self.source))
    }

    fn expr(&mut self) -> Result<TermMap> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                terms_add(&mut acc, &rhs, &Rational::one());
            } else if self.eat('-') {
                let rhs = self.term()?;
                terms_add(&mut acc, &rhs, &-Rational::one());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TermMap> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = terms_mul(&acc, &rhs);
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let inv = self.invert(&rhs)?;
                acc = terms_mul(&acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn invert(&self, value: &TermMap) -> Result<TermMap> {
        if value.len() != 1 {
            return Err(self.err("division by a non-monomial"));
        }
        let (m, c) = value.iter().next().expect("one term");
        let inv = Monomial::from_exponents(m.exponents().iter().map(|e| -e).collect());
        self.ring.check_monomial(&inv)?;
        let mut out = TermMap::new();
        out.insert(inv, c.recip());
        Ok(out)
    }

    fn unary(&mut self) -> Result<TermMap> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(terms_scale(&v, &-Rational::one()));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<TermMap> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let exp: u32 = match self.peek() {
            Some(Token::Num(n)) => {
                let e = n.try_into().map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                e
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        let base = if negative { self.invert(&base)? } else { base };
        let mut acc = TermMap::new();
        acc.insert(Monomial::one(self.ring.len()), Rational::one());
        for _ in 0..exp {
            acc = terms_mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<TermMap> {
        let n = self.ring.len();
        match self.peek().cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                let mut t = TermMap::new();
                if !v.is_zero() {
                    t.insert(Monomial::one(n), Rational::from_integer(v));
                }
                Ok(t)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let idx = self
                    .ring
                    .index_of(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in `{}`", self.source)))?;
                let mut t = TermMap::new();
                t.insert(Monomial::var(n, idx), Rational::one());
                Ok(t)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

pub(crate) fn parse_terms(ring: &Ring, text: &str) -> Result<TermMap> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        ring,
        tokens,
        pos: 0,
        source: text,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(value)
}
