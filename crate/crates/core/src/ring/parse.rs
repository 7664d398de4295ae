//! Recursive-descent parser for polynomial text.
//!
//! Accepts everything [`Poly::render`] and [`Poly::render_grouped`] emit,
//! plus ordinary arithmetic: `+ - * / ^`, parentheses, integer literals,
//! the imaginary unit `i` and the generator names of [`Var`]. Division is
//! only allowed by nonzero constants.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{Poly, Var};
use super::scalar::{GaussianRational, Rational};
use crate::error::Error;

pub fn parse_poly(text: &str) -> Result<Poly, Error> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { text, tokens, pos: 0 };
    let p = parser.sum()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if ch.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            k += 1;
        } else {
            return Err(Error::MalformedPoly {
                text: text.to_string(),
                reason: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::MalformedPoly { text: self.text.to_string(), reason: reason.to_string() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Poly, Error> {
        let mut acc = if self.eat('-') {
            -self.product()?
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Poly, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d.as_constant().ok_or_else(|| self.err("division by a non-constant"))?;
                if c.is_zero() {
                    return Err(Error::ZeroDenominator(self.text.to_string()));
                }
                acc = acc.scale(&c.inv().unwrap());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, Error> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    if e > 64 {
                        return Err(self.err("exponent too large"));
                    }
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, Error> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(GaussianRational::real(Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(Poly::constant(GaussianRational::i()));
                }
                Var::parse(&name)
                    .map(Poly::var)
                    .ok_or_else(|| self.err(&format!("unknown generator `{name}`")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("missing `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a number, generator or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grouped_and_flat_renderings() {
        let p = parse_poly("-1*x^3 + (1+l)*x^2*y").unwrap();
        let x = Poly::var(Var::X);
        let y = Poly::var(Var::Y);
        let l = Poly::var(Var::Lambda);
        let expected = &(-x.pow(3)) + &(&(&Poly::one() + &l) * &(&x.pow(2) * &y));
        assert_eq!(p, expected);
        assert_eq!(parse_poly(&p.render()).unwrap(), p);
        assert_eq!(parse_poly(&p.render_grouped()).unwrap(), p);
    }

    #[test]
    fn gaussian_coefficients() {
        let p = parse_poly("(1/2-2/3*i)*t + 3/4").unwrap();
        assert_eq!(p.render(), "(1/2-2/3*i)*t + 3/4");
        assert_eq!(parse_poly("-2/3*i*s").unwrap().render(), "-2/3*i*s");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("1/0"), Err(Error::ZeroDenominator(_))));
        assert!(matches!(parse_poly("x/y"), Err(Error::MalformedPoly { .. })));
        assert!(matches!(parse_poly("q + 1"), Err(Error::MalformedPoly { .. })));
        assert!(matches!(parse_poly("(x"), Err(Error::MalformedPoly { .. })));
        assert!(matches!(parse_poly("x^y"), Err(Error::MalformedPoly { .. })));
        assert!(matches!(parse_poly(""), Err(Error::MalformedPoly { .. })));
    }
}
