//! Expression language for algebra elements.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := rational ('*' factor)* | factor ('*' factor)*
//! factor   := ident ('^' positive-int)?
//! rational := int | int '/' positive-int
//! ```
//!
//! Whitespace, including newlines, is insignificant. Errors carry the line
//! and column (both 1-based) of the offending token.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{Element, FreeGca};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken {
        expected: &'static str,
        found: String,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
    UnknownIdent(String),
    OddPower {
        name: String,
        exponent: u64,
    },
    ZeroDenominator,
    BadExponent(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken { expected, found } => {
                write!(f, "expected {expected}, found `{found}`")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "expected {expected}, found end of input")
            }
            ParseErrorKind::UnknownIdent(name) => write!(f, "unknown generator `{name}`"),
            ParseErrorKind::OddPower { name, exponent } => {
                write!(
                    f,
                    "odd generator `{name}` cannot be raised to power {exponent}"
                )
            }
            ParseErrorKind::ZeroDenominator => f.write_str("denominator must be positive"),
            ParseErrorKind::BadExponent(e) => {
                write!(f, "exponent `{e}` must be a positive integer")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Slash => f.write_str("/"),
            Tok::Caret => f.write_str("^"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<(Vec<(Tok, Pos)>, Pos), ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = simple {
            chars.next();
            column += 1;
            out.push((t, pos));
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            let n: BigInt = digits.parse().expect("ascii digits");
            out.push((Tok::Int(n), pos));
        } else if c.is_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_' || d == '.' || d == '\'') {
                    break;
                }
                ident.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Ident(ident), pos));
        } else {
            return Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::UnexpectedChar(c),
            });
        }
    }
    Ok((out, Pos { line, column }))
}

struct Parser<'a> {
    tokens: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
    algebra: &'a FreeGca,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.tokens
            .get(self.at)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let p = self.pos();
        ParseError {
            line: p.line,
            column: p.column,
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(ParseErrorKind::UnexpectedToken {
                expected,
                found: t.to_string(),
            }),
            None => self.error(ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let mut negative = match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            _ => false,
        };
        let mut acc = self.algebra.zero();
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                None => return Ok(acc),
                Some(_) => return Err(self.unexpected("`+`, `-`, `*` or end of input")),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Int(_)) => {
                let c = self.rational()?;
                self.algebra.constant(c)
            }
            Some(Tok::Ident(_)) => self.factor()?,
            _ => return Err(self.unexpected("a number or generator name")),
        };
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = self.algebra.multiply(&acc, &f).expect("same algebra");
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let Some(Tok::Int(num)) = self.bump() else {
            unreachable!("caller checked for an integer")
        };
        if let Some(Tok::Slash) = self.peek() {
            self.bump();
            let den_pos = self.pos();
            match self.bump() {
                Some(Tok::Int(den)) if !den.is_zero() => Ok(Rational::new(num, den)),
                Some(Tok::Int(_)) => Err(ParseError {
                    line: den_pos.line,
                    column: den_pos.column,
                    kind: ParseErrorKind::ZeroDenominator,
                }),
                _ => {
                    self.at -= 1;
                    Err(self.unexpected("a positive denominator"))
                }
            }
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        let ident_pos = self.pos();
        let name = match self.bump() {
            Some(Tok::Ident(name)) => name,
            _ => {
                self.at -= 1;
                return Err(self.unexpected("a generator name"));
            }
        };
        let Some(g) = self.algebra.generator_by_name(&name) else {
            return Err(ParseError {
                line: ident_pos.line,
                column: ident_pos.column,
                kind: ParseErrorKind::UnknownIdent(name),
            });
        };
        let (id, odd) = (g.id, g.is_odd());
        let mut exponent = 1u64;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let exp_pos = self.pos();
            match self.bump() {
                Some(Tok::Int(n)) if n.is_positive() && n.to_u32().is_some() => {
                    exponent = n.to_u64().expect("fits");
                }
                Some(t) => {
                    return Err(ParseError {
                        line: exp_pos.line,
                        column: exp_pos.column,
                        kind: ParseErrorKind::BadExponent(t.to_string()),
                    })
                }
                None => {
                    return Err(self.error(ParseErrorKind::UnexpectedEnd {
                        expected: "an exponent",
                    }))
                }
            }
        }
        if odd && exponent > 1 {
            return Err(ParseError {
                line: ident_pos.line,
                column: ident_pos.column,
                kind: ParseErrorKind::OddPower { name, exponent },
            });
        }
        Ok(self.algebra.power(&self.algebra.gen(id), exponent as u32))
    }
}

/// Parses `text` as an element of `algebra`.
pub fn parse_expression(text: &str, algebra: &FreeGca) -> Result<Element, ParseError> {
    let (tokens, end) = tokenize(text)?;
    let mut p = Parser {
        tokens,
        at: 0,
        end,
        algebra,
    };
    if p.peek().is_none() {
        return Err(p.error(ParseErrorKind::UnexpectedEnd {
            expected: "an expression",
        }));
    }
    p.expr()
}

/// Parses a rational literal such as `3`, `-1/2`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if !d.is_positive() {
                return None;
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(body.parse().ok()?),
    };
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n_algebra() -> FreeGca {
        FreeGca::new(&[("alpha", 1), ("beta", 1), ("gamma", 1), ("x", 2)]).unwrap()
    }

    #[test]
    fn heisenberg_differential() {
        let a = n_algebra();
        let e = parse_expression("-1 * alpha * beta", &a).unwrap();
        let ab = a.multiply(&a.gen(0), &a.gen(1)).unwrap();
        assert_eq!(e, -&ab);
        assert_eq!(parse_expression("beta * alpha", &a).unwrap(), e);
    }

    #[test]
    fn powers() {
        let a = n_algebra();
        let xx = parse_expression("x^2", &a).unwrap();
        assert_eq!(a.format_element(&xx), "x^2");
        let err = parse_expression("alpha^2", &a).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::OddPower { .. }));
        assert_eq!((err.line, err.column), (1, 1));
        assert!(matches!(
            parse_expression("x^0", &a).unwrap_err().kind,
            ParseErrorKind::BadExponent(_)
        ));
    }

    #[test]
    fn errors_report_position() {
        let a = n_algebra();
        let err = parse_expression("alpha +\n  delta", &a).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert_eq!(err.kind, ParseErrorKind::UnknownIdent("delta".into()));

        let err = parse_expression("alpha ** beta", &a).unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));

        let err = parse_expression("1/0*alpha", &a).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ZeroDenominator);

        let err = parse_expression("alpha beta", &a).unwrap_err();
        assert_eq!((err.line, err.column), (1, 7));

        let err = parse_expression("alpha $", &a).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar('$'));

        assert!(parse_expression("", &a).is_err());
        assert!(parse_expression("alpha -", &a).is_err());
        assert!(parse_expression("alpha * 2", &a).is_err());
    }

    #[test]
    fn rationals_and_constants() {
        let a = n_algebra();
        let e = parse_expression("3/4 * gamma - 2", &a).unwrap();
        assert_eq!(a.format_element(&e), "-2 + 3/4*gamma");
        assert!(parse_expression("0", &a).unwrap().is_zero());
        assert_eq!(
            parse_rational("-3/6"),
            Some(Rational::new((-1).into(), 2.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn canonical_print_is_fixed_point() {
        let a = n_algebra();
        let e = parse_expression("beta*alpha*x - 1/3*gamma*x^2 + 5", &a).unwrap();
        let printed = a.format_element(&e);
        let again = parse_expression(&printed, &a).unwrap();
        assert_eq!(again, e);
        assert_eq!(a.format_element(&again), printed);
    }
}
