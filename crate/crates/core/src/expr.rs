//! Text syntax for ring elements and skew polynomials.
//!
//! Ring expressions:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := 'b' ['^' uint] | 'u' uint | '0' | '1' | '(' expr ')'
//!         | 'crt' '(' field (',' field)* ')'
//! field  := '0' | '1' | 'b' ['^' uint]
//! ```
//!
//! `-` is accepted as a synonym for `+` (characteristic 2). Whitespace is
//! insignificant. Polynomials use either the list form `poly[c0; c1; ...]`
//! or a sparse sum of terms `coef*x^i`, where the `x` power must be the
//! rightmost factor of its term and each degree may appear once.

use std::fmt;

use thiserror::Error;

use crate::gf::FieldElement;
use crate::ring::{RingContext, RingElement};
use crate::skewpoly::{SkewPoly, SkewPolyRing};

/// Largest accepted power of `x`.
const MAX_X_POWER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A character outside the token alphabet.
    Lexical,
    /// Well-formed tokens in a position the grammar does not allow.
    Syntax,
    /// `u<i>` with `i = 0` or `i > s`.
    UndefinedVariable(usize),
    /// Two sparse terms with the same power of `x`.
    DuplicateDegree(usize),
    /// Exponent that does not parse or exceeds the supported range.
    BadExponent,
    /// `x` in a ring expression or not at the right end of a term.
    MisplacedX,
    /// `crt(...)` literal with the wrong number of entries.
    CrtArity { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Int(String),
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Plus => f.write_str("'+'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Semi => f.write_str("';'"),
            Tok::Comma => f.write_str("','"),
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' | b'-' => Tok::Plus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b';' => Tok::Semi,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    pos: i,
                    kind: ParseErrorKind::Lexical,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a RingContext,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a RingContext, text: &str) -> Result<Self, ParseError> {
        Ok(Self { ring, toks: lex(text)?, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError { pos: self.offset(), kind, message: message.into() }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = self.peek().map_or("end of input".to_string(), |t| t.to_string());
        self.err(ParseErrorKind::Syntax, format!("expected {expected}, found {found}"))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.to_string()))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(self.unexpected("end of input"))
        } else {
            Ok(())
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v = s
                    .parse::<u64>()
                    .map_err(|_| self.err(ParseErrorKind::BadExponent, format!("integer `{s}` out of range")))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn optional_power(&mut self) -> Result<u64, ParseError> {
        if self.eat(&Tok::Caret) {
            match self.peek() {
                Some(Tok::Int(_)) => self.uint(),
                _ => Err(self.err(ParseErrorKind::BadExponent, "expected an exponent after '^'")),
            }
        } else {
            Ok(1)
        }
    }

    fn field_power(&self, e: u64) -> FieldElement {
        let f = self.ring.field();
        f.exp((e % f.order() as u64) as i64)
    }

    fn expr(&mut self) -> Result<RingElement, ParseError> {
        let mut acc = self.term()?;
        while self.eat(&Tok::Plus) {
            let t = self.term()?;
            self.ring.add_assign(&mut acc, &t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElement, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RingElement, ParseError> {
        let start = self.pos;
        match self.bump() {
            Some(Tok::Int(s)) if s == "0" => Ok(self.ring.zero()),
            Some(Tok::Int(s)) if s == "1" => Ok(self.ring.one()),
            Some(Tok::Ident(id)) if id == "b" => {
                let e = self.optional_power()?;
                Ok(self.ring.constant(self.field_power(e)))
            }
            Some(Tok::Ident(id)) if id == "u" => {
                let var_pos = self.offset();
                let i = self.uint()?;
                let s = self.ring.s();
                self.ring.variable(i as usize).map_err(|_| ParseError {
                    pos: var_pos,
                    kind: ParseErrorKind::UndefinedVariable(i as usize),
                    message: format!("variable u{i} is undefined when s = {s}"),
                })
            }
            Some(Tok::Ident(id)) if id == "crt" => self.crt_literal(),
            Some(Tok::Ident(id)) if id == "x" => {
                self.pos = start;
                Err(self.err(ParseErrorKind::MisplacedX, "`x` is not allowed inside a coefficient"))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            _ => {
                self.pos = start;
                Err(self.unexpected("0, 1, b, u<i>, crt(...) or '('"))
            }
        }
    }

    fn field_literal(&mut self) -> Result<FieldElement, ParseError> {
        match self.bump() {
            Some(Tok::Int(s)) if s == "0" => Ok(FieldElement::ZERO),
            Some(Tok::Int(s)) if s == "1" => Ok(FieldElement::ONE),
            Some(Tok::Ident(id)) if id == "b" => {
                let e = self.optional_power()?;
                Ok(self.field_power(e))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a field constant 0, 1, b or b^<int>"))
            }
        }
    }

    fn crt_literal(&mut self) -> Result<RingElement, ParseError> {
        let open = self.offset();
        self.expect(&Tok::LParen)?;
        let mut coords = vec![self.field_literal()?];
        while self.eat(&Tok::Comma) {
            coords.push(self.field_literal()?);
        }
        self.expect(&Tok::RParen)?;
        let expected = self.ring.width();
        if coords.len() != expected {
            return Err(ParseError {
                pos: open,
                kind: ParseErrorKind::CrtArity { expected, got: coords.len() },
                message: format!("crt literal needs {expected} entries, got {}", coords.len()),
            });
        }
        Ok(self.ring.ungray(coords).expect("field literals are reduced"))
    }

    fn poly(&mut self) -> Result<SkewPoly, ParseError> {
        if self.peek() == Some(&Tok::Ident("poly".into())) {
            self.pos += 1;
            return self.poly_list();
        }
        let mut coeffs: Vec<Option<RingElement>> = Vec::new();
        loop {
            let term_pos = self.offset();
            let (coef, degree) = self.poly_term()?;
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, None);
            }
            if coeffs[degree].is_some() {
                return Err(ParseError {
                    pos: term_pos,
                    kind: ParseErrorKind::DuplicateDegree(degree),
                    message: format!("degree {degree} appears more than once"),
                });
            }
            coeffs[degree] = Some(coef);
            if !self.eat(&Tok::Plus) {
                break;
            }
        }
        let zero = self.ring.zero();
        Ok(SkewPoly::from_vec(coeffs.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect()))
    }

    fn poly_list(&mut self) -> Result<SkewPoly, ParseError> {
        self.expect(&Tok::LBracket)?;
        let mut coeffs = Vec::new();
        if !self.eat(&Tok::RBracket) {
            coeffs.push(self.expr()?);
            while self.eat(&Tok::Semi) {
                coeffs.push(self.expr()?);
            }
            self.expect(&Tok::RBracket)?;
        }
        Ok(SkewPoly::from_vec(coeffs))
    }

    /// One sparse term: a product of ring factors optionally ending in `x^i`.
    fn poly_term(&mut self) -> Result<(RingElement, usize), ParseError> {
        let mut coef: Option<RingElement> = None;
        loop {
            if self.peek() == Some(&Tok::Ident("x".into())) {
                self.pos += 1;
                let e = self.optional_power()?;
                if e > MAX_X_POWER {
                    return Err(self.err(ParseErrorKind::BadExponent, format!("power of x exceeds {MAX_X_POWER}")));
                }
                if self.peek() == Some(&Tok::Star) {
                    return Err(
                        self.err(ParseErrorKind::MisplacedX, "the power of x must be the last factor of a term")
                    );
                }
                return Ok((coef.unwrap_or_else(|| self.ring.one()), e as usize));
            }
            let f = self.factor()?;
            coef = Some(match coef {
                None => f,
                Some(c) => self.ring.mul(&c, &f),
            });
            if !self.eat(&Tok::Star) {
                return Ok((coef.expect("just set"), 0));
            }
        }
    }
}

/// Parses a ring expression such as `b^7 + b*(u2+u3)` or `crt(1, b, 0, b^3)`.
pub fn parse_ring_expr(text: &str, ring: &RingContext) -> Result<RingElement, ParseError> {
    let mut p = Parser::new(ring, text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a skew polynomial in sparse or `poly[...]` list form.
pub fn parse_poly_expr(text: &str, ring: &RingContext) -> Result<SkewPoly, ParseError> {
    let mut p = Parser::new(ring, text)?;
    let f = p.poly()?;
    p.finish()?;
    Ok(f)
}

/// Renders `f` in sparse form; the output parses back to `f`.
pub fn format_poly(f: &SkewPoly, ring: &RingContext) -> String {
    SkewPolyRing::new(ring).format(f)
}
