//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('+' | '-')? factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := var | scalar | '(' expr ')' | '[' expr ',' expr ']'
//! var    := 'X' uint            (uint ≥ 1)
//! scalar := '(' decimal ('+' | '-') decimal 'i' ')' | decimal
//! ```
//!
//! Commutator brackets expand to ab − ba. A leading sign on a term is
//! accepted so that printed polynomials with negative leading
//! coefficients read back.

use num_complex::Complex64;

use super::NcPolynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Imag,
    Var(u32),
    Num { value: f64, integer: Option<u32> },
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position: pos, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        let simple = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            b'i' => Some(Tok::Imag),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, pos });
            i += 1;
            continue;
        }
        if b == b'X' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end == start {
                return Err(syntax(pos, "expected a variable index after 'X'"));
            }
            let index: u32 = text[start..end]
                .parse()
                .map_err(|_| syntax(pos, "variable index too large"))?;
            if index == 0 {
                return Err(Error::ZeroVariable { position: pos });
            }
            out.push(Token { tok: Tok::Var(index), pos });
            i = end;
            continue;
        }
        if b.is_ascii_digit() || b == b'.' {
            let mut end = i;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            let int_end = end;
            if end < bytes.len() && bytes[end] == b'.' {
                end += 1;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
            }
            if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
                let mut k = end + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                let digits = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                if k == digits {
                    return Err(syntax(end, "exponent needs digits"));
                }
                end = k;
            }
            let slice = &text[i..end];
            let value: f64 = slice.parse().map_err(|_| syntax(pos, format!("bad number '{slice}'")))?;
            if !value.is_finite() {
                return Err(syntax(pos, "number out of range"));
            }
            let integer = if int_end == end { slice.parse::<u32>().ok() } else { None };
            out.push(Token { tok: Tok::Num { value, integer }, pos });
            i = end;
            continue;
        }
        let ch = text[i..].chars().next().unwrap_or('?');
        return Err(syntax(pos, format!("unexpected character '{ch}'")));
    }
    out.push(Token { tok: Tok::End, pos: text.len() });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn pos(&self) -> usize {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<NcPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NcPolynomial> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(if negate { acc.scale(Complex64::new(-1.0, 0.0)) } else { acc })
    }

    fn factor(&mut self) -> Result<NcPolynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Num { integer: Some(k), .. } => Ok(base.pow(k)),
            _ => Err(syntax(pos, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<NcPolynomial> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(NcPolynomial::var(v))
            }
            Tok::Num { value, .. } => {
                self.bump();
                if *self.peek() == Tok::Imag {
                    return Err(Error::MalformedComplex { position: self.pos() });
                }
                Ok(NcPolynomial::constant(Complex64::new(value, 0.0)))
            }
            Tok::LParen => {
                if let Some(z) = self.complex_literal()? {
                    return Ok(NcPolynomial::constant(z));
                }
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::LBracket => {
                self.bump();
                let a = self.expr()?;
                self.expect(Tok::Comma, "',' inside commutator")?;
                let b = self.expr()?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(NcPolynomial::commutator(&a, &b))
            }
            Tok::Imag => Err(Error::MalformedComplex { position: pos }),
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }

    /// At '(' — consumes `( decimal ± decimal i )` if the tokens start
    /// that way, otherwise leaves the position untouched.
    fn complex_literal(&mut self) -> Result<Option<Complex64>> {
        let (re, sign, im) = match (self.peek_at(1), self.peek_at(2), self.peek_at(3), self.peek_at(4)) {
            (Tok::Num { value: re, .. }, s @ (Tok::Plus | Tok::Minus), Tok::Num { value: im, .. }, Tok::Imag) => {
                (*re, if *s == Tok::Minus { -1.0 } else { 1.0 }, *im)
            }
            (Tok::Num { .. }, Tok::Plus | Tok::Minus, Tok::Imag, _) => {
                return Err(Error::MalformedComplex { position: self.pos() });
            }
            _ => return Ok(None),
        };
        let start = self.pos();
        for _ in 0..5 {
            self.bump();
        }
        if *self.peek() != Tok::RParen {
            return Err(Error::MalformedComplex { position: start });
        }
        self.bump();
        Ok(Some(Complex64::new(re, sign * im)))
    }
}

/// Parses polynomial text into canonical form.
pub fn parse(text: &str) -> Result<NcPolynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(poly)
}
