//! Expression grammar for polynomials, maps and line parametrizations.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-' term | product
//! product := power ('*' power)*
//! power   := atom ('^' nat)?
//! atom    := var | rational | '(' expr ')'
//! ```
//!
//! Precedence is `^` over `*` over unary `-` over binary `+`/`-`. There is
//! no implicit multiplication: `2xy` is a syntax error, `2*x*y` is not.
//! Rationals are written `a/b`; `/` is not a general operator. Parsing the
//! canonical printed form of a polynomial returns the same polynomial.

use num::BigInt;

use crate::error::{Error, Result};
use crate::poly::{var_names, MultiPoly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(usize),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    arity: u8,
    toks: Vec<(Tok, usize)>,
}

fn syntax(span: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        span,
        message: message.into(),
    }
}

impl<'a> Lexer<'a> {
    fn lex(src: &'a str, arity: u8) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            src,
            arity,
            toks: Vec::new(),
        };
        lx.run()?;
        Ok(lx.toks)
    }

    fn run(&mut self) -> Result<()> {
        let names = var_names(self.arity);
        let bytes = self.src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => {
                    self.toks.push((Tok::Plus, i));
                    i += 1;
                }
                '-' | '\u{2212}' => {
                    self.toks.push((Tok::Minus, i));
                    i += c.len_utf8();
                }
                '*' => {
                    self.toks.push((Tok::Star, i));
                    i += 1;
                }
                '^' => {
                    self.toks.push((Tok::Caret, i));
                    i += 1;
                }
                '/' => {
                    self.toks.push((Tok::Slash, i));
                    i += 1;
                }
                '(' => {
                    self.toks.push((Tok::LParen, i));
                    i += 1;
                }
                ')' => {
                    self.toks.push((Tok::RParen, i));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: BigInt = self.src[start..i].parse().expect("digits parse");
                    // implicit multiplication like `2x` is rejected
                    if i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                        return Err(syntax(
                            i,
                            "implicit multiplication is not allowed; write `*`",
                        ));
                    }
                    self.toks.push((Tok::Int(n), start));
                }
                c if c.is_ascii_alphabetic() => {
                    let name = &self.src[i..i + 1];
                    match names.iter().position(|&v| v == name) {
                        Some(idx) => {
                            if i + 1 < bytes.len() && (bytes[i + 1] as char).is_ascii_alphanumeric()
                            {
                                return Err(syntax(
                                    i + 1,
                                    "implicit multiplication is not allowed; write `*`",
                                ));
                            }
                            self.toks.push((Tok::Var(idx), i));
                            i += 1;
                        }
                        None => {
                            return Err(syntax(
                                i,
                                format!("unknown variable `{name}` (expected one of {names:?})"),
                            ));
                        }
                    }
                }
                other => return Err(syntax(i, format!("unexpected character `{other}`"))),
            }
        }
        Ok(())
    }
}

struct Parser {
    arity: u8,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, s)| s).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.span(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            Ok(self.term()?.neg())
        } else {
            self.product()
        }
    }

    fn product(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let span = self.span();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| syntax(span, "exponent out of range"))?;
                    if e > u16::MAX as u32 {
                        return Err(syntax(span, "exponent out of range"));
                    }
                    Ok(base.pow(e))
                }
                _ => Err(syntax(span, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let span = self.span();
        match self.bump() {
            Some(Tok::Var(idx)) => Ok(MultiPoly::var(self.arity, idx)),
            Some(Tok::Int(n)) => {
                // `a/b` is a rational literal, not division
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let dspan = self.span();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return Err(syntax(dspan, "zero denominator"));
                            }
                            Ok(MultiPoly::constant(self.arity, Scalar::new(n, d)))
                        }
                        _ => Err(syntax(dspan, "expected an integer denominator")),
                    }
                } else {
                    Ok(MultiPoly::constant(self.arity, Scalar::from_integer(n)))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(syntax(span, "expected a variable, number or `(`")),
        }
    }
}

/// Parse a polynomial with the variable set of the given arity
/// (`x,y,z` for 3, `u,v` for 2).
pub fn poly(text: &str, arity: u8) -> Result<MultiPoly> {
    let toks = Lexer::lex(text, arity)?;
    let mut p = Parser {
        arity,
        toks,
        pos: 0,
        end: text.len(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.span(), "trailing input"));
    }
    Ok(out)
}

/// Parse and require a nonzero homogeneous polynomial; returns its degree.
pub fn poly_homogeneous(text: &str, arity: u8) -> Result<(MultiPoly, u32)> {
    let p = poly(text, arity)?;
    let d = p.require_homogeneous()?;
    Ok((p, d))
}

/// Parse a rational number (`a`, `-a`, or `a/b`).
pub fn scalar(text: &str) -> Result<Scalar> {
    let p = poly(text, 3)?;
    p.constant_value()
        .ok_or_else(|| syntax(0, "expected a rational constant"))
}

/// Parse a comma-separated list of rationals.
pub fn scalar_list(text: &str) -> Result<Vec<Scalar>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(vec![]);
    }
    trimmed.split(',').map(scalar).collect()
}

fn bracketed_components(text: &str) -> Result<Vec<&str>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax(0, "expected a bracketed map like `[P:Q:R]`"))?;
    Ok(inner.split(':').collect())
}

/// Parse `[P:Q:R]` into three ternary forms of one degree.
pub fn plane_map(text: &str) -> Result<[MultiPoly; 3]> {
    let parts = bracketed_components(text)?;
    if parts.len() != 3 {
        return Err(syntax(0, "a plane map has exactly three components"));
    }
    let mut out = Vec::with_capacity(3);
    for part in parts {
        out.push(poly_homogeneous(part, 3)?.0);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// Parse `[g0:g1]` into two binary forms.
pub fn line_map(text: &str) -> Result<[MultiPoly; 2]> {
    let parts = bracketed_components(text)?;
    if parts.len() != 2 {
        return Err(syntax(0, "a line map has exactly two components"));
    }
    let g0 = poly_homogeneous(parts[0], 2)?.0;
    let g1 = poly_homogeneous(parts[1], 2)?.0;
    Ok([g0, g1])
}

/// Parse a comma-separated line parametrization `l0,l1,l2` of three linear
/// binary forms in `u,v`.
pub fn line_param(text: &str) -> Result<[MultiPoly; 3]> {
    let parts: Vec<&str> = text.trim().split(',').collect();
    if parts.len() != 3 {
        return Err(syntax(0, "a line parametrization has three components"));
    }
    let mut out = Vec::with_capacity(3);
    for part in parts {
        let p = poly(part, 2)?;
        // zero components are allowed (coordinate lines); nonzero ones
        // must be linear forms
        if !p.is_zero() && p.homogeneous_degree() != Some(1) {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: p.degree().unwrap_or(0),
            });
        }
        out.push(p);
    }
    if out.iter().all(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{frac, int};

    #[test]
    fn parses_canonical_example() {
        let p = poly("x^2*y - 3/2*z^3", 3).unwrap();
        assert_eq!(p.to_string(), "x^2*y - 3/2*z^3");
        let q = poly("x*y + z^2", 3).unwrap();
        assert_eq!(q.homogeneous_degree(), Some(2));
    }

    #[test]
    fn round_trips_printed_forms() {
        for s in [
            "x^2*y - 3/2*z^3",
            "-x + y",
            "u + 2*v",
            "x^4 - 2*x^2*y*z + 5",
            "1/3",
            "0",
        ] {
            let arity = if s.contains('u') || s.contains('v') { 2 } else { 3 };
            let p = poly(s, arity).unwrap();
            assert_eq!(poly(&p.to_string(), arity).unwrap(), p);
        }
    }

    #[test]
    fn rejects_implicit_multiplication() {
        assert!(matches!(poly("2*x*y", 3), Ok(_)));
        assert!(matches!(poly("2xy", 3), Err(Error::Syntax { .. })));
        assert!(matches!(poly("x y", 3), Err(Error::Syntax { .. })));
        assert!(matches!(poly("xy", 3), Err(Error::Syntax { .. })));
    }

    #[test]
    fn precedence_and_unary_minus() {
        // unary minus binds below `*`: -2*x + y == (-(2*x)) + y
        let p = poly("-2*x + y", 3).unwrap();
        assert_eq!(
            p,
            MultiPoly::var(3, 0)
                .scale(&int(-2))
                .add(&MultiPoly::var(3, 1))
        );
        // `^` binds above `*`
        let q = poly("2*x^3", 3).unwrap();
        assert_eq!(q, MultiPoly::var(3, 0).pow(3).scale(&int(2)));
        let r = poly("-x^2", 3).unwrap();
        assert_eq!(r, MultiPoly::var(3, 0).pow(2).neg());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(scalar("3/2").unwrap(), frac(3, 2));
        assert_eq!(scalar("-7").unwrap(), int(-7));
        assert!(matches!(poly("x/2", 3), Err(Error::Syntax { .. })));
        assert!(matches!(poly("1/0", 3), Err(Error::Syntax { .. })));
        assert_eq!(scalar_list("1,2,-1").unwrap(), vec![int(1), int(2), int(-1)]);
    }

    #[test]
    fn homogeneity_boundary() {
        assert!(poly_homogeneous("x*y + z^2", 3).is_ok());
        assert!(matches!(
            poly_homogeneous("x + y^2", 3),
            Err(Error::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn maps_and_lines() {
        let [p, q, r] = plane_map("[x^2 : y^2 : z^2 + x*y]").unwrap();
        assert_eq!(p.to_string(), "x^2");
        assert_eq!(q.to_string(), "y^2");
        assert_eq!(r.to_string(), "x*y + z^2");
        let [g0, g1] = line_map("[u^2 : (u+v)^2]").unwrap();
        assert_eq!(g0.to_string(), "u^2");
        assert_eq!(g1.to_string(), "u^2 + 2*u*v + v^2");
        let [l0, l1, l2] = line_param("u, u+v, v").unwrap();
        assert_eq!(l0.to_string(), "u");
        assert_eq!(l1.to_string(), "u + v");
        assert_eq!(l2.to_string(), "v");
        assert!(line_param("u, u*v, v").is_err());
        assert!(matches!(poly("w^2", 3), Err(Error::Syntax { .. })));
    }
}
