//! Text forms of coefficients and basis combos.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! combo  := [±] term (± term)*
//! term   := factor ('*' factor)*          -- at most one basis name per term
//! factor := rational | 'sqrt2' | 'log2' ['^' int] | '(' coeff ')' | basis
//! coeff  := [±] cterm (± cterm)*          -- like combo but with no basis names
//! basis  := family letter followed by a positive index, e.g. p3, r1
//! rational := int ['/' int]
//! ```
//!
//! This is what `reduce`/`eval` accept on the command line and what the
//! claim-fixture file stores, e.g. `"(-13*log2 - 71)*sqrt2*p3 + 3*sqrt2*q1"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::basisreduce::{BasisCombo, BasisIntegral};
use crate::exactfield::{FieldElem, QSqrt2, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Sqrt2,
    Log2,
    Basis(BasisIntegral),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = text[start..i].parse().unwrap();
                let denom = if i < bytes.len() && bytes[i] == b'/' {
                    let dstart = i + 1;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return err(dstart, "expected denominator digits after '/'");
                    }
                    let d: BigInt = text[dstart..i].parse().unwrap();
                    if d == BigInt::from(0) {
                        return err(dstart, "zero denominator");
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                toks.push((start, Tok::Num(BigRational::new(numer, denom))));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "sqrt2" => Tok::Sqrt2,
                    "log2" => Tok::Log2,
                    _ => match word.parse::<BasisIntegral>() {
                        Ok(b) => Tok::Basis(b),
                        Err(e) => return err(start, e),
                    },
                };
                toks.push((start, tok));
            }
            _ => return err(i, format!("unexpected character '{c}'")),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

/// A parsed multiplicative term: coefficient and at most one basis name.
struct Term {
    coeff: FieldElem,
    basis: Option<BasisIntegral>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn parse_sign(&mut self) -> i32 {
        let mut sign = 1;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.bump();
                }
                Tok::Minus => {
                    sign = -sign;
                    self.bump();
                }
                _ => break,
            }
        }
        sign
    }

    /// factor := rational | sqrt2 | log2 ['^' n] | '(' sum ')' | basis
    fn parse_factor(&mut self, allow_basis: bool) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(r)) => Ok(Term {
                coeff: FieldElem::from_rational(r),
                basis: None,
            }),
            Some(Tok::Sqrt2) => Ok(Term {
                coeff: FieldElem::sqrt2(),
                basis: None,
            }),
            Some(Tok::Log2) => {
                let mut deg = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(r)) if r.is_integer() && r > BigRational::from(BigInt::from(0)) => {
                            deg = r.to_integer().try_into().map_err(|_| ParseError {
                                pos,
                                msg: "log2 exponent too large".into(),
                            })?;
                        }
                        _ => return err(self.pos(), "expected positive integer exponent after '^'"),
                    }
                }
                Ok(Term {
                    coeff: FieldElem::term(deg, QSqrt2::one()),
                    basis: None,
                })
            }
            Some(Tok::Basis(b)) => {
                if allow_basis {
                    Ok(Term {
                        coeff: FieldElem::one(),
                        basis: Some(b),
                    })
                } else {
                    err(pos, "basis integral not allowed inside a coefficient")
                }
            }
            Some(Tok::LParen) => {
                let coeff = self.parse_coeff_sum()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(Term { coeff, basis: None }),
                    _ => err(self.pos(), "expected ')'"),
                }
            }
            Some(t) => err(pos, format!("unexpected token {t:?}")),
            None => err(pos, "unexpected end of input"),
        }
    }

    /// term := factor ('*' factor)*
    fn parse_term(&mut self, allow_basis: bool) -> Result<Term, ParseError> {
        let mut acc = self.parse_factor(allow_basis)?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let pos = self.pos();
            let next = self.parse_factor(allow_basis)?;
            if next.basis.is_some() && acc.basis.is_some() {
                return err(pos, "more than one basis integral in a term");
            }
            acc = Term {
                coeff: acc.coeff.mul(&next.coeff),
                basis: acc.basis.or(next.basis),
            };
        }
        Ok(acc)
    }

    /// coeff := [±] term (± term)* with no basis names.
    fn parse_coeff_sum(&mut self) -> Result<FieldElem, ParseError> {
        let mut acc = FieldElem::zero();
        loop {
            let sign = self.parse_sign();
            let term = self.parse_term(false)?;
            let signed = if sign < 0 { term.coeff.neg() } else { term.coeff };
            acc = acc.add(&signed);
            match self.peek() {
                Some(Tok::Plus) | Some(Tok::Minus) => continue,
                _ => break,
            }
        }
        Ok(acc)
    }
}

/// Parses a linear combination of basis integrals with exact coefficients.
pub fn parse_basis_expr(text: &str) -> Result<BasisCombo, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return err(0, "empty expression");
    }
    let mut p = Parser { toks, idx: 0, end: text.len() };
    let mut combo = BasisCombo::new();
    loop {
        let sign = p.parse_sign();
        let pos = p.pos();
        let term = p.parse_term(true)?;
        let Some(b) = term.basis else {
            return err(pos, "expected a basis integral in this term");
        };
        let signed = if sign < 0 { term.coeff.neg() } else { term.coeff };
        combo.insert(b, signed);
        match p.peek() {
            Some(Tok::Plus) | Some(Tok::Minus) => continue,
            None => break,
            _ => return err(p.pos(), "expected '+' or '-'"),
        }
    }
    Ok(combo)
}

/// Parses a coefficient expression (no basis names) into a [`FieldElem`].
pub fn parse_coeff(text: &str) -> Result<FieldElem, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return err(0, "empty expression");
    }
    let mut p = Parser { toks, idx: 0, end: text.len() };
    let acc = p.parse_coeff_sum()?;
    if p.peek().is_some() {
        return err(p.pos(), "expected '+' or '-'");
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basisreduce::bi;
    use crate::exactfield::rat;

    #[test]
    fn single_basis_name() {
        let c = parse_basis_expr("p3").unwrap();
        assert_eq!(c, BasisCombo::singleton(bi('p', 3)));
    }

    #[test]
    fn coefficients_and_signs() {
        let c = parse_basis_expr("2*sqrt2*b3 - b5").unwrap();
        let mut expected = BasisCombo::new();
        expected.insert(bi('b', 3), FieldElem::sqrt2_times(2, 1));
        expected.insert(bi('b', 5), FieldElem::from_int(-1));
        assert_eq!(c, expected);
    }

    #[test]
    fn unknown_family_is_rejected_with_position() {
        let e = parse_basis_expr("p1 + z9").unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(e.msg.contains("unknown family"));
        assert!(parse_basis_expr("p0").is_err());
    }

    #[test]
    fn parenthesized_log_coefficients() {
        let c = parse_basis_expr("(-13*log2 - 71)*sqrt2*p3").unwrap();
        let coeff = c.coeff(bi('p', 3));
        assert_eq!(
            coeff,
            FieldElem::term(1, QSqrt2::new(Rational::from_integer(0.into()), rat(-13, 1)))
                .add(&FieldElem::sqrt2_times(-71, 1))
        );
    }

    #[test]
    fn merging_repeated_names() {
        let c = parse_basis_expr("p1 + p1 - 2*p1").unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn coeff_expressions() {
        assert_eq!(parse_coeff("3/2").unwrap(), FieldElem::from_ratio(3, 2));
        assert_eq!(parse_coeff("-sqrt2").unwrap(), FieldElem::sqrt2().neg());
        assert_eq!(
            parse_coeff("1/2*log2 + 17/4").unwrap(),
            FieldElem::term(1, QSqrt2::new(rat(1, 2), Rational::from_integer(0.into())))
                .add(&FieldElem::from_ratio(17, 4))
        );
        assert!(parse_coeff("p3").is_err());
        assert!(parse_coeff("2*/3").is_err());
    }

    #[test]
    fn display_parse_roundtrip() {
        for text in [
            "sqrt2*p1 - r1 + s1",
            "(-71 - 13*log2)*p3",
            "(17/4 + 1/2*sqrt2 - 1/3*log2 + 2*sqrt2*log2)*q5 + 83/90*sqrt2*p1",
        ] {
            let c = parse_basis_expr(text).unwrap();
            let redisplayed = c.to_string();
            let reparsed = parse_basis_expr(&redisplayed).unwrap();
            assert_eq!(reparsed, c, "roundtrip failed for {text} -> {redisplayed}");
        }
    }
}
