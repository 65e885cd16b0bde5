//! Text grammars and canonical printers.
//!
//! ```text
//! poly       := ['+'|'-'] term (('+'|'-') term)*
//! term       := factor ('*' factor)*
//! factor     := atom ['^' integer]
//! atom       := integer ['/' integer] | 'i' | 'x1'..'x9' | '(' poly ')'
//! map        := '[' poly (';' poly)* ']'
//! derivation := map 'd/dx'
//! word       := 'id' | generator (';' generator)*
//! generator  := 'A' '[' row (',' row)* ']' ['+' '(' poly (',' poly)* ')']
//!             | 'E' integer '{' poly '}'
//! row        := '[' poly (',' poly)* ']'
//! character  := '(' ['-'] integer (',' ['-'] integer)* ')'
//! ```
//!
//! Whitespace is insignificant. Matrix and shift entries must be constants.
//! Printers emit terms in descending graded-lex order, e.g.
//! `x1^2*x2 - 3/2*x2 + i`, and every printed value parses back to itself.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::derivation::Derivation;
use crate::poly::{Monomial, Polynomial};
use crate::polymap::PolyMap;
use crate::scalar::Scalar;
use crate::tame::{TameGenerator, TameWord};
use crate::torus::Character;

pub const MAX_VARS: usize = 9;

/// A syntax error with the byte offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Imag,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Affine,
    Elementary,
    DDx,
    Id,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Num(n) => return write!(f, "`{n}`"),
            Tok::Var(i) => return write!(f, "`x{i}`"),
            Tok::Imag => "`i`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Slash => "`/`",
            Tok::Caret => "`^`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Semi => "`;`",
            Tok::Comma => "`,`",
            Tok::Affine => "`A`",
            Tok::Elementary => "`E`",
            Tok::DDx => "`d/dx`",
            Tok::Id => "`id`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        message: message.into(),
    })
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b';' => Some(Tok::Semi),
            b',' => Some(Tok::Comma),
            b'A' => Some(Tok::Affine),
            b'E' => Some(Tok::Elementary),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start));
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let n: BigInt = src[start..pos].parse().expect("ascii digits");
            out.push((Tok::Num(n), start));
            continue;
        }
        if src[pos..].starts_with("d/dx") {
            out.push((Tok::DDx, start));
            pos += 4;
            continue;
        }
        if c.is_ascii_alphabetic() {
            while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let word = &src[start..pos];
            let tok = match word {
                "i" => Tok::Imag,
                "id" => Tok::Id,
                _ => match word.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                    Some(k) if (1..=MAX_VARS).contains(&k) && !word[1..].starts_with('0') => {
                        Tok::Var(k)
                    }
                    _ => return err(start, format!("unknown identifier `{word}`")),
                },
            };
            out.push((tok, start));
            continue;
        }
        let ch = src[pos..].chars().next().unwrap_or('?');
        return err(start, format!("unexpected character `{ch}`"));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    max_var: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            max_var: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            err(
                self.offset(),
                format!("expected {t}, found {}", self.peek()),
            )
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            t => err(
                self.offset(),
                format!("unexpected {t} after end of expression"),
            ),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32, ParseError> {
        let off = self.offset();
        match self.bump() {
            Tok::Num(n) => n.to_u32().ok_or_else(|| ParseError {
                offset: off,
                message: format!("{what} too large"),
            }),
            t => err(off, format!("expected {what}, found {t}")),
        }
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                -self.term()?
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.small_int("exponent")?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let off = self.offset();
        match self.bump() {
            Tok::Num(n) => {
                let value = if *self.peek() == Tok::Slash {
                    self.bump();
                    let doff = self.offset();
                    let Tok::Num(d) = self.bump() else {
                        return err(doff, "expected integer denominator after `/`");
                    };
                    if d.is_zero() {
                        return err(doff, "zero denominator");
                    }
                    BigRational::new(n, d)
                } else {
                    BigRational::from_integer(n)
                };
                Ok(Polynomial::constant(MAX_VARS, Scalar::from_rational(value)))
            }
            Tok::Imag => Ok(Polynomial::constant(MAX_VARS, Scalar::i())),
            Tok::Var(k) => {
                self.max_var = self.max_var.max(k);
                Ok(Polynomial::var(MAX_VARS, k - 1))
            }
            Tok::LParen => {
                let p = self.poly()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            t => err(off, format!("expected a term, found {t}")),
        }
    }

    fn map_components(&mut self) -> Result<Vec<Polynomial>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut comps = vec![self.poly()?];
        while *self.peek() == Tok::Semi {
            self.bump();
            comps.push(self.poly()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(comps)
    }

    fn constant(&mut self) -> Result<Scalar, ParseError> {
        let off = self.offset();
        let p = self.poly()?;
        if !p.is_constant() {
            return err(off, "expected a constant");
        }
        Ok(p.constant_term())
    }

    fn generator(&mut self, n: usize) -> Result<TameGenerator, ParseError> {
        let off = self.offset();
        match self.bump() {
            Tok::Affine => {
                self.expect(Tok::LBracket)?;
                let mut rows = Vec::new();
                loop {
                    self.expect(Tok::LBracket)?;
                    let mut row = vec![self.constant()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        row.push(self.constant()?);
                    }
                    self.expect(Tok::RBracket)?;
                    rows.push(row);
                    if *self.peek() != Tok::Comma {
                        break;
                    }
                    self.bump();
                }
                self.expect(Tok::RBracket)?;
                let shift = if *self.peek() == Tok::Plus {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let mut v = vec![self.constant()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        v.push(self.constant()?);
                    }
                    self.expect(Tok::RParen)?;
                    v
                } else {
                    vec![Scalar::zero(); rows.len()]
                };
                if rows.len() != n || rows.iter().any(|r| r.len() != n) || shift.len() != n {
                    return err(
                        off,
                        format!("affine generator must be {n}x{n} with a shift of length {n}"),
                    );
                }
                TameGenerator::affine(rows, shift).map_err(|e| ParseError {
                    offset: off,
                    message: e.to_string(),
                })
            }
            Tok::Elementary => {
                let axis_off = self.offset();
                let axis = self.small_int("axis")? as usize;
                if axis == 0 || axis > n {
                    return err(axis_off, format!("axis must be in 1..={n}"));
                }
                self.expect(Tok::LBrace)?;
                let poff = self.offset();
                let p = self.poly()?;
                self.expect(Tok::RBrace)?;
                let p = project(&p, n).ok_or_else(|| ParseError {
                    offset: poff,
                    message: format!("polynomial uses variables beyond x{n}"),
                })?;
                TameGenerator::elementary(axis - 1, p).map_err(|e| ParseError {
                    offset: poff,
                    message: e.to_string(),
                })
            }
            t => err(off, format!("expected `A` or `E` generator, found {t}")),
        }
    }
}

/// Restricts a polynomial parsed in `MAX_VARS` variables to the first `n`.
fn project(p: &Polynomial, n: usize) -> Option<Polynomial> {
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let e = m.exps();
        if e[n..].iter().any(|&x| x > 0) {
            return None;
        }
        terms.push((Monomial::new(e[..n].to_vec()), c.clone()));
    }
    Some(Polynomial::from_terms(n, terms))
}

fn out_of_range(n: usize) -> ParseError {
    ParseError {
        offset: 0,
        message: format!("expression uses variables beyond x{n}"),
    }
}

/// Parses a polynomial in `nvars` variables.
pub fn parse_poly(src: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(src)?;
    let poly = p.poly()?;
    p.finish()?;
    project(&poly, nvars).ok_or_else(|| out_of_range(nvars))
}

/// Parses a polynomial, taking the number of variables from the largest
/// index that occurs (at least one).
pub fn parse_poly_auto(src: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(src)?;
    let poly = p.poly()?;
    p.finish()?;
    let n = p.max_var.max(1);
    Ok(project(&poly, n).expect("max_var bounds every index"))
}

fn components_to_map(comps: Vec<Polynomial>) -> Result<PolyMap, ParseError> {
    let n = comps.len();
    let projected = comps
        .iter()
        .map(|c| project(c, n))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| out_of_range(n))?;
    Ok(PolyMap::new(projected).expect("projected to n variables"))
}

/// Parses `[p1; ...; pn]`; the number of components fixes the dimension.
pub fn parse_map(src: &str) -> Result<PolyMap, ParseError> {
    let mut p = Parser::new(src)?;
    let comps = p.map_components()?;
    p.finish()?;
    components_to_map(comps)
}

/// Parses `[h1; ...; hn] d/dx`.
pub fn parse_derivation(src: &str) -> Result<Derivation, ParseError> {
    let mut p = Parser::new(src)?;
    let comps = p.map_components()?;
    p.expect(Tok::DDx)?;
    p.finish()?;
    let map = components_to_map(comps)?;
    Ok(Derivation::new(map.into_components()).expect("well-formed"))
}

/// Parses a `;`-separated word of generators acting on `n` variables.
pub fn parse_word(src: &str, n: usize) -> Result<TameWord, ParseError> {
    let mut p = Parser::new(src)?;
    let mut factors = Vec::new();
    match p.peek() {
        Tok::Id => {
            p.bump();
        }
        Tok::End => {}
        _ => {
            factors.push(p.generator(n)?);
            while *p.peek() == Tok::Semi {
                p.bump();
                factors.push(p.generator(n)?);
            }
        }
    }
    p.finish()?;
    Ok(TameWord::new(n, factors).expect("generators parsed for n variables"))
}

/// Parses `(l1,...,ln)`.
pub fn parse_character(src: &str) -> Result<Character, ParseError> {
    let mut p = Parser::new(src)?;
    p.expect(Tok::LParen)?;
    let mut coords = Vec::new();
    loop {
        let neg = if *p.peek() == Tok::Minus {
            p.bump();
            true
        } else {
            false
        };
        let off = p.offset();
        let Tok::Num(v) = p.bump() else {
            return err(off, "expected an integer");
        };
        let v = v.to_i64().ok_or_else(|| ParseError {
            offset: off,
            message: "integer too large".into(),
        })?;
        coords.push(if neg { -v } else { v });
        if *p.peek() != Tok::Comma {
            break;
        }
        p.bump();
    }
    p.expect(Tok::RParen)?;
    p.finish()?;
    Ok(Character::new(coords))
}

fn write_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

pub(crate) fn write_polynomial(p: &Polynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative_like();
        let magnitude = if negative { -c } else { c.clone() };
        match (idx == 0, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        if m.is_one() {
            write!(f, "{magnitude}")?;
        } else {
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write_monomial(m, f)?;
        }
    }
    Ok(())
}

fn write_list<T: fmt::Display>(items: &[T], sep: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{it}")?;
    }
    Ok(())
}

pub(crate) fn write_map(m: &PolyMap, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("[")?;
    write_list(m.components(), "; ", f)?;
    f.write_str("]")
}

pub(crate) fn write_derivation(d: &Derivation, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("[")?;
    write_list(d.coeffs(), "; ", f)?;
    f.write_str("] d/dx")
}

pub(crate) fn write_generator(g: &TameGenerator, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match g {
        TameGenerator::Affine { matrix, shift } => {
            f.write_str("A[")?;
            for (i, row) in matrix.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str("[")?;
                write_list(row, ",", f)?;
                f.write_str("]")?;
            }
            f.write_str("]+(")?;
            write_list(shift, ",", f)?;
            f.write_str(")")
        }
        TameGenerator::Elementary { axis, p } => write!(f, "E{}{{{p}}}", axis + 1),
    }
}

pub(crate) fn write_word(w: &TameWord, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if w.factors().is_empty() {
        return f.write_str("id");
    }
    write_list(w.factors(), "; ", f)
}
