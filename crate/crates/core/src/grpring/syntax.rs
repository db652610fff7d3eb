//! Lexer and parsers for words, group-ring expressions and linear
//! combinations of cells with group-ring coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::{GroupRingElement, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxErrorKind {
    #[error("unexpected character")]
    BadCharacter,
    #[error("unknown generator")]
    UnknownGenerator,
    #[error("unknown cell")]
    UnknownCell,
    #[error("malformed exponent")]
    MalformedExponent,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("a cell may only appear as the last factor of a term")]
    MisplacedCell,
    #[error("term has no cell")]
    MissingCell,
}

/// Error inside a single expression; `column` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {column}: {kind} at `{token}`")]
pub struct SyntaxError {
    pub column: usize,
    pub token: String,
    pub kind: SyntaxErrorKind,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, SyntaxError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (_, c) = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            toks.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().map(|x| x.1).collect()), col));
        } else {
            return Err(SyntaxError { column: col, token: c.to_string(), kind: SyntaxErrorKind::BadCharacter });
        }
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: SyntaxErrorKind) -> SyntaxError {
        SyntaxError { column: self.column(), token: self.peek().to_string(), kind }
    }

    fn expect_end(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.error(SyntaxErrorKind::Expected("end of expression"))),
        }
    }

    /// `^n` or `^-n` after a generator; returns 1 when absent.
    fn exponent(&mut self) -> Result<i64, SyntaxError> {
        if self.peek() != &Tok::Caret {
            return Ok(1);
        }
        self.next();
        let neg = if self.peek() == &Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(n) => {
                let Some(v) = n.to_i64().filter(|v| *v <= 1_000_000) else {
                    return Err(self.error(SyntaxErrorKind::MalformedExponent));
                };
                self.next();
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error(SyntaxErrorKind::MalformedExponent)),
        }
    }
}

fn generator_word(gens: &[String], name: &str, exp: i64) -> Option<Word> {
    let g = gens.iter().position(|x| x == name)?;
    Some(Word::from_letters(std::iter::repeat_n(Letter::new(g, exp < 0), exp.unsigned_abs() as usize)))
}

/// Parses `a*b^-1`, `g^3`, or `1` into a freely reduced word.
pub fn parse_word(text: &str, gens: &[String]) -> Result<Word, SyntaxError> {
    let mut lx = lex(text)?;
    if let Tok::Int(n) = lx.peek() {
        if n == &BigInt::from(1) {
            lx.next();
            lx.expect_end()?;
            return Ok(Word::identity());
        }
        return Err(lx.error(SyntaxErrorKind::Expected("generator")));
    }
    let mut w = Word::identity();
    loop {
        match lx.peek().clone() {
            Tok::Ident(name) => {
                let col = lx.column();
                lx.next();
                let exp = lx.exponent()?;
                let g = generator_word(gens, &name, exp).ok_or(SyntaxError {
                    column: col,
                    token: name,
                    kind: SyntaxErrorKind::UnknownGenerator,
                })?;
                w = w.mul(&g);
            }
            _ => return Err(lx.error(SyntaxErrorKind::Expected("generator"))),
        }
        if lx.peek() == &Tok::Star {
            lx.next();
        } else {
            break;
        }
    }
    lx.expect_end()?;
    Ok(w)
}

/// Parses a group-ring expression such as `(1 - c*b)*(a + 2)`.
pub fn parse_ring_element(text: &str, gens: &[String]) -> Result<GroupRingElement, SyntaxError> {
    let mut lx = lex(text)?;
    let mut p = ExprParser { gens, cells: &[] };
    let terms = p.sum(&mut lx)?;
    lx.expect_end()?;
    let mut out = GroupRingElement::zero();
    for (x, cell) in terms {
        debug_assert!(cell.is_none());
        out = &out + &x;
    }
    Ok(out)
}

/// Parses `Σ ±coefficient*cell` where each coefficient is a group-ring
/// expression and `cells` lists admissible cell names. Returns one
/// `(cell index, coefficient)` pair per term, in input order.
pub fn parse_linear_combination(
    text: &str,
    gens: &[String],
    cells: &[String],
) -> Result<Vec<(usize, GroupRingElement)>, SyntaxError> {
    let mut lx = lex(text)?;
    let mut p = ExprParser { gens, cells };
    let start = lx.column();
    let terms = p.sum(&mut lx)?;
    lx.expect_end()?;
    terms
        .into_iter()
        .map(|(x, cell)| {
            cell.map(|c| (c, x)).ok_or(SyntaxError {
                column: start,
                token: text.trim().to_string(),
                kind: SyntaxErrorKind::MissingCell,
            })
        })
        .collect()
}

struct ExprParser<'a> {
    gens: &'a [String],
    cells: &'a [String],
}

type Term = (GroupRingElement, Option<usize>);

impl ExprParser<'_> {
    fn sum(&mut self, lx: &mut Lexer) -> Result<Vec<Term>, SyntaxError> {
        let mut out = Vec::new();
        let mut sign = match lx.peek() {
            Tok::Minus => {
                lx.next();
                -1
            }
            Tok::Plus => {
                lx.next();
                1
            }
            _ => 1,
        };
        loop {
            let (x, cell) = self.term(lx)?;
            out.push((if sign < 0 { -&x } else { x }, cell));
            sign = match lx.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            lx.next();
        }
        Ok(out)
    }

    fn term(&mut self, lx: &mut Lexer) -> Result<Term, SyntaxError> {
        let mut acc = GroupRingElement::one();
        let mut cell = None;
        loop {
            if cell.is_some() {
                return Err(lx.error(SyntaxErrorKind::MisplacedCell));
            }
            match lx.peek().clone() {
                Tok::Int(n) => {
                    lx.next();
                    acc = acc.scale(&n);
                }
                Tok::Ident(name) => {
                    let col = lx.column();
                    lx.next();
                    if let Some(c) = self.cells.iter().position(|x| *x == name) {
                        if lx.peek() == &Tok::Caret {
                            return Err(lx.error(SyntaxErrorKind::MalformedExponent));
                        }
                        cell = Some(c);
                    } else {
                        let exp = lx.exponent()?;
                        let w = generator_word(self.gens, &name, exp).ok_or(SyntaxError {
                            column: col,
                            token: name,
                            kind: if self.cells.is_empty() {
                                SyntaxErrorKind::UnknownGenerator
                            } else {
                                SyntaxErrorKind::UnknownCell
                            },
                        })?;
                        acc = acc.right_mul_word(&w);
                    }
                }
                Tok::LParen => {
                    lx.next();
                    let inner = self.sum(lx)?;
                    if lx.peek() != &Tok::RParen {
                        return Err(lx.error(SyntaxErrorKind::Expected("`)`")));
                    }
                    lx.next();
                    let mut x = GroupRingElement::zero();
                    for (y, c) in inner {
                        if c.is_some() {
                            return Err(lx.error(SyntaxErrorKind::MisplacedCell));
                        }
                        x = &x + &y;
                    }
                    acc = &acc * &x;
                }
                _ => return Err(lx.error(SyntaxErrorKind::Expected("integer, generator or `(`"))),
            }
            if lx.peek() == &Tok::Star {
                lx.next();
            } else {
                break;
            }
        }
        Ok((acc, cell))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> Vec<String> {
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn words() {
        let g = gens();
        let w = parse_word("a*b^-1", &g).unwrap();
        assert_eq!(w.letters(), &[Letter::new(0, false), Letter::new(1, true)]);
        assert!(parse_word("a*a^-1", &g).unwrap().is_identity());
        assert_eq!(parse_word("c^3", &g).unwrap().len(), 3);
        assert!(parse_word("1", &g).unwrap().is_identity());
        let e = parse_word("a*d", &g).unwrap_err();
        assert_eq!((e.kind, e.column, e.token.as_str()), (SyntaxErrorKind::UnknownGenerator, 3, "d"));
        assert_eq!(parse_word("a^x", &g).unwrap_err().kind, SyntaxErrorKind::MalformedExponent);
        assert_eq!(parse_word("a^", &g).unwrap_err().kind, SyntaxErrorKind::MalformedExponent);
    }

    #[test]
    fn ring_elements() {
        let g = gens();
        let x = parse_ring_element("(1 - c)*(1 + c)", &g).unwrap();
        assert_eq!(x.display(&g).to_string(), "1 - c^2");
        let y = parse_ring_element("3 + 2*a - c", &g).unwrap();
        assert_eq!(y.augmentation(), BigInt::from(4));
        assert!(parse_ring_element("a - a", &g).unwrap().is_zero());
    }

    #[test]
    fn linear_combinations() {
        let g = gens();
        let cells: Vec<String> = ["e1_1", "e1_2", "e1_3"].iter().map(|s| s.to_string()).collect();
        let t = parse_linear_combination("(1 - c*b)*e1_1 + (a - c)*e1_2 - e1_3", &g, &cells).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].1.display(&g).to_string(), "1 - c*b");
        assert_eq!(t[2], (2, GroupRingElement::from_int(-1)));
        let e = parse_linear_combination("(a - 1)*e1_1 + b", &g, &cells).unwrap_err();
        assert_eq!(e.kind, SyntaxErrorKind::MissingCell);
        let e = parse_linear_combination("e1_1*a", &g, &cells).unwrap_err();
        assert_eq!(e.kind, SyntaxErrorKind::MisplacedCell);
        let e = parse_linear_combination("(a - 1)*e9", &g, &cells).unwrap_err();
        assert_eq!((e.kind, e.token.as_str()), (SyntaxErrorKind::UnknownCell, "e9"));
    }
}
