//! Text form of polynomials.
//!
//! Grammar: sums and differences of products of factors, where a factor is
//! an integer literal, a variable, or a parenthesized expression, optionally
//! raised to a non-negative integer power with `^`. Division is allowed only
//! by a nonzero constant, so `3/4*x` reads as expected.

use super::{MPoly, Rational, VarTable};
use num_bigint::BigInt;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map(|p| offset - p).unwrap_or(offset + 1);
    (line, col)
}

fn err_at(src: &str, offset: usize, msg: impl Into<String>) -> ParseError {
    let (line, column) = line_col(src, offset);
    ParseError {
        line,
        column,
        message: msg.into(),
    }
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let b = src.as_bytes();
        let mut i = 0;
        while i < b.len() {
            let c = b[i] as char;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                d if d.is_ascii_digit() => {
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: BigInt = src[start..i].parse().expect("digits");
                    lx.toks.push((Tok::Num(n), start));
                    continue;
                }
                a if a.is_ascii_alphabetic() || a == '_' => {
                    while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                        i += 1;
                    }
                    lx.toks.push((Tok::Ident(src[start..i].to_string()), start));
                    continue;
                }
                other => return Err(err_at(src, i, format!("unexpected character `{other}`"))),
            };
            lx.toks.push((t, start));
            i += 1;
        }
        lx.toks.push((Tok::End, lx.src.len()));
        Ok(lx.toks)
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Arc<VarTable>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        err_at(self.src, self.offset(), msg)
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
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

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(err_at(self.src, at, "division only by a nonzero constant"));
                    }
                    acc = acc.scale(&(Rational::from_integer(BigInt::from(1)) / d.constant_term()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Num(n) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err_at(self.src, self.toks[self.pos - 1].1, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(err_at(
                    self.src,
                    self.toks[self.pos - 1].1,
                    "exponent must be a non-negative integer literal",
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(MPoly::constant(&self.vars, Rational::from_integer(n))),
            Tok::Ident(name) => MPoly::var(&self.vars, &name)
                .map_err(|_| err_at(self.src, at, format!("unknown variable `{name}`"))),
            Tok::LParen => {
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Tok::End => Err(err_at(self.src, at, "unexpected end of input")),
            t => Err(err_at(self.src, at, format!("unexpected token {t:?}"))),
        }
    }
}

/// Parse `text` over the given table.
pub fn parse_poly(text: &str, vars: &Arc<VarTable>) -> Result<MPoly, ParseError> {
    let toks = Lexer::run(text)?;
    let mut p = Parser {
        src: text,
        toks,
        pos: 0,
        vars: vars.clone(),
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse with an unweighted table made of the identifiers in `text`, in
/// sorted order (numeric suffixes compare numerically).
pub fn parse_poly_infer(text: &str) -> Result<MPoly, ParseError> {
    let toks = Lexer::run(text)?;
    let mut names: Vec<String> = Vec::new();
    for (t, _) in &toks {
        if let Tok::Ident(n) = t {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
    }
    names.sort_by_key(|n| natural_key(n));
    let vars = VarTable::unweighted(&names);
    parse_poly(text, &vars)
}

fn natural_key(s: &str) -> (String, u64) {
    let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, tail) = s.split_at(s.len() - digits);
    (head.to_string(), tail.parse().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_roundtrip() {
        let v = VarTable::unweighted(&["x0", "x1"]);
        let p = parse_poly("1 - 3/4*x1 + x0^2", &v).unwrap();
        assert_eq!(p.to_string(), "x0^2 - 3/4*x1 + 1");
        assert_eq!(parse_poly(&p.to_string(), &v).unwrap(), p);
    }

    #[test]
    fn parentheses_and_powers() {
        let v = VarTable::unweighted(&["x", "y"]);
        let p = parse_poly("(x - y)^2", &v).unwrap();
        assert_eq!(p.to_string(), "x^2 - 2*x*y + y^2");
        assert_eq!(parse_poly("-x^2", &v).unwrap().to_string(), "-x^2");
    }

    #[test]
    fn errors_carry_position() {
        let v = VarTable::unweighted(&["x", "y"]);
        let e = parse_poly("x^y + 1", &v).unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        let e = parse_poly("x + w", &v).unwrap_err();
        assert_eq!(e.column, 5);
        assert!(parse_poly("x / y", &v).is_err());
        assert!(parse_poly("x +", &v).is_err());
        assert!(parse_poly("x $ 2", &v).is_err());
    }

    #[test]
    fn infer_orders_names() {
        let p = parse_poly_infer("x10 + x2*x1").unwrap();
        assert_eq!(p.vars().names(), &["x1", "x2", "x10"]);
    }
}
