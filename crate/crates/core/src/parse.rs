//! Text formats for polynomials, matrices and eigenvalue lists.
//!
//! * Univariate polynomials: a bracket list with the leading coefficient
//!   first, `[5, -6, 5]`, or human form `5x^2 - 6x + 5`.
//! * Multivariate polynomials: variables `x1 .. xn` (`x` is `x1`), rational
//!   coefficients, `+ - * ^` and parentheses; `*` may be omitted (`3x1x2`).
//! * Matrices: rows separated by `;`, entries by `,`: `1,1;0,1`.
//! * Eigenvalue lists: entries separated by `;`, each a rational or a
//!   polynomial in either univariate form.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebraic::AlgebraicNumberSpec;
use crate::error::{Error, Result};
use crate::haar::MultiPoly;
use crate::poly::IntPolynomial;
use crate::projaut::QMatrix;
use crate::rational::{self, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(s[start..i].parse().unwrap())));
                continue;
            }
            'x' => {
                i += 1;
                let d0 = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let idx = if d0 == i {
                    1
                } else {
                    s[d0..i]
                        .parse::<usize>()
                        .map_err(|_| Error::parse(start, "bad variable index"))?
                };
                if idx == 0 {
                    return Err(Error::parse(start, "variables are numbered from x1"));
                }
                out.push((start, Tok::Var(idx - 1)));
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' | '\u{2212}' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            _ => return Err(Error::parse(start, format!("unexpected character {c:?}"))),
        }
        i += c.len_utf8();
    }
    Ok(out)
}

/// Polynomial expression tree, built before the variable count is known.
enum Expr {
    Const(Q),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Const(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.max_var().max(b.max_var()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.max_var(),
        }
    }

    fn build(&self, n: usize) -> MultiPoly {
        match self {
            Expr::Const(c) => MultiPoly::constant(n, c.clone()),
            Expr::Var(i) => MultiPoly::var(n, *i),
            Expr::Add(a, b) => a.build(n).add(&b.build(n)),
            Expr::Sub(a, b) => a.build(n).sub(&b.build(n)),
            Expr::Mul(a, b) => a.build(n).mul(&b.build(n)),
            Expr::Neg(a) => a.build(n).scale(&-Q::one()),
            Expr::Pow(a, k) => a.build(n).pow(*k),
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.at();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            let inv = Expr::Const(Q::new(BigInt::one(), d));
                            lhs = Expr::Mul(Box::new(lhs), Box::new(inv));
                        }
                        _ => return Err(Error::parse(at, "can only divide by a nonzero integer")),
                    }
                }
                // implicit product: 3x, x1x2, 2(x + 1)
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.at();
            match self.bump() {
                Some(Tok::Num(k)) => {
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| Error::parse(at, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => return Err(Error::parse(at, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Num(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dat = self.at();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => return Ok(Expr::Const(Q::new(n, d))),
                        Some(Tok::Num(_)) => return Err(Error::parse(dat, "zero denominator")),
                        _ => return Err(Error::parse(dat, "expected an integer denominator")),
                    }
                }
                Ok(Expr::Const(Q::from_integer(n)))
            }
            Some(Tok::Var(i)) => Ok(Expr::Var(i)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let close = self.at();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::parse(close, "expected ')'")),
                }
            }
            None => Err(Error::parse(at, "unexpected end of input")),
            Some(t) => Err(Error::parse(at, format!("unexpected token {t:?}"))),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::parse(p.at(), "trailing input"));
    }
    Ok(e)
}

/// Multivariate polynomial. With `nvars = None` the count is the largest
/// variable index used (at least 1).
pub fn parse_multipoly(s: &str, nvars: Option<usize>) -> Result<MultiPoly> {
    let e = parse_expr(s)?;
    let used = e.max_var().map(|i| i + 1).unwrap_or(1);
    let n = match nvars {
        Some(n) if used > n => {
            return Err(Error::parse(
                0,
                format!("uses x{used} but only {n} variables are allowed"),
            ))
        }
        Some(n) => n,
        None => used,
    };
    Ok(e.build(n))
}

fn parse_bracket(s: &str, offset: usize) -> Result<Vec<Q>> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::parse(offset + lead, "expected [c_n, ..., c_0]"))?;
    let mut out = Vec::new();
    let mut pos = offset + lead + 1;
    for part in inner.split(',') {
        if part.trim().is_empty() {
            return Err(Error::parse(pos, "empty coefficient"));
        }
        out.push(
            rational::parse_rational(part)
                .map_err(|_| Error::parse(pos, format!("bad coefficient {:?}", part.trim())))?,
        );
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Univariate polynomial from either form; rational coefficients are
/// cleared to a primitive integer polynomial.
pub fn parse_poly(s: &str) -> Result<IntPolynomial> {
    parse_poly_at(s, 0)
}

fn parse_poly_at(s: &str, offset: usize) -> Result<IntPolynomial> {
    let coeffs: Vec<Q> = if s.trim_start().starts_with('[') {
        let mut c = parse_bracket(s, offset)?;
        c.reverse();
        c
    } else {
        let f = parse_multipoly(s, Some(1)).map_err(|e| shift(e, offset))?;
        let deg = f.total_degree() as usize;
        let mut c = vec![Q::zero(); deg + 1];
        for (e, v) in f.terms() {
            c[e[0] as usize] = v.clone();
        }
        c
    };
    let f = IntPolynomial::from_rationals(&coeffs);
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f)
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    }
}

/// Square rational matrix, `"1,1;0,1"`. Optional outer brackets are ignored.
pub fn parse_matrix(s: &str) -> Result<QMatrix> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let mut rows = Vec::new();
    let mut pos = s.find(t).unwrap_or(0);
    for row in t.split(';') {
        let mut r = Vec::new();
        let mut p = pos;
        for entry in row.split(',') {
            let e = entry.trim().trim_matches(|c| c == '[' || c == ']');
            r.push(
                rational::parse_rational(e)
                    .map_err(|_| Error::parse(p, format!("bad entry {e:?}")))?,
            );
            p += entry.len() + 1;
        }
        rows.push(r);
        pos += row.len() + 1;
    }
    QMatrix::new(rows)
}

/// One eigenvalue: a rational, or a polynomial whose root it is.
pub fn parse_algebraic(s: &str) -> Result<AlgebraicNumberSpec> {
    parse_algebraic_at(s, 0)
}

fn parse_algebraic_at(s: &str, offset: usize) -> Result<AlgebraicNumberSpec> {
    let t = s.trim();
    if !t.contains('x') && !t.starts_with('[') {
        let r = rational::parse_rational(t)
            .map_err(|_| Error::parse(offset, format!("bad eigenvalue {t:?}")))?;
        if r.is_zero() {
            return Err(Error::parse(offset, "eigenvalues must be nonzero"));
        }
        return Ok(AlgebraicNumberSpec::rational(&r));
    }
    let f = parse_poly_at(s, offset)?;
    if f.coeff(0).is_zero() {
        return Err(Error::parse(
            offset,
            "0 cannot be an eigenvalue of an automorphism",
        ));
    }
    AlgebraicNumberSpec::new(&f)
}

/// Eigenvalues separated by `;`.
pub fn parse_eigenvalues(s: &str) -> Result<Vec<AlgebraicNumberSpec>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for part in s.split(';') {
        out.push(parse_algebraic_at(part, pos)?);
        pos += part.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn univariate_forms_agree() {
        let a = parse_poly("[5, -6, 5]").unwrap();
        let b = parse_poly("5x^2 - 6x + 5").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, IntPolynomial::from_i64(&[5, -6, 5]));
        // leading coefficient first
        assert_eq!(
            parse_poly("[1,-1,-1]").unwrap(),
            IntPolynomial::from_i64(&[-1, -1, 1])
        );
        assert_eq!(
            parse_poly("x^2/2 - 1/3").unwrap(),
            IntPolynomial::from_i64(&[-2, 0, 3])
        );
        assert_eq!(
            parse_poly("(x+1)^2").unwrap(),
            IntPolynomial::from_i64(&[1, 2, 1])
        );
        let f = IntPolynomial::from_i64(&[7, 0, -3, 1]);
        assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        assert_eq!(parse_poly(&f.to_bracket_string()).unwrap(), f);
    }

    #[test]
    fn multivariate() {
        let f = parse_multipoly("3x1x2 - x2^2 + 1/2", None).unwrap();
        assert_eq!(f.nvars(), 2);
        assert_eq!(f.eval(&[qi(1), qi(2)]), q(5, 2));
        let g = parse_multipoly("x", Some(3)).unwrap();
        assert_eq!(g, MultiPoly::var(3, 0));
        assert!(parse_multipoly("x4", Some(2)).is_err());
        assert_eq!(parse_multipoly(&f.to_string(), Some(2)).unwrap(), f);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x^2 + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_eigenvalues("[1,0,1];x^2 +") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 13),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("[1, a]").is_err());
        assert!(parse_poly("1/0").is_err());
    }

    #[test]
    fn matrices_and_eigenvalues() {
        let m = parse_matrix("1,1;0,1").unwrap();
        assert_eq!(m, QMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap());
        let m = parse_matrix("1/2, 0; 0, -3").unwrap();
        assert_eq!(m.get(0, 0), &q(1, 2));
        assert_eq!(parse_matrix("1,2;3"), Err(Error::NotSquare));
        let ev = parse_eigenvalues("1; -1; [1,0,1]").unwrap();
        assert_eq!(ev.len(), 3);
        assert!(ev[0].is_one());
        assert_eq!(ev[2].defining_poly(), &IntPolynomial::from_i64(&[1, 0, 1]));
        assert!(parse_eigenvalues("0").is_err());
    }
}
