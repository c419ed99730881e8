//! Expression parser and printers.
//!
//! One grammar serves both scalar expressions and noncommutative polynomials;
//! which identifiers denote algebra generators is decided by the presentation
//! passed in. Every printer is the exact inverse of the parser on canonical
//! forms, so file round-trips are bit-exact.

use crate::ncalg::{NCPoly, Presentation, Word};
use crate::scalar::{Scalar, Symbol};
use num::BigRational;
use std::str::FromStr;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}, found `{1}`")]
    Expected(&'static str, String),
    #[error("generator `{0}` cannot appear in a scalar expression")]
    GeneratorInScalar(String),
    #[error("negative exponent on generator `{0}`")]
    NegativeGenPower(String),
    #[error("trailing input at `{0}`")]
    Trailing(String),
    #[error("invalid number `{0}`")]
    BadNumber(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    At,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ParseError> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '@' => {
                out.push(Tok::At);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // rational literal n/m, only when followed by digits
                if i < bytes.len()
                    && bytes[i] == b'/'
                    && i + 1 < bytes.len()
                    && bytes[i + 1].is_ascii_digit()
                {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &s[start..i];
                let val = BigRational::from_str(text)
                    .map_err(|_| ParseError::BadNumber(text.to_string()))?;
                out.push(Tok::Num(val));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Tok::Ident(s[start..i].to_string()));
            }
            _ => return Err(ParseError::UnexpectedChar(c, i)),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    pres: Option<&'a Presentation>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self.toks.get(self.pos).cloned().ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Tok, what: &'static str) -> Result<(), ParseError> {
        let got = self.next()?;
        if got == t {
            Ok(())
        } else {
            Err(ParseError::Expected(what, format!("{got:?}")))
        }
    }

    fn parse_expr(&mut self) -> Result<NCPoly, ParseError> {
        let mut neg = false;
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            neg = true;
        } else if let Some(Tok::Plus) = self.peek() {
            self.pos += 1;
        }
        let mut acc = self.parse_term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = self.parse_factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.parse_factor()?;
            acc = acc.nc_mul(&f);
        }
        Ok(acc)
    }

    fn parse_exponent(&mut self) -> Result<i64, ParseError> {
        // only reached after '^'
        let mut sign = 1i64;
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            sign = -1;
        }
        match self.next()? {
            Tok::Num(n) if n.is_integer() => {
                let v: i64 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| ParseError::BadNumber(n.to_string()))?;
                Ok(sign * v)
            }
            other => Err(ParseError::Expected("integer exponent", format!("{other:?}"))),
        }
    }

    fn parse_factor(&mut self) -> Result<NCPoly, ParseError> {
        match self.next()? {
            Tok::Minus => Ok(self.parse_factor()?.neg()),
            Tok::Num(n) => Ok(NCPoly::from_scalar(Scalar::from_rational(n))),
            Tok::LParen => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                if let Some(Tok::Caret) = self.peek() {
                    self.pos += 1;
                    let e = self.parse_exponent()?;
                    return self.power(inner, e, "(...)");
                }
                Ok(inner)
            }
            Tok::Ident(name) => {
                let base = self.resolve_ident(&name)?;
                if let Some(Tok::Caret) = self.peek() {
                    self.pos += 1;
                    let e = self.parse_exponent()?;
                    // single symbols take Laurent powers directly
                    if let Some(sym) = base.as_single_symbol() {
                        return Ok(NCPoly::from_scalar(Scalar::var_pow(sym, e)));
                    }
                    return self.power(base, e, &name);
                }
                Ok(base)
            }
            other => Err(ParseError::Expected("factor", format!("{other:?}"))),
        }
    }

    fn power(&self, base: NCPoly, e: i64, what: &str) -> Result<NCPoly, ParseError> {
        if e < 0 {
            // negative powers only make sense for invertible scalars
            if let Some(s) = base.as_scalar() {
                if s.is_unit() {
                    let inv = s.unit_inverse().expect("unit");
                    let mut acc = NCPoly::one();
                    for _ in 0..(-e) {
                        acc = acc.scale(&inv);
                    }
                    return Ok(acc);
                }
            }
            return Err(ParseError::NegativeGenPower(what.to_string()));
        }
        let mut acc = NCPoly::one();
        for _ in 0..e {
            acc = acc.nc_mul(&base);
        }
        Ok(acc)
    }

    fn resolve_ident(&self, name: &str) -> Result<NCPoly, ParseError> {
        if let Some(p) = self.pres {
            if let Some(g) = p.gen_id(name) {
                return Ok(NCPoly::gen(g));
            }
        }
        Ok(NCPoly::from_scalar(Scalar::var(Symbol::named(name))))
    }
}

trait PolyExt {
    fn as_scalar(&self) -> Option<Scalar>;
    fn as_single_symbol(&self) -> Option<Symbol>;
}

impl PolyExt for NCPoly {
    fn as_scalar(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.num_terms() == 1 {
            let (w, c) = self.terms().next().unwrap();
            if w.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    fn as_single_symbol(&self) -> Option<Symbol> {
        let s = self.as_scalar()?;
        if s.num_terms() != 1 {
            return None;
        }
        let (m, c) = s.terms().next().unwrap();
        if c != &BigRational::from_integer(1.into()) {
            return None;
        }
        let mut it = m.0.iter();
        match (it.next(), it.next()) {
            (Some((sym, 1)), None) => Some(sym.clone()),
            _ => None,
        }
    }
}

/// Parse a noncommutative polynomial; identifiers naming generators of `pres`
/// become algebra letters, everything else a coefficient symbol.
pub fn parse_ncpoly(s: &str, pres: &Presentation) -> Result<NCPoly, ParseError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        pres: Some(pres),
    };
    let out = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Trailing(format!("{:?}", p.toks[p.pos])));
    }
    Ok(out)
}

/// Parse a pure scalar expression (no generators allowed).
pub fn parse_scalar(s: &str) -> Result<Scalar, ParseError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        pres: None,
    };
    let out = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Trailing(format!("{:?}", p.toks[p.pos])));
    }
    out.as_scalar()
        .ok_or_else(|| ParseError::GeneratorInScalar(s.to_string()))
}

/// Parse a sum of elementary tensors with `@` separating the legs; every
/// pure term must have exactly `legs` factors.
pub fn parse_tensor(
    s: &str,
    pres: &Presentation,
    legs: usize,
) -> Result<Vec<(Scalar, Vec<Word>)>, ParseError> {
    // split top-level on +/- into signed leg products
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        pres: Some(pres),
    };
    let mut out: Vec<(Scalar, Vec<Word>)> = Vec::new();
    let mut sign = Scalar::one();
    if let Some(Tok::Minus) = p.peek() {
        p.pos += 1;
        sign = sign.neg();
    } else if let Some(Tok::Plus) = p.peek() {
        p.pos += 1;
    }
    loop {
        // one tensor term: leg (@ leg)*
        let mut leg_polys = vec![p.parse_term()?];
        while let Some(Tok::At) = p.peek() {
            p.pos += 1;
            leg_polys.push(p.parse_term()?);
        }
        if leg_polys.len() != legs {
            return Err(ParseError::Expected("tensor with matching leg count", s.to_string()));
        }
        // expand the multilinear product of legs
        let mut expanded: Vec<(Scalar, Vec<Word>)> = vec![(sign.clone(), Vec::new())];
        for lp in &leg_polys {
            let mut next = Vec::new();
            for (c0, ws) in &expanded {
                for (w, c) in lp.terms() {
                    let mut ws2 = ws.clone();
                    ws2.push(w.clone());
                    next.push((c0.mul(c), ws2));
                }
            }
            expanded = next;
        }
        out.extend(expanded);
        match p.peek() {
            Some(Tok::Plus) => {
                p.pos += 1;
                sign = Scalar::one();
            }
            Some(Tok::Minus) => {
                p.pos += 1;
                sign = Scalar::one().neg();
            }
            None => break,
            Some(t) => return Err(ParseError::Trailing(format!("{t:?}"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Symbol;
    use std::collections::BTreeMap;

    fn toy() -> Presentation {
        Presentation::build("toy", &[("a", 1), ("b", 1)], &[Symbol::q()], vec![], &[]).unwrap()
    }

    #[test]
    fn scalar_round_trip() {
        for s in [
            "q^2 - q^-2",
            "1 - q^-2",
            "3/2*q",
            "q*r - 1",
            "A1*q^2 + A2",
            "-q^-1",
            "0",
            "q^-4 - q^-2",
        ] {
            let v = parse_scalar(s).unwrap();
            let printed = format!("{v}");
            let re = parse_scalar(&printed).unwrap();
            assert_eq!(v, re, "round trip failed for {s} -> {printed}");
        }
    }

    #[test]
    fn scalar_values() {
        let q = Scalar::q_pow(1);
        assert_eq!(parse_scalar("q^2").unwrap(), q.mul(&q));
        assert_eq!(
            parse_scalar("(q - q^-1)*(q + q^-1)").unwrap(),
            parse_scalar("q^2 - q^-2").unwrap()
        );
        assert_eq!(parse_scalar("2 + 3").unwrap(), Scalar::from_int(5));
        assert_eq!(parse_scalar("1/2 + 1/2").unwrap(), Scalar::one());
    }

    #[test]
    fn ncpoly_parse_and_print() {
        let p = toy();
        let x = parse_ncpoly("a*b - q*b*a", &p).unwrap();
        assert_eq!(x.num_terms(), 2);
        let printed = p.format_poly(&x);
        let re = parse_ncpoly(&printed, &p).unwrap();
        assert_eq!(x, re);
        // unknown coefficient symbols pass through
        let y = parse_ncpoly("A1*a + (1 - q^-2)*b", &p).unwrap();
        let re2 = parse_ncpoly(&p.format_poly(&y), &p).unwrap();
        assert_eq!(y, re2);
    }

    #[test]
    fn generator_powers_expand() {
        let p = toy();
        assert_eq!(
            parse_ncpoly("a^3", &p).unwrap(),
            parse_ncpoly("a*a*a", &p).unwrap()
        );
        assert!(parse_ncpoly("a^-1", &p).is_err());
    }

    #[test]
    fn tensor_terms() {
        let p = toy();
        let t = parse_tensor("a @ b + q*b @ a", &p, 2).unwrap();
        assert_eq!(t.len(), 2);
        assert!(parse_tensor("a @ b @ a", &p, 2).is_err());
    }

    #[test]
    fn substitution_is_homomorphic_through_parser() {
        let v = parse_scalar("q^2 + q^-2").unwrap();
        let mut b = BTreeMap::new();
        b.insert(Symbol::q(), Scalar::from_int(3));
        assert_eq!(v.substitute(&b).unwrap(), parse_scalar("9 + 1/9").unwrap());
    }
}
