use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{NCPoly, Signature, Word};
use crate::error::ParseError;
use crate::scalars::QScalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

impl Lexer {
    fn new(text: &str) -> Result<Self, ParseError> {
        let bytes = text.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(text[start..i].parse().unwrap()), start));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Op(c), i));
                i += 1;
            } else {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
        toks.push((Tok::End, text.len()));
        Ok(Lexer { toks })
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    sig: &'a Signature,
    q: QScalar,
}

/// Parses without normal ordering (words kept as written, degree-1 squares dropped).
pub fn parse_raw(text: &str, sig: &Signature) -> Result<NCPoly, ParseError> {
    parse_raw_at(text, sig, None)
}

/// [`parse_raw`] with `q` optionally replaced by a rational value.
pub fn parse_raw_at(text: &str, sig: &Signature, q0: Option<&BigRational>) -> Result<NCPoly, ParseError> {
    let lexer = Lexer::new(text)?;
    let q = match q0 {
        Some(v) => QScalar::from_rational(v),
        None => QScalar::q(),
    };
    let mut p = Parser {
        toks: lexer.toks,
        i: 0,
        sig,
        q,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(p.err(format!("unexpected {t:?}"))),
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn err(&self, msg: String) -> ParseError {
        ParseError::Syntax { pos: self.pos(), msg }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Op(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a.mul_raw(b).filter(|w| !self.sig.is_null(w))
    }

    fn expr(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let r = self.unary()?;
                acc = self.mul(&acc, &r);
            } else if *self.peek() == Tok::Op('/') {
                let pos = self.pos();
                self.i += 1;
                let r = self.unary()?;
                let s = r.as_scalar().ok_or(ParseError::Syntax {
                    pos,
                    msg: "division by a non-scalar".into(),
                })?;
                let inv = s.inv().map_err(|e| ParseError::Algebra { pos, source: e.into() })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<NCPoly, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<NCPoly, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let neg = self.eat('-');
        let n: i64 = match self.peek().clone() {
            Tok::Int(v) => {
                self.i += 1;
                i64::try_from(&v).map_err(|_| ParseError::Syntax { pos, msg: "exponent too large".into() })?
            }
            t => return Err(self.err(format!("expected integer exponent, found {t:?}"))),
        };
        let n = if neg { -n } else { n };
        if let Some(s) = base.as_scalar() {
            let v = s.pow(n).map_err(|e| ParseError::Algebra { pos, source: e.into() })?;
            return Ok(NCPoly::scalar(v));
        }
        if n >= 0 {
            let mut acc = NCPoly::one();
            for _ in 0..n {
                acc = self.mul(&acc, &base);
            }
            return Ok(acc);
        }
        // negative power of a monomial word
        if base.len() != 1 {
            return Err(ParseError::Syntax { pos, msg: "negative power of a sum".into() });
        }
        let (w, c) = base.terms().next().unwrap();
        let mut inv = Word::one();
        for &(g, e) in w.runs().iter().rev() {
            if !self.sig.gen(g).invertible {
                return Err(ParseError::Algebra {
                    pos,
                    source: crate::error::AlgebraError::NotInvertible(self.sig.name(g).into()),
                });
            }
            inv.push(g, -e);
        }
        let cinv = c.inv().map_err(|e| ParseError::Algebra { pos, source: e.into() })?;
        let one = NCPoly::term(inv, cinv);
        let mut acc = NCPoly::one();
        for _ in 0..(-n) {
            acc = self.mul(&acc, &one);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<NCPoly, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.i += 1;
                Ok(NCPoly::scalar(QScalar::int(v)))
            }
            Tok::Ident(name) => {
                self.i += 1;
                if name == "q" {
                    return Ok(NCPoly::scalar(self.q.clone()));
                }
                self.sig
                    .lookup(&name)
                    .map(NCPoly::word)
                    .ok_or(ParseError::UnknownGenerator { name, pos })
            }
            Tok::Op('(') => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`".into()));
                }
                Ok(e)
            }
            t => Err(self.err(format!("unexpected {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::default();
        s.add("a", 0, false);
        s.add("x", 0, true);
        s.add("w", 1, false);
        s
    }

    #[test]
    fn scalars_and_powers() {
        let s = sig();
        let p = parse_raw("(q - q^-1)*a", &s).unwrap();
        assert_eq!(p.coeff(&Word::letter(0, 1)), QScalar::lambda());
        let p = parse_raw("x^-2*x^3", &s).unwrap();
        assert_eq!(p, NCPoly::gen(1));
        assert!(parse_raw("w*w", &s).unwrap().is_zero());
        let p = parse_raw("(q^2-1)/(2*q^2)", &s).unwrap();
        assert_eq!(p.as_scalar().unwrap().eval(&BigRational::from_integer(1.into())).unwrap(), BigRational::from_integer(0.into()));
    }

    #[test]
    fn errors_carry_positions() {
        let s = sig();
        assert!(matches!(parse_raw("a * zz", &s), Err(ParseError::UnknownGenerator { pos: 4, .. })));
        assert!(matches!(parse_raw("a a", &s), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_raw("a / a", &s), Err(ParseError::Syntax { .. })));
        assert!(parse_raw("a^-1", &s).is_err());
        assert!(parse_raw("1/(q-q)", &s).is_err());
    }
}
