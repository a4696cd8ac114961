//! Expression text: parser, printer and identity-suite files.
//!
//! The grammar is documented in `docs/grammar.ebnf`. Products are written with an
//! explicit `*`; `^` takes an integer exponent (negative only for invertible
//! generators and scalars); `/` divides by scalar subexpressions only.

mod parser;
pub mod suite;

pub use parser::{parse_raw, parse_raw_at};

use num_rational::BigRational;

use crate::algebra::{NCPoly, Preset, Signature, Word};
use crate::error::ParseError;
use crate::scalars::QScalar;

/// Parses and normal-orders under `preset`.
pub fn parse(text: &str, preset: &Preset) -> Result<NCPoly, ParseError> {
    let raw = parse_raw(text, &preset.sig)?;
    preset
        .normal_order(&raw)
        .map_err(|source| ParseError::Algebra { pos: 0, source })
}

/// Like [`parse`] with `q` replaced by the rational `q0` (numeric cross-checks).
pub fn parse_at(text: &str, preset: &Preset, q0: &BigRational) -> Result<NCPoly, ParseError> {
    let raw = parse_raw_at(text, &preset.sig, Some(q0))?;
    preset
        .normal_order(&raw)
        .map_err(|source| ParseError::Algebra { pos: 0, source })
}

/// Deterministic text form; `parse(print(p)) == p` for normal-ordered `p`.
pub fn print(sig: &Signature, p: &NCPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in p.terms().enumerate() {
        let neg = c.looks_negative();
        let mag = if neg { -c } else { c.clone() };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&term_text(sig, w, &mag));
    }
    out
}

fn term_text(sig: &Signature, w: &Word, c: &QScalar) -> String {
    if w.is_one() {
        return factor_text(c);
    }
    let word = sig.word_text(w);
    if c.is_one() {
        word
    } else {
        format!("{}*{}", factor_text(c), word)
    }
}

/// Scalar text safe to use as the left factor of a product or after a minus sign.
fn factor_text(c: &QScalar) -> String {
    let s = c.to_string();
    let multi_term = c.is_polynomial() && c.numer().coeffs().iter().filter(|x| !num_traits::Zero::is_zero(*x)).count() > 1;
    if multi_term {
        format!("({s})")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn prints_normal_form_of_da() {
        let gl = presets::get("GLq2").unwrap();
        let p = parse("d*a", &gl).unwrap();
        assert_eq!(print(&gl.sig, &p), "a*d - (q^2-1)/q*b*c");
        assert_eq!(parse(&print(&gl.sig, &p), &gl).unwrap(), p);
    }

    #[test]
    fn zero_and_unit_coefficients() {
        let gl = presets::get("GLq2").unwrap();
        assert_eq!(print(&gl.sig, &parse("0", &gl).unwrap()), "0");
        assert_eq!(print(&gl.sig, &parse("a*b", &gl).unwrap()), "a*b");
        assert_eq!(print(&gl.sig, &parse("-(q^2+1)*a - q^2 - 1", &gl).unwrap()), "-(q^2+1) - (q^2+1)*a");
    }

    #[test]
    fn relation_examples_vanish() {
        let gl = presets::get("GLq2").unwrap();
        assert!(parse("a*d - d*a - (q - q^-1)*b*c", &gl).unwrap().is_zero());
        let sl = presets::get("SLq2_forms").unwrap();
        assert!(parse("w1*w2 + q^4*w2*w1", &sl).unwrap().is_zero());
    }
}
