//! Exact arithmetic in Q(q), the field of rational functions of the deformation
//! parameter with integer coefficients.
//!
//! A [`QScalar`] is stored as a reduced fraction `num / den` of integer
//! polynomials. Negative powers of `q` live in the denominator, so there is a
//! single canonical form: `gcd(num, den) = 1` over `Z[q]` and the leading
//! coefficient of `den` is positive.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ScalarError;

/// Dense integer polynomial in `q`, little-endian coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = IntPoly(vec![c.into()]);
        p.trim();
        p
    }

    /// `c * q^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly(v)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly(coeffs);
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Number of trailing zero coefficients, i.e. the power of `q` dividing `self`.
    fn low_order(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    fn shift_down(&self, k: usize) -> Self {
        IntPoly(self.0[k..].to_vec())
    }

    /// Single nonzero coefficient.
    fn is_monomial(&self) -> bool {
        self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn scale_div(&self, c: &BigInt) -> Self {
        IntPoly(self.0.iter().map(|x| x / c).collect())
    }

    fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly(self.0.iter().map(|x| x * c).collect())
    }

    fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.scale_div(&c)
        }
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^k * self = quot * d + rem`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shift = rd - dd;
            // r = lc*r - lr*q^shift*d
            let mut next = r.scale(&lc).0;
            for (i, c) in d.0.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = IntPoly::from_coeffs(next);
        }
        r
    }

    /// Exact division; panics when `d` does not divide `self` in `Z[q]`.
    pub fn div_exact(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let sd = self.degree().unwrap();
        assert!(sd >= dd, "inexact polynomial division");
        let lc = d.leading().unwrap();
        let mut r = self.0.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &r[k + dd];
            if c.is_zero() {
                continue;
            }
            let (qk, rem) = c.div_rem(lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &qk * dc;
            }
            quot[k] = qk;
        }
        assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly::from_coeffs(quot)
    }

    /// Greatest common divisor in `Z[q]`, with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let cg = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().normalize_sign().scale(&cg)
    }

    fn normalize_sign(&self) -> IntPoly {
        match self.leading() {
            Some(l) if l.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.0.len().max(rhs.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = rhs.0.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::from_coeffs(v)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(v)
    }
}

/// Element of Q(q) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: IntPoly,
    den: IntPoly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            num: IntPoly::zero(),
            den: IntPoly::constant(1),
        }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        QScalar {
            num: IntPoly::constant(n),
            den: IntPoly::constant(1),
        }
    }

    pub fn q() -> Self {
        QScalar {
            num: IntPoly::monomial(1, 1),
            den: IntPoly::constant(1),
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = IntPoly::monomial(1, k.unsigned_abs() as usize);
        if k >= 0 {
            QScalar {
                num: m,
                den: IntPoly::constant(1),
            }
        } else {
            QScalar {
                num: IntPoly::constant(1),
                den: m,
            }
        }
    }

    /// `λ = q − 1/q`.
    pub fn lambda() -> Self {
        &Self::q() - &Self::q_pow(-1)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(IntPoly::constant(r.numer().clone()), IntPoly::constant(r.denom().clone()))
            .expect("rational has nonzero denominator")
    }

    /// Builds `num / den` and canonicalizes.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(mut num: IntPoly, mut den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = num.low_order().min(den.low_order());
        if shift > 0 {
            num = num.shift_down(shift);
            den = den.shift_down(shift);
        }
        if den.is_monomial() || num.is_monomial() {
            // Only an integer content can be shared beyond the q-power.
            let g = num.content().gcd(&den.content());
            if !g.is_one() {
                num = num.scale_div(&g);
                den = den.scale_div(&g);
            }
        } else {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        if den.leading().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        QScalar { num, den }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for a polynomial with integer coefficients (no denominator).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ScalarError::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Value at `q = 1`. Common `(q − 1)` factors are already cancelled by the
    /// canonical form, so a vanishing denominator is a genuine pole.
    pub fn limit_q1(&self) -> Result<BigRational, ScalarError> {
        self.eval(&BigRational::one())
    }

    /// Leading numerator coefficient is negative; used by the printer.
    pub fn looks_negative(&self) -> bool {
        self.num.leading().is_some_and(|c| c.is_negative())
    }
}

/// `[n]_q = (q^n − q^−n)/(q − q^−1)`.
pub fn qnum(n: u32) -> QScalar {
    // (q^{2n} - 1) / (q^{n-1} (q^2 - 1)) = sum_{k=0}^{n-1} q^{n-1-2k}
    let mut acc = QScalar::zero();
    for k in 0..n as i64 {
        acc = &acc + &QScalar::q_pow(n as i64 - 1 - 2 * k);
    }
    acc
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QScalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        QScalar::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar {
                num: &self.num * &rhs.num,
                den: IntPoly::constant(1),
            };
        }
        QScalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    /// Panics on division by zero; use [`QScalar::checked_div`] for a `Result`.
    fn div(self, rhs: &QScalar) -> QScalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::int(n)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &IntPoly) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, "-")?;
        } else {
            write!(f, "+")?;
        }
        first = false;
        match k {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
    }
    Ok(())
}

/// A polynomial prints without parentheses in a product iff it has one term.
fn single_term(p: &IntPoly) -> bool {
    p.is_monomial()
}

/// A denominator prints bare after `/` iff it is a plain integer or a bare power of q.
fn bare_factor(p: &IntPoly) -> bool {
    p.is_monomial() && (p.degree() == Some(0) || p.leading().is_some_and(|c| c.is_one()))
}

impl fmt::Display for QScalar {
    /// Textual form accepted by the expression parser, e.g. `(q^2-1)/(2*q^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write_poly(f, &self.num);
        }
        if single_term(&self.num) && !self.num.leading().unwrap().is_negative() {
            write_poly(f, &self.num)?;
        } else {
            write!(f, "(")?;
            write_poly(f, &self.num)?;
            write!(f, ")")?;
        }
        write!(f, "/")?;
        if bare_factor(&self.den) {
            write_poly(f, &self.den)
        } else {
            write!(f, "(")?;
            write_poly(f, &self.den)?;
            write!(f, ")")
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

impl PartialOrd for QScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QScalar {
    /// Structural order on the canonical representation; only for deterministic sorting.
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |s: &QScalar| (s.num.0.clone(), s.den.0.clone());
        key(self).cmp(&key(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn lambda_is_q2_minus_1_over_q() {
        let l = &QScalar::q() - &(&QScalar::one() / &QScalar::q());
        let expected = QScalar::new(poly(&[-1, 0, 1]), poly(&[0, 1])).unwrap();
        assert_eq!(l, expected);
        assert_eq!(l, QScalar::lambda());
        assert_eq!(l.to_string(), "(q^2-1)/q");
    }

    #[test]
    fn cancels_common_factors() {
        // (q^4 - 1)/(q^2 - 1) = q^2 + 1
        let s = QScalar::new(poly(&[-1, 0, 0, 0, 1]), poly(&[-1, 0, 1])).unwrap();
        assert_eq!(s, QScalar::new(poly(&[1, 0, 1]), poly(&[1])).unwrap());
        assert!(s.is_polynomial());
        // denominator sign is normalized
        let t = QScalar::new(poly(&[1]), poly(&[0, -2])).unwrap();
        assert_eq!(t.denom(), &poly(&[0, 2]));
        assert_eq!(t.numer(), &poly(&[-1]));
    }

    #[test]
    fn qnumbers() {
        assert!(qnum(0).is_zero());
        assert!(qnum(1).is_one());
        assert_eq!(qnum(2), &QScalar::q() + &QScalar::q_pow(-1));
        let three = &(&QScalar::q_pow(2) + &QScalar::one()) + &QScalar::q_pow(-2);
        assert_eq!(qnum(3), three);
        for n in 0..=12u32 {
            assert_eq!(qnum(n).limit_q1().unwrap(), rat(n as i64, 1));
        }
    }

    #[test]
    fn qnum_matches_defining_quotient() {
        // polynomial-division oracle: (q^n - q^-n) / (q - q^-1)
        for n in 1..8i64 {
            let top = &QScalar::q_pow(n) - &QScalar::q_pow(-n);
            let bottom = &QScalar::q_pow(1) - &QScalar::q_pow(-1);
            assert_eq!(top.checked_div(&bottom).unwrap(), qnum(n as u32));
        }
    }

    #[test]
    fn eval_and_limits() {
        assert_eq!(QScalar::lambda().eval(&rat(2, 1)).unwrap(), rat(3, 2));
        assert_eq!(QScalar::one().eval(&rat(-5, 7)).unwrap(), rat(1, 1));
        let c = QScalar::new(poly(&[-1, 0, 1]), poly(&[0, 0, 2])).unwrap();
        assert_eq!(c.eval(&rat(1, 1)).unwrap(), rat(0, 1));
        assert_eq!(QScalar::lambda().limit_q1().unwrap(), rat(0, 1));
        let pole = QScalar::new(poly(&[1]), poly(&[-1, 1])).unwrap();
        assert!(matches!(pole.limit_q1(), Err(ScalarError::Pole(_))));
        let x = QScalar::new(poly(&[-1, 0, 0, 0, 1]), poly(&[-1, 0, 1])).unwrap();
        assert_eq!(x.limit_q1().unwrap(), rat(2, 1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(QScalar::one().checked_div(&QScalar::zero()), Err(ScalarError::DivisionByZero));
        assert!(QScalar::zero().inv().is_err());
    }

    #[test]
    fn qnum_product() {
        let expanded = &qnum(2) * &qnum(3);
        // q^3 + 2q + 2/q + 1/q^3
        let by_hand = QScalar::new(poly(&[1, 0, 2, 0, 2, 0, 1]), poly(&[0, 0, 0, 1])).unwrap();
        assert_eq!(expanded, by_hand);
    }

    #[test]
    fn poly_gcd() {
        let a = &poly(&[-1, 1]) * &poly(&[1, 0, 1]);
        let b = &poly(&[-1, 1]) * &poly(&[2, 3]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
        let c = poly(&[2, 4]);
        assert_eq!(c.gcd(&poly(&[6])), poly(&[2]));
    }
}
