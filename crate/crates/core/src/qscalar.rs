//! Exact arithmetic in Q(q), the field of rational functions in a formal
//! indeterminate `q`, and the quantum integers, factorials and binomials.
//!
//! A [`QScalar`] is stored as `q^shift * num(q) / den(q)` where `num` and `den`
//! are integer polynomials. The canonical form has `num(0) != 0`,
//! `den(0) != 0`, `gcd(num, den) = 1`, integer content removed and a positive
//! leading coefficient on `den`. Two scalars are equal iff their canonical
//! forms are identical.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial in ascending degree order, without trailing zeros.
type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, c) in out.iter_mut().zip(short) {
        *o += c;
    }
    trim(&mut out);
    out
}

fn poly_neg(a: &[BigInt]) -> Poly {
    a.iter().map(|c| -c).collect()
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_scale(a: &[BigInt], c: &BigInt) -> Poly {
    let mut out: Poly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

fn is_unit_poly(p: &[BigInt]) -> bool {
    p.len() == 1 && p[0].is_one()
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(p: &[BigInt]) -> Poly {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.to_vec();
    }
    let mut out: Poly = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        out = poly_neg(&out);
    }
    out
}

/// Pseudo-remainder of `a` by `b` (lc(b)^k * a mod b).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd over Z[q], normalised to a positive leading coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let mut g = primitive(&x);
    if g.last().is_some_and(|l| l.is_negative()) {
        g = poly_neg(&g);
    }
    g
}

/// Exact division in Z[q]; the caller guarantees `b | a` with a quotient in Z[q].
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let (c, rem) = r.last().unwrap().div_rem(lb);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

/// Moves factors of `q` out of `p` into the returned valuation.
fn strip_low(p: &mut Poly) -> i64 {
    let k = p.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        p.drain(..k);
    }
    k as i64
}

/// An element of Q(q) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: Poly,
    shift: i64,
    den: Poly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: Vec::new(), shift: 0, den: vec![BigInt::one()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QScalar { num: vec![c], shift: 0, den: vec![BigInt::one()] }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let n = Self::from_bigint(r.numer().clone());
        let d = Self::from_bigint(r.denom().clone());
        n.checked_div(&d).expect("rational with zero denominator")
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        QScalar { num: vec![BigInt::from(c)], shift: k, den: vec![BigInt::one()] }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// Builds `sum c_k q^k` from `(k, c_k)` pairs.
    pub fn laurent<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (k, c)| acc + Self::monomial(c, k))
    }

    /// Builds a scalar from a numerator and denominator given as Laurent
    /// coefficient lists `(exponent, coefficient)`.
    fn from_parts(mut num: Poly, num_shift: i64, mut den: Poly, den_shift: i64) -> Self {
        trim(&mut num);
        trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let mut shift = num_shift - den_shift;
        shift += strip_low(&mut num);
        shift -= strip_low(&mut den);
        if !(den.len() == 1) {
            let g = poly_gcd(&num, &den);
            if g.len() > 1 {
                num = poly_div_exact(&num, &g);
                den = poly_div_exact(&den, &g);
            }
        }
        let c = content(&num).gcd(&content(&den));
        if !c.is_one() {
            num = num.iter().map(|x| x / &c).collect();
            den = den.iter().map(|x| x / &c).collect();
        }
        if den.last().unwrap().is_negative() {
            num = poly_neg(&num);
            den = poly_neg(&den);
        }
        QScalar { num, shift, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && is_unit_poly(&self.num) && is_unit_poly(&self.den)
    }

    /// True when the denominator is 1, i.e. the scalar is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        is_unit_poly(&self.den)
    }

    /// Coefficients of a Laurent polynomial as `(exponent, coefficient)`
    /// pairs in ascending order; `None` if the denominator is nontrivial.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        self.is_laurent().then(|| {
            self.num
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 + self.shift, c.clone()))
                .collect()
        })
    }

    /// The integer value when the scalar is a constant integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        (self.shift == 0 && self.num.len() == 1 && is_unit_poly(&self.den)).then(|| self.num[0].clone())
    }

    /// The rational value when the scalar does not depend on `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        (self.shift == 0 && self.num.len() == 1 && self.den.len() == 1)
            .then(|| BigRational::new(self.num[0].clone(), self.den[0].clone()))
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<QScalar> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn inverse(&self) -> Result<QScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_parts(self.den.clone(), 0, self.num.clone(), self.shift))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<QScalar> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QScalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Substitutes a rational value for `q`; `None` when the denominator vanishes.
    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let horner = |p: &[BigInt]| {
            p.iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * q + BigRational::from_integer(c.clone()))
        };
        let d = horner(&self.den);
        if d.is_zero() || (q.is_zero() && self.shift < 0) {
            return None;
        }
        let qs = if self.shift >= 0 {
            num_traits::pow(q.clone(), self.shift as usize)
        } else {
            num_traits::pow(q.recip(), (-self.shift) as usize)
        };
        Some(horner(&self.num) * qs / d)
    }

    /// Re-runs canonicalisation; a no-op on values produced by this module.
    pub fn canonicalize(&self) -> QScalar {
        Self::from_parts(self.num.clone(), self.shift, self.den.clone(), 0)
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Align the q-valuations so both numerators are ordinary polynomials.
        let base = self.shift.min(rhs.shift);
        let lift = |p: &Poly, s: i64| {
            let mut v = vec![BigInt::zero(); (s - base) as usize];
            v.extend(p.iter().cloned());
            v
        };
        let a = lift(&self.num, self.shift);
        let b = lift(&rhs.num, rhs.shift);
        if self.den == rhs.den {
            let num = poly_add(&a, &b);
            if is_unit_poly(&self.den) {
                let mut num = num;
                if num.is_empty() {
                    return QScalar::zero();
                }
                let s = strip_low(&mut num);
                return QScalar { num, shift: base + s, den: self.den.clone() };
            }
            return QScalar::from_parts(num, base, self.den.clone(), 0);
        }
        let num = poly_add(&poly_mul(&a, &rhs.den), &poly_mul(&b, &self.den));
        QScalar::from_parts(num, base, poly_mul(&self.den, &rhs.den), 0)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if is_unit_poly(&self.den) && is_unit_poly(&rhs.den) {
            return QScalar {
                num: poly_mul(&self.num, &rhs.num),
                shift: self.shift + rhs.shift,
                den: self.den.clone(),
            };
        }
        if self.num.len() == 1 && is_unit_poly(&self.den) {
            return QScalar::from_parts(poly_scale(&rhs.num, &self.num[0]), self.shift + rhs.shift, rhs.den.clone(), 0);
        }
        if rhs.num.len() == 1 && is_unit_poly(&rhs.den) {
            return QScalar::from_parts(poly_scale(&self.num, &rhs.num[0]), self.shift + rhs.shift, self.den.clone(), 0);
        }
        QScalar::from_parts(
            poly_mul(&self.num, &rhs.num),
            self.shift + rhs.shift,
            poly_mul(&self.den, &rhs.den),
            0,
        )
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: poly_neg(&self.num), shift: self.shift, den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
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
        impl<'a> $tr<&'a QScalar> for QScalar {
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

impl Div for QScalar {
    type Output = QScalar;
    /// Panics on division by zero; use [`QScalar::checked_div`] otherwise.
    fn div(self, rhs: QScalar) -> QScalar {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

fn fmt_laurent(f: &mut fmt::Formatter<'_>, p: &[BigInt], shift: i64) -> fmt::Result {
    let mut first = true;
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = k as i64 + shift;
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match (e, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (_, true) => fmt_qpow(f, e)?,
            (_, false) => {
                write!(f, "{mag}*")?;
                fmt_qpow(f, e)?
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn fmt_qpow(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    if e == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{e}")
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            return fmt_laurent(f, &self.num, self.shift);
        }
        write!(f, "(")?;
        fmt_laurent(f, &self.num, self.shift)?;
        write!(f, ")/(")?;
        fmt_laurent(f, &self.den, 0)?;
        write!(f, ")")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

/// Quantum integer `[m]_v` with `v = q^base_exponent`.
pub fn quantum_integer(m: i64, base_exponent: i64) -> QScalar {
    if m == 0 {
        return QScalar::zero();
    }
    let v = base_exponent;
    let num = QScalar::q_pow(m * v) - QScalar::q_pow(-m * v);
    let den = QScalar::q_pow(v) - QScalar::q_pow(-v);
    num.checked_div(&den).expect("v - v^-1 is nonzero")
}

/// Quantum factorial `[m]!_v`, with `[0]! = 1`.
pub fn quantum_factorial(m: i64, base_exponent: i64) -> QScalar {
    (1..=m).fold(QScalar::one(), |acc, k| acc * quantum_integer(k, base_exponent))
}

/// Quantum binomial `[m choose k]_v`.
pub fn quantum_binomial(m: i64, k: i64, base_exponent: i64) -> Result<QScalar> {
    if m < 0 || k < 0 || k > m {
        return Err(Error::OutOfRange { m, k });
    }
    let num = quantum_factorial(m, base_exponent);
    let den = quantum_factorial(k, base_exponent) * quantum_factorial(m - k, base_exponent);
    num.checked_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> QScalar {
        QScalar::q_pow(k)
    }

    #[test]
    fn basic_arithmetic() {
        let s = q(1) + q(-1);
        assert_eq!(s.to_string(), "q + q^-1");
        // (q^2+1)/q is the same Laurent polynomial.
        let f = (q(2) + QScalar::one()).checked_div(&q(1)).unwrap();
        assert_eq!(s, f);
        let d = (q(2) - q(-2)).checked_div(&(q(1) - q(-1))).unwrap();
        assert_eq!(d, q(1) + q(-1));
        assert_eq!(q(1).pow(0).unwrap(), QScalar::one());
        assert_eq!(QScalar::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn fractions_reduce() {
        let a = QScalar::one().checked_div(&(q(1) - q(-1))).unwrap();
        assert_eq!(a.to_string(), "(q)/(q^2 - 1)");
        let b = &a * &(q(1) - q(-1));
        assert!(b.is_one());
        let half = QScalar::one().checked_div(&QScalar::from_int(2)).unwrap();
        assert_eq!((&half + &half), QScalar::one());
        assert_eq!(half.to_string(), "(1)/(2)");
        let neg = QScalar::one().checked_div(&(q(0) - q(2))).unwrap();
        assert_eq!(neg.to_string(), "(-1)/(q^2 - 1)");
    }

    #[test]
    fn quantum_integers() {
        assert!(quantum_integer(1, 1).is_one());
        assert_eq!(quantum_integer(2, 1), q(1) + q(-1));
        assert_eq!(quantum_integer(3, 2), q(4) + QScalar::one() + q(-4));
        assert_eq!(quantum_integer(-3, 1), -quantum_integer(3, 1));
        assert!(quantum_integer(0, 1).is_zero());
    }

    #[test]
    fn quantum_binomials() {
        assert!(quantum_binomial(5, 0, 1).unwrap().is_one());
        assert_eq!(quantum_binomial(2, 1, 1).unwrap(), q(1) + q(-1));
        let expect = QScalar::laurent([(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]);
        assert_eq!(quantum_binomial(4, 2, 1).unwrap(), expect);
        assert!(matches!(quantum_binomial(3, 4, 1), Err(Error::OutOfRange { .. })));
        assert!(matches!(quantum_binomial(3, -1, 1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn evaluation() {
        let x = (q(2) + QScalar::one()).checked_div(&(q(1) - QScalar::one())).unwrap();
        let two = BigRational::from_integer(2.into());
        assert_eq!(x.eval(&two), Some(BigRational::from_integer(5.into())));
        assert_eq!(x.eval(&BigRational::one()), None);
    }
}
