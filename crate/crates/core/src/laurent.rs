//! Sparse Laurent polynomials in one variable `t` over the integers.
//!
//! Alexander polynomials are only defined up to multiplication by a unit
//! `±t^k`, so besides ordinary ring arithmetic this module provides the
//! [`NormalForm`] representative (minimum exponent 0, positive constant term)
//! and [`LaurentPoly::equal_up_to_unit`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial `Σ c_e t^e` with arbitrary-precision coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty map
/// and structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial<C: Into<BigInt>>(c: C, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense ascending coefficients starting at exponent `min_exp`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(min_exp: i64, coeffs: &[C]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (min_exp + i as i64, c.clone().into())),
        )
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates over the nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp - min_exp`; zero for the zero polynomial and for monomials.
    pub fn span(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) as u64,
            _ => 0,
        }
    }

    /// Whether `self = ±t^k` for some `k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// The substitution `t -> t^-1`.
    pub fn substitute_inverse(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Shifts so the minimum exponent is 0 and flips the sign so the constant
    /// term is positive.
    pub fn normalize(&self) -> Result<NormalForm> {
        let lo = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        let mut p = self.shift(-lo);
        if p.terms[&0].is_negative() {
            p = -p;
        }
        Ok(NormalForm(p))
    }

    /// The `≐` relation: `self = ±t^k * other` for some integer `k`.
    /// Two zero polynomials are equivalent.
    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        match (self.normalize(), other.normalize()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Exact value at an integer point.
    pub fn eval(&self, x: &BigInt) -> Result<BigRational> {
        let Some(lo) = self.min_exp() else {
            return Ok(BigRational::zero());
        };
        if x.is_zero() {
            if lo < 0 {
                return Err(Error::EvalAtZero);
            }
            return Ok(BigRational::from_integer(self.coeff(0)));
        }
        let shifted = horner(&self.shift(-lo), x);
        let value = if lo >= 0 {
            BigRational::from_integer(shifted * pow_big(x, lo as u64))
        } else {
            BigRational::new(shifted, pow_big(x, lo.unsigned_abs()))
        };
        Ok(value)
    }

    /// Integer value at `x`; requires `min_exp >= 0` (or zero polynomial).
    pub fn eval_integer(&self, x: &BigInt) -> Result<BigInt> {
        let v = self.eval(x)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::InvalidArgument(format!(
                "value at {x} is not an integer: {v}"
            )))
        }
    }

    /// Returns `q` with `self = divisor * q` exactly, or `None` when no such
    /// Laurent polynomial exists.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        let (Some(b_lo), Some(b_hi)) = (divisor.min_exp(), divisor.max_exp()) else {
            return None;
        };
        let Some(a_lo) = self.min_exp() else {
            return Some(Self::zero());
        };
        let a_hi = self.max_exp().unwrap();
        // Both shifted operands have nonzero constant terms, so any exact
        // quotient is an ordinary polynomial with nonzero constant term.
        if a_hi - a_lo < b_hi - b_lo {
            return None;
        }
        if !self.terms[&a_lo].is_multiple_of(&divisor.terms[&b_lo])
            || !self.terms[&a_hi].is_multiple_of(&divisor.terms[&b_hi])
        {
            return None;
        }
        let a = self.dense_from(a_lo);
        let b = divisor.dense_from(b_lo);
        let q = long_divide(a, &b)?;
        Some(Self::from_coeffs(a_lo - b_lo, &q))
    }

    /// Dense coefficients from exponent `lo` to `max_exp`.
    fn dense_from(&self, lo: i64) -> Vec<BigInt> {
        let hi = self.max_exp().unwrap_or(lo);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        v
    }

    /// Parses the ASCII grammar
    /// `poly := term (('+'|'-') term)*`,
    /// `term := int | int '*' 't' ('^' int)? | 't' ('^' int)?`,
    /// with an optional leading sign and insignificant whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).poly()
    }
}

fn horner(p: &LaurentPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut prev: Option<i64> = None;
    for (&e, c) in p.terms.iter().rev() {
        if let Some(pe) = prev {
            acc *= pow_big(x, (pe - e) as u64);
        }
        acc += c;
        prev = Some(e);
    }
    if let Some(pe) = prev {
        acc *= pow_big(x, pe as u64);
    }
    acc
}

fn pow_big(x: &BigInt, n: u64) -> BigInt {
    num_traits::pow(x.clone(), n as usize)
}

/// Schoolbook division of dense ascending coefficient vectors, failing on the
/// first inexact step.
fn long_divide(mut rem: Vec<BigInt>, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    let lead = &b[db];
    let da = rem.len() - 1;
    let mut q = vec![BigInt::zero(); da - db + 1];
    for i in (db..=da).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (qi, r) = rem[i].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        let shift = i - db;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[shift + j] -= &qi * bj;
            }
        }
        q[shift] = qi;
    }
    if rem[..db].iter().all(Zero::is_zero) {
        Some(q)
    } else {
        None
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (Some(a_lo), Some(b_lo)) = (self.min_exp(), rhs.min_exp()) else {
            return LaurentPoly::zero();
        };
        let a = self.dense_from(a_lo);
        let b = rhs.dense_from(b_lo);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        LaurentPoly::from_coeffs(a_lo + b_lo, &out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

/// Representative of a `≐` class: minimum exponent 0 and positive constant term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(LaurentPoly);

impl NormalForm {
    pub fn one() -> Self {
        NormalForm(LaurentPoly::one())
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.span()
    }

    /// Integer value at `x` (always defined: the exponents are non-negative).
    pub fn eval(&self, x: &BigInt) -> BigInt {
        horner(&self.0, x)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({})", self.0)
    }
}

impl AsRef<LaurentPoly> for NormalForm {
    fn as_ref(&self) -> &LaurentPoly {
        &self.0
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn poly(mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return self.err("empty polynomial"),
            _ => false,
        };
        loop {
            let (c, e) = self.term()?;
            out.add_term(e, if negative { -c } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(ch) => {
                    return self.err(format!("expected '+' or '-', found '{}'", ch as char))
                }
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(BigInt, i64)> {
        match self.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let c = self.digits()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b't') {
                        return self.err("expected 't' after '*'");
                    }
                    self.pos += 1;
                    Ok((c, self.exponent()?))
                } else {
                    Ok((c, 0))
                }
            }
            Some(b't') => {
                self.pos += 1;
                Ok((BigInt::one(), self.exponent()?))
            }
            Some(ch) => self.err(format!("expected a term, found '{}'", ch as char)),
            None => self.err("expected a term, found end of input"),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let start = self.pos;
        let mag = self.digits()?;
        let e: i64 = match i64::try_from(&mag) {
            Ok(e) => e,
            Err(_) => {
                self.pos = start;
                return self.err("exponent out of range");
            }
        };
        Ok(if negative { -e } else { e })
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("1 - t") + p("t"), p("1"));
        assert_eq!(LaurentPoly::zero() + p("2 - t"), p("2 - t"));
        let s = p("t^-1") + p("t");
        assert_eq!(s.terms().map(|(e, _)| e).collect::<Vec<_>>(), vec![-1, 1]);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("1 - t") * p("1 - t"), p("1 - 2*t + t^2"));
        let prod = p("t - 2") * p("t^-1") * p("1 - 2*t");
        assert_eq!(prod.normalize().unwrap().poly(), &p("2 - 5*t + 2*t^2"));
        assert_eq!(p("3*t^-2 + t") * LaurentPoly::one(), p("3*t^-2 + t"));
        assert!((p("1 + t") * LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn substitute_inverse_examples() {
        let q = p("2 - 5*t + 2*t^2");
        assert_eq!(q.substitute_inverse(), p("2 - 5*t^-1 + 2*t^-2"));
        assert_eq!(p("7").substitute_inverse(), p("7"));
        assert_eq!(q.substitute_inverse().substitute_inverse(), q);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p("t^2 - 2*t").normalize().unwrap().poly(), &p("2 - t"));
        assert_eq!(
            p("-1 + 6*t - 11*t^2 + 6*t^3 - t^4")
                .normalize()
                .unwrap()
                .poly(),
            &p("1 - 6*t + 11*t^2 - 6*t^3 + t^4")
        );
        assert_eq!(p("7").normalize().unwrap().poly(), &p("7"));
        assert_eq!(LaurentPoly::zero().normalize(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn equal_up_to_unit_examples() {
        assert!(p("1 - t").equal_up_to_unit(&p("t - 1")));
        assert!(!p("t - 2").equal_up_to_unit(&p("2 - 5*t + 2*t^2")));
        assert!(p("2 - 5*t + 2*t^2").equal_up_to_unit(&p("2*t^-1 - 5 + 2*t")));
        assert!(LaurentPoly::zero().equal_up_to_unit(&LaurentPoly::zero()));
        assert!(!LaurentPoly::zero().equal_up_to_unit(&p("1")));
        // 2 is not a unit
        assert!(!p("1 + t").equal_up_to_unit(&p("2 + 2*t")));
    }

    #[test]
    fn eval_examples() {
        let q = p("2 - 5*t + 2*t^2");
        assert_eq!(q.eval(&2.into()).unwrap(), BigRational::zero());
        assert_eq!(
            q.eval(&(-1).into()).unwrap(),
            BigRational::from_integer(9.into())
        );
        assert_eq!(p("1").eval(&17.into()).unwrap(), BigRational::one());
        assert_eq!(
            p("t^-1 + 1").eval(&2.into()).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
        assert_eq!(p("t^-1 + 1").eval(&0.into()), Err(Error::EvalAtZero));
        assert_eq!(
            p("3 + t").eval(&0.into()).unwrap(),
            BigRational::from_integer(3.into())
        );
    }

    #[test]
    fn divide_exact_examples() {
        let a = p("2 - 5*t + 2*t^2");
        let b = p("2 - t");
        let q = a.divide_exact(&b).unwrap();
        assert_eq!(q, p("1 - 2*t"));
        assert_eq!(&b * &q, a);
        assert_eq!(p("1 - 2*t + t^2").divide_exact(&p("1 + t")), None);
        assert_eq!(a.divide_exact(&LaurentPoly::one()), Some(a.clone()));
        assert_eq!(a.divide_exact(&LaurentPoly::zero()), None);
        // Laurent shifts are absorbed into the quotient.
        assert_eq!(
            p("t^-3 - t^-1").divide_exact(&p("t - t^3")),
            Some(p("t^-4"))
        );
        assert_eq!(p("4 + 2*t").divide_exact(&p("3")), None);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            p("2 - 5*t + 2*t^2"),
            LaurentPoly::from_terms([(0, 2), (1, -5), (2, 2)])
        );
        assert_eq!(p("t^-1 + t"), LaurentPoly::from_terms([(-1, 1), (1, 1)]));
        assert!(p("3*t^2 - 3*t^2").is_zero());
        assert_eq!(
            p("  -t^2+4*t ^ - 3 "),
            LaurentPoly::from_terms([(2, -1), (-3, 4)])
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        for (src, pos) in [
            ("2 - ", 4),
            ("2 * x", 4),
            ("t^", 2),
            ("1 2", 2),
            ("", 0),
            ("2t", 1),
        ] {
            match LaurentPoly::parse(src) {
                Err(Error::Parse { pos: got, .. }) => assert_eq!(got, pos, "{src:?}"),
                other => panic!("{src:?} parsed to {other:?}"),
            }
        }
    }

    #[test]
    fn printer_is_canonical() {
        assert_eq!(p("2*t^2 + 2 - 5*t").to_string(), "2 - 5*t + 2*t^2");
        assert_eq!(p("t - 1 - t^2 + 3*t^3").to_string(), "-1 + t - t^2 + 3*t^3");
        assert_eq!(p("t^-2").to_string(), "t^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn big_coefficients_are_exact() {
        let big: BigInt = "340282366920938463463374607431768211457".parse().unwrap();
        let a = LaurentPoly::monomial(big.clone(), -3) + p("1");
        let sq = &a * &a;
        assert_eq!(sq.coeff(-6), &big * &big);
        assert_eq!(sq.divide_exact(&a), Some(a));
    }
}
