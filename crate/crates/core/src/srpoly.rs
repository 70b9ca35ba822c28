//! Polynomial factors contributed by elementary simple-ribbon fusions.
//!
//! An elementary `m`-fusion with attendant linking number `l` and `p`
//! positive bands multiplies the Alexander polynomial by
//! `F(t; m, l, p) = f(t; m, l, p) f(t^-1; m, l, p)` where
//! `f(t; m, l, p) = (1 - t)^m - t^l (-t)^p`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, NormalForm};

/// Algebraic data of one elementary fusion: band count `m`, linking number
/// `l` of the attendant knot, and number of positive bands `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SRParams {
    m: u32,
    l: i64,
    p: u32,
}

impl SRParams {
    pub fn new(m: u32, l: i64, p: u32) -> Result<Self> {
        if m == 0 || p > m {
            return Err(Error::InvalidParams { m, l, p });
        }
        Ok(Self { m, l, p })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `s = p + l`, the exponent of the monomial in `f`.
    pub fn s(&self) -> i64 {
        self.p as i64 + self.l
    }

    /// The parameters `(m, -l, m - p)` whose `f(t)` is `≐ f(t^-1; m, l, p)`.
    pub fn mirror(&self) -> Self {
        Self {
            m: self.m,
            l: -self.l,
            p: self.m - self.p,
        }
    }

    /// Every valid parameter triple with `m <= max_m` and `|l| <= max_abs_l`,
    /// in lexicographic order.
    pub fn grid(max_m: u32, max_abs_l: i64) -> impl Iterator<Item = SRParams> {
        (1..=max_m).flat_map(move |m| {
            (-max_abs_l..=max_abs_l).flat_map(move |l| (0..=m).map(move |p| SRParams { m, l, p }))
        })
    }
}

impl fmt::Display for SRParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({},{},{})", self.m, self.l, self.p)
    }
}

impl FromStr for SRParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("expected `F(m,l,p)`, found `{s}`"),
        };
        let inner = s
            .trim()
            .strip_prefix("F(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let [m, l, p] = parts.as_slice() else {
            return Err(bad());
        };
        SRParams::new(
            m.parse().map_err(|_| bad())?,
            l.parse().map_err(|_| bad())?,
            p.parse().map_err(|_| bad())?,
        )
    }
}

/// A multiset of fusion parameters, kept sorted so that equal multisets
/// compare equal.  The empty decomposition stands for the trivial knot.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SRDecomposition {
    factors: Vec<SRParams>,
}

impl SRDecomposition {
    pub fn new(mut factors: Vec<SRParams>) -> Self {
        factors.sort();
        Self { factors }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[SRParams] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Π F(t; m_i, l_i, p_i)` as a normal form.
    pub fn polynomial(&self) -> NormalForm {
        product_formula(&LaurentPoly::one(), self).expect("nonzero base")
    }
}

impl fmt::Display for SRDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for SRDecomposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::trivial());
        }
        let factors = s
            .split('*')
            .map(str::parse)
            .collect::<Result<Vec<SRParams>>>()?;
        Ok(Self::new(factors))
    }
}

/// `(1 - t)^m - t^l (-t)^p`.
pub fn f_factor(params: SRParams) -> LaurentPoly {
    let one_minus_t = LaurentPoly::from_terms([(0, 1), (1, -1)]);
    let sign = if params.p.is_multiple_of(2) { 1 } else { -1 };
    one_minus_t.pow(params.m) - LaurentPoly::monomial(sign, params.s())
}

/// `f(t) f(t^-1)` in normal form.
#[allow(non_snake_case)]
pub fn F_factor(params: SRParams) -> NormalForm {
    let f = f_factor(params);
    (&f * &f.substitute_inverse())
        .normalize()
        .expect("f is never zero")
}

/// `Δ_k(t) Π F(t; m_i, l_i, p_i)` in normal form.
pub fn product_formula(base: &LaurentPoly, factors: &SRDecomposition) -> Result<NormalForm> {
    if base.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut acc = base.normalize()?.into_poly();
    for &x in factors.factors() {
        acc = &acc * F_factor(x).poly();
    }
    acc.normalize()
}

/// Whether `f(t; m,l,p) f(t^-1; m,l,p) ≐ f(t; m,l,p) f(t; m,-l,m-p)`.
pub fn remark_identity_check(params: SRParams) -> bool {
    let f = f_factor(params);
    let lhs = &f * &f.substitute_inverse();
    let rhs = &f * &f_factor(params.mirror());
    lhs.equal_up_to_unit(&rhs)
}

/// The pair `(g, h)` with
/// `g = t^(p+l) + (-1)^(m-p-1) (t-1)^m` and
/// `h = t^(m-p-l) + (-1)^(p+1) (t-1)^m`, whose product is `≐ F(t; m,l,p)`.
pub fn gh_factors(params: SRParams) -> (LaurentPoly, LaurentPoly) {
    let m = params.m as i64;
    let p = params.p as i64;
    let s = params.s();
    let t_minus_one = LaurentPoly::from_terms([(0, -1), (1, 1)]).pow(params.m);
    let parity = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    let g = LaurentPoly::monomial(1, s) + t_minus_one.scale(&parity(m - p - 1).into());
    let h = LaurentPoly::monomial(1, m - s) + t_minus_one.scale(&parity(p + 1).into());
    (g, h)
}

/// Exponent span of `f(t; m, l, p)`.
///
/// The support of `(1-t)^m` is `[0, m]`; the monomial `t^s` extends it when
/// `s < 0` or `s > m` and cancels an endpoint exactly when `s = 0` with `p`
/// even or `s = m` with `m - p` even.
pub fn f_span(params: SRParams) -> u64 {
    let m = params.m as i64;
    let s = params.s();
    let span = if s < 0 {
        m - s
    } else if s > m {
        s
    } else if (s == 0 && params.p.is_multiple_of(2))
        || (s == m && (params.m - params.p).is_multiple_of(2))
    {
        m - 1
    } else {
        m
    };
    span as u64
}

/// Exponent span (degree of the normal form) of `F(t; m, l, p)`; twice the
/// span of `f`.
pub fn factor_span(params: SRParams) -> u64 {
    2 * f_span(params)
}
