//! Integer invariants read off an Alexander polynomial: `δ₂`, the knot
//! determinant, and the "product of `2^s ± 1`" test.

use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::laurent::NormalForm;

/// Largest odd factor of `|Δ'(2)|`, or 0 when `Δ'(2) = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Delta2Value(BigUint);

impl Delta2Value {
    pub fn new(value: BigUint) -> Option<Self> {
        (value.is_zero() || value.is_odd()).then_some(Self(value))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Delta2Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn delta2(dp: &NormalForm) -> Delta2Value {
    let v = dp.eval(&BigInt::from(2)).magnitude().clone();
    if v.is_zero() {
        return Delta2Value(v);
    }
    let tz = v.trailing_zeros().unwrap_or(0);
    Delta2Value(v >> tz)
}

/// `|Δ'(-1)|`.
pub fn knot_det(dp: &NormalForm) -> BigUint {
    dp.eval(&BigInt::from(-1)).magnitude().clone()
}

/// Whether `dp ≐ dp(t^-1)`.
pub fn symmetry_check(dp: &NormalForm) -> bool {
    dp.poly().equal_up_to_unit(&dp.poly().substitute_inverse())
}

/// One factor `2^s + 1` (`plus`) or `2^s - 1` of a witness.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PmFactor {
    pub value: BigUint,
    pub s: u64,
    pub plus: bool,
}

impl fmt::Display for PmFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.plus { '+' } else { '-' };
        write!(f, "{}=2^{}{}1", self.value, self.s, sign)
    }
}

/// Decides whether `n` is a product of integers `2^s ± 1 > 1`, returning a
/// witness (ascending) when it is.  `n = 1` is the empty product; `n = 0`
/// has no such representation.
pub fn is_pm_power_product(n: &BigUint) -> Option<Vec<PmFactor>> {
    if n.is_zero() {
        return None;
    }
    let candidates = pm_candidates(n);
    let mut failed = HashSet::new();
    search(n, &candidates, 0, &mut failed)
}

/// Distinct values `2^s ± 1` in `(1, n]`, largest first.  A value with two
/// representations (3 = 2^2 - 1 = 2^1 + 1) is kept once, as `2^s + 1`.
fn pm_candidates(n: &BigUint) -> Vec<PmFactor> {
    let mut out: Vec<PmFactor> = Vec::new();
    let bits = n.bits();
    for s in 0..=bits {
        let pow = BigUint::one() << s;
        for (value, plus) in [(&pow + 1u32, true), (&pow - 1u32, false)] {
            if value > BigUint::one() && &value <= n && !out.iter().any(|c| c.value == value) {
                out.push(PmFactor { value, s, plus });
            }
        }
    }
    out.sort_by(|a, b| b.value.cmp(&a.value));
    out
}

/// Depth-first search over non-increasing factor sequences; `failed` memoizes
/// `(remaining, first allowed candidate)` states known to have no solution.
fn search(
    n: &BigUint,
    cands: &[PmFactor],
    from: usize,
    failed: &mut HashSet<(BigUint, usize)>,
) -> Option<Vec<PmFactor>> {
    if n.is_one() {
        return Some(Vec::new());
    }
    if failed.contains(&(n.clone(), from)) {
        return None;
    }
    for (i, c) in cands.iter().enumerate().skip(from) {
        if &c.value > n {
            continue;
        }
        let (q, r) = n.div_rem(&c.value);
        if !r.is_zero() {
            continue;
        }
        if let Some(mut rest) = search(&q, cands, i, failed) {
            rest.push(c.clone());
            return Some(rest);
        }
    }
    failed.insert((n.clone(), from));
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn nf(s: &str) -> NormalForm {
        s.parse::<LaurentPoly>().unwrap().normalize().unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn delta2_examples() {
        assert!(delta2(&nf("2 - 5*t + 2*t^2")).is_zero());
        assert_eq!(
            delta2(&nf("2 - 6*t + 9*t^2 - 6*t^3 + 2*t^4")).value(),
            &big(5)
        );
        assert_eq!(
            delta2(&nf("1 - t - t^2 + 3*t^3 - t^4 - t^5 + t^6")).value(),
            &big(35)
        );
        assert_eq!(delta2(&nf("6 - 13*t + 6*t^2")).value(), &big(1));
    }

    #[test]
    fn knot_det_examples() {
        assert_eq!(knot_det(&nf("2 - 5*t + 2*t^2")), big(9));
        assert_eq!(
            knot_det(&nf(
                "1 - 6*t + 15*t^2 - 24*t^3 + 29*t^4 - 24*t^5 + 15*t^6 - 6*t^7 + t^8"
            )),
            big(121)
        );
        assert_eq!(knot_det(&NormalForm::one()), big(1));
    }

    #[test]
    fn pm_product_examples() {
        let w = is_pm_power_product(&big(35)).unwrap();
        let vals: Vec<_> = w.iter().map(|f| f.value.clone()).collect();
        assert_eq!(vals, vec![big(5), big(7)]);
        assert!(w[0].plus && w[0].s == 2);
        assert!(!w[1].plus && w[1].s == 3);

        for n in [11u64, 13, 91, 121] {
            assert!(is_pm_power_product(&big(n)).is_none(), "{n}");
        }
        assert_eq!(is_pm_power_product(&big(1)), Some(vec![]));
        assert!(is_pm_power_product(&big(0)).is_none());
        assert!(is_pm_power_product(&big(81)).is_some());
        assert!(is_pm_power_product(&big(2)).is_some());
    }

    #[test]
    fn symmetry_examples() {
        assert!(symmetry_check(&nf("2 - 5*t + 2*t^2")));
        assert!(!symmetry_check(&nf("1 + 2*t")));
        assert!(symmetry_check(&nf("6 - 13*t + 6*t^2")));
        assert!(symmetry_check(&nf("1 - t + t^2")));
    }

    #[test]
    fn delta2_value_rejects_even() {
        assert!(Delta2Value::new(big(4)).is_none());
        assert!(Delta2Value::new(big(0)).is_some());
        assert!(Delta2Value::new(big(9)).is_some());
    }
}
