//! Exact integer tools for the arithmetic obstructions: prime-factor sets,
//! gcds of `A^m ± 1`, bounded scans of the exponential Diophantine equations
//! that restrict determinants `(2^m - 1)^a (2^m + 1)^b`, and the classifier
//! of pairs `(m, n)` for which an m-SR-knot can also be an n-SR-knot.
//!
//! The scans are verification harnesses over finite boxes, not proofs.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// The distinct primes dividing `n`, in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactorSet {
    n: BigUint,
    primes: Vec<BigUint>,
}

impl FactorSet {
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    /// `(prime, multiplicity)` pairs, recovered by repeated division.
    pub fn factorization(&self) -> Vec<(BigUint, u32)> {
        let mut rest = self.n.clone();
        self.primes
            .iter()
            .map(|p| {
                let mut k = 0;
                while (&rest % p).is_zero() {
                    rest /= p;
                    k += 1;
                }
                (p.clone(), k)
            })
            .collect()
    }
}

impl fmt::Display for FactorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// `P(n)`: trial division to 10^6, then Pollard–Brent rho on the cofactor.
pub fn prime_factor_set(n: &BigUint) -> Result<FactorSet> {
    if n.is_zero() {
        return Err(Error::InvalidArgument(
            "prime_factor_set requires n >= 1".into(),
        ));
    }
    let mut rest = n.clone();
    let mut primes = Vec::new();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        if (&rest % p).is_zero() {
            primes.push(pb.clone());
            while (&rest % p).is_zero() {
                rest /= p;
            }
        }
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_probable_prime(&c) {
                primes.push(c);
                continue;
            }
            let d = pollard_brent(&c);
            let mut other = &c / &d;
            // Keep the two halves coprime so each prime is found once.
            let g = d.gcd(&other);
            if !g.is_one() {
                while (&other % &g).is_zero() {
                    other /= &g;
                }
            }
            stack.push(d);
            stack.push(other);
        }
    }
    primes.sort();
    primes.dedup();
    Ok(FactorSet {
        n: n.clone(),
        primes,
    })
}

/// Same as [`prime_factor_set`] for machine integers.
pub fn prime_factor_set_u64(n: u64) -> Result<FactorSet> {
    prime_factor_set(&BigUint::from(n))
}

const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_EXTRA_BASES: [u64; 8] = [
    41,
    43,
    47,
    0x9E37_79B9_7F4A_7C15,
    0xD1B5_4A32_D192_ED03,
    0x2545_F491_4F6C_DD1D,
    0x94D0_49BB_1331_11EB,
    0xBF58_476D_1CE4_E5B9,
];

/// Miller–Rabin.  The first twelve prime bases make the test exact below
/// 3.3 * 10^24; larger inputs get eight more fixed bases.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &MR_BASES {
        if n == &BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let witness = |a: &BigUint| -> bool {
        let a = a % n;
        if a.is_zero() || a == one || a == n_minus_one {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            return false;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_one {
                return false;
            }
        }
        true
    };
    if MR_BASES.iter().any(|&a| witness(&BigUint::from(a))) {
        return false;
    }
    let exact_below: BigUint = "3317044064679887385961981".parse().unwrap();
    if n < &exact_below {
        return true;
    }
    !MR_EXTRA_BASES.iter().any(|&a| witness(&BigUint::from(a)))
}

/// A nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}

/// Removes from `x` every prime that also divides `y`.
fn strip_common(mut x: BigUint, y: &BigUint) -> BigUint {
    loop {
        let g = x.gcd(y);
        if g.is_one() {
            return x;
        }
        x /= g;
    }
}

/// `P(a) = P(b)` for positive `a`, `b`, decided by gcds alone.
pub fn same_prime_support(a: &BigUint, b: &BigUint) -> bool {
    strip_common(a.clone(), b).is_one() && strip_common(b.clone(), a).is_one()
}

fn pow(a: u64, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(a), e as usize)
}

fn pow_plus(a: u64, e: u32) -> BigUint {
    pow(a, e) + 1u32
}

fn pow_minus(a: u64, e: u32) -> BigUint {
    pow(a, e) - 1u32
}

/// `gcd(A^m + 1, A^n + 1)`, or `gcd(A^m + 1, A^n - 1)` when `second_is_minus`.
pub fn gcd_structure(a: u64, m: u32, n: u32, second_is_minus: bool) -> Result<BigUint> {
    if a < 2 || m == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "gcd_structure requires A > 1 and m, n >= 1".into(),
        ));
    }
    let second = if second_is_minus {
        pow_minus(a, n)
    } else {
        pow_plus(a, n)
    };
    Ok(pow_plus(a, m).gcd(&second))
}

/// Whether `g` is 1, 2 or `A^gcd(m, n) + 1`.
pub fn gcd_structure_is_expected(a: u64, m: u32, n: u32, g: &BigUint) -> bool {
    g.is_one() || g == &BigUint::from(2u32) || g == &pow_plus(a, m.gcd(&n))
}

fn is_power_of_two(x: u64) -> bool {
    x != 0 && x & (x - 1) == 0
}

/// A solution of `x^u - y^v = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CatalanSolution {
    pub x: u64,
    pub u: u32,
    pub y: u64,
    pub v: u32,
}

impl fmt::Display for CatalanSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} u={} y={} v={}", self.x, self.u, self.y, self.v)
    }
}

/// All `x^u - y^v = 1` with `1 <= x <= x_max`, `1 <= y <= y_max`,
/// `2 <= u <= u_max`, `2 <= v <= v_max`.
pub fn catalan_scan(x_max: u64, y_max: u64, u_max: u32, v_max: u32) -> Vec<CatalanSolution> {
    let mut powers: HashMap<BigUint, Vec<(u64, u32)>> = HashMap::new();
    for y in 1..=y_max {
        for v in 2..=v_max {
            powers.entry(pow(y, v)).or_default().push((y, v));
        }
    }
    let mut out: Vec<CatalanSolution> = (1..=x_max)
        .into_par_iter()
        .flat_map_iter(|x| {
            let powers = &powers;
            (2..=u_max).flat_map(move |u| {
                let xu = pow(x, u);
                let hits = if xu.is_zero() {
                    Vec::new()
                } else {
                    powers.get(&(xu - 1u32)).cloned().unwrap_or_default()
                };
                hits.into_iter()
                    .map(move |(y, v)| CatalanSolution { x, u, y, v })
            })
        })
        .collect();
    out.sort();
    out
}

/// `(A, m, n)` with a prime-set equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PowerHit {
    pub a: u64,
    pub m: u32,
    pub n: u32,
}

impl fmt::Display for PowerHit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={} m={} n={}", self.a, self.m, self.n)
    }
}

fn scan_pairs<F>(a_max: u64, pairs: &[(u32, u32)], test: F) -> Vec<PowerHit>
where
    F: Fn(u64, u32, u32) -> bool + Sync,
{
    let mut out: Vec<PowerHit> = (2..=a_max)
        .into_par_iter()
        .flat_map_iter(|a| {
            let test = &test;
            pairs
                .iter()
                .filter(move |&&(m, n)| test(a, m, n))
                .map(move |&(m, n)| PowerHit { a, m, n })
        })
        .collect();
    out.sort();
    out
}

/// `P(A^m - 1) = P(A^n - 1)` for `2 <= A <= a_max`, `m_max >= m > n >= 1`.
pub fn lemma33_scan(a_max: u64, m_max: u32) -> Vec<PowerHit> {
    let pairs: Vec<_> = (1..=m_max)
        .flat_map(|m| (1..m).map(move |n| (m, n)))
        .collect();
    scan_pairs(a_max, &pairs, |a, m, n| {
        same_prime_support(&pow_minus(a, m), &pow_minus(a, n))
    })
}

/// `m = 2`, `n = 1`, `A = 2^l - 1`.
pub fn lemma33_family(h: &PowerHit) -> bool {
    h.m == 2 && h.n == 1 && is_power_of_two(h.a + 1)
}

/// Part 1: `P(A^p + 1) = P(A + 1)` for odd `3 <= p <= exp_max`, reported as
/// `(A, p, 1)`.  Part 2: `P(A^q - 1) = P(A + 1)` for even `2 <= q <= exp_max`,
/// reported as `(A, q, 1)`.
pub fn lemma34_scan(a_max: u64, exp_max: u32) -> (Vec<PowerHit>, Vec<PowerHit>) {
    let odd: Vec<_> = (3..=exp_max).step_by(2).map(|p| (p, 1)).collect();
    let even: Vec<_> = (2..=exp_max).step_by(2).map(|q| (q, 1)).collect();
    let part1 = scan_pairs(a_max, &odd, |a, p, _| {
        same_prime_support(&pow_plus(a, p), &pow_plus(a, 1))
    });
    let part2 = scan_pairs(a_max, &even, |a, q, _| {
        same_prime_support(&pow_minus(a, q), &pow_plus(a, 1))
    });
    (part1, part2)
}

/// `p = 3`, `A = 2`.
pub fn lemma34_family_1(h: &PowerHit) -> bool {
    h.a == 2 && h.m == 3
}

/// `q = 2`, `A = 2^l + 1` with `l >= 0`.
pub fn lemma34_family_2(h: &PowerHit) -> bool {
    h.m == 2 && is_power_of_two(h.a - 1)
}

/// Part 1: `P(A^m + 1) = P(A^n + 1)` with `m_max >= m > n >= 1`.
/// Part 2: `P(A^m + 1) = P(A^n - 1)` with `1 <= m, n <= m_max`.
pub fn prop34_scan(a_max: u64, m_max: u32) -> (Vec<PowerHit>, Vec<PowerHit>) {
    let ordered: Vec<_> = (1..=m_max)
        .flat_map(|m| (1..m).map(move |n| (m, n)))
        .collect();
    let all: Vec<_> = (1..=m_max)
        .flat_map(|m| (1..=m_max).map(move |n| (m, n)))
        .collect();
    let part1 = scan_pairs(a_max, &ordered, |a, m, n| {
        same_prime_support(&pow_plus(a, m), &pow_plus(a, n))
    });
    let part2 = scan_pairs(a_max, &all, |a, m, n| {
        same_prime_support(&pow_plus(a, m), &pow_minus(a, n))
    });
    (part1, part2)
}

/// `(A, m, n) = (2, 3, 1)`.
pub fn prop34_family_1(h: &PowerHit) -> bool {
    (h.a, h.m, h.n) == (2, 3, 1)
}

/// `(3, 1, 1)`, `(2, 3, 2)`, `(3, 2, 4)`, or `(2^l + 1, 1, 2)`.
pub fn prop34_family_2(h: &PowerHit) -> bool {
    matches!((h.a, h.m, h.n), (3, 1, 1) | (2, 3, 2) | (3, 2, 4))
        || (h.m == 1 && h.n == 2 && is_power_of_two(h.a - 1))
}

/// An equality between products of powers of `2^M ± 1` and `2^N ± 1`.
/// Exponents absent from the shape are 0: `p` on `2^M - 1`, `q` on
/// `2^M + 1`, `r` on `2^N - 1`, `s` on `2^N + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Lemma36Hit {
    pub big_m: u32,
    pub big_n: u32,
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub s: u32,
}

impl fmt::Display for Lemma36Hit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M={} N={} p={} q={} r={} s={}",
            self.big_m, self.big_n, self.p, self.q, self.r, self.s
        )
    }
}

/// Hits of the six shapes, indexed 0..6 for shapes (1)..(6):
///
/// 1. `(2^M-1)^p = (2^N-1)^r`, `M < N`
/// 2. `(2^M+1)^q = (2^N+1)^s`, `M > N`
/// 3. `(2^M+1)^q = (2^N-1)^r`
/// 4. `(2^M-1)^p (2^M+1)^q = (2^N-1)^r (2^N+1)^s`, `M < N`
/// 5. `(2^M-1)^p (2^M+1)^q = (2^N-1)^r`
/// 6. `(2^M-1)^p (2^M+1)^q = (2^N+1)^r`
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Lemma36Scan {
    pub shapes: [Vec<Lemma36Hit>; 6],
}

/// Enumerates the six shapes for `1 <= M, N <= m_max`, `M != N`, and every
/// exponent in `1..=exp_max`.
pub fn lemma36_scan(m_max: u32, exp_max: u32) -> Lemma36Scan {
    let exps: Vec<u32> = (1..=exp_max).collect();
    let minus: Vec<BigUint> = (0..=m_max).map(|k| pow_minus(2, k)).collect();
    let plus: Vec<BigUint> = (0..=m_max).map(|k| pow_plus(2, k)).collect();
    let bpow = |b: &BigUint, e: u32| num_traits::pow(b.clone(), e as usize);

    type Key = (u32, u32, u32);
    let index = |f: &dyn Fn(u32, u32, u32) -> Option<BigUint>| -> HashMap<BigUint, Vec<Key>> {
        let mut map: HashMap<BigUint, Vec<Key>> = HashMap::new();
        for k in 1..=m_max {
            for &e1 in &exps {
                for &e2 in &exps {
                    if let Some(v) = f(k, e1, e2) {
                        map.entry(v).or_default().push((k, e1, e2));
                    }
                }
            }
        }
        map
    };
    // Single powers use e2 = 1 only.
    let single = |base: &Vec<BigUint>| {
        let base = base.clone();
        index(&move |k, e1, e2| (e2 == 1).then(|| bpow(&base[k as usize], e1)))
    };
    let minus_pow = single(&minus);
    let plus_pow = single(&plus);
    let mixed =
        index(&|k, e1, e2| Some(bpow(&minus[k as usize], e1) * bpow(&plus[k as usize], e2)));

    let join = |lhs: &HashMap<BigUint, Vec<Key>>,
                rhs: &HashMap<BigUint, Vec<Key>>,
                keep: &dyn Fn(u32, u32) -> bool,
                build: &dyn Fn(Key, Key) -> Lemma36Hit| {
        let mut out = Vec::new();
        for (v, ls) in lhs {
            if let Some(rs) = rhs.get(v) {
                for &l in ls {
                    for &r in rs {
                        if l.0 != r.0 && keep(l.0, r.0) {
                            out.push(build(l, r));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    };
    let hit = |big_m, big_n, p, q, r, s| Lemma36Hit {
        big_m,
        big_n,
        p,
        q,
        r,
        s,
    };
    let any = |_: u32, _: u32| true;

    Lemma36Scan {
        shapes: [
            join(&minus_pow, &minus_pow, &|m, n| m < n, &|l, r| {
                hit(l.0, r.0, l.1, 0, r.1, 0)
            }),
            join(&plus_pow, &plus_pow, &|m, n| m > n, &|l, r| {
                hit(l.0, r.0, 0, l.1, 0, r.1)
            }),
            join(&plus_pow, &minus_pow, &any, &|l, r| {
                hit(l.0, r.0, 0, l.1, r.1, 0)
            }),
            join(&mixed, &mixed, &|m, n| m < n, &|l, r| {
                hit(l.0, r.0, l.1, l.2, r.1, r.2)
            }),
            join(&mixed, &minus_pow, &any, &|l, r| {
                hit(l.0, r.0, l.1, l.2, r.1, 0)
            }),
            join(&mixed, &plus_pow, &any, &|l, r| {
                hit(l.0, r.0, l.1, l.2, r.1, 0)
            }),
        ],
    }
}

/// Whether `hit` belongs to the solution family of `shape` (1-based).
/// Shapes 1 and 4 have no solutions.
pub fn lemma36_family(shape: usize, h: &Lemma36Hit) -> bool {
    match shape {
        2 => h.big_m == 3 && h.big_n == 1 && h.s == 2 * h.q,
        3 => {
            (h.big_m == 3 && h.big_n == 2 && h.r == 2 * h.q)
                || (h.big_m == 1 && h.big_n == 2 && h.q == h.r)
        }
        5 => h.big_n == 2 * h.big_m && h.p == h.q && h.q == h.r,
        6 => h.big_m == 1 && h.big_n == 3 && h.q == 2 * h.r,
        _ => false,
    }
}

/// The pair families for which `K_m ∩ K_n` may be nonempty.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PairFamily {
    ThreeOne,
    ThreeTwo,
    Double,
}

impl fmt::Display for PairFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairFamily::ThreeOne => "(3,1)",
            PairFamily::ThreeTwo => "(3,2)",
            PairFamily::Double => "(2n,n)",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PairVerdict {
    pub m: u32,
    pub n: u32,
    pub admissible: bool,
    pub family: Option<PairFamily>,
}

impl fmt::Display for PairVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} n={} admissible={}",
            self.m, self.n, self.admissible
        )?;
        if let Some(fam) = self.family {
            write!(f, " family={fam}")?;
        }
        Ok(())
    }
}

/// Necessary condition on `(m, n)`, `m > n >= 1`, for a knot to be both an
/// m-SR-knot and an n-SR-knot.
pub fn admissible_pair(m: u32, n: u32) -> Result<PairVerdict> {
    if n == 0 || m <= n {
        return Err(Error::InvalidArgument(format!(
            "admissible_pair requires m > n >= 1, got m={m} n={n}"
        )));
    }
    let family = match (m, n) {
        (3, 1) => Some(PairFamily::ThreeOne),
        (3, 2) => Some(PairFamily::ThreeTwo),
        _ if m == 2 * n => Some(PairFamily::Double),
        _ => None,
    };
    Ok(PairVerdict {
        m,
        n,
        admissible: family.is_some(),
        family,
    })
}

/// Exponents `(a, b)` with `det = (2^m - 1)^a (2^m + 1)^b`.  For `m = 1` the
/// first factor is 1 and `a` is taken to be 0.
pub fn det_constraint(det: &BigUint, m: u32) -> Option<(u32, u32)> {
    if det.is_zero() || m == 0 {
        return None;
    }
    let lo = pow_minus(2, m);
    let hi = pow_plus(2, m);
    let log_of = |mut x: BigUint, base: &BigUint| -> Option<u32> {
        let mut k = 0;
        while !x.is_one() {
            let (q, r) = x.div_rem(base);
            if !r.is_zero() {
                return None;
            }
            x = q;
            k += 1;
        }
        Some(k)
    };
    let mut rest = det.clone();
    let mut a = 0;
    loop {
        if let Some(b) = log_of(rest.clone(), &hi) {
            return Some((a, b));
        }
        if lo.is_one() {
            return None;
        }
        let (q, r) = rest.div_rem(&lo);
        if !r.is_zero() {
            return None;
        }
        rest = q;
        a += 1;
    }
}

/// Convenience for `u64` determinants.
pub fn det_constraint_u64(det: u64, m: u32) -> Option<(u32, u32)> {
    det_constraint(&BigUint::from(det), m)
}
