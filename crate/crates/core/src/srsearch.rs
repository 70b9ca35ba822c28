//! Deciding whether a polynomial is a product of simple-ribbon factors.
//!
//! [`decompose`] enumerates every multiset of factors `F(t; m, l, p)` whose
//! product is the given normal form, by exhaustive exact division over a
//! finite candidate set.  The set is complete because the span of
//! `f(t; m, l, p)` is at least `m - 1`, at least `1 + |p + l|` when
//! `p + l < 0`, and equal to `p + l` when `p + l > m` (see
//! [`crate::srpoly::f_span`]), and spans add under multiplication.
//!
//! Factors with `F ≐ 1` (the parameters `(1, 0, 0)` and `(1, 0, 1)`) are
//! never reported: they can be inserted any number of times.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::invariants::{delta2, is_pm_power_product, symmetry_check};
use crate::laurent::{LaurentPoly, NormalForm};
use crate::srpoly::{factor_span, gh_factors, F_factor, SRDecomposition, SRParams};

/// Why a polynomial cannot be the Alexander polynomial of a simple-ribbon knot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Obstruction {
    /// `δ₂` is not a product of integers `2^s ± 1`.
    Delta2Factor,
    /// No product of factors `F(t; m, l, p)` equals the polynomial.
    NoDecomposition,
    /// The polynomial is not reciprocal.
    Asymmetric,
    /// `δ₂ = 1` but the polynomial is neither 1 nor a power of
    /// `1 - 6t + 11t^2 - 6t^3 + t^4`.
    Delta2OneForm,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::Delta2Factor => "DELTA2_FACTOR",
            Obstruction::NoDecomposition => "NO_DECOMPOSITION",
            Obstruction::Asymmetric => "ASYMMETRIC",
            Obstruction::Delta2OneForm => "DELTA2_ONE_FORM",
        })
    }
}

/// Outcome of [`classify`].
///
/// `PolyCompatible` only says the polynomial has the product shape; it does
/// not certify that a knot with this polynomial is simple-ribbon.
/// `NotSr` is a proof that no simple-ribbon knot has this polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SRClassification {
    PolyCompatible(Vec<SRDecomposition>),
    NotSr(Obstruction),
}

impl SRClassification {
    pub fn is_not_sr(&self) -> bool {
        matches!(self, SRClassification::NotSr(_))
    }
}

/// One distinct polynomial `F` together with every parameter triple producing it.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub poly: NormalForm,
    pub aliases: Vec<SRParams>,
    span: u64,
    at_minus_one: BigInt,
    at_two: BigInt,
    at_three: BigInt,
}

/// All non-unit factors `F(t; m, l, p)` of span at most `max_span`, ordered
/// by span and then by polynomial.
#[derive(Clone, Debug)]
pub struct CandidateTable {
    max_span: u64,
    candidates: Vec<Candidate>,
}

impl CandidateTable {
    pub fn new(max_span: u64) -> Self {
        let half = (max_span / 2) as i64;
        let max_m = (half + 1) as u32;
        let mut grouped: BTreeMap<NormalForm, Vec<SRParams>> = BTreeMap::new();
        for m in 1..=max_m {
            for p in 0..=m {
                for s in -half..=half + 1 {
                    let params = SRParams::new(m, s - p as i64, p).expect("p <= m");
                    let span = factor_span(params);
                    if span < 2 || span > max_span {
                        continue;
                    }
                    grouped.entry(F_factor(params)).or_default().push(params);
                }
            }
        }
        let mut candidates: Vec<Candidate> = grouped
            .into_iter()
            .map(|(poly, mut aliases)| {
                aliases.sort();
                Candidate {
                    span: poly.degree(),
                    at_minus_one: poly.eval(&BigInt::from(-1)),
                    at_two: poly.eval(&BigInt::from(2)),
                    at_three: poly.eval(&BigInt::from(3)),
                    poly,
                    aliases,
                }
            })
            .collect();
        candidates.sort_by(|a, b| a.span.cmp(&b.span).then_with(|| a.poly.cmp(&b.poly)));
        Self {
            max_span,
            candidates,
        }
    }

    pub fn max_span(&self) -> u64 {
        self.max_span
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    /// Every decomposition of `dp`, in canonical order.  Panics if `dp` is
    /// wider than the table.
    pub fn decompose(&self, dp: &NormalForm) -> Vec<SRDecomposition> {
        assert!(
            dp.degree() <= self.max_span,
            "candidate table of span {} cannot decompose a polynomial of span {}",
            self.max_span,
            dp.degree()
        );
        let mut found = Vec::new();
        let mut stack = Vec::new();
        self.search(dp, 0, &mut stack, &mut found);

        let mut out = BTreeSet::new();
        for idx_multiset in found {
            self.expand_aliases(&idx_multiset, &mut out);
        }
        out.into_iter().collect()
    }

    fn search(
        &self,
        rem: &NormalForm,
        start: usize,
        stack: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if rem.poly().is_one() {
            found.push(stack.clone());
            return;
        }
        let span = rem.degree();
        let vals = [
            rem.eval(&BigInt::from(-1)),
            rem.eval(&BigInt::from(2)),
            rem.eval(&BigInt::from(3)),
        ];
        for (i, c) in self.candidates.iter().enumerate().skip(start) {
            if c.span > span {
                break;
            }
            if !divides(&c.at_minus_one, &vals[0])
                || !divides(&c.at_two, &vals[1])
                || !divides(&c.at_three, &vals[2])
            {
                continue;
            }
            let Some(q) = rem.poly().divide_exact(c.poly.poly()) else {
                continue;
            };
            let q = q.normalize().expect("quotient of nonzero polynomials");
            stack.push(i);
            self.search(&q, i, stack, found);
            stack.pop();
        }
    }

    /// Turns a multiset of candidate indices into every multiset of parameter
    /// triples it stands for.
    fn expand_aliases(&self, idx: &[usize], out: &mut BTreeSet<SRDecomposition>) {
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &i in idx {
            match groups.last_mut() {
                Some((j, k)) if *j == i => *k += 1,
                _ => groups.push((i, 1)),
            }
        }
        let per_group: Vec<Vec<Vec<SRParams>>> = groups
            .iter()
            .map(|&(i, k)| multisets(&self.candidates[i].aliases, k))
            .collect();
        let mut acc: Vec<Vec<SRParams>> = vec![Vec::new()];
        for choices in per_group {
            acc = acc
                .iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(c);
                        v
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(SRDecomposition::new));
    }
}

fn divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        n.is_multiple_of(d)
    }
}

/// All size-`k` multisets drawn from `items`, as non-decreasing sequences.
fn multisets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        for mut rest in multisets(&items[i..], k - 1) {
            rest.insert(0, x.clone());
            out.push(rest);
        }
    }
    out
}

/// Every multiset of fusion parameters whose product formula (with trivial
/// base) gives `dp`; empty when none exists.
pub fn decompose(dp: &NormalForm) -> Vec<SRDecomposition> {
    CandidateTable::new(dp.degree()).decompose(dp)
}

/// `1 - 6t + 11t^2 - 6t^3 + t^4`.
pub fn lemma13_quartic() -> LaurentPoly {
    LaurentPoly::from_terms([(0, 1), (1, -6), (2, 11), (3, -6), (4, 1)])
}

/// Whether `dp` is `1` or a power of the quartic.
pub fn is_lemma13_form(dp: &NormalForm) -> bool {
    let span = dp.degree();
    span.is_multiple_of(4) && dp.poly() == &lemma13_quartic().pow((span / 4) as u32)
}

/// Runs the obstruction pipeline and, if nothing fires, the exhaustive search.
pub fn classify(dp: &NormalForm) -> SRClassification {
    classify_with(dp, None)
}

/// Like [`classify`], reusing a prebuilt candidate table when it is wide enough.
pub fn classify_with(dp: &NormalForm, table: Option<&CandidateTable>) -> SRClassification {
    if !symmetry_check(dp) {
        return SRClassification::NotSr(Obstruction::Asymmetric);
    }
    let d2 = delta2(dp);
    // δ₂ = 0 comes from a factor 2^0 - 1 and is always compatible.
    if !d2.is_zero() && is_pm_power_product(d2.value()).is_none() {
        return SRClassification::NotSr(Obstruction::Delta2Factor);
    }
    if d2.value().is_one() && !is_lemma13_form(dp) {
        return SRClassification::NotSr(Obstruction::Delta2OneForm);
    }
    let decompositions = match table {
        Some(t) if t.max_span() >= dp.degree() => t.decompose(dp),
        _ => decompose(dp),
    };
    if decompositions.is_empty() {
        SRClassification::NotSr(Obstruction::NoDecomposition)
    } else {
        SRClassification::PolyCompatible(decompositions)
    }
}

/// Shape of a product `g·h` for a factor with `δ₂ = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Lemma13Form {
    /// `≐ 1`.
    Unit,
    /// `≐ 1 - 6t + 11t^2 - 6t^3 + t^4`.
    Quartic,
    Other,
}

pub fn lemma13_form_of(poly: &LaurentPoly) -> Lemma13Form {
    if poly.is_unit() {
        Lemma13Form::Unit
    } else if poly.equal_up_to_unit(&lemma13_quartic()) {
        Lemma13Form::Quartic
    } else {
        Lemma13Form::Other
    }
}

/// Every parameter triple with `m <= max_m`, `|l| <= max_abs_l` whose factor
/// has `δ₂ = 1`, paired with `g·h`.
pub fn lemma13_enumerate(max_m: u32, max_abs_l: i64) -> Vec<(SRParams, LaurentPoly)> {
    SRParams::grid(max_m, max_abs_l)
        .filter(|&x| delta2(&F_factor(x)).value().is_one())
        .map(|x| {
            let (g, h) = gh_factors(x);
            (x, &g * &h)
        })
        .collect()
}
