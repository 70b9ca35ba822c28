use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use srknot::invariants::symmetry_check;
use srknot::laurent::LaurentPoly;
use srknot::srpoly::{
    f_factor, f_span, factor_span, gh_factors, product_formula, F_factor, SRDecomposition, SRParams,
};

fn grid() -> impl Iterator<Item = SRParams> {
    SRParams::grid(6, 6)
}

#[test]
fn factor_is_reciprocal() {
    for x in grid() {
        assert!(symmetry_check(&F_factor(x)), "{x}");
    }
}

#[test]
fn raw_product_at_one() {
    let one = BigInt::from(1);
    for x in grid() {
        let f = f_factor(x);
        let raw = &f * &f.substitute_inverse();
        assert_eq!(raw.eval_integer(&one).unwrap(), one, "{x}");
        assert_eq!(F_factor(x).eval(&one).abs(), one, "{x}");
    }
}

#[test]
fn closed_form_spans() {
    for x in grid() {
        assert_eq!(f_span(x), f_factor(x).span(), "{x}");
        assert_eq!(factor_span(x), F_factor(x).degree(), "{x}");
    }
}

#[test]
fn mirror_gives_same_factor() {
    for x in grid() {
        assert_eq!(F_factor(x), F_factor(x.mirror()), "{x}");
        assert!(f_factor(x)
            .substitute_inverse()
            .equal_up_to_unit(&f_factor(x.mirror())));
    }
}

#[test]
fn gh_reconstructs_factor() {
    // f(t) f(t^-1) ≐ g h up to the unit factors dropped by g and h.
    for x in grid() {
        let (g, h) = gh_factors(x);
        assert!(
            (&g * &h).equal_up_to_unit(F_factor(x).poly()),
            "{x}: g={g} h={h}"
        );
    }
}

#[test]
fn unit_factors() {
    for x in grid() {
        let unit = F_factor(x).poly().is_one();
        let expected = x == SRParams::new(1, 0, 0).unwrap() || x == SRParams::new(1, 0, 1).unwrap();
        assert_eq!(unit, expected, "{x}");
    }
}

fn params() -> impl Strategy<Value = SRParams> {
    (1u32..=4, -4i64..=4)
        .prop_flat_map(|(m, l)| (Just(m), Just(l), 0..=m))
        .prop_map(|(m, l, p)| SRParams::new(m, l, p).unwrap())
}

proptest! {
    #[test]
    fn product_is_multiplicative(xs in prop::collection::vec(params(), 0..4)) {
        let d = SRDecomposition::new(xs.clone());
        let direct = xs
            .iter()
            .fold(LaurentPoly::one(), |acc, &x| &acc * F_factor(x).poly());
        prop_assert_eq!(d.polynomial(), direct.normalize().unwrap());
        let base: LaurentPoly = "1 - t + t^2".parse().unwrap();
        let with_base = product_formula(&base, &d).unwrap();
        prop_assert!(with_base.poly().equal_up_to_unit(&(&base * &direct)));
    }

    #[test]
    fn decomposition_text_round_trip(xs in prop::collection::vec(params(), 0..4)) {
        let d = SRDecomposition::new(xs);
        prop_assert_eq!(d.to_string().parse::<SRDecomposition>().unwrap(), d);
    }
}
