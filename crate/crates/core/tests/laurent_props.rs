use ffzeta_core::scalar::{Field, Poly, RatFunc, Var};
use ffzeta_core::LaurentApprox;
use proptest::prelude::*;

fn rat_in(f: Field) -> impl Strategy<Value = RatFunc> {
    let q = f.q();
    (
        prop::collection::vec(0..q, 0..7),
        prop::collection::vec(0..q, 1..7),
    )
        .prop_filter_map("nonzero denominator", move |(n, d)| {
            let num = Poly::new(&f, Var::Theta, n);
            let den = Poly::new(&f, Var::Theta, d);
            RatFunc::new(num, den).ok()
        })
}

fn field_and_rats(n: usize) -> impl Strategy<Value = (Field, Vec<RatFunc>)> {
    prop::sample::select(vec![2u32, 3, 4, 5])
        .prop_map(|q| Field::new(q).unwrap())
        .prop_flat_map(move |f| (Just(f.clone()), prop::collection::vec(rat_in(f), n)))
}

const N: i64 = 40;

proptest! {
    #[test]
    fn embedding_respects_addition((_f, r) in field_and_rats(2)) {
        let a = LaurentApprox::from_ratfunc(&r[0], N);
        let b = LaurentApprox::from_ratfunc(&r[1], N);
        let sum = a.add(&b);
        let want = LaurentApprox::from_ratfunc(&r[0].add(&r[1]), sum.precision());
        prop_assert!(sum.agrees_with(&want));
    }

    #[test]
    fn embedding_respects_products((_f, r) in field_and_rats(2)) {
        let a = LaurentApprox::from_ratfunc(&r[0], N);
        let b = LaurentApprox::from_ratfunc(&r[1], N);
        let prod = a.mul(&b);
        if !a.is_exact_zero() && !b.is_exact_zero() {
            let want = a.val_bound() + b.precision();
            prop_assert_eq!(prod.precision(), want.min(b.val_bound() + a.precision()));
        }
        let exact = LaurentApprox::from_ratfunc(&r[0].mul(&r[1]), prod.precision().min(4 * N));
        prop_assert!(prod.agrees_with(&exact));
    }

    #[test]
    fn embedding_respects_inverse((_f, r) in field_and_rats(1)) {
        prop_assume!(!r[0].is_zero());
        let a = LaurentApprox::from_ratfunc(&r[0], N);
        let inv = a.inv().unwrap();
        let v = a.valuation().unwrap();
        prop_assert_eq!(inv.precision(), N - 2 * v);
        let want = LaurentApprox::from_ratfunc(&r[0].inv().unwrap(), inv.precision());
        prop_assert_eq!(inv.clone(), want);
        prop_assert!(inv.inv().unwrap().agrees_with(&a));
    }

    #[test]
    fn ultrametric((_f, r) in field_and_rats(2)) {
        let a = LaurentApprox::from_ratfunc(&r[0], N);
        let b = LaurentApprox::from_ratfunc(&r[1], N);
        let s = a.add(&b);
        if let (Some(va), Some(vb)) = (a.valuation(), b.valuation()) {
            prop_assert!(s.val_bound() >= va.min(vb));
            if va != vb {
                prop_assert_eq!(s.valuation(), Some(va.min(vb)));
            }
        }
    }

    #[test]
    fn qth_power_is_repeated_product((f, r) in field_and_rats(1)) {
        let a = LaurentApprox::from_ratfunc(&r[0], N);
        let mut prod = a.clone();
        for _ in 1..f.q() {
            prod = prod.mul(&a);
        }
        let fr = a.qth_power(1);
        prop_assert!(fr.agrees_with(&prod));
        prop_assert!(fr.precision() >= prod.precision());
    }

    #[test]
    fn precision_soundness((_f, r) in field_and_rats(3)) {
        // (a·b + c)^{-1}-free pipeline evaluated at N and 2N agrees through N.
        let run = |n: i64| {
            let a = LaurentApprox::from_ratfunc(&r[0], n);
            let b = LaurentApprox::from_ratfunc(&r[1], n);
            let c = LaurentApprox::from_ratfunc(&r[2], n);
            a.mul(&b).add(&c).qth_power(1)
        };
        let lo = run(N);
        let hi = run(2 * N);
        prop_assert!(lo.agrees_with(&hi));
        prop_assert!(hi.precision() >= lo.precision());
    }
}

#[test]
fn geometric_series_char_two() {
    let f = Field::new(2).unwrap();
    let r = RatFunc::parse(&f, "1/(theta + theta^2)").unwrap();
    let a = LaurentApprox::from_ratfunc(&r, 4);
    assert_eq!(a.to_string(), "θ^-2 + θ^-3 + θ^-4 + O(θ^-5)");
}
