use ffzeta_core::scalar::{
    base_q_digits, bracket_d, carlitz_gamma, BiPoly, Field, Poly, RatFunc, Var,
};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![2u32, 3, 4, 5, 7, 9]).prop_map(|q| Field::new(q).unwrap())
}

fn poly_in(f: Field, max_len: usize) -> impl Strategy<Value = Poly> {
    let q = f.q();
    prop::collection::vec(0..q, 0..max_len).prop_map(move |c| Poly::new(&f, Var::Theta, c))
}

fn field_and_polys(n: usize, max_len: usize) -> impl Strategy<Value = (Field, Vec<Poly>)> {
    field_strategy().prop_flat_map(move |f| {
        let polys = prop::collection::vec(poly_in(f.clone(), max_len), n);
        (Just(f), polys)
    })
}

/// Schoolbook product written independently of the library routine.
fn schoolbook(a: &Poly, b: &Poly) -> Poly {
    let f = a.field();
    let mut out = vec![0u32; a.coeffs().len() + b.coeffs().len()];
    for (i, &x) in a.coeffs().iter().enumerate() {
        for (j, &y) in b.coeffs().iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    Poly::new(f, Var::Theta, out)
}

proptest! {
    #[test]
    fn product_matches_schoolbook((_f, ps) in field_and_polys(2, 40)) {
        prop_assert_eq!(ps[0].mul(&ps[1]), schoolbook(&ps[0], &ps[1]));
    }

    #[test]
    fn ring_axioms((_f, ps) in field_and_polys(3, 12)) {
        let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
        prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        prop_assert_eq!(a.mul(b), b.mul(a));
        prop_assert_eq!(a.sub(a), Poly::zero(a.field(), Var::Theta));
    }

    #[test]
    fn twist_is_multiplicative((_f, ps) in field_and_polys(2, 10), n in 0u32..3) {
        let (a, b) = (&ps[0], &ps[1]);
        prop_assert_eq!(
            a.mul(b).frobenius_twist(n),
            a.frobenius_twist(n).mul(&b.frobenius_twist(n))
        );
        prop_assert_eq!(a.frobenius_twist(n), a.pow((a.field().q() as u64).pow(n)));
    }

    #[test]
    fn division_identity((_f, ps) in field_and_polys(2, 20)) {
        let (a, b) = (&ps[0], &ps[1]);
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(b).unwrap();
        prop_assert_eq!(q.mul(b).add(&r), a.clone());
        prop_assert!(r.deg_i64() < b.deg_i64());
    }

    #[test]
    fn ratfunc_reduction_idempotent((_f, ps) in field_and_polys(2, 8)) {
        let (a, b) = (&ps[0], &ps[1]);
        prop_assume!(!b.is_zero());
        let r = RatFunc::new(a.clone(), b.clone()).unwrap();
        let again = RatFunc::new(r.num().clone(), r.den().clone()).unwrap();
        prop_assert_eq!(&again, &r);
        prop_assert!(r.den().leading() == 1);
        prop_assert!(r.num().gcd(r.den()).is_one() || r.is_zero());
    }

    #[test]
    fn bipoly_twist_multiplicative((f, ps) in field_and_polys(4, 5), n in 0u32..3) {
        let a = BiPoly::new(&f, vec![ps[0].clone(), ps[1].clone()]);
        let b = BiPoly::new(&f, vec![ps[2].clone(), ps[3].clone()]);
        prop_assert_eq!(
            a.mul(&b).frobenius_twist(n),
            a.frobenius_twist(n).mul(&b.frobenius_twist(n))
        );
    }
}

/// Γ_n recomputed from an independent digit routine (repeated division).
#[test]
fn gamma_matches_digit_oracle() {
    for q in [2u32, 3, 4, 5] {
        let f = Field::new(q).unwrap();
        for n in 1..60i64 {
            let mut m = n - 1;
            let mut i = 0;
            let mut want = Poly::one(&f, Var::Theta);
            while m > 0 {
                let digit = m % q as i64;
                for _ in 0..digit {
                    want = want.mul(&bracket_d(&f, i));
                }
                m /= q as i64;
                i += 1;
            }
            assert_eq!(carlitz_gamma(&f, n).unwrap(), want, "q={q} n={n}");
        }
        assert_eq!(base_q_digits(0, q), Vec::<u32>::new());
    }
}

#[test]
fn twist_of_known_bipoly() {
    let f = Field::new(3).unwrap();
    let x = BiPoly::from_theta(&Poly::new(&f, Var::Theta, vec![1, 1])).mul(&BiPoly::t(&f));
    assert_eq!(
        x.frobenius_twist(1).to_string(),
        "(θ^3 + 1)·t"
    );
}
