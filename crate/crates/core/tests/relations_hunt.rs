use ffzeta_core::indices::independent_family;
use ffzeta_core::relations::{
    find_relations, hunt, independence_report, residual, verify_relation, Evaluator, Label,
    RelationCertificate, ValueVector, Verdict,
};
use ffzeta_core::scalar::{bracket, Field, Poly, Var};
use ffzeta_core::zeta::carlitz_period_power;
use ffzeta_core::{Error, Index, LaurentApprox};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn fq(q: u32) -> Field {
    Field::new(q).unwrap()
}

fn random_series(f: &Field, rng: &mut StdRng, prec: i64) -> LaurentApprox {
    let val = rng.gen_range(-3..4);
    let mut digits: Vec<u32> = (val..=prec).map(|_| rng.gen_range(0..f.q())).collect();
    digits[0] = rng.gen_range(1..f.q());
    LaurentApprox::from_digits(f, val, prec, &digits)
}

fn random_poly(f: &Field, rng: &mut StdRng, d: usize) -> Poly {
    let deg = rng.gen_range(0..=d);
    Poly::new(f, Var::Theta, (0..=deg).map(|_| rng.gen_range(0..f.q())).collect())
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// Independent normalization: scale so the first nonzero polynomial is monic.
fn normalized(f: &Field, cs: &[Poly]) -> Vec<Vec<u32>> {
    let lead = cs.iter().find(|c| !c.is_zero()).unwrap().leading();
    let inv = f.inv(lead).unwrap();
    cs.iter().map(|c| c.scale(inv).into_coeffs()).collect()
}

#[test]
fn planted_relations_are_recovered_exactly() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for instance in 0..20 {
        let q = [2, 3, 4, 5][instance % 4];
        let f = fq(q);
        let d = 2;
        let hi = 160;
        let v1 = random_series(&f, &mut rng, hi + d as i64 + 3);
        let v2 = random_series(&f, &mut rng, hi + d as i64 + 3);
        let (c1, c2) = loop {
            let c1 = random_poly(&f, &mut rng, d);
            let c2 = random_poly(&f, &mut rng, d);
            if !(c1.is_zero() && c2.is_zero()) {
                break (c1, c2);
            }
        };
        let v3 = LaurentApprox::from_poly(&c1, hi + d as i64 + 6)
            .mul(&v1)
            .add(&LaurentApprox::from_poly(&c2, hi + d as i64 + 6).mul(&v2));
        if v3.is_zero_to_precision() {
            continue;
        }
        let full = ValueVector::at_precision(labels(3), vec![v1, v2, v3], hi).unwrap();
        let n = hi / 2;
        let low = ValueVector::at_precision(labels(3), full.values().to_vec(), n).unwrap();
        let certs = find_relations(&low, d, n).unwrap();
        let minus_one = Poly::constant(&f, Var::Theta, f.neg(1));
        let want = normalized(&f, &[c1.clone(), c2.clone(), minus_one]);
        assert_eq!(certs.len(), 1, "instance {instance}");
        assert_eq!(certs[0].coeffs, want, "instance {instance}");
        assert!(certs[0].residual_val > n - d as i64);
        assert!(verify_relation(&full, &certs[0]).unwrap(), "instance {instance}");
    }
}

#[test]
fn random_values_have_no_relations() {
    let mut rng = StdRng::seed_from_u64(7);
    for q in [2, 3, 5] {
        let f = fq(q);
        for _ in 0..20 {
            let vals: Vec<LaurentApprox> = (0..3).map(|_| random_series(&f, &mut rng, 120)).collect();
            let v = ValueVector::at_precision(labels(3), vals.clone(), 60).unwrap();
            assert!(find_relations(&v, 2, 60).unwrap().is_empty());
            // a random coefficient vector does not survive at 2N
            let full = ValueVector::at_precision(labels(3), vals, 120).unwrap();
            let cert = RelationCertificate {
                labels: labels(3),
                coeffs: (0..3).map(|_| random_poly(&f, &mut rng, 2).into_coeffs()).collect(),
                residual_val: 0,
                q,
                prec: 60,
                deg_bound: 2,
            };
            if !cert.is_zero() {
                assert!(!verify_relation(&full, &cert).unwrap());
            }
        }
    }
}

#[test]
fn verification_preconditions() {
    let f = fq(3);
    let mut rng = StdRng::seed_from_u64(11);
    let v = ValueVector::at_precision(
        labels(2),
        vec![random_series(&f, &mut rng, 80), random_series(&f, &mut rng, 80)],
        80,
    )
    .unwrap();
    let mut cert = RelationCertificate {
        labels: labels(2),
        coeffs: vec![vec![], vec![0]],
        residual_val: 0,
        q: 3,
        prec: 40,
        deg_bound: 0,
    };
    assert!(matches!(verify_relation(&v, &cert), Err(Error::Domain(_))));
    cert.coeffs = vec![vec![1], vec![1]];
    cert.prec = 50;
    assert!(verify_relation(&v, &cert).is_err());
}

#[test]
fn carlitz_log_equals_zeta_one() {
    for q in [2, 3] {
        let f = fq(q);
        let ev = Evaluator::new(&f);
        let ls: Vec<Label> = ["zeta:1", "log:1"].iter().map(|s| ev.parse(s).unwrap()).collect();
        let out = hunt(&ev, &ls, 0, 60).unwrap();
        assert_eq!(out.certificates.len(), 1);
        assert_eq!(out.certificates[0].coeffs, vec![vec![1], vec![f.neg(1)]]);
        assert_eq!(out.discarded, 0);
    }
}

#[test]
fn even_zeta_is_rational_multiple_of_period_power() {
    let f = fq(3);
    let ev = Evaluator::new(&f);
    let ls: Vec<Label> = ["zeta:2", "pi:1"].iter().map(|s| ev.parse(s).unwrap()).collect();
    let out = hunt(&ev, &ls, 3, 150).unwrap();
    assert_eq!(out.certificates.len(), 1);
    // oracle: Carlitz's evaluation [1]·ζ_A(q−1) + π̃^{q−1} = 0
    let one = bracket(&f, 1);
    let want = normalized(&f, &[one.clone(), Poly::one(&f, Var::Theta)]);
    assert_eq!(out.certificates[0].coeffs, want);
    let z = ev.zeta().mzv(&Index::new(vec![2]).unwrap(), 400).unwrap();
    let pi = carlitz_period_power(&f, 1, 400).unwrap();
    let r = LaurentApprox::from_poly(&one, 400).mul(&z).add(&pi);
    assert!(r.is_zero_to_precision());
}

#[test]
fn weight_three_depth_two_pair_is_free() {
    let f = fq(3);
    let ev = Evaluator::new(&f);
    let ls: Vec<Label> = ["zeta:3", "zeta:2,1"].iter().map(|s| ev.parse(s).unwrap()).collect();
    let out = hunt(&ev, &ls, 4, 150).unwrap();
    assert!(out.certificates.is_empty());
    assert_eq!(out.discarded, 0);
}

#[test]
fn stuffle_product_is_found() {
    let f = fq(3);
    let ev = Evaluator::new(&f);
    let ls: Vec<Label> = ["zeta:3", "zeta:1,2", "zeta:2,1", "zeta:1*zeta:2"]
        .iter()
        .map(|s| ev.parse(s).unwrap())
        .collect();
    let out = hunt(&ev, &ls, 1, 100).unwrap();
    assert_eq!(out.certificates.len(), 1);
    let c = &out.certificates[0];
    assert!(c.coeffs[3].iter().any(|&x| x != 0));
    // the product coefficient is a constant: the relation is over F_p
    assert!(c.coeffs.iter().all(|p| p.len() <= 1));
    let v = ValueVector::new(
        c.labels.clone(),
        ls.iter().map(|l| ev.evaluate(l, 200).unwrap()).collect(),
    )
    .unwrap();
    assert!(residual(&v, &c.polys(&f).unwrap()).unwrap().is_zero_to_precision());
}

#[test]
fn reports_on_independent_families() {
    let f = fq(3);
    let ev = Evaluator::new(&f);
    let fam = independent_family(5, 2, 3).unwrap();
    let r = independence_report(&ev, &fam, 4, 150).unwrap();
    assert!(r.g_independent);
    assert_eq!(r.verdict, Verdict::Consistent);
    let json = serde_json::to_value(&r).unwrap();
    for key in ["family", "q", "D", "N", "g_images", "certificates", "verdict"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["verdict"], "consistent");

    let single = independence_report(&ev, &[Index::new(vec![4]).unwrap()], 0, 40).unwrap();
    assert_eq!(single.verdict, Verdict::Consistent);

    // a family that is not g-independent, with a genuine relation
    let dup = vec![Index::new(vec![2, 1]).unwrap(), Index::new(vec![2, 1]).unwrap()];
    let r = independence_report(&ev, &dup, 0, 40).unwrap();
    assert_eq!(r.verdict, Verdict::NotApplicable);
    assert_eq!(r.certificates.len(), 1);
}

#[test]
fn report_on_the_weight_six_family() {
    let f = fq(5);
    let ev = Evaluator::new(&f);
    let fam: Vec<Index> = ["6", "1,2,2,1", "2,2,2"].iter().map(|s| s.parse().unwrap()).collect();
    let r = independence_report(&ev, &fam, 4, 150).unwrap();
    assert!(r.g_independent);
    assert_eq!(r.verdict, Verdict::Consistent, "{:?}", r.certificates);
}
