//! L_d, D_i, [k] and the Carlitz factorial Γ_n.

use super::field::Field;
use super::poly::{qpow, Poly, Var};
use crate::error::{Error, Result};

/// [k] = θ^{q^k} − θ.
pub fn bracket(field: &Field, k: u32) -> Poly {
    let x = Poly::x(field, Var::Theta);
    x.frobenius_twist(k).sub(&x)
}

/// L_d = ∏_{i=1..d} (θ − θ^{q^i}); L_0 = 1.
pub fn bracket_l(field: &Field, d: u32) -> Poly {
    (1..=d).fold(Poly::one(field, Var::Theta), |acc, i| {
        acc.mul(&bracket(field, i).neg())
    })
}

/// deg L_d = q + q^2 + … + q^d.
pub fn bracket_l_degree(q: u32, d: u32) -> i64 {
    (1..=d).map(|i| (q as i64).pow(i)).sum()
}

/// D_i = ∏_{j=0..i−1} (θ^{q^i} − θ^{q^j}); D_0 = 1.
///
/// Built from D_i = D_{i−1}^q · [i].
pub fn bracket_d(field: &Field, i: u32) -> Poly {
    (1..=i).fold(Poly::one(field, Var::Theta), |acc, j| {
        acc.frobenius_twist(1).mul(&bracket(field, j))
    })
}

/// Base-q digits of n, least significant first.
pub fn base_q_digits(mut n: u64, q: u32) -> Vec<u32> {
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % q as u64) as u32);
        n /= q as u64;
    }
    out
}

/// Γ_n = ∏ D_i^{n_i} where n − 1 = Σ n_i q^i.
pub fn carlitz_gamma(field: &Field, n: i64) -> Result<Poly> {
    if n < 1 {
        return Err(Error::InvalidIndex(format!(
            "Carlitz gamma needs n ≥ 1, got {n}"
        )));
    }
    let mut acc = Poly::one(field, Var::Theta);
    for (i, &d) in base_q_digits(n as u64 - 1, field.q()).iter().enumerate() {
        if d > 0 {
            acc = acc.mul(&bracket_d(field, i as u32).pow(d as u64));
        }
    }
    Ok(acc)
}

/// deg Γ_n = Σ n_i · i · q^i.
pub fn carlitz_gamma_degree(q: u32, n: u64) -> i64 {
    base_q_digits(n.saturating_sub(1), q)
        .iter()
        .enumerate()
        .map(|(i, &d)| d as i64 * i as i64 * qpow(q, i as u32) as i64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(q: u32) -> Field {
        Field::new(q).unwrap()
    }
    fn th(f: &Field, c: &[u32]) -> Poly {
        Poly::new(f, Var::Theta, c.to_vec())
    }

    #[test]
    fn small_values() {
        let f2 = fq(2);
        assert!(bracket_l(&f2, 0).is_one());
        assert_eq!(bracket_l(&f2, 1), th(&f2, &[0, 1, 1]));
        assert!(bracket_d(&f2, 0).is_one());
        assert_eq!(bracket_d(&f2, 1), th(&f2, &[0, 1, 1]));
        // D_2 = (θ^4 + θ)(θ^4 + θ^2) at q = 2
        let want = th(&f2, &[0, 1, 0, 0, 1]).mul(&th(&f2, &[0, 0, 1, 0, 1]));
        assert_eq!(bracket_d(&f2, 2), want);
        let f3 = fq(3);
        let l2 = th(&f3, &[0, 1, 0, 2]).mul(&th(&f3, &[0, 1, 0, 0, 0, 0, 0, 0, 0, 2]));
        assert_eq!(bracket_l(&f3, 2), l2);
        assert_eq!(l2.degree(), Some(12));
    }

    #[test]
    fn degrees() {
        for q in [2, 3, 4, 5] {
            let f = fq(q);
            for d in 0..=4 {
                assert_eq!(bracket_l(&f, d).deg_i64(), bracket_l_degree(q, d));
                assert_eq!(bracket_d(&f, d).deg_i64(), d as i64 * (q as i64).pow(d));
            }
        }
    }

    #[test]
    fn d_matches_defining_product() {
        for q in [2, 3, 4] {
            let f = fq(q);
            for i in 0..4u32 {
                let x = Poly::x(&f, Var::Theta);
                let direct = (0..i).fold(Poly::one(&f, Var::Theta), |acc, j| {
                    acc.mul(&x.frobenius_twist(i).sub(&x.frobenius_twist(j)))
                });
                assert_eq!(bracket_d(&f, i), direct);
            }
        }
    }

    #[test]
    fn gamma_small_cases() {
        for q in [2, 3, 5] {
            let f = fq(q);
            assert!(carlitz_gamma(&f, 1).unwrap().is_one());
            assert!(carlitz_gamma(&f, q as i64).unwrap().is_one());
            assert_eq!(carlitz_gamma(&f, q as i64 + 1).unwrap(), bracket_d(&f, 1));
            assert!(carlitz_gamma(&f, 0).is_err());
            for n in 1..40 {
                assert_eq!(
                    carlitz_gamma(&f, n).unwrap().deg_i64(),
                    carlitz_gamma_degree(q, n as u64)
                );
            }
        }
    }
}
